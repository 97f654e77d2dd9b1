#include "chartscribe/service.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <mutex>

#include "chartscribe/error.hpp"
#include "chartscribe/features.hpp"
#include "chartscribe/json_io.hpp"
#include "httplib.h"

namespace chartscribe::service {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

bool safe_dir_name(std::string_view id) {
    if (id.empty() || id == "." || id == "..") return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' || c == '_' ||
               c == '.';
    });
}

}  // namespace

ChartStore::ChartStore(fs::path root) : root_(std::move(root)) {}

void ChartStore::scan() {
    std::vector<fs::path> dirs;
    std::error_code ec;
    if (fs::is_directory(root_, ec)) {
        for (const auto& entry : fs::directory_iterator(root_)) {
            if (entry.is_directory() && fs::exists(entry.path() / ingest::kMetadataFile)) dirs.push_back(entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end());

    std::map<std::string, Entry, std::less<>> index;
    std::vector<std::string> warnings;
    for (const auto& dir : dirs) {
        try {
            auto bundle = ingest::load_bundle(dir);
            const auto id = bundle.metadata.id;
            if (const auto it = index.find(id); it != index.end()) {
                warnings.push_back(dir.string() + ": duplicate id " + id + " (already loaded from " +
                                   it->second.dir.string() + ")");
                continue;
            }
            index.emplace(id, Entry{dir, std::move(bundle)});
        } catch (const Error& e) {
            warnings.push_back(dir.string() + ": " + e.what());
        }
    }

    std::unique_lock lock(mutex_);
    index_ = std::move(index);
    warnings_ = std::move(warnings);
}

std::vector<std::string> ChartStore::warnings() const {
    std::shared_lock lock(mutex_);
    return warnings_;
}

std::size_t ChartStore::size() const {
    std::shared_lock lock(mutex_);
    return index_.size();
}

ChartPage ChartStore::list(std::size_t page, std::size_t page_size, std::optional<ChartType> type) const {
    if (page == 0) throw Error(ErrorCode::InvalidPage, "page", page);
    if (page_size == 0) throw Error(ErrorCode::InvalidPage, "page_size", page_size);

    std::vector<ChartSummary> all;
    {
        std::shared_lock lock(mutex_);
        for (const auto& [_, entry] : index_) {
            const auto& m = entry.bundle.metadata;
            if (type && m.chart_type != *type) continue;
            all.push_back({m, entry.bundle.svg_text.has_value()});
        }
    }
    std::sort(all.begin(), all.end(), [](const ChartSummary& a, const ChartSummary& b) {
        if (a.metadata.created_at != b.metadata.created_at) return a.metadata.created_at > b.metadata.created_at;
        return a.metadata.id < b.metadata.id;
    });

    ChartPage out{page, page_size, all.size(), {}};
    const auto first = (page - 1) * page_size;
    if (first / page_size != page - 1 || first >= all.size()) return out;  // overflow or past the end
    const auto last = std::min(all.size(), first + std::min(page_size, all.size() - first));
    out.items.assign(std::make_move_iterator(all.begin() + first), std::make_move_iterator(all.begin() + last));
    return out;
}

ChartBundle ChartStore::get(std::string_view id) const {
    std::shared_lock lock(mutex_);
    const auto it = index_.find(id);
    if (it == index_.end()) throw Error(ErrorCode::NotFound, std::string{id});
    return it->second.bundle;
}

void ChartStore::put(const ChartBundle& bundle) {
    const auto& id = bundle.metadata.id;
    if (!safe_dir_name(id)) throw Error(ErrorCode::ValidationError, "chart id not usable as a directory name: " + id);
    std::unique_lock lock(mutex_);
    const auto it = index_.find(id);
    const fs::path dir = it != index_.end() ? it->second.dir : root_ / id;
    ingest::write_bundle(bundle, dir);
    index_.insert_or_assign(id, Entry{dir, bundle});
}

ServiceConfig ServiceConfig::from_environment() {
    ServiceConfig config;
    const char* dir = std::getenv("CHARTSCRIBE_STORE_DIR");
    config.store_dir = dir && *dir ? dir : "charts";
    config.remote = ingest::RemoteConfig::from_environment();
    return config;
}

Service::Service(ServiceConfig config, std::shared_ptr<ingest::HttpTransport> transport)
    : config_(std::move(config)), transport_(std::move(transport)), store_(config_.store_dir) {
    if (!transport_) transport_ = ingest::make_http_transport();
    store_.scan();
}

json Service::list_charts(std::size_t page, std::size_t page_size, std::optional<std::string_view> type) const {
    std::optional<ChartType> filter;
    if (type) {
        filter = parse_chart_type(*type);
        if (!filter) throw Error(ErrorCode::UnknownChartType, std::string{*type});
    }
    const auto result = store_.list(page, page_size, filter);
    json items = json::array();
    for (const auto& s : result.items) items.push_back(json_io::chart_summary(s.metadata, s.has_svg));
    return {{"page", result.page}, {"page_size", result.page_size}, {"total", result.total}, {"items", items}};
}

json Service::get_chart(std::string_view id) const {
    return json_io::chart_view(store_.get(id));
}

json Service::get_features(std::string_view id) const {
    return json_io::to_json(features::detect_features(store_.get(id), config_.facts));
}

text::Description Service::describe(std::string_view id, const SelectionState& selection) const {
    const auto bundle = store_.get(id);
    const auto catalog = features::detect_features(bundle, config_.facts);
    try {
        return text::describe(catalog, selection, config_.format);
    } catch (const Error& e) {
        throw Error(ErrorCode::ValidationError, e.what());
    }
}

json Service::post_description(std::string_view id, const json& selection) const {
    return json_io::to_json(describe(id, json_io::selection_from_json(selection)));
}

std::string Service::get_svg(std::string_view id) const {
    auto bundle = store_.get(id);
    if (!bundle.svg_text) throw Error(ErrorCode::NotFound, std::string{id} + "/svg");
    return std::move(*bundle.svg_text);
}

json Service::import_chart(const json& request) {
    if (!request.is_object() || !request.contains("remote_id") || !request["remote_id"].is_string() ||
        request["remote_id"].get<std::string>().empty()) {
        throw Error(ErrorCode::ValidationError, "remote_id must be a non-empty string");
    }
    if (config_.remote.token.empty()) throw Error(ErrorCode::AuthFailed, "CHARTSCRIBE_API_TOKEN is not set");
    if (config_.remote.base_url.empty()) throw Error(ErrorCode::UpstreamError, "CHARTSCRIBE_REMOTE_BASE is not set");
    const auto bundle = ingest::fetch_chart(request["remote_id"].get<std::string>(), config_.remote, *transport_);
    store_.put(bundle);
    return {{"id", bundle.metadata.id}};
}

json Service::rescan() {
    store_.scan();
    return {{"charts", store_.size()}, {"warnings", store_.warnings()}};
}

json Service::health() const {
    return {{"status", "ok"}, {"charts", store_.size()}};
}

int http_status(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::NotFound: return 404;
        case ErrorCode::AuthFailed: return 401;
        case ErrorCode::UpstreamError: return 502;
        case ErrorCode::TimeoutExceeded: return 504;
        case ErrorCode::FileNotFound: return 500;
        default: return 400;
    }
}

namespace {

void send_json(httplib::Response& res, const json& body, int status = 200) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& detail) {
    send_json(res, {{"error", code}, {"detail", detail}}, status);
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
    return [fn = std::move(fn)](const httplib::Request& req, httplib::Response& res) {
        try {
            fn(req, res);
        } catch (const Error& e) {
            send_error(res, http_status(e.code()), to_string(e.code()), e.what());
        } catch (const json::exception& e) {
            send_error(res, 400, to_string(ErrorCode::ValidationError), e.what());
        } catch (const std::exception& e) {
            send_error(res, 500, "InternalError", e.what());
        }
    };
}

std::size_t positive_param(const httplib::Request& req, const char* name, std::size_t fallback) {
    if (!req.has_param(name)) return fallback;
    const auto text = req.get_param_value(name);
    std::size_t value = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) throw Error(ErrorCode::InvalidPage, name + ("=" + text));
    return value;
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    return json::parse(req.body);
}

}  // namespace

HttpServer::HttpServer(Service& service) : service_(service), server_(std::make_unique<httplib::Server>()) {
    auto& s = *server_;
    s.Get("/healthz", guarded([this](const httplib::Request&, httplib::Response& res) {
              send_json(res, service_.health());
          }));
    s.Get("/api/charts", guarded([this](const httplib::Request& req, httplib::Response& res) {
              std::optional<std::string> type;
              if (req.has_param("type")) type = req.get_param_value("type");
              send_json(res, service_.list_charts(positive_param(req, "page", 1), positive_param(req, "page_size", 20),
                                                  type ? std::optional<std::string_view>(*type) : std::nullopt));
          }));
    s.Get(R"(/api/charts/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
              send_json(res, service_.get_chart(req.matches[1].str()));
          }));
    s.Get(R"(/api/charts/([^/]+)/features)", guarded([this](const httplib::Request& req, httplib::Response& res) {
              send_json(res, service_.get_features(req.matches[1].str()));
          }));
    s.Get(R"(/api/charts/([^/]+)/svg)", guarded([this](const httplib::Request& req, httplib::Response& res) {
              res.set_content(service_.get_svg(req.matches[1].str()), "image/svg+xml");
          }));
    s.Post("/api/charts/import", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, service_.import_chart(parse_body(req)), 201);
           }));
    s.Post(R"(/api/charts/([^/]+)/description)", guarded([this](const httplib::Request& req, httplib::Response& res) {
               send_json(res, service_.post_description(req.matches[1].str(), parse_body(req)));
           }));
    s.Post("/api/rescan", guarded([this](const httplib::Request&, httplib::Response& res) {
               send_json(res, service_.rescan());
           }));
    s.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            send_error(res, res.status, res.status == 404 ? "NotFound" : "HttpError",
                       "status " + std::to_string(res.status));
        }
    });
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port) {
    if (port == 0) return server_->bind_to_any_port(host);
    if (!server_->bind_to_port(host, port)) return -1;
    return port;
}

void HttpServer::listen() {
    server_->listen_after_bind();
}

void HttpServer::stop() {
    server_->stop();
}

void HttpServer::wait_until_ready() const {
    server_->wait_until_ready();
}

}  // namespace chartscribe::service
