#pragma once

// Local chart store plus the HTTP+JSON facade over the engine.

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "chartscribe/error.hpp"
#include "chartscribe/facts.hpp"
#include "chartscribe/ingestion.hpp"
#include "chartscribe/model.hpp"
#include "chartscribe/textgen.hpp"

namespace httplib {
class Server;
}

namespace chartscribe::service {

struct ChartSummary {
    ChartMetadata metadata;
    bool has_svg = false;
};

struct ChartPage {
    std::size_t page = 1;
    std::size_t page_size = 0;
    std::size_t total = 0;
    std::vector<ChartSummary> items;
};

/// Bundle directories under `root`, indexed by chart id.
///
/// Reads share the index; scan() and put() take it exclusively.
class ChartStore {
public:
    explicit ChartStore(std::filesystem::path root);

    /// Rebuilds the index from the immediate subdirectories of root that
    /// contain a metadata file. Unreadable bundles and repeated ids are
    /// skipped and reported in warnings().
    void scan();

    std::vector<std::string> warnings() const;
    std::size_t size() const;

    /// 1-based pages sorted by created_at descending, ties by id. Throws
    /// InvalidPage for page or page_size of zero.
    ChartPage list(std::size_t page, std::size_t page_size, std::optional<ChartType> type = std::nullopt) const;

    /// Throws NotFound.
    ChartBundle get(std::string_view id) const;

    /// Writes the bundle to its directory (root/<id> for new ids) and
    /// indexes it.
    void put(const ChartBundle& bundle);

    const std::filesystem::path& root() const noexcept { return root_; }

private:
    struct Entry {
        std::filesystem::path dir;
        ChartBundle bundle;
    };

    std::filesystem::path root_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, Entry, std::less<>> index_;
    std::vector<std::string> warnings_;
};

struct ServiceConfig {
    std::filesystem::path store_dir;
    ingest::RemoteConfig remote;
    facts::FactsConfig facts;
    text::FormatConfig format;

    /// CHARTSCRIBE_STORE_DIR (default "charts") plus the remote variables.
    static ServiceConfig from_environment();
};

/// Transport-independent request handlers. Each returns a JSON body or
/// throws chartscribe::Error.
class Service {
public:
    explicit Service(ServiceConfig config, std::shared_ptr<ingest::HttpTransport> transport = nullptr);

    nlohmann::json list_charts(std::size_t page, std::size_t page_size, std::optional<std::string_view> type) const;
    nlohmann::json get_chart(std::string_view id) const;
    nlohmann::json get_features(std::string_view id) const;
    nlohmann::json post_description(std::string_view id, const nlohmann::json& selection) const;
    std::string get_svg(std::string_view id) const;
    nlohmann::json import_chart(const nlohmann::json& request);
    nlohmann::json rescan();
    nlohmann::json health() const;

    text::Description describe(std::string_view id, const SelectionState& selection) const;

    ChartStore& store() noexcept { return store_; }
    const ServiceConfig& config() const noexcept { return config_; }

private:
    ServiceConfig config_;
    std::shared_ptr<ingest::HttpTransport> transport_;
    ChartStore store_;
};

/// HTTP status for an engine error code.
int http_status(ErrorCode code) noexcept;

/// Binds the routes of `service` onto a cpp-httplib server.
class HttpServer {
public:
    explicit HttpServer(Service& service);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds host:port (port 0 picks a free port) and returns the bound port.
    int bind(const std::string& host, int port);
    /// Blocks until stop() is called.
    void listen();
    void stop();
    void wait_until_ready() const;

private:
    Service& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace chartscribe::service
