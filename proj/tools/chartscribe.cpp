#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chartscribe/error.hpp"
#include "chartscribe/features.hpp"
#include "chartscribe/ingestion.hpp"
#include "chartscribe/json_io.hpp"
#include "chartscribe/service.hpp"
#include "chartscribe/textgen.hpp"

namespace cs = chartscribe;
namespace fs = std::filesystem;

namespace {

struct DescribeOptions {
    std::vector<std::string> paths;
    std::string format = "text";
    std::string out_dir;
    cs::facts::FactsConfig facts;
};

struct Outcome {
    std::string chart_id;
    std::string output;
    std::string error;
};

Outcome describe_one(const std::string& path, const DescribeOptions& opt) {
    Outcome out;
    try {
        const auto bundle = cs::ingest::load_bundle(path);
        const auto catalog = cs::features::detect_features(bundle, opt.facts);
        const auto description = cs::text::describe(catalog, cs::text::select_all(catalog));
        out.chart_id = bundle.metadata.id;
        if (opt.format == "json") {
            nlohmann::json doc{{"chart_id", bundle.metadata.id},
                               {"description", cs::json_io::to_json(description)},
                               {"features", cs::json_io::to_json(catalog)}};
            out.output = doc.dump(2) + "\n";
        } else {
            out.output = description.rendered + "\n";
        }
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

int run_describe(const DescribeOptions& opt) {
    const auto n = static_cast<long>(opt.paths.size());
    std::vector<Outcome> outcomes(opt.paths.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) outcomes[i] = describe_one(opt.paths[i], opt);

    int status = 0;
    if (!opt.out_dir.empty()) fs::create_directories(opt.out_dir);
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        const auto& o = outcomes[i];
        if (!o.error.empty()) {
            std::cerr << opt.paths[i] << ": " << o.error << "\n";
            status = 1;
            continue;
        }
        if (opt.out_dir.empty()) {
            std::cout << o.output;
        } else {
            const auto file = fs::path(opt.out_dir) / (o.chart_id + (opt.format == "json" ? ".json" : ".txt"));
            std::ofstream(file, std::ios::binary) << o.output;
        }
    }
    return status;
}

int run_serve(const std::string& addr, const std::string& store) {
    auto config = cs::service::ServiceConfig::from_environment();
    if (!store.empty()) config.store_dir = store;
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) throw CLI::ValidationError("--addr", "expected host:port");
    const std::string host = addr.substr(0, colon);
    const int port = std::stoi(addr.substr(colon + 1));

    cs::service::Service service(config);
    for (const auto& w : service.store().warnings()) std::cerr << "warning: " << w << "\n";
    cs::service::HttpServer server(service);
    const int bound = server.bind(host, port);
    if (bound < 0) {
        std::cerr << "cannot bind " << addr << "\n";
        return 1;
    }
    std::cerr << "serving " << service.store().size() << " charts from " << config.store_dir.string() << " on "
              << host << ":" << bound << "\n";
    server.listen();
    return 0;
}

int run_import(const std::string& remote_id, const std::string& store) {
    auto config = cs::service::ServiceConfig::from_environment();
    if (!store.empty()) config.store_dir = store;
    cs::service::Service service(config);
    const auto result = service.import_chart({{"remote_id", remote_id}});
    std::cout << result.at("id").get<std::string>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chartscribe: textual descriptions for statistical charts"};
    app.require_subcommand(1);

    DescribeOptions describe;
    auto* cmd_describe = app.add_subcommand("describe", "Describe chart bundles with every feature selected");
    cmd_describe->add_option("paths", describe.paths, "Bundle directories");
    cmd_describe->add_option("--format", describe.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    cmd_describe->add_option("--out-dir", describe.out_dir, "Write <chart-id>.txt|.json here instead of stdout");
    cmd_describe->add_option("--threshold-M", describe.facts.interval_threshold,
                             "Interval count above which only the steepest intervals are reported")
        ->check(CLI::PositiveNumber);
    cmd_describe->add_option("--top-k", describe.facts.top_k, "Number of steepest intervals to report")
        ->check(CLI::PositiveNumber);

    std::string addr = "127.0.0.1:8080";
    std::string store;
    auto* cmd_serve = app.add_subcommand("serve", "Run the HTTP service");
    cmd_serve->add_option("--addr", addr, "Listen address host:port");
    cmd_serve->add_option("--store", store, "Bundle store directory (default $CHARTSCRIBE_STORE_DIR or ./charts)");

    std::string remote_id;
    auto* cmd_import = app.add_subcommand("import", "Fetch a chart from the remote API into the store");
    cmd_import->add_option("remote-id", remote_id, "Remote chart id")->required();
    cmd_import->add_option("--store", store, "Bundle store directory (default $CHARTSCRIBE_STORE_DIR or ./charts)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*cmd_describe) return run_describe(describe);
        if (*cmd_serve) return run_serve(addr, store);
        if (*cmd_import) return run_import(remote_id, store);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
