#include <cstdlib>
#include <fstream>

#include "doctest.h"
#include "harness.hpp"
#include "json.hpp"
#include "test_paths.hpp"

namespace fs = std::filesystem;
using harness::run;

namespace {

std::string fixture(const char* name) { return (fs::path(test_paths::kFixtureDir) / name).string(); }

std::string invalid(const char* name) { return (fs::path(test_paths::kInvalidFixtureDir) / name).string(); }

}  // namespace

TEST_CASE("describe prints one line per bundle") {
    const auto r = run({test_paths::kCli, "describe", fixture("line-gdp")});
    REQUIRE(r.exit_code == 0);
    CHECK(r.err.empty());
    CHECK(r.out.find("This is a line chart.") != std::string::npos);
    CHECK(r.out.find("The highest value is") != std::string::npos);
    CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 1);

    const auto two = run({test_paths::kCli, "describe", fixture("line-gdp"), fixture("bar-fruit")});
    REQUIRE(two.exit_code == 0);
    CHECK(two.out == r.out + run({test_paths::kCli, "describe", fixture("bar-fruit")}).out);
}

TEST_CASE("describe with no paths does nothing") {
    const auto r = run({test_paths::kCli, "describe"});
    CHECK(r.exit_code == 0);
    CHECK(r.out.empty());
}

TEST_CASE("a failing bundle does not stop the others") {
    const auto good = run({test_paths::kCli, "describe", fixture("bar-fruit")});
    const auto r = run({test_paths::kCli, "describe", fixture("bar-fruit"), invalid("ragged-csv")});
    CHECK(r.exit_code != 0);
    CHECK(r.out == good.out);
    CHECK(r.err.find("ragged-csv") != std::string::npos);
    CHECK(r.err.find("RaggedRow(1)") != std::string::npos);

    const auto missing = run({test_paths::kCli, "describe", "/nonexistent/bundle"});
    CHECK(missing.exit_code != 0);
    CHECK(missing.err.find("FileNotFound") != std::string::npos);
}

TEST_CASE("json output and out-dir") {
    const auto r = run({test_paths::kCli, "describe", "--format", "json", fixture("pie-energy")});
    REQUIRE(r.exit_code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.at("chart_id") == "energy-pie");
    CHECK(doc.at("description").at("chart_id") == "energy-pie");
    CHECK(doc.at("features").at("features").size() > 0);
    const auto text = run({test_paths::kCli, "describe", fixture("pie-energy")}).out;
    CHECK(doc.at("description").at("rendered").get<std::string>() + "\n" == text);

    harness::TempDir out;
    const auto w = run({test_paths::kCli, "describe", "--out-dir", out.path().string(), fixture("pie-energy"),
                        fixture("line-gdp")});
    REQUIRE(w.exit_code == 0);
    CHECK(w.out.empty());
    CHECK(harness::read_file(out.path() / "energy-pie.txt") == text);
    CHECK(fs::exists(out.path() / "gdp-line.txt"));

    CHECK(run({test_paths::kCli, "describe", "--format", "xml", fixture("pie-energy")}).exit_code != 0);
}

TEST_CASE("trend options reach the engine") {
    const auto base = run({test_paths::kCli, "describe", fixture("line-gdp")});
    const auto wide = run({test_paths::kCli, "describe", "--threshold-M", "50", fixture("line-gdp")});
    const auto narrow = run({test_paths::kCli, "describe", "--top-k", "1", fixture("line-gdp")});
    REQUIRE(base.exit_code == 0);
    CHECK(base.out.find("steepest") != std::string::npos);
    CHECK(wide.out.find("steepest") == std::string::npos);
    CHECK(narrow.out.size() < base.out.size());
    CHECK(run({test_paths::kCli, "describe", "--top-k", "0", fixture("line-gdp")}).exit_code != 0);
}

TEST_CASE("golden descriptions") {
    const bool update = std::getenv("CHARTSCRIBE_UPDATE_GOLDEN") != nullptr;
    for (const auto& dir : harness::fixture_dirs()) {
        CAPTURE(dir.string());
        const auto r = run({test_paths::kCli, "describe", dir.string()});
        REQUIRE(r.exit_code == 0);
        const auto golden = fs::path(test_paths::kGoldenDir) / (dir.filename().string() + ".txt");
        if (update) std::ofstream(golden, std::ios::binary) << r.out;
        REQUIRE(fs::exists(golden));
        CHECK(r.out == harness::read_file(golden));
    }
}

TEST_CASE("import fetches into the store") {
    harness::StubRemote remote({{"abc1", fixture("line-gdp")}}, "tok");
    harness::TempDir store;
    const auto r = run({"env", "CHARTSCRIBE_REMOTE_BASE=" + remote.base_url(), "CHARTSCRIBE_API_TOKEN=tok",
                        test_paths::kCli, "import", "abc1", "--store", store.path().string()});
    CHECK(r.exit_code == 0);
    CHECK(r.out == "gdp-line\n");
    CHECK(fs::exists(store.path() / "gdp-line" / "data.csv"));

    const auto denied = run({"env", "CHARTSCRIBE_REMOTE_BASE=" + remote.base_url(), "CHARTSCRIBE_API_TOKEN=bad",
                             test_paths::kCli, "import", "abc1", "--store", store.path().string()});
    CHECK(denied.exit_code != 0);
    CHECK(denied.err.find("AuthFailed") != std::string::npos);
}
