#include "chartscribe/error.hpp"
#include "chartscribe/features.hpp"
#include "chartscribe/ingestion.hpp"
#include "chartscribe/json_io.hpp"
#include "doctest.h"
#include "expect.hpp"
#include "harness.hpp"
#include "test_paths.hpp"

using namespace chartscribe;
using namespace chartscribe::features;
namespace fs = std::filesystem;

namespace {

ChartBundle fixture(const char* name) {
    return ingest::load_bundle(fs::path(test_paths::kFixtureDir) / name);
}

bool has(const FeatureCatalog& c, std::string_view id) {
    return c.find(id) != nullptr;
}

ChartBundle table_bundle(ChartType type, const std::string& csv) {
    ChartBundle b;
    b.metadata.id = "t";
    b.metadata.title = "T";
    b.metadata.chart_type = type;
    b.table = ingest::parse_data_table(csv);
    return validate_bundle(b);
}

}  // namespace

TEST_CASE("line fixture offers trend and correlation") {
    const auto c = detect_features(fixture("line-gdp"));
    CHECK(has(c, id::kTrend));
    CHECK(has(c, id::kCorrelation));
    CHECK_FALSE(has(c, id::kPie));
    CHECK(c.variables.empty());
    CHECK(c.features.back().feature_id == id::kContext);
}

TEST_CASE("bar fixture omits trend and correlation") {
    const auto c = detect_features(fixture("bar-fruit"));
    CHECK_FALSE(has(c, id::kTrend));
    CHECK_FALSE(has(c, id::kCorrelation));
    CHECK(has(c, id::kExtrema));
    CHECK_FALSE(c.find(id::kSorting)->payload.at("mismatch").get<bool>());
}

TEST_CASE("grouped column fixture is multivariate") {
    const auto c = detect_features(fixture("grouped-column-sales"));
    CHECK(c.variables == std::vector<std::string>{"North", "South", "West"});
    for (const auto& f : c.features) {
        if (f.category == FeatureCategory::DataFact) CHECK_MESSAGE(f.requires_variable, f.feature_id);
        if (f.category != FeatureCategory::DataFact) CHECK_FALSE(f.requires_variable);
    }
    REQUIRE(has(c, id::kComparison));
    CHECK(c.find(id::kComparison)->payload.at("pairs").size() == 3);
    const auto& colors = c.find(id::kColors)->payload;
    CHECK(colors.at("associated").get<bool>());
    CHECK(colors.at("associations")[2].at("variable") == "West");
    CHECK(colors.at("associations")[2].at("hex") == "#2CA02C");
}

TEST_CASE("applicable variables") {
    CHECK(applicable_variables(table_bundle(ChartType::Bar, "L,V\na,1\n")) == std::vector<std::string>{"V"});
    CHECK(applicable_variables(table_bundle(ChartType::Bar, "L,A,B,C\na,1,2,3\n")) ==
          std::vector<std::string>{"A", "B", "C"});
    const auto text_only = table_bundle(ChartType::Bar, "L,Note\na,x\nb,y\n");
    CHECK(applicable_variables(text_only).empty());
    const auto c = detect_features(text_only);
    for (const auto& f : c.features) CHECK(f.category != FeatureCategory::DataFact);
    CHECK(has(c, id::kType));
}

TEST_CASE("multivariate means several variables or a grouped type") {
    CHECK_FALSE(is_multivariate(table_bundle(ChartType::Line, "x,y\n1,2\n")));
    CHECK(is_multivariate(table_bundle(ChartType::Line, "x,y,z\n1,2,3\n")));
    CHECK(is_multivariate(table_bundle(ChartType::StackedColumn, "x,y\n1,2\n")));
    CHECK(detect_features(table_bundle(ChartType::StackedColumn, "x,y\n1,2\n")).variables ==
          std::vector<std::string>{"y"});
}

TEST_CASE("compare_groups") {
    const auto b = table_bundle(ChartType::GroupedBar, "k,a,b\nr0,1,2\nr1,5,3\n");
    const auto cmp = compare_groups(b, "a", "b");
    CHECK(cmp.first_larger == 1);
    CHECK(cmp.second_larger == 1);
    REQUIRE(cmp.max_gap_index);
    CHECK(cmp.rows[*cmp.max_gap_index].row == 1);
    CHECK(cmp.rows[*cmp.max_gap_index].gap == 2.0);
    CHECK(cmp.first_mean == 3.0);
    CHECK(cmp.second_mean == 2.5);

    const auto same = compare_groups(table_bundle(ChartType::GroupedBar, "k,a,b\nr0,1,1\nr1,4,4\n"), "a", "b");
    CHECK(same.first_larger == 0);
    CHECK(same.second_larger == 0);
    CHECK_ERROR(compare_groups(b, "a", "zzz"), ErrorCode::UnknownVariable);
    CHECK_ERROR(compare_groups(b, "k", "a"), ErrorCode::UnknownVariable);

    const auto gaps = compare_groups(table_bundle(ChartType::GroupedBar, "k,a,b\nr0,1,\nr1,5,3\nr2,0,2\n"), "a", "b");
    CHECK(gaps.rows.size() == 2);
    CHECK(gaps.rows[*gaps.max_gap_index].row == 1);  // equal gaps keep the first
}

TEST_CASE("sorting status is checked against the declaration") {
    auto b = table_bundle(ChartType::Bar, "k,v\na,3\nb,2\nc,1\n");
    b.metadata.declared_sorted = SortOrder::Ascending;
    const auto catalog = detect_features(b);
    const auto& p = catalog.find(id::kSorting)->payload;
    CHECK(p.at("data_order") == "descending");
    CHECK(p.at("declared") == "ascending");
    CHECK(p.at("mismatch").get<bool>());
}

TEST_CASE("dropped points surface as a general feature") {
    const auto c = detect_features(fixture("stacked-bar-employment"));
    REQUIRE(has(c, id::kMissing));
    CHECK(c.find(id::kMissing)->payload.at("total") == 1);
    CHECK_FALSE(has(detect_features(fixture("bar-fruit")), id::kMissing));
}

TEST_CASE("failed facts are left out and reported") {
    const auto c = detect_features(table_bundle(ChartType::Pie, "k,v\na,1\nb,-1\n"));
    CHECK_FALSE(has(c, id::kPie));
    CHECK(has(c, id::kMean));
    REQUIRE(c.diagnostics.size() == 1);
    CHECK(c.diagnostics[0].find("NegativeValue") != std::string::npos);
}

TEST_CASE("catalog invariants over the fixture corpus") {
    for (const auto& dir : harness::fixture_dirs()) {
        CAPTURE(dir.string());
        const auto bundle = ingest::load_bundle(dir);
        const auto c = detect_features(bundle);
        CHECK(json_io::to_json(c).dump() == json_io::to_json(detect_features(bundle)).dump());

        std::set<std::string> ids;
        for (const auto& f : c.features) {
            CHECK(ids.insert(f.feature_id).second);
            if (f.category == FeatureCategory::GeneralInfo) CHECK(f.feature_id.rfind("general.", 0) == 0);
            if (f.category == FeatureCategory::DataFact) CHECK(f.feature_id.rfind("fact.", 0) == 0);
            if (f.requires_variable) CHECK(is_multivariate(bundle));
            for (const auto& a : f.anchors) CHECK(resolves(a, bundle.table));
        }
        CHECK(c.variables.empty() != is_multivariate(bundle));

        const auto kind = bundle.table.columns.front().kind;
        const bool ordered = kind == ColumnKind::Numeric || kind == ColumnKind::Temporal;
        CHECK(has(c, id::kTrend) == ordered);
        CHECK(has(c, id::kCorrelation) == ordered);
        CHECK(has(c, id::kPie) == (bundle.metadata.chart_type == ChartType::Pie));
    }
}

TEST_CASE("trend anchors point at the significant endpoints") {
    const auto c = detect_features(table_bundle(ChartType::Line, "x,y\n0,1\n1,3\n2,2\n3,2\n4,5\n"));
    const auto* trend = c.find(id::kTrend);
    REQUIRE(trend);
    const auto& entry = trend->payload.at("variables")[0];
    CHECK(entry.at("intervals").size() == 4);
    CHECK(entry.at("monotonic").is_null());
    CHECK(entry.at("slope_unit") == "per_unit");
    CHECK(trend->anchors.size() == 5);

    const auto* extrema = c.find(id::kExtrema);
    REQUIRE(extrema->anchors.size() == 2);
    CHECK(std::get<DataPointAnchor>(extrema->anchors[0]) == DataPointAnchor{4, "y"});
    CHECK(std::get<DataPointAnchor>(extrema->anchors[1]) == DataPointAnchor{0, "y"});
}
