#include "chartscribe/error.hpp"
#include "chartscribe/model.hpp"
#include "doctest.h"
#include "expect.hpp"

using namespace chartscribe;

namespace {

ChartBundle small_bundle() {
    ChartBundle b;
    b.metadata.id = "m1";
    b.metadata.chart_type = ChartType::Bar;
    b.table.columns = {{"Label", ColumnKind::Categorical}, {"Value", ColumnKind::Numeric}};
    b.table.rows = {{std::string("a"), 1.0}, {std::string("b"), 2.0}, {std::string("c"), 3.0}};
    return b;
}

}  // namespace

TEST_CASE("chart type names round-trip") {
    for (auto t : kAllChartTypes) CHECK(parse_chart_type(to_string(t)) == t);
    CHECK(parse_chart_type("d3-lines") == ChartType::Line);
    CHECK(parse_chart_type("Column-Chart") == ChartType::Column);
    CHECK(parse_chart_type("donut") == ChartType::Pie);
    CHECK(parse_chart_type("d3-sankey") == std::nullopt);
    CHECK(display_name(ChartType::GroupedColumn) == "grouped column chart");
    CHECK(is_multivariate_type(ChartType::StackedBar));
    CHECK(is_multivariate_type(ChartType::SplitBar));
    CHECK_FALSE(is_multivariate_type(ChartType::Line));
}

TEST_CASE("timestamps") {
    const auto t = parse_timestamp("2024-01-01T00:00:00Z");
    REQUIRE(t);
    CHECK(format_timestamp(*t) == "2024-01-01T00:00:00Z");
    CHECK(format_timestamp(*parse_timestamp("2024-03-05T09:30:00.250Z")) == "2024-03-05T09:30:00.250Z");
    CHECK(parse_timestamp("2024-03-05T10:30:00+01:00") == parse_timestamp("2024-03-05T09:30:00Z"));
    CHECK(parse_timestamp("2024-03-04T23:30:00-10:00") == parse_timestamp("2024-03-05T09:30:00Z"));
    for (const char* bad : {"", "2024-13-01T00:00:00Z", "2024-02-30T00:00:00Z", "2024-01-01", "yesterday",
                            "2024-01-01T25:00:00Z"}) {
        CHECK_MESSAGE(!parse_timestamp(bad), bad);
    }
}

TEST_CASE("temporal cell patterns") {
    CHECK(parse_temporal_days("1970-01-02") == 1.0);
    CHECK(parse_temporal_days("1970") == 0.0);
    CHECK(parse_temporal_days("1970-02") == 31.0);
    CHECK(parse_temporal_days("1970-01-01T12:00") == 0.5);
    CHECK_FALSE(parse_temporal_days("Q1 2020"));
    CHECK_FALSE(parse_temporal_days("2020-1-1"));
}

TEST_CASE("validate_bundle accepts a well-formed bundle unchanged and is idempotent") {
    const auto b = small_bundle();
    const auto once = validate_bundle(b);
    CHECK(once == b);
    CHECK(validate_bundle(once) == once);
}

TEST_CASE("validate_bundle reports the first violated invariant") {
    auto ragged = small_bundle();
    ragged.table.rows[1].push_back(4.0);
    const auto e = test::capture([&] { validate_bundle(ragged); });
    CHECK(e.code() == ErrorCode::RaggedRow);
    CHECK(e.index() == 1u);
    CHECK(std::string(e.what()) == "RaggedRow(1)");

    auto dup = small_bundle();
    dup.table.columns[1].name = "Label";
    CHECK_ERROR(validate_bundle(dup), ErrorCode::DuplicateColumn);

    auto no_rows = small_bundle();
    no_rows.table.rows.clear();
    CHECK_ERROR(validate_bundle(no_rows), ErrorCode::EmptyTable);

    auto no_cols = small_bundle();
    no_cols.table = {};
    CHECK_ERROR(validate_bundle(no_cols), ErrorCode::EmptyTable);

    auto no_id = small_bundle();
    no_id.metadata.id.clear();
    CHECK_ERROR(validate_bundle(no_id), ErrorCode::MissingField);

    auto mismatch = small_bundle();
    mismatch.table.rows[0][1] = std::string("x");
    CHECK_ERROR(validate_bundle(mismatch), ErrorCode::ValidationError);

    auto colors = small_bundle();
    colors.extracted_colors = {"#FF0000"};
    CHECK_ERROR(validate_bundle(colors), ErrorCode::ValidationError);
    colors.svg_text = "<svg/>";
    CHECK_NOTHROW(validate_bundle(colors));
    colors.extracted_colors = {"#ff0000"};
    CHECK_ERROR(validate_bundle(colors), ErrorCode::InvalidHex);
}

TEST_CASE("error messages") {
    CHECK(std::string(Error(ErrorCode::UnknownChartType, "d3-sankey").what()) == "UnknownChartType(\"d3-sankey\")");
    CHECK(std::string(Error(ErrorCode::EmptyInput).what()) == "EmptyInput");
    CHECK(to_string(ErrorCode::FileNotFound) == "FileNotFound");
}

TEST_CASE("series construction drops missing points") {
    DataTable t;
    t.columns = {{"Date", ColumnKind::Temporal}, {"A", ColumnKind::Numeric}, {"B", ColumnKind::Numeric}};
    t.rows = {{std::string("2020-01-01"), 1.0, std::monostate{}},
              {std::string("2020-01-03"), std::monostate{}, 2.0},
              {std::monostate{}, 3.0, 3.0},
              {std::string("2020-01-11"), 4.0, 4.0}};
    const auto a = make_series(t, "A");
    CHECK(a.y == std::vector<double>{1.0, 4.0});
    CHECK(a.x == std::vector<double>{0.0, 10.0});
    CHECK(a.source_rows == std::vector<std::size_t>{0, 3});
    CHECK(a.x_labels == std::vector<std::string>{"2020-01-01", "2020-01-11"});
    CHECK(a.dropped == 2);
    CHECK(a.x_kind == ColumnKind::Temporal);

    const auto b = make_series(t, "B");
    CHECK(b.x == std::vector<double>{0.0, 8.0});  // days from the first present timestamp

    CHECK_ERROR(make_series(t, "Date"), ErrorCode::UnknownVariable);
    CHECK_ERROR(make_series(t, "C"), ErrorCode::UnknownVariable);
}

TEST_CASE("categorical axes use the row index") {
    auto b = small_bundle();
    b.table.rows[1][1] = std::monostate{};
    const auto s = make_series(b.table, "Value");
    CHECK(s.x == std::vector<double>{0.0, 2.0});
    CHECK(s.x_labels == std::vector<std::string>{"a", "c"});
}

TEST_CASE("category colors") {
    CHECK(display_color(FeatureCategory::GeneralInfo) == "#FFC0CB");
    CHECK(display_color(FeatureCategory::DataFact) == "#008000");
    CHECK(display_color(FeatureCategory::Context) == "#ADD8E6");
}

TEST_CASE("anchors resolve against the table") {
    const auto t = small_bundle().table;
    CHECK(resolves(DataPointAnchor{2, "Value"}, t));
    CHECK_FALSE(resolves(DataPointAnchor{3, "Value"}, t));
    CHECK_FALSE(resolves(ColumnAnchor{"Other"}, t));
    CHECK(resolves(AxisAnchor{AxisRole::Dependent}, t));
    CHECK(resolves(WholeChartAnchor{}, t));
}
