#pragma once

// Shared domain types for charts, features and descriptions.
// Everything here is a plain value type; nothing performs I/O.

#include <chrono>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace chartscribe {

enum class ChartType {
    Bar,
    SplitBar,
    StackedBar,
    GroupedBar,
    Column,
    GroupedColumn,
    StackedColumn,
    Line,
    Area,
    Pie,
};

inline constexpr ChartType kAllChartTypes[] = {
    ChartType::Bar,    ChartType::SplitBar,      ChartType::StackedBar,    ChartType::GroupedBar,
    ChartType::Column, ChartType::GroupedColumn, ChartType::StackedColumn, ChartType::Line,
    ChartType::Area,   ChartType::Pie,
};

/// Canonical type key, e.g. "stacked-bars". Used for serialization.
std::string_view to_string(ChartType type) noexcept;

/// Accepts canonical keys and the Datawrapper-style aliases ("d3-lines",
/// "column-chart", ...). Case-insensitive.
std::optional<ChartType> parse_chart_type(std::string_view text);

/// Noun phrase without article, e.g. "grouped column chart".
std::string_view display_name(ChartType type) noexcept;

/// Grouped, stacked and split variants encode several variables per category.
bool is_multivariate_type(ChartType type) noexcept;

enum class SortOrder { Ascending, Descending };
enum class AxisRole { Independent, Dependent };

std::string_view to_string(SortOrder order) noexcept;
std::string_view to_string(AxisRole role) noexcept;

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// ISO-8601 instant: "YYYY-MM-DDTHH:MM:SS[.fff](Z|+hh:mm|-hh:mm)".
std::optional<Timestamp> parse_timestamp(std::string_view text);
/// Always UTC with a "Z" suffix; milliseconds only when non-zero.
std::string format_timestamp(Timestamp ts);

/// Calendar-date patterns accepted for temporal columns: YYYY, YYYY-MM,
/// YYYY-MM-DD, optionally followed by "THH:MM[:SS][Z]". Returns days since
/// 1970-01-01 (fractional when a time of day is given).
std::optional<double> parse_temporal_days(std::string_view text);

struct ChartMetadata {
    std::string id;
    std::string title;
    std::optional<std::string> subtitle;
    std::optional<std::string> footnote;
    ChartType chart_type = ChartType::Bar;
    std::optional<std::string> independent_axis_label;
    std::optional<std::string> dependent_axis_label;
    std::optional<SortOrder> declared_sorted;
    Timestamp created_at{};
    std::optional<std::string> source_note;

    bool operator==(const ChartMetadata&) const = default;
};

enum class ColumnKind { Categorical, Numeric, Temporal };

std::string_view to_string(ColumnKind kind) noexcept;

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;

    bool operator==(const ColumnSpec&) const = default;
};

/// Missing numeric/temporal cells are monostate; categorical cells keep the
/// empty string as their missing marker.
using Cell = std::variant<std::monostate, double, std::string>;

struct DataTable {
    std::vector<ColumnSpec> columns;
    std::vector<std::vector<Cell>> rows;

    std::optional<std::size_t> column_index(std::string_view name) const;

    bool operator==(const DataTable&) const = default;
};

/// Text of a cell as it would be shown on the chart ("" when missing).
std::string cell_text(const Cell& cell);

struct ChartBundle {
    ChartMetadata metadata;
    DataTable table;
    std::optional<std::string> svg_text;
    std::vector<std::string> extracted_colors;

    bool operator==(const ChartBundle&) const = default;
};

/// Checks every structural invariant and returns the bundle unchanged.
/// Throws Error naming the first violated invariant.
ChartBundle validate_bundle(ChartBundle bundle);

/// One dependent variable paired with the independent axis.
///
/// `x` holds numeric axis positions: the table row index for categorical
/// axes, the value itself for numeric axes and days since the first
/// timestamp for temporal axes. Rows with a missing x or y are dropped and
/// counted in `dropped`; `source_rows` maps each point back to its table row.
struct Series {
    std::string label;
    std::vector<double> x;
    std::vector<std::string> x_labels;
    std::vector<std::size_t> source_rows;
    std::vector<double> y;
    ColumnKind x_kind = ColumnKind::Categorical;
    std::size_t dropped = 0;

    std::size_t size() const noexcept { return y.size(); }
};

/// Builds the series for `variable` against the first table column.
/// Throws UnknownVariable when the column is absent or not numeric.
Series make_series(const DataTable& table, std::string_view variable);

/// Convenience for tests and callers that already hold plain vectors.
Series make_series(std::vector<double> y, std::vector<std::string> labels = {});

enum class FeatureCategory { GeneralInfo, DataFact, Context };

std::string_view to_string(FeatureCategory category) noexcept;
/// "#FFC0CB" (pink) for general information, "#008000" (green) for data
/// facts, "#ADD8E6" (lightblue) for the context slot.
std::string_view display_color(FeatureCategory category) noexcept;

struct DataPointAnchor {
    std::size_t row = 0;
    std::string column;
    bool operator==(const DataPointAnchor&) const = default;
};
struct ColumnAnchor {
    std::string column;
    bool operator==(const ColumnAnchor&) const = default;
};
struct AxisAnchor {
    AxisRole role = AxisRole::Independent;
    bool operator==(const AxisAnchor&) const = default;
};
struct TitleBlockAnchor {
    bool operator==(const TitleBlockAnchor&) const = default;
};
struct WholeChartAnchor {
    bool operator==(const WholeChartAnchor&) const = default;
};

using AnchorRef = std::variant<DataPointAnchor, ColumnAnchor, AxisAnchor, TitleBlockAnchor, WholeChartAnchor>;

/// True when the anchor names rows/columns that exist in `table`.
bool resolves(const AnchorRef& anchor, const DataTable& table);

struct Feature {
    std::string feature_id;
    FeatureCategory category = FeatureCategory::GeneralInfo;
    std::string label;
    bool requires_variable = false;
    nlohmann::json payload = nlohmann::json::object();
    std::vector<AnchorRef> anchors;

    bool operator==(const Feature&) const = default;
};

struct DescriptionSegment {
    std::string feature_id;
    std::string text;
    std::vector<AnchorRef> anchors;
    std::size_t order_index = 0;
    bool edited = false;

    bool operator==(const DescriptionSegment&) const = default;
};

struct SelectionState {
    std::vector<std::string> selected_feature_ids;
    std::map<std::string, std::vector<std::string>> variable_choices;
    std::optional<std::string> context_text;
    std::map<std::string, std::string> manual_edits;

    bool operator==(const SelectionState&) const = default;
};

}  // namespace chartscribe
