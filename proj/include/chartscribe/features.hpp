#pragma once

// Chart-type driven feature detection: the checkbox catalog of general
// information, data facts and the contextual-knowledge slot.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "chartscribe/facts.hpp"
#include "chartscribe/model.hpp"

namespace chartscribe::features {

namespace id {
inline constexpr std::string_view kType = "general.type";
inline constexpr std::string_view kTitle = "general.title";
inline constexpr std::string_view kSubtitle = "general.subtitle";
inline constexpr std::string_view kFootnote = "general.footnote";
inline constexpr std::string_view kAxes = "general.axes";
inline constexpr std::string_view kColors = "general.colors";
inline constexpr std::string_view kSorting = "general.sorting";
inline constexpr std::string_view kMissing = "general.missing";
inline constexpr std::string_view kExtrema = "fact.extrema";
inline constexpr std::string_view kMean = "fact.mean";
inline constexpr std::string_view kStddev = "fact.stddev";
inline constexpr std::string_view kMedian = "fact.median";
inline constexpr std::string_view kOutliers = "fact.outliers";
inline constexpr std::string_view kTrend = "fact.trend";
inline constexpr std::string_view kCorrelation = "fact.correlation";
inline constexpr std::string_view kPie = "fact.pie";
inline constexpr std::string_view kComparison = "fact.comparison";
inline constexpr std::string_view kContext = "context.note";
}  // namespace id

struct FeatureCatalog {
    std::string chart_id;
    std::vector<Feature> features;
    /// Dependent variables offered in the variable dropdown; empty for
    /// univariate charts.
    std::vector<std::string> variables;
    /// Features or variables left out because their computation failed.
    std::vector<std::string> diagnostics;

    const Feature* find(std::string_view feature_id) const;
};

/// Numeric columns after the first, in table order.
std::vector<std::string> applicable_variables(const ChartBundle& bundle);

/// Grouped/stacked/split chart types, or more than one dependent variable.
bool is_multivariate(const ChartBundle& bundle);

enum class Larger { First, Second, Equal };

struct RowComparison {
    std::size_t row = 0;  // table row
    std::string label;
    Larger larger = Larger::Equal;
    double gap = 0.0;  // |a - b|
};

struct GroupComparison {
    std::string first;
    std::string second;
    std::vector<RowComparison> rows;  // rows where both values are present
    std::size_t first_larger = 0;
    std::size_t second_larger = 0;
    double first_mean = 0.0;
    double second_mean = 0.0;
    std::optional<std::size_t> max_gap_index;  // into `rows`, first occurrence
};

/// Row-by-row comparison of two dependent variables.
GroupComparison compare_groups(const ChartBundle& bundle, std::string_view first, std::string_view second);

nlohmann::json to_json(const GroupComparison& comparison);

/// Builds the catalog in fixed order: general information, data facts,
/// then the context slot. Failing facts are dropped into `diagnostics`.
FeatureCatalog detect_features(const ChartBundle& bundle, const facts::FactsConfig& config = {});

}  // namespace chartscribe::features
