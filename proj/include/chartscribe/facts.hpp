#pragma once

// Descriptive statistics over one chart series: extrema, location and spread,
// IQR outliers, monotonicity, sign-run trend segmentation, correlation and
// pie shares.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chartscribe/model.hpp"

namespace chartscribe::facts {

/// Deltas with |dy| <= kFlatTolerance count as flat.
inline constexpr double kFlatTolerance = 1e-12;

struct FactsConfig {
    /// Interval count above which only the steepest intervals are kept.
    std::size_t interval_threshold = 4;
    /// Number of intervals kept once the threshold is exceeded.
    std::size_t top_k = 3;
};

struct Extrema {
    double max_value = 0.0;
    std::string max_label;
    std::size_t max_row = 0;
    double min_value = 0.0;
    std::string min_label;
    std::size_t min_row = 0;
};

enum class Direction { Rising, Falling, Constant };
enum class Monotonicity { Increasing, Decreasing, Constant };

std::string_view to_string(Direction d) noexcept;
std::string_view to_string(Monotonicity m) noexcept;

struct TrendInterval {
    std::size_t start = 0;
    std::size_t end = 0;  // inclusive
    Direction direction = Direction::Constant;
    double slope = 0.0;

    bool operator==(const TrendInterval&) const = default;
};

struct Quartiles {
    double q1 = 0.0;
    double q2 = 0.0;
    double q3 = 0.0;
};

struct Outlier {
    std::size_t row = 0;  // index into the series
    double value = 0.0;

    bool operator==(const Outlier&) const = default;
};

// Row indices in every result below are positions in the Series; use
// Series::source_rows to map them back to table rows.

Extrema extrema(const Series& s);
double mean(const Series& s);
/// Population standard deviation (divides by n).
double stddev(const Series& s);
double median(const Series& s);
/// Linear interpolation at p * (n - 1) over the sorted values (Hyndman-Fan type 7).
Quartiles quartiles(const Series& s);
/// Values outside [q1 - 1.5 IQR, q3 + 1.5 IQR], in row order.
std::vector<Outlier> iqr_outliers(const Series& s);

/// Non-strict monotonicity; nothing when the series changes direction.
std::optional<Monotonicity> is_monotonic(const Series& s);
/// Maximal runs of same-sign deltas. Consecutive intervals share endpoints.
std::vector<TrendInterval> segment_trend(const Series& s);
/// All intervals when there are at most `config.interval_threshold`, else the
/// `config.top_k` steepest ones (earlier start wins ties) in start order.
std::vector<TrendInterval> significant_intervals(const std::vector<TrendInterval>& intervals,
                                                 const FactsConfig& config = {});

/// Pearson correlation coefficient, clamped to [-1, 1].
double correlation(std::span<const double> x, std::span<const double> y);

/// y_i / sum(y) in row order.
std::vector<double> pie_proportions(const Series& s);

struct FactsBundle {
    std::string variable;
    Extrema extrema;
    double mean = 0.0;
    double stddev = 0.0;
    double median = 0.0;
    Quartiles quartiles;
    std::vector<Outlier> outliers;
    std::optional<Monotonicity> monotonic;
    std::vector<TrendInterval> intervals;
    std::vector<TrendInterval> significant;
    std::optional<double> correlation;
    std::optional<std::vector<double>> pie_shares;
    std::size_t dropped = 0;
};

/// True when trend and correlation apply to this axis kind.
bool has_ordered_axis(ColumnKind x_kind) noexcept;

/// Every applicable fact for one dependent variable of the bundle.
///
/// Trend segmentation and correlation require a numeric or temporal first
/// column and at least two points; pie shares are computed for pie charts
/// only. Errors from the inner computations propagate.
FactsBundle compute_facts(const ChartBundle& bundle, std::string_view variable, const FactsConfig& config = {});

/// Best-effort facts for one variable: each statistic is computed on its own
/// and left empty when it fails, with the reason appended to `diagnostics`.
/// Trend fields are only filled for ordered axes with two or more points.
struct PartialFacts {
    Series series;
    std::optional<Extrema> extrema;
    std::optional<double> mean;
    std::optional<double> stddev;
    std::optional<double> median;
    std::optional<Quartiles> quartiles;
    std::optional<std::vector<Outlier>> outliers;
    bool trend_applicable = false;
    std::optional<Monotonicity> monotonic;
    std::optional<std::vector<TrendInterval>> intervals;
    std::optional<std::vector<TrendInterval>> significant;
    std::optional<double> correlation;
    std::optional<std::vector<double>> pie_shares;
    std::vector<std::string> diagnostics;
};

/// Throws only UnknownVariable.
PartialFacts collect_facts(const ChartBundle& bundle, std::string_view variable, const FactsConfig& config = {});

}  // namespace chartscribe::facts
