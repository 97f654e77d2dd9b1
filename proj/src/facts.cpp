#include "chartscribe/facts.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chartscribe/error.hpp"

namespace chartscribe::facts {

namespace {

void require_points(const Series& s) {
    if (s.size() == 0) throw Error(ErrorCode::EmptySeries, s.label);
}

void require_two(const Series& s) {
    if (s.size() < 2) throw Error(ErrorCode::TooShort, s.label);
}

Direction direction_of(double dy) {
    if (std::abs(dy) <= kFlatTolerance) return Direction::Constant;
    return dy > 0 ? Direction::Rising : Direction::Falling;
}

std::vector<double> sorted_values(const Series& s) {
    std::vector<double> v = s.y;
    std::sort(v.begin(), v.end());
    return v;
}

double interpolate_sorted(const std::vector<double>& sorted, double p) {
    const double pos = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::string_view to_string(Direction d) noexcept {
    switch (d) {
        case Direction::Rising: return "rising";
        case Direction::Falling: return "falling";
        case Direction::Constant: return "constant";
    }
    return "constant";
}

std::string_view to_string(Monotonicity m) noexcept {
    switch (m) {
        case Monotonicity::Increasing: return "increasing";
        case Monotonicity::Decreasing: return "decreasing";
        case Monotonicity::Constant: return "constant";
    }
    return "constant";
}

Extrema extrema(const Series& s) {
    require_points(s);
    std::size_t hi = 0;
    std::size_t lo = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (s.y[i] > s.y[hi]) hi = i;
        if (s.y[i] < s.y[lo]) lo = i;
    }
    return Extrema{s.y[hi], s.x_labels[hi], hi, s.y[lo], s.x_labels[lo], lo};
}

double mean(const Series& s) {
    require_points(s);
    return std::accumulate(s.y.begin(), s.y.end(), 0.0) / static_cast<double>(s.size());
}

double stddev(const Series& s) {
    const double m = mean(s);
    double ss = 0.0;
    for (double v : s.y) ss += (v - m) * (v - m);
    return std::sqrt(ss / static_cast<double>(s.size()));
}

double median(const Series& s) {
    require_points(s);
    const auto v = sorted_values(s);
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

Quartiles quartiles(const Series& s) {
    require_points(s);
    const auto v = sorted_values(s);
    return Quartiles{interpolate_sorted(v, 0.25), interpolate_sorted(v, 0.5), interpolate_sorted(v, 0.75)};
}

std::vector<Outlier> iqr_outliers(const Series& s) {
    const auto q = quartiles(s);
    const double iqr = q.q3 - q.q1;
    const double lower = q.q1 - 1.5 * iqr;
    const double upper = q.q3 + 1.5 * iqr;
    std::vector<Outlier> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.y[i] < lower || s.y[i] > upper) out.push_back({i, s.y[i]});
    }
    return out;
}

std::optional<Monotonicity> is_monotonic(const Series& s) {
    require_two(s);
    bool any_up = false;
    bool any_down = false;
    for (std::size_t i = 1; i < s.size(); ++i) {
        switch (direction_of(s.y[i] - s.y[i - 1])) {
            case Direction::Rising: any_up = true; break;
            case Direction::Falling: any_down = true; break;
            case Direction::Constant: break;
        }
    }
    if (any_up && any_down) return std::nullopt;
    if (any_up) return Monotonicity::Increasing;
    if (any_down) return Monotonicity::Decreasing;
    return Monotonicity::Constant;
}

std::vector<TrendInterval> segment_trend(const Series& s) {
    require_two(s);
    std::vector<TrendInterval> intervals;
    std::size_t start = 0;
    Direction current = direction_of(s.y[1] - s.y[0]);
    const auto close = [&](std::size_t end) {
        double dx = s.x[end] - s.x[start];
        // Repeated x positions fall back to the ordinal distance.
        if (dx == 0.0) dx = static_cast<double>(end - start);
        intervals.push_back({start, end, current, (s.y[end] - s.y[start]) / dx});
    };
    for (std::size_t i = 2; i < s.size(); ++i) {
        const Direction d = direction_of(s.y[i] - s.y[i - 1]);
        if (d != current) {
            close(i - 1);
            start = i - 1;
            current = d;
        }
    }
    close(s.size() - 1);
    return intervals;
}

std::vector<TrendInterval> significant_intervals(const std::vector<TrendInterval>& intervals,
                                                 const FactsConfig& config) {
    if (config.top_k == 0) throw Error(ErrorCode::ValidationError, "top_k must be at least 1");
    if (intervals.size() <= config.interval_threshold) return intervals;

    std::vector<TrendInterval> ranked = intervals;
    std::stable_sort(ranked.begin(), ranked.end(), [](const TrendInterval& l, const TrendInterval& r) {
        const double al = std::abs(l.slope);
        const double ar = std::abs(r.slope);
        if (al != ar) return al > ar;
        return l.start < r.start;
    });
    ranked.resize(std::min(config.top_k, ranked.size()));
    std::sort(ranked.begin(), ranked.end(),
              [](const TrendInterval& l, const TrendInterval& r) { return l.start < r.start; });
    return ranked;
}

double correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw Error(ErrorCode::ValidationError, "correlation inputs differ in length");
    if (x.size() < 2) throw Error(ErrorCode::TooShort, "correlation");
    // Checked exactly: the rounded mean of a constant input can leave
    // residuals of one ulp, which would yield a meaningless r.
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (constant(x) || constant(y)) throw Error(ErrorCode::ConstantInput, "correlation");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw Error(ErrorCode::ConstantInput, "correlation");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::vector<double> pie_proportions(const Series& s) {
    require_points(s);
    double total = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.y[i] < 0.0) throw Error(ErrorCode::NegativeValue, s.label, i);
        total += s.y[i];
    }
    if (total <= 0.0) throw Error(ErrorCode::ZeroTotal, s.label);
    std::vector<double> shares;
    shares.reserve(s.size());
    for (double v : s.y) shares.push_back(v / total);
    return shares;
}

bool has_ordered_axis(ColumnKind x_kind) noexcept {
    return x_kind == ColumnKind::Numeric || x_kind == ColumnKind::Temporal;
}

FactsBundle compute_facts(const ChartBundle& bundle, std::string_view variable, const FactsConfig& config) {
    const Series s = make_series(bundle.table, variable);
    FactsBundle f;
    f.variable = std::string{variable};
    f.dropped = s.dropped;
    f.extrema = extrema(s);
    f.mean = mean(s);
    f.stddev = stddev(s);
    f.median = median(s);
    f.quartiles = quartiles(s);
    f.outliers = iqr_outliers(s);
    if (has_ordered_axis(s.x_kind) && s.size() >= 2) {
        f.monotonic = is_monotonic(s);
        f.intervals = segment_trend(s);
        f.significant = significant_intervals(f.intervals, config);
        try {
            f.correlation = correlation(s.x, s.y);
        } catch (const Error& e) {
            // A flat series or axis has no defined correlation.
            if (e.code() != ErrorCode::ConstantInput) throw;
        }
    }
    if (bundle.metadata.chart_type == ChartType::Pie) f.pie_shares = pie_proportions(s);
    return f;
}

namespace {

template <typename F>
auto attempt(std::vector<std::string>& diagnostics, std::string_view what, F&& f) -> std::optional<decltype(f())> {
    try {
        return f();
    } catch (const Error& e) {
        diagnostics.push_back(std::string{what} + ": " + e.what());
        return std::nullopt;
    }
}

}  // namespace

PartialFacts collect_facts(const ChartBundle& bundle, std::string_view variable, const FactsConfig& config) {
    PartialFacts f;
    f.series = make_series(bundle.table, variable);
    const Series& s = f.series;
    auto& diag = f.diagnostics;
    f.extrema = attempt(diag, "extrema", [&] { return extrema(s); });
    f.mean = attempt(diag, "mean", [&] { return mean(s); });
    f.stddev = attempt(diag, "stddev", [&] { return stddev(s); });
    f.median = attempt(diag, "median", [&] { return median(s); });
    f.quartiles = attempt(diag, "quartiles", [&] { return quartiles(s); });
    f.outliers = attempt(diag, "outliers", [&] { return iqr_outliers(s); });
    if (has_ordered_axis(s.x_kind) && s.size() >= 2) {
        f.trend_applicable = true;
        f.monotonic = is_monotonic(s);
        f.intervals = attempt(diag, "trend", [&] { return segment_trend(s); });
        if (f.intervals) f.significant = significant_intervals(*f.intervals, config);
        f.correlation = attempt(diag, "correlation", [&] { return correlation(s.x, s.y); });
    }
    if (bundle.metadata.chart_type == ChartType::Pie) {
        f.pie_shares = attempt(diag, "pie shares", [&] { return pie_proportions(s); });
    }
    return f;
}

}  // namespace chartscribe::facts
