#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chartscribe/color.hpp"
#include "chartscribe/error.hpp"
#include "chartscribe/facts.hpp"
#include "oracles.hpp"

namespace props {

using namespace chartscribe;

namespace {

std::string show(const std::vector<double>& y) {
    std::ostringstream ss;
    ss.precision(17);
    ss << "[";
    for (std::size_t i = 0; i < y.size() && i < 12; ++i) ss << (i ? "," : "") << y[i];
    if (y.size() > 12) ss << ",... n=" << y.size();
    ss << "]";
    return ss.str();
}

bool close(long double got, long double want, double tol) {
    return std::fabs(static_cast<double>(got - want)) <= tol;
}

Shape pick_shape(std::mt19937_64& rng) {
    static constexpr Shape shapes[] = {Shape::Random,   Shape::Random,   Shape::Ascending, Shape::Descending,
                                       Shape::Constant, Shape::Plateaus, Shape::HeavyTail};
    return shapes[std::uniform_int_distribution<std::size_t>(0, std::size(shapes) - 1)(rng)];
}

bool matches(facts::Monotonicity m, facts::Direction d) {
    switch (m) {
        case facts::Monotonicity::Increasing: return d == facts::Direction::Rising;
        case facts::Monotonicity::Decreasing: return d == facts::Direction::Falling;
        case facts::Monotonicity::Constant: return d == facts::Direction::Constant;
    }
    return false;
}

std::string random_hex(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", byte(rng), byte(rng), byte(rng));
    return buf;
}

}  // namespace

Series random_series(std::mt19937_64& rng, std::size_t n, Shape shape) {
    std::uniform_real_distribution<double> value(-100.0, 100.0);
    std::uniform_real_distribution<double> step(0.1, 5.0);
    Series s;
    s.label = "y";
    s.x_kind = ColumnKind::Numeric;
    double x = value(rng);
    for (std::size_t i = 0; i < n; ++i) {
        s.x.push_back(x);
        s.x_labels.push_back(std::to_string(i));
        s.source_rows.push_back(i);
        x += step(rng);
    }
    switch (shape) {
        case Shape::Random:
        case Shape::Ascending:
        case Shape::Descending:
            for (std::size_t i = 0; i < n; ++i) s.y.push_back(value(rng));
            if (shape == Shape::Ascending) std::sort(s.y.begin(), s.y.end());
            if (shape == Shape::Descending) std::sort(s.y.rbegin(), s.y.rend());
            break;
        case Shape::Constant:
            s.y.assign(n, value(rng));
            break;
        case Shape::Plateaus: {
            std::uniform_int_distribution<int> level(-3, 3);
            for (std::size_t i = 0; i < n; ++i) s.y.push_back(level(rng) * 10.0);
            break;
        }
        case Shape::HeavyTail: {
            std::normal_distribution<double> normal(0.0, 5.0);
            std::bernoulli_distribution spike(0.05);
            for (std::size_t i = 0; i < n; ++i) s.y.push_back(spike(rng) ? value(rng) : normal(rng));
            break;
        }
    }
    return s;
}

Report palette_closure() {
    Report r;
    for (const auto& e : color::css3_palette()) {
        ++r.cases;
        const auto m = color::nearest_color_name(e.hex);
        if (m.distance != 0.0 || color::hex_for_name(m.name) != e.hex) {
            r.fail(e.name + " -> " + m.name + " at " + std::to_string(m.distance));
        }
    }
    if (r.cases != 147) r.fail("palette has " + std::to_string(r.cases) + " entries");
    return r;
}

Report color_oracle(std::uint64_t seed, std::size_t count, double tolerance) {
    std::vector<oracle::Named> palette;
    for (const auto& e : color::css3_palette()) palette.push_back({e.name, e.hex});
    std::mt19937_64 rng(seed);
    Report r;
    for (std::size_t i = 0; i < count; ++i) {
        ++r.cases;
        const auto hex = random_hex(rng);
        const auto got = color::nearest_color_name(hex);
        const auto want = oracle::nearest(hex, palette);
        if (got.name != want.name || !close(got.distance, want.distance, tolerance)) {
            r.fail(hex + ": " + got.name + " vs oracle " + want.name);
        }
    }
    return r;
}

Report statistics_oracle(std::uint64_t seed, std::size_t count, double tolerance) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> length(1, 200);
    Report r;
    for (std::size_t c = 0; c < count; ++c) {
        ++r.cases;
        const auto s = random_series(rng, length(rng), pick_shape(rng));
        const auto& y = s.y;
        const auto q = facts::quartiles(s);
        const auto want_rows = oracle::outlier_rows(y);
        std::vector<std::size_t> got_rows;
        for (const auto& o : facts::iqr_outliers(s)) got_rows.push_back(o.row);

        const bool basic = close(facts::mean(s), oracle::mean(y), tolerance) &&
                           close(facts::stddev(s), oracle::pstddev(y), tolerance) &&
                           close(facts::median(s), oracle::quantile7(y, 0.5L), tolerance) &&
                           close(q.q1, oracle::quantile7(y, 0.25L), tolerance) &&
                           close(q.q2, oracle::quantile7(y, 0.5L), tolerance) &&
                           close(q.q3, oracle::quantile7(y, 0.75L), tolerance);
        if (!basic) {
            r.fail("location/spread mismatch on " + show(y));
            continue;
        }
        if (got_rows != want_rows) {
            r.fail("outlier sets differ on " + show(y));
            continue;
        }

        const auto want_r = s.size() < 2 ? std::nullopt : oracle::pearson(s.x, y);
        try {
            const double got_r = facts::correlation(s.x, s.y);
            if (!want_r || !close(got_r, *want_r, tolerance)) r.fail("correlation mismatch on " + show(y));
        } catch (const Error& e) {
            const bool expected = (s.size() < 2 && e.code() == ErrorCode::TooShort) ||
                                  (s.size() >= 2 && !want_r && e.code() == ErrorCode::ConstantInput);
            if (!expected) r.fail(std::string("unexpected ") + e.what() + " on " + show(y));
        }
    }
    return r;
}

Report trend_invariants(std::uint64_t seed, std::size_t count) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> length(2, 200);
    Report r;
    for (std::size_t c = 0; c < count; ++c) {
        ++r.cases;
        const auto shape = pick_shape(rng);
        const auto s = random_series(rng, length(rng), shape);
        const auto intervals = facts::segment_trend(s);
        const auto mono = facts::is_monotonic(s);

        bool tiles = !intervals.empty() && intervals.front().start == 0 && intervals.back().end == s.size() - 1;
        bool alternates = true;
        for (std::size_t i = 0; i < intervals.size(); ++i) {
            tiles = tiles && intervals[i].start < intervals[i].end;
            if (i > 0) {
                tiles = tiles && intervals[i].start == intervals[i - 1].end;
                alternates = alternates && intervals[i].direction != intervals[i - 1].direction;
            }
        }
        const bool monotone_input = shape == Shape::Ascending || shape == Shape::Descending || shape == Shape::Constant;
        if (!tiles) r.fail("intervals do not tile " + show(s.y));
        else if (!alternates) r.fail("adjacent intervals share a direction on " + show(s.y));
        else if (monotone_input && intervals.size() != 1) r.fail("monotone input split on " + show(s.y));
        else if (mono && intervals.size() > 1) {
            ++r.exempt;
            const bool consistent = std::all_of(intervals.begin(), intervals.end(), [&](const auto& t) {
                return matches(*mono, t.direction) || t.direction == facts::Direction::Constant;
            });
            if (!consistent) r.fail("monotone series has a contrary interval on " + show(s.y));
        } else if (mono.has_value() != (intervals.size() == 1)) r.fail("is_monotonic disagrees on " + show(s.y));
        else if (mono && !matches(*mono, intervals.front().direction)) r.fail("direction mismatch on " + show(s.y));
    }
    return r;
}

Report equivariance(std::uint64_t seed, std::size_t count, double tolerance) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> length(2, 200);
    std::uniform_real_distribution<double> scale(0.1, 10.0);
    std::uniform_real_distribution<double> offset(-100.0, 100.0);
    Report r;

    const auto rows = [](const std::vector<facts::Outlier>& v) {
        std::vector<std::size_t> out;
        for (const auto& o : v) out.push_back(o.row);
        return out;
    };
    const auto same_segments = [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i].start != b[i].start || a[i].end != b[i].end || a[i].direction != b[i].direction) return false;
        }
        return true;
    };

    for (std::size_t c = 0; c < count; ++c) {
        ++r.cases;
        const auto base = random_series(rng, length(rng), pick_shape(rng));
        const double k = scale(rng);
        const double b = offset(rng);
        auto scaled = base;
        auto shifted = base;
        for (auto& v : scaled.y) v *= k;
        for (auto& v : shifted.y) v += b;

        const auto e0 = facts::extrema(base);
        const auto q0 = facts::quartiles(base);
        const auto t0 = facts::segment_trend(base);
        const auto m0 = facts::is_monotonic(base);
        std::optional<double> r0;
        try {
            r0 = facts::correlation(base.x, base.y);
        } catch (const Error&) {
        }

        // y -> k*y
        {
            const auto e = facts::extrema(scaled);
            const auto q = facts::quartiles(scaled);
            const auto t = facts::segment_trend(scaled);
            bool ok = e.max_row == e0.max_row && e.min_row == e0.min_row && close(e.max_value, k * e0.max_value, tolerance) &&
                      close(facts::mean(scaled), k * facts::mean(base), tolerance) &&
                      close(facts::stddev(scaled), k * facts::stddev(base), tolerance) &&
                      close(facts::median(scaled), k * facts::median(base), tolerance) &&
                      close(q.q1, k * q0.q1, tolerance) && close(q.q3, k * q0.q3, tolerance) &&
                      rows(facts::iqr_outliers(scaled)) == rows(facts::iqr_outliers(base)) && same_segments(t, t0) &&
                      facts::is_monotonic(scaled) == m0;
            for (std::size_t i = 0; ok && i < t.size(); ++i) ok = close(t[i].slope, k * t0[i].slope, tolerance);
            if (ok && r0) ok = close(facts::correlation(scaled.x, scaled.y), *r0, tolerance);
            if (!ok) r.fail("scale by " + std::to_string(k) + " broke equivariance on " + show(base.y));
        }
        // y -> y + b
        {
            const auto e = facts::extrema(shifted);
            const auto q = facts::quartiles(shifted);
            const auto t = facts::segment_trend(shifted);
            bool ok = e.max_row == e0.max_row && e.min_row == e0.min_row && close(e.min_value, e0.min_value + b, tolerance) &&
                      close(facts::mean(shifted), facts::mean(base) + b, tolerance) &&
                      close(facts::stddev(shifted), facts::stddev(base), tolerance) &&
                      close(facts::median(shifted), facts::median(base) + b, tolerance) &&
                      close(q.q1, q0.q1 + b, tolerance) && close(q.q3, q0.q3 + b, tolerance) &&
                      rows(facts::iqr_outliers(shifted)) == rows(facts::iqr_outliers(base)) && same_segments(t, t0) &&
                      facts::is_monotonic(shifted) == m0;
            for (std::size_t i = 0; ok && i < t.size(); ++i) ok = close(t[i].slope, t0[i].slope, tolerance);
            if (ok && r0) ok = close(facts::correlation(shifted.x, shifted.y), *r0, tolerance);
            if (!ok) r.fail("shift by " + std::to_string(b) + " broke equivariance on " + show(base.y));
        }
    }
    return r;
}

}  // namespace props
