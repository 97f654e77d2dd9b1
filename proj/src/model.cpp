#include "chartscribe/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>

#include "chartscribe/error.hpp"
#include "text_util.hpp"

namespace chartscribe {

namespace {

struct TypeName {
    std::string_view key;
    ChartType type;
};

// Canonical keys first; each type's first entry is what we serialize.
constexpr std::array kTypeNames{
    TypeName{"bar", ChartType::Bar},
    TypeName{"split-bars", ChartType::SplitBar},
    TypeName{"stacked-bars", ChartType::StackedBar},
    TypeName{"grouped-bars", ChartType::GroupedBar},
    TypeName{"column", ChartType::Column},
    TypeName{"grouped-column", ChartType::GroupedColumn},
    TypeName{"stacked-column", ChartType::StackedColumn},
    TypeName{"line", ChartType::Line},
    TypeName{"area", ChartType::Area},
    TypeName{"pie", ChartType::Pie},
    // Datawrapper and shorthand aliases
    TypeName{"bars", ChartType::Bar},
    TypeName{"d3-bars", ChartType::Bar},
    TypeName{"split-bar", ChartType::SplitBar},
    TypeName{"d3-bars-split", ChartType::SplitBar},
    TypeName{"stacked-bar", ChartType::StackedBar},
    TypeName{"d3-bars-stacked", ChartType::StackedBar},
    TypeName{"grouped-bar", ChartType::GroupedBar},
    TypeName{"d3-bars-grouped", ChartType::GroupedBar},
    TypeName{"columns", ChartType::Column},
    TypeName{"column-chart", ChartType::Column},
    TypeName{"grouped-columns", ChartType::GroupedColumn},
    TypeName{"grouped-column-chart", ChartType::GroupedColumn},
    TypeName{"stacked-columns", ChartType::StackedColumn},
    TypeName{"stacked-column-chart", ChartType::StackedColumn},
    TypeName{"lines", ChartType::Line},
    TypeName{"d3-lines", ChartType::Line},
    TypeName{"d3-area", ChartType::Area},
    TypeName{"pies", ChartType::Pie},
    TypeName{"d3-pies", ChartType::Pie},
    TypeName{"donut", ChartType::Pie},
    TypeName{"d3-donuts", ChartType::Pie},
};

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

int to_int(std::string_view s) {
    int v = 0;
    std::from_chars(s.data(), s.data() + s.size(), v);
    return v;
}

std::optional<std::chrono::sys_days> civil_date(int y, int m, int d) {
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(m)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok()) return std::nullopt;
    return sys_days{ymd};
}

// Parses "HH:MM[:SS[.fff]]" into milliseconds; returns consumed length.
std::optional<std::pair<long long, std::size_t>> parse_time_of_day(std::string_view s, bool seconds_required) {
    if (s.size() < 5 || !all_digits(s.substr(0, 2)) || s[2] != ':' || !all_digits(s.substr(3, 2))) return std::nullopt;
    const int hh = to_int(s.substr(0, 2));
    const int mm = to_int(s.substr(3, 2));
    std::size_t pos = 5;
    int ss = 0;
    long long ms = 0;
    if (pos < s.size() && s[pos] == ':') {
        if (s.size() < pos + 3 || !all_digits(s.substr(pos + 1, 2))) return std::nullopt;
        ss = to_int(s.substr(pos + 1, 2));
        pos += 3;
        if (pos < s.size() && s[pos] == '.') {
            std::size_t end = pos + 1;
            while (end < s.size() && s[end] >= '0' && s[end] <= '9') ++end;
            const auto frac = s.substr(pos + 1, end - pos - 1);
            if (frac.empty()) return std::nullopt;
            std::string padded{frac.substr(0, 3)};
            padded.resize(3, '0');
            ms = to_int(padded);
            pos = end;
        }
    } else if (seconds_required) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
    return std::make_pair(((hh * 60LL + mm) * 60LL + ss) * 1000LL + ms, pos);
}

// Parses "Z", "+hh:mm", "-hh:mm" or "+hhmm"; returns offset in milliseconds.
std::optional<long long> parse_offset(std::string_view s) {
    if (s == "Z" || s == "z") return 0;
    if (s.size() != 6 && s.size() != 5) return std::nullopt;
    if (s[0] != '+' && s[0] != '-') return std::nullopt;
    const auto hh = s.substr(1, 2);
    const auto mm = s.size() == 6 ? s.substr(4, 2) : s.substr(3, 2);
    if (s.size() == 6 && s[3] != ':') return std::nullopt;
    if (!all_digits(hh) || !all_digits(mm)) return std::nullopt;
    const long long minutes = to_int(hh) * 60LL + to_int(mm);
    return (s[0] == '-' ? -1 : 1) * minutes * 60'000LL;
}

}  // namespace

std::string_view to_string(ChartType type) noexcept {
    for (const auto& entry : kTypeNames) {
        if (entry.type == type) return entry.key;
    }
    return "bar";
}

std::optional<ChartType> parse_chart_type(std::string_view text) {
    const std::string key = detail::to_lower(detail::trim(text));
    for (const auto& entry : kTypeNames) {
        if (entry.key == key) return entry.type;
    }
    return std::nullopt;
}

std::string_view display_name(ChartType type) noexcept {
    switch (type) {
        case ChartType::Bar: return "bar chart";
        case ChartType::SplitBar: return "split bar chart";
        case ChartType::StackedBar: return "stacked bar chart";
        case ChartType::GroupedBar: return "grouped bar chart";
        case ChartType::Column: return "column chart";
        case ChartType::GroupedColumn: return "grouped column chart";
        case ChartType::StackedColumn: return "stacked column chart";
        case ChartType::Line: return "line chart";
        case ChartType::Area: return "area chart";
        case ChartType::Pie: return "pie chart";
    }
    return "chart";
}

bool is_multivariate_type(ChartType type) noexcept {
    switch (type) {
        case ChartType::SplitBar:
        case ChartType::StackedBar:
        case ChartType::GroupedBar:
        case ChartType::GroupedColumn:
        case ChartType::StackedColumn: return true;
        default: return false;
    }
}

std::string_view to_string(SortOrder order) noexcept {
    return order == SortOrder::Ascending ? "ascending" : "descending";
}

std::string_view to_string(AxisRole role) noexcept {
    return role == AxisRole::Independent ? "independent" : "dependent";
}

std::string_view to_string(ColumnKind kind) noexcept {
    switch (kind) {
        case ColumnKind::Categorical: return "categorical";
        case ColumnKind::Numeric: return "numeric";
        case ColumnKind::Temporal: return "temporal";
    }
    return "categorical";
}

std::string_view to_string(FeatureCategory category) noexcept {
    switch (category) {
        case FeatureCategory::GeneralInfo: return "general";
        case FeatureCategory::DataFact: return "fact";
        case FeatureCategory::Context: return "context";
    }
    return "general";
}

std::string_view display_color(FeatureCategory category) noexcept {
    switch (category) {
        case FeatureCategory::GeneralInfo: return "#FFC0CB";
        case FeatureCategory::DataFact: return "#008000";
        case FeatureCategory::Context: return "#ADD8E6";
    }
    return "#FFC0CB";
}

std::optional<Timestamp> parse_timestamp(std::string_view text) {
    text = detail::trim(text);
    if (text.size() < 20 || text[4] != '-' || text[7] != '-' || (text[10] != 'T' && text[10] != 't')) return std::nullopt;
    if (!all_digits(text.substr(0, 4)) || !all_digits(text.substr(5, 2)) || !all_digits(text.substr(8, 2))) {
        return std::nullopt;
    }
    const auto date = civil_date(to_int(text.substr(0, 4)), to_int(text.substr(5, 2)), to_int(text.substr(8, 2)));
    if (!date) return std::nullopt;
    const auto tod = parse_time_of_day(text.substr(11), true);
    if (!tod) return std::nullopt;
    const auto offset = parse_offset(text.substr(11 + tod->second));
    if (!offset) return std::nullopt;
    using std::chrono::milliseconds;
    return Timestamp{std::chrono::time_point_cast<milliseconds>(*date)} + milliseconds{tod->first - *offset};
}

std::string format_timestamp(Timestamp ts) {
    using namespace std::chrono;
    const auto days = floor<std::chrono::days>(ts);
    const year_month_day ymd{days};
    const auto ms_of_day = (ts - days).count();
    const long long secs = ms_of_day / 1000;
    const long long ms = ms_of_day % 1000;
    char buf[64];
    if (ms != 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lld.%03lldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), secs / 3600,
                      (secs / 60) % 60, secs % 60, ms);
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02lld:%02lld:%02lldZ", static_cast<int>(ymd.year()),
                      static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()), secs / 3600,
                      (secs / 60) % 60, secs % 60);
    }
    return buf;
}

std::optional<double> parse_temporal_days(std::string_view text) {
    text = detail::trim(text);
    if (text.size() < 4 || !all_digits(text.substr(0, 4))) return std::nullopt;
    const int y = to_int(text.substr(0, 4));
    int m = 1;
    int d = 1;
    std::size_t pos = 4;
    if (pos < text.size()) {
        if (text[pos] != '-' || text.size() < pos + 3 || !all_digits(text.substr(pos + 1, 2))) return std::nullopt;
        m = to_int(text.substr(pos + 1, 2));
        pos += 3;
    }
    if (pos < text.size()) {
        if (text[pos] != '-' || text.size() < pos + 3 || !all_digits(text.substr(pos + 1, 2))) return std::nullopt;
        d = to_int(text.substr(pos + 1, 2));
        pos += 3;
    }
    const auto date = civil_date(y, m, d);
    if (!date) return std::nullopt;
    double days = static_cast<double>(date->time_since_epoch().count());
    if (pos == text.size()) return days;
    // A time of day is only meaningful after a full date.
    if (pos != 10 || (text[pos] != 'T' && text[pos] != 't')) return std::nullopt;
    const auto tod = parse_time_of_day(text.substr(pos + 1), false);
    if (!tod) return std::nullopt;
    const auto rest = text.substr(pos + 1 + tod->second);
    long long offset_ms = 0;
    if (!rest.empty()) {
        const auto offset = parse_offset(rest);
        if (!offset) return std::nullopt;
        offset_ms = *offset;
    }
    return days + static_cast<double>(tod->first - offset_ms) / 86'400'000.0;
}

std::optional<std::size_t> DataTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i].name == name) return i;
    }
    return std::nullopt;
}

std::string cell_text(const Cell& cell) {
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    if (const auto* v = std::get_if<double>(&cell)) return detail::shortest_repr(*v);
    return {};
}

ChartBundle validate_bundle(ChartBundle bundle) {
    const auto& table = bundle.table;
    if (bundle.metadata.id.empty()) throw Error(ErrorCode::MissingField, "id");
    if (table.columns.empty()) throw Error(ErrorCode::EmptyTable, "table has no columns");

    std::set<std::string> seen;
    for (const auto& column : table.columns) {
        if (!seen.insert(column.name).second) throw Error(ErrorCode::DuplicateColumn, column.name);
    }
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (row.size() != table.columns.size()) throw Error(ErrorCode::RaggedRow, {}, r);
        for (std::size_t c = 0; c < row.size(); ++c) {
            const auto kind = table.columns[c].kind;
            const auto& cell = row[c];
            const bool ok = std::visit(
                [kind](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, std::monostate>) {
                        return kind != ColumnKind::Categorical;
                    } else if constexpr (std::is_same_v<T, double>) {
                        return kind == ColumnKind::Numeric && std::isfinite(v);
                    } else {
                        return kind == ColumnKind::Categorical ||
                               (kind == ColumnKind::Temporal && parse_temporal_days(v).has_value());
                    }
                },
                cell);
            if (!ok) throw Error(ErrorCode::ValidationError, "cell does not match column kind: " + table.columns[c].name, r);
        }
    }
    if (table.rows.empty()) throw Error(ErrorCode::EmptyTable, "table has no rows");

    if (!bundle.svg_text && !bundle.extracted_colors.empty()) {
        throw Error(ErrorCode::ValidationError, "extracted colors without svg");
    }
    for (const auto& hex : bundle.extracted_colors) {
        if (!detail::is_normalized_hex(hex)) throw Error(ErrorCode::InvalidHex, hex);
    }
    return bundle;
}

Series make_series(const DataTable& table, std::string_view variable) {
    const auto col = table.column_index(variable);
    if (!col || *col == 0 || table.columns[*col].kind != ColumnKind::Numeric) {
        throw Error(ErrorCode::UnknownVariable, std::string{variable});
    }
    Series s;
    s.label = std::string{variable};
    s.x_kind = table.columns[0].kind;

    std::optional<double> first_day;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        const auto* y = std::get_if<double>(&row[*col]);
        std::optional<double> x;
        switch (s.x_kind) {
            case ColumnKind::Categorical: x = static_cast<double>(r); break;
            case ColumnKind::Numeric:
                if (const auto* v = std::get_if<double>(&row[0])) x = *v;
                break;
            case ColumnKind::Temporal:
                if (const auto* t = std::get_if<std::string>(&row[0])) x = parse_temporal_days(*t);
                break;
        }
        if (!y || !x) {
            ++s.dropped;
            continue;
        }
        if (s.x_kind == ColumnKind::Temporal) {
            if (!first_day) first_day = *x;
            *x -= *first_day;
        }
        s.x.push_back(*x);
        s.x_labels.push_back(cell_text(row[0]));
        s.source_rows.push_back(r);
        s.y.push_back(*y);
    }
    return s;
}

Series make_series(std::vector<double> y, std::vector<std::string> labels) {
    Series s;
    s.label = "value";
    s.x_kind = ColumnKind::Categorical;
    s.y = std::move(y);
    for (std::size_t i = 0; i < s.y.size(); ++i) {
        s.x.push_back(static_cast<double>(i));
        s.x_labels.push_back(i < labels.size() ? labels[i] : std::to_string(i));
        s.source_rows.push_back(i);
    }
    return s;
}

bool resolves(const AnchorRef& anchor, const DataTable& table) {
    return std::visit(
        [&table](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DataPointAnchor>) {
                return a.row < table.rows.size() && table.column_index(a.column).has_value();
            } else if constexpr (std::is_same_v<T, ColumnAnchor>) {
                return table.column_index(a.column).has_value();
            } else {
                return true;
            }
        },
        anchor);
}

}  // namespace chartscribe
