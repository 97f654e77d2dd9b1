#include "chartscribe/textgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "chartscribe/error.hpp"
#include "text_util.hpp"

namespace chartscribe::embedded {
extern const std::string_view kDescriptionTemplates;
}

namespace chartscribe::text {

using nlohmann::json;

namespace {

std::string str(const json& j) {
    return j.is_string() ? j.get<std::string>() : j.dump();
}

// Author text placed inside quotes; a closing period would double up with
// the sentence's own.
std::string quoted(const json& j) {
    std::string s{detail::trim(str(j))};
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

class FeatureRenderer {
public:
    FeatureRenderer(const Feature& feature, const FormatConfig& fmt, const TemplateCatalog& templates)
        : feature_(feature), fmt_(fmt), templates_(templates) {}

    std::string render_plain(const SelectionState& selection) const {
        const auto& id = feature_.feature_id;
        const auto& p = feature_.payload;
        if (id == features::id::kType) return type_sentence();
        if (id == features::id::kTitle) return templates_.render(id, {{"title", quoted(p.at("title"))}});
        if (id == features::id::kSubtitle) return templates_.render(id, {{"subtitle", quoted(p.at("subtitle"))}});
        if (id == features::id::kFootnote) return templates_.render(id, {{"footnote", quoted(p.at("footnote"))}});
        if (id == features::id::kAxes) return axes_sentence();
        if (id == features::id::kColors) return colors_sentence();
        if (id == features::id::kSorting) return sorting_sentence();
        if (id == features::id::kMissing) return missing_sentence();
        if (id == features::id::kContext) {
            const auto text = selection.context_text ? std::string{detail::trim(*selection.context_text)} : "";
            if (text.empty()) throw Error(ErrorCode::ValidationError, "context text is empty");
            return templates_.render(id, {{"text", text}});
        }
        const auto& entries = p.at("variables");
        if (entries.empty()) throw Error(ErrorCode::ValidationError, "feature has no data: " + id);
        return fact_sentence(entries.front(), false);
    }

    std::string render_variables(const std::vector<std::string>& raw_choices) const {
        std::vector<std::string> choices;
        for (const auto& c : raw_choices) {
            if (std::find(choices.begin(), choices.end(), c) == choices.end()) choices.push_back(c);
        }
        if (choices.empty()) throw Error(ErrorCode::MissingVariableChoice, feature_.feature_id);

        std::vector<std::string> sentences;
        if (feature_.feature_id == features::id::kComparison) {
            for (const auto& c : choices) sentences.push_back(within_sentence(entry_for(c, "within")));
            if (choices.size() == 2) sentences.push_back(pair_sentence(choices[0], choices[1]));
        } else {
            for (const auto& c : choices) sentences.push_back(fact_sentence(entry_for(c, "variables"), true));
            if (choices.size() == 2) {
                sentences.push_back(between_sentence(entry_for(choices[0], "variables"), entry_for(choices[1], "variables")));
            }
        }
        std::string out;
        for (const auto& s : sentences) {
            if (!out.empty()) out.push_back(' ');
            out += s;
        }
        return out;
    }

private:
    std::string num(const json& v) const { return format_number(v.get<double>(), fmt_); }

    std::string percent(const json& share) const { return format_number(share.get<double>() * 100.0, fmt_) + "%"; }

    std::string join_list(const std::vector<std::string>& items) const {
        if (items.empty()) return {};
        if (items.size() == 1) return items.front();
        std::string out;
        for (std::size_t i = 0; i + 1 < items.size(); ++i) {
            if (i) out += ", ";
            out += items[i];
        }
        return out + " " + templates_.at("fragment.list.and") + " " + items.back();
    }

    std::vector<std::string> variable_names() const {
        std::vector<std::string> names;
        for (const auto& v : feature_.payload.value("variables", json::array())) names.push_back(str(v));
        return names;
    }

    const json& entry_for(const std::string& variable, const char* list) const {
        for (const auto& e : feature_.payload.at(list)) {
            if (e.at("variable") == variable) return e;
        }
        throw Error(ErrorCode::UnknownVariable, variable);
    }

    std::string key(std::string base, bool variable) const {
        if (variable) base += ".variable";
        return base;
    }

    std::string type_sentence() const {
        const auto& p = feature_.payload;
        const std::string name = str(p.at("name"));
        const bool vowel = !name.empty() && std::string_view("aeiou").find(name.front()) != std::string_view::npos;
        const std::string phrase = (vowel ? "an " : "a ") + name;
        const auto vars = variable_names();
        if (p.value("multivariate", false) && vars.size() >= 2) {
            return templates_.render("general.type.multivariate", {{"type_phrase", phrase},
                                                                   {"variable_count", std::to_string(vars.size())},
                                                                   {"variable_list", join_list(vars)}});
        }
        return templates_.render("general.type", {{"type_phrase", phrase}});
    }

    std::string axes_sentence() const {
        const auto& p = feature_.payload;
        const auto vars = variable_names();
        const std::string independent = str(p.at("independent"));
        if (!vars.empty() && is_pie()) {
            return templates_.render("general.axes.pie", {{"variable_list", join_list(vars)}, {"independent", independent}});
        }
        if (!p.at("dependent").is_null()) {
            return templates_.render("general.axes.labeled",
                                     {{"dependent", str(p.at("dependent"))}, {"independent", independent}});
        }
        if (!vars.empty()) {
            return templates_.render("general.axes.variables",
                                     {{"variable_list", join_list(vars)}, {"independent", independent}});
        }
        return templates_.render("general.axes.categories", {{"independent", independent}});
    }

    bool is_pie() const { return feature_.payload.value("chart_type", "") == "pie"; }

    std::string colors_sentence() const {
        const auto& p = feature_.payload;
        if (p.at("associated").get<bool>()) {
            std::vector<std::string> parts;
            for (const auto& a : p.at("associations")) {
                parts.push_back(templates_.render("fragment.color.association",
                                                  {{"name", str(a.at("name"))}, {"variable", str(a.at("variable"))}}));
            }
            return templates_.render("general.colors.associated", {{"association_list", join_list(parts)}});
        }
        std::vector<std::string> names;
        for (const auto& c : p.at("colors")) names.push_back(str(c.at("name")));
        // Distinct hex codes can share a nearest name.
        std::vector<std::string> unique;
        for (auto& n : names) {
            if (std::find(unique.begin(), unique.end(), n) == unique.end()) unique.push_back(std::move(n));
        }
        return templates_.render(unique.size() == 1 ? "general.colors.single" : "general.colors.listed",
                                 {{"color_list", join_list(unique)}});
    }

    std::string sorting_sentence() const {
        const auto& p = feature_.payload;
        const std::string order = str(p.at("data_order"));
        if (p.at("mismatch").get<bool>()) {
            const std::string actual = order == "unsorted"
                                           ? templates_.render("fragment.sorting.actual.unsorted", {})
                                           : templates_.render("fragment.sorting.actual.sorted", {{"order", order}});
            return templates_.render("general.sorting.mismatch", {{"declared", str(p.at("declared"))}, {"actual", actual}});
        }
        if (order == "ascending" || order == "descending") {
            return templates_.render("general.sorting.sorted", {{"order", order}});
        }
        if (order == "constant") return templates_.render("general.sorting.constant", {{"variable", str(p.at("variable"))}});
        return templates_.render("general.sorting.unsorted", {});
    }

    std::string missing_sentence() const {
        const auto total = feature_.payload.at("total").get<std::size_t>();
        return templates_.render(total == 1 ? "general.missing.one" : "general.missing.many",
                                 {{"count", std::to_string(total)}});
    }

    std::string interval_fragment(const json& t) const {
        return templates_.render("fragment.trend." + str(t.at("direction")), {{"start", num(t.at("start_value"))},
                                                                              {"start_label", str(t.at("start_label"))},
                                                                              {"end", num(t.at("end_value"))},
                                                                              {"end_label", str(t.at("end_label"))}});
    }

    std::string turns_phrase(std::size_t turns) const {
        if (turns == 1) return templates_.at("fragment.turns.once");
        if (turns == 2) return templates_.at("fragment.turns.twice");
        return templates_.render("fragment.turns.many", {{"count", std::to_string(turns)}});
    }

    std::string fact_sentence(const json& e, bool variable) const {
        const auto& id = feature_.feature_id;
        Bindings b{{"variable", str(e.at("variable"))}};
        if (id == features::id::kExtrema) {
            b.insert({{"max", num(e.at("max"))},
                      {"max_label", str(e.at("max_label"))},
                      {"min", num(e.at("min"))},
                      {"min_label", str(e.at("min_label"))}});
            return templates_.render(key(id, variable), b);
        }
        if (id == features::id::kMean) {
            b.emplace("mean", num(e.at("mean")));
            return templates_.render(key(id, variable), b);
        }
        if (id == features::id::kStddev) {
            b.insert({{"stddev", num(e.at("stddev"))}, {"mean", num(e.at("mean"))}});
            return templates_.render(key(id, variable), b);
        }
        if (id == features::id::kMedian) {
            b.emplace("median", num(e.at("median")));
            return templates_.render(key(id, variable), b);
        }
        if (id == features::id::kOutliers) {
            const auto& list = e.at("outliers");
            std::vector<std::string> items;
            for (const auto& o : list) {
                items.push_back(templates_.render("fragment.outlier", {{"value", num(o.at("value"))}, {"label", str(o.at("label"))}}));
            }
            b.insert({{"count", std::to_string(list.size())}, {"outlier_list", join_list(items)}});
            const char* cond = list.empty() ? ".none" : list.size() == 1 ? ".one" : ".many";
            return templates_.render(key(id + cond, variable), b);
        }
        if (id == features::id::kTrend) {
            const auto& first = e.at("first");
            if (!e.at("monotonic").is_null()) {
                b.insert({{"start", num(first.at("start_value"))},
                          {"start_label", str(first.at("start_label"))},
                          {"end", num(first.at("end_value"))},
                          {"end_label", str(first.at("end_label"))}});
                return templates_.render(key(id + ".monotonic." + str(e.at("monotonic")), variable), b);
            }
            const auto& intervals = e.at("intervals");
            const bool significant_only = intervals.size() > e.at("threshold").get<std::size_t>();
            std::vector<std::string> items;
            for (const auto& t : significant_only ? e.at("significant") : intervals) items.push_back(interval_fragment(t));
            b.insert({{"turns", turns_phrase(intervals.size() - 1)}, {"interval_list", join_list(items)}});
            return templates_.render(key(id + (significant_only ? ".significant" : ".intervals"), variable), b);
        }
        if (id == features::id::kCorrelation) {
            const double r = e.at("r").get<double>();
            const double mag = std::abs(r);
            b.insert({{"r", format_number(r, fmt_)}, {"independent", str(e.at("independent"))}});
            if (mag < 0.1) return templates_.render(key(id + ".none", variable), b);
            const char* strength = mag >= 0.7 ? "strong" : mag >= 0.4 ? "moderate" : "weak";
            b.insert({{"strength", templates_.at(std::string{"fragment.correlation."} + strength)},
                      {"sign", templates_.at(r > 0 ? "fragment.correlation.positive" : "fragment.correlation.negative")}});
            return templates_.render(key(id, variable), b);
        }
        if (id == features::id::kPie) {
            const auto& largest = e.at("largest");
            const auto& smallest = e.at("smallest");
            b.insert({{"largest_label", str(largest.at("label"))},
                      {"largest_share", percent(largest.at("share"))},
                      {"smallest_label", str(smallest.at("label"))},
                      {"smallest_share", percent(smallest.at("share"))}});
            return templates_.render(key(id + (e.at("shares").size() == 1 ? ".single" : ""), variable), b);
        }
        throw Error(ErrorCode::ValidationError, "no template for feature " + id);
    }

    // "higher"/"lower" bindings, or the .equal variant when the values tie.
    std::string ranked_between(const std::string& base, const json& a, const json& b, double va, double vb,
                               const json& shown_a, const json& shown_b, Bindings extra = {}) const {
        if (va == vb) {
            extra.insert({{"first", str(a.at("variable"))}, {"second", str(b.at("variable"))}, {"value", num(shown_a)}});
            return templates_.render(base + ".between.equal", extra);
        }
        const bool a_higher = va > vb;
        extra.insert({{"higher", str((a_higher ? a : b).at("variable"))},
                      {"lower", str((a_higher ? b : a).at("variable"))},
                      {"higher_value", num(a_higher ? shown_a : shown_b)},
                      {"lower_value", num(a_higher ? shown_b : shown_a)}});
        return templates_.render(base + ".between", extra);
    }

    std::string between_sentence(const json& a, const json& b) const {
        const auto& id = feature_.feature_id;
        const auto scalar = [&](const char* field) {
            return ranked_between(id, a, b, a.at(field).get<double>(), b.at(field).get<double>(), a.at(field), b.at(field));
        };
        if (id == features::id::kExtrema) return scalar("max");
        if (id == features::id::kMean) return scalar("mean");
        if (id == features::id::kStddev) return scalar("stddev");
        if (id == features::id::kMedian) return scalar("median");
        if (id == features::id::kCorrelation) {
            return ranked_between(id, a, b, std::abs(a.at("r").get<double>()), std::abs(b.at("r").get<double>()), a.at("r"),
                                  b.at("r"), {{"independent", str(a.at("independent"))}});
        }
        Bindings bind{{"first", str(a.at("variable"))}, {"second", str(b.at("variable"))}};
        if (id == features::id::kOutliers) {
            bind.insert({{"first_count", std::to_string(a.at("outliers").size())},
                         {"second_count", std::to_string(b.at("outliers").size())}});
        } else if (id == features::id::kTrend) {
            const auto change = [&](const json& e) {
                const auto& f = e.at("first");
                return format_number(f.at("end_value").get<double>() - f.at("start_value").get<double>(), fmt_);
            };
            bind.insert({{"first_change", change(a)}, {"second_change", change(b)}});
        } else if (id == features::id::kPie) {
            bind.insert({{"first_label", str(a.at("largest").at("label"))}, {"second_label", str(b.at("largest").at("label"))}});
        } else {
            throw Error(ErrorCode::ValidationError, "no comparison template for feature " + id);
        }
        return templates_.render(id + ".between", bind);
    }

    std::string within_sentence(const json& w) const {
        return templates_.render("fact.comparison.within", {{"variable", str(w.at("variable"))},
                                                            {"above", std::to_string(w.at("above_mean").get<std::size_t>())},
                                                            {"count", std::to_string(w.at("count").get<std::size_t>())},
                                                            {"mean", num(w.at("mean"))}});
    }

    std::string pair_sentence(const std::string& a, const std::string& b) const {
        for (const auto& pair : feature_.payload.at("pairs")) {
            const bool forward = pair.at("first") == a && pair.at("second") == b;
            const bool backward = pair.at("first") == b && pair.at("second") == a;
            if (!forward && !backward) continue;
            const auto& a_larger = pair.at(forward ? "first_larger" : "second_larger");
            const auto& b_larger = pair.at(forward ? "second_larger" : "first_larger");
            Bindings bind{{"first", a},
                          {"second", b},
                          {"count", std::to_string(pair.at("count").get<std::size_t>())},
                          {"first_larger", std::to_string(a_larger.get<std::size_t>())},
                          {"second_larger", std::to_string(b_larger.get<std::size_t>())}};
            if (a_larger.get<std::size_t>() == 0 && b_larger.get<std::size_t>() == 0) {
                return templates_.render("fact.comparison.between.equal", bind);
            }
            const auto& gap = pair.at("max_gap");
            bind.insert({{"gap", num(gap.at("gap"))}, {"gap_label", str(gap.at("label"))}});
            return templates_.render("fact.comparison.between", bind);
        }
        throw Error(ErrorCode::UnknownVariable, a + "/" + b);
    }

    const Feature& feature_;
    const FormatConfig& fmt_;
    const TemplateCatalog& templates_;
};

DescriptionSegment make_segment(const Feature& feature, std::string text) {
    return DescriptionSegment{feature.feature_id, std::move(text), feature.anchors, 0, false};
}

}  // namespace

std::string format_number(double value, const FormatConfig& fmt) {
    if (!std::isfinite(value)) throw Error(ErrorCode::NonFinite, detail::shortest_repr(value));
    const int decimals = std::clamp(fmt.max_decimals, 0, 9);
    const double scale = std::pow(10.0, decimals);
    const double scaled = value * scale;
    std::string digits;
    bool negative = false;
    if (std::abs(scaled) < 9.0e15) {
        const long long rounded = std::llround(scaled);  // half away from zero
        negative = rounded < 0;
        const unsigned long long mag = static_cast<unsigned long long>(negative ? -rounded : rounded);
        const auto unit = static_cast<unsigned long long>(scale);
        digits = std::to_string(mag / unit);
        if (decimals > 0) {
            std::string frac = std::to_string(mag % unit);
            frac.insert(0, static_cast<std::size_t>(decimals) - frac.size(), '0');
            while (!frac.empty() && frac.back() == '0') frac.pop_back();
            if (!frac.empty()) digits += "." + frac;
        }
    } else {
        // Beyond 2^53 the value is already an integer.
        negative = value < 0;
        char buf[400];
        std::snprintf(buf, sizeof buf, "%.0f", std::abs(value));
        digits = buf;
    }
    return negative ? fmt.minus_sign + digits : digits;
}

TemplateCatalog TemplateCatalog::parse(std::string_view text) {
    TemplateCatalog catalog;
    std::size_t pos = 0;
    std::size_t line_no = 0;
    while (pos < text.size()) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        auto line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (detail::trim(line).empty() || detail::trim(line).front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw Error(ErrorCode::MalformedDocument, "template line " + std::to_string(line_no) + " has no '='");
        }
        std::string key{detail::trim(line.substr(0, eq))};
        if (key.empty()) throw Error(ErrorCode::MalformedDocument, "template line " + std::to_string(line_no) + " has no key");
        catalog.templates_[std::move(key)] = std::string{line.substr(eq + 1)};
    }
    return catalog;
}

TemplateCatalog TemplateCatalog::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::FileNotFound, path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

const TemplateCatalog& TemplateCatalog::builtin() {
    static const TemplateCatalog catalog = parse(embedded::kDescriptionTemplates);
    return catalog;
}

bool TemplateCatalog::contains(std::string_view key) const {
    return templates_.find(key) != templates_.end();
}

const std::string& TemplateCatalog::at(std::string_view key) const {
    const auto it = templates_.find(key);
    if (it == templates_.end()) throw Error(ErrorCode::ValidationError, "missing template: " + std::string{key});
    return it->second;
}

std::vector<std::string> TemplateCatalog::keys() const {
    std::vector<std::string> out;
    for (const auto& [k, _] : templates_) out.push_back(k);
    return out;
}

std::string TemplateCatalog::render(std::string_view key, const Bindings& bindings) const {
    const std::string& tmpl = at(key);
    std::string out;
    std::size_t pos = 0;
    while (pos < tmpl.size()) {
        const auto open = tmpl.find('{', pos);
        const auto close = open == std::string::npos ? std::string::npos : tmpl.find('}', open);
        if (close == std::string::npos) {
            out.append(tmpl, pos, std::string::npos);
            break;
        }
        out.append(tmpl, pos, open - pos);
        const std::string_view name{tmpl.data() + open + 1, close - open - 1};
        const auto it = bindings.find(name);
        if (it == bindings.end()) throw Error(ErrorCode::UnboundPlaceholder, std::string{name});
        out += it->second;
        pos = close + 1;
    }
    return out;
}

std::vector<std::string> TemplateCatalog::placeholders(std::string_view key) const {
    const std::string& tmpl = at(key);
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const auto open = tmpl.find('{', pos);
        if (open == std::string::npos) break;
        const auto close = tmpl.find('}', open);
        if (close == std::string::npos) break;
        out.push_back(tmpl.substr(open + 1, close - open - 1));
        pos = close + 1;
    }
    return out;
}

DescriptionSegment render_feature(const Feature& feature, const SelectionState& selection, const FormatConfig& fmt,
                                  const TemplateCatalog& templates) {
    if (feature.requires_variable) {
        const auto it = selection.variable_choices.find(feature.feature_id);
        if (it == selection.variable_choices.end() || it->second.empty()) {
            throw Error(ErrorCode::MissingVariableChoice, feature.feature_id);
        }
        return update_for_variables(feature, it->second, fmt, templates);
    }
    return make_segment(feature, FeatureRenderer(feature, fmt, templates).render_plain(selection));
}

DescriptionSegment update_for_variables(const Feature& feature, const std::vector<std::string>& choices,
                                        const FormatConfig& fmt, const TemplateCatalog& templates) {
    if (!feature.requires_variable) {
        throw Error(ErrorCode::ValidationError, feature.feature_id + " does not take variable choices");
    }
    return make_segment(feature, FeatureRenderer(feature, fmt, templates).render_variables(choices));
}

Description compose_description(std::string chart_id, std::vector<DescriptionSegment> segments,
                                const std::vector<std::size_t>& order, const std::map<std::string, std::string>& edits) {
    const std::size_t n = segments.size();
    if (order.size() != n) throw Error(ErrorCode::InvalidPermutation, "order has " + std::to_string(order.size()) + " entries");
    std::vector<bool> used(n, false);
    for (auto i : order) {
        if (i >= n || used[i]) throw Error(ErrorCode::InvalidPermutation, {}, i);
        used[i] = true;
    }
    for (const auto& [feature_id, _] : edits) {
        const bool present = std::any_of(segments.begin(), segments.end(),
                                         [&](const DescriptionSegment& s) { return s.feature_id == feature_id; });
        if (!present) throw Error(ErrorCode::UnknownFeatureEdit, feature_id);
    }

    Description d;
    d.chart_id = std::move(chart_id);
    d.segments.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        DescriptionSegment s = std::move(segments[order[j]]);
        s.order_index = j;
        if (const auto it = edits.find(s.feature_id); it != edits.end()) {
            s.text = it->second;
            s.edited = true;
        }
        d.segments.push_back(std::move(s));
    }
    for (const auto& s : d.segments) {
        if (&s != &d.segments.front()) d.rendered.push_back(' ');
        d.rendered += s.text;
    }
    return d;
}

void validate_selection(const features::FeatureCatalog& catalog, const SelectionState& selection) {
    std::set<std::string> seen;
    for (const auto& id : selection.selected_feature_ids) {
        if (!catalog.find(id)) throw Error(ErrorCode::ValidationError, "unknown feature: " + id);
        if (!seen.insert(id).second) throw Error(ErrorCode::ValidationError, "feature selected twice: " + id);
    }
    for (const auto& [id, choices] : selection.variable_choices) {
        const auto* f = catalog.find(id);
        if (!f) throw Error(ErrorCode::ValidationError, "variable choice for unknown feature: " + id);
        if (!f->requires_variable) throw Error(ErrorCode::ValidationError, id + " does not take variable choices");
        for (const auto& c : choices) {
            if (std::find(catalog.variables.begin(), catalog.variables.end(), c) == catalog.variables.end()) {
                throw Error(ErrorCode::ValidationError, "unknown variable for " + id + ": " + c);
            }
        }
    }
    const bool has_context = selection.context_text && !detail::trim(*selection.context_text).empty();
    for (const auto& [id, _] : selection.manual_edits) {
        const bool context_edit = id == features::id::kContext && has_context;
        if (!seen.count(id) && !context_edit) throw Error(ErrorCode::ValidationError, "edit for unselected feature: " + id);
    }
}

Description describe(const features::FeatureCatalog& catalog, const SelectionState& selection, const FormatConfig& fmt,
                     const TemplateCatalog& templates) {
    validate_selection(catalog, selection);
    const bool has_context = selection.context_text && !detail::trim(*selection.context_text).empty();
    const std::string context_id{features::id::kContext};

    std::vector<DescriptionSegment> segments;
    bool context_rendered = false;
    for (const auto& id : selection.selected_feature_ids) {
        if (id == context_id) {
            if (!has_context) continue;
            context_rendered = true;
        }
        segments.push_back(render_feature(*catalog.find(id), selection, fmt, templates));
    }
    if (has_context && !context_rendered) {
        segments.push_back(render_feature(*catalog.find(context_id), selection, fmt, templates));
    }
    std::vector<std::size_t> order(segments.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    std::map<std::string, std::string> edits;
    for (const auto& [id, text] : selection.manual_edits) {
        // An edit on an empty context slot has no segment to land on.
        if (id == context_id && !has_context) continue;
        edits.emplace(id, text);
    }
    return compose_description(catalog.chart_id, std::move(segments), order, edits);
}

SelectionState select_all(const features::FeatureCatalog& catalog) {
    SelectionState s;
    for (const auto& f : catalog.features) {
        s.selected_feature_ids.push_back(f.feature_id);
        if (f.requires_variable) s.variable_choices[f.feature_id] = catalog.variables;
    }
    return s;
}

}  // namespace chartscribe::text
