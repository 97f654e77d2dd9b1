#include "chartscribe/features.hpp"

#include <algorithm>
#include <cmath>

#include "chartscribe/color.hpp"
#include "chartscribe/error.hpp"
#include "chartscribe/kernels.hpp"

namespace chartscribe::features {

using nlohmann::json;

namespace {

Feature make_feature(std::string_view feature_id, FeatureCategory category, std::string label, bool requires_variable,
                     json payload, std::vector<AnchorRef> anchors) {
    return Feature{std::string{feature_id}, category, std::move(label), requires_variable, std::move(payload),
                   std::move(anchors)};
}

void add_anchor(std::vector<AnchorRef>& anchors, AnchorRef anchor) {
    if (std::find(anchors.begin(), anchors.end(), anchor) == anchors.end()) anchors.push_back(std::move(anchor));
}

DataPointAnchor point(const Series& s, std::size_t series_index) {
    return DataPointAnchor{s.source_rows[series_index], s.label};
}

std::string_view slope_unit(ColumnKind kind) {
    switch (kind) {
        case ColumnKind::Temporal: return "per_day";
        case ColumnKind::Numeric: return "per_unit";
        case ColumnKind::Categorical: return "per_step";
    }
    return "per_step";
}

json interval_json(const Series& s, const facts::TrendInterval& t) {
    return json{{"start", t.start},
                {"end", t.end},
                {"start_row", s.source_rows[t.start]},
                {"end_row", s.source_rows[t.end]},
                {"direction", facts::to_string(t.direction)},
                {"slope", t.slope},
                {"start_value", s.y[t.start]},
                {"end_value", s.y[t.end]},
                {"start_label", s.x_labels[t.start]},
                {"end_label", s.x_labels[t.end]}};
}

std::string_view data_order(const Series& s) {
    if (s.size() < 2) return "constant";
    const auto m = facts::is_monotonic(s);
    if (!m) return "unsorted";
    switch (*m) {
        case facts::Monotonicity::Increasing: return "ascending";
        case facts::Monotonicity::Decreasing: return "descending";
        case facts::Monotonicity::Constant: return "constant";
    }
    return "unsorted";
}

std::string independent_label(const ChartBundle& bundle) {
    return bundle.metadata.independent_axis_label.value_or(bundle.table.columns.front().name);
}

class CatalogBuilder {
public:
    CatalogBuilder(const ChartBundle& bundle, const facts::FactsConfig& config)
        : bundle_(bundle), config_(config), variables_(applicable_variables(bundle)),
          multivariate_(is_multivariate(bundle)) {
        catalog_.chart_id = bundle.metadata.id;
        if (multivariate_) catalog_.variables = variables_;
        facts_ = kernels::partial_facts_for_variables(bundle, variables_, config);
        for (const auto& f : facts_) {
            for (const auto& d : f.diagnostics) catalog_.diagnostics.push_back(f.series.label + ": " + d);
        }
    }

    FeatureCatalog build() {
        general();
        if (!variables_.empty()) data_facts();
        catalog_.features.push_back(make_feature(id::kContext, FeatureCategory::Context, "Contextual knowledge", false,
                                                 json::object(), {AnchorRef{WholeChartAnchor{}}}));
        return std::move(catalog_);
    }

private:
    void push(Feature f) { catalog_.features.push_back(std::move(f)); }

    void general() {
        const auto& meta = bundle_.metadata;
        push(make_feature(id::kType, FeatureCategory::GeneralInfo, "Chart type", false,
                          json{{"chart_type", to_string(meta.chart_type)},
                               {"name", display_name(meta.chart_type)},
                               {"multivariate", multivariate_},
                               {"variables", variables_}},
                          {AnchorRef{WholeChartAnchor{}}}));
        if (!meta.title.empty()) {
            push(make_feature(id::kTitle, FeatureCategory::GeneralInfo, "Title", false, json{{"title", meta.title}},
                              {AnchorRef{TitleBlockAnchor{}}}));
        }
        if (meta.subtitle) {
            push(make_feature(id::kSubtitle, FeatureCategory::GeneralInfo, "Subtitle", false,
                              json{{"subtitle", *meta.subtitle}}, {AnchorRef{TitleBlockAnchor{}}}));
        }
        if (meta.footnote) {
            push(make_feature(id::kFootnote, FeatureCategory::GeneralInfo, "Footnote", false,
                              json{{"footnote", *meta.footnote}}, {AnchorRef{WholeChartAnchor{}}}));
        }
        axes();
        colors();
        sorting();
        missing();
    }

    void axes() {
        json payload{{"chart_type", to_string(bundle_.metadata.chart_type)},
                     {"independent", independent_label(bundle_)},
                     {"independent_kind", to_string(bundle_.table.columns.front().kind)},
                     {"variables", variables_}};
        if (bundle_.metadata.dependent_axis_label) {
            payload["dependent"] = *bundle_.metadata.dependent_axis_label;
        } else {
            payload["dependent"] = nullptr;
        }
        std::vector<AnchorRef> anchors{AxisAnchor{AxisRole::Independent}};
        if (!variables_.empty()) anchors.emplace_back(AxisAnchor{AxisRole::Dependent});
        push(make_feature(id::kAxes, FeatureCategory::GeneralInfo, "Axes", false, std::move(payload), std::move(anchors)));
    }

    void colors() {
        if (bundle_.extracted_colors.empty()) return;
        const auto named = color::name_chart_colors(bundle_.extracted_colors);
        json list = json::array();
        for (const auto& [hex, name] : named) list.push_back({{"hex", hex}, {"name", name}});
        const bool associated = !variables_.empty() && named.size() == variables_.size();
        json associations = json::array();
        std::vector<AnchorRef> anchors;
        if (associated) {
            for (std::size_t i = 0; i < named.size(); ++i) {
                associations.push_back({{"variable", variables_[i]}, {"hex", named[i].first}, {"name", named[i].second}});
                anchors.emplace_back(ColumnAnchor{variables_[i]});
            }
        } else {
            anchors.emplace_back(WholeChartAnchor{});
        }
        push(make_feature(id::kColors, FeatureCategory::GeneralInfo, "Color scheme", false,
                          json{{"colors", list}, {"associated", associated}, {"associations", associations}},
                          std::move(anchors)));
    }

    void sorting() {
        if (facts_.empty()) return;
        const auto& s = facts_.front().series;
        if (s.size() == 0) return;
        const auto order = data_order(s);
        const auto declared = bundle_.metadata.declared_sorted;
        bool mismatch = false;
        if (declared && order != "constant") mismatch = order != to_string(*declared);
        json payload{{"variable", s.label}, {"data_order", order}, {"mismatch", mismatch}};
        payload["declared"] = declared ? json(to_string(*declared)) : json(nullptr);
        push(make_feature(id::kSorting, FeatureCategory::GeneralInfo, "Sorting", false, std::move(payload),
                          {AnchorRef{ColumnAnchor{s.label}}}));
    }

    void missing() {
        std::size_t total = 0;
        json per_variable = json::array();
        std::vector<AnchorRef> anchors;
        for (const auto& f : facts_) {
            if (f.series.dropped == 0) continue;
            total += f.series.dropped;
            per_variable.push_back({{"variable", f.series.label}, {"dropped", f.series.dropped}});
            anchors.emplace_back(ColumnAnchor{f.series.label});
        }
        if (total == 0) return;
        push(make_feature(id::kMissing, FeatureCategory::GeneralInfo, "Missing values", false,
                          json{{"total", total}, {"variables", per_variable}}, std::move(anchors)));
    }

    // Builds one fact feature from per-variable entries; `entry` returns
    // nothing when the fact is unavailable for that variable.
    template <typename EntryFn>
    void fact(std::string_view feature_id, std::string label, EntryFn&& entry) {
        json entries = json::array();
        std::vector<AnchorRef> anchors;
        for (const auto& f : facts_) {
            auto e = entry(f, anchors);
            if (!e) continue;
            (*e)["variable"] = f.series.label;
            entries.push_back(std::move(*e));
        }
        if (entries.empty()) return;
        push(make_feature(feature_id, FeatureCategory::DataFact, std::move(label), multivariate_,
                          json{{"variables", std::move(entries)}}, std::move(anchors)));
    }

    void data_facts() {
        using Anchors = std::vector<AnchorRef>;
        using Entry = std::optional<json>;

        fact(id::kExtrema, "Extrema", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.extrema) return std::nullopt;
            const auto& e = *f.extrema;
            add_anchor(anchors, point(f.series, e.max_row));
            add_anchor(anchors, point(f.series, e.min_row));
            return json{{"max", e.max_value},
                        {"max_label", e.max_label},
                        {"max_row", f.series.source_rows[e.max_row]},
                        {"min", e.min_value},
                        {"min_label", e.min_label},
                        {"min_row", f.series.source_rows[e.min_row]}};
        });
        fact(id::kMean, "Mean", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.mean) return std::nullopt;
            add_anchor(anchors, ColumnAnchor{f.series.label});
            return json{{"mean", *f.mean}, {"count", f.series.size()}};
        });
        fact(id::kStddev, "Standard deviation", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.stddev || !f.mean) return std::nullopt;
            add_anchor(anchors, ColumnAnchor{f.series.label});
            return json{{"stddev", *f.stddev}, {"mean", *f.mean}};
        });
        fact(id::kMedian, "Median", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.median || !f.quartiles) return std::nullopt;
            add_anchor(anchors, ColumnAnchor{f.series.label});
            return json{{"median", *f.median}, {"q1", f.quartiles->q1}, {"q3", f.quartiles->q3}};
        });
        fact(id::kOutliers, "Outliers", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.outliers || !f.quartiles) return std::nullopt;
            const double iqr = f.quartiles->q3 - f.quartiles->q1;
            json list = json::array();
            for (const auto& o : *f.outliers) {
                add_anchor(anchors, point(f.series, o.row));
                list.push_back(
                    {{"row", f.series.source_rows[o.row]}, {"value", o.value}, {"label", f.series.x_labels[o.row]}});
            }
            if (f.outliers->empty()) add_anchor(anchors, ColumnAnchor{f.series.label});
            return json{{"outliers", list},
                        {"lower", f.quartiles->q1 - 1.5 * iqr},
                        {"upper", f.quartiles->q3 + 1.5 * iqr}};
        });
        fact(id::kTrend, "Trend", [this](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.trend_applicable || !f.intervals) return std::nullopt;
            const auto& s = f.series;
            json all = json::array();
            json significant = json::array();
            for (const auto& t : *f.intervals) all.push_back(interval_json(s, t));
            for (const auto& t : *f.significant) significant.push_back(interval_json(s, t));
            if (f.monotonic) {
                add_anchor(anchors, point(s, 0));
                add_anchor(anchors, point(s, s.size() - 1));
            } else {
                for (const auto& t : *f.significant) {
                    add_anchor(anchors, point(s, t.start));
                    add_anchor(anchors, point(s, t.end));
                }
            }
            json e{{"intervals", all},
                   {"significant", significant},
                   {"threshold", config_.interval_threshold},
                   {"top_k", config_.top_k},
                   {"slope_unit", slope_unit(s.x_kind)},
                   {"first", interval_json(s, {0, s.size() - 1, facts::Direction::Constant, 0.0})}};
            e["monotonic"] = f.monotonic ? json(facts::to_string(*f.monotonic)) : json(nullptr);
            return e;
        });
        fact(id::kCorrelation, "Correlation", [this](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
            if (!f.trend_applicable || !f.correlation) return std::nullopt;
            add_anchor(anchors, ColumnAnchor{f.series.label});
            add_anchor(anchors, AxisAnchor{AxisRole::Independent});
            return json{{"r", *f.correlation}, {"independent", independent_label(bundle_)}};
        });
        if (bundle_.metadata.chart_type == ChartType::Pie) {
            fact(id::kPie, "Pie shares", [](const facts::PartialFacts& f, Anchors& anchors) -> Entry {
                if (!f.pie_shares) return std::nullopt;
                const auto& s = f.series;
                const auto& shares = *f.pie_shares;
                json list = json::array();
                std::size_t largest = 0;
                std::size_t smallest = 0;
                for (std::size_t i = 0; i < shares.size(); ++i) {
                    add_anchor(anchors, point(s, i));
                    list.push_back({{"row", s.source_rows[i]}, {"label", s.x_labels[i]}, {"value", s.y[i]},
                                    {"share", shares[i]}});
                    if (shares[i] > shares[largest]) largest = i;
                    if (shares[i] < shares[smallest]) smallest = i;
                }
                return json{{"shares", list}, {"largest", list[largest]}, {"smallest", list[smallest]}};
            });
        }
        if (multivariate_ && variables_.size() >= 2) comparison();
    }

    void comparison() {
        json within = json::array();
        std::vector<AnchorRef> anchors;
        for (const auto& f : facts_) {
            if (!f.mean) continue;
            std::size_t above = 0;
            for (double v : f.series.y) above += v > *f.mean ? 1 : 0;
            within.push_back({{"variable", f.series.label}, {"mean", *f.mean}, {"above_mean", above},
                              {"count", f.series.size()}});
            add_anchor(anchors, ColumnAnchor{f.series.label});
        }
        json pairs = json::array();
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            for (std::size_t j = i + 1; j < variables_.size(); ++j) {
                const auto cmp = compare_groups(bundle_, variables_[i], variables_[j]);
                if (cmp.rows.empty()) {
                    catalog_.diagnostics.push_back("comparison " + variables_[i] + "/" + variables_[j] +
                                                   ": no rows with both values");
                    continue;
                }
                pairs.push_back(to_json(cmp));
            }
        }
        if (within.empty() && pairs.empty()) return;
        push(make_feature(id::kComparison, FeatureCategory::DataFact, "Group comparison", true,
                          json{{"within", within}, {"pairs", pairs}}, std::move(anchors)));
    }

    const ChartBundle& bundle_;
    facts::FactsConfig config_;
    std::vector<std::string> variables_;
    bool multivariate_;
    std::vector<facts::PartialFacts> facts_;
    FeatureCatalog catalog_;
};

}  // namespace

const Feature* FeatureCatalog::find(std::string_view feature_id) const {
    const auto it =
        std::find_if(features.begin(), features.end(), [&](const Feature& f) { return f.feature_id == feature_id; });
    return it == features.end() ? nullptr : &*it;
}

std::vector<std::string> applicable_variables(const ChartBundle& bundle) {
    std::vector<std::string> out;
    const auto& columns = bundle.table.columns;
    for (std::size_t i = 1; i < columns.size(); ++i) {
        if (columns[i].kind == ColumnKind::Numeric) out.push_back(columns[i].name);
    }
    return out;
}

bool is_multivariate(const ChartBundle& bundle) {
    return is_multivariate_type(bundle.metadata.chart_type) || applicable_variables(bundle).size() > 1;
}

GroupComparison compare_groups(const ChartBundle& bundle, std::string_view first, std::string_view second) {
    const auto& table = bundle.table;
    const auto vars = applicable_variables(bundle);
    for (auto name : {first, second}) {
        if (std::find(vars.begin(), vars.end(), name) == vars.end()) throw Error(ErrorCode::UnknownVariable, std::string{name});
    }
    const auto a_col = *table.column_index(first);
    const auto b_col = *table.column_index(second);

    GroupComparison out;
    out.first = std::string{first};
    out.second = std::string{second};
    double sum_a = 0.0;
    double sum_b = 0.0;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto* a = std::get_if<double>(&table.rows[r][a_col]);
        const auto* b = std::get_if<double>(&table.rows[r][b_col]);
        if (!a || !b) continue;
        RowComparison row{r, cell_text(table.rows[r][0]), Larger::Equal, std::abs(*a - *b)};
        if (*a > *b) {
            row.larger = Larger::First;
            ++out.first_larger;
        } else if (*b > *a) {
            row.larger = Larger::Second;
            ++out.second_larger;
        }
        sum_a += *a;
        sum_b += *b;
        if (!out.max_gap_index || row.gap > out.rows[*out.max_gap_index].gap) out.max_gap_index = out.rows.size();
        out.rows.push_back(std::move(row));
    }
    if (!out.rows.empty()) {
        out.first_mean = sum_a / static_cast<double>(out.rows.size());
        out.second_mean = sum_b / static_cast<double>(out.rows.size());
    }
    return out;
}

nlohmann::json to_json(const GroupComparison& c) {
    json rows = json::array();
    for (const auto& r : c.rows) {
        const char* larger = r.larger == Larger::First ? "first" : r.larger == Larger::Second ? "second" : "equal";
        rows.push_back({{"row", r.row}, {"label", r.label}, {"larger", larger}, {"gap", r.gap}});
    }
    json out{{"first", c.first},
             {"second", c.second},
             {"rows", rows},
             {"count", c.rows.size()},
             {"first_larger", c.first_larger},
             {"second_larger", c.second_larger},
             {"first_mean", c.first_mean},
             {"second_mean", c.second_mean}};
    if (c.max_gap_index) {
        const auto& r = c.rows[*c.max_gap_index];
        out["max_gap"] = {{"row", r.row}, {"label", r.label}, {"gap", r.gap}};
    } else {
        out["max_gap"] = nullptr;
    }
    return out;
}

FeatureCatalog detect_features(const ChartBundle& bundle, const facts::FactsConfig& config) {
    return CatalogBuilder(bundle, config).build();
}

}  // namespace chartscribe::features
