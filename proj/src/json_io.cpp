#include "chartscribe/json_io.hpp"

#include "chartscribe/error.hpp"
#include "chartscribe/ingestion.hpp"

namespace chartscribe::json_io {

namespace {

json cell_json(const Cell& cell) {
    if (const auto* d = std::get_if<double>(&cell)) return *d;
    if (const auto* s = std::get_if<std::string>(&cell)) return *s;
    return nullptr;
}

[[noreturn]] void bad_shape(const std::string& what) {
    throw Error(ErrorCode::ValidationError, "selection: " + what);
}

std::vector<std::string> string_list(const json& j, const std::string& field) {
    if (!j.is_array()) bad_shape(field + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& v : j) {
        if (!v.is_string()) bad_shape(field + " must be an array of strings");
        out.push_back(v.get<std::string>());
    }
    return out;
}

}  // namespace

json to_json(const DataTable& table) {
    json columns = json::array();
    for (const auto& c : table.columns) columns.push_back({{"name", c.name}, {"kind", to_string(c.kind)}});
    json rows = json::array();
    for (const auto& row : table.rows) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(cell_json(cell));
        rows.push_back(std::move(r));
    }
    return {{"columns", columns}, {"rows", rows}};
}

json to_json(const AnchorRef& anchor) {
    return std::visit(
        [](const auto& a) -> json {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, DataPointAnchor>) {
                return {{"kind", "data_point"}, {"row", a.row}, {"column", a.column}};
            } else if constexpr (std::is_same_v<T, ColumnAnchor>) {
                return {{"kind", "column"}, {"column", a.column}};
            } else if constexpr (std::is_same_v<T, AxisAnchor>) {
                return {{"kind", "axis"}, {"role", to_string(a.role)}};
            } else if constexpr (std::is_same_v<T, TitleBlockAnchor>) {
                return {{"kind", "title_block"}};
            } else {
                return {{"kind", "whole_chart"}};
            }
        },
        anchor);
}

json to_json(const std::vector<AnchorRef>& anchors) {
    json out = json::array();
    for (const auto& a : anchors) out.push_back(to_json(a));
    return out;
}

json to_json(const Feature& f) {
    return {{"feature_id", f.feature_id},
            {"category", to_string(f.category)},
            {"color", display_color(f.category)},
            {"label", f.label},
            {"requires_variable", f.requires_variable},
            {"payload", f.payload},
            {"anchors", to_json(f.anchors)}};
}

json to_json(const features::FeatureCatalog& catalog) {
    json categories = json::array();
    for (auto c : {FeatureCategory::GeneralInfo, FeatureCategory::DataFact, FeatureCategory::Context}) {
        categories.push_back({{"category", to_string(c)}, {"color", display_color(c)}});
    }
    json list = json::array();
    for (const auto& f : catalog.features) list.push_back(to_json(f));
    return {{"chart_id", catalog.chart_id},
            {"categories", categories},
            {"variables", catalog.variables},
            {"features", list},
            {"diagnostics", catalog.diagnostics}};
}

json to_json(const DescriptionSegment& s) {
    return {{"feature_id", s.feature_id},
            {"text", s.text},
            {"anchors", to_json(s.anchors)},
            {"order_index", s.order_index},
            {"edited", s.edited}};
}

json to_json(const text::Description& d) {
    json segments = json::array();
    for (const auto& s : d.segments) segments.push_back(to_json(s));
    return {{"chart_id", d.chart_id}, {"segments", segments}, {"rendered", d.rendered}};
}

json to_json(const SelectionState& s) {
    json out{{"selected", s.selected_feature_ids},
             {"variable_choices", json::object()},
             {"manual_edits", json::object()}};
    for (const auto& [id, choices] : s.variable_choices) out["variable_choices"][id] = choices;
    for (const auto& [id, text] : s.manual_edits) out["manual_edits"][id] = text;
    out["context_text"] = s.context_text ? json(*s.context_text) : json(nullptr);
    return out;
}

json chart_summary(const ChartMetadata& m, bool has_svg) {
    return {{"id", m.id},
            {"title", m.title},
            {"type", to_string(m.chart_type)},
            {"created_at", format_timestamp(m.created_at)},
            {"has_svg", has_svg}};
}

json chart_view(const ChartBundle& bundle) {
    return {{"metadata", ingest::metadata_to_json(bundle.metadata)},
            {"table", to_json(bundle.table)},
            {"has_svg", bundle.svg_text.has_value()},
            {"extracted_colors", bundle.extracted_colors}};
}

SelectionState selection_from_json(const json& doc) {
    if (!doc.is_object()) bad_shape("body must be an object");
    SelectionState s;
    if (const auto it = doc.find("selected"); it != doc.end()) s.selected_feature_ids = string_list(*it, "selected");
    if (const auto it = doc.find("variable_choices"); it != doc.end()) {
        if (!it->is_object()) bad_shape("variable_choices must be an object");
        for (const auto& [id, choices] : it->items()) s.variable_choices[id] = string_list(choices, "variable_choices." + id);
    }
    if (const auto it = doc.find("context_text"); it != doc.end() && !it->is_null()) {
        if (!it->is_string()) bad_shape("context_text must be a string");
        s.context_text = it->get<std::string>();
    }
    if (const auto it = doc.find("manual_edits"); it != doc.end()) {
        if (!it->is_object()) bad_shape("manual_edits must be an object");
        for (const auto& [id, text] : it->items()) {
            if (!text.is_string()) bad_shape("manual_edits." + id + " must be a string");
            s.manual_edits[id] = text.get<std::string>();
        }
    }
    return s;
}

}  // namespace chartscribe::json_io
