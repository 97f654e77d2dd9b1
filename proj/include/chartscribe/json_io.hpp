#pragma once

// JSON views of engine values, shared by the service and the CLI.

#include "chartscribe/features.hpp"
#include "chartscribe/model.hpp"
#include "chartscribe/textgen.hpp"

namespace chartscribe::json_io {

using nlohmann::json;

/// {"columns": [{"name", "kind"}], "rows": [[null | number | string]]}
json to_json(const DataTable& table);

/// Tagged by "kind": data_point, column, axis, title_block, whole_chart.
json to_json(const AnchorRef& anchor);
json to_json(const std::vector<AnchorRef>& anchors);

json to_json(const Feature& feature);
json to_json(const features::FeatureCatalog& catalog);
json to_json(const DescriptionSegment& segment);
json to_json(const text::Description& description);
json to_json(const SelectionState& selection);

/// {"id", "title", "type", "created_at", "has_svg"}
json chart_summary(const ChartMetadata& metadata, bool has_svg);

/// Metadata, table, SVG availability and the extracted colors.
json chart_view(const ChartBundle& bundle);

/// Accepts {"selected", "variable_choices", "context_text", "manual_edits"};
/// every field is optional. Throws ValidationError on a malformed shape.
SelectionState selection_from_json(const json& doc);

}  // namespace chartscribe::json_io
