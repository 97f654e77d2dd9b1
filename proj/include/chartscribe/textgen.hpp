#pragma once

// Template-based rendering of catalog features into description segments,
// and composition of segments into the final description.

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "chartscribe/features.hpp"
#include "chartscribe/model.hpp"

namespace chartscribe::text {

struct FormatConfig {
    int max_decimals = 2;
    std::string minus_sign = "−";
};

/// Rounds half away from zero to `max_decimals`, strips trailing zeros and
/// the decimal point, and uses `minus_sign` for negatives. Throws NonFinite.
std::string format_number(double value, const FormatConfig& fmt = {});

using Bindings = std::map<std::string, std::string, std::less<>>;

/// Keyed sentence templates with {placeholder} fields.
///
/// File format: one `key=value` per line, `#` starts a comment line, blank
/// lines are ignored. Keys starting with "fragment." are sentence pieces and
/// carry no terminal punctuation; every other template is a full sentence.
class TemplateCatalog {
public:
    static TemplateCatalog parse(std::string_view text);
    static TemplateCatalog load(const std::filesystem::path& path);
    /// The English catalog shipped in assets/templates/en.
    static const TemplateCatalog& builtin();

    bool contains(std::string_view key) const;
    const std::string& at(std::string_view key) const;
    std::vector<std::string> keys() const;

    /// Substitutes every {name}; throws UnboundPlaceholder for a name missing
    /// from `bindings`.
    std::string render(std::string_view key, const Bindings& bindings) const;

    /// Placeholder names used by one template, in order of appearance.
    std::vector<std::string> placeholders(std::string_view key) const;

private:
    std::map<std::string, std::string, std::less<>> templates_;
};

struct Description {
    std::string chart_id;
    std::vector<DescriptionSegment> segments;  // sorted by order_index
    std::string rendered;

    bool operator==(const Description&) const = default;
};

/// Renders one feature. Variable-dependent features read their choices from
/// `selection.variable_choices`; the context slot reads `context_text`.
DescriptionSegment render_feature(const Feature& feature, const SelectionState& selection, const FormatConfig& fmt = {},
                                  const TemplateCatalog& templates = TemplateCatalog::builtin());

/// Renders a variable-dependent feature for `choices`: one sentence per
/// variable, plus a between-variable comparison when exactly two are chosen.
DescriptionSegment update_for_variables(const Feature& feature, const std::vector<std::string>& choices,
                                        const FormatConfig& fmt = {},
                                        const TemplateCatalog& templates = TemplateCatalog::builtin());

/// `order[j]` is the index into `segments` of the segment placed at position
/// j. Edits replace segment text and set `edited`.
Description compose_description(std::string chart_id, std::vector<DescriptionSegment> segments,
                                const std::vector<std::size_t>& order,
                                const std::map<std::string, std::string>& edits = {});

/// Checks the selection against the catalog; throws ValidationError naming
/// the first problem.
void validate_selection(const features::FeatureCatalog& catalog, const SelectionState& selection);

/// Validates, renders the selected features in selection order, appends the
/// context text as its own segment and applies manual edits.
Description describe(const features::FeatureCatalog& catalog, const SelectionState& selection,
                     const FormatConfig& fmt = {}, const TemplateCatalog& templates = TemplateCatalog::builtin());

/// Every feature in catalog order; variable features get all variables.
SelectionState select_all(const features::FeatureCatalog& catalog);

}  // namespace chartscribe::text
