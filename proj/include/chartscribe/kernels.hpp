#pragma once

// Batch kernels. Each OpenMP version has a serial twin with identical
// semantics; tests compare the two and bench/ times them.

#include <span>
#include <string>
#include <vector>

#include "chartscribe/color.hpp"
#include "chartscribe/facts.hpp"
#include "chartscribe/model.hpp"

namespace chartscribe::kernels {

/// Nearest palette name for every query color.
std::vector<color::ColorMatch> nearest_colors(std::span<const color::LabColor> queries, const color::Palette& palette);
std::vector<color::ColorMatch> nearest_colors_serial(std::span<const color::LabColor> queries,
                                                     const color::Palette& palette);

/// compute_facts for each variable. The first failing variable's error is
/// rethrown after the loop completes.
std::vector<facts::FactsBundle> facts_for_variables(const ChartBundle& bundle, std::span<const std::string> variables,
                                                    const facts::FactsConfig& config);
std::vector<facts::FactsBundle> facts_for_variables_serial(const ChartBundle& bundle,
                                                           std::span<const std::string> variables,
                                                           const facts::FactsConfig& config);

/// collect_facts for each variable.
std::vector<facts::PartialFacts> partial_facts_for_variables(const ChartBundle& bundle,
                                                             std::span<const std::string> variables,
                                                             const facts::FactsConfig& config);
std::vector<facts::PartialFacts> partial_facts_for_variables_serial(const ChartBundle& bundle,
                                                                    std::span<const std::string> variables,
                                                                    const facts::FactsConfig& config);

}  // namespace chartscribe::kernels
