#include "chartscribe/kernels.hpp"

#include <exception>

#include "chartscribe/error.hpp"

namespace chartscribe::kernels {

namespace {

// Below this many queries the thread team costs more than the scan.
constexpr long kParallelColorCutoff = 64;

}  // namespace

std::vector<color::ColorMatch> nearest_colors(std::span<const color::LabColor> queries, const color::Palette& palette) {
    if (palette.empty()) throw Error(ErrorCode::ValidationError, "empty palette");
    std::vector<color::ColorMatch> out(queries.size());
    const long n = static_cast<long>(queries.size());
#pragma omp parallel for schedule(static) if (n > kParallelColorCutoff)
    for (long i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = color::nearest_color_name(queries[static_cast<std::size_t>(i)], palette);
    }
    return out;
}

std::vector<color::ColorMatch> nearest_colors_serial(std::span<const color::LabColor> queries,
                                                     const color::Palette& palette) {
    std::vector<color::ColorMatch> out;
    out.reserve(queries.size());
    for (const auto& q : queries) out.push_back(color::nearest_color_name(q, palette));
    return out;
}

std::vector<facts::FactsBundle> facts_for_variables(const ChartBundle& bundle, std::span<const std::string> variables,
                                                    const facts::FactsConfig& config) {
    std::vector<facts::FactsBundle> out(variables.size());
    std::vector<std::exception_ptr> errors(variables.size());
    const long n = static_cast<long>(variables.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = facts::compute_facts(bundle, variables[k], config);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<facts::FactsBundle> facts_for_variables_serial(const ChartBundle& bundle,
                                                           std::span<const std::string> variables,
                                                           const facts::FactsConfig& config) {
    std::vector<facts::FactsBundle> out;
    out.reserve(variables.size());
    for (const auto& v : variables) out.push_back(facts::compute_facts(bundle, v, config));
    return out;
}

std::vector<facts::PartialFacts> partial_facts_for_variables(const ChartBundle& bundle,
                                                             std::span<const std::string> variables,
                                                             const facts::FactsConfig& config) {
    std::vector<facts::PartialFacts> out(variables.size());
    std::vector<std::exception_ptr> errors(variables.size());
    const long n = static_cast<long>(variables.size());
#pragma omp parallel for schedule(dynamic) if (n > 1)
    for (long i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            out[k] = facts::collect_facts(bundle, variables[k], config);
        } catch (...) {
            errors[k] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

std::vector<facts::PartialFacts> partial_facts_for_variables_serial(const ChartBundle& bundle,
                                                                    std::span<const std::string> variables,
                                                                    const facts::FactsConfig& config) {
    std::vector<facts::PartialFacts> out;
    out.reserve(variables.size());
    for (const auto& v : variables) out.push_back(facts::collect_facts(bundle, v, config));
    return out;
}

}  // namespace chartscribe::kernels
