#include "chartscribe/error.hpp"

namespace chartscribe {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptyTable: return "EmptyTable";
        case ErrorCode::RaggedRow: return "RaggedRow";
        case ErrorCode::UnknownChartType: return "UnknownChartType";
        case ErrorCode::DuplicateColumn: return "DuplicateColumn";
        case ErrorCode::MalformedDocument: return "MalformedDocument";
        case ErrorCode::MissingField: return "MissingField";
        case ErrorCode::EmptyInput: return "EmptyInput";
        case ErrorCode::MalformedMarkup: return "MalformedMarkup";
        case ErrorCode::FileNotFound: return "FileNotFound";
        case ErrorCode::AuthFailed: return "AuthFailed";
        case ErrorCode::NotFound: return "NotFound";
        case ErrorCode::UpstreamError: return "UpstreamError";
        case ErrorCode::TimeoutExceeded: return "TimeoutExceeded";
        case ErrorCode::InvalidHex: return "InvalidHex";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::ConstantInput: return "ConstantInput";
        case ErrorCode::NegativeValue: return "NegativeValue";
        case ErrorCode::ZeroTotal: return "ZeroTotal";
        case ErrorCode::UnknownVariable: return "UnknownVariable";
        case ErrorCode::MissingVariableChoice: return "MissingVariableChoice";
        case ErrorCode::UnboundPlaceholder: return "UnboundPlaceholder";
        case ErrorCode::InvalidPermutation: return "InvalidPermutation";
        case ErrorCode::UnknownFeatureEdit: return "UnknownFeatureEdit";
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::InvalidPage: return "InvalidPage";
        case ErrorCode::ValidationError: return "ValidationError";
    }
    return "Unknown";
}

namespace {

std::string describe(ErrorCode code, const std::string& subject, std::optional<std::size_t> index) {
    std::string out{to_string(code)};
    if (index) {
        out += "(" + std::to_string(*index) + ")";
    } else if (!subject.empty()) {
        out += "(\"" + subject + "\")";
    }
    if (index && !subject.empty()) out += ": " + subject;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string subject, std::optional<std::size_t> index)
    : std::runtime_error(describe(code, subject, index)),
      code_(code),
      subject_(std::move(subject)),
      index_(index) {}

}  // namespace chartscribe
