#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chartscribe {

enum class ErrorCode {
    // validation
    EmptyTable,
    RaggedRow,
    UnknownChartType,
    DuplicateColumn,
    // ingestion
    MalformedDocument,
    MissingField,
    EmptyInput,
    MalformedMarkup,
    FileNotFound,
    AuthFailed,
    NotFound,
    UpstreamError,
    TimeoutExceeded,
    // color
    InvalidHex,
    // statistics
    EmptySeries,
    TooShort,
    ConstantInput,
    NegativeValue,
    ZeroTotal,
    UnknownVariable,
    // text
    MissingVariableChoice,
    UnboundPlaceholder,
    InvalidPermutation,
    UnknownFeatureEdit,
    NonFinite,
    // service
    InvalidPage,
    ValidationError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Structured failure raised by every engine module.
///
/// `subject` carries the offending name (column, field, placeholder, ...) and
/// `index` the offending row where one applies, so callers can match on the
/// payload without parsing `what()`.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string subject = {}, std::optional<std::size_t> index = std::nullopt);

    ErrorCode code() const noexcept { return code_; }
    const std::string& subject() const noexcept { return subject_; }
    std::optional<std::size_t> index() const noexcept { return index_; }

private:
    ErrorCode code_;
    std::string subject_;
    std::optional<std::size_t> index_;
};

}  // namespace chartscribe
