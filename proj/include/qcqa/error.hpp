#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qcqa {

enum class ErrorCode {
    io_error,
    format_error,
    invalid_argument,
    empty_seeds,
    empty_text,
    empty_summary_store,
    stale_preprocessor,
    unsupported_question_class,
    empty_query,
    store_mismatch,
    invalid_counts,
    empty_records,
};

/// Stable snake_case name, used in HTTP error bodies and CLI diagnostics.
std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code)
    {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace qcqa
