#include "qcqa/error.hpp"

namespace qcqa {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::format_error: return "format_error";
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::empty_seeds: return "empty_seeds";
    case ErrorCode::empty_text: return "empty_text";
    case ErrorCode::empty_summary_store: return "empty_summary_store";
    case ErrorCode::stale_preprocessor: return "stale_preprocessor";
    case ErrorCode::unsupported_question_class: return "unsupported_question_class";
    case ErrorCode::empty_query: return "empty_query";
    case ErrorCode::store_mismatch: return "store_mismatch";
    case ErrorCode::invalid_counts: return "invalid_counts";
    case ErrorCode::empty_records: return "empty_records";
    }
    return "unknown";
}

}  // namespace qcqa
