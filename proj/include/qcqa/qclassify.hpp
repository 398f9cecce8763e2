#pragma once

#include "qcqa/answer_type.hpp"
#include "qcqa/preprocess.hpp"

#include <array>
#include <optional>
#include <string_view>
#include <vector>

namespace qcqa {

enum class QuestionClass { who, what, where, when, which, why, how };

inline constexpr std::array<QuestionClass, 7> all_question_classes{
    QuestionClass::who,   QuestionClass::what, QuestionClass::where, QuestionClass::when,
    QuestionClass::which, QuestionClass::why,  QuestionClass::how,
};

std::string_view to_string(QuestionClass qc) noexcept;
std::optional<QuestionClass> parse_question_class(std::string_view text) noexcept;

struct Query {
    QuestionClass question_class;
    std::vector<AnswerType> answer_types;  // in mapping-table order
    TermSet terms;

    friend bool operator==(const Query&, const Query&) = default;
};

/// Class named by the first whitespace-delimited word, case-insensitive,
/// with surrounding punctuation ignored.
/// Throws Error(unsupported_question_class) otherwise.
QuestionClass detect_class(std::string_view question);

/// Expected answer types for a question class.
const std::vector<AnswerType>& map_answer_types(QuestionClass qc);

/// Class from the first word, terms from preprocessing the rest.
/// Throws Error(unsupported_question_class) or Error(empty_query).
Query classify_question(std::string_view question, const Stoplist& stoplist);

}  // namespace qcqa
