#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace qcqa {

enum class AnswerType {
    person,
    organization,
    location,
    money,
    number,
    definition,
    procedure,
    abbreviation,
    year,
    month,
    day,
    time,
    reason,
};

inline constexpr std::array<AnswerType, 13> all_answer_types{
    AnswerType::person,   AnswerType::organization, AnswerType::location, AnswerType::money,
    AnswerType::number,   AnswerType::definition,   AnswerType::procedure, AnswerType::abbreviation,
    AnswerType::year,     AnswerType::month,        AnswerType::day,       AnswerType::time,
    AnswerType::reason,
};

/// Lowercase name ("person", "procedure", ...).
std::string_view to_string(AnswerType type) noexcept;

/// Case-insensitive; "process" is accepted as an alias of procedure.
std::optional<AnswerType> parse_answer_type(std::string_view text) noexcept;

}  // namespace qcqa
