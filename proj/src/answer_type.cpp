#include "qcqa/answer_type.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace qcqa {

std::string_view to_string(AnswerType type) noexcept
{
    switch (type) {
    case AnswerType::person: return "person";
    case AnswerType::organization: return "organization";
    case AnswerType::location: return "location";
    case AnswerType::money: return "money";
    case AnswerType::number: return "number";
    case AnswerType::definition: return "definition";
    case AnswerType::procedure: return "procedure";
    case AnswerType::abbreviation: return "abbreviation";
    case AnswerType::year: return "year";
    case AnswerType::month: return "month";
    case AnswerType::day: return "day";
    case AnswerType::time: return "time";
    case AnswerType::reason: return "reason";
    }
    return "definition";
}

std::optional<AnswerType> parse_answer_type(std::string_view text) noexcept
{
    std::string name(text);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == "process")
        return AnswerType::procedure;
    for (auto t : all_answer_types)
        if (to_string(t) == name)
            return t;
    return std::nullopt;
}

}  // namespace qcqa
