#include "qcqa/qclassify.hpp"

#include "qcqa/error.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace qcqa {
namespace {

bool is_space(char c)
{
    return std::isspace(static_cast<unsigned char>(c)) != 0;
}

// Splits off the first whitespace-delimited word.
std::pair<std::string_view, std::string_view> split_first_word(std::string_view text)
{
    std::size_t i = 0;
    while (i < text.size() && is_space(text[i]))
        ++i;
    std::size_t start = i;
    while (i < text.size() && !is_space(text[i]))
        ++i;
    return {text.substr(start, i - start), text.substr(i)};
}

std::string strip_punctuation(std::string_view word)
{
    std::string out;
    for (char c : word)
        if (std::isalnum(static_cast<unsigned char>(c)))
            out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

}  // namespace

std::string_view to_string(QuestionClass qc) noexcept
{
    switch (qc) {
    case QuestionClass::who: return "who";
    case QuestionClass::what: return "what";
    case QuestionClass::where: return "where";
    case QuestionClass::when: return "when";
    case QuestionClass::which: return "which";
    case QuestionClass::why: return "why";
    case QuestionClass::how: return "how";
    }
    return "what";
}

std::optional<QuestionClass> parse_question_class(std::string_view text) noexcept
{
    std::string name(text);
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (auto qc : all_question_classes)
        if (to_string(qc) == name)
            return qc;
    return std::nullopt;
}

QuestionClass detect_class(std::string_view question)
{
    auto [first, rest] = split_first_word(question);
    if (first.empty())
        throw Error(ErrorCode::unsupported_question_class, "empty question");
    auto qc = parse_question_class(strip_punctuation(first));
    if (!qc)
        throw Error(ErrorCode::unsupported_question_class,
                    "question must start with Who, What, Where, When, Which, Why or How (got '"
                        + std::string(first) + "')");
    return *qc;
}

const std::vector<AnswerType>& map_answer_types(QuestionClass qc)
{
    using A = AnswerType;
    static const std::vector<A> who{A::person, A::organization};
    static const std::vector<A> where{A::location};
    static const std::vector<A> what{A::money,  A::number, A::definition, A::procedure,
                                     A::abbreviation, A::organization, A::person, A::year,
                                     A::month,  A::day,    A::time,       A::location};
    static const std::vector<A> when{A::time, A::year, A::day, A::month};
    static const std::vector<A> which{A::person, A::location, A::month, A::time, A::year, A::day};
    static const std::vector<A> why{A::reason};
    static const std::vector<A> how{A::procedure};
    switch (qc) {
    case QuestionClass::who: return who;
    case QuestionClass::what: return what;
    case QuestionClass::where: return where;
    case QuestionClass::when: return when;
    case QuestionClass::which: return which;
    case QuestionClass::why: return why;
    case QuestionClass::how: return how;
    }
    return what;
}

Query classify_question(std::string_view question, const Stoplist& stoplist)
{
    auto qc = detect_class(question);
    auto rest = split_first_word(question).second;
    auto terms = preprocess(rest, stoplist);
    if (terms.empty())
        throw Error(ErrorCode::empty_query, "question has no searchable terms after its first word");
    return Query{qc, map_answer_types(qc), std::move(terms)};
}

}  // namespace qcqa
