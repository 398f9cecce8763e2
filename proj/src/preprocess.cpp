#include "qcqa/preprocess.hpp"

#include "qcqa/error.hpp"
#include "qcqa/fingerprint.hpp"
#include "qcqa/porter.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

namespace qcqa {
namespace {

bool is_word_byte(unsigned char c)
{
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c >= 0x80;
}

char ascii_lower(char c)
{
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

// Kept in sync with data/stoplist.txt (checked by the preprocess tests).
constexpr std::string_view english_words[] = {
    "a", "about", "above", "after", "again", "against", "all", "also", "am",
    "among", "an", "and", "any", "are", "aren", "as", "at", "be", "because",
    "been", "before", "being", "below", "between", "both", "but", "by", "can",
    "cannot", "could", "couldn", "d", "did", "didn", "do", "does", "doesn",
    "doing", "don", "down", "during", "each", "either", "else", "ever", "every",
    "few", "for", "from", "further", "had", "hadn", "has", "hasn", "have",
    "haven", "having", "he", "hence", "her", "here", "hers", "herself", "him",
    "himself", "his", "how", "however", "i", "if", "in", "into", "is", "isn",
    "it", "its", "itself", "just", "least", "less", "ll", "m", "me", "might",
    "more", "most", "much", "must", "my", "myself", "neither", "no", "nor",
    "not", "of", "off", "often", "on", "once", "only", "or", "other", "others",
    "otherwise", "ought", "our", "ours", "ourselves", "out", "over", "own",
    "per", "quite", "rather", "re", "s", "same", "shall", "shan", "she",
    "should", "shouldn", "since", "so", "some", "such", "t", "than", "that",
    "the", "their", "theirs", "them", "themselves", "then", "there", "thereby",
    "therefore", "these", "they", "this", "those", "though", "through", "thus",
    "to", "too", "under", "until", "up", "upon", "us", "ve", "very", "was",
    "wasn", "we", "were", "weren", "what", "whatever", "when", "whenever",
    "where", "whereas", "wherever", "whether", "which", "while", "who", "whoever",
    "whom", "whose", "why", "will", "with", "within", "without", "won", "would",
    "wouldn", "yet", "you", "your", "yours", "yourself", "yourselves",
};

}  // namespace

bool TermSet::contains(std::string_view term) const
{
    return std::find(terms.begin(), terms.end(), term) != terms.end();
}

Stoplist::Stoplist(std::set<std::string, std::less<>> words) : words_(std::move(words)) {}

const Stoplist& Stoplist::english()
{
    static const Stoplist list{std::set<std::string, std::less<>>(std::begin(english_words),
                                                                  std::end(english_words))};
    return list;
}

Stoplist Stoplist::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read stoplist: " + path.string());
    std::set<std::string, std::less<>> words;
    std::string line;
    while (std::getline(in, line)) {
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto last = line.find_last_not_of(" \t\r");
        std::string word = line.substr(first, last - first + 1);
        std::transform(word.begin(), word.end(), word.begin(), ascii_lower);
        words.insert(std::move(word));
    }
    return Stoplist(std::move(words));
}

std::string Stoplist::fingerprint() const
{
    Fingerprint fp;
    for (const auto& w : words_)
        fp.add(w).add("\n");
    return fp.hex();
}

std::vector<std::string> tokenize(std::string_view text)
{
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && !is_word_byte(static_cast<unsigned char>(text[i])))
            ++i;
        std::size_t start = i;
        while (i < text.size() && is_word_byte(static_cast<unsigned char>(text[i])))
            ++i;
        if (i > start) {
            std::string token(text.substr(start, i - start));
            std::transform(token.begin(), token.end(), token.begin(), ascii_lower);
            tokens.push_back(std::move(token));
        }
    }
    return tokens;
}

std::string stem(std::string_view token)
{
    return porter_stem(token);
}

TermSet preprocess(std::string_view text, const Stoplist& stoplist)
{
    TermSet out;
    std::unordered_set<std::string> seen;
    for (const auto& token : tokenize(text)) {
        if (stoplist.contains(token))
            continue;
        auto s = stem(token);
        if (seen.insert(s).second)
            out.terms.push_back(std::move(s));
    }
    return out;
}

}  // namespace qcqa
