#include "oracles.hpp"

#include <algorithm>
#include <sstream>

namespace qcqa::oracle {
namespace {

std::size_t words_in(const std::string& s)
{
    std::istringstream in(s);
    std::string w;
    std::size_t n = 0;
    while (in >> w)
        ++n;
    return n;
}

std::vector<std::size_t> sentence_scores(const std::vector<SentenceSpan>& sentences, const Stoplist& stoplist)
{
    std::vector<std::vector<std::string>> stems;
    std::map<std::string, std::size_t> freq;
    for (const auto& s : sentences) {
        stems.emplace_back();
        for (const auto& tok : tokenize(s.text)) {
            if (stoplist.contains(tok))
                continue;
            stems.back().push_back(stem(tok));
            freq[stems.back().back()] += 1;
        }
    }
    std::vector<std::size_t> scores;
    for (const auto& list : stems) {
        std::size_t sum = 0;
        for (const auto& s : list)
            sum += freq[s];
        scores.push_back(sum);
    }
    return scores;
}

}  // namespace

std::vector<std::size_t> summary_selection(const std::string& text, const Stoplist& stoplist)
{
    auto sentences = split_sentences(text);
    auto scores = sentence_scores(sentences, stoplist);
    std::size_t total = words_in(text);
    std::size_t budget = (total + 1) / 2;

    std::vector<bool> considered(sentences.size(), false);
    std::vector<std::size_t> picked;
    std::size_t used = 0;
    std::size_t first_choice = sentences.size();
    for (std::size_t round = 0; round < sentences.size(); ++round) {
        std::size_t best = sentences.size();
        for (std::size_t i = 0; i < sentences.size(); ++i) {
            if (considered[i])
                continue;
            if (best == sentences.size() || scores[i] > scores[best])
                best = i;
        }
        considered[best] = true;
        if (round == 0)
            first_choice = best;
        auto w = words_in(sentences[best].text);
        if (used + w <= budget) {
            picked.push_back(best);
            used += w;
        }
    }
    if (picked.empty() && first_choice < sentences.size())
        picked.push_back(first_choice);
    std::sort(picked.begin(), picked.end());
    return picked;
}

std::size_t top_sentence(const std::string& text, const Stoplist& stoplist)
{
    auto scores = sentence_scores(split_sentences(text), stoplist);
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i)
        if (scores[i] > scores[best])
            best = i;
    return best;
}

std::map<std::pair<int, int>, std::set<std::string>> search(const QCIndex& index, const Query& query)
{
    auto expected = [&](AnswerType t) {
        for (auto q : query.answer_types)
            if (q == t)
                return true;
        return false;
    };
    std::set<int> typed_pages;
    for (auto type : all_answer_types)
        for (const auto& [term, postings] : index.terms(type))
            for (const auto& p : postings)
                if (expected(type))
                    typed_pages.insert(p.pid);

    std::map<std::pair<int, int>, std::set<std::string>> out;
    for (auto type : all_answer_types)
        for (const auto& [term, postings] : index.terms(type))
            for (const auto& p : postings) {
                bool in_query = false;
                for (const auto& q : query.terms.terms)
                    if (q == term)
                        in_query = true;
                if (in_query && (expected(type) || typed_pages.count(p.pid)))
                    out[{p.pid, p.sid}].insert(term);
            }
    return out;
}

std::vector<std::pair<int, int>> rank_order(const std::vector<AnswerHit>& hits, const FeedbackSnapshot& feedback)
{
    using Key = std::tuple<long long, int, int, int>;
    std::vector<Key> keys;
    for (const auto& h : hits) {
        long long score = 0;
        auto it = feedback.find({h.pid, h.sid});
        if (it != feedback.end())
            score = static_cast<long long>(it->second.likes) - static_cast<long long>(it->second.dislikes);
        keys.emplace_back(-score, -h.matched_terms, h.pid, h.sid);
    }
    std::sort(keys.begin(), keys.end());
    std::vector<std::pair<int, int>> out;
    for (const auto& k : keys)
        out.emplace_back(std::get<2>(k), std::get<3>(k));
    return out;
}

std::map<AnswerType, std::map<std::string, std::set<std::pair<int, int>>>>
index_postings(const SummaryStore& store, DefinitionProvider& provider, const Gazetteer& gazetteer,
               const Stoplist& stoplist)
{
    std::map<AnswerType, std::map<std::string, std::set<std::pair<int, int>>>> out;
    for (const auto& [pid, summary] : store.summaries())
        for (const auto& sentence : summary.sentences)
            for (const auto& term : preprocess(sentence.text, stoplist).terms)
                out[classify_term(term, provider, gazetteer)][term].insert({pid, sentence.sid});
    return out;
}

std::string ars_text(int rf, int tf)
{
    // Three decimals by long division, then round the third.
    long long num = 100LL * rf;
    long long whole = num / tf;
    long long rem = num % tf;
    int digits[3];
    for (int& d : digits) {
        rem *= 10;
        d = static_cast<int>(rem / tf);
        rem %= tf;
    }
    long long cents = whole * 100 + digits[0] * 10 + digits[1];
    if (digits[2] >= 5)
        ++cents;
    std::ostringstream out;
    out << cents / 100 << '.' << (cents % 100) / 10 << cents % 10;
    return out.str();
}

}  // namespace qcqa::oracle
