#include "qcqa/summarizer.hpp"

#include "qcqa/error.hpp"
#include "qcqa/fingerprint.hpp"
#include "qcqa/jsonl.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

namespace qcqa {
namespace {

bool is_space(char c)
{
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_upper(char c)
{
    return c >= 'A' && c <= 'Z';
}

// True when the word ending just before text[dot] looks like "J" or "U.S".
bool is_initialism(std::string_view text, std::size_t dot)
{
    std::size_t start = dot;
    while (start > 0 && !is_space(text[start - 1]))
        --start;
    auto word = text.substr(start, dot - start);
    while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '\''))
        word.remove_prefix(1);
    if (word.empty() || word.size() % 2 == 0)
        return false;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (i % 2 == 0 ? !is_upper(word[i]) : word[i] != '.')
            return false;
    }
    return true;
}

void push_trimmed(std::vector<SentenceSpan>& out, std::string_view text, std::size_t begin, std::size_t end)
{
    while (begin < end && is_space(text[begin]))
        ++begin;
    while (end > begin && is_space(text[end - 1]))
        --end;
    if (end > begin)
        out.push_back({std::string(text.substr(begin, end - begin)), begin});
}

}  // namespace

std::vector<SentenceSpan> split_sentences(std::string_view text)
{
    std::vector<SentenceSpan> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c != '.' && c != '!' && c != '?')
            continue;
        bool boundary = i + 1 == text.size() || is_space(text[i + 1]);
        if (!boundary)
            continue;
        if (c == '.' && is_initialism(text, i))
            continue;
        push_trimmed(out, text, begin, i + 1);
        begin = i + 1;
    }
    push_trimmed(out, text, begin, text.size());
    return out;
}

std::size_t count_words(std::string_view text)
{
    std::size_t n = 0;
    bool in_word = false;
    for (char c : text) {
        if (is_space(c)) {
            in_word = false;
        }
        else if (!in_word) {
            in_word = true;
            ++n;
        }
    }
    return n;
}

namespace {

struct RawScores {
    std::vector<std::size_t> numerators;  // sum of freq(stem) over scored tokens
    std::size_t max_freq = 0;
};

RawScores raw_scores(const std::vector<SentenceSpan>& sentences, const Stoplist& stoplist)
{
    std::vector<std::vector<std::string>> stems(sentences.size());
    std::unordered_map<std::string, std::size_t> freq;
    RawScores raw;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (const auto& token : tokenize(sentences[i].text)) {
            if (stoplist.contains(token))
                continue;
            auto s = stem(token);
            raw.max_freq = std::max(raw.max_freq, ++freq[s]);
            stems[i].push_back(std::move(s));
        }
    }
    raw.numerators.assign(sentences.size(), 0);
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        for (const auto& s : stems[i])
            raw.numerators[i] += freq[s];
    }
    return raw;
}

}  // namespace

std::vector<double> score_sentences(const std::vector<SentenceSpan>& sentences, const Stoplist& stoplist)
{
    auto raw = raw_scores(sentences, stoplist);
    std::vector<double> scores(sentences.size(), 0.0);
    if (raw.max_freq == 0)
        return scores;
    for (std::size_t i = 0; i < sentences.size(); ++i)
        scores[i] = static_cast<double>(raw.numerators[i]) / static_cast<double>(raw.max_freq);
    return scores;
}

Summary summarize(std::string_view text, const Stoplist& stoplist, double ratio, int pid)
{
    if (!(ratio > 0.0 && ratio <= 1.0))
        throw Error(ErrorCode::invalid_argument, "summary ratio must be in (0, 1]");
    auto sentences = split_sentences(text);
    if (sentences.empty())
        throw Error(ErrorCode::empty_text, "text has no sentences");

    // Scores share the denominator max_freq; rank on the numerators.
    auto scores = raw_scores(sentences, stoplist).numerators;
    std::vector<std::size_t> words(sentences.size());
    std::size_t total = 0;
    for (std::size_t i = 0; i < sentences.size(); ++i) {
        words[i] = count_words(sentences[i].text);
        total += words[i];
    }
    auto budget = static_cast<std::size_t>(std::ceil(ratio * static_cast<double>(total) - 1e-9));

    std::vector<std::size_t> order(sentences.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    std::vector<std::size_t> chosen;
    std::size_t used = 0;
    for (auto i : order) {
        if (used + words[i] <= budget) {
            chosen.push_back(i);
            used += words[i];
        }
    }
    // Nothing fits: keep the top sentence anyway.
    if (chosen.empty()) {
        chosen.push_back(order.front());
        used = words[order.front()];
    }
    std::sort(chosen.begin(), chosen.end());

    Summary summary;
    summary.pid = pid;
    summary.word_count = used;
    int sid = 1;
    for (auto i : chosen)
        summary.sentences.push_back({sid++, std::move(sentences[i].text), i});
    return summary;
}

void SummaryStore::add(Summary summary)
{
    auto pid = summary.pid;
    summaries_.insert_or_assign(pid, std::move(summary));
}

std::size_t SummaryStore::sentence_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [pid, s] : summaries_)
        n += s.sentences.size();
    return n;
}

std::optional<std::string_view> SummaryStore::sentence(int pid, int sid) const
{
    auto it = summaries_.find(pid);
    if (it == summaries_.end() || sid < 1 || static_cast<std::size_t>(sid) > it->second.sentences.size())
        return std::nullopt;
    return std::string_view(it->second.sentences[static_cast<std::size_t>(sid - 1)].text);
}

std::string SummaryStore::fingerprint() const
{
    Fingerprint fp;
    for (const auto& [pid, summary] : summaries_) {
        for (const auto& s : summary.sentences)
            fp.add(std::to_string(pid)).add("\t").add(std::to_string(s.sid)).add("\t").add(s.text).add("\n");
    }
    return fp.hex();
}

void write_summaries(std::ostream& out, const SummaryStore& store)
{
    std::string text;
    for (const auto& [pid, summary] : store.summaries()) {
        for (const auto& s : summary.sentences)
            jsonl::append(text, nlohmann::ordered_json{{"pid", pid}, {"sid", s.sid}, {"text", s.text}});
    }
    out << text;
}

SummaryStore read_summaries(std::istream& in)
{
    std::map<int, Summary> pages;
    jsonl::read(in, [&](const nlohmann::json& j, std::size_t line) {
        auto pid = j.at("pid").get<int>();
        auto sid = j.at("sid").get<int>();
        auto text = j.at("text").get<std::string>();
        if (pid < 1)
            throw Error(ErrorCode::format_error, "line " + std::to_string(line) + ": pid must be positive");
        auto& summary = pages[pid];
        summary.pid = pid;
        if (sid != static_cast<int>(summary.sentences.size()) + 1)
            throw Error(ErrorCode::format_error,
                        "line " + std::to_string(line) + ": sids must run 1..K in order within a page");
        summary.word_count += count_words(text);
        summary.sentences.push_back({sid, std::move(text), static_cast<std::size_t>(sid - 1)});
    });
    SummaryStore store;
    for (auto& [pid, summary] : pages)
        store.add(std::move(summary));
    return store;
}

void save_summaries(const SummaryStore& store, const std::filesystem::path& path)
{
    std::ostringstream out;
    write_summaries(out, store);
    jsonl::write_file(path, out.str());
}

SummaryStore load_summaries(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    try {
        return read_summaries(in);
    }
    catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace qcqa
