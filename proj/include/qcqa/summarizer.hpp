#pragma once

#include "qcqa/preprocess.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qcqa {

struct SentenceSpan {
    std::string text;        // verbatim slice of the input, trimmed
    std::size_t offset = 0;  // byte offset of text in the input
};

/// Splits at '.', '!' or '?' followed by whitespace or end of input.
/// A period closing a lone capital (or a chain such as "U.S.") does not end
/// a sentence.
std::vector<SentenceSpan> split_sentences(std::string_view text);

/// Whitespace-delimited word count.
std::size_t count_words(std::string_view text);

struct Sentence {
    int sid = 0;                  // 1-based within the summary
    std::string text;
    std::size_t source_pos = 0;   // index in split_sentences(original)

    friend bool operator==(const Sentence&, const Sentence&) = default;
};

struct Summary {
    int pid = 0;
    std::vector<Sentence> sentences;
    std::size_t word_count = 0;

    friend bool operator==(const Summary&, const Summary&) = default;
};

/// Frequency-based extractive summary. Each sentence scores the sum, over
/// its non-stopword token occurrences, of freq(stem) / max_freq taken over
/// the whole text. Sentences are taken best-first (earlier wins ties) until
/// the next one would push the total past ceil(ratio * words); the top
/// sentence is always kept. Output is in source order with sids 1..K.
///
/// Throws Error(empty_text) when the text has no sentences and
/// Error(invalid_argument) unless 0 < ratio <= 1.
Summary summarize(std::string_view text, const Stoplist& stoplist, double ratio = 0.5, int pid = 0);

/// Per-sentence scores in split order; exposed for diagnostics and tests.
std::vector<double> score_sentences(const std::vector<SentenceSpan>& sentences, const Stoplist& stoplist);

/// All summaries of a corpus, keyed by pid.
class SummaryStore {
public:
    void add(Summary summary);

    const std::map<int, Summary>& summaries() const noexcept { return summaries_; }
    bool empty() const noexcept { return summaries_.empty(); }
    std::size_t page_count() const noexcept { return summaries_.size(); }
    std::size_t sentence_count() const noexcept;

    /// Text of sentence sid in page pid, if stored.
    std::optional<std::string_view> sentence(int pid, int sid) const;

    /// Hex FNV-1a over (pid, sid, text) in store order.
    std::string fingerprint() const;

    friend bool operator==(const SummaryStore&, const SummaryStore&) = default;

private:
    std::map<int, Summary> summaries_;
};

/// Newline-delimited {pid, sid, text} records. Loaded sentences get
/// source_pos = sid - 1 since the original offsets are not persisted.
void write_summaries(std::ostream& out, const SummaryStore& store);
SummaryStore read_summaries(std::istream& in);
void save_summaries(const SummaryStore& store, const std::filesystem::path& path);
SummaryStore load_summaries(const std::filesystem::path& path);

}  // namespace qcqa
