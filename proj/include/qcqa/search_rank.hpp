#pragma once

#include "qcqa/indexer.hpp"
#include "qcqa/qclassify.hpp"
#include "qcqa/summarizer.hpp"
#include "qcqa/timestamp.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace qcqa {

struct AnswerKey {
    int pid = 0;
    int sid = 0;

    friend auto operator<=>(const AnswerKey&, const AnswerKey&) = default;
};

struct AnswerHit {
    int pid = 0;
    int sid = 0;
    std::string text;
    int matched_terms = 0;  // distinct query terms whose postings contain (sid, pid)

    AnswerKey key() const noexcept { return {pid, sid}; }
    friend bool operator==(const AnswerHit&, const AnswerHit&) = default;
};

/// Sentences holding a query term, one hit per sentence, ordered by
/// (pid, sid). A posting qualifies when its term is filed under one of the
/// query's answer types, or when its page contains some term filed under
/// one of them; pages with no expected-type term contribute nothing.
/// Throws Error(store_mismatch) if the index was built from other summaries.
std::vector<AnswerHit> search(const QCIndex& index, const Query& query, const SummaryStore& summaries);

enum class Vote { like, dislike };

std::string_view to_string(Vote vote) noexcept;
std::optional<Vote> parse_vote(std::string_view text) noexcept;

struct Tally {
    std::uint64_t likes = 0;
    std::uint64_t dislikes = 0;

    std::int64_t score() const noexcept
    {
        return static_cast<std::int64_t>(likes) - static_cast<std::int64_t>(dislikes);
    }
    friend bool operator==(const Tally&, const Tally&) = default;
};

using FeedbackSnapshot = std::map<AnswerKey, Tally>;

/// Replays an append-only feedback log. A missing file is an empty log.
FeedbackSnapshot replay_feedback_log(const std::filesystem::path& path);

/// Like/dislike tallies per answer. With a log path every vote is appended
/// and synced to the log before the tally changes. All members are safe to
/// call concurrently; writes are serialised.
class FeedbackStore {
public:
    FeedbackStore() = default;
    /// Replays the log at path, then appends to it.
    explicit FeedbackStore(std::filesystem::path log_path);

    FeedbackStore(const FeedbackStore&) = delete;
    FeedbackStore& operator=(const FeedbackStore&) = delete;

    /// Increments one counter by exactly one and returns the new tally.
    /// Throws Error(io_error) if the log append fails; counts are unchanged.
    Tally record(AnswerKey key, Vote vote, Timestamp when = now_utc());

    Tally tally(AnswerKey key) const;
    FeedbackSnapshot snapshot() const;

    /// Clears all tallies and truncates the log.
    void reset();

private:
    void append_log(const std::string& line);

    mutable std::mutex mutex_;
    FeedbackSnapshot tallies_;
    std::optional<std::filesystem::path> log_path_;
};

struct RankedAnswer {
    AnswerHit hit;
    Tally tally;
    std::int64_t feedback_score = 0;
    int rank = 0;  // 1-based

    friend bool operator==(const RankedAnswer&, const RankedAnswer&) = default;
};

/// Orders by feedback score desc, matched_terms desc, pid asc, sid asc and
/// numbers the result 1..K.
std::vector<RankedAnswer> rank(std::vector<AnswerHit> hits, const FeedbackSnapshot& feedback);
std::vector<RankedAnswer> rank(std::vector<AnswerHit> hits, const FeedbackStore& feedback);

}  // namespace qcqa
