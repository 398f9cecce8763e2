#include "qcqa/search_rank.hpp"

#include "qcqa/error.hpp"
#include "qcqa/jsonl.hpp"

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <fcntl.h>
#include <set>
#include <tuple>
#include <unistd.h>

namespace qcqa {
namespace {

class FileDescriptor {
public:
    explicit FileDescriptor(int fd) : fd_(fd) {}
    ~FileDescriptor()
    {
        if (fd_ >= 0)
            ::close(fd_);
    }
    FileDescriptor(const FileDescriptor&) = delete;
    FileDescriptor& operator=(const FileDescriptor&) = delete;

    int get() const noexcept { return fd_; }

private:
    int fd_;
};

std::string errno_message(const std::string& what)
{
    return what + ": " + std::strerror(errno);
}

}  // namespace

std::vector<AnswerHit> search(const QCIndex& index, const Query& query, const SummaryStore& summaries)
{
    if (index.metadata.summaries != summaries.fingerprint())
        throw Error(ErrorCode::store_mismatch, "index and summary store come from different builds");

    std::set<int> typed_pages;
    for (auto type : query.answer_types)
        for (const auto& [term, postings] : index.terms(type))
            for (const auto& p : postings)
                typed_pages.insert(p.pid);

    std::map<AnswerKey, std::set<std::string>> matched;
    for (const auto& term : query.terms.terms) {
        auto type = index.type_of(term);
        if (!type)
            continue;
        bool typed = std::find(query.answer_types.begin(), query.answer_types.end(), *type)
                     != query.answer_types.end();
        for (const auto& p : *index.postings(*type, term)) {
            if (typed || typed_pages.count(p.pid) != 0)
                matched[{p.pid, p.sid}].insert(term);
        }
    }

    std::vector<AnswerHit> hits;
    hits.reserve(matched.size());
    for (const auto& [key, terms] : matched) {
        auto text = summaries.sentence(key.pid, key.sid);
        if (!text)
            throw Error(ErrorCode::store_mismatch, "posting (s" + std::to_string(key.sid) + ",p"
                                                       + std::to_string(key.pid) + ") has no stored sentence");
        hits.push_back({key.pid, key.sid, std::string(*text), static_cast<int>(terms.size())});
    }
    return hits;
}

std::string_view to_string(Vote vote) noexcept
{
    return vote == Vote::like ? "like" : "dislike";
}

std::optional<Vote> parse_vote(std::string_view text) noexcept
{
    if (text == "like")
        return Vote::like;
    if (text == "dislike")
        return Vote::dislike;
    return std::nullopt;
}

FeedbackSnapshot replay_feedback_log(const std::filesystem::path& path)
{
    FeedbackSnapshot tallies;
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        return tallies;
    jsonl::read_file(path, [&](const nlohmann::json& j, std::size_t line) {
        auto vote = parse_vote(j.at("vote").get<std::string>());
        if (!vote)
            throw Error(ErrorCode::format_error, "line " + std::to_string(line) + ": vote must be like or dislike");
        auto& t = tallies[{j.at("pid").get<int>(), j.at("sid").get<int>()}];
        (*vote == Vote::like ? t.likes : t.dislikes) += 1;
    });
    return tallies;
}

FeedbackStore::FeedbackStore(std::filesystem::path log_path)
    : tallies_(replay_feedback_log(log_path)), log_path_(std::move(log_path))
{}

void FeedbackStore::append_log(const std::string& line)
{
    FileDescriptor fd(::open(log_path_->c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644));
    if (fd.get() < 0)
        throw Error(ErrorCode::io_error, errno_message("cannot open feedback log " + log_path_->string()));
    std::size_t written = 0;
    while (written < line.size()) {
        auto n = ::write(fd.get(), line.data() + written, line.size() - written);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw Error(ErrorCode::io_error, errno_message("feedback log append failed"));
        }
        written += static_cast<std::size_t>(n);
    }
    if (::fsync(fd.get()) != 0)
        throw Error(ErrorCode::io_error, errno_message("feedback log sync failed"));
}

Tally FeedbackStore::record(AnswerKey key, Vote vote, Timestamp when)
{
    std::lock_guard lock(mutex_);
    if (log_path_) {
        std::string line;
        jsonl::append(line, nlohmann::ordered_json{{"timestamp", format_rfc3339(when)},
                                                   {"pid", key.pid},
                                                   {"sid", key.sid},
                                                   {"vote", to_string(vote)}});
        append_log(line);
    }
    auto& t = tallies_[key];
    (vote == Vote::like ? t.likes : t.dislikes) += 1;
    return t;
}

Tally FeedbackStore::tally(AnswerKey key) const
{
    std::lock_guard lock(mutex_);
    auto it = tallies_.find(key);
    return it == tallies_.end() ? Tally{} : it->second;
}

FeedbackSnapshot FeedbackStore::snapshot() const
{
    std::lock_guard lock(mutex_);
    return tallies_;
}

void FeedbackStore::reset()
{
    std::lock_guard lock(mutex_);
    if (log_path_) {
        FileDescriptor fd(::open(log_path_->c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644));
        if (fd.get() < 0)
            throw Error(ErrorCode::io_error, errno_message("cannot truncate feedback log"));
    }
    tallies_.clear();
}

std::vector<RankedAnswer> rank(std::vector<AnswerHit> hits, const FeedbackSnapshot& feedback)
{
    std::vector<RankedAnswer> ranked;
    ranked.reserve(hits.size());
    for (auto& hit : hits) {
        auto it = feedback.find(hit.key());
        Tally t = it == feedback.end() ? Tally{} : it->second;
        ranked.push_back({std::move(hit), t, t.score(), 0});
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const RankedAnswer& a, const RankedAnswer& b) {
        return std::make_tuple(-a.feedback_score, -a.hit.matched_terms, a.hit.pid, a.hit.sid)
               < std::make_tuple(-b.feedback_score, -b.hit.matched_terms, b.hit.pid, b.hit.sid);
    });
    for (std::size_t i = 0; i < ranked.size(); ++i)
        ranked[i].rank = static_cast<int>(i) + 1;
    return ranked;
}

std::vector<RankedAnswer> rank(std::vector<AnswerHit> hits, const FeedbackStore& feedback)
{
    return rank(std::move(hits), feedback.snapshot());
}

}  // namespace qcqa
