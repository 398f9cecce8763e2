#pragma once

#include "qcqa/indexer.hpp"
#include "qcqa/preprocess.hpp"
#include "qcqa/search_rank.hpp"
#include "qcqa/summarizer.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace httplib {
class Server;
}

namespace qcqa {

struct AskAnswer {
    int pid = 0;
    int sid = 0;
    std::string text;
    std::int64_t feedback_score = 0;
    int matched_terms = 0;
    std::uint64_t likes = 0;
    std::uint64_t dislikes = 0;

    friend bool operator==(const AskAnswer&, const AskAnswer&) = default;
};

struct AskResponse {
    std::string question_class;
    std::vector<std::string> answer_types;
    std::vector<std::string> terms;
    std::vector<AskAnswer> answers;  // exactly rank() order

    nlohmann::ordered_json to_json() const;
    friend bool operator==(const AskResponse&, const AskResponse&) = default;
};

struct ServiceStats {
    std::size_t pages = 0;
    std::size_t sentences = 0;
    std::map<AnswerType, std::size_t> terms_per_answer_type;  // every type present, zero or not

    nlohmann::ordered_json to_json() const;
};

/// The question-answering pipeline over one immutable index snapshot plus a
/// shared feedback store. Reads are safe from any thread.
class QaService {
public:
    /// Throws Error(store_mismatch) if index and summaries disagree.
    QaService(QCIndex index, SummaryStore summaries, std::shared_ptr<FeedbackStore> feedback,
              Stoplist stoplist = Stoplist::english());

    /// classify_question -> search -> rank. Propagates Error.
    AskResponse ask(std::string_view question) const;
    Tally feedback(AnswerKey key, Vote vote);
    ServiceStats stats() const;

    const QCIndex& index() const noexcept { return index_; }

private:
    QCIndex index_;
    SummaryStore summaries_;
    std::shared_ptr<FeedbackStore> feedback_;
    Stoplist stoplist_;
};

struct ServiceConfig {
    std::filesystem::path index_path;
    std::filesystem::path summaries_path;
    std::filesystem::path feedback_log_path;
    std::optional<std::filesystem::path> stoplist_path;
    std::optional<std::filesystem::path> web_root;
    std::string host = "127.0.0.1";
    int port = 8080;

    /// Throws Error(io_error) naming the first missing input file.
    void validate() const;
};

/// Loads index, summaries, stoplist and feedback log named by config.
std::unique_ptr<QaService> open_service(const ServiceConfig& config);

/// JSON API under /v1 plus optional static files under /.
///   GET  /v1/health
///   POST /v1/ask       {"question": "..."}
///   POST /v1/feedback  {"pid": 9, "sid": 1, "vote": "like"}
///   GET  /v1/stats
/// Errors are {"error": {"code": "...", "message": "..."}}.
class HttpServer {
public:
    explicit HttpServer(QaService& service, std::optional<std::filesystem::path> web_root = std::nullopt);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Binds; port 0 picks a free port. Returns the bound port or -1.
    int bind(const std::string& host, int port);
    /// Blocks serving requests until stop().
    bool listen();
    void stop();
    void wait_until_ready() const;

private:
    QaService& service_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace qcqa
