#include "qcqa/service.hpp"

#include "qcqa/error.hpp"
#include "qcqa/qclassify.hpp"

#include <httplib.h>

namespace qcqa {
namespace {

using nlohmann::ordered_json;

void send_json(httplib::Response& res, int status, const ordered_json& body)
{
    res.status = status;
    res.set_content(body.dump(), "application/json; charset=utf-8");
}

void send_error(httplib::Response& res, int status, std::string_view code, const std::string& message)
{
    send_json(res, status, ordered_json{{"error", {{"code", code}, {"message", message}}}});
}

void send_error(httplib::Response& res, const Error& e)
{
    switch (e.code()) {
    case ErrorCode::unsupported_question_class:
    case ErrorCode::empty_query:
        send_error(res, 400, to_string(e.code()), e.what());
        return;
    case ErrorCode::invalid_argument:
        send_error(res, 400, "invalid_request", e.what());
        return;
    case ErrorCode::io_error:
    case ErrorCode::format_error:
    case ErrorCode::store_mismatch:
    case ErrorCode::stale_preprocessor:
        send_error(res, 500, "store_error", e.what());
        return;
    default:
        send_error(res, 500, "internal_error", e.what());
        return;
    }
}

std::optional<nlohmann::json> parse_body(const httplib::Request& req, httplib::Response& res)
{
    auto body = nlohmann::json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        send_error(res, 400, "invalid_request", "request body must be a JSON object");
        return std::nullopt;
    }
    return body;
}

}  // namespace

ordered_json AskResponse::to_json() const
{
    ordered_json answers_json = ordered_json::array();
    for (const auto& a : answers) {
        answers_json.push_back({{"pid", a.pid},
                                {"sid", a.sid},
                                {"text", a.text},
                                {"feedback_score", a.feedback_score},
                                {"matched_terms", a.matched_terms},
                                {"likes", a.likes},
                                {"dislikes", a.dislikes}});
    }
    return {{"question_class", question_class},
            {"answer_types", answer_types},
            {"terms", terms},
            {"answers", std::move(answers_json)}};
}

ordered_json ServiceStats::to_json() const
{
    ordered_json per_type = ordered_json::object();
    for (const auto& [type, n] : terms_per_answer_type)
        per_type[std::string(to_string(type))] = n;
    return {{"pages", pages}, {"sentences", sentences}, {"terms_per_answer_type", std::move(per_type)}};
}

QaService::QaService(QCIndex index, SummaryStore summaries, std::shared_ptr<FeedbackStore> feedback,
                     Stoplist stoplist)
    : index_(std::move(index)), summaries_(std::move(summaries)), feedback_(std::move(feedback)),
      stoplist_(std::move(stoplist))
{
    if (!feedback_)
        feedback_ = std::make_shared<FeedbackStore>();
    if (index_.metadata.summaries != summaries_.fingerprint())
        throw Error(ErrorCode::store_mismatch, "index was not built from this summary store");
}

AskResponse QaService::ask(std::string_view question) const
{
    auto query = classify_question(question, stoplist_);
    auto ranked = rank(search(index_, query, summaries_), *feedback_);

    AskResponse resp;
    resp.question_class = std::string(to_string(query.question_class));
    for (auto t : query.answer_types)
        resp.answer_types.emplace_back(to_string(t));
    resp.terms = query.terms.terms;
    for (auto& r : ranked) {
        resp.answers.push_back({r.hit.pid, r.hit.sid, std::move(r.hit.text), r.feedback_score,
                                r.hit.matched_terms, r.tally.likes, r.tally.dislikes});
    }
    return resp;
}

Tally QaService::feedback(AnswerKey key, Vote vote)
{
    return feedback_->record(key, vote);
}

ServiceStats QaService::stats() const
{
    ServiceStats s;
    s.pages = summaries_.page_count();
    s.sentences = summaries_.sentence_count();
    for (auto t : all_answer_types)
        s.terms_per_answer_type[t] = index_.terms(t).size();
    return s;
}

void ServiceConfig::validate() const
{
    for (const auto* p : {&index_path, &summaries_path}) {
        if (!std::filesystem::exists(*p))
            throw Error(ErrorCode::io_error, "missing input file: " + p->string());
    }
    if (stoplist_path && !std::filesystem::exists(*stoplist_path))
        throw Error(ErrorCode::io_error, "missing stoplist: " + stoplist_path->string());
    if (web_root && !std::filesystem::is_directory(*web_root))
        throw Error(ErrorCode::io_error, "web root is not a directory: " + web_root->string());
    auto log_dir = feedback_log_path.parent_path();
    if (!log_dir.empty() && !std::filesystem::is_directory(log_dir))
        throw Error(ErrorCode::io_error, "feedback log directory does not exist: " + log_dir.string());
}

std::unique_ptr<QaService> open_service(const ServiceConfig& config)
{
    config.validate();
    auto stoplist = config.stoplist_path ? Stoplist::load(*config.stoplist_path) : Stoplist::english();
    auto index = load_index(config.index_path, stoplist);
    auto summaries = load_summaries(config.summaries_path);
    auto feedback = std::make_shared<FeedbackStore>(config.feedback_log_path);
    return std::make_unique<QaService>(std::move(index), std::move(summaries), std::move(feedback),
                                       std::move(stoplist));
}

HttpServer::HttpServer(QaService& service, std::optional<std::filesystem::path> web_root)
    : service_(service), server_(std::make_unique<httplib::Server>())
{
    auto& svr = *server_;

    svr.Get("/v1/health", [](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, ordered_json{{"status", "ok"}});
    });

    svr.Post("/v1/ask", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body)
            return;
        auto q = body->find("question");
        if (q == body->end() || !q->is_string()) {
            send_error(res, 400, "invalid_request", "field 'question' (string) is required");
            return;
        }
        try {
            send_json(res, 200, service_.ask(q->get<std::string>()).to_json());
        }
        catch (const Error& e) {
            send_error(res, e);
        }
    });

    svr.Post("/v1/feedback", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body)
            return;
        auto pid = body->find("pid");
        auto sid = body->find("sid");
        auto vote_field = body->find("vote");
        if (pid == body->end() || sid == body->end() || !pid->is_number_integer() || !sid->is_number_integer()
            || pid->get<long long>() < 1 || sid->get<long long>() < 1 || pid->get<long long>() > INT32_MAX
            || sid->get<long long>() > INT32_MAX) {
            send_error(res, 400, "invalid_request", "fields 'pid' and 'sid' must be positive integers");
            return;
        }
        std::optional<Vote> vote;
        if (vote_field != body->end() && vote_field->is_string())
            vote = parse_vote(vote_field->get<std::string>());
        if (!vote) {
            send_error(res, 400, "invalid_vote", "field 'vote' must be \"like\" or \"dislike\"");
            return;
        }
        try {
            AnswerKey key{pid->get<int>(), sid->get<int>()};
            auto t = service_.feedback(key, *vote);
            send_json(res, 200, ordered_json{{"pid", key.pid}, {"sid", key.sid}, {"likes", t.likes},
                                             {"dislikes", t.dislikes}});
        }
        catch (const Error& e) {
            send_error(res, e);
        }
    });

    svr.Get("/v1/stats", [this](const httplib::Request&, httplib::Response& res) {
        send_json(res, 200, service_.stats().to_json());
    });

    svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        try {
            std::rethrow_exception(ep);
        }
        catch (const std::exception& e) {
            send_error(res, 500, "internal_error", e.what());
        }
        catch (...) {
            send_error(res, 500, "internal_error", "unknown error");
        }
    });

    svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (!res.body.empty())
            return httplib::Server::HandlerResponse::Unhandled;
        auto code = res.status == 404 ? "not_found" : res.status == 405 ? "method_not_allowed" : "http_error";
        send_error(res, res.status, code, httplib::status_message(res.status));
        return httplib::Server::HandlerResponse::Handled;
    });

    if (web_root)
        svr.set_mount_point("/", web_root->string());
}

HttpServer::~HttpServer() = default;

int HttpServer::bind(const std::string& host, int port)
{
    if (port == 0)
        return server_->bind_to_any_port(host);
    return server_->bind_to_port(host, port) ? port : -1;
}

bool HttpServer::listen()
{
    return server_->listen_after_bind();
}

void HttpServer::stop()
{
    server_->stop();
}

void HttpServer::wait_until_ready() const
{
    server_->wait_until_ready();
}

}  // namespace qcqa
