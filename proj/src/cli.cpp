#include "qcqa/cli.hpp"

#include "qcqa/corpus.hpp"
#include "qcqa/error.hpp"
#include "qcqa/eval.hpp"
#include "qcqa/http_fetcher.hpp"
#include "qcqa/indexer.hpp"
#include "qcqa/qclassify.hpp"
#include "qcqa/search_rank.hpp"
#include "qcqa/service.hpp"
#include "qcqa/summarizer.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <iomanip>
#include <ostream>

namespace qcqa {
namespace {

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_io = 2;

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::io_error:
    case ErrorCode::format_error:
    case ErrorCode::stale_preprocessor:
    case ErrorCode::store_mismatch:
        return exit_io;
    default:
        return exit_usage;
    }
}

Stoplist stoplist_from(const std::string& path)
{
    return path.empty() ? Stoplist::english() : Stoplist::load(path);
}

HttpServer* active_server = nullptr;

extern "C" void stop_active_server(int)
{
    if (active_server)
        active_server->stop();
}

std::string join(const std::vector<std::string>& items, std::string_view sep)
{
    std::string out;
    for (const auto& s : items) {
        if (!out.empty())
            out += sep;
        out += s;
    }
    return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Question answering over an answer-type index"};
    app.require_subcommand(1);

    // crawl
    auto* crawl_cmd = app.add_subcommand("crawl", "Breadth-first crawl from seed URLs into a page repository");
    std::string seeds_path, pages_out;
    std::size_t max_pages = 100, max_depth = 3;
    long delay_ms = 1000;
    int blog_threshold = 2;
    crawl_cmd->add_option("--seeds", seeds_path, "Seed file, one URL per line")->required();
    crawl_cmd->add_option("--out", pages_out, "Repository file to write")->required();
    crawl_cmd->add_option("--max-pages", max_pages, "Page budget")->capture_default_str();
    crawl_cmd->add_option("--max-depth", max_depth, "Link depth limit")->capture_default_str();
    crawl_cmd->add_option("--delay-ms", delay_ms, "Delay between requests to one host")
        ->capture_default_str()
        ->check(CLI::NonNegativeNumber);
    crawl_cmd->add_option("--blog-threshold", blog_threshold, "Blog features needed to mark a page as blog")
        ->capture_default_str()
        ->check(CLI::Range(1, 4));

    // summarize
    auto* sum_cmd = app.add_subcommand("summarize", "Summarize every page of a repository");
    std::string pages_in, summaries_out, stoplist_path;
    double ratio = 0.5;
    sum_cmd->add_option("--pages", pages_in, "Repository file")->required();
    sum_cmd->add_option("--out", summaries_out, "Summary store to write")->required();
    sum_cmd->add_option("--ratio", ratio, "Maximum summary length as a fraction of the words")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    sum_cmd->add_option("--stoplist", stoplist_path, "Stoplist file (default: built-in English list)");

    // index
    auto* index_cmd = app.add_subcommand("index", "Build the answer-type index from a summary store");
    std::string summaries_in, dict_path, gazetteer_path, index_out;
    index_cmd->add_option("--summaries", summaries_in, "Summary store")->required();
    index_cmd->add_option("--dict", dict_path, "Definition dictionary (JSON lines)")->required();
    index_cmd->add_option("--gazetteer", gazetteer_path, "keyword<TAB>answer_type overrides");
    index_cmd->add_option("--out", index_out, "Index file to write")->required();
    index_cmd->add_option("--stoplist", stoplist_path, "Stoplist file");

    // ask
    auto* ask_cmd = app.add_subcommand("ask", "Answer one question from the command line");
    std::string index_in, feedback_log, question;
    ask_cmd->add_option("--index", index_in, "Index file")->required();
    ask_cmd->add_option("--summaries", summaries_in, "Summary store")->required();
    ask_cmd->add_option("--feedback", feedback_log, "Feedback log used for ranking");
    ask_cmd->add_option("--stoplist", stoplist_path, "Stoplist file");
    ask_cmd->add_option("question", question, "The question")->required();

    // serve
    auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API and web UI");
    ServiceConfig svc;
    std::string web_root, svc_stoplist;
    serve_cmd->add_option("--index", svc.index_path, "Index file")->required();
    serve_cmd->add_option("--summaries", svc.summaries_path, "Summary store")->required();
    serve_cmd->add_option("--feedback", svc.feedback_log_path, "Feedback log (created if missing)")->required();
    serve_cmd->add_option("--host", svc.host, "Listen address")->capture_default_str();
    serve_cmd->add_option("--port", svc.port, "Listen port (QA_PORT overrides)")->capture_default_str();
    serve_cmd->add_option("--web-root", web_root, "Directory of static web UI files served at /");
    serve_cmd->add_option("--stoplist", svc_stoplist, "Stoplist file");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Compute Answer Relevance Scores from factor counts");
    std::string records_path, report_out, checklists_path;
    eval_cmd->add_option("--records", records_path, "Evaluation records (JSON lines)")->required();
    eval_cmd->add_option("--out", report_out, "CSV report to write")->required();
    eval_cmd->add_option("--checklists", checklists_path, "Factor checklists to validate tf against");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*crawl_cmd) {
            CrawlConfig config;
            config.seeds = load_seeds(seeds_path);
            config.max_pages = max_pages;
            config.max_depth = max_depth;
            config.per_host_delay = std::chrono::milliseconds{delay_ms};
            config.blog_threshold = blog_threshold;
            HttpFetcher fetcher;
            auto repo = crawl(config, fetcher);
            save_repository(repo, pages_out);
            auto blogs = std::count_if(repo.pages.begin(), repo.pages.end(),
                                       [](const PageRecord& p) { return p.kind == PageKind::blog; });
            out << "crawled " << repo.size() << " pages (" << blogs << " blog) -> " << pages_out << "\n";
        }
        else if (*sum_cmd) {
            auto stoplist = stoplist_from(stoplist_path);
            auto repo = load_repository(pages_in);
            SummaryStore store;
            for (const auto& page : repo.pages) {
                try {
                    store.add(summarize(page.text, stoplist, ratio, page.pid));
                }
                catch (const Error& e) {
                    if (e.code() != ErrorCode::empty_text)
                        throw;
                    err << "skipping page " << page.pid << " (" << page.url << "): no sentences\n";
                }
            }
            save_summaries(store, summaries_out);
            out << "summarized " << store.page_count() << " pages, " << store.sentence_count() << " sentences -> "
                << summaries_out << "\n";
        }
        else if (*index_cmd) {
            auto stoplist = stoplist_from(stoplist_path);
            auto store = load_summaries(summaries_in);
            auto dict = DictionaryProvider::load(dict_path);
            auto gazetteer = gazetteer_path.empty() ? Gazetteer::standard() : Gazetteer::load(gazetteer_path);
            auto index = build_index(store, dict, gazetteer, stoplist);
            save_index(index, index_out);
            out << "indexed " << index.term_count() << " terms, " << index.posting_count() << " postings -> "
                << index_out << "\n";
        }
        else if (*ask_cmd) {
            auto stoplist = stoplist_from(stoplist_path);
            auto index = load_index(index_in, stoplist);
            auto store = load_summaries(summaries_in);
            auto query = classify_question(question, stoplist);
            std::vector<std::string> types;
            for (auto t : query.answer_types)
                types.emplace_back(to_string(t));
            out << "question_class: " << to_string(query.question_class) << "\n"
                << "answer_types: " << join(types, ", ") << "\n"
                << "terms: " << join(query.terms.terms, ", ") << "\n";
            auto feedback = feedback_log.empty() ? FeedbackSnapshot{} : replay_feedback_log(feedback_log);
            auto ranked = rank(search(index, query, store), feedback);
            if (ranked.empty()) {
                out << "no answers\n";
            }
            for (const auto& r : ranked) {
                out << std::setw(3) << r.rank << "  score " << std::setw(3) << r.feedback_score << "  matched "
                    << r.hit.matched_terms << "  p" << r.hit.pid << "/s" << r.hit.sid << "  " << r.hit.text << "\n";
            }
        }
        else if (*serve_cmd) {
            if (const char* env = std::getenv("QA_PORT"); env && *env) {
                try {
                    svc.port = std::stoi(env);
                }
                catch (const std::exception&) {
                    err << "QA_PORT is not a port number: " << env << "\n";
                    return exit_usage;
                }
            }
            if (!web_root.empty())
                svc.web_root = web_root;
            if (!svc_stoplist.empty())
                svc.stoplist_path = svc_stoplist;
            auto service = open_service(svc);
            HttpServer server(*service, svc.web_root);
            auto port = server.bind(svc.host, svc.port);
            if (port < 0) {
                err << "cannot listen on " << svc.host << ":" << svc.port << "\n";
                return exit_io;
            }
            out << "listening on http://" << svc.host << ":" << port << std::endl;
            active_server = &server;
            std::signal(SIGINT, stop_active_server);
            std::signal(SIGTERM, stop_active_server);
            server.listen();
            active_server = nullptr;
        }
        else if (*eval_cmd) {
            auto records = load_eval_records(records_path);
            if (!checklists_path.empty())
                check_against_checklists(records, load_checklists(checklists_path));
            auto report = evaluate(records);
            export_report(report, report_out);
            for (const auto& a : report.averages)
                out << to_string(a.question_class) << "/" << to_string(a.answer_type) << ": " << a.ars.str()
                    << "% over " << a.questions << " questions\n";
        }
    }
    catch (const Error& e) {
        err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_usage;
    }
    return exit_ok;
}

}  // namespace qcqa
