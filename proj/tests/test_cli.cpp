#include "fixtures.hpp"

#include "qcqa/cli.hpp"
#include "qcqa/corpus.hpp"
#include "qcqa/indexer.hpp"
#include "qcqa/summarizer.hpp"

#include <doctest.h>
#include <httplib.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

using namespace qcqa;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "qcqa");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string sample(const char* name)
{
    return testing::fixture(std::string("sample/") + name).string();
}

// A three-page site on a loopback port.
class SiteServer {
public:
    SiteServer()
    {
        page("/index.html",
             "<html><head><title>Home</title></head><body>"
             "<p>The President of the USA lives in Washington. The President met the press on Sunday. "
             "Visitors walked through the park. Birds sang in the trees all morning.</p>"
             "<a href=\"news.html\">News</a> <a href=\"/cricket.html\">Cricket</a>"
             "<a href=\"mailto:desk@example.test\">Mail</a></body></html>");
        page("/news.html",
             "<html><body><p>The budget of the USA grew by a dollar in December. "
             "The budget debate ended at noon. Reporters left the hall quickly.</p>"
             "<a href=\"index.html\">Home</a></body></html>");
        page("/cricket.html",
             "<html><body><p>The batsman scored a century in the series. The batsman retired on Sunday. "
             "The crowd went home happy.</p><a href=\"./index.html#top\">Home</a></body></html>");
        port_ = server_.bind_to_any_port("127.0.0.1");
        thread_ = std::thread([this] { server_.listen_after_bind(); });
        server_.wait_until_ready();
    }
    ~SiteServer()
    {
        server_.stop();
        thread_.join();
    }

    std::string url(const std::string& path) const
    {
        return "http://127.0.0.1:" + std::to_string(port_) + path;
    }

private:
    void page(const std::string& path, std::string body)
    {
        server_.Get(path, [body = std::move(body)](const httplib::Request&, httplib::Response& res) {
            res.set_content(body, "text/html");
        });
    }

    httplib::Server server_;
    int port_ = -1;
    std::thread thread_;
};

}  // namespace

TEST_CASE("usage errors exit with 1")
{
    CHECK(cli({}).code == 1);
    CHECK(cli({"frobnicate"}).code == 1);
    CHECK(cli({"summarize", "--out", "x.jsonl"}).code == 1);
    CHECK(cli({"crawl", "--seeds", "s.txt", "--out", "p.jsonl", "--max-pages", "many"}).code == 1);
    auto help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("summarize") != std::string::npos);
}

TEST_CASE("I/O and format errors exit with 2")
{
    testing::TempDir dir;
    auto missing = (dir / "absent.jsonl").string();
    auto r = cli({"summarize", "--pages", missing, "--out", (dir / "s.jsonl").string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("io_error") != std::string::npos);
    CHECK(cli({"index", "--summaries", missing, "--dict", testing::fixture("dictionary.jsonl").string(), "--out",
               (dir / "i.json").string()})
              .code
          == 2);
    CHECK(cli({"ask", "--index", sample("index.json"), "--summaries", testing::fixture("feedback_log_50.jsonl").string(),
               "Who is the President of USA"})
              .code
          == 2);
    CHECK(cli({"eval", "--records", missing, "--out", (dir / "r.csv").string()}).code == 2);
    CHECK(cli({"crawl", "--seeds", missing, "--out", (dir / "p.jsonl").string()}).code == 2);
}

TEST_CASE("ask prints the ranked answers")
{
    auto r = cli({"ask", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"),
                  "Who is the President of USA"});
    REQUIRE(r.code == 0);
    CHECK(r.out
          == "question_class: who\n"
             "answer_types: person, organization\n"
             "terms: presid, usa\n"
             "  1  score   0  matched 1  p7/s4  The tour of the USA ends in December.\n"
             "  2  score   0  matched 1  p9/s1  The President signed the budget in December.\n");
}

TEST_CASE("ask uses the feedback log")
{
    testing::TempDir dir;
    auto log = dir / "feedback.jsonl";
    write_file(log, "{\"pid\":9,\"sid\":1,\"vote\":\"like\"}\n");
    auto r = cli({"ask", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"), "--feedback",
                  log.string(), "Who is the President of USA"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("  1  score   1  matched 1  p9/s1") != std::string::npos);
    CHECK(r.out.find("  2  score   0  matched 1  p7/s4") != std::string::npos);
}

TEST_CASE("ask reports unsupported questions and empty results")
{
    auto r = cli({"ask", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"), "Hello world"});
    CHECK(r.code == 1);
    CHECK(r.err.find("unsupported_question_class") != std::string::npos);

    auto why = cli({"ask", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"),
                    "Why did Hitler kill himself"});
    CHECK(why.code == 0);
    CHECK(why.out.find("answer_types: reason\n") != std::string::npos);
    CHECK(why.out.find("no answers\n") != std::string::npos);
}

TEST_CASE("a different stoplist is rejected")
{
    testing::TempDir dir;
    write_file(dir / "stop.txt", "the\nof\n");
    auto r = cli({"ask", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"), "--stoplist",
                  (dir / "stop.txt").string(), "Who is the President of USA"});
    CHECK(r.code == 2);
    CHECK(r.err.find("stale_preprocessor") != std::string::npos);
}

TEST_CASE("crawl, summarize, index and ask end to end")
{
    SiteServer site;
    testing::TempDir dir;
    write_file(dir / "seeds.txt", "# seeds\n" + site.url("/index.html") + "\n");
    auto pages = (dir / "pages.jsonl").string();
    auto summaries = (dir / "summaries.jsonl").string();
    auto index = (dir / "index.json").string();

    auto crawled = cli({"crawl", "--seeds", (dir / "seeds.txt").string(), "--out", pages, "--delay-ms", "0"});
    REQUIRE_MESSAGE(crawled.code == 0, crawled.err);
    CHECK(crawled.out.find("crawled 3 pages") == 0);
    auto repo = load_repository(pages);
    REQUIRE(repo.size() == 3);
    CHECK(repo.pages[0].url == site.url("/index.html"));
    CHECK(repo.pages[1].url == site.url("/news.html"));
    CHECK(repo.pages[2].url == site.url("/cricket.html"));

    auto summarized = cli({"summarize", "--pages", pages, "--out", summaries});
    REQUIRE_MESSAGE(summarized.code == 0, summarized.err);
    auto store = load_summaries(summaries);
    CHECK(store.page_count() == 3);
    for (const auto& page : repo.pages) {
        const auto& kept = store.summaries().at(page.pid);
        CHECK(kept.word_count * 2 <= count_words(page.text) + 1);
    }

    auto indexed = cli({"index", "--summaries", summaries, "--dict", testing::fixture("dictionary.jsonl").string(),
                        "--out", index});
    REQUIRE_MESSAGE(indexed.code == 0, indexed.err);
    auto built = load_index(index);
    CHECK(built.metadata.summaries == store.fingerprint());
    CHECK(built.terms(AnswerType::person).contains("presid"));

    auto asked = cli({"ask", "--index", index, "--summaries", summaries, "Who is the President of USA"});
    REQUIRE_MESSAGE(asked.code == 0, asked.err);
    // The page title runs into the first sentence, which has no terminator before it.
    CHECK(asked.out.find("  1  score   0  matched 2  p1/s1  Home The President of the USA lives in Washington.\n")
          != std::string::npos);
    CHECK(asked.out.find("  2  ") == std::string::npos);

    // Rebuilding from the same inputs gives the same bytes.
    auto again = (dir / "index2.json").string();
    REQUIRE(cli({"index", "--summaries", summaries, "--dict", testing::fixture("dictionary.jsonl").string(), "--out",
                 again})
                .code
            == 0);
    CHECK(testing::read_text(index) == testing::read_text(again));
}

TEST_CASE("crawl rejects an empty seed file")
{
    testing::TempDir dir;
    write_file(dir / "seeds.txt", "# nothing here\n\n");
    auto r = cli({"crawl", "--seeds", (dir / "seeds.txt").string(), "--out", (dir / "p.jsonl").string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("empty_seeds") != std::string::npos);
}

TEST_CASE("eval prints averages and writes the report")
{
    testing::TempDir dir;
    auto csv = dir / "report.csv";
    auto r = cli({"eval", "--records", testing::fixture("eval/person.jsonl").string(), "--out", csv.string(),
                  "--checklists", testing::fixture("eval/checklists.jsonl").string()});
    REQUIRE_MESSAGE(r.code == 0, r.err);
    CHECK(r.out == "who/person: 78.33% over 10 questions\n");
    auto report = testing::read_text(csv);
    CHECK(report.find("78.33") != std::string::npos);
}

TEST_CASE("serve validates its configuration before listening")
{
    testing::TempDir dir;
    std::vector<std::string> args{"serve", "--index", sample("index.json"), "--summaries", sample("summaries.jsonl"),
                                  "--feedback", (dir / "fb.jsonl").string()};
    ::setenv("QA_PORT", "http", 1);
    CHECK(cli(args).code == 1);
    ::unsetenv("QA_PORT");

    auto missing = args;
    missing[2] = (dir / "absent.json").string();
    CHECK(cli(missing).code == 2);

    auto bad_root = args;
    bad_root.insert(bad_root.end(), {"--web-root", (dir / "nope").string()});
    CHECK(cli(bad_root).code == 2);
}
