#include "fixtures.hpp"

#include <atomic>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace qcqa::testing {

std::filesystem::path fixture_dir() { return QCQA_FIXTURES; }
std::filesystem::path data_dir() { return QCQA_DATA; }
std::filesystem::path fixture(const std::string& name) { return fixture_dir() / name; }

std::string read_text(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("missing fixture " + path.string());
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

namespace {

Summary make_summary(int pid, std::vector<std::string> texts)
{
    Summary s;
    s.pid = pid;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        s.word_count += count_words(texts[i]);
        s.sentences.push_back({static_cast<int>(i) + 1, std::move(texts[i]), i});
    }
    return s;
}

}  // namespace

SummaryStore sample_summaries()
{
    SummaryStore store;
    store.add(make_summary(1, {
        "Data structures organise information in memory.",
        "Arrays give constant time access by position.",
        "Linked lists grow one node at a time.",
        "Trees keep keys in sorted order.",
        "A stack is an ADT with push and pop operations.",
    }));
    store.add(make_summary(2, {
        "An ADT hides its representation behind operations.",
        "Queues serve items in arrival order.",
        "Hash tables trade memory for speed.",
        "The queue ADT offers enqueue and dequeue.",
    }));
    store.add(make_summary(4, {
        "The server listens on a single port.",
        "Workers are started when load rises.",
        "Incoming requests are queued before processing.",
    }));
    store.add(make_summary(5, {
        "The club opened its doors to the public.",
        "Season tickets sold out within a week.",
        "Local schools receive free match passes.",
        "The pitch was relaid over the summer.",
        "Corporate sponsors funded the new stadium.",
    }));
    store.add(make_summary(7, {
        "The final was played on a Sunday afternoon.",
        "The old rivals met again in the series.",
        "Rain delayed the start by an hour.",
        "The tour of the USA ends in December.",
        "The batsman scored a hundred before lunch.",
    }));
    store.add(make_summary(8, {
        "The cathedral stands on a low hill.",
        "Its tower can be seen for miles.",
        "Pilgrims still walk the ancient road.",
        "Work on the nave took a century to finish.",
    }));
    store.add(make_summary(9, {
        "The President signed the budget in December.",
        "Television networks will show the address live.",
        "Ministers met the following morning.",
        "Polls show broad support for the plan.",
    }));
    return store;
}

QCIndex sample_index()
{
    struct Row {
        AnswerType type;
        const char* term;
        std::vector<std::pair<int, int>> postings;  // (sid, pid)
    };
    const std::vector<Row> rows = {
        {AnswerType::person, "Batsman", {{5, 7}}},
        {AnswerType::person, "President", {{1, 9}}},
        {AnswerType::location, "USA", {{4, 7}}},
        {AnswerType::procedure, "Incoming", {{3, 4}}},
        {AnswerType::number, "Series", {{2, 7}}},
        {AnswerType::day, "Sunday", {{1, 7}}},
        {AnswerType::month, "December", {{4, 7}, {1, 9}}},
        {AnswerType::time, "Old", {{2, 7}}},
        {AnswerType::time, "Century", {{4, 8}}},
        {AnswerType::abbreviation, "ADT", {{5, 1}, {1, 2}, {4, 2}}},
        {AnswerType::organization, "Corporate", {{5, 5}}},
        {AnswerType::definition, "Show", {{2, 9}, {4, 9}}},
    };
    QCIndex index;
    for (const auto& row : rows) {
        auto terms = preprocess(row.term, Stoplist{});
        for (const auto& [sid, pid] : row.postings)
            index.insert(row.type, terms.terms.at(0), {sid, pid});
    }
    index.metadata.stoplist = Stoplist::english().fingerprint();
    index.metadata.gazetteer = Gazetteer::standard().fingerprint();
    index.metadata.summaries = sample_summaries().fingerprint();
    return index;
}

TempDir::TempDir()
{
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    auto base = std::filesystem::temp_directory_path();
    for (;;) {
        auto candidate = base / ("qcqa-test-" + std::to_string(rd()) + "-" + std::to_string(counter++));
        if (std::filesystem::create_directory(candidate)) {
            path_ = candidate;
            return;
        }
    }
}

TempDir::~TempDir()
{
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
}

}  // namespace qcqa::testing
