#include "fixtures.hpp"
#include "oracles.hpp"

#include "qcqa/indexer.hpp"

#include <doctest.h>

#include <fstream>
#include <random>

using namespace qcqa;

namespace {

DictionaryProvider fixture_dictionary()
{
    return DictionaryProvider::load(testing::fixture("dictionary.jsonl"));
}

class CountingProvider : public DefinitionProvider {
public:
    explicit CountingProvider(DefinitionProvider& inner) : inner_(inner) {}
    std::optional<std::string> define(std::string_view term) override
    {
        ++calls[std::string(term)];
        return inner_.define(term);
    }
    std::map<std::string, int> calls;

private:
    DefinitionProvider& inner_;
};

Summary make_summary(int pid, std::vector<std::string> texts)
{
    Summary s;
    s.pid = pid;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        s.word_count += count_words(texts[i]);
        s.sentences.push_back({static_cast<int>(i) + 1, texts[i], i});
    }
    return s;
}

// Every stored posting points at a stored sentence whose terms include the
// posting's term, and every term has exactly one type.
void check_integrity(const QCIndex& index, const SummaryStore& store, const Stoplist& stop)
{
    std::map<std::string, int> homes;
    for (auto type : all_answer_types) {
        for (const auto& [term, postings] : index.terms(type)) {
            ++homes[term];
            CHECK_FALSE(postings.empty());
            CHECK(index.type_of(term) == type);
            for (const auto& p : postings) {
                auto text = store.sentence(p.pid, p.sid);
                REQUIRE(text.has_value());
                CHECK(preprocess(*text, stop).contains(term));
            }
        }
    }
    for (const auto& [term, n] : homes)
        CHECK(n == 1);
    CHECK(homes.size() == index.term_count());
}

}  // namespace

TEST_CASE("standard gazetteer keeps the table order")
{
    const auto& g = Gazetteer::standard();
    CHECK(g.entries().size() == 56);
    CHECK(g.entries().front().stems == std::vector<std::string>{"govern", "agenc"});
    CHECK(g.entries().front().type == AnswerType::organization);
    CHECK(g.entries().back().type == AnswerType::month);
    CHECK(g.match({"land"}) == AnswerType::location);
    CHECK(g.match({"name", "land"}) == AnswerType::person);
    CHECK(g.match({"full", "form"}) == AnswerType::abbreviation);
    CHECK(g.match({"form", "full"}) == std::nullopt);
    CHECK(g.match({"sport", "team"}) == AnswerType::organization);
    CHECK(g.match({"process"}) == AnswerType::procedure);
    CHECK(g.match({"sundai"}) == AnswerType::day);
    CHECK(g.match({"decemb"}) == AnswerType::month);
    CHECK(g.match({"am"}) == AnswerType::time);
    CHECK(g.match({}) == std::nullopt);
}

TEST_CASE("gazetteer add and load")
{
    Gazetteer g;
    g.add("Capital City", AnswerType::location);
    CHECK(testing::error_of([&] { g.add("capital cities", AnswerType::location); }) == ErrorCode::invalid_argument);
    CHECK(testing::error_of([&] { g.add(" - ", AnswerType::location); }) == ErrorCode::invalid_argument);

    testing::TempDir dir;
    {
        std::ofstream out(dir / "g.tsv");
        out << "# custom\nWarrior\tperson\nRoutine\tprocess\n\n";
    }
    auto loaded = Gazetteer::load(dir / "g.tsv");
    CHECK(loaded.match({"warrior"}) == AnswerType::person);
    CHECK(loaded.match({"routin"}) == AnswerType::procedure);
    CHECK(loaded.fingerprint() != Gazetteer::standard().fingerprint());
    {
        std::ofstream out(dir / "bad.tsv");
        out << "Warrior person\n";
    }
    CHECK(testing::error_of([&] { Gazetteer::load(dir / "bad.tsv"); }) == ErrorCode::format_error);
    {
        std::ofstream out(dir / "bad2.tsv");
        out << "Warrior\tsoldier\n";
    }
    CHECK(testing::error_of([&] { Gazetteer::load(dir / "bad2.tsv"); }) == ErrorCode::format_error);
    CHECK(testing::error_of([&] { Gazetteer::load(dir / "none.tsv"); }) == ErrorCode::io_error);
}

TEST_CASE("classify_term examples")
{
    auto dict = fixture_dictionary();
    const auto& g = Gazetteer::standard();
    CHECK(classify_term(stem("continent"), dict, g) == AnswerType::location);
    CHECK(classify_term("batsman", dict, g) == AnswerType::person);
    CHECK(classify_term("zebra", dict, g) == AnswerType::definition);
    CHECK(classify_term("presid", dict, g) == AnswerType::person);
    CHECK(classify_term("usa", dict, g) == AnswerType::location);
    CHECK(classify_term("decemb", dict, g) == AnswerType::month);
    CHECK(classify_term("sundai", dict, g) == AnswerType::day);
    CHECK(classify_term("incom", dict, g) == AnswerType::procedure);
    CHECK(classify_term("seri", dict, g) == AnswerType::number);
    CHECK(classify_term("adt", dict, g) == AnswerType::abbreviation);
    CHECK(classify_term("corpor", dict, g) == AnswerType::organization);
    CHECK(classify_term("dollar", dict, g) == AnswerType::money);
    CHECK(classify_term("kilometr", dict, g) == AnswerType::number);
    CHECK(classify_term("noon", dict, g) == AnswerType::time);
    CHECK(classify_term("centenari", dict, g) == AnswerType::year);

    DictionaryProvider none;
    none.add("vague", "something of no particular kind");
    CHECK(classify_term("vagu", none, g) == AnswerType::definition);
}

TEST_CASE("dictionary keys entries by stems and keeps the first")
{
    auto dict = fixture_dictionary();
    CHECK(dict.size() == 14);
    CHECK(dict.define("batsman") == std::optional<std::string>("the name of a player who bats in cricket"));
    CHECK(dict.define("Continent") == std::nullopt);
    CHECK(dict.define("contin").has_value());
    CHECK(testing::error_of([] { DictionaryProvider::load("/nonexistent/d.jsonl"); }) == ErrorCode::io_error);
}

TEST_CASE("caching provider asks the inner provider once per term")
{
    auto dict = fixture_dictionary();
    CountingProvider counting(dict);
    CachingProvider cache(counting);
    for (int i = 0; i < 3; ++i) {
        CHECK(cache.define("batsman").has_value());
        CHECK_FALSE(cache.define("zebra").has_value());
    }
    CHECK(counting.calls == std::map<std::string, int>{{"batsman", 1}, {"zebra", 1}});
}

TEST_CASE("batsman in sentence five of page seven is filed under person")
{
    SummaryStore store;
    store.add(make_summary(7, {"Rain stopped play.", "Tea was taken early.", "The crowd waited.",
                               "Umpires met twice.", "The batsman scored a hundred before lunch."}));
    auto dict = fixture_dictionary();
    auto index = build_index(store, dict, Gazetteer::standard(), Stoplist::english());
    auto postings = index.postings(AnswerType::person, "batsman");
    REQUIRE(postings != nullptr);
    CHECK(*postings == std::set<Posting>{{5, 7}});
    CHECK(index.type_of("batsman") == AnswerType::person);
    CHECK(index.type_of("rain") == AnswerType::definition);
    CHECK(index.metadata.summaries == store.fingerprint());
    CHECK(index.metadata.stoplist == Stoplist::english().fingerprint());
    CHECK(index.metadata.gazetteer == Gazetteer::standard().fingerprint());
}

TEST_CASE("two-page corpus matches the triple-loop oracle")
{
    SummaryStore store;
    store.add(make_summary(1, {"The President of the USA spoke on Sunday.", "A batsman from the USA played.",
                               "Incoming calls were held."}));
    store.add(make_summary(2, {"The ADT was defined in December.", "Corporate series sponsors paid in dollars.",
                               "Nothing else of note."}));
    auto dict = fixture_dictionary();
    auto index = build_index(store, dict, Gazetteer::standard(), Stoplist::english());
    auto expected = oracle::index_postings(store, dict, Gazetteer::standard(), Stoplist::english());

    std::map<AnswerType, std::map<std::string, std::set<std::pair<int, int>>>> actual;
    for (auto type : all_answer_types)
        for (const auto& [term, postings] : index.terms(type))
            for (const auto& p : postings)
                actual[type][term].insert({p.pid, p.sid});
    CHECK(actual == expected);
    CHECK(index.type_of("usa") == AnswerType::location);
    CHECK(*index.postings(AnswerType::location, "usa") == std::set<Posting>{{1, 1}, {2, 1}});
    check_integrity(index, store, Stoplist::english());
}

TEST_CASE("build_index classifies each distinct term once")
{
    SummaryStore store;
    store.add(make_summary(1, {"Batsman batsman.", "The batsman again."}));
    store.add(make_summary(2, {"Another batsman."}));
    auto dict = fixture_dictionary();
    CountingProvider counting(dict);
    build_index(store, counting, Gazetteer::standard(), Stoplist::english());
    CHECK(counting.calls["batsman"] == 1);
}

TEST_CASE("build_index rejects an empty store")
{
    DictionaryProvider dict;
    CHECK(testing::error_of([&] { build_index({}, dict, Gazetteer::standard(), Stoplist::english()); })
          == ErrorCode::empty_summary_store);
}

TEST_CASE("insert enforces one type per term and positive ids")
{
    QCIndex index;
    index.insert(AnswerType::person, "king", {1, 1});
    index.insert(AnswerType::person, "king", {1, 1});
    index.insert(AnswerType::person, "king", {2, 1});
    CHECK(index.posting_count() == 2);
    CHECK(testing::error_of([&] { index.insert(AnswerType::location, "king", {1, 2}); })
          == ErrorCode::invalid_argument);
    CHECK(testing::error_of([&] { index.insert(AnswerType::person, "queen", {0, 2}); })
          == ErrorCode::invalid_argument);
    CHECK(testing::error_of([&] { index.insert(AnswerType::person, "", {1, 2}); }) == ErrorCode::invalid_argument);
    CHECK(index.term_count() == 1);
}

TEST_CASE("randomized builds keep integrity and round-trip")
{
    std::mt19937 rng(31);
    const std::vector<std::string> vocab = {"batsman", "president", "USA", "December", "Sunday", "incoming",
                                            "series", "ADT", "corporate", "dollar", "kilometre", "noon",
                                            "centenary", "show", "old", "century", "the", "of", "played"};
    auto dict = fixture_dictionary();
    testing::TempDir dir;
    for (int trial = 0; trial < 60; ++trial) {
        SummaryStore store;
        std::uniform_int_distribution<int> pages(1, 5), sentences(1, 6), words(1, 8);
        std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
        std::uniform_int_distribution<int> pid_gap(1, 3);
        int pid = 0;
        for (int p = pages(rng); p > 0; --p) {
            pid += pid_gap(rng);
            std::vector<std::string> texts;
            for (int s = sentences(rng); s > 0; --s) {
                std::string t;
                for (int w = words(rng); w > 0; --w)
                    t += vocab[pick(rng)] + " ";
                texts.push_back(t + "end.");
            }
            store.add(make_summary(pid, texts));
        }
        auto index = build_index(store, dict, Gazetteer::standard(), Stoplist::english());
        check_integrity(index, store, Stoplist::english());

        auto oracle = oracle::index_postings(store, dict, Gazetteer::standard(), Stoplist::english());
        std::size_t oracle_postings = 0;
        for (const auto& [type, terms] : oracle)
            for (const auto& [term, keys] : terms)
                oracle_postings += keys.size();
        CHECK(index.posting_count() == oracle_postings);

        save_index(index, dir / "index.json");
        auto loaded = load_index(dir / "index.json");
        CHECK(loaded == index);
        CHECK(serialize_index(loaded) == serialize_index(index));
    }
}

TEST_CASE("sample index round-trips with all twelve rows")
{
    auto index = testing::sample_index();
    CHECK(index.term_count() == 12);
    CHECK(index.posting_count() == 16);
    CHECK(*index.postings(AnswerType::person, "batsman") == std::set<Posting>{{5, 7}});
    CHECK(*index.postings(AnswerType::person, "presid") == std::set<Posting>{{1, 9}});
    CHECK(*index.postings(AnswerType::location, "usa") == std::set<Posting>{{4, 7}});
    CHECK(*index.postings(AnswerType::procedure, "incom") == std::set<Posting>{{3, 4}});
    CHECK(*index.postings(AnswerType::number, "seri") == std::set<Posting>{{2, 7}});
    CHECK(*index.postings(AnswerType::day, "sundai") == std::set<Posting>{{1, 7}});
    CHECK(*index.postings(AnswerType::month, "decemb") == std::set<Posting>{{4, 7}, {1, 9}});
    CHECK(*index.postings(AnswerType::time, "old") == std::set<Posting>{{2, 7}});
    CHECK(*index.postings(AnswerType::time, "centuri") == std::set<Posting>{{4, 8}});
    CHECK(*index.postings(AnswerType::abbreviation, "adt") == std::set<Posting>{{5, 1}, {1, 2}, {4, 2}});
    CHECK(*index.postings(AnswerType::organization, "corpor") == std::set<Posting>{{5, 5}});
    CHECK(*index.postings(AnswerType::definition, "show") == std::set<Posting>{{2, 9}, {4, 9}});
    check_integrity(index, testing::sample_summaries(), Stoplist::english());

    auto fixture = load_index(testing::fixture("sample/index.json"));
    CHECK(fixture == index);
    CHECK(testing::read_text(testing::fixture("sample/index.json")) == serialize_index(index));

    testing::TempDir dir;
    save_index(index, dir / "t2.json");
    CHECK(load_index(dir / "t2.json") == index);
}

TEST_CASE("stale stoplist is detected on load")
{
    auto path = testing::fixture("sample/index.json");
    CHECK_NOTHROW(load_index(path, Stoplist::english()));
    Stoplist other({"the", "of"});
    CHECK(testing::error_of([&] { load_index(path, other); }) == ErrorCode::stale_preprocessor);
}

TEST_CASE("parse_index rejects malformed documents")
{
    auto good = serialize_index(testing::sample_index());
    auto broken = [&](const std::string& from, const std::string& to) {
        auto text = good;
        auto at = text.find(from);
        REQUIRE(at != std::string::npos);
        text.replace(at, from.size(), to);
        return testing::error_of([&] { parse_index(text); });
    };
    CHECK(broken("qcqa-index", "other") == ErrorCode::format_error);
    CHECK(broken("\"version\": 1", "\"version\": 9") == ErrorCode::format_error);
    CHECK(broken("\"person\"", "\"people\"") == ErrorCode::format_error);
    CHECK(broken("\"person\"", "\"process\"") == ErrorCode::format_error);
    CHECK(broken("[[5, 7]]", "[]") == ErrorCode::format_error);
    CHECK(broken("[[5, 7]]", "[[0, 7]]") == ErrorCode::format_error);
    CHECK(broken("[[5, 7]]", "[[5]]") == ErrorCode::format_error);
    CHECK(broken("\"old\"", "\"usa\"") == ErrorCode::format_error);
    CHECK(broken("\"metadata\"", "\"meta\"") == ErrorCode::format_error);
    CHECK(testing::error_of([] { parse_index("{"); }) == ErrorCode::format_error);
    CHECK(testing::error_of([] { load_index("/nonexistent/index.json"); }) == ErrorCode::io_error);
}
