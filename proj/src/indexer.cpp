#include "qcqa/indexer.hpp"

#include "qcqa/error.hpp"
#include "qcqa/fingerprint.hpp"
#include "qcqa/jsonl.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace qcqa {
namespace {

constexpr std::string_view index_format = "qcqa-index";
constexpr int index_version = 1;

std::vector<std::string> stems_of(std::string_view text)
{
    std::vector<std::string> out;
    for (const auto& token : tokenize(text))
        out.push_back(stem(token));
    return out;
}

std::string join(const std::vector<std::string>& parts)
{
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty())
            out += ' ';
        out += p;
    }
    return out;
}

bool contains_sequence(const std::vector<std::string>& haystack, const std::vector<std::string>& needle)
{
    return std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end()) != haystack.end();
}

Gazetteer make_standard_gazetteer()
{
    Gazetteer g;
    auto add_all = [&g](std::initializer_list<std::string_view> words, AnswerType type) {
        for (auto w : words)
            g.add(w, type);
    };
    add_all({"Government-Agency", "Agency", "Company", "Airline", "University", "Institute", "Sports-Team"},
            AnswerType::organization);
    add_all({"Leader", "Father", "Mother", "Sister", "Brother", "King", "Queen", "Emperor", "Name"},
            AnswerType::person);
    add_all({"City", "Country", "State", "Territory", "Mountain", "Island", "Star", "Constellation", "Street",
             "Land"},
            AnswerType::location);
    add_all({"Currency"}, AnswerType::money);
    add_all({"Full form"}, AnswerType::abbreviation);
    add_all({"Quantity", "Distance"}, AnswerType::number);
    add_all({"Procedure", "Method", "Process"}, AnswerType::procedure);
    add_all({"Day", "Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday"},
            AnswerType::day);
    add_all({"AM", "PM"}, AnswerType::time);
    add_all({"Year"}, AnswerType::year);
    add_all({"January", "February", "March", "April", "May", "June", "July", "August", "September", "October",
             "November", "December"},
            AnswerType::month);
    return g;
}

}  // namespace

// ---------------------------------------------------------------- gazetteer

const Gazetteer& Gazetteer::standard()
{
    static const Gazetteer g = make_standard_gazetteer();
    return g;
}

Gazetteer Gazetteer::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read gazetteer: " + path.string());
    Gazetteer g;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos || line.front() == '#')
            continue;
        auto tab = line.find('\t');
        auto where = path.string() + ":" + std::to_string(line_no);
        if (tab == std::string::npos)
            throw Error(ErrorCode::format_error, where + ": expected keyword<TAB>answer_type");
        auto type = parse_answer_type(line.substr(tab + 1));
        if (!type)
            throw Error(ErrorCode::format_error, where + ": unknown answer type");
        try {
            g.add(line.substr(0, tab), *type);
        }
        catch (const Error& e) {
            throw Error(ErrorCode::format_error, where + ": " + e.what());
        }
    }
    return g;
}

void Gazetteer::add(std::string_view keyword, AnswerType type)
{
    auto stems = stems_of(keyword);
    if (stems.empty())
        throw Error(ErrorCode::invalid_argument, "empty gazetteer keyword");
    for (const auto& e : entries_)
        if (e.stems == stems)
            throw Error(ErrorCode::invalid_argument, "duplicate gazetteer keyword '" + join(stems) + "'");
    entries_.push_back({std::move(stems), type});
}

std::optional<AnswerType> Gazetteer::match(const std::vector<std::string>& stems) const
{
    for (const auto& e : entries_)
        if (contains_sequence(stems, e.stems))
            return e.type;
    return std::nullopt;
}

std::string Gazetteer::fingerprint() const
{
    Fingerprint fp;
    for (const auto& e : entries_)
        fp.add(join(e.stems)).add("\t").add(to_string(e.type)).add("\n");
    return fp.hex();
}

// -------------------------------------------------------------- providers

void DictionaryProvider::add(std::string_view term, std::string definition)
{
    auto key = join(stems_of(term));
    if (!key.empty())
        entries_.try_emplace(std::move(key), std::move(definition));
}

std::optional<std::string> DictionaryProvider::define(std::string_view term)
{
    auto it = entries_.find(std::string(term));
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

DictionaryProvider DictionaryProvider::load(const std::filesystem::path& path)
{
    DictionaryProvider dict;
    jsonl::read_file(path, [&](const nlohmann::json& j, std::size_t) {
        dict.add(j.at("term").get<std::string>(), j.at("definition").get<std::string>());
    });
    return dict;
}

std::optional<std::string> CachingProvider::define(std::string_view term)
{
    std::string key(term);
    {
        std::lock_guard lock(mutex_);
        if (auto it = cache_.find(key); it != cache_.end())
            return it->second;
    }
    auto def = inner_.define(term);
    std::lock_guard lock(mutex_);
    return cache_.try_emplace(std::move(key), std::move(def)).first->second;
}

AnswerType classify_term(std::string_view term, DefinitionProvider& provider, const Gazetteer& gazetteer)
{
    auto def = provider.define(term);
    if (!def)
        return AnswerType::definition;
    return gazetteer.match(stems_of(*def)).value_or(AnswerType::definition);
}

// ------------------------------------------------------------------ index

void QCIndex::insert(AnswerType type, const std::string& term, Posting posting)
{
    if (posting.sid < 1 || posting.pid < 1)
        throw Error(ErrorCode::invalid_argument, "posting ids must be positive");
    if (term.empty())
        throw Error(ErrorCode::invalid_argument, "empty index term");
    auto [it, inserted] = term_types_.try_emplace(term, type);
    if (!inserted && it->second != type)
        throw Error(ErrorCode::invalid_argument, "term '" + term + "' already filed under "
                                                     + std::string(to_string(it->second)));
    entries_[type][term].insert(posting);
}

const QCIndex::TermMap& QCIndex::terms(AnswerType type) const
{
    static const TermMap empty;
    auto it = entries_.find(type);
    return it == entries_.end() ? empty : it->second;
}

const std::set<Posting>* QCIndex::postings(AnswerType type, std::string_view term) const
{
    const auto& m = terms(type);
    auto it = m.find(std::string(term));
    return it == m.end() ? nullptr : &it->second;
}

std::optional<AnswerType> QCIndex::type_of(std::string_view term) const
{
    auto it = term_types_.find(term);
    if (it == term_types_.end())
        return std::nullopt;
    return it->second;
}

std::size_t QCIndex::posting_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& [type, m] : entries_)
        for (const auto& [term, ps] : m)
            n += ps.size();
    return n;
}

QCIndex build_index(const SummaryStore& summaries, DefinitionProvider& provider, const Gazetteer& gazetteer,
                    const Stoplist& stoplist)
{
    if (summaries.empty())
        throw Error(ErrorCode::empty_summary_store, "no summaries to index");

    CachingProvider cached(provider);
    std::unordered_map<std::string, AnswerType> classified;
    QCIndex index;
    for (const auto& [pid, summary] : summaries.summaries()) {
        for (const auto& sentence : summary.sentences) {
            for (const auto& term : preprocess(sentence.text, stoplist).terms) {
                auto it = classified.find(term);
                if (it == classified.end())
                    it = classified.emplace(term, classify_term(term, cached, gazetteer)).first;
                index.insert(it->second, term, Posting{sentence.sid, pid});
            }
        }
    }
    index.metadata = {stoplist.fingerprint(), gazetteer.fingerprint(), summaries.fingerprint()};
    return index;
}

// ----------------------------------------------------------- persistence

std::string serialize_index(const QCIndex& index)
{
    auto quote = [](std::string_view v) { return nlohmann::json(v).dump(); };
    std::ostringstream out;
    out << "{\n"
        << "  \"format\": " << quote(index_format) << ",\n"
        << "  \"version\": " << index_version << ",\n"
        << "  \"metadata\": {\n"
        << "    \"stoplist\": " << quote(index.metadata.stoplist) << ",\n"
        << "    \"gazetteer\": " << quote(index.metadata.gazetteer) << ",\n"
        << "    \"summaries\": " << quote(index.metadata.summaries) << "\n"
        << "  },\n"
        << "  \"answer_types\": {";
    bool first_type = true;
    for (auto type : all_answer_types) {
        out << (first_type ? "\n" : ",\n") << "    " << quote(to_string(type)) << ": {";
        first_type = false;
        const auto& terms = index.terms(type);
        bool first_term = true;
        for (const auto& [term, postings] : terms) {
            out << (first_term ? "\n" : ",\n") << "      " << quote(term) << ": [";
            first_term = false;
            bool first_posting = true;
            for (const auto& p : postings) {
                out << (first_posting ? "" : ", ") << '[' << p.sid << ", " << p.pid << ']';
                first_posting = false;
            }
            out << ']';
        }
        out << (terms.empty() ? "}" : "\n    }");
    }
    out << "\n  }\n}\n";
    return out.str();
}

QCIndex parse_index(std::string_view text)
{
    try {
        auto doc = nlohmann::json::parse(text);
        if (doc.value("format", "") != index_format)
            throw Error(ErrorCode::format_error, "not an index document");
        if (doc.value("version", 0) != index_version)
            throw Error(ErrorCode::format_error, "unsupported index version");
        QCIndex index;
        const auto& meta = doc.at("metadata");
        index.metadata = {meta.at("stoplist").get<std::string>(), meta.at("gazetteer").get<std::string>(),
                          meta.at("summaries").get<std::string>()};
        for (const auto& [name, section] : doc.at("answer_types").items()) {
            auto type = parse_answer_type(name);
            if (!type || name == "process")
                throw Error(ErrorCode::format_error, "unknown answer type '" + name + "'");
            for (const auto& [term, list] : section.items()) {
                if (!list.is_array() || list.empty())
                    throw Error(ErrorCode::format_error, "term '" + term + "' has no postings");
                for (const auto& pair : list) {
                    if (!pair.is_array() || pair.size() != 2)
                        throw Error(ErrorCode::format_error, "postings must be [sid, pid] pairs");
                    try {
                        index.insert(*type, term, Posting{pair[0].get<int>(), pair[1].get<int>()});
                    }
                    catch (const Error& e) {
                        throw Error(ErrorCode::format_error, e.what());
                    }
                }
            }
        }
        return index;
    }
    catch (const Error&) {
        throw;
    }
    catch (const std::exception& e) {
        throw Error(ErrorCode::format_error, std::string("malformed index: ") + e.what());
    }
}

void save_index(const QCIndex& index, const std::filesystem::path& path)
{
    jsonl::write_file(path, serialize_index(index));
}

QCIndex load_index(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_index(buf.str());
    }
    catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

QCIndex load_index(const std::filesystem::path& path, const Stoplist& current)
{
    auto index = load_index(path);
    if (index.metadata.stoplist != current.fingerprint())
        throw Error(ErrorCode::stale_preprocessor,
                    path.string() + ": index was built with a different stoplist; rebuild it");
    return index;
}

}  // namespace qcqa
