#pragma once

#include "qcqa/answer_type.hpp"
#include "qcqa/preprocess.hpp"
#include "qcqa/summarizer.hpp"

#include <compare>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qcqa {

/// Ordered keyword -> answer type table. Keywords are kept as stem
/// sequences so "continuous expanses of land" matches the keyword "Land".
class Gazetteer {
public:
    struct Entry {
        std::vector<std::string> stems;
        AnswerType type;
    };

    /// The terms-description table: organization, person and location
    /// keywords first, then money, abbreviation, number, procedure, day,
    /// time, year and month.
    static const Gazetteer& standard();

    /// Lines of "keyword<TAB>answer_type"; '#' lines and blank lines ignored.
    static Gazetteer load(const std::filesystem::path& path);

    /// Throws Error(invalid_argument) for an empty or duplicate keyword.
    void add(std::string_view keyword, AnswerType type);

    /// Type of the first entry whose stem sequence occurs contiguously in
    /// the given stems.
    std::optional<AnswerType> match(const std::vector<std::string>& stems) const;

    const std::vector<Entry>& entries() const noexcept { return entries_; }
    std::string fingerprint() const;

private:
    std::vector<Entry> entries_;
};

/// term (a stem) -> definition text.
class DefinitionProvider {
public:
    virtual ~DefinitionProvider() = default;
    virtual std::optional<std::string> define(std::string_view term) = 0;
};

/// Offline dictionary. Entries are keyed by the stems of their headword, so
/// "Continent" answers lookups for "contin". The first entry for a key wins.
class DictionaryProvider : public DefinitionProvider {
public:
    void add(std::string_view term, std::string definition);
    std::optional<std::string> define(std::string_view term) override;
    std::size_t size() const noexcept { return entries_.size(); }

    /// Newline-delimited {"term": ..., "definition": ...} records.
    static DictionaryProvider load(const std::filesystem::path& path);

private:
    std::unordered_map<std::string, std::string> entries_;
};

/// Memoises another provider so answers stay fixed for one index build.
class CachingProvider : public DefinitionProvider {
public:
    explicit CachingProvider(DefinitionProvider& inner) : inner_(inner) {}
    std::optional<std::string> define(std::string_view term) override;

private:
    DefinitionProvider& inner_;
    std::mutex mutex_;
    std::unordered_map<std::string, std::optional<std::string>> cache_;
};

/// Answer type of the first gazetteer keyword found in the term's
/// definition; Definition when there is no definition or no keyword matches.
AnswerType classify_term(std::string_view term, DefinitionProvider& provider, const Gazetteer& gazetteer);

struct Posting {
    int sid = 0;
    int pid = 0;

    friend bool operator==(const Posting&, const Posting&) = default;
    friend auto operator<=>(const Posting& a, const Posting& b)
    {
        if (auto c = a.pid <=> b.pid; c != 0)
            return c;
        return a.sid <=> b.sid;
    }
};

struct IndexMetadata {
    std::string stoplist;   // Stoplist::fingerprint()
    std::string gazetteer;  // Gazetteer::fingerprint()
    std::string summaries;  // SummaryStore::fingerprint()

    friend bool operator==(const IndexMetadata&, const IndexMetadata&) = default;
};

/// answer type -> stem -> postings. A stem lives under at most one answer
/// type and every stored posting set is non-empty.
class QCIndex {
public:
    using TermMap = std::map<std::string, std::set<Posting>>;

    /// Throws Error(invalid_argument) if the term is already filed under a
    /// different answer type or the posting ids are not positive.
    void insert(AnswerType type, const std::string& term, Posting posting);

    const TermMap& terms(AnswerType type) const;
    const std::set<Posting>* postings(AnswerType type, std::string_view term) const;
    std::optional<AnswerType> type_of(std::string_view term) const;

    std::size_t term_count() const noexcept { return term_types_.size(); }
    std::size_t posting_count() const noexcept;
    bool empty() const noexcept { return term_types_.empty(); }

    IndexMetadata metadata;

    friend bool operator==(const QCIndex&, const QCIndex&) = default;

private:
    std::map<AnswerType, TermMap> entries_;
    std::map<std::string, AnswerType, std::less<>> term_types_;
};

/// Preprocesses every summary sentence and files each term under its
/// answer type. Each distinct term is classified once.
/// Throws Error(empty_summary_store) when the store is empty.
QCIndex build_index(const SummaryStore& summaries, DefinitionProvider& provider, const Gazetteer& gazetteer,
                    const Stoplist& stoplist);

/// JSON document with one line per term; byte-stable for equal indexes.
std::string serialize_index(const QCIndex& index);
QCIndex parse_index(std::string_view text);

void save_index(const QCIndex& index, const std::filesystem::path& path);
QCIndex load_index(const std::filesystem::path& path);

/// As load_index, but throws Error(stale_preprocessor) if the index was
/// built with a different stoplist.
QCIndex load_index(const std::filesystem::path& path, const Stoplist& current);

}  // namespace qcqa
