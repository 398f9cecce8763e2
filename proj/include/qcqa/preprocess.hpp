#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace qcqa {

/// Ordered, duplicate-free list of stems in first-occurrence order.
struct TermSet {
    std::vector<std::string> terms;

    bool empty() const noexcept { return terms.empty(); }
    std::size_t size() const noexcept { return terms.size(); }
    bool contains(std::string_view term) const;

    friend bool operator==(const TermSet&, const TermSet&) = default;
};

/// Set of lowercase surface words removed before stemming.
class Stoplist {
public:
    Stoplist() = default;
    explicit Stoplist(std::set<std::string, std::less<>> words);

    /// The shipped English function-word list.
    static const Stoplist& english();

    /// One lowercase word per line; blank lines and surrounding whitespace
    /// are ignored. Throws Error(io_error) if the file cannot be read.
    static Stoplist load(const std::filesystem::path& path);

    bool contains(std::string_view word) const { return words_.find(word) != words_.end(); }
    std::size_t size() const noexcept { return words_.size(); }
    const std::set<std::string, std::less<>>& words() const noexcept { return words_; }

    /// Hex FNV-1a over the sorted word list. Stored in index metadata so a
    /// stale index can be detected.
    std::string fingerprint() const;

private:
    std::set<std::string, std::less<>> words_;
};

/// Maximal runs of ASCII alphanumerics (bytes >= 0x80 are kept inside words
/// so UTF-8 text is not split mid-character), lowercased.
std::vector<std::string> tokenize(std::string_view text);

/// Porter stem of a lowercase token.
std::string stem(std::string_view token);

/// tokenize -> drop stoplist members -> stem -> deduplicate.
TermSet preprocess(std::string_view text, const Stoplist& stoplist);

}  // namespace qcqa
