#pragma once

#include "qcqa/timestamp.hpp"

#include <chrono>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace qcqa {

enum class PageKind { web, blog };

std::string_view to_string(PageKind kind) noexcept;

struct PageRecord {
    int pid = 0;
    std::string url;  // canonical
    PageKind kind = PageKind::web;
    Timestamp fetched_at{};
    std::string text;
    std::vector<std::string> links;  // absolute, document order, duplicates kept

    friend bool operator==(const PageRecord&, const PageRecord&) = default;
};

/// The four blog-page signals. score() is derived, so it always equals the
/// number of set flags.
struct BlogEvidence {
    bool has_blog_in_url = false;
    bool has_rss_link = false;
    bool posts_date_descending = false;
    bool majority_self_links = false;

    int score() const noexcept
    {
        return int{has_blog_in_url} + int{has_rss_link} + int{posts_date_descending}
               + int{majority_self_links};
    }

    friend bool operator==(const BlogEvidence&, const BlogEvidence&) = default;
};

struct CrawlConfig {
    std::vector<std::string> seeds;
    std::size_t max_pages = 100;
    std::size_t max_depth = 3;
    std::chrono::milliseconds per_host_delay{0};
    int blog_threshold = 2;

    /// Throws Error(empty_seeds) or Error(invalid_argument).
    void validate() const;
};

/// Pages in pid order; pids are 1..N.
struct PageRepository {
    std::vector<PageRecord> pages;

    std::size_t size() const noexcept { return pages.size(); }
    bool empty() const noexcept { return pages.empty(); }

    friend bool operator==(const PageRepository&, const PageRepository&) = default;
};

struct FetchResult {
    bool ok = false;
    std::string body;
    std::string error;

    static FetchResult success(std::string body) { return {true, std::move(body), {}}; }
    static FetchResult failure(std::string error) { return {false, {}, std::move(error)}; }
};

/// URL -> body. Implementations must be safe to call from several threads
/// at once; the crawler never calls fetch() concurrently for the same host.
class Fetcher {
public:
    virtual ~Fetcher() = default;
    virtual FetchResult fetch(const std::string& url) = 0;
};

/// In-memory site keyed by canonical URL. Records every requested URL.
class MapFetcher : public Fetcher {
public:
    MapFetcher() = default;
    explicit MapFetcher(std::map<std::string, std::string> pages);
    MapFetcher(MapFetcher&& other) noexcept;

    void add(const std::string& url, std::string body);
    FetchResult fetch(const std::string& url) override;

    std::vector<std::string> requests() const;

    /// Loads every regular file under dir as <base_url>/<relative path>.
    static MapFetcher from_directory(const std::filesystem::path& dir, const std::string& base_url);

private:
    std::map<std::string, std::string> pages_;
    mutable std::mutex mutex_;
    std::vector<std::string> requests_;
};

BlogEvidence detect_blog(std::string_view html, std::string_view url);

PageKind classify_page(const BlogEvidence& evidence, int threshold) noexcept;

/// Anchor hrefs resolved against base_url. Fragment-only, non-http(s) and
/// malformed references are dropped; order and duplicates are preserved.
std::vector<std::string> extract_links(std::string_view html, std::string_view base_url);

/// Dates recognised in text, in document order, as YYYYMMDD integers.
/// Accepts ISO "YYYY-MM-DD" and "Month DD, YYYY".
std::vector<int> extract_dates(std::string_view text);

using Clock = std::function<Timestamp()>;

/// Breadth-first crawl. Results depend only on the config and fetcher
/// responses: pages are committed in frontier order even though fetches to
/// different hosts overlap.
PageRepository crawl(const CrawlConfig& config, Fetcher& fetcher, const Clock& clock = now_utc);

/// One URL per line, '#' starts a comment.
std::vector<std::string> load_seeds(const std::filesystem::path& path);

void write_repository(std::ostream& out, const PageRepository& repo);
PageRepository read_repository(std::istream& in);
void save_repository(const PageRepository& repo, const std::filesystem::path& path);
PageRepository load_repository(const std::filesystem::path& path);

}  // namespace qcqa
