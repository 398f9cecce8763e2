#include "qcqa/corpus.hpp"

#include "qcqa/error.hpp"
#include "qcqa/html.hpp"
#include "qcqa/jsonl.hpp"
#include "qcqa/url.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <deque>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

namespace qcqa {
namespace {

constexpr std::string_view repository_format = "qcqa-pages";
constexpr int repository_version = 1;
constexpr std::size_t max_parallel_hosts = 8;

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool is_feed_type(std::string_view type)
{
    auto t = lower(type);
    return t.find("rss") != std::string::npos || t.find("atom") != std::string::npos;
}

// Serialises fetches per host and spaces them by the configured delay.
class HostThrottle {
public:
    explicit HostThrottle(std::chrono::milliseconds delay) : delay_(delay) {}

    void wait(const std::string& host)
    {
        if (delay_.count() <= 0)
            return;
        std::chrono::steady_clock::time_point ready;
        {
            std::lock_guard lock(mutex_);
            auto it = next_.find(host);
            ready = it == next_.end() ? std::chrono::steady_clock::time_point{} : it->second;
        }
        std::this_thread::sleep_until(ready);
    }

    void done(const std::string& host)
    {
        std::lock_guard lock(mutex_);
        next_[host] = std::chrono::steady_clock::now() + delay_;
    }

private:
    std::chrono::milliseconds delay_;
    std::mutex mutex_;
    std::unordered_map<std::string, std::chrono::steady_clock::time_point> next_;
};

struct FrontierEntry {
    std::string url;
    std::size_t depth;
};

std::vector<FetchResult> fetch_batch(const std::vector<FrontierEntry>& batch, Fetcher& fetcher,
                                     HostThrottle& throttle)
{
    // Group by host, keeping frontier order inside each group.
    std::vector<std::string> hosts;
    std::unordered_map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < batch.size(); ++i) {
        auto host = url_host(batch[i].url);
        auto [it, inserted] = groups.try_emplace(host);
        if (inserted)
            hosts.push_back(host);
        it->second.push_back(i);
    }

    std::vector<FetchResult> results(batch.size());
    std::atomic<std::size_t> next_group{0};
    auto worker = [&] {
        for (auto g = next_group++; g < hosts.size(); g = next_group++) {
            const auto& host = hosts[g];
            for (auto idx : groups[host]) {
                throttle.wait(host);
                try {
                    results[idx] = fetcher.fetch(batch[idx].url);
                }
                catch (const std::exception& e) {
                    results[idx] = FetchResult::failure(e.what());
                }
                throttle.done(host);
            }
        }
    };

    auto n_workers = std::min(hosts.size(), max_parallel_hosts);
    if (n_workers <= 1) {
        worker();
    }
    else {
        std::vector<std::jthread> pool;
        pool.reserve(n_workers);
        for (std::size_t i = 0; i < n_workers; ++i)
            pool.emplace_back(worker);
    }
    return results;
}

nlohmann::ordered_json record_to_json(const PageRecord& r)
{
    nlohmann::ordered_json j;
    j["pid"] = r.pid;
    j["url"] = r.url;
    j["kind"] = to_string(r.kind);
    j["fetched_at"] = format_rfc3339(r.fetched_at);
    j["text"] = r.text;
    j["links"] = r.links;
    return j;
}

PageRecord record_from_json(const nlohmann::json& j)
{
    PageRecord r;
    r.pid = j.at("pid").get<int>();
    r.url = j.at("url").get<std::string>();
    auto kind = j.at("kind").get<std::string>();
    if (kind == "web")
        r.kind = PageKind::web;
    else if (kind == "blog")
        r.kind = PageKind::blog;
    else
        throw Error(ErrorCode::format_error, "unknown page kind '" + kind + "'");
    auto ts = parse_rfc3339(j.at("fetched_at").get<std::string>());
    if (!ts)
        throw Error(ErrorCode::format_error, "bad fetched_at timestamp");
    r.fetched_at = *ts;
    r.text = j.at("text").get<std::string>();
    r.links = j.at("links").get<std::vector<std::string>>();
    return r;
}

}  // namespace

std::string_view to_string(PageKind kind) noexcept
{
    return kind == PageKind::blog ? "blog" : "web";
}

void CrawlConfig::validate() const
{
    if (seeds.empty())
        throw Error(ErrorCode::empty_seeds, "crawl needs at least one seed URL");
    if (blog_threshold < 1 || blog_threshold > 4)
        throw Error(ErrorCode::invalid_argument, "blog_threshold must be in 1..4");
    if (per_host_delay.count() < 0)
        throw Error(ErrorCode::invalid_argument, "per_host_delay must be non-negative");
}

MapFetcher::MapFetcher(std::map<std::string, std::string> pages) : pages_(std::move(pages)) {}

MapFetcher::MapFetcher(MapFetcher&& other) noexcept
    : pages_(std::move(other.pages_)), requests_(std::move(other.requests_))
{}

void MapFetcher::add(const std::string& url, std::string body)
{
    std::lock_guard lock(mutex_);
    pages_[url] = std::move(body);
}

FetchResult MapFetcher::fetch(const std::string& url)
{
    std::lock_guard lock(mutex_);
    requests_.push_back(url);
    auto it = pages_.find(url);
    if (it == pages_.end())
        return FetchResult::failure("404 " + url);
    return FetchResult::success(it->second);
}

std::vector<std::string> MapFetcher::requests() const
{
    std::lock_guard lock(mutex_);
    return requests_;
}

MapFetcher MapFetcher::from_directory(const std::filesystem::path& dir, const std::string& base_url)
{
    namespace fs = std::filesystem;
    MapFetcher fetcher;
    std::string base = base_url;
    if (base.empty() || base.back() != '/')
        base += '/';
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        auto rel = fs::relative(entry.path(), dir).generic_string();
        fetcher.pages_[*canonicalize_url(base + rel)] = body.str();
    }
    return fetcher;
}

BlogEvidence detect_blog(std::string_view html, std::string_view url)
{
    BlogEvidence ev;
    ev.has_blog_in_url = lower(url).find("blog") != std::string::npos;

    html::scan(html, html::Visitor{[&](const html::Tag& tag) {
                                       if (tag.closing || tag.name != "link")
                                           return;
                                       if (auto type = tag.attribute("type"); type && is_feed_type(*type))
                                           ev.has_rss_link = true;
                                   },
                                   nullptr});

    auto dates = extract_dates(html::extract_text(html));
    ev.posts_date_descending =
        dates.size() >= 2 && std::is_sorted(dates.begin(), dates.end(), std::greater<>{});

    auto links = extract_links(html, url);
    if (!links.empty()) {
        auto own = url_host(url);
        auto self = std::count_if(links.begin(), links.end(),
                                  [&](const std::string& l) { return url_host(l) == own; });
        ev.majority_self_links = 2 * static_cast<std::size_t>(self) > links.size();
    }
    return ev;
}

PageKind classify_page(const BlogEvidence& evidence, int threshold) noexcept
{
    return evidence.score() >= threshold ? PageKind::blog : PageKind::web;
}

std::vector<std::string> extract_links(std::string_view html, std::string_view base_url)
{
    std::vector<std::string> links;
    Url base = Url::parse(base_url);
    html::scan(html, html::Visitor{[&](const html::Tag& tag) {
                                       if (tag.closing || tag.name != "a")
                                           return;
                                       auto href = tag.attribute("href");
                                       if (!href)
                                           return;
                                       std::string_view h = *href;
                                       while (!h.empty() && std::isspace(static_cast<unsigned char>(h.front())))
                                           h.remove_prefix(1);
                                       while (!h.empty() && std::isspace(static_cast<unsigned char>(h.back())))
                                           h.remove_suffix(1);
                                       if (h.empty() || h.front() == '#')
                                           return;
                                       if (h.find_first_of(" \t\r\n<>\"") != std::string_view::npos)
                                           return;
                                       Url target = resolve(base, Url::parse(h));
                                       if (!target.scheme)
                                           return;
                                       auto scheme = lower(*target.scheme);
                                       if ((scheme != "http" && scheme != "https") || target.host().empty())
                                           return;
                                       links.push_back(target.str());
                                   },
                                   nullptr});
    return links;
}

std::vector<int> extract_dates(std::string_view text)
{
    static const std::regex pattern(
        R"(\b(\d{4})-(\d{2})-(\d{2})\b|\b(january|february|march|april|may|june|july|august|september|october|november|december)\s+(\d{1,2}),\s*(\d{4})\b)",
        std::regex::icase);
    static constexpr std::string_view months[] = {"january", "february", "march",     "april",
                                                  "may",     "june",     "july",      "august",
                                                  "september", "october", "november", "december"};
    std::vector<int> dates;
    std::string s(text);
    for (auto it = std::sregex_iterator(s.begin(), s.end(), pattern); it != std::sregex_iterator(); ++it) {
        const auto& m = *it;
        int year, month, day;
        if (m[1].matched) {
            year = std::stoi(m[1]);
            month = std::stoi(m[2]);
            day = std::stoi(m[3]);
        }
        else {
            auto name = lower(m[4].str());
            month = static_cast<int>(std::find(std::begin(months), std::end(months), name) - std::begin(months)) + 1;
            day = std::stoi(m[5]);
            year = std::stoi(m[6]);
        }
        if (month < 1 || month > 12 || day < 1 || day > 31)
            continue;
        dates.push_back(year * 10000 + month * 100 + day);
    }
    return dates;
}

PageRepository crawl(const CrawlConfig& config, Fetcher& fetcher, const Clock& clock)
{
    config.validate();

    PageRepository repo;
    std::deque<FrontierEntry> frontier;
    std::unordered_set<std::string> seen;
    for (const auto& seed : config.seeds) {
        auto canon = canonicalize_url(seed);
        if (canon && seen.insert(*canon).second)
            frontier.push_back({*canon, 0});
    }

    HostThrottle throttle(config.per_host_delay);
    while (repo.size() < config.max_pages && !frontier.empty()) {
        // A batch never exceeds the remaining budget, so no page is fetched
        // that a one-at-a-time crawl would not also have fetched.
        auto take = std::min(frontier.size(), config.max_pages - repo.size());
        std::vector<FrontierEntry> batch(std::make_move_iterator(frontier.begin()),
                                         std::make_move_iterator(frontier.begin() + static_cast<std::ptrdiff_t>(take)));
        frontier.erase(frontier.begin(), frontier.begin() + static_cast<std::ptrdiff_t>(take));

        auto results = fetch_batch(batch, fetcher, throttle);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            if (!results[i].ok)
                continue;
            const auto& body = results[i].body;
            PageRecord rec;
            rec.pid = static_cast<int>(repo.size()) + 1;
            rec.url = batch[i].url;
            rec.kind = classify_page(detect_blog(body, rec.url), config.blog_threshold);
            rec.fetched_at = clock();
            rec.text = html::extract_text(body);
            rec.links = extract_links(body, rec.url);

            if (batch[i].depth < config.max_depth) {
                for (const auto& link : rec.links) {
                    auto canon = canonicalize_url(link);
                    if (canon && seen.insert(*canon).second)
                        frontier.push_back({*canon, batch[i].depth + 1});
                }
            }
            repo.pages.push_back(std::move(rec));
        }
    }
    return repo;
}

std::vector<std::string> load_seeds(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot read seed file: " + path.string());
    std::vector<std::string> seeds;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        auto last = line.find_last_not_of(" \t\r");
        seeds.push_back(line.substr(first, last - first + 1));
    }
    return seeds;
}

void write_repository(std::ostream& out, const PageRepository& repo)
{
    std::string text;
    jsonl::append(text, nlohmann::ordered_json{{"format", repository_format}, {"version", repository_version}});
    for (const auto& page : repo.pages)
        jsonl::append(text, record_to_json(page));
    out << text;
}

PageRepository read_repository(std::istream& in)
{
    PageRepository repo;
    bool header = false;
    jsonl::read(in, [&](const nlohmann::json& j, std::size_t line) {
        if (!header) {
            if (!j.is_object() || j.value("format", "") != repository_format)
                throw Error(ErrorCode::format_error, "line " + std::to_string(line) + ": missing repository header");
            if (j.value("version", 0) != repository_version)
                throw Error(ErrorCode::format_error, "unsupported repository version");
            header = true;
            return;
        }
        auto rec = record_from_json(j);
        if (rec.pid != static_cast<int>(repo.size()) + 1)
            throw Error(ErrorCode::format_error,
                        "line " + std::to_string(line) + ": pids must run 1..N in order");
        repo.pages.push_back(std::move(rec));
    });
    if (!header)
        throw Error(ErrorCode::format_error, "missing repository header");
    return repo;
}

void save_repository(const PageRepository& repo, const std::filesystem::path& path)
{
    std::ostringstream out;
    write_repository(out, repo);
    jsonl::write_file(path, out.str());
}

PageRepository load_repository(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    try {
        return read_repository(in);
    }
    catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace qcqa
