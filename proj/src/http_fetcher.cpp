#include "qcqa/http_fetcher.hpp"

#include "qcqa/url.hpp"

#include <httplib.h>

namespace qcqa {

HttpFetcher::HttpFetcher(std::chrono::seconds timeout, std::string user_agent)
    : timeout_(timeout), user_agent_(std::move(user_agent))
{}

FetchResult HttpFetcher::fetch(const std::string& url)
{
    Url u = Url::parse(url);
    if (!u.scheme || !u.authority)
        return FetchResult::failure("not an absolute URL: " + url);
    if (*u.scheme != "http" && *u.scheme != "https")
        return FetchResult::failure("unsupported scheme: " + *u.scheme);
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
    if (*u.scheme == "https")
        return FetchResult::failure("https is not supported in this build");
#endif
    httplib::Client client(*u.scheme + "://" + *u.authority);
    client.set_follow_location(true);
    client.set_connection_timeout(timeout_);
    client.set_read_timeout(timeout_);

    std::string target = u.path.empty() ? "/" : u.path;
    if (u.query)
        target += "?" + *u.query;
    auto res = client.Get(target, httplib::Headers{{"User-Agent", user_agent_}});
    if (!res)
        return FetchResult::failure(httplib::to_string(res.error()));
    if (res->status < 200 || res->status >= 300)
        return FetchResult::failure("HTTP " + std::to_string(res->status));
    auto type = res->get_header_value("Content-Type");
    if (!type.empty() && type.find("html") == std::string::npos && type.find("text") == std::string::npos
        && type.find("xml") == std::string::npos)
        return FetchResult::failure("unsupported content type " + type);
    return FetchResult::success(std::move(res->body));
}

}  // namespace qcqa
