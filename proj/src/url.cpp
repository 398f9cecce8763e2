#include "qcqa/url.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

namespace qcqa {
namespace {

std::string lower(std::string s)
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool valid_scheme(std::string_view s)
{
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0])))
        return false;
    return std::all_of(s.begin(), s.end(), [](unsigned char c) {
        return std::isalnum(c) || c == '+' || c == '-' || c == '.';
    });
}

std::string remove_dot_segments(std::string_view input)
{
    std::vector<std::string_view> out;
    bool absolute = !input.empty() && input.front() == '/';
    std::size_t pos = absolute ? 1 : 0;
    bool trailing_slash = false;
    while (pos <= input.size()) {
        auto next = input.find('/', pos);
        auto seg = input.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        bool last = next == std::string_view::npos;
        if (seg == ".") {
            trailing_slash = last;
        }
        else if (seg == "..") {
            if (!out.empty())
                out.pop_back();
            trailing_slash = last;
        }
        else {
            out.push_back(seg);
            trailing_slash = false;
        }
        if (last)
            break;
        pos = next + 1;
    }
    std::string result = absolute ? "/" : "";
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i > 0)
            result += '/';
        result += out[i];
    }
    if (trailing_slash && (result.empty() || result.back() != '/'))
        result += '/';
    return result;
}

std::string merge(const Url& base, std::string_view ref_path)
{
    if (base.authority && base.path.empty())
        return "/" + std::string(ref_path);
    auto slash = base.path.rfind('/');
    if (slash == std::string::npos)
        return std::string(ref_path);
    return base.path.substr(0, slash + 1) + std::string(ref_path);
}

}  // namespace

Url Url::parse(std::string_view text)
{
    Url url;
    auto colon = text.find(':');
    auto delim = text.find_first_of("/?#");
    if (colon != std::string_view::npos && (delim == std::string_view::npos || colon < delim)
        && valid_scheme(text.substr(0, colon))) {
        url.scheme = std::string(text.substr(0, colon));
        text.remove_prefix(colon + 1);
    }
    if (auto hash = text.find('#'); hash != std::string_view::npos) {
        url.fragment = std::string(text.substr(hash + 1));
        text = text.substr(0, hash);
    }
    if (auto q = text.find('?'); q != std::string_view::npos) {
        url.query = std::string(text.substr(q + 1));
        text = text.substr(0, q);
    }
    if (text.substr(0, 2) == "//") {
        text.remove_prefix(2);
        auto slash = text.find('/');
        url.authority = std::string(text.substr(0, slash));
        text = slash == std::string_view::npos ? std::string_view{} : text.substr(slash);
    }
    url.path = std::string(text);
    return url;
}

std::string Url::host() const
{
    if (!authority)
        return {};
    std::string_view a = *authority;
    if (auto at = a.rfind('@'); at != std::string_view::npos)
        a.remove_prefix(at + 1);
    return lower(std::string(a));
}

std::string Url::str() const
{
    std::string out;
    if (scheme)
        out += *scheme + ":";
    if (authority)
        out += "//" + *authority;
    out += path;
    if (query)
        out += "?" + *query;
    if (fragment)
        out += "#" + *fragment;
    return out;
}

Url resolve(const Url& base, const Url& ref)
{
    Url target;
    if (ref.scheme) {
        target = ref;
        target.path = remove_dot_segments(ref.path);
    }
    else {
        target.scheme = base.scheme;
        if (ref.authority) {
            target.authority = ref.authority;
            target.path = remove_dot_segments(ref.path);
            target.query = ref.query;
        }
        else {
            target.authority = base.authority;
            if (ref.path.empty()) {
                target.path = base.path;
                target.query = ref.query ? ref.query : base.query;
            }
            else {
                target.path = ref.path.front() == '/' ? remove_dot_segments(ref.path)
                                                     : remove_dot_segments(merge(base, ref.path));
                target.query = ref.query;
            }
        }
    }
    target.fragment = ref.fragment;
    return target;
}

std::optional<std::string> canonicalize_url(std::string_view text)
{
    Url url = Url::parse(text);
    if (!url.scheme)
        return std::nullopt;
    url.scheme = lower(*url.scheme);
    if (*url.scheme != "http" && *url.scheme != "https")
        return std::nullopt;
    if (!url.authority)
        return std::nullopt;
    std::string host = url.host();
    if (host.empty() || host.find_first_of(" \t\r\n<>\"") != std::string::npos)
        return std::nullopt;
    std::string_view a = *url.authority;
    auto at = a.rfind('@');
    url.authority = at == std::string_view::npos ? host : std::string(a.substr(0, at + 1)) + host;
    url.fragment.reset();
    if (url.path.empty())
        url.path = "/";
    return url.str();
}

std::string url_host(std::string_view url)
{
    return Url::parse(url).host();
}

}  // namespace qcqa
