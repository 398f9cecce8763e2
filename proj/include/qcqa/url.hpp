#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace qcqa {

/// A parsed URI reference (RFC 3986 generic syntax). Components that were
/// absent in the source are std::nullopt, which differs from present-but-empty.
struct Url {
    std::optional<std::string> scheme;
    std::optional<std::string> authority;
    std::string path;
    std::optional<std::string> query;
    std::optional<std::string> fragment;

    static Url parse(std::string_view text);

    bool is_absolute() const noexcept { return scheme.has_value(); }

    /// Lowercased authority without userinfo; empty when absent.
    std::string host() const;

    std::string str() const;
};

/// Reference resolution against an absolute base (RFC 3986 section 5.2).
Url resolve(const Url& base, const Url& reference);

/// Lowercase scheme and host, drop the fragment, keep the query, and use
/// "/" for an empty path. Returns nullopt unless the input is an absolute
/// http(s) URL with a non-empty host.
std::optional<std::string> canonicalize_url(std::string_view url);

/// Lowercased host of an absolute URL, or empty.
std::string url_host(std::string_view url);

}  // namespace qcqa
