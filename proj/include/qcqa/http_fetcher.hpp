#pragma once

#include "qcqa/corpus.hpp"

#include <chrono>
#include <string>

namespace qcqa {

/// Fetches pages over HTTP (and HTTPS when built with OpenSSL), following
/// redirects. Non-2xx responses and non-text content types are failures.
class HttpFetcher : public Fetcher {
public:
    explicit HttpFetcher(std::chrono::seconds timeout = std::chrono::seconds{10},
                         std::string user_agent = "qcqa-crawler/1.0");

    FetchResult fetch(const std::string& url) override;

private:
    std::chrono::seconds timeout_;
    std::string user_agent_;
};

}  // namespace qcqa
