#pragma once

#include "qcqa/error.hpp"
#include "qcqa/indexer.hpp"
#include "qcqa/summarizer.hpp"

#include <filesystem>
#include <optional>
#include <string>

namespace qcqa::testing {

std::filesystem::path fixture_dir();
std::filesystem::path data_dir();
std::filesystem::path fixture(const std::string& name);
std::string read_text(const std::filesystem::path& path);

/// Summaries whose sentences carry the words of the twelve index rows.
SummaryStore sample_summaries();

/// The twelve rows filed directly, each surface term run through the
/// shipped stemmer. Metadata matches sample_summaries().
QCIndex sample_index();

/// Code of the qcqa::Error thrown by f, or nullopt if it returns normally.
template <class F>
std::optional<ErrorCode> error_of(F&& f)
{
    try {
        f();
    }
    catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    TempDir();
    ~TempDir();
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace qcqa::testing
