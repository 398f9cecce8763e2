#pragma once

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

namespace qcqa::jsonl {

/// Calls fn(record, line_number) for every non-blank line. Parse failures
/// and exceptions thrown by fn (nlohmann type errors included) surface as
/// Error(format_error) naming the line.
void read(std::istream& in, const std::function<void(const nlohmann::json&, std::size_t)>& fn);
void read_file(const std::filesystem::path& path,
               const std::function<void(const nlohmann::json&, std::size_t)>& fn);

/// Writes text to path, throwing Error(io_error) on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

/// Appends one compact record followed by '\n'.
void append(std::string& out, const nlohmann::ordered_json& record);

}  // namespace qcqa::jsonl
