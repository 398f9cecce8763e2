#include "qcqa/jsonl.hpp"

#include "qcqa/error.hpp"

#include <fstream>
#include <istream>

namespace qcqa::jsonl {

void read(std::istream& in, const std::function<void(const nlohmann::json&, std::size_t)>& fn)
{
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        try {
            fn(nlohmann::json::parse(line), line_no);
        }
        catch (const Error&) {
            throw;
        }
        catch (const std::exception& e) {
            throw Error(ErrorCode::format_error, "line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (in.bad())
        throw Error(ErrorCode::io_error, "read failed");
}

void read_file(const std::filesystem::path& path,
               const std::function<void(const nlohmann::json&, std::size_t)>& fn)
{
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    try {
        read(in, fn);
    }
    catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error(ErrorCode::io_error, "cannot write " + path.string());
    out << text;
    out.flush();
    if (!out)
        throw Error(ErrorCode::io_error, "write failed: " + path.string());
}

void append(std::string& out, const nlohmann::ordered_json& record)
{
    out += record.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
    out += '\n';
}

}  // namespace qcqa::jsonl
