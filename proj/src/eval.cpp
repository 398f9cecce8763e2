#include "qcqa/eval.hpp"

#include "qcqa/error.hpp"
#include "qcqa/jsonl.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace qcqa {
namespace {

constexpr std::string_view rows_marker = "# rows";
constexpr std::string_view averages_marker = "# averages";
constexpr std::string_view rows_header = "question,question_class,answer_type,rf,tf,ars";
constexpr std::string_view averages_header = "question_class,answer_type,questions,ars";

std::string csv_field(std::string_view s)
{
    bool quote = s.find_first_of(",\"\r\n") != std::string_view::npos
                 || (!s.empty() && (s.front() == ' ' || s.back() == ' ' || s.front() == '#'));
    if (!quote)
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

// Reads one CSV record starting at pos; advances pos past the line break.
std::vector<std::string> read_csv_record(std::string_view text, std::size_t& pos)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    while (pos < text.size()) {
        char c = text[pos++];
        if (quoted) {
            if (c == '"') {
                if (pos < text.size() && text[pos] == '"') {
                    fields.back() += '"';
                    ++pos;
                }
                else {
                    quoted = false;
                }
            }
            else {
                fields.back() += c;
            }
        }
        else if (c == '"') {
            quoted = true;
        }
        else if (c == ',') {
            fields.emplace_back();
        }
        else if (c == '\n') {
            break;
        }
        else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted)
        throw Error(ErrorCode::format_error, "unterminated quoted field");
    return fields;
}

int to_int(const std::string& s)
{
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
        throw Error(ErrorCode::format_error, "expected an integer, got '" + s + "'");
    return v;
}

QuestionClass to_class(const std::string& s)
{
    auto qc = parse_question_class(s);
    if (!qc)
        throw Error(ErrorCode::format_error, "unknown question class '" + s + "'");
    return *qc;
}

AnswerType to_type(const std::string& s)
{
    auto t = parse_answer_type(s);
    if (!t)
        throw Error(ErrorCode::format_error, "unknown answer type '" + s + "'");
    return *t;
}

Percentage to_percentage(const std::string& s)
{
    auto p = Percentage::parse(s);
    if (!p)
        throw Error(ErrorCode::format_error, "expected a percentage, got '" + s + "'");
    return *p;
}

}  // namespace

std::string Percentage::str() const
{
    auto whole = hundredths / 100;
    auto frac = hundredths % 100;
    std::string out = std::to_string(whole) + ".";
    if (frac < 10)
        out += '0';
    out += std::to_string(frac);
    return out;
}

std::optional<Percentage> Percentage::parse(std::string_view text)
{
    auto dot = text.find('.');
    if (dot == std::string_view::npos || text.size() - dot - 1 != 2 || dot == 0)
        return std::nullopt;
    std::int64_t whole = 0;
    int frac = 0;
    auto w = text.substr(0, dot);
    auto f = text.substr(dot + 1);
    if (std::from_chars(w.data(), w.data() + w.size(), whole).ptr != w.data() + w.size()
        || std::from_chars(f.data(), f.data() + f.size(), frac).ptr != f.data() + f.size() || whole < 0)
        return std::nullopt;
    return Percentage{whole * 100 + frac};
}

Percentage ars(int rf, int tf)
{
    if (tf < 1 || rf < 0 || rf > tf)
        throw Error(ErrorCode::invalid_counts,
                    "need 0 <= rf <= tf and tf >= 1 (rf=" + std::to_string(rf) + ", tf=" + std::to_string(tf) + ")");
    std::int64_t num = 20000 * static_cast<std::int64_t>(rf) + tf;
    return Percentage{num / (2 * static_cast<std::int64_t>(tf))};
}

const FactorChecklist& person_checklist()
{
    static const FactorChecklist list{
        AnswerType::person,
        {"Person's Name", "Education", "Birth Place/ native Place", "When he/she was born/died",
         "His/her contribution", "Other related information"},
    };
    return list;
}

std::vector<FactorChecklist> load_checklists(const std::filesystem::path& path)
{
    std::vector<FactorChecklist> lists;
    jsonl::read_file(path, [&](const nlohmann::json& j, std::size_t line) {
        FactorChecklist c{to_type(j.at("answer_type").get<std::string>()),
                          j.at("factors").get<std::vector<std::string>>()};
        if (c.factors.empty())
            throw Error(ErrorCode::format_error, "line " + std::to_string(line) + ": empty factor list");
        lists.push_back(std::move(c));
    });
    return lists;
}

std::vector<EvalRecord> load_eval_records(const std::filesystem::path& path)
{
    std::vector<EvalRecord> records;
    jsonl::read_file(path, [&](const nlohmann::json& j, std::size_t) {
        records.push_back({j.at("question").get<std::string>(), to_class(j.at("question_class").get<std::string>()),
                           to_type(j.at("answer_type").get<std::string>()), j.at("tf").get<int>(),
                           j.at("rf").get<int>()});
    });
    return records;
}

void check_against_checklists(const std::vector<EvalRecord>& records, const std::vector<FactorChecklist>& checklists)
{
    for (const auto& r : records) {
        for (const auto& c : checklists) {
            if (c.answer_type == r.answer_type && static_cast<std::size_t>(r.tf) != c.factors.size())
                throw Error(ErrorCode::invalid_counts, "'" + r.question + "': tf=" + std::to_string(r.tf) + " but the "
                                                           + std::string(to_string(r.answer_type)) + " checklist has "
                                                           + std::to_string(c.factors.size()) + " factors");
        }
    }
}

ARSReport evaluate(const std::vector<EvalRecord>& records)
{
    if (records.empty())
        throw Error(ErrorCode::empty_records, "no evaluation records");
    ARSReport report;
    std::vector<std::pair<QuestionClass, AnswerType>> order;
    std::map<std::pair<QuestionClass, AnswerType>, std::pair<std::int64_t, int>> sums;
    for (const auto& r : records) {
        auto score = ars(r.rf, r.tf);
        report.rows.push_back({r.question, r.question_class, r.answer_type, r.rf, r.tf, score});
        auto key = std::make_pair(r.question_class, r.answer_type);
        auto [it, inserted] = sums.try_emplace(key, 0, 0);
        if (inserted)
            order.push_back(key);
        it->second.first += score.hundredths;
        it->second.second += 1;
    }
    for (const auto& key : order) {
        auto [sum, n] = sums[key];
        report.averages.push_back({key.first, key.second, n, Percentage{(2 * sum + n) / (2 * static_cast<std::int64_t>(n))}});
    }
    return report;
}

std::string format_report(const ARSReport& report)
{
    std::string out;
    out += rows_marker;
    out += '\n';
    out += rows_header;
    out += '\n';
    for (const auto& r : report.rows) {
        out += csv_field(r.question) + "," + std::string(to_string(r.question_class)) + ","
               + std::string(to_string(r.answer_type)) + "," + std::to_string(r.rf) + "," + std::to_string(r.tf) + ","
               + r.ars.str() + "\n";
    }
    out += averages_marker;
    out += '\n';
    out += averages_header;
    out += '\n';
    for (const auto& a : report.averages) {
        out += std::string(to_string(a.question_class)) + "," + std::string(to_string(a.answer_type)) + ","
               + std::to_string(a.questions) + "," + a.ars.str() + "\n";
    }
    return out;
}

ARSReport parse_report(std::string_view text)
{
    ARSReport report;
    std::size_t pos = 0;
    auto expect_line = [&](std::string_view want) {
        auto end = text.find('\n', pos);
        auto line = text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (line != want)
            throw Error(ErrorCode::format_error, "expected '" + std::string(want) + "'");
        pos = end == std::string_view::npos ? text.size() : end + 1;
    };
    auto at_marker = [&] { return text.substr(pos, averages_marker.size()) == averages_marker; };

    expect_line(rows_marker);
    expect_line(rows_header);
    while (pos < text.size() && !at_marker()) {
        auto f = read_csv_record(text, pos);
        if (f.size() != 6)
            throw Error(ErrorCode::format_error, "row needs 6 fields");
        report.rows.push_back({f[0], to_class(f[1]), to_type(f[2]), to_int(f[3]), to_int(f[4]), to_percentage(f[5])});
    }
    expect_line(averages_marker);
    expect_line(averages_header);
    while (pos < text.size()) {
        auto f = read_csv_record(text, pos);
        if (f.size() == 1 && f[0].empty())
            continue;
        if (f.size() != 4)
            throw Error(ErrorCode::format_error, "average row needs 4 fields");
        report.averages.push_back({to_class(f[0]), to_type(f[1]), to_int(f[2]), to_percentage(f[3])});
    }
    return report;
}

void export_report(const ARSReport& report, const std::filesystem::path& path)
{
    jsonl::write_file(path, format_report(report));
}

ARSReport load_report(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io_error, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_report(buf.str());
    }
    catch (const Error& e) {
        throw Error(e.code(), path.string() + ": " + e.what());
    }
}

}  // namespace qcqa
