#pragma once

#include "qcqa/answer_type.hpp"
#include "qcqa/qclassify.hpp"

#include <compare>
#include <optional>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qcqa {

/// A percentage held exactly in hundredths (83.33 is 8333).
struct Percentage {
    std::int64_t hundredths = 0;

    double value() const noexcept { return static_cast<double>(hundredths) / 100.0; }
    std::string str() const;  // always two decimals, e.g. "100.00"
    static std::optional<Percentage> parse(std::string_view text);

    friend auto operator<=>(const Percentage&, const Percentage&) = default;
};

/// Answer Relevance Score: 100 * rf / tf, rounded half-up to two decimals.
/// Throws Error(invalid_counts) unless 0 <= rf <= tf and tf >= 1.
Percentage ars(int rf, int tf);

struct FactorChecklist {
    AnswerType answer_type;
    std::vector<std::string> factors;
};

/// The six Person factors from the relevance survey.
const FactorChecklist& person_checklist();

/// Newline-delimited {"answer_type": ..., "factors": [...]} records.
std::vector<FactorChecklist> load_checklists(const std::filesystem::path& path);

struct EvalRecord {
    std::string question;
    QuestionClass question_class;
    AnswerType answer_type;
    int tf = 0;  // total factors
    int rf = 0;  // factors satisfied

    friend bool operator==(const EvalRecord&, const EvalRecord&) = default;
};

/// Newline-delimited {question, question_class, answer_type, tf, rf}.
std::vector<EvalRecord> load_eval_records(const std::filesystem::path& path);

/// Throws Error(invalid_counts) when a record's tf differs from the size of
/// the checklist for its answer type. Types without a checklist pass.
void check_against_checklists(const std::vector<EvalRecord>& records,
                              const std::vector<FactorChecklist>& checklists);

struct ReportRow {
    std::string question;
    QuestionClass question_class;
    AnswerType answer_type;
    int rf = 0;
    int tf = 0;
    Percentage ars;

    friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportAverage {
    QuestionClass question_class;
    AnswerType answer_type;
    int questions = 0;
    Percentage ars;  // mean of the rounded row scores, rounded half-up

    friend bool operator==(const ReportAverage&, const ReportAverage&) = default;
};

struct ARSReport {
    std::vector<ReportRow> rows;
    std::vector<ReportAverage> averages;  // first-appearance order of (class, type)

    friend bool operator==(const ARSReport&, const ARSReport&) = default;
};

/// Throws Error(empty_records) for no records, Error(invalid_counts) for a
/// bad (rf, tf) pair.
ARSReport evaluate(const std::vector<EvalRecord>& records);

/// Two CSV tables, each introduced by a "# rows" / "# averages" line and
/// a fixed header row.
std::string format_report(const ARSReport& report);
ARSReport parse_report(std::string_view text);

void export_report(const ARSReport& report, const std::filesystem::path& path);
ARSReport load_report(const std::filesystem::path& path);

}  // namespace qcqa
