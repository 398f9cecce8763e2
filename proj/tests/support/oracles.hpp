#pragma once

#include "qcqa/indexer.hpp"
#include "qcqa/qclassify.hpp"
#include "qcqa/search_rank.hpp"
#include "qcqa/summarizer.hpp"

#include <map>
#include <set>
#include <string>
#include <tuple>
#include <vector>

// Reference implementations written against the stated rules, kept as
// plain as possible so they can be checked by eye.
namespace qcqa::oracle {

/// Split-order indices of the sentences a half-length summary must keep.
std::vector<std::size_t> summary_selection(const std::string& text, const Stoplist& stoplist);

/// Index of the highest scoring sentence, earliest on ties.
std::size_t top_sentence(const std::string& text, const Stoplist& stoplist);

/// (pid, sid) -> matched term set, by scanning every (type, term, posting).
std::map<std::pair<int, int>, std::set<std::string>> search(const QCIndex& index, const Query& query);

/// Keys in rank order, from an explicit key tuple.
std::vector<std::pair<int, int>> rank_order(const std::vector<AnswerHit>& hits, const FeedbackSnapshot& feedback);

/// type -> term -> (pid, sid) list, from a sentence x term x classification loop.
std::map<AnswerType, std::map<std::string, std::set<std::pair<int, int>>>>
index_postings(const SummaryStore& store, DefinitionProvider& provider, const Gazetteer& gazetteer,
               const Stoplist& stoplist);

/// Round(100 * rf / tf, 2) computed with long division on decimal digits.
std::string ars_text(int rf, int tf);

}  // namespace qcqa::oracle
