#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <string>

#include "treeavg/discbracket.hpp"

namespace treeavg {

struct CategoryCounts {
  int64_t tp = 0;
  int64_t fp = 0;
  int64_t fn = 0;

  double precision() const {
    return tp + fp == 0 ? 0.0 : 100.0 * static_cast<double>(tp) /
                                    static_cast<double>(tp + fp);
  }
  double recall() const {
    return tp + fn == 0 ? 0.0 : 100.0 * static_cast<double>(tp) /
                                    static_cast<double>(tp + fn);
  }
  double f1() const {
    double p = precision();
    double r = recall();
    return p + r == 0.0 ? 0.0 : 2.0 * p * r / (p + r);
  }
};

struct LabelRecall {
  int64_t matched = 0;
  int64_t total = 0;
};

// Corpus-level (micro) scores: counts are summed over sentences before any
// ratio is taken.
struct CorpusReport {
  int64_t sentences = 0;
  CategoryCounts overall;
  CategoryCounts continuous;
  CategoryCounts discontinuous;
  bool has_label_recall = false;
  std::map<std::string, LabelRecall> label_recall;
};

// The evaluation metric: per sentence, leaves whose gold preterminal label
// is a punctuation label are removed and the rest reindexed; trivial
// constituents (singletons and the remaining full span) are excluded on both
// sides; duplicate leaf sets count once. Matching is unlabeled. A
// constituent counts as discontinuous when its masked form has fan-out >= 2.
// Predictions are unlabeled, so per-label numbers are recall only.
CorpusReport corpus_scores(std::span<const SentenceRecord> predictions,
                           std::span<const SentenceRecord> golds,
                           const std::set<std::string>& punct_labels,
                           bool per_label);

std::string report_text(const CorpusReport& report);
std::string report_json(const CorpusReport& report);

}  // namespace treeavg
