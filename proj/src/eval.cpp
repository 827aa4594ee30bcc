#include "treeavg/eval.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

#include "treeavg/errors.hpp"

namespace treeavg {

namespace {

struct MaskedConstituent {
  Constituent set;        // reindexed
  const std::string* label;  // from the canonically smallest original
};

// Drops masked leaves, reindexes, removes empties and trivials, and
// collapses duplicate leaf sets.
std::vector<MaskedConstituent> mask_tree(const ParseTree& tree,
                                         const std::vector<int>& remap,
                                         int kept) {
  std::vector<MaskedConstituent> out;
  for (const auto& c : tree.constituents()) {
    Constituent reduced;
    for (int i : c.indices()) {
      if (remap[static_cast<size_t>(i)] >= 0) {
        reduced.set(remap[static_cast<size_t>(i)]);
      }
    }
    int size = reduced.size();
    if (size <= 1 || size == kept) continue;
    auto it = tree.labels().find(c);
    out.push_back({std::move(reduced),
                   it == tree.labels().end() ? nullptr : &it->second});
  }
  std::sort(out.begin(), out.end(),
            [](const MaskedConstituent& a, const MaskedConstituent& b) {
              return Constituent::canonical_less(a.set, b.set);
            });
  // Keep the first of each duplicate group; originals were visited in
  // canonical order, so the survivor is deterministic.
  out.erase(std::unique(out.begin(), out.end(),
                        [](const MaskedConstituent& a,
                           const MaskedConstituent& b) {
                          return a.set == b.set;
                        }),
            out.end());
  return out;
}

void tally(CorpusReport& report, const Constituent& c,
           int64_t CategoryCounts::*field) {
  report.overall.*field += 1;
  if (c.fan_out() >= 2) {
    report.discontinuous.*field += 1;
  } else {
    report.continuous.*field += 1;
  }
}

}  // namespace

CorpusReport corpus_scores(std::span<const SentenceRecord> predictions,
                           std::span<const SentenceRecord> golds,
                           const std::set<std::string>& punct_labels,
                           bool per_label) {
  if (predictions.size() != golds.size()) {
    throw DataError("prediction and gold corpora have different sizes (" +
                    std::to_string(predictions.size()) + " vs " +
                    std::to_string(golds.size()) + ")");
  }
  CorpusReport report;
  report.has_label_recall = per_label;
  for (size_t s = 0; s < golds.size(); ++s) {
    const ParseTree& pred = predictions[s].tree;
    const ParseTree& gold = golds[s].tree;
    if (pred.n() != gold.n()) {
      throw DataError("sentence " + std::to_string(s + 1) +
                      ": token counts differ (" + std::to_string(pred.n()) +
                      " vs " + std::to_string(gold.n()) + ")");
    }
    ++report.sentences;

    std::vector<int> masked = golds[s].punct_leaves(punct_labels);
    std::vector<int> remap(static_cast<size_t>(gold.n()), -1);
    int kept = 0;
    size_t next_masked = 0;
    for (int i = 0; i < gold.n(); ++i) {
      if (next_masked < masked.size() && masked[next_masked] == i) {
        ++next_masked;
        continue;
      }
      remap[static_cast<size_t>(i)] = kept++;
    }
    if (kept == 0) continue;

    auto gold_sets = mask_tree(gold, remap, kept);
    auto pred_sets = mask_tree(pred, remap, kept);

    size_t i = 0, j = 0;
    while (i < pred_sets.size() || j < gold_sets.size()) {
      if (i < pred_sets.size() && j < gold_sets.size() &&
          pred_sets[i].set == gold_sets[j].set) {
        tally(report, pred_sets[i].set, &CategoryCounts::tp);
        if (per_label) {
          const std::string label =
              gold_sets[j].label ? *gold_sets[j].label : "o";
          auto& slot = report.label_recall[label];
          ++slot.total;
          ++slot.matched;
        }
        ++i;
        ++j;
      } else if (j >= gold_sets.size() ||
                 (i < pred_sets.size() &&
                  Constituent::canonical_less(pred_sets[i].set,
                                              gold_sets[j].set))) {
        tally(report, pred_sets[i].set, &CategoryCounts::fp);
        ++i;
      } else {
        tally(report, gold_sets[j].set, &CategoryCounts::fn);
        if (per_label) {
          const std::string label =
              gold_sets[j].label ? *gold_sets[j].label : "o";
          ++report.label_recall[label].total;
        }
        ++j;
      }
    }
  }
  return report;
}

namespace {

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

void append_row(std::string& out, const char* name,
                const CategoryCounts& c) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-15s %6.1f %6.1f %6.1f %8lld %8lld %8lld\n",
                name, c.precision(), c.recall(), c.f1(),
                static_cast<long long>(c.tp), static_cast<long long>(c.fp),
                static_cast<long long>(c.fn));
  out += buf;
}

}  // namespace

std::string report_text(const CorpusReport& report) {
  std::string out;
  out += "sentences: " + std::to_string(report.sentences) + "\n";
  out += "F1 overall/cont/disco: " + one_decimal(report.overall.f1()) + "/" +
         one_decimal(report.continuous.f1()) + "/" +
         one_decimal(report.discontinuous.f1()) + "\n";
  char header[160];
  std::snprintf(header, sizeof header, "%-15s %6s %6s %6s %8s %8s %8s\n",
                "category", "P", "R", "F1", "TP", "FP", "FN");
  out += header;
  append_row(out, "overall", report.overall);
  append_row(out, "continuous", report.continuous);
  append_row(out, "discontinuous", report.discontinuous);
  if (report.has_label_recall) {
    out += "label recall:\n";
    for (const auto& [label, lr] : report.label_recall) {
      double pct = lr.total == 0 ? 0.0
                                 : 100.0 * static_cast<double>(lr.matched) /
                                       static_cast<double>(lr.total);
      char buf[160];
      std::snprintf(buf, sizeof buf, "  %-12s %6.1f (%lld/%lld)\n",
                    label.c_str(), pct, static_cast<long long>(lr.matched),
                    static_cast<long long>(lr.total));
      out += buf;
    }
  }
  return out;
}

std::string report_json(const CorpusReport& report) {
  nlohmann::json j;
  j["sentences"] = report.sentences;
  auto fill = [](const CategoryCounts& c) {
    nlohmann::json o;
    o["tp"] = c.tp;
    o["fp"] = c.fp;
    o["fn"] = c.fn;
    o["precision"] = c.precision();
    o["recall"] = c.recall();
    o["f1"] = c.f1();
    return o;
  };
  j["overall"] = fill(report.overall);
  j["continuous"] = fill(report.continuous);
  j["discontinuous"] = fill(report.discontinuous);
  if (report.has_label_recall) {
    nlohmann::json labels = nlohmann::json::object();
    for (const auto& [label, lr] : report.label_recall) {
      nlohmann::json o;
      o["matched"] = lr.matched;
      o["total"] = lr.total;
      o["recall"] = lr.total == 0 ? 0.0
                                  : 100.0 * static_cast<double>(lr.matched) /
                                        static_cast<double>(lr.total);
      labels[label] = o;
    }
    j["label_recall"] = labels;
  }
  return j.dump(2) + "\n";
}

}  // namespace treeavg
