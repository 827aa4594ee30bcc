#include "treeavg/hits.hpp"

#include <cassert>

#include "treeavg/errors.hpp"

namespace treeavg {

namespace {

void check_ensemble(std::span<const ParseTree> individuals,
                    std::span<const Rational> weights) {
  if (individuals.empty()) throw DataError("empty ensemble");
  if (individuals.size() != weights.size()) {
    throw DataError("ensemble has " + std::to_string(individuals.size()) +
                    " individuals but " + std::to_string(weights.size()) +
                    " weights");
  }
  int n = individuals.front().n();
  for (const auto& t : individuals) {
    if (t.n() != n) throw DataError("individuals disagree on sentence length");
  }
  bool any_positive = false;
  for (const auto& w : weights) {
    if (w.is_negative()) throw DataError("negative ensemble weight");
    if (!w.is_zero()) any_positive = true;
  }
  if (!any_positive) throw DataError("ensemble needs at least one positive weight");
}

}  // namespace

HitTable build_hits(std::span<const ParseTree> individuals,
                    std::span<const Rational> weights) {
  check_ensemble(individuals, weights);
  HitTable table;
  table.n = individuals.front().n();
  for (size_t k = 0; k < individuals.size(); ++k) {
    table.individual_sizes.push_back(
        static_cast<int>(individuals[k].constituents().size()));
    table.total_weight += weights[k];
    if (weights[k].is_zero()) continue;
    for (const auto& c : individuals[k].constituents()) {
      table.counts[c] += weights[k];
    }
  }
#ifndef NDEBUG
  // Mass balance: total hits equal the weighted sum of individual sizes.
  Rational mass, expected;
  for (const auto& [c, h] : table.counts) mass += h;
  for (size_t k = 0; k < individuals.size(); ++k) {
    expected += weights[k] * Rational(table.individual_sizes[k]);
  }
  assert(mass == expected);
#endif
  return table;
}

HitScorer weighted_hit_scorer(std::span<const ParseTree> individuals,
                              std::span<const Rational> weights,
                              int node_count) {
  check_ensemble(individuals, weights);
  int n = individuals.front().n();
  if (node_count <= n || node_count >= 2 * n) {
    throw DataError("node count " + std::to_string(node_count) +
                    " outside the open range (" + std::to_string(n) + ", " +
                    std::to_string(2 * n) + ")");
  }
  HitScorer scorer;
  for (size_t k = 0; k < individuals.size(); ++k) {
    if (weights[k].is_zero()) continue;
    Rational share =
        weights[k] /
        Rational(node_count +
                 static_cast<Wide>(individuals[k].constituents().size()));
    for (const auto& c : individuals[k].constituents()) {
      scorer.values[c] += share;
    }
  }
  return scorer;
}

}  // namespace treeavg
