#pragma once

#include <span>
#include <unordered_map>
#include <vector>

#include "treeavg/tree.hpp"

namespace treeavg {

// Map from constituent to a rational score; absent keys score zero.
struct HitScorer {
  std::unordered_map<Constituent, Rational, ConstituentHash> values;

  Rational at(const Constituent& c) const {
    auto it = values.find(c);
    return it == values.end() ? Rational() : it->second;
  }
};

// Weighted hit counts over every constituent appearing in the individuals.
struct HitTable {
  int n = 0;
  Rational total_weight;                    // sum of the ensemble weights
  std::vector<int> individual_sizes;        // |C(T_k)| per individual
  std::unordered_map<Constituent, Rational, ConstituentHash> counts;

  Rational at(const Constituent& c) const {
    auto it = counts.find(c);
    return it == counts.end() ? Rational() : it->second;
  }

  bool all_individuals_binary() const {
    for (int s : individual_sizes) {
      if (s != 2 * n - 1) return false;
    }
    return true;
  }

  HitScorer scorer() const { return HitScorer{counts}; }
};

// counts(c) = sum of w_k over individuals whose tree contains c.
// Zero-weight individuals are accepted and contribute nothing, but must
// still share the sentence length. Throws on an empty ensemble, mismatched
// lengths, negative weights, or no positive weight.
HitTable build_hits(std::span<const ParseTree> individuals,
                    std::span<const Rational> weights);

// The per-size scorer used by the fixed-size engines when individuals may be
// non-binary: score(c) = sum_k w_k * [c in C(T_k)] / (node_count + |C(T_k)|).
// Requires n < node_count < 2n.
HitScorer weighted_hit_scorer(std::span<const ParseTree> individuals,
                              std::span<const Rational> weights,
                              int node_count);

}  // namespace treeavg
