#pragma once

// Test-only brute-force machinery, kept independent of every engine under
// test: trees are enumerated exhaustively and objectives recomputed from the
// definitions.

#include <span>
#include <vector>

#include "treeavg/hits.hpp"
#include "treeavg/tree.hpp"

namespace treeavg::oracle {

// Every non-empty subset of {0..n-1}.
std::vector<Constituent> all_constituents(int n);

// Every valid tree over n leaves, discontinuous constituents included.
// Exponential: keep n small (the suites use n <= 4).
std::vector<ParseTree> enumerate_trees(int n);

struct BruteResult {
  ParseTree tree;
  Rational objective;
};

// Exhaustive argmax of the weighted F1 sum; ties prefer fewer constituents,
// then the canonically smallest constituent set.
BruteResult brute_average(std::span<const ParseTree> individuals,
                          std::span<const Rational> weights);

// Exhaustive argmax of the score total among trees with exactly node_count
// constituents; same tie-breaking.
BruteResult brute_fixed_size(const HitScorer& scorer, int n, int node_count);

}  // namespace treeavg::oracle
