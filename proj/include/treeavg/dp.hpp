#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "treeavg/average.hpp"
#include "treeavg/hits.hpp"
#include "treeavg/tree.hpp"

namespace treeavg {

// All two-way partitions of c's word sequence into sub-constituents (first
// part owns c's first word), derived from alternation vectors: the words are
// cut into up to 2*fan_out_cap consecutive non-empty chunks which alternate
// between the two parts. Partitions where either part exceeds the fan-out
// cap are skipped. Requires |c| >= 2.
std::vector<std::pair<Constituent, Constituent>> enumerate_splits(
    const Constituent& c, int fan_out_cap);

// Exact search over trees whose constituents all have fan-out within the
// cap. Non-binary mode maximizes sum(score)/(|C|+2n-1); binary mode runs the
// simplified full-budget recursion and maximizes the plain score total among
// binary trees.
ParseTree dp_best_tree(const HitScorer& scorer, int n, int fan_out_cap,
                       OutputMode mode);

// Maximizes the plain score total with no size normalization (ties prefer
// fewer nodes). The binary-output pipeline binarizes this tree afterwards.
ParseTree dp_max_hits_tree(const HitScorer& scorer, int n, int fan_out_cap);

// The maximizer of the score total among trees with exactly node_count
// nodes. Requires n < node_count < 2n.
std::pair<ParseTree, Rational> dp_fixed_size(const HitScorer& scorer, int n,
                                             int fan_out_cap, int node_count);

// Exact ensemble objective argmax over fan-out-capped trees, valid even for
// non-binary individuals: solves the fixed-size problem under the per-size
// scorer for every admissible node count and keeps the best.
ParseTree dp_average_general(std::span<const ParseTree> individuals,
                             std::span<const Rational> weights,
                             int fan_out_cap);

// Test hook: the memoized tables from one non-binary solve, with scores
// rescaled to integers by `scale`. Budgets outside a state's feasible range
// hold kDpNegInf.
inline constexpr int64_t kDpNegInf = INT64_MIN / 4;

struct DpMemoEntry {
  Constituent constituent;
  int64_t self_score = 0;
  std::vector<int64_t> total;     // index = node budget
  std::vector<int64_t> excluded;  // best split sum, node itself not counted
};

struct DpMemoSnapshot {
  std::vector<DpMemoEntry> entries;
  Wide scale = 1;
};

DpMemoSnapshot dp_inspect(const HitScorer& scorer, int n, int fan_out_cap);

}  // namespace treeavg
