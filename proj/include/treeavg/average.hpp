#pragma once

#include <span>

#include "treeavg/clique.hpp"
#include "treeavg/graph.hpp"
#include "treeavg/hits.hpp"
#include "treeavg/prune.hpp"
#include "treeavg/tree.hpp"

namespace treeavg {

enum class OutputMode { nonbinary, binary };
enum class Engine { mitm, exhaustive, dp };

struct AverageOptions {
  OutputMode mode = OutputMode::nonbinary;
  Engine engine = Engine::mitm;
  // 0 derives the fan-out cap from the individuals (dp engine only).
  int fan_out_cap = 0;
  int exhaustive_cap = kDefaultExhaustiveCap;
  int mitm_cap = kDefaultMitmCap;
  bool prune_iterate = false;
  PruneMode prune_mode = PruneMode::full;
};

// Joins the locked-in constituents with the clique's members and validates
// the result. Failure here is an engine defect, not bad input.
ParseTree assemble_tree(const CliqueSolution& solution,
                        const PruneResult& pruned, int n);

// Completes the tree to a binary one: every node with more than two children
// has them folded left to right in canonical order. The result's constituent
// set contains the input's, so its total hit count never drops.
ParseTree binarize(const ParseTree& tree, const HitTable& hits);

// The exact argmax of the weighted sum of F1 against the individuals; in
// binary mode, the exact argmax among binary trees. Binary individuals run
// through the clique engines (or the dp engine on request); non-binary
// individuals route to the dp engine regardless of the requested one.
ParseTree average_tree(std::span<const ParseTree> individuals,
                       std::span<const Rational> weights,
                       const AverageOptions& options = {});

}  // namespace treeavg
