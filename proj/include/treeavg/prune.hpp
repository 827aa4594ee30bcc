#pragma once

#include <span>
#include <vector>

#include "treeavg/hits.hpp"

namespace treeavg {

enum class PruneMode {
  // Must-include all-hit constituents plus the hit-count lower bound.
  full,
  // Keep every positive-hit constituent as a candidate; nothing locked in.
  // Used by the pruning-safety cross-checks.
  zero_hit,
  // For binary-output search: the lower bound does not apply to the
  // unnormalized objective, but all-hit constituents are still locked in.
  binary_output,
};

// Outcome of candidate pruning. The average tree's constituents are exactly
// must_include plus some subset of survivors; hit_offset/size_offset are the
// constants of the reduced clique objective.
struct PruneResult {
  std::vector<Constituent> must_include;  // canonical order
  std::vector<Constituent> survivors;     // canonical order
  Rational threshold;                     // survivors satisfy h(c) > threshold
  Rational hit_offset;                    // total hits of must_include
  Rational size_offset;                   // |must_include| + 2n - 1
};

// Constituents hit by every individual: {c : h(c) = W}. Always contains the
// n+1 trivial constituents and is pairwise compatible. Canonical order.
std::vector<Constituent> all_hit_set(const HitTable& hits);

// The hit-count lower bound given a set of constituents known to be in the
// average tree: any other constituent of the average tree has a hit count
// strictly above the returned value. must_include must be a subset of the
// all-hit set (or empty). Returns W when no tree can extend must_include.
Rational hit_lower_bound(const HitTable& hits,
                         std::span<const Constituent> must_include);

// With iterate set, the lower bound is re-derived from the surviving
// candidates until a fixpoint; candidates pruned earlier are provably absent
// from the average tree, so shrinking the positive-hit pool stays sound.
PruneResult prune_candidates(const HitTable& hits,
                             PruneMode mode = PruneMode::full,
                             bool iterate = false);

}  // namespace treeavg
