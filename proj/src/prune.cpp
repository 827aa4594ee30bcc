#include "treeavg/prune.hpp"

#include <algorithm>
#include <cassert>

namespace treeavg {

namespace {

// Core of the lower bound: min over j in [locked, 2n-2] of
// (sum of the j-locked smallest positive counts + locked_mass) / (j + 2n - 1).
// positive_counts must be ascending. j values requiring more counts than the
// pool offers correspond to trees larger than any realizable one and are
// skipped.
Rational lower_bound_core(std::vector<Rational> positive_counts, int locked,
                          const Rational& locked_mass, int n,
                          const Rational& fallback) {
  bool found = false;
  Rational best;
  Rational prefix;
  size_t available = positive_counts.size();
  for (int j = locked; j <= 2 * n - 2; ++j) {
    int need = j - locked;
    if (need > static_cast<int>(available)) break;
    if (need > 0) prefix += positive_counts[static_cast<size_t>(need - 1)];
    Rational value = (prefix + locked_mass) / Rational(j + 2 * n - 1);
    if (!found || value < best) {
      best = value;
      found = true;
    }
  }
  return found ? best : fallback;
}

}  // namespace

std::vector<Constituent> all_hit_set(const HitTable& hits) {
  std::vector<Constituent> out;
  for (const auto& [c, h] : hits.counts) {
    if (h == hits.total_weight) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), Constituent::canonical_less);
#ifndef NDEBUG
  for (size_t i = 0; i < out.size(); ++i) {
    for (size_t j = i + 1; j < out.size(); ++j) {
      assert(compatible(out[i], out[j]));
    }
  }
#endif
  return out;
}

Rational hit_lower_bound(const HitTable& hits,
                         std::span<const Constituent> must_include) {
  std::vector<Constituent> locked(must_include.begin(), must_include.end());
  std::sort(locked.begin(), locked.end(), Constituent::canonical_less);
  auto is_locked = [&](const Constituent& c) {
    return std::binary_search(locked.begin(), locked.end(), c,
                              Constituent::canonical_less);
  };
  Rational locked_mass;
  for (const auto& c : locked) locked_mass += hits.at(c);

  // The bound draws only on positive counts outside the locked set; that is
  // tighter than pooling everything and still sound.
  std::vector<Rational> lambda;
  for (const auto& [c, h] : hits.counts) {
    if (h.is_zero() || is_locked(c)) continue;
    lambda.push_back(h);
  }
  std::sort(lambda.begin(), lambda.end());
  return lower_bound_core(std::move(lambda), static_cast<int>(locked.size()),
                          locked_mass, hits.n, hits.total_weight);
}

PruneResult prune_candidates(const HitTable& hits, PruneMode mode,
                             bool iterate) {
  PruneResult result;
  if (mode != PruneMode::zero_hit) result.must_include = all_hit_set(hits);

  auto survivor_scan = [&](const Rational& threshold) {
    std::vector<Constituent> out;
    for (const auto& [c, h] : hits.counts) {
      if (h.is_zero()) continue;
      if (mode != PruneMode::zero_hit && h == hits.total_weight) continue;
      if (h > threshold) out.push_back(c);
    }
    std::sort(out.begin(), out.end(), Constituent::canonical_less);
    return out;
  };

  if (mode == PruneMode::full) {
    result.threshold = hit_lower_bound(hits, result.must_include);
    result.survivors = survivor_scan(result.threshold);
    while (iterate) {
      // Re-derive the bound from the survivor pool only.
      std::vector<Rational> lambda;
      Rational locked_mass;
      for (const auto& c : result.must_include) locked_mass += hits.at(c);
      for (const auto& c : result.survivors) lambda.push_back(hits.at(c));
      std::sort(lambda.begin(), lambda.end());
      Rational tighter = lower_bound_core(
          std::move(lambda), static_cast<int>(result.must_include.size()),
          locked_mass, hits.n, hits.total_weight);
      if (!(tighter > result.threshold)) break;
      result.threshold = tighter;
      auto next = survivor_scan(result.threshold);
      bool changed = next.size() != result.survivors.size();
      result.survivors = std::move(next);
      if (!changed) break;
    }
  } else {
    result.threshold = Rational();
    result.survivors = survivor_scan(result.threshold);
  }

  for (const auto& c : result.must_include) result.hit_offset += hits.at(c);
  result.size_offset = Rational(
      static_cast<Wide>(result.must_include.size()) + 2 * hits.n - 1);
  // Reduced-objective applicability: locked mass never exceeds W times the
  // size offset, since every locked constituent has hit count exactly W.
  assert(result.hit_offset <= hits.total_weight * result.size_offset);
  return result;
}

}  // namespace treeavg
