#include "treeavg/clique.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <limits>

#include "treeavg/errors.hpp"

namespace treeavg {

namespace {

constexpr int64_t kMinusInf = std::numeric_limits<int64_t>::min() / 4;
constexpr int kMitmMaxEnumeratedHalf = 28;  // 2^28 subsets is the slow-side cap

// Everything the search compares is rescaled once so the inner loops work on
// integers: vertex weights and the hit offset share the denominator scale;
// the size offset keeps its own, which cancels in cross-multiplied
// comparisons.
struct ScaledProblem {
  std::vector<int64_t> weights;
  int64_t hit_offset = 0;
  int64_t size_num = 0;    // size_offset numerator
  int64_t size_den = 1;    // size_offset denominator
  bool normalized = true;

  int64_t size_term(int clique_size) const {
    return static_cast<int64_t>(clique_size) * size_den + size_num;
  }
};

ScaledProblem scale_problem(const CandidateGraph& graph,
                            const CliqueObjective& objective) {
  Wide scale = 1;
  for (const auto& w : graph.weights) scale = wide_lcm(scale, w.den());
  scale = wide_lcm(scale, objective.hit_offset.den());
  if (scale > (Wide{1} << 40)) {
    throw ResourceError("weight denominators grew past the integer rescaling budget");
  }
  ScaledProblem p;
  p.normalized = objective.normalized;
  p.weights.reserve(graph.weights.size());
  for (const auto& w : graph.weights) {
    p.weights.push_back(static_cast<int64_t>(w.num() * (scale / w.den())));
  }
  p.hit_offset = static_cast<int64_t>(objective.hit_offset.num() *
                                      (scale / objective.hit_offset.den()));
  p.size_num = static_cast<int64_t>(objective.size_offset.num());
  p.size_den = static_cast<int64_t>(objective.size_offset.den());
  return p;
}

// Candidate ranking: higher objective, then fewer vertices, then the
// canonically smallest vertex set. Returns +1 when a beats b on the first
// two keys, -1 when it loses, 0 for a full tie (mask comparison pending).
int compare_keys(const ScaledProblem& p, int64_t num_a, int size_a,
                 int64_t num_b, int size_b) {
  if (p.normalized) {
    Wide lhs = static_cast<Wide>(num_a) * p.size_term(size_b);
    Wide rhs = static_cast<Wide>(num_b) * p.size_term(size_a);
    if (lhs != rhs) return lhs > rhs ? 1 : -1;
  } else {
    if (num_a != num_b) return num_a > num_b ? 1 : -1;
  }
  if (size_a != size_b) return size_a < size_b ? 1 : -1;
  return 0;
}

// Vertex ids follow the canonical constituent order, so the set containing
// the smallest id in the symmetric difference sorts first.
bool mask_canonical_less(uint64_t a, uint64_t b) {
  uint64_t diff = a ^ b;
  if (!diff) return false;
  return (a & (diff & (~diff + 1))) != 0;
}

Rational solution_score(const CliqueObjective& objective,
                        const CandidateGraph& graph, uint64_t mask) {
  Rational sum = objective.hit_offset;
  int size = 0;
  for (size_t v = 0; v < graph.vertex_count(); ++v) {
    if ((mask >> v) & 1u) {
      sum += graph.weights[v];
      ++size;
    }
  }
  if (!objective.normalized) return sum;
  return sum / (Rational(size) + objective.size_offset);
}

CliqueSolution make_solution(const CandidateGraph& graph,
                             const CliqueObjective& objective, uint64_t mask,
                             CliqueEngineTag tag) {
  CliqueSolution sol;
  sol.engine = tag;
  for (size_t v = 0; v < graph.vertex_count(); ++v) {
    if ((mask >> v) & 1u) {
      sol.vertex_ids.push_back(static_cast<int>(v));
      sol.members.push_back(graph.vertices[v]);
    }
  }
#ifndef NDEBUG
  for (size_t a = 0; a < sol.vertex_ids.size(); ++a) {
    for (size_t b = a + 1; b < sol.vertex_ids.size(); ++b) {
      assert(graph.edge(static_cast<size_t>(sol.vertex_ids[a]),
                        static_cast<size_t>(sol.vertex_ids[b])));
    }
  }
#endif
  sol.score = solution_score(objective, graph, mask);
  return sol;
}

std::vector<uint64_t> neighbor_masks(const CandidateGraph& graph) {
  size_t m = graph.vertex_count();
  std::vector<uint64_t> adj(m, 0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < m; ++j) {
      if (i != j && graph.edge(i, j)) adj[i] |= uint64_t{1} << j;
    }
  }
  return adj;
}

}  // namespace

CliqueSolution clique_exhaustive(const CandidateGraph& graph,
                                 const CliqueObjective& objective, int cap) {
  int m = static_cast<int>(graph.vertex_count());
  if (m > 62) {
    throw ResourceError("clique search is limited to 62 candidates; use the dp engine");
  }
  if (m > cap) {
    throw ResourceError("candidate graph has " + std::to_string(m) +
                        " vertices, above the exhaustive-search cap of " +
                        std::to_string(cap) +
                        "; use the meet-in-the-middle or dp engine");
  }
  ScaledProblem p = scale_problem(graph, objective);
  if (m == 0) {
    return make_solution(graph, objective, 0, CliqueEngineTag::exhaustive);
  }
  std::vector<uint64_t> adj = neighbor_masks(graph);

  size_t total = size_t{1} << m;
  std::vector<uint64_t> clique_bits((total + 63) / 64, 0);
  clique_bits[0] |= 1;  // empty set
  uint64_t best_mask = 0;
  int64_t best_num = p.hit_offset;
  int best_size = 0;

  for (uint64_t mask = 1; mask < total; ++mask) {
    uint64_t low = mask & (~mask + 1);
    uint64_t rest = mask ^ low;
    int u = std::countr_zero(low);
    bool is_clique = ((clique_bits[rest >> 6] >> (rest & 63)) & 1u) &&
                     (adj[static_cast<size_t>(u)] & rest) == rest;
    if (!is_clique) continue;
    clique_bits[mask >> 6] |= uint64_t{1} << (mask & 63);

    int64_t num = p.hit_offset;
    int size = 0;
    for (uint64_t bits = mask; bits;) {
      int v = std::countr_zero(bits);
      num += p.weights[static_cast<size_t>(v)];
      ++size;
      bits &= bits - 1;
    }
    int cmp = compare_keys(p, num, size, best_num, best_size);
    if (cmp > 0 || (cmp == 0 && mask_canonical_less(mask, best_mask))) {
      best_mask = mask;
      best_num = num;
      best_size = size;
    }
  }
  return make_solution(graph, objective, best_mask,
                       CliqueEngineTag::exhaustive);
}

namespace {

struct MitmTable {
  std::vector<int64_t> best;  // [mask * stride + j], j <= size_cap
  int size_cap = 0;
  uint64_t stride = 1;

  int64_t at(uint64_t mask, int j) const {
    return best[mask * stride + static_cast<uint64_t>(j)];
  }
};

// Rebuilds the clique stored at (mask, j) by replaying the fill decisions;
// must mirror the fill rule exactly (lowest vertex first, include wins ties)
// so the recovered clique is the canonically smallest maximum one.
uint64_t descend(const MitmTable& table, const std::vector<int64_t>& w1,
                 const std::vector<uint64_t>& adj1, uint64_t mask, int j) {
  uint64_t out = 0;
  while (j > 0) {
    assert(mask != 0);
    int u = std::countr_zero(mask);
    uint64_t bit = uint64_t{1} << u;
    int64_t sub = table.at(mask & adj1[static_cast<size_t>(u)], j - 1);
    int64_t incl = sub > kMinusInf ? w1[static_cast<size_t>(u)] + sub : kMinusInf;
    int64_t excl = table.at(mask ^ bit, j);
    if (incl >= excl && incl > kMinusInf) {
      out |= bit;
      mask &= adj1[static_cast<size_t>(u)];
      --j;
    } else {
      mask ^= bit;
    }
  }
  return out;
}

// Without normalization the clique size is only a tie-break, so the half
// table needs one cell per subset: best weight plus the size of the
// (weight-max, size-min, canonically smallest) clique attaining it.
struct TotalTable {
  std::vector<int64_t> weight;
  std::vector<uint8_t> size;

  // True when (wa, sa) is a better-or-equal outcome than (wb, sb); equality
  // of both keys reports true so the include branch wins full ties.
  static bool at_least(int64_t wa, int sa, int64_t wb, int sb) {
    if (wa != wb) return wa > wb;
    return sa <= sb;
  }
};

uint64_t descend_total(const TotalTable& table, const std::vector<int64_t>& w1,
                       const std::vector<uint64_t>& adj1, uint64_t mask) {
  uint64_t out = 0;
  while (mask != 0) {
    int u = std::countr_zero(mask);
    uint64_t bit = uint64_t{1} << u;
    uint64_t sub = mask & adj1[static_cast<size_t>(u)];
    uint64_t rest = mask ^ bit;
    int64_t incl_w = w1[static_cast<size_t>(u)] + table.weight[sub];
    int incl_s = 1 + table.size[sub];
    if (TotalTable::at_least(incl_w, incl_s, table.weight[rest],
                             table.size[rest])) {
      out |= bit;
      mask = sub;
    } else {
      mask = rest;
    }
  }
  return out;
}

}  // namespace

namespace {

// Unnormalized variant: one table cell per first-half subset.
CliqueSolution mitm_total(const CandidateGraph& graph,
                          const CliqueObjective& objective,
                          const ScaledProblem& p, size_t table_budget_bytes) {
  int m = static_cast<int>(graph.vertex_count());
  int half = (m + 1) / 2;
  while (half > 1 &&
         (size_t{1} << half) * (sizeof(int64_t) + 1) > table_budget_bytes) {
    --half;
  }
  int rest = m - half;
  size_t table_bytes = (size_t{1} << half) * (sizeof(int64_t) + 1);
  if (rest > kMitmMaxEnumeratedHalf || table_bytes > table_budget_bytes) {
    throw ResourceError(
        "meet-in-the-middle table would need " + std::to_string(table_bytes) +
        " bytes for " + std::to_string(m) + " candidates; use the dp engine");
  }

  std::vector<uint64_t> adj = neighbor_masks(graph);
  uint64_t half_all = (uint64_t{1} << half) - 1;
  std::vector<int64_t> w1(p.weights.begin(), p.weights.begin() + half);
  std::vector<uint64_t> adj1(static_cast<size_t>(half));
  for (int i = 0; i < half; ++i) {
    adj1[static_cast<size_t>(i)] = adj[static_cast<size_t>(i)] & half_all;
  }

  TotalTable table;
  table.weight.assign(size_t{1} << half, 0);
  table.size.assign(size_t{1} << half, 0);
  for (uint64_t mask = 1; mask <= half_all; ++mask) {
    int u = std::countr_zero(mask);
    uint64_t bit = uint64_t{1} << u;
    uint64_t sub = mask & adj1[static_cast<size_t>(u)];
    uint64_t remainder = mask ^ bit;
    int64_t incl_w = w1[static_cast<size_t>(u)] + table.weight[sub];
    int incl_s = 1 + table.size[sub];
    if (TotalTable::at_least(incl_w, incl_s, table.weight[remainder],
                             table.size[remainder])) {
      table.weight[mask] = incl_w;
      table.size[mask] = static_cast<uint8_t>(incl_s);
    } else {
      table.weight[mask] = table.weight[remainder];
      table.size[mask] = table.size[remainder];
    }
  }

  if (rest == 0) {
    return make_solution(graph, objective,
                         descend_total(table, w1, adj1, half_all),
                         CliqueEngineTag::mitm);
  }

  std::vector<int64_t> w2(p.weights.begin() + half, p.weights.end());
  std::vector<uint64_t> adj2(static_cast<size_t>(rest), 0);
  std::vector<uint64_t> nbr1(static_cast<size_t>(rest), 0);
  for (int j = 0; j < rest; ++j) {
    uint64_t full = adj[static_cast<size_t>(half + j)];
    nbr1[static_cast<size_t>(j)] = full & half_all;
    adj2[static_cast<size_t>(j)] = full >> half;
  }

  uint64_t rest_all = (uint64_t{1} << rest) - 1;
  std::vector<uint64_t> clique_bits(((size_t{1} << rest) + 63) / 64, 0);
  clique_bits[0] |= 1;

  int64_t best_num = p.hit_offset + table.weight[half_all];
  int best_size = table.size[half_all];
  uint64_t best_mask2 = 0;
  uint64_t best_common = half_all;
  bool best_have_mask = false;
  uint64_t best_mask = 0;

  for (uint64_t mask2 = 1; mask2 <= rest_all; ++mask2) {
    uint64_t low = mask2 & (~mask2 + 1);
    uint64_t sub = mask2 ^ low;
    int u = std::countr_zero(low);
    bool ok = ((clique_bits[sub >> 6] >> (sub & 63)) & 1u) &&
              (adj2[static_cast<size_t>(u)] & sub) == sub;
    if (!ok) continue;
    clique_bits[mask2 >> 6] |= uint64_t{1} << (mask2 & 63);

    int64_t w2sum = 0;
    int size2 = 0;
    uint64_t common = half_all;
    for (uint64_t bits = mask2; bits;) {
      int v = std::countr_zero(bits);
      w2sum += w2[static_cast<size_t>(v)];
      common &= nbr1[static_cast<size_t>(v)];
      ++size2;
      bits &= bits - 1;
    }
    int64_t num = w2sum + table.weight[common] + p.hit_offset;
    int size = size2 + table.size[common];
    int cmp = compare_keys(p, num, size, best_num, best_size);
    if (cmp < 0) continue;
    if (cmp == 0) {
      if (!best_have_mask) {
        best_mask = descend_total(table, w1, adj1, best_common) |
                    (best_mask2 << half);
        best_have_mask = true;
      }
      uint64_t cand =
          descend_total(table, w1, adj1, common) | (mask2 << half);
      if (!mask_canonical_less(cand, best_mask)) continue;
      best_mask = cand;
      best_num = num;
      best_size = size;
      best_mask2 = mask2;
      best_common = common;
      continue;
    }
    best_num = num;
    best_size = size;
    best_mask2 = mask2;
    best_common = common;
    best_have_mask = false;
  }

  if (!best_have_mask) {
    best_mask =
        descend_total(table, w1, adj1, best_common) | (best_mask2 << half);
  }
  return make_solution(graph, objective, best_mask, CliqueEngineTag::mitm);
}

}  // namespace

CliqueSolution clique_mitm(const CandidateGraph& graph,
                           const CliqueObjective& objective, int cap,
                           size_t table_budget_bytes) {
  int m = static_cast<int>(graph.vertex_count());
  if (m > 62) {
    throw ResourceError("clique search is limited to 62 candidates; use the dp engine");
  }
  if (m > cap) {
    throw ResourceError("candidate graph has " + std::to_string(m) +
                        " vertices, above the meet-in-the-middle cap of " +
                        std::to_string(cap) + "; use the dp engine");
  }
  ScaledProblem p = scale_problem(graph, objective);
  if (m == 0) {
    return make_solution(graph, objective, 0, CliqueEngineTag::mitm);
  }
  if (!p.normalized) return mitm_total(graph, objective, p, table_budget_bytes);

  // The canonical-first block gets as close to an even split as the table
  // budget allows; shrinking it trades memory (2^|V1| cells) for
  // enumeration time (2^|V2| subsets).
  auto stride_for = [&](int k) {
    int size_cap = graph.clique_size_bound > 0
                       ? std::min(k, graph.clique_size_bound)
                       : k;
    return static_cast<size_t>(size_cap + 1);
  };
  int half = (m + 1) / 2;
  while (half > 1 && (size_t{1} << half) * stride_for(half) * sizeof(int64_t) >
                         table_budget_bytes) {
    --half;
  }
  int rest = m - half;
  if (rest > kMitmMaxEnumeratedHalf) {
    throw ResourceError(
        "meet-in-the-middle cannot fit " + std::to_string(m) +
        " candidates in the table budget; use the dp engine");
  }
  int size_cap = static_cast<int>(stride_for(half)) - 1;

  std::vector<uint64_t> adj = neighbor_masks(graph);
  uint64_t half_all = (half == 64) ? ~uint64_t{0} : (uint64_t{1} << half) - 1;
  std::vector<int64_t> w1(p.weights.begin(), p.weights.begin() + half);
  std::vector<uint64_t> adj1(static_cast<size_t>(half));
  for (int i = 0; i < half; ++i) adj1[static_cast<size_t>(i)] = adj[static_cast<size_t>(i)] & half_all;

  // Best j-vertex clique weight inside every subset of the first half.
  MitmTable table;
  table.size_cap = size_cap;
  table.stride = static_cast<uint64_t>(size_cap + 1);
  table.best.assign((size_t{1} << half) * table.stride, kMinusInf);
  table.best[0] = 0;
  for (uint64_t mask = 1; mask <= half_all; ++mask) {
    size_t base = mask * table.stride;
    table.best[base] = 0;
    int u = std::countr_zero(mask);
    uint64_t bit = uint64_t{1} << u;
    size_t excl_base = (mask ^ bit) * table.stride;
    size_t incl_base = (mask & adj1[static_cast<size_t>(u)]) * table.stride;
    int limit = std::min(std::popcount(mask), size_cap);
    for (int j = 1; j <= limit; ++j) {
      int64_t sub = table.best[incl_base + static_cast<size_t>(j - 1)];
      int64_t incl =
          sub > kMinusInf ? w1[static_cast<size_t>(u)] + sub : kMinusInf;
      int64_t excl = table.best[excl_base + static_cast<size_t>(j)];
      table.best[base + static_cast<size_t>(j)] = std::max(incl, excl);
    }
  }

  // Second half: enumerate its cliques; each pairs with the best fixed-size
  // completion among the first-half vertices adjacent to all of it.
  std::vector<int64_t> w2(p.weights.begin() + half, p.weights.end());
  std::vector<uint64_t> adj2(static_cast<size_t>(rest), 0);
  std::vector<uint64_t> nbr1(static_cast<size_t>(rest), 0);
  for (int j = 0; j < rest; ++j) {
    uint64_t full = adj[static_cast<size_t>(half + j)];
    nbr1[static_cast<size_t>(j)] = full & half_all;
    adj2[static_cast<size_t>(j)] = full >> half;
  }

  uint64_t rest_all = (uint64_t{1} << rest) - 1;
  std::vector<uint64_t> clique_bits(((size_t{1} << rest) + 63) / 64, 0);
  clique_bits[0] |= 1;

  struct Incumbent {
    int64_t num;
    int size;
    uint64_t mask2 = 0;
    uint64_t nbr = 0;
    int j = 0;
    bool has_mask = false;
    uint64_t full_mask = 0;
  };
  Incumbent best{p.hit_offset, 0, 0, half_all, 0, true, 0};

  auto full_mask_of = [&](const Incumbent& c) {
    uint64_t m1 = descend(table, w1, adj1, c.nbr, c.j);
    return m1 | (c.mask2 << half);
  };

  for (uint64_t mask2 = 0; mask2 <= rest_all && rest > 0; ++mask2) {
    if (mask2 != 0) {
      uint64_t low = mask2 & (~mask2 + 1);
      uint64_t sub = mask2 ^ low;
      int u = std::countr_zero(low);
      bool ok = ((clique_bits[sub >> 6] >> (sub & 63)) & 1u) &&
                (adj2[static_cast<size_t>(u)] & sub) == sub;
      if (!ok) continue;
      clique_bits[mask2 >> 6] |= uint64_t{1} << (mask2 & 63);
    }
    int64_t w2sum = 0;
    int size2 = 0;
    uint64_t common = half_all;
    for (uint64_t bits = mask2; bits;) {
      int v = std::countr_zero(bits);
      w2sum += w2[static_cast<size_t>(v)];
      common &= nbr1[static_cast<size_t>(v)];
      ++size2;
      bits &= bits - 1;
    }
    size_t base = common * table.stride;
    for (int j = 0; j <= size_cap; ++j) {
      int64_t bw = table.best[base + static_cast<size_t>(j)];
      if (bw <= kMinusInf) continue;
      int64_t num = w2sum + bw + p.hit_offset;
      int size = size2 + j;
      int cmp = compare_keys(p, num, size, best.num, best.size);
      if (cmp < 0) continue;
      if (cmp == 0) {
        if (!best.has_mask) {
          best.full_mask = full_mask_of(best);
          best.has_mask = true;
        }
        Incumbent cand{num, size, mask2, common, j, false, 0};
        cand.full_mask = full_mask_of(cand);
        if (!mask_canonical_less(cand.full_mask, best.full_mask)) continue;
        cand.has_mask = true;
        best = cand;
        continue;
      }
      best = Incumbent{num, size, mask2, common, j, false, 0};
    }
  }

  if (rest == 0) {
    // Degenerate split (single vertex): the whole graph sits in the table.
    int best_j = 0;
    int64_t best_num = p.hit_offset;
    for (int j = 0; j <= size_cap; ++j) {
      int64_t bw = table.at(half_all, j);
      if (bw <= kMinusInf) continue;
      int64_t num = bw + p.hit_offset;
      if (compare_keys(p, num, j, best_num, best_j) > 0) {
        best_num = num;
        best_j = j;
      }
    }
    uint64_t mask = descend(table, w1, adj1, half_all, best_j);
    return make_solution(graph, objective, mask, CliqueEngineTag::mitm);
  }

  if (!best.has_mask) best.full_mask = full_mask_of(best);
  return make_solution(graph, objective, best.full_mask,
                       CliqueEngineTag::mitm);
}

}  // namespace treeavg
