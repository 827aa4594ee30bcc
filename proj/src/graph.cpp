#include "treeavg/graph.hpp"

#include <algorithm>
#include <cassert>

namespace treeavg {

CandidateGraph build_graph(const PruneResult& pruned, const HitTable& hits) {
  CandidateGraph g;
  g.n = hits.n;
  g.vertices = pruned.survivors;
  size_t m = g.vertices.size();
  bool has_trivial = false;
  Constituent full = Constituent::span(0, std::max(hits.n, 1));
  for (const auto& c : g.vertices) {
    if (c.size() == 1 || c == full) has_trivial = true;
  }
  g.clique_size_bound = std::min(static_cast<int>(m),
                                 has_trivial ? 2 * hits.n - 1
                                             : std::max(0, hits.n - 2));
  g.weights.reserve(m);
  for (const auto& c : g.vertices) {
    Rational w = hits.at(c);
    // Strictly positive always; equal to the total weight only in the
    // zero-hit pruning variant, where all-hit candidates stay vertices.
    assert(!w.is_zero() && !w.is_negative() && w <= hits.total_weight);
    g.weights.push_back(w);
  }
  g.words_per_row = (m + 63) / 64;
  g.adjacency.assign(m * g.words_per_row, 0);
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = i + 1; j < m; ++j) {
      if (compatible(g.vertices[i], g.vertices[j])) {
        g.adjacency[i * g.words_per_row + (j >> 6)] |= uint64_t{1} << (j & 63);
        g.adjacency[j * g.words_per_row + (i >> 6)] |= uint64_t{1} << (i & 63);
      }
    }
  }
  return g;
}

}  // namespace treeavg
