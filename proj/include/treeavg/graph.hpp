#pragma once

#include <vector>

#include "treeavg/hits.hpp"
#include "treeavg/prune.hpp"

namespace treeavg {

// Compatibility graph over surviving candidates. Vertices keep the canonical
// order of the survivors; an edge means the two constituents can coexist in
// one tree. No self-loops are stored.
struct CandidateGraph {
  int n = 0;
  std::vector<Constituent> vertices;
  std::vector<Rational> weights;
  std::vector<uint64_t> adjacency;  // row-major bit matrix
  size_t words_per_row = 0;
  // Upper bound on any clique: a laminar family over n leaves has at most
  // 2n-1 members, n-2 when the trivial constituents are not candidates.
  // Solvers cap their size-indexed tables with it.
  int clique_size_bound = 0;

  size_t vertex_count() const { return vertices.size(); }

  bool edge(size_t i, size_t j) const {
    return (adjacency[i * words_per_row + (j >> 6)] >> (j & 63)) & 1u;
  }
};

CandidateGraph build_graph(const PruneResult& pruned, const HitTable& hits);

}  // namespace treeavg
