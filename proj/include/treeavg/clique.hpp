#pragma once

#include <vector>

#include "treeavg/graph.hpp"

namespace treeavg {

// Objective over a clique Q. Normalized:
//   f(Q) = (sum of vertex weights + hit_offset) / (|Q| + size_offset)
// Unnormalized (binary-output search): sum of vertex weights + hit_offset.
struct CliqueObjective {
  bool normalized = true;
  Rational hit_offset;
  Rational size_offset;
};

enum class CliqueEngineTag { exhaustive, mitm };

struct CliqueSolution {
  std::vector<int> vertex_ids;        // ascending
  std::vector<Constituent> members;   // canonical order
  Rational score;                     // objective value of the clique
  CliqueEngineTag engine = CliqueEngineTag::exhaustive;
};

inline constexpr int kDefaultExhaustiveCap = 26;
inline constexpr int kDefaultMitmCap = 50;
inline constexpr size_t kDefaultMitmTableBudget = size_t{3} << 29;  // 1.5 GiB

// Enumerates every vertex subset. Ties break toward the smaller clique and
// then the canonically smallest vertex set. Throws ResourceError above the
// cap.
CliqueSolution clique_exhaustive(const CandidateGraph& graph,
                                 const CliqueObjective& objective,
                                 int cap = kDefaultExhaustiveCap);

// Meet-in-the-middle search: tabulates the best fixed-size cliques over one
// block of the vertices and enumerates cliques of the other. The blocks are
// as even as the table budget allows; a smaller table block trades memory
// for enumeration time. Identical result contract to clique_exhaustive,
// including tie-breaking. Throws ResourceError above the cap or when no
// feasible split exists; the dynamic-programming engine is the fallback.
CliqueSolution clique_mitm(const CandidateGraph& graph,
                           const CliqueObjective& objective,
                           int cap = kDefaultMitmCap,
                           size_t table_budget_bytes = kDefaultMitmTableBudget);

}  // namespace treeavg
