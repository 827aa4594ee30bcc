#include "treeavg/average.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

#include "treeavg/dp.hpp"
#include "treeavg/errors.hpp"

namespace treeavg {

ParseTree assemble_tree(const CliqueSolution& solution,
                        const PruneResult& pruned, int n) {
  std::vector<Constituent> set = pruned.must_include;
  set.insert(set.end(), solution.members.begin(), solution.members.end());
  if (!is_valid_tree(set, n)) {
    throw std::logic_error(
        "assembled constituent set is not a tree; engine defect");
  }
  return ParseTree::create(n, std::move(set));
}

ParseTree binarize(const ParseTree& tree, const HitTable& hits) {
  Hierarchy h = hierarchy(tree);
  const auto& cs = tree.constituents();
  std::vector<Constituent> out = cs;
  for (size_t v = 0; v < cs.size(); ++v) {
    const auto& kids = h.children[v];
    if (kids.size() <= 2) continue;
    // Fold children left to right; the final union is the node itself.
    Constituent acc = cs[static_cast<size_t>(kids[0])];
    for (size_t i = 1; i + 1 < kids.size(); ++i) {
      acc = acc.united(cs[static_cast<size_t>(kids[i])]);
      out.push_back(acc);
    }
  }
  ParseTree result = ParseTree::create(tree.n(), std::move(out), tree.labels(),
                                       tree.words());
  assert(result.is_binary());
#ifndef NDEBUG
  Rational before, after;
  for (const auto& c : tree.constituents()) before += hits.at(c);
  for (const auto& c : result.constituents()) after += hits.at(c);
  assert(after >= before);
#else
  (void)hits;
#endif
  return result;
}

namespace {

ParseTree solve_clique_pipeline(const HitTable& hits,
                                const AverageOptions& options) {
  PruneMode mode = options.mode == OutputMode::binary ? PruneMode::binary_output
                                                      : options.prune_mode;
  PruneResult pruned = prune_candidates(hits, mode, options.prune_iterate);
  CandidateGraph graph = build_graph(pruned, hits);
  CliqueObjective objective;
  objective.normalized = options.mode == OutputMode::nonbinary;
  objective.hit_offset = pruned.hit_offset;
  objective.size_offset = pruned.size_offset;
  CliqueSolution solution =
      options.engine == Engine::exhaustive
          ? clique_exhaustive(graph, objective, options.exhaustive_cap)
          : clique_mitm(graph, objective, options.mitm_cap);
  ParseTree tree = assemble_tree(solution, pruned, hits.n);
  if (options.mode == OutputMode::binary) tree = binarize(tree, hits);
  return tree;
}

int derive_fan_out_cap(std::span<const ParseTree> individuals,
                       const AverageOptions& options) {
  int needed = 1;
  for (const auto& t : individuals) needed = std::max(needed, t.max_fan_out());
  if (options.fan_out_cap == 0) return needed;
  if (options.fan_out_cap < needed) {
    // A tighter cap would silently restrict the search space below the
    // individuals' own constituents, losing the argmax contract.
    throw DataError("fan-out cap " + std::to_string(options.fan_out_cap) +
                    " is below the individuals' fan-out " +
                    std::to_string(needed));
  }
  return options.fan_out_cap;
}

ParseTree solve_dp_pipeline(std::span<const ParseTree> individuals,
                            std::span<const Rational> weights,
                            const HitTable& hits,
                            const AverageOptions& options) {
  int fan_out_cap = derive_fan_out_cap(individuals, options);
  int n = hits.n;
  if (options.mode == OutputMode::binary) {
    // Search with the plain total-hit objective and binarize afterwards:
    // every candidate with a positive score has fan-out within the cap, so
    // the bounded search reaches the unrestricted optimum, and fillers are
    // provably zero-hit.
    HitScorer scorer = hits.all_individuals_binary()
                           ? hits.scorer()
                           : weighted_hit_scorer(individuals, weights, 2 * n - 1);
    ParseTree best = dp_max_hits_tree(scorer, n, fan_out_cap);
    return binarize(best, hits);
  }
  if (hits.all_individuals_binary()) {
    return dp_best_tree(hits.scorer(), n, fan_out_cap, OutputMode::nonbinary);
  }
  return dp_average_general(individuals, weights, fan_out_cap);
}

}  // namespace

ParseTree average_tree(std::span<const ParseTree> individuals,
                       std::span<const Rational> weights,
                       const AverageOptions& options) {
  HitTable hits = build_hits(individuals, weights);
  if (hits.n == 1) return ParseTree::minimal(1);
  bool use_dp = options.engine == Engine::dp || !hits.all_individuals_binary();
  if (use_dp) return solve_dp_pipeline(individuals, weights, hits, options);
  return solve_clique_pipeline(hits, options);
}

}  // namespace treeavg
