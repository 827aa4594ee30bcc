#include "treeavg/dp.hpp"

#include <algorithm>
#include <cassert>
#include <memory>
#include <stdexcept>
#include <unordered_map>

#include "treeavg/errors.hpp"

namespace treeavg {

namespace {

// Sentence-length guards per fan-out cap; the table blows up as n^(2F), so
// the dp engine is for short sentences and cross-checks. Index by fan-out.
constexpr int kDpLeafGuard[4] = {0, 96, 18, 12};

void check_dp_limits(int n, int fan_out_cap) {
  if (fan_out_cap < 1 || fan_out_cap > 3) {
    throw DataError("dp engine supports fan-out caps 1 to 3");
  }
  if (n > kDpLeafGuard[fan_out_cap]) {
    throw ResourceError("dp engine is capped at " +
                        std::to_string(kDpLeafGuard[fan_out_cap]) +
                        " leaves for fan-out " + std::to_string(fan_out_cap) +
                        "; use the meet-in-the-middle engine");
  }
}

// Scores rescaled to a shared integer scale so the inner loops stay in
// int64; only the final across-size comparison goes back to rationals.
struct ScaledScorer {
  std::unordered_map<Constituent, int64_t, ConstituentHash> values;
  Wide scale = 1;

  static ScaledScorer build(const HitScorer& scorer) {
    ScaledScorer s;
    for (const auto& [c, v] : scorer.values) {
      if (v.is_negative()) throw DataError("dp scorer must be non-negative");
      s.scale = wide_lcm(s.scale, v.den());
    }
    if (s.scale > (Wide{1} << 40)) {
      throw ResourceError("scorer denominators grew past the integer rescaling budget");
    }
    for (const auto& [c, v] : scorer.values) {
      if (v.is_zero()) continue;
      s.values.emplace(c, static_cast<int64_t>(v.num() * (s.scale / v.den())));
    }
    return s;
  }

  int64_t at(const Constituent& c) const {
    auto it = values.find(c);
    return it == values.end() ? 0 : it->second;
  }
};

struct Entry {
  int leaf_count = 0;
  int64_t self_score = 0;
  // Indexed by node budget, 0..2|c|-1; kDpNegInf outside [|c|, 2|c|-1].
  std::vector<int64_t> total;
  std::vector<int64_t> excluded;
  std::vector<uint8_t> include_self;
  std::vector<int32_t> split_choice;
  std::vector<int32_t> split_share;  // budget handed to the first part
  std::vector<std::pair<Constituent, Constituent>> splits;
};

class DpSolver {
 public:
  DpSolver(const HitScorer& scorer, int n, int fan_out_cap)
      : n_(n), fan_out_cap_(fan_out_cap), scorer_(ScaledScorer::build(scorer)) {
    check_dp_limits(n, fan_out_cap);
  }

  const Entry& solve_root() { return compute(Constituent::span(0, n_)); }

  ParseTree backtrack_tree(int budget) {
    std::vector<Constituent> set;
    backtrack(Constituent::span(0, n_), budget, set);
    try {
      return ParseTree::create(n_, std::move(set));
    } catch (const DataError&) {
      throw std::logic_error("dp engine produced an invalid tree; engine defect");
    }
  }

  Wide scale() const { return scorer_.scale; }

  const std::unordered_map<Constituent, std::unique_ptr<Entry>,
                           ConstituentHash>&
  memo() const {
    return memo_;
  }

 private:
  const Entry& compute(const Constituent& c) {
    auto it = memo_.find(c);
    if (it != memo_.end()) return *it->second;

    auto entry = std::make_unique<Entry>();
    Entry& e = *entry;
    int m = c.size();
    e.leaf_count = m;
    e.self_score = scorer_.at(c);
    e.total.assign(static_cast<size_t>(2 * m), kDpNegInf);
    e.excluded.assign(static_cast<size_t>(2 * m), kDpNegInf);
    e.include_self.assign(static_cast<size_t>(2 * m), 0);
    e.split_choice.assign(static_cast<size_t>(2 * m), -1);
    e.split_share.assign(static_cast<size_t>(2 * m), -1);

    if (m == 1) {
      e.total[1] = e.self_score;
      e.include_self[1] = 1;
      return *memo_.emplace(c, std::move(entry)).first->second;
    }

    e.splits = enumerate_splits(c, fan_out_cap_);
    std::vector<const Entry*> left(e.splits.size());
    std::vector<const Entry*> right(e.splits.size());
    for (size_t s = 0; s < e.splits.size(); ++s) {
      left[s] = &compute(e.splits[s].first);
      right[s] = &compute(e.splits[s].second);
    }

    for (int budget = m; budget <= 2 * m - 1; ++budget) {
      int64_t best = kDpNegInf;
      int32_t choice = -1;
      int32_t share = -1;
      for (size_t s = 0; s < e.splits.size(); ++s) {
        int mo = left[s]->leaf_count;
        int me = right[s]->leaf_count;
        int lo = std::max(mo, budget - (2 * me - 1));
        int hi = std::min(2 * mo - 1, budget - me);
        for (int give = lo; give <= hi; ++give) {
          int64_t value = left[s]->total[static_cast<size_t>(give)] +
                          right[s]->total[static_cast<size_t>(budget - give)];
          if (value > best) {
            best = value;
            choice = static_cast<int32_t>(s);
            share = give;
          }
        }
      }
      size_t b = static_cast<size_t>(budget);
      e.excluded[b] = best;
      e.split_choice[b] = choice;
      e.split_share[b] = share;
      int64_t prev = e.excluded[b - 1];
      int64_t incl = prev > kDpNegInf ? prev + e.self_score : kDpNegInf;
      // Ties keep the node: the root must stay includable at no cost.
      if (incl > kDpNegInf && incl >= best) {
        e.total[b] = incl;
        e.include_self[b] = 1;
      } else {
        e.total[b] = best;
      }
    }
    return *memo_.emplace(c, std::move(entry)).first->second;
  }

  void backtrack(const Constituent& c, int budget,
                 std::vector<Constituent>& out) {
    const Entry& e = *memo_.at(c);
    assert(budget >= e.leaf_count && budget <= 2 * e.leaf_count - 1);
    size_t b = static_cast<size_t>(budget);
    if (e.include_self[b]) {
      out.push_back(c);
      if (e.leaf_count == 1) return;
      --budget;
      b = static_cast<size_t>(budget);
    }
    int32_t choice = e.split_choice[b];
    int32_t share = e.split_share[b];
    assert(choice >= 0 && share >= 0);
    backtrack(e.splits[static_cast<size_t>(choice)].first, share, out);
    backtrack(e.splits[static_cast<size_t>(choice)].second, budget - share,
              out);
  }

  int n_;
  int fan_out_cap_;
  ScaledScorer scorer_;
  std::unordered_map<Constituent, std::unique_ptr<Entry>, ConstituentHash>
      memo_;
};

// Binary output restricted to the cap: full budget at every node, node always
// counted, so only the split choice remains.
class BinaryDpSolver {
 public:
  BinaryDpSolver(const HitScorer& scorer, int n, int fan_out_cap)
      : n_(n), fan_out_cap_(fan_out_cap), scorer_(ScaledScorer::build(scorer)) {
    check_dp_limits(n, fan_out_cap);
  }

  ParseTree solve() {
    compute(Constituent::span(0, n_));
    std::vector<Constituent> set;
    backtrack(Constituent::span(0, n_), set);
    try {
      return ParseTree::create(n_, std::move(set));
    } catch (const DataError&) {
      throw std::logic_error("dp engine produced an invalid tree; engine defect");
    }
  }

 private:
  struct Node {
    int64_t value = 0;
    int32_t choice = -1;
    std::vector<std::pair<Constituent, Constituent>> splits;
  };

  const Node& compute(const Constituent& c) {
    auto it = memo_.find(c);
    if (it != memo_.end()) return *it->second;
    auto node = std::make_unique<Node>();
    node->value = scorer_.at(c);
    if (c.size() >= 2) {
      node->splits = enumerate_splits(c, fan_out_cap_);
      int64_t best = kDpNegInf;
      for (size_t s = 0; s < node->splits.size(); ++s) {
        int64_t v = compute(node->splits[s].first).value +
                    compute(node->splits[s].second).value;
        if (v > best) {
          best = v;
          node->choice = static_cast<int32_t>(s);
        }
      }
      node->value += best;
    }
    return *memo_.emplace(c, std::move(node)).first->second;
  }

  void backtrack(const Constituent& c, std::vector<Constituent>& out) {
    const Node& node = *memo_.at(c);
    out.push_back(c);
    if (node.choice < 0) return;
    backtrack(node.splits[static_cast<size_t>(node.choice)].first, out);
    backtrack(node.splits[static_cast<size_t>(node.choice)].second, out);
  }

  int n_;
  int fan_out_cap_;
  ScaledScorer scorer_;
  std::unordered_map<Constituent, std::unique_ptr<Node>, ConstituentHash>
      memo_;
};

}  // namespace

std::vector<std::pair<Constituent, Constituent>> enumerate_splits(
    const Constituent& c, int fan_out_cap) {
  std::vector<int> words = c.indices();
  int m = static_cast<int>(words.size());
  if (m < 2) throw DataError("cannot split a constituent of fewer than 2 words");

  std::vector<std::pair<Constituent, Constituent>> out;
  std::vector<int> first_part, second_part;
  auto emit = [&](const std::vector<int>& cuts) {
    first_part.clear();
    second_part.clear();
    int begin = 0;
    for (size_t chunk = 0; chunk <= cuts.size(); ++chunk) {
      int end = chunk < cuts.size() ? cuts[chunk] : m;
      auto& side = (chunk % 2 == 0) ? first_part : second_part;
      for (int i = begin; i < end; ++i) side.push_back(words[static_cast<size_t>(i)]);
      begin = end;
    }
    Constituent a = Constituent::from_indices(first_part);
    Constituent b = Constituent::from_indices(second_part);
    if (a.fan_out() <= fan_out_cap && b.fan_out() <= fan_out_cap) {
      out.emplace_back(std::move(a), std::move(b));
    }
  };

  for (int chunks = 2; chunks <= 2 * fan_out_cap; ++chunks) {
    int inner = chunks - 1;
    if (inner > m - 1) break;
    std::vector<int> cuts(static_cast<size_t>(inner));
    for (int i = 0; i < inner; ++i) cuts[static_cast<size_t>(i)] = i + 1;
    while (true) {
      emit(cuts);
      // Next strictly increasing cut vector over [1, m-1].
      int i = inner - 1;
      while (i >= 0 && cuts[static_cast<size_t>(i)] == m - 1 - (inner - 1 - i)) --i;
      if (i < 0) break;
      ++cuts[static_cast<size_t>(i)];
      for (int k = i + 1; k < inner; ++k) {
        cuts[static_cast<size_t>(k)] = cuts[static_cast<size_t>(k - 1)] + 1;
      }
    }
  }
  return out;
}

ParseTree dp_best_tree(const HitScorer& scorer, int n, int fan_out_cap,
                       OutputMode mode) {
  if (n == 1) return ParseTree::minimal(1);
  if (mode == OutputMode::binary) {
    BinaryDpSolver solver(scorer, n, fan_out_cap);
    return solver.solve();
  }
  DpSolver solver(scorer, n, fan_out_cap);
  const Entry& root = solver.solve_root();
  int best_budget = -1;
  for (int budget = n + 1; budget <= 2 * n - 1; ++budget) {
    if (root.total[static_cast<size_t>(budget)] <= kDpNegInf) continue;
    if (best_budget < 0) {
      best_budget = budget;
      continue;
    }
    Wide lhs = static_cast<Wide>(root.total[static_cast<size_t>(budget)]) *
               (best_budget + 2 * n - 1);
    Wide rhs = static_cast<Wide>(root.total[static_cast<size_t>(best_budget)]) *
               (budget + 2 * n - 1);
    if (lhs > rhs) best_budget = budget;
  }
  assert(best_budget > 0);
  return solver.backtrack_tree(best_budget);
}

ParseTree dp_max_hits_tree(const HitScorer& scorer, int n, int fan_out_cap) {
  if (n == 1) return ParseTree::minimal(1);
  DpSolver solver(scorer, n, fan_out_cap);
  const Entry& root = solver.solve_root();
  int best_budget = -1;
  for (int budget = n + 1; budget <= 2 * n - 1; ++budget) {
    int64_t v = root.total[static_cast<size_t>(budget)];
    if (v <= kDpNegInf) continue;
    if (best_budget < 0 || v > root.total[static_cast<size_t>(best_budget)]) {
      best_budget = budget;
    }
  }
  assert(best_budget > 0);
  return solver.backtrack_tree(best_budget);
}

std::pair<ParseTree, Rational> dp_fixed_size(const HitScorer& scorer, int n,
                                             int fan_out_cap, int node_count) {
  if (node_count <= n || node_count >= 2 * n) {
    throw DataError("node count " + std::to_string(node_count) +
                    " outside the open range (" + std::to_string(n) + ", " +
                    std::to_string(2 * n) + ")");
  }
  DpSolver solver(scorer, n, fan_out_cap);
  const Entry& root = solver.solve_root();
  int64_t value = root.total[static_cast<size_t>(node_count)];
  if (value <= kDpNegInf) {
    throw std::logic_error("no tree of the requested size; engine defect");
  }
  return {solver.backtrack_tree(node_count), Rational(value, solver.scale())};
}

ParseTree dp_average_general(std::span<const ParseTree> individuals,
                             std::span<const Rational> weights,
                             int fan_out_cap) {
  if (individuals.empty()) throw DataError("empty ensemble");
  int n = individuals.front().n();
  if (n == 1) return ParseTree::minimal(1);
  bool found = false;
  ParseTree best;
  Rational best_objective;
  for (int node_count = n + 1; node_count <= 2 * n - 1; ++node_count) {
    HitScorer scorer = weighted_hit_scorer(individuals, weights, node_count);
    auto [tree, total] = dp_fixed_size(scorer, n, fan_out_cap, node_count);
    Rational objective = Rational(2) * total;
    assert(objective == sum_f1_objective(tree, individuals, weights));
    if (!found || objective > best_objective) {
      best = std::move(tree);
      best_objective = objective;
      found = true;
    }
  }
  return best;
}

DpMemoSnapshot dp_inspect(const HitScorer& scorer, int n, int fan_out_cap) {
  DpSolver solver(scorer, n, fan_out_cap);
  solver.solve_root();
  DpMemoSnapshot snap;
  snap.scale = solver.scale();
  for (const auto& [c, entry] : solver.memo()) {
    DpMemoEntry e;
    e.constituent = c;
    e.self_score = entry->self_score;
    e.total = entry->total;
    e.excluded = entry->excluded;
    snap.entries.push_back(std::move(e));
  }
  std::sort(snap.entries.begin(), snap.entries.end(),
            [](const DpMemoEntry& a, const DpMemoEntry& b) {
              return Constituent::canonical_less(a.constituent, b.constituent);
            });
  return snap;
}

}  // namespace treeavg
