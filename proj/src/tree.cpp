#include "treeavg/tree.hpp"

#include <algorithm>
#include <cassert>

#include "treeavg/errors.hpp"

namespace treeavg {

ParseTree ParseTree::create(int n, std::vector<Constituent> constituents,
                            LabelMap labels, std::vector<std::string> words) {
  if (n < 1) throw DataError("sentence length must be at least 1");
  if (n > kMaxSentenceLength) {
    throw DataError("sentence length " + std::to_string(n) +
                    " exceeds the supported maximum of " +
                    std::to_string(kMaxSentenceLength));
  }
  std::sort(constituents.begin(), constituents.end(),
            Constituent::canonical_less);
  constituents.erase(std::unique(constituents.begin(), constituents.end()),
                     constituents.end());
  if (!is_valid_tree(constituents, n)) {
    throw DataError("constituent set is not a valid tree over " +
                    std::to_string(n) + " leaves");
  }
  if (!words.empty() && static_cast<int>(words.size()) != n) {
    throw DataError("token list length does not match sentence length");
  }
  ParseTree t;
  t.n_ = n;
  t.constituents_ = std::move(constituents);
  t.labels_ = std::move(labels);
  t.words_ = std::move(words);
  return t;
}

ParseTree ParseTree::minimal(int n) {
  std::vector<Constituent> cs;
  for (int i = 0; i < n; ++i) cs.push_back(Constituent::single(i));
  if (n > 1) cs.push_back(Constituent::span(0, n));
  return create(n, std::move(cs));
}

bool ParseTree::contains(const Constituent& c) const {
  return std::binary_search(constituents_.begin(), constituents_.end(), c,
                            Constituent::canonical_less);
}

int ParseTree::max_fan_out() const {
  int best = 1;
  for (const auto& c : constituents_) best = std::max(best, c.fan_out());
  return best;
}

Constituent ParseTree::root() const { return Constituent::span(0, n_); }

std::optional<std::string> ParseTree::label_of(const Constituent& c) const {
  auto it = labels_.find(c);
  if (it == labels_.end()) return std::nullopt;
  return it->second;
}

bool is_valid_tree(std::span<const Constituent> constituents, int n) {
  if (n < 1) return false;
  std::vector<char> has_single(static_cast<size_t>(n), 0);
  bool has_root = false;
  Constituent full = Constituent::span(0, n);
  for (const auto& c : constituents) {
    if (c.empty() || c.max_leaf() >= n) return false;
    if (c.size() == 1) has_single[static_cast<size_t>(c.min_leaf())] = 1;
    if (c == full) has_root = true;
  }
  if (!has_root) return false;
  for (char h : has_single) {
    if (!h) return false;
  }
  for (size_t i = 0; i < constituents.size(); ++i) {
    for (size_t j = i + 1; j < constituents.size(); ++j) {
      if (constituents[i] == constituents[j]) return false;
      if (!compatible(constituents[i], constituents[j])) return false;
    }
  }
  return true;
}

Hierarchy hierarchy(const ParseTree& tree) {
  const auto& cs = tree.constituents();
  size_t m = cs.size();
  Hierarchy h;
  h.parent.assign(m, -1);
  h.children.assign(m, {});

  // The strict supersets of any constituent form a chain, so the parent is
  // the one of minimal size.
  for (size_t i = 0; i < m; ++i) {
    int best = -1;
    int best_size = kMaxSentenceLength + 1;
    for (size_t j = 0; j < m; ++j) {
      if (i == j) continue;
      if (cs[j].size() > cs[i].size() && cs[j].contains(cs[i]) &&
          cs[j].size() < best_size) {
        best = static_cast<int>(j);
        best_size = cs[j].size();
      }
    }
    h.parent[i] = best;
    if (best < 0) {
      assert(h.root == -1);
      h.root = static_cast<int>(i);
    }
  }
  for (size_t i = 0; i < m; ++i) {
    if (h.parent[i] >= 0) h.children[static_cast<size_t>(h.parent[i])].push_back(static_cast<int>(i));
  }
  for (auto& kids : h.children) {
    std::sort(kids.begin(), kids.end(), [&](int a, int b) {
      return cs[static_cast<size_t>(a)].min_leaf() <
             cs[static_cast<size_t>(b)].min_leaf();
    });
  }
  return h;
}

Rational pairwise_f1(const ParseTree& predicted, const ParseTree& reference) {
  if (predicted.n() != reference.n()) {
    throw DataError("cannot compute F1 between trees of different lengths");
  }
  const auto& a = predicted.constituents();
  const auto& b = reference.constituents();
  size_t i = 0, j = 0;
  long long shared = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++shared;
      ++i;
      ++j;
    } else if (Constituent::canonical_less(a[i], b[j])) {
      ++i;
    } else {
      ++j;
    }
  }
  return Rational(2 * shared,
                  static_cast<Wide>(a.size()) + static_cast<Wide>(b.size()));
}

Rational sum_f1_objective(const ParseTree& tree,
                          std::span<const ParseTree> individuals,
                          std::span<const Rational> weights) {
  if (individuals.size() != weights.size()) {
    throw DataError("ensemble has " + std::to_string(individuals.size()) +
                    " individuals but " + std::to_string(weights.size()) +
                    " weights");
  }
  Rational total;
  for (size_t k = 0; k < individuals.size(); ++k) {
    if (weights[k].is_zero()) continue;
    total += weights[k] * pairwise_f1(tree, individuals[k]);
  }
  return total;
}

bool tree_set_less(const std::vector<Constituent>& a,
                   const std::vector<Constituent>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                      Constituent::canonical_less);
}

}  // namespace treeavg
