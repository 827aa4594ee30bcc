#pragma once

// Shared fixtures for the test suites.

#include <vector>

#include "treeavg/tree.hpp"

namespace treeavg::testing {

inline Constituent c(std::initializer_list<int> leaves) {
  return Constituent::from_indices(leaves);
}

inline ParseTree tree_over(int n, std::vector<Constituent> extra) {
  std::vector<Constituent> set;
  for (int i = 0; i < n; ++i) set.push_back(Constituent::single(i));
  if (n > 1) set.push_back(Constituent::span(0, n));
  for (auto& e : extra) set.push_back(std::move(e));
  return ParseTree::create(n, std::move(set));
}

// The worked n=3 instance used throughout: two individuals bracketing {0,1}
// and one bracketing {1,2}, unit weights.
struct RunningExample {
  std::vector<ParseTree> individuals;
  std::vector<Rational> weights;

  RunningExample() {
    ParseTree left = tree_over(3, {c({0, 1})});
    ParseTree right = tree_over(3, {c({1, 2})});
    individuals = {left, left, right};
    weights = {1, 1, 1};
  }
};

inline std::vector<Rational> unit_weights(size_t k) {
  return std::vector<Rational>(k, Rational(1));
}

}  // namespace treeavg::testing
