#pragma once

#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "treeavg/constituent.hpp"
#include "treeavg/rational.hpp"

namespace treeavg {

using LabelMap = std::unordered_map<Constituent, std::string, ConstituentHash>;

// A constituency tree over a length-n sentence: a pairwise-compatible set of
// constituents that contains every singleton and the full span. Constituents
// are kept unique and in canonical order. Labels and words are optional
// payload carried for I/O and evaluation; structural equality ignores them.
class ParseTree {
 public:
  ParseTree() = default;

  // Validates the full set of invariants; throws DataError on violation.
  // Missing singletons are NOT added implicitly.
  static ParseTree create(int n, std::vector<Constituent> constituents,
                          LabelMap labels = {},
                          std::vector<std::string> words = {});

  // Builds the n+1-node tree with no internal structure.
  static ParseTree minimal(int n);

  int n() const { return n_; }
  const std::vector<Constituent>& constituents() const { return constituents_; }
  const LabelMap& labels() const { return labels_; }
  const std::vector<std::string>& words() const { return words_; }

  bool contains(const Constituent& c) const;
  bool is_binary() const {
    return static_cast<int>(constituents_.size()) == 2 * n_ - 1;
  }
  int max_fan_out() const;
  Constituent root() const;

  std::optional<std::string> label_of(const Constituent& c) const;

  // Structural equality: same length, same constituent set.
  bool operator==(const ParseTree& other) const {
    return n_ == other.n_ && constituents_ == other.constituents_;
  }
  bool operator!=(const ParseTree& other) const { return !(*this == other); }

 private:
  int n_ = 0;
  std::vector<Constituent> constituents_;  // canonical order, unique
  LabelMap labels_;
  std::vector<std::string> words_;
};

// True iff the set satisfies every ParseTree invariant for length n.
bool is_valid_tree(std::span<const Constituent> constituents, int n);

// Parent/children relation. Indices refer to positions in
// tree.constituents(); parent of the root is -1. Children are ordered by
// smallest leaf.
struct Hierarchy {
  int root = -1;
  std::vector<int> parent;
  std::vector<std::vector<int>> children;
};

Hierarchy hierarchy(const ParseTree& tree);

// The ensemble objective's F1: counts every constituent, trivial ones
// included. Distinct from the evaluation metric in eval.hpp, which excludes
// them. Throws on mismatched sentence lengths.
Rational pairwise_f1(const ParseTree& predicted, const ParseTree& reference);

// Weighted sum of pairwise F1 against each individual; the quantity every
// engine maximizes, and the ground truth the oracle tests compare against.
Rational sum_f1_objective(const ParseTree& tree,
                          std::span<const ParseTree> individuals,
                          std::span<const Rational> weights);

// Canonical comparison of whole constituent sets (for tie-breaking and
// deterministic ordering of equal-score trees).
bool tree_set_less(const std::vector<Constituent>& a,
                   const std::vector<Constituent>& b);

}  // namespace treeavg
