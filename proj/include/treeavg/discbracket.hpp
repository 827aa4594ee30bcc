#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "treeavg/tree.hpp"

namespace treeavg {

// One treebank sentence: tokens plus a (possibly labeled) tree over them.
struct SentenceRecord {
  ParseTree tree;  // words carried inside

  const std::vector<std::string>& words() const { return tree.words(); }
  int n() const { return tree.n(); }

  // Leaves whose preterminal label (the innermost label on the singleton)
  // is in the given set.
  std::vector<int> punct_leaves(const std::set<std::string>& punct_labels) const;
};

// Grammar, one tree per line:
//   node     = '(' LABEL item+ ')'
//   item     = node | terminal
//   terminal = <index> '=' <word>     (0-based indices)
// Children may cover non-contiguous index sets. The indices of a line must
// form exactly {0..n-1}. Nodes with the same leaf set collapse to one
// constituent; the innermost label is kept. Throws DataError with a column
// hint on malformed input.
SentenceRecord parse_discbracket(std::string_view line);

// Canonical serialization: children ordered by smallest leaf, unlabeled
// internal nodes emit label "o", an unlabeled root emits "ROOT". Stable:
// re-parsing and re-writing reproduces the same bytes.
std::string write_discbracket(const SentenceRecord& record);

// Reads a whole file; error messages carry "<name>:<line>".
std::vector<SentenceRecord> read_treebank(const std::string& path);

// Writes atomically: a temp file in the same directory, renamed on success.
void write_treebank(const std::string& path,
                    const std::vector<std::string>& lines);

}  // namespace treeavg
