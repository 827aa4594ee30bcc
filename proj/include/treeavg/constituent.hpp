#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

namespace treeavg {

// Sentences longer than this are rejected at the I/O boundary; it keeps
// every set operation to a handful of 64-bit words.
inline constexpr int kMaxSentenceLength = 256;

// A constituent: a non-empty set of 0-based leaf positions, stored as a
// dynamic bitset. The sentence length is contextual; only the members are
// stored. Trailing zero words are trimmed so equality and hashing are
// representation-independent.
class Constituent {
 public:
  Constituent() = default;

  static Constituent single(int leaf);
  static Constituent span(int begin, int end);  // leaves in [begin, end)
  static Constituent from_indices(std::initializer_list<int> leaves);
  static Constituent from_indices(const std::vector<int>& leaves);

  bool empty() const { return words_.empty(); }
  bool test(int leaf) const;
  void set(int leaf);

  int size() const;      // number of leaves
  int min_leaf() const;  // requires non-empty
  int max_leaf() const;  // requires non-empty

  // Number of maximal runs of consecutive leaves.
  int fan_out() const;

  std::vector<int> indices() const;
  // Maximal consecutive runs as [begin, end) pairs, ascending.
  std::vector<std::pair<int, int>> runs() const;

  bool contains(const Constituent& other) const;  // superset or equal
  bool disjoint_with(const Constituent& other) const;

  Constituent united(const Constituent& other) const;
  Constituent intersected(const Constituent& other) const;

  bool operator==(const Constituent& other) const {
    return words_ == other.words_;
  }
  bool operator!=(const Constituent& other) const { return !(*this == other); }

  // Total order used wherever ties must break the same way everywhere:
  // smallest leaf, then size, then the set owning the smallest leaf of the
  // symmetric difference sorts first.
  static bool canonical_less(const Constituent& a, const Constituent& b);

  size_t hash() const;

 private:
  void trim();
  std::vector<uint64_t> words_;
};

struct ConstituentHash {
  size_t operator()(const Constituent& c) const { return c.hash(); }
};

struct ConstituentCanonicalLess {
  bool operator()(const Constituent& a, const Constituent& b) const {
    return Constituent::canonical_less(a, b);
  }
};

int fan_out(const Constituent& c);

// True iff the two constituents may coexist in one tree: disjoint or nested.
bool compatible(const Constituent& a, const Constituent& b);

}  // namespace treeavg
