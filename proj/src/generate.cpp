#include "treeavg/generate.hpp"

#include <algorithm>

#include "treeavg/errors.hpp"

namespace treeavg {

namespace {

// splitmix64: tiny, seedable, identical everywhere.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound >= 1.
  int below(int bound) { return static_cast<int>(next() % static_cast<uint64_t>(bound)); }
};

void split_recursive(Rng& rng, const Constituent& c, int fan_out_cap,
                     std::vector<Constituent>& out) {
  out.push_back(c);
  std::vector<int> words = c.indices();
  int m = static_cast<int>(words.size());
  if (m == 1) return;

  std::vector<int> first, second;
  bool wrap = fan_out_cap >= 2 && c.fan_out() == 1 && m >= 3 &&
              rng.below(10) < 3;
  if (wrap) {
    // Middle block vs. the prefix+suffix wrapped around it.
    int i = 1 + rng.below(m - 2);
    int j = i + 1 + rng.below(m - 1 - i);
    for (int w = 0; w < m; ++w) {
      ((w >= i && w < j) ? second : first).push_back(words[static_cast<size_t>(w)]);
    }
  } else {
    // A cut in the constituent's word order keeps both parts within the cap.
    int cut = 1 + rng.below(m - 1);
    first.assign(words.begin(), words.begin() + cut);
    second.assign(words.begin() + cut, words.end());
  }
  split_recursive(rng, Constituent::from_indices(first), fan_out_cap, out);
  split_recursive(rng, Constituent::from_indices(second), fan_out_cap, out);
}

ParseTree random_tree(uint64_t seed, int n, int fan_out_cap) {
  Rng rng(seed);
  std::vector<Constituent> constituents;
  split_recursive(rng, Constituent::span(0, n), fan_out_cap, constituents);
  return ParseTree::create(n, std::move(constituents));
}

uint64_t mix(uint64_t a, uint64_t b) {
  Rng r(a ^ (b * 0x9e3779b97f4a7c15ull) ^ 0xd6e8feb86659fd93ull);
  return r.next();
}

}  // namespace

std::vector<ParseTree> random_instance(uint64_t seed, int n, int k,
                                       int fan_out_cap, bool distinct) {
  if (n < 1) throw DataError("sentence length must be at least 1");
  if (k < 1) throw DataError("need at least one individual");
  if (fan_out_cap < 1 || fan_out_cap > 2) {
    throw DataError("generator supports fan-out caps 1 and 2");
  }
  std::vector<ParseTree> trees;
  trees.reserve(static_cast<size_t>(k));
  for (int t = 0; t < k; ++t) {
    constexpr int kMaxAttempts = 64;
    for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
      ParseTree candidate = random_tree(
          mix(seed, static_cast<uint64_t>(t) * kMaxAttempts +
                        static_cast<uint64_t>(attempt)),
          n, fan_out_cap);
      bool duplicate =
          distinct && std::any_of(trees.begin(), trees.end(),
                                  [&](const ParseTree& prev) {
                                    return prev == candidate;
                                  });
      if (!duplicate || attempt == kMaxAttempts - 1) {
        trees.push_back(std::move(candidate));
        break;
      }
    }
  }
  return trees;
}

}  // namespace treeavg
