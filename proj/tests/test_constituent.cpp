#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "treeavg/constituent.hpp"

using namespace treeavg;
using treeavg::testing::c;

TEST_CASE("fan-out counts maximal consecutive runs") {
  CHECK(fan_out(c({0, 3})) == 2);           // "Wake ... up"
  CHECK(fan_out(c({0, 2, 3, 5})) == 3);
  CHECK(fan_out(c({1, 2, 3})) == 1);
  CHECK(fan_out(c({5})) == 1);
  CHECK(fan_out(c({0, 2, 4, 6})) == 4);
  CHECK(fan_out(c({63, 64})) == 1);  // run across a word boundary
  CHECK(fan_out(c({63, 65})) == 2);
}

TEST_CASE("compatibility is disjoint-or-nested") {
  CHECK(compatible(c({0, 1}), c({2, 3})));
  CHECK(compatible(c({1, 2}), c({0, 1, 2, 3})));
  CHECK_FALSE(compatible(c({0, 1}), c({1, 2})));
  CHECK(compatible(c({0, 3}), c({1, 2})));  // disjoint despite interleaving
  CHECK_FALSE(compatible(c({0, 3}), c({1, 3})));
}

TEST_CASE("compatibility is symmetric and reflexive") {
  std::mt19937_64 rng(7);
  auto random_set = [&] {
    Constituent s;
    while (s.empty()) {
      for (int i = 0; i < 10; ++i) {
        if (rng() & 1) s.set(i);
      }
    }
    return s;
  };
  for (int trial = 0; trial < 200; ++trial) {
    Constituent a = random_set();
    Constituent b = random_set();
    CHECK(compatible(a, b) == compatible(b, a));
    CHECK(compatible(a, a));
    if (a.contains(b) || b.contains(a)) {
      // Nested pairs: the union is the superset, fan-out included.
      Constituent u = a.united(b);
      const Constituent& super = a.contains(b) ? a : b;
      CHECK(u == super);
      CHECK(u.fan_out() == super.fan_out());
    }
  }
}

TEST_CASE("runs and indices agree") {
  Constituent x = c({0, 1, 4, 5, 6, 9});
  CHECK(x.runs() == std::vector<std::pair<int, int>>{{0, 2}, {4, 7}, {9, 10}});
  CHECK(x.indices() == std::vector<int>{0, 1, 4, 5, 6, 9});
  CHECK(x.size() == 6);
  CHECK(x.min_leaf() == 0);
  CHECK(x.max_leaf() == 9);
}

TEST_CASE("canonical order is a strict total order") {
  std::mt19937_64 rng(11);
  std::vector<Constituent> pool;
  for (int t = 0; t < 60; ++t) {
    Constituent s;
    while (s.empty()) {
      for (int i = 0; i < 8; ++i) {
        if (rng() & 1) s.set(i);
      }
    }
    pool.push_back(s);
  }
  for (const auto& a : pool) {
    CHECK_FALSE(Constituent::canonical_less(a, a));
    for (const auto& b : pool) {
      if (a == b) {
        CHECK_FALSE(Constituent::canonical_less(a, b));
      } else {
        CHECK(Constituent::canonical_less(a, b) !=
              Constituent::canonical_less(b, a));
      }
      for (const auto& d : pool) {
        if (Constituent::canonical_less(a, b) &&
            Constituent::canonical_less(b, d)) {
          CHECK(Constituent::canonical_less(a, d));
        }
      }
    }
  }
  // Primary key: smallest leaf; secondary: size.
  CHECK(Constituent::canonical_less(c({0, 5}), c({1, 2})));
  CHECK(Constituent::canonical_less(c({1, 2}), c({1, 2, 3})));
}
