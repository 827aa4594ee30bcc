#pragma once

#include <cstdint>
#include <vector>

#include "treeavg/tree.hpp"

namespace treeavg {

// K random binary trees over n leaves built by recursive splitting. With a
// fan-out cap of 2, a continuous block may be split into a middle part and
// the wrap-around remainder, creating fan-out-2 constituents; the cap is
// never exceeded. Deterministic in the seed. With distinct set, duplicate
// trees are re-rolled a bounded number of times (small n may not offer
// enough distinct shapes, in which case duplicates stand).
std::vector<ParseTree> random_instance(uint64_t seed, int n, int k,
                                       int fan_out_cap, bool distinct = false);

}  // namespace treeavg
