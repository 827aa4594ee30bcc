#include "treeavg/constituent.hpp"

#include <algorithm>
#include <bit>
#include <cassert>

namespace treeavg {

namespace {
constexpr uint64_t kOne = 1;
}

Constituent Constituent::single(int leaf) {
  Constituent c;
  c.set(leaf);
  return c;
}

Constituent Constituent::span(int begin, int end) {
  assert(begin >= 0 && begin < end);
  Constituent c;
  for (int i = begin; i < end; ++i) c.set(i);
  return c;
}

Constituent Constituent::from_indices(std::initializer_list<int> leaves) {
  Constituent c;
  for (int i : leaves) c.set(i);
  return c;
}

Constituent Constituent::from_indices(const std::vector<int>& leaves) {
  Constituent c;
  for (int i : leaves) c.set(i);
  return c;
}

bool Constituent::test(int leaf) const {
  assert(leaf >= 0);
  size_t w = static_cast<size_t>(leaf) >> 6;
  if (w >= words_.size()) return false;
  return (words_[w] >> (leaf & 63)) & kOne;
}

void Constituent::set(int leaf) {
  assert(leaf >= 0);
  size_t w = static_cast<size_t>(leaf) >> 6;
  if (w >= words_.size()) words_.resize(w + 1, 0);
  words_[w] |= kOne << (leaf & 63);
}

int Constituent::size() const {
  int count = 0;
  for (uint64_t w : words_) count += std::popcount(w);
  return count;
}

int Constituent::min_leaf() const {
  assert(!empty());
  for (size_t i = 0; i < words_.size(); ++i) {
    if (words_[i]) return static_cast<int>(i * 64 + std::countr_zero(words_[i]));
  }
  return -1;
}

int Constituent::max_leaf() const {
  assert(!empty());
  for (size_t i = words_.size(); i-- > 0;) {
    if (words_[i]) return static_cast<int>(i * 64 + 63 - std::countl_zero(words_[i]));
  }
  return -1;
}

int Constituent::fan_out() const {
  // Runs = set bits whose predecessor is unset. Shifting the whole set left
  // by one and counting bits present in the original but not the shift gives
  // exactly the run starts.
  int count = 0;
  uint64_t carry = 0;
  for (uint64_t w : words_) {
    uint64_t shifted = (w << 1) | carry;
    count += std::popcount(w & ~shifted);
    carry = w >> 63;
  }
  return count;
}

std::vector<int> Constituent::indices() const {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(size()));
  for (size_t i = 0; i < words_.size(); ++i) {
    uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<int>(i * 64) + b);
      w &= w - 1;
    }
  }
  return out;
}

std::vector<std::pair<int, int>> Constituent::runs() const {
  std::vector<std::pair<int, int>> out;
  int start = -1;
  int prev = -2;
  for (int i : indices()) {
    if (i != prev + 1) {
      if (start >= 0) out.emplace_back(start, prev + 1);
      start = i;
    }
    prev = i;
  }
  if (start >= 0) out.emplace_back(start, prev + 1);
  return out;
}

bool Constituent::contains(const Constituent& other) const {
  if (other.words_.size() > words_.size()) return false;
  for (size_t i = 0; i < other.words_.size(); ++i) {
    if (other.words_[i] & ~words_[i]) return false;
  }
  return true;
}

bool Constituent::disjoint_with(const Constituent& other) const {
  size_t m = std::min(words_.size(), other.words_.size());
  for (size_t i = 0; i < m; ++i) {
    if (words_[i] & other.words_[i]) return false;
  }
  return true;
}

Constituent Constituent::united(const Constituent& other) const {
  Constituent r;
  r.words_.resize(std::max(words_.size(), other.words_.size()), 0);
  for (size_t i = 0; i < words_.size(); ++i) r.words_[i] = words_[i];
  for (size_t i = 0; i < other.words_.size(); ++i) r.words_[i] |= other.words_[i];
  return r;
}

Constituent Constituent::intersected(const Constituent& other) const {
  Constituent r;
  size_t m = std::min(words_.size(), other.words_.size());
  r.words_.resize(m, 0);
  for (size_t i = 0; i < m; ++i) r.words_[i] = words_[i] & other.words_[i];
  r.trim();
  return r;
}

bool Constituent::canonical_less(const Constituent& a, const Constituent& b) {
  if (a.words_ == b.words_) return false;
  if (a.empty()) return true;
  if (b.empty()) return false;
  int ma = a.min_leaf();
  int mb = b.min_leaf();
  if (ma != mb) return ma < mb;
  int sa = a.size();
  int sb = b.size();
  if (sa != sb) return sa < sb;
  // First leaf in the symmetric difference decides: its owner sorts first.
  size_t n = std::max(a.words_.size(), b.words_.size());
  for (size_t i = 0; i < n; ++i) {
    uint64_t wa = i < a.words_.size() ? a.words_[i] : 0;
    uint64_t wb = i < b.words_.size() ? b.words_[i] : 0;
    uint64_t diff = wa ^ wb;
    if (diff) {
      uint64_t low = diff & (~diff + 1);
      return (wa & low) != 0;
    }
  }
  return false;
}

size_t Constituent::hash() const {
  uint64_t h = 0x9e3779b97f4a7c15ull;
  for (uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ull;
    h ^= h >> 27;
  }
  return static_cast<size_t>(h);
}

void Constituent::trim() {
  while (!words_.empty() && words_.back() == 0) words_.pop_back();
}

int fan_out(const Constituent& c) { return c.fan_out(); }

bool compatible(const Constituent& a, const Constituent& b) {
  return a.disjoint_with(b) || a.contains(b) || b.contains(a);
}

}  // namespace treeavg
