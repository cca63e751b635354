#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace mdil {

// Dense fixed-width bitset, one bit per poset element. Trailing bits of the
// last word are kept zero so popcounts and equality never need masking.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(int nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

  int nbits() const { return n_; }

  bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i) { w_[i >> 6] |= uint64_t(1) << (i & 63); }
  void reset(int i) { w_[i >> 6] &= ~(uint64_t(1) << (i & 63)); }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  bool any() const {
    for (uint64_t x : w_)
      if (x) return true;
    return false;
  }
  bool none() const { return !any(); }

  int count() const {
    int c = 0;
    for (uint64_t x : w_) c += std::popcount(x);
    return c;
  }

  BitRow& operator|=(const BitRow& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  BitRow& operator&=(const BitRow& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  // this = this & ~o
  BitRow& and_not(const BitRow& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] &= ~o.w_[i];
    return *this;
  }

  friend BitRow operator&(BitRow a, const BitRow& b) { return a &= b; }
  friend BitRow operator|(BitRow a, const BitRow& b) { return a |= b; }

  bool operator==(const BitRow& o) const { return n_ == o.n_ && w_ == o.w_; }

  bool is_subset_of(const BitRow& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  bool intersects(const BitRow& o) const {
    for (size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  // popcount(a & b) without materialising the intersection.
  static int and_count(const BitRow& a, const BitRow& b) {
    int c = 0;
    for (size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & b.w_[i]);
    return c;
  }
  // popcount(a & ~b)
  static int and_not_count(const BitRow& a, const BitRow& b) {
    int c = 0;
    for (size_t i = 0; i < a.w_.size(); ++i) c += std::popcount(a.w_[i] & ~b.w_[i]);
    return c;
  }

  // Lowest set bit at index >= from, or -1.
  int next(int from = 0) const {
    if (from >= n_) return -1;
    int wi = from >> 6;
    uint64_t cur = w_[wi] & (~uint64_t(0) << (from & 63));
    while (true) {
      if (cur) return (wi << 6) + std::countr_zero(cur);
      if (++wi == (int)w_.size()) return -1;
      cur = w_[wi];
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (size_t wi = 0; wi < w_.size(); ++wi) {
      uint64_t cur = w_[wi];
      while (cur) {
        f(int(wi << 6) + std::countr_zero(cur));
        cur &= cur - 1;
      }
    }
  }

  std::vector<int> to_indices() const {
    std::vector<int> out;
    out.reserve(count());
    for_each([&](int i) { out.push_back(i); });
    return out;
  }

  static BitRow from_indices(int nbits, const std::vector<int>& ids) {
    BitRow r(nbits);
    for (int i : ids) r.set(i);
    return r;
  }

 private:
  int n_ = 0;
  std::vector<uint64_t> w_;
};

}  // namespace mdil
