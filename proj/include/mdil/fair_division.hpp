#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "mdil/bitrow.hpp"
#include "mdil/errors.hpp"
#include "mdil/rational.hpp"

namespace mdil {

// Nondecreasing piecewise-linear cumulative measure on [0,k]: exact rational
// values at the integer breakpoints, linear in between.
struct PLMeasure {
  std::vector<Rational> cum;  // size k+1, cum[0] = 0

  int k() const { return (int)cum.size() - 1; }
  const Rational& total() const { return cum.back(); }

  void check() const {
    if (cum.size() < 2) throw RangeError("PLMeasure: needs at least breakpoints 0 and 1");
    if (cum.front() != 0) throw RangeError("PLMeasure: cum[0] must be 0");
    for (std::size_t i = 1; i < cum.size(); ++i)
      if (cum[i] < cum[i - 1]) throw RangeError("PLMeasure: cumulative values must be nondecreasing");
  }

  // measure of [0, r]
  Rational at(const Rational& r) const {
    if (r < 0 || r > k()) throw RangeError("PLMeasure: point outside [0,k]");
    BigInt fl = rat_floor(r);
    int i = (int)fl;
    if (i == k()) return cum[i];
    Rational frac = r - Rational(fl);
    return cum[i] + frac * (cum[i + 1] - cum[i]);
  }

  static PLMeasure from_counts(const std::vector<long long>& per_block) {
    PLMeasure m;
    m.cum.push_back(0);
    for (long long c : per_block) {
      if (c < 0) throw RangeError("PLMeasure: counts must be nonnegative");
      m.cum.push_back(m.cum.back() + c);
    }
    return m;
  }
};

struct CakeCut {
  std::vector<Rational> cuts;  // 0 = r_0 <= r_1 <= ... <= r_s = k
  std::vector<int> pi;         // pi[i] = measure owning (r_i, r_{i+1}]
};

namespace detail {

// largest r in [0, hi] with m(r) <= t (m continuous nondecreasing, t >= 0)
inline Rational last_point_at_most(const PLMeasure& m, const Rational& hi, const Rational& t) {
  if (m.at(hi) <= t) return hi;
  // walk integer segments right to left; the first one whose left value is
  // <= t contains the rightmost crossing
  int seg = (int)rat_ceil(hi);  // segment [seg-1, seg], clipped at hi
  for (; seg >= 1; --seg) {
    Rational right = Rational(seg) < hi ? Rational(seg) : hi;
    const Rational& vl = m.cum[seg - 1];
    Rational vr = m.at(right);
    if (vl > t) continue;
    if (vr <= t) return right;
    // strictly increasing across the crossing: interpolate exactly on the
    // full integer segment (the clip at hi changes the range, not the slope)
    return Rational(seg - 1) + (t - vl) / (m.cum[seg] - vl);
  }
  throw VerificationError("last_point_at_most: no valid point (measure negative at 0?)");
}

}  // namespace detail

// Cuts [0,k] into s intervals, one per measure, so that each measure values
// its own interval at least total/s — exactly, in rational arithmetic. Greedy
// from the right: with t measures still live on [0,R], each computes the
// largest r where giving it (r,R] leaves it exactly its 1/t share of what it
// still sees; the rightmost such r wins (smallest index on ties), that measure
// leaves with (r,R]. All-zero input gets uniform cuts. The share bound is
// re-checked exactly before returning.
inline CakeCut cake_cut(const std::vector<PLMeasure>& measures) {
  int s = (int)measures.size();
  if (s < 1) throw RangeError("cake_cut: need at least one measure");
  int k = measures[0].k();
  for (const auto& m : measures) {
    m.check();
    if (m.k() != k) throw RangeError("cake_cut: measures must share the domain [0,k]");
  }

  CakeCut out;
  out.cuts.assign(s + 1, Rational(0));
  out.cuts[s] = k;
  out.pi.assign(s, -1);

  bool all_zero = true;
  for (const auto& m : measures)
    if (m.total() != 0) all_zero = false;

  if (all_zero) {
    for (int i = 0; i <= s; ++i) out.cuts[i] = Rational(i * (long long)k) / s;
    for (int i = 0; i < s; ++i) out.pi[i] = i;
    return out;
  }

  std::vector<int> live(s);
  for (int i = 0; i < s; ++i) live[i] = i;
  Rational r_right = k;
  for (int interval = s - 1; interval >= 1; --interval) {
    int t = (int)live.size();
    Rational best = -1;
    int best_j = -1;
    for (int j : live) {
      Rational seen = measures[j].at(r_right);
      Rational keep = seen - seen / t;  // leave (r, R] worth seen/t
      Rational r = detail::last_point_at_most(measures[j], r_right, keep);
      if (r > best) {
        best = r;
        best_j = j;
      }
    }
    out.pi[interval] = best_j;
    out.cuts[interval] = best;
    live.erase(std::find(live.begin(), live.end(), best_j));
    r_right = best;
  }
  out.pi[0] = live[0];

  for (int i = 0; i < s; ++i) {
    const PLMeasure& m = measures[out.pi[i]];
    Rational got = m.at(out.cuts[i + 1]) - m.at(out.cuts[i]);
    if (got * s < m.total())
      throw VerificationError("cake_cut: share bound violated");
  }
  return out;
}

struct BlockAssignment {
  std::vector<int> cuts;  // 0 = h_0 <= h_1 <= ... <= h_s = k (block indices)
  std::vector<int> pi;    // pi[j] = B subset owning blocks (h_j, h_{j+1}]
};

// Rounds the cake solution to whole blocks: each B_j gets a contiguous block
// range worth at least ceil(|B_j|/s) - max_i |A_i| of its own elements; that
// integer bound is re-checked before returning.
inline BlockAssignment discrete_blocks(int ground_n, const std::vector<std::vector<int>>& a_blocks,
                                       const std::vector<std::vector<int>>& b_subsets) {
  int k = (int)a_blocks.size(), s = (int)b_subsets.size();
  if (ground_n < 0) throw RangeError("discrete_blocks: bad ground size");
  if (k < 1 || s < 1) throw RangeError("discrete_blocks: need blocks and subsets");
  std::vector<int> block_of(ground_n, -1);
  for (int i = 0; i < k; ++i)
    for (int x : a_blocks[i]) {
      if (x < 0 || x >= ground_n) throw RangeError("discrete_blocks: id out of range");
      if (block_of[x] != -1) throw PartitionError("discrete_blocks: blocks overlap");
      block_of[x] = i;
    }
  for (const auto& b : b_subsets)
    for (int x : b) {
      if (x < 0 || x >= ground_n) throw RangeError("discrete_blocks: id out of range");
      if (block_of[x] == -1) throw PartitionError("discrete_blocks: subset element outside blocks");
    }

  std::vector<PLMeasure> measures;
  for (const auto& b : b_subsets) {
    std::vector<long long> per_block(k, 0);
    for (int x : b) ++per_block[block_of[x]];
    measures.push_back(PLMeasure::from_counts(per_block));
  }
  CakeCut cc = cake_cut(measures);

  BlockAssignment out;
  out.pi = cc.pi;
  for (const auto& r : cc.cuts) out.cuts.push_back((int)rat_ceil(r));

  int max_block = 0;
  for (const auto& a : a_blocks) max_block = std::max(max_block, (int)a.size());
  for (int j = 0; j < s; ++j) {
    const auto& b = b_subsets[out.pi[j]];
    long long inside = 0;
    for (int x : b)
      if (block_of[x] >= out.cuts[j] && block_of[x] < out.cuts[j + 1]) ++inside;
    long long need = ((long long)b.size() + s - 1) / s - max_block;
    if (inside < need) throw VerificationError("discrete_blocks: integer share bound violated");
  }
  return out;
}

struct PartitionSelection {
  std::vector<std::pair<int, int>> pairs;  // (t_j, h_j), h strictly increasing, t distinct
};

// Matches disjoint equal-size B-sets to contiguous ranges of equal-size
// A-blocks: scan blocks left to right, close a range once it holds b live
// elements, hand it to the unused B with the largest presence there, retire
// that B's elements everywhere. Yields at least floor(k'/3) pairs, each with
// |B_(t_j) intersected with its block range| >= b/k'; both facts re-checked.
inline PartitionSelection partition_select(int ground_n,
                                           const std::vector<std::vector<int>>& a_blocks,
                                           const std::vector<std::vector<int>>& b_family) {
  int k = (int)a_blocks.size(), kp = (int)b_family.size();
  if (ground_n < 0) throw RangeError("partition_select: bad ground size");
  if (!(k > kp && kp >= 1))
    throw PreconditionError("partition_select: needs more blocks than sets (k > k' >= 1)");
  std::size_t a = a_blocks.empty() ? 0 : a_blocks[0].size();
  std::size_t b = b_family.empty() ? 0 : b_family[0].size();
  for (const auto& blk : a_blocks)
    if (blk.size() != a) throw PreconditionError("partition_select: A-blocks must have equal size");
  for (const auto& st : b_family)
    if (st.size() != b) throw PreconditionError("partition_select: B-sets must have equal size");
  if (a < 1) throw PreconditionError("partition_select: blocks must be nonempty");
  if (b < a) throw PreconditionError("partition_select: needs b >= a");

  std::vector<int> block_of(ground_n, -1), set_of(ground_n, -1);
  for (int i = 0; i < k; ++i)
    for (int x : a_blocks[i]) {
      if (x < 0 || x >= ground_n) throw RangeError("partition_select: id out of range");
      if (block_of[x] != -1) throw PreconditionError("partition_select: A-blocks overlap");
      block_of[x] = i;
    }
  for (int t = 0; t < kp; ++t)
    for (int x : b_family[t]) {
      if (x < 0 || x >= ground_n) throw RangeError("partition_select: id out of range");
      if (set_of[x] != -1) throw PreconditionError("partition_select: B-sets overlap");
      if (block_of[x] == -1) throw PreconditionError("partition_select: B element outside blocks");
      set_of[x] = t;
    }

  // live[x]: x still available; initially the union of the B-family
  BitRow live(ground_n);
  for (const auto& st : b_family)
    for (int x : st) live.set(x);

  long long r = (long long)b;
  std::vector<bool> used(kp, false);
  PartitionSelection out;
  int h_prev = 0;  // blocks 1..h_prev (1-based) are spent
  long long remaining = live.count();

  while (remaining >= r) {
    long long acc = 0;
    int h = h_prev;
    std::vector<long long> per_set(kp, 0);
    while (acc < r) {
      ++h;  // h <= k is guaranteed: acc reaches remaining >= r by the last block
      for (int x : a_blocks[h - 1])
        if (live.test(x)) {
          ++acc;
          ++per_set[set_of[x]];
        }
    }
    int t_best = -1;
    for (int t = 0; t < kp; ++t)
      if (!used[t] && (t_best == -1 || per_set[t] > per_set[t_best])) t_best = t;
    if (t_best == -1 || per_set[t_best] * kp < (long long)b)
      throw VerificationError("partition_select: pigeonhole share missing");
    used[t_best] = true;
    out.pairs.push_back({t_best, h});

    // retire the closed range and the chosen set
    for (int i = h_prev; i < h; ++i)
      for (int x : a_blocks[i]) live.reset(x);
    for (int x : b_family[t_best]) live.reset(x);
    long long now = live.count();
    if (remaining - now > r + (long long)a + (long long)b)
      throw VerificationError("partition_select: per-step loss exceeds r+a+b");
    remaining = now;
    h_prev = h;
  }

  if ((long long)out.pairs.size() < (long long)kp / 3)
    throw VerificationError("partition_select: fewer than floor(k'/3) pairs");
  return out;
}

}  // namespace mdil
