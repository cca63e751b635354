#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <utility>
#include <vector>

#include "mdil/errors.hpp"
#include "mdil/poset.hpp"

namespace mdil {

// 64-bit mixing generator (splitmix64 recurrence). The exact recurrence is
// part of the tool contract so ensembles reproduce across implementations:
//   state += 0x9E3779B97F4A7C15
//   z = state; z ^= z >> 30; z *= 0xBF58476D1CE4E5B9
//   z ^= z >> 27; z *= 0x94D049BB133111EB
//   output = z ^ (z >> 31)
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // true with probability round(p * 2^53) / 2^53
  bool accept(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return (next() >> 11) < (std::uint64_t)std::ldexp(p, 53);
  }

  // near-uniform integer in [0, bound), bound >= 1
  std::uint64_t below(std::uint64_t bound) {
    return (std::uint64_t)(((__uint128_t)next() * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

enum class GenModel { Chain, Antichain, RandomDag, Layered, Grid, Stacked };

struct GenSpec {
  GenModel model = GenModel::Chain;
  int n = 0;                 // size for chain/antichain/random-dag; copy count for stacked
  double p = 0.5;            // pair probability for random-dag/layered
  std::vector<int> widths;   // layered
  int d1 = 0, d2 = 0;        // grid
  std::shared_ptr<const Poset> base;  // stacked
  std::uint64_t seed = 0;
};

// Deterministic per (spec, seed). Pair scans are in ascending id order so the
// consumed random stream is pinned down.
inline Poset generate(const GenSpec& spec) {
  switch (spec.model) {
    case GenModel::Chain: {
      if (spec.n < 0) throw SpecError("chain: n must be >= 0");
      std::vector<std::pair<int, int>> rel;
      for (int i = 0; i + 1 < spec.n; ++i) rel.push_back({i, i + 1});
      return Poset::from_relations(spec.n, rel);
    }
    case GenModel::Antichain: {
      if (spec.n < 0) throw SpecError("antichain: n must be >= 0");
      return Poset::from_relations(spec.n, {});
    }
    case GenModel::RandomDag: {
      if (spec.n < 0) throw SpecError("random-dag: n must be >= 0");
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw SpecError("random-dag: p must be in [0,1]");
      SplitMix64 rng(spec.seed);
      std::vector<std::pair<int, int>> rel;
      for (int u = 0; u < spec.n; ++u)
        for (int v = u + 1; v < spec.n; ++v)
          if (rng.accept(spec.p)) rel.push_back({u, v});
      return Poset::from_relations(spec.n, rel);
    }
    case GenModel::Layered: {
      if (spec.widths.empty()) throw SpecError("layered: widths must be nonempty");
      for (int w : spec.widths)
        if (w <= 0) throw SpecError("layered: widths must be positive");
      if (!(spec.p >= 0.0 && spec.p <= 1.0)) throw SpecError("layered: p must be in [0,1]");
      int n = 0;
      std::vector<int> layer;
      for (size_t i = 0; i < spec.widths.size(); ++i)
        for (int j = 0; j < spec.widths[i]; ++j, ++n) layer.push_back((int)i);
      SplitMix64 rng(spec.seed);
      std::vector<std::pair<int, int>> rel;
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (layer[u] < layer[v] && rng.accept(spec.p)) rel.push_back({u, v});
      return Poset::from_relations(n, rel);
    }
    case GenModel::Grid: {
      if (spec.d1 < 1 || spec.d2 < 1) throw SpecError("grid: dimensions must be >= 1");
      // product order on [d1] x [d2]; id(a,b) = a*d2 + b
      std::vector<std::pair<int, int>> rel;
      for (int a = 0; a < spec.d1; ++a)
        for (int b = 0; b < spec.d2; ++b) {
          if (a + 1 < spec.d1) rel.push_back({a * spec.d2 + b, (a + 1) * spec.d2 + b});
          if (b + 1 < spec.d2) rel.push_back({a * spec.d2 + b, a * spec.d2 + b + 1});
        }
      return Poset::from_relations(spec.d1 * spec.d2, rel);
    }
    case GenModel::Stacked: {
      if (!spec.base) throw SpecError("stacked: base poset required");
      if (spec.n < 1) throw SpecError("stacked: copy count must be >= 1");
      const Poset& b = *spec.base;
      int nb = b.size(), m = spec.n;
      std::vector<std::pair<int, int>> rel;
      for (int c = 0; c < m; ++c)
        for (int x = 0; x < nb; ++x)
          for (int y = 0; y < nb; ++y)
            if (b.less(x, y)) rel.push_back({c * nb + x, c * nb + y});
      for (int ci = 0; ci < m; ++ci)
        for (int cj = ci + 1; cj < m; ++cj)
          for (int x = 0; x < nb; ++x)
            for (int y = 0; y < nb; ++y) rel.push_back({ci * nb + x, cj * nb + y});
      return Poset::from_relations(nb * m, rel);
    }
  }
  throw SpecError("unknown model");
}

enum class TinyTarget { SetChain, Incomparable };

namespace detail {

inline bool tiny_feasible(const Poset& p, int k, int s, TinyTarget target,
                          const std::vector<std::uint32_t>& up_mask,
                          const std::vector<std::uint32_t>& inc_mask) {
  if (s == 0) return true;
  int n = p.size();
  if ((long long)k * s > n) return false;
  // all size-s element masks, ascending (ascending order = ascending min id)
  std::vector<std::uint32_t> blocks;
  for (std::uint32_t m = 0; m < (1u << n); ++m)
    if (__builtin_popcount(m) == s) blocks.push_back(m);

  // allowed = elements usable for the remaining sets; for set-chain the next
  // set must sit strictly above everything chosen so far, for incomparable it
  // must avoid all comparabilities with chosen elements. Incomparable families
  // are unordered, so demand strictly increasing min ids across sets.
  std::function<bool(int, std::uint32_t, std::uint32_t)> rec =
      [&](int chosen, std::uint32_t allowed, std::uint32_t lo_excl) -> bool {
    if (chosen == k) return true;
    if (__builtin_popcount(allowed) < s) return false;
    for (std::uint32_t blk : blocks) {
      if (blk & ~allowed) continue;
      if (target == TinyTarget::Incomparable && (blk & lo_excl)) continue;
      std::uint32_t next_allowed;
      if (target == TinyTarget::SetChain) {
        next_allowed = allowed;
        for (int x = 0; x < n; ++x)
          if (blk >> x & 1) next_allowed &= up_mask[x];
      } else {
        next_allowed = allowed & ~blk;
        for (int x = 0; x < n; ++x)
          if (blk >> x & 1) next_allowed &= inc_mask[x];
      }
      std::uint32_t lo = lo_excl;
      if (target == TinyTarget::Incomparable) {
        int mn = __builtin_ctz(blk);
        lo = (std::uint32_t)((1u << (mn + 1)) - 1);
      }
      if (rec(chosen + 1, next_allowed, lo)) return true;
    }
    return false;
  };
  return rec(0, (1u << n) - 1, 0);
}

}  // namespace detail

// Exact largest s such that k disjoint size-s sets with the target structure
// exist. Exhaustive; n <= 12 enforced.
inline int oracle_tiny_best(const Poset& p, int k, TinyTarget target) {
  int n = p.size();
  if (n > 12) throw TooLargeError("oracle_tiny_best: n must be <= 12");
  if (k < 1) throw RangeError("oracle_tiny_best: k must be >= 1");
  std::vector<std::uint32_t> up_mask(n, 0), inc_mask(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (p.less(x, y)) up_mask[x] |= 1u << y;
      if (x != y && !p.less(x, y) && !p.less(y, x)) inc_mask[x] |= 1u << y;
    }
  for (int s = n / k; s >= 1; --s)
    if (detail::tiny_feasible(p, k, s, target, up_mask, inc_mask)) return s;
  return 0;
}

// Reference relation: (x,y) is in iff at least l distinct elements lie
// strictly between x and y. Triple loop; n <= 200 enforced.
inline Poset oracle_ell_order(const Poset& p, int l) {
  int n = p.size();
  if (n > 200) throw TooLargeError("oracle_ell_order: n must be <= 200");
  if (l < 1) throw RangeError("oracle_ell_order: l must be >= 1");
  std::vector<BitRow> up(n, BitRow(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.less(x, y)) continue;
      int cnt = 0;
      for (int z = 0; z < n; ++z)
        if (p.less(x, z) && p.less(z, y)) ++cnt;
      if (cnt >= l) up[x].set(y);
    }
  return Poset::from_closed_up_rows(std::move(up), /*validate=*/true);
}

}  // namespace mdil
