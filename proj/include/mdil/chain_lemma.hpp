#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mdil/decompose.hpp"
#include "mdil/errors.hpp"
#include "mdil/poset.hpp"

namespace mdil {

// |{z : x < z < y}|. Zero whenever the pair is incomparable or y <= x.
inline int between_count(const Poset& p, int x, int y) {
  if (x < 0 || x >= p.size() || y < 0 || y >= p.size())
    throw RangeError("between_count: element out of range");
  return BitRow::and_count(p.up(x), p.down(y));
}

// Shifted order: x precedes y iff at least l elements lie strictly between.
// Transitivity is inherited from the base order (the l witnesses for (x,y)
// also sit below any z above y); the construction re-checks all axioms rather
// than assuming them.
inline Poset ell_order(const Poset& p, int l) {
  if (l < 1) throw RangeError("ell_order: l must be >= 1");
  int n = p.size();
  std::vector<BitRow> up(n, BitRow(n));
  for (int x = 0; x < n; ++x)
    p.up(x).for_each([&](int y) {
      if (BitRow::and_count(p.up(x), p.down(y)) >= l) up[x].set(y);
    });
  return Poset::from_closed_up_rows(std::move(up), /*validate=*/true);
}

// Cached between-counts for one poset, for repeated shifted-order queries at
// varying l. Counts saturate at 65535, which keeps "count >= l" exact for
// every l <= 65535; n is capped so that threshold covers all legal l.
class BetweenTable {
 public:
  explicit BetweenTable(const Poset& p)
      : n_(p.size()), cnt_((std::size_t)n_ * n_, 0), topo_(linear_extension(p)) {
    if (n_ > 65535) throw TooLargeError("BetweenTable: n must be <= 65535");
    for (int x = 0; x < n_; ++x) {
      const BitRow& ux = p.up(x);
      ux.for_each([&](int y) {
        int c = BitRow::and_count(ux, p.down(y));
        cnt_[(std::size_t)x * n_ + y] = (std::uint16_t)std::min(c, 65535);
      });
    }
  }

  int size() const { return n_; }
  int count(int x, int y) const { return cnt_[(std::size_t)x * n_ + y]; }

  // Length of the longest chain of the shifted order at level l, without
  // materializing it: DP over a base-order extension (the shifted order is a
  // subrelation of the base order, so predecessors are already processed).
  int longest_shifted_chain(int l) const {
    std::vector<int> lvl(n_, 0);
    int h = 0;
    for (int x : topo_) {
      int best = 0;
      for (int y = 0; y < n_; ++y)
        if (cnt_[(std::size_t)y * n_ + x] >= l && lvl[y] > best) best = lvl[y];
      lvl[x] = best + 1;
      if (lvl[x] > h) h = lvl[x];
    }
    return h;
  }

  // Materialize the shifted order at level l (axioms re-checked).
  Poset shifted_order(int l) const {
    if (l < 1) throw RangeError("shifted_order: l must be >= 1");
    std::vector<BitRow> up(n_, BitRow(n_));
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (cnt_[(std::size_t)x * n_ + y] >= l) up[x].set(y);
    return Poset::from_closed_up_rows(std::move(up), /*validate=*/true);
  }

 private:
  int n_;
  std::vector<std::uint16_t> cnt_;
  std::vector<int> topo_;
};

enum class CoreVariant { SetChain, SparseDown, SparseUp };

// Outcome of the chain-or-sparse dichotomy: either k disjoint size-l sets
// forming an ascending chain of sets, or a large core whose down- (or up-)
// degrees inside the core stay below 4*sqrt(|core| * l).
struct ChainOrSparseOutcome {
  CoreVariant variant = CoreVariant::SetChain;
  SubsetFamily family;            // SetChain: the k sets, ascending
  std::vector<int> chain;         // SetChain certificate: k+1 elements, each l-below the next
  std::vector<int> core;          // sparse variants: the core, ascending ids
  double degree_threshold = 0.0;  // sparse certificate: 4*sqrt(|core| * l)
};

// Dichotomy on the shifted order: a (k+1)-chain yields k ascending sets of
// size exactly l (the l smallest ids strictly between consecutive chain
// elements); otherwise the largest antichain level P' of the shifted order is
// big, and a counting argument leaves a core of size >= ceil(7n/(16k)) whose
// degrees on one side are small. All quantitative facts are re-checked in
// exact integer arithmetic on every call.
inline ChainOrSparseOutcome chain_or_sparse(const Poset& p, int k, int l) {
  int n = p.size();
  if (k < 1) throw RangeError("chain_or_sparse: k must be >= 1");
  if (l < 1) throw RangeError("chain_or_sparse: l must be >= 1");
  if ((long long)l * k >= n) throw PreconditionError("chain_or_sparse: requires l * k < n");

  Poset lo = ell_order(p, l);
  MirskyDecomposition dec = mirsky(lo);
  ChainOrSparseOutcome out;

  if (dec.height >= k + 1) {
    std::vector<int> chain = longest_chain(lo);
    chain.resize(k + 1);
    out.variant = CoreVariant::SetChain;
    out.chain = chain;
    out.family.ground_n = n;
    BitRow used(n);
    for (int i = 0; i < k; ++i) {
      BitRow between = p.up(chain[i]) & p.down(chain[i + 1]);
      std::vector<int> set;
      for (int z = between.next(0); z != -1 && (int)set.size() < l; z = between.next(z + 1))
        set.push_back(z);
      if ((int)set.size() != l)
        throw VerificationError("chain_or_sparse: shifted chain edge has fewer than l witnesses");
      for (int z : set) {
        if (used.test(z))
          throw VerificationError("chain_or_sparse: witness sets are not disjoint");
        used.set(z);
      }
      out.family.sets.push_back(std::move(set));
    }
    VerifyResult vr = verify_structure(p, out.family, StructureClaim::AscendingChain);
    if (!vr.ok) throw VerificationError("chain_or_sparse: set chain failed order check: " + vr.message);
    return out;
  }

  // No (k+1)-chain: work inside the largest antichain level of the shifted
  // order. Degrees below are taken in the base order restricted to that level.
  std::vector<int> level = largest_level(lo);
  long long np = (long long)level.size();
  BitRow level_mask = BitRow::from_indices(n, level);
  long long triples = 0;
  std::vector<long long> dd(n, 0), uu(n, 0);
  for (int x : level) {
    dd[x] = BitRow::and_count(p.down(x), level_mask);
    uu[x] = BitRow::and_count(p.up(x), level_mask);
    triples += dd[x] * uu[x];
  }
  // two elements of one antichain level have < l elements between them, and
  // every down/up pair around z forms a comparable pair, so:
  if (!(2 * triples < np * np * l))
    throw VerificationError("chain_or_sparse: triple count bound violated");

  std::vector<int> sd, su;
  for (int x : level) {
    if (dd[x] * dd[x] < 4 * np * l) sd.push_back(x);
    if (uu[x] * uu[x] < 4 * np * l) su.push_back(x);
  }
  bool down_side = sd.size() >= su.size();
  out.variant = down_side ? CoreVariant::SparseDown : CoreVariant::SparseUp;
  out.core = down_side ? sd : su;
  long long q = (long long)out.core.size();
  out.degree_threshold = 4.0 * std::sqrt((double)q * (double)l);
  out.family.ground_n = n;

  long long need = (7LL * n + 16LL * k - 1) / (16LL * k);  // ceil(7n/(16k))
  if (!(q >= need)) throw VerificationError("chain_or_sparse: core smaller than 7n/(16k)");
  BitRow core_mask = BitRow::from_indices(n, out.core);
  for (int x : out.core) {
    long long inner = down_side ? dd[x] : uu[x];
    if (!(inner * inner < 4 * np * l))
      throw VerificationError("chain_or_sparse: level degree bound violated");
    long long deg = down_side ? BitRow::and_count(p.down(x), core_mask)
                              : BitRow::and_count(p.up(x), core_mask);
    if (!(deg * deg < 16 * q * l))
      throw VerificationError("chain_or_sparse: core degree bound violated");
  }
  return out;
}

}  // namespace mdil
