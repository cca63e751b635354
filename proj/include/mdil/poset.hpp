#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "mdil/bitrow.hpp"
#include "mdil/errors.hpp"

namespace mdil {

// Immutable strict partial order on ids 0..n-1, stored as the full transitive
// closure: up(x) = {y : x < y}, down(x) = {y : y < x}. All queries are O(1) bit
// tests or word-parallel row scans; nothing mutates after construction.
class Poset {
 public:
  Poset() = default;

  // Builds the closure of an arbitrary relation list. Pairs mean u < v.
  // Throws RangeError for ids outside [0,n), CycleError for self-pairs or
  // directed cycles. Duplicate pairs are fine.
  static Poset from_relations(int n, const std::vector<std::pair<int, int>>& relations) {
    if (n < 0) throw RangeError("poset size must be nonnegative");
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [u, v] : relations) {
      if (u < 0 || u >= n || v < 0 || v >= n)
        throw RangeError("relation id out of range: (" + std::to_string(u) + "," +
                         std::to_string(v) + ") with n=" + std::to_string(n));
      if (u == v) throw CycleError("self-pair (" + std::to_string(u) + "," + std::to_string(u) + ")");
      succ[u].push_back(v);
      ++indeg[v];
    }
    // Kahn; any topological order works for the closure sweep.
    std::vector<int> topo;
    topo.reserve(n);
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
      if (indeg[i] == 0) stack.push_back(i);
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      topo.push_back(x);
      for (int y : succ[x])
        if (--indeg[y] == 0) stack.push_back(y);
    }
    if ((int)topo.size() != n) throw CycleError("relation list contains a directed cycle");

    std::vector<BitRow> up(n, BitRow(n));
    for (int i = n - 1; i >= 0; --i) {
      int x = topo[i];
      for (int y : succ[x]) {
        up[x].set(y);
        up[x] |= up[y];
      }
    }
    return Poset(n, std::move(up));
  }

  // Adopts already-closed up rows. validate=true re-checks all axioms and is
  // meant for rows produced outside this class.
  static Poset from_closed_up_rows(std::vector<BitRow> up, bool validate) {
    int n = (int)up.size();  // read before the move: argument order is unspecified
    Poset p(n, std::move(up));
    if (validate) p.check_axioms();
    return p;
  }

  int size() const { return n_; }
  bool less(int x, int y) const { return up_[x].test(y); }
  const BitRow& up(int x) const { return up_[x]; }
  const BitRow& down(int x) const { return down_[x]; }

  bool operator==(const Poset& o) const { return n_ == o.n_ && up_ == o.up_; }

  // Throws VerificationError unless irreflexive, antisymmetric, transitive.
  void check_axioms() const {
    for (int x = 0; x < n_; ++x) {
      if (up_[x].test(x)) throw VerificationError("reflexive pair at " + std::to_string(x));
      if (up_[x].intersects(down_[x]))
        throw VerificationError("antisymmetry violated at " + std::to_string(x));
      bool ok = true;
      up_[x].for_each([&](int y) {
        if (ok && !up_[y].is_subset_of(up_[x])) ok = false;
      });
      if (!ok) throw VerificationError("transitivity violated at " + std::to_string(x));
    }
  }

 private:
  Poset(int n, std::vector<BitRow> up) : n_(n), up_(std::move(up)), down_(n, BitRow(n)) {
    for (int x = 0; x < n_; ++x)
      up_[x].for_each([&](int y) { down_[y].set(x); });
  }

  int n_ = 0;
  std::vector<BitRow> up_, down_;

  friend Poset dual(const Poset&);
};

// ---- neighborhoods ----------------------------------------------------------

inline BitRow down_set(const Poset& p, int x) {
  if (x < 0 || x >= p.size()) throw RangeError("element id out of range");
  return p.down(x);
}

inline BitRow up_set(const Poset& p, int x) {
  if (x < 0 || x >= p.size()) throw RangeError("element id out of range");
  return p.up(x);
}

// D_P(S) = {x not in S : x < s for some s in S}.
inline BitRow down_set(const Poset& p, const BitRow& s) {
  BitRow out(p.size());
  s.for_each([&](int x) { out |= p.down(x); });
  out.and_not(s);
  return out;
}

inline BitRow up_set(const Poset& p, const BitRow& s) {
  BitRow out(p.size());
  s.for_each([&](int x) { out |= p.up(x); });
  out.and_not(s);
  return out;
}

// ---- induced / dual ---------------------------------------------------------

struct InducedPoset {
  Poset poset;
  std::vector<int> to_old;  // new id -> old id, ascending (order-preserving)
};

inline InducedPoset induced(const Poset& p, const std::vector<int>& subset) {
  std::vector<int> ids = subset;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (int x : ids)
    if (x < 0 || x >= p.size()) throw RangeError("induced subset id out of range");
  int m = (int)ids.size();
  std::vector<int> to_new(p.size(), -1);
  for (int i = 0; i < m; ++i) to_new[ids[i]] = i;
  BitRow mask = BitRow::from_indices(p.size(), ids);
  std::vector<BitRow> up(m, BitRow(m));
  for (int i = 0; i < m; ++i)
    (p.up(ids[i]) & mask).for_each([&](int y) { up[i].set(to_new[y]); });
  return {Poset::from_closed_up_rows(std::move(up), false), std::move(ids)};
}

inline InducedPoset induced(const Poset& p, const BitRow& subset) {
  return induced(p, subset.to_indices());
}

inline Poset dual(const Poset& p) {
  Poset d = p;
  std::swap(d.up_, d.down_);
  return d;
}

// ---- linear extension -------------------------------------------------------

// Deterministic Kahn order: among elements whose strict predecessors are all
// placed, always take the smallest id.
inline std::vector<int> linear_extension(const Poset& p) {
  int n = p.size();
  std::vector<int> remaining(n);
  std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
  for (int x = 0; x < n; ++x) {
    remaining[x] = p.down(x).count();
    if (remaining[x] == 0) ready.push(x);
  }
  std::vector<int> out;
  out.reserve(n);
  while (!ready.empty()) {
    int x = ready.top();
    ready.pop();
    out.push_back(x);
    p.up(x).for_each([&](int y) {
      if (--remaining[y] == 0) ready.push(y);
    });
  }
  return out;
}

// ---- families and structure verification ------------------------------------

struct SubsetFamily {
  int ground_n = 0;
  std::vector<std::vector<int>> sets;  // each ascending by id

  int min_size() const {
    if (sets.empty()) return 0;
    size_t m = sets[0].size();
    for (const auto& s : sets) m = std::min(m, s.size());
    return (int)m;
  }
};

enum class StructureClaim { AscendingChain, DescendingChain, TotallyIncomparable };

struct VerifyResult {
  bool ok = true;
  // present iff !ok: the offending cross pair (element of the earlier set,
  // element of the later set), first in (set i, set j, a, b) scan order
  std::optional<std::pair<int, int>> counterexample;
  std::string message;
};

// Exhaustively checks the claim over all cross pairs of distinct sets.
// Throws OverlapError if the sets are not pairwise disjoint, RangeError for
// bad ids. Empty sets satisfy every claim vacuously.
inline VerifyResult verify_structure(const Poset& p, const SubsetFamily& fam, StructureClaim claim) {
  BitRow seen(p.size());
  for (const auto& s : fam.sets)
    for (int x : s) {
      if (x < 0 || x >= p.size()) throw RangeError("family id out of range");
      if (seen.test(x)) throw OverlapError("element " + std::to_string(x) + " appears in two sets");
      seen.set(x);
    }
  int k = (int)fam.sets.size();
  std::vector<BitRow> masks;
  masks.reserve(k);
  for (const auto& s : fam.sets) masks.push_back(BitRow::from_indices(p.size(), s));
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      for (int a : fam.sets[i]) {
        BitRow bad(p.size());
        switch (claim) {
          case StructureClaim::AscendingChain:
            bad = masks[j];
            bad.and_not(p.up(a));
            break;
          case StructureClaim::DescendingChain:
            bad = masks[j];
            bad.and_not(p.down(a));
            break;
          case StructureClaim::TotallyIncomparable:
            bad = (masks[j] & p.up(a)) | (masks[j] & p.down(a));
            break;
        }
        if (bad.any()) {
          int b = bad.next();
          return {false,
                  std::make_pair(a, b),
                  "sets " + std::to_string(i) + "," + std::to_string(j) + ": pair (" +
                      std::to_string(a) + "," + std::to_string(b) + ") violates the claim"};
        }
      }
    }
  }
  return {};
}

}  // namespace mdil
