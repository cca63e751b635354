#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "mdil/errors.hpp"
#include "mdil/poset.hpp"

namespace mdil {

struct MirskyDecomposition {
  int height = 0;                       // longest chain length; 0 for n=0
  std::vector<int> level;               // level[x] in 1..height
  std::vector<std::vector<int>> levels; // levels[i] = antichain of elements with level i+1
};

// Partition into antichains by longest-chain-ending length. The number of
// levels equals the height, so some level has >= ceil(n/height) elements.
inline MirskyDecomposition mirsky(const Poset& p) {
  int n = p.size();
  MirskyDecomposition d;
  d.level.assign(n, 0);
  std::vector<int> topo = linear_extension(p);
  for (int x : topo) {
    int best = 0;
    p.down(x).for_each([&](int y) { best = std::max(best, d.level[y]); });
    d.level[x] = best + 1;
    d.height = std::max(d.height, d.level[x]);
  }
  d.levels.assign(d.height, {});
  for (int x = 0; x < n; ++x) d.levels[d.level[x] - 1].push_back(x);
  return d;
}

// Largest antichain level; ties broken toward the smallest level index.
// Throws EmptyError on the empty poset.
inline std::vector<int> largest_level(const Poset& p) {
  MirskyDecomposition d = mirsky(p);
  if (d.height == 0) throw EmptyError("largest_level of empty poset");
  int best = 0;
  for (int i = 1; i < d.height; ++i)
    if ((int)d.levels[i].size() > (int)d.levels[best].size()) best = i;
  return d.levels[best];
}

// A longest chain, ascending. Deterministic: the top element is the
// smallest-id element of maximum level, each predecessor the smallest-id
// element one level down among its strict predecessors.
inline std::vector<int> longest_chain(const Poset& p) {
  MirskyDecomposition d = mirsky(p);
  if (d.height == 0) return {};
  int cur = -1;
  for (int x = 0; x < p.size(); ++x)
    if (d.level[x] == d.height && (cur == -1 || x < cur)) cur = x;
  std::vector<int> chain{cur};
  for (int lvl = d.height - 1; lvl >= 1; --lvl) {
    int pick = -1;
    p.down(cur).for_each([&](int y) {
      if (d.level[y] == lvl && (pick == -1 || y < pick)) pick = y;
    });
    chain.push_back(pick);
    cur = pick;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

struct MonotoneSubsequence {
  std::vector<int> indices;  // strictly increasing positions into the input
  bool increasing = true;
};

// Longest monotone subsequence of a sequence of distinct labels under a strict
// total order. Guarantees length >= ceil(sqrt(m)). Deterministic: increasing
// wins ties against decreasing, and among longest subsequences the
// lexicographically-first index sequence is returned.
template <class T, class Less = std::less<T>>
MonotoneSubsequence erdos_szekeres(const std::vector<T>& items, Less less = Less{}) {
  int m = (int)items.size();
  if (m == 0) throw EmptyError("erdos_szekeres on empty sequence");
  // rank labels 0..m-1 by the comparator
  std::vector<int> order(m), rank(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return less(items[a], items[b]); });
  for (int i = 0; i < m; ++i) rank[order[i]] = i;

  // len[i] = longest monotone run starting at i, via a max-Fenwick over ranks
  // scanned right to left.
  auto solve = [&](bool inc) {
    std::vector<int> tree(m + 1, 0), len(m);
    auto upd = [&](int pos, int v) {
      for (++pos; pos <= m; pos += pos & -pos) tree[pos] = std::max(tree[pos], v);
    };
    auto qry = [&](int pos) {  // max over ranks 0..pos
      int r = 0;
      for (++pos; pos > 0; pos -= pos & -pos) r = std::max(r, tree[pos]);
      return r;
    };
    for (int i = m - 1; i >= 0; --i) {
      int r = inc ? (m - 1 - rank[i]) : rank[i];  // strictly-greater queries become prefix queries
      len[i] = 1 + (r > 0 ? qry(r - 1) : 0);
      upd(r, len[i]);
    }
    return len;
  };
  std::vector<int> len_inc = solve(true), len_dec = solve(false);
  int li = *std::max_element(len_inc.begin(), len_inc.end());
  int ld = *std::max_element(len_dec.begin(), len_dec.end());
  bool inc = li >= ld;
  const std::vector<int>& len = inc ? len_inc : len_dec;
  int target = inc ? li : ld;

  MonotoneSubsequence out;
  out.increasing = inc;
  int prev = -1;
  for (int need = target; need >= 1; --need) {
    for (int i = prev + 1;; ++i) {
      if (len[i] != need) continue;
      if (prev >= 0) {
        bool ok = inc ? less(items[prev], items[i]) : less(items[i], items[prev]);
        if (!ok) continue;
      }
      out.indices.push_back(i);
      prev = i;
      break;
    }
  }
  return out;
}

}  // namespace mdil
