#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "mdil/errors.hpp"
#include "mdil/poset.hpp"
#include "mdil/profile.hpp"

namespace mdil {

struct CondenseStep {
  int working_size = 0;            // |B| at the start of the step
  std::vector<int> candidate_sizes;
  int removed_index = -1;          // -1 when all candidates met the threshold
};

struct CondenseTrace {
  std::vector<CondenseStep> steps;
  bool emptied = false;  // working set fell below k; k empty sets returned
};

struct CondenseResult {
  std::vector<std::vector<int>> sets;
  CondenseTrace trace;
};

// Repeatedly splits the working set into k equitable contiguous id-blocks and
// forms, per block, the elements below that block and below no other block
// (the working set itself excluded). If some candidate is smaller than
// gamma / (k ln n), the smallest such block index is dropped and the step
// repeats. Outputs are pairwise disjoint and pairwise totally incomparable by
// construction, whatever the inputs; that is still re-checked on every call.
inline CondenseResult condense(const Poset& q, std::vector<int> b, int k, double gamma) {
  int n = q.size();
  if (k < 1) throw RangeError("condense: k must be >= 1");
  if (!(gamma > 0.0)) throw RangeError("condense: gamma must be > 0");
  if (n < 2) throw DegenerateError("condense: ground set must have >= 2 elements");
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  for (int x : b)
    if (x < 0 || x >= n) throw RangeError("condense: working-set element out of range");

  double min_size = gamma / (k * std::log((double)n));
  double max_steps = 2.0 * k * std::log((double)n) + 2.0;

  CondenseResult res;
  res.sets.assign(k, {});
  std::vector<int>& working = b;
  while (true) {
    if ((int)working.size() < k) {
      res.trace.emptied = true;
      break;
    }
    if ((double)res.trace.steps.size() >= max_steps)
      throw VerificationError("condense: step budget exceeded");

    int w = (int)working.size();
    int base = w / k, extra = w % k;
    BitRow bmask(n);
    for (int x : working) bmask.set(x);
    std::vector<BitRow> unions;
    std::vector<std::pair<int, int>> blocks;  // [begin, end) into working
    int pos = 0;
    for (int i = 0; i < k; ++i) {
      int sz = base + (i < extra ? 1 : 0);
      if (!(sz == base || sz == base + 1) || sz <= 0)
        throw VerificationError("condense: block sizes not equitable");
      blocks.push_back({pos, pos + sz});
      BitRow u(n);
      for (int j = pos; j < pos + sz; ++j) u |= q.down(working[j]);
      unions.push_back(std::move(u));
      pos += sz;
    }

    CondenseStep step;
    step.working_size = w;
    std::vector<BitRow> cand;
    for (int i = 0; i < k; ++i) {
      BitRow others(n);  // union over the other blocks
      for (int j = 0; j < k; ++j)
        if (j != i) others |= unions[j];
      BitRow c = unions[i];
      c.and_not(others);
      c.and_not(bmask);
      step.candidate_sizes.push_back(c.count());
      cand.push_back(std::move(c));
    }
    int violating = -1;
    for (int i = 0; i < k; ++i)
      if ((double)step.candidate_sizes[i] < min_size) {
        violating = i;
        break;
      }
    step.removed_index = violating;
    res.trace.steps.push_back(step);

    if (violating == -1) {
      for (int i = 0; i < k; ++i) res.sets[i] = cand[i].to_indices();
      // by-construction invariants, re-checked
      BitRow seen(n);
      for (const auto& s : res.sets)
        for (int x : s) {
          if (bmask.test(x)) throw VerificationError("condense: output meets working set");
          if (seen.test(x)) throw VerificationError("condense: outputs overlap");
          seen.set(x);
        }
      SubsetFamily fam{n, res.sets};
      VerifyResult vr = verify_structure(q, fam, StructureClaim::TotallyIncomparable);
      if (!vr.ok) throw VerificationError("condense: outputs comparable: " + vr.message);
      return res;
    }

    auto [begin, end] = blocks[violating];
    int old_size = w;
    working.erase(working.begin() + begin, working.begin() + end);
    // dropping one block of an equitable partition shrinks by >= 1/(2k)
    if (!(2LL * k * (long long)working.size() <= (2LL * k - 1) * old_size))
      throw VerificationError("condense: working set shrank too slowly");
  }
  return res;
}

namespace detail {

struct SelectTask {
  Poset poset;
  std::vector<int> to_old;  // current ids -> original ids
  int k = 1;
  int slot = 0;
};

}  // namespace detail

// Halving recursion: k = 1 keeps the whole ground set; otherwise T is the top
// half of a linear extension. A heavy strict-down-set of T feeds condense;
// otherwise T and the rest (minus everything below T) are solved for half of
// k each. Sets from different branches are totally incomparable because
// nothing outside T is above T in its own extension. Implemented with an
// explicit work stack; output slot order fixed (T-branch sets first).
inline std::vector<std::vector<int>> halving_select(const Poset& q, int k, double gamma,
                                                    double lambda) {
  if (k < 1) throw RangeError("halving_select: k must be >= 1");
  if (!(gamma > 0.0)) throw RangeError("halving_select: gamma must be > 0");
  if (lambda < 0.0) throw RangeError("halving_select: lambda must be >= 0");
  if (k >= 2 && q.size() < 2)
    throw DegenerateError("halving_select: ground set must have >= 2 elements");

  std::vector<std::vector<int>> out(k);
  std::vector<int> ids(q.size());
  for (int i = 0; i < q.size(); ++i) ids[i] = i;
  std::vector<detail::SelectTask> stack;
  stack.push_back({q, std::move(ids), k, 0});

  while (!stack.empty()) {
    detail::SelectTask task = std::move(stack.back());
    stack.pop_back();
    const Poset& cur = task.poset;
    int m = cur.size(), kk = task.k;

    if (kk == 1) {
      std::vector<int>& dst = out[task.slot];
      dst.resize(m);
      for (int i = 0; i < m; ++i) dst[i] = task.to_old[i];
      continue;
    }

    std::vector<int> ext = linear_extension(cur);
    int tsz = (m + 1) / 2;
    BitRow tmask(m);
    for (int i = m - tsz; i < m; ++i) tmask.set(ext[i]);
    BitRow below = down_set(cur, tmask);  // strictly below T, excluding T
    double threshold = 2.0 * (kk * lambda + gamma);

    if ((double)below.count() >= threshold) {
      CondenseResult cr = condense(cur, tmask.to_indices(), kk, gamma);
      for (int i = 0; i < kk; ++i) {
        std::vector<int>& dst = out[task.slot + i];
        dst.reserve(cr.sets[i].size());
        for (int x : cr.sets[i]) dst.push_back(task.to_old[x]);
      }
      continue;
    }

    BitRow rest_mask(m);
    for (int i = 0; i < m; ++i) rest_mask.set(i);
    rest_mask.and_not(tmask);
    rest_mask.and_not(below);

    InducedPoset top = induced(cur, tmask);
    InducedPoset rest = induced(cur, rest_mask);
    for (int& x : top.to_old) x = task.to_old[x];
    for (int& x : rest.to_old) x = task.to_old[x];
    int k_top = (kk + 1) / 2;
    stack.push_back({std::move(rest.poset), std::move(rest.to_old), kk - k_top,
                     task.slot + k_top});
    stack.push_back({std::move(top.poset), std::move(top.to_old), k_top, task.slot});
  }
  return out;
}

// Front door: k >= 2 pairwise totally incomparable disjoint sets. In strict
// mode the inputs must satisfy the profile's budget inequalities, and every
// output set is certified to have size >= gamma / (k ln n).
inline SubsetFamily extract_incomparable(const Poset& q, int k, double gamma, double lambda,
                                         const BoundProfile& profile, bool strict) {
  int n = q.size();
  if (k < 2) throw RangeError("extract_incomparable: k must be >= 2");
  if (!(gamma > 0.0)) throw RangeError("extract_incomparable: gamma must be > 0");
  if (lambda < 0.0) throw RangeError("extract_incomparable: lambda must be >= 0");
  if (n < 2) throw DegenerateError("extract_incomparable: ground set must have >= 2 elements");

  if (strict) {
    std::vector<std::string> viol;
    if (k > profile.kmax) viol.push_back("k <= profile kmax");
    if (!(gamma >= 1.0)) viol.push_back("gamma >= 1");
    int maxdeg = 0;
    for (int x = 0; x < n; ++x) maxdeg = std::max(maxdeg, q.down(x).count());
    if (!((double)maxdeg <= lambda)) viol.push_back("max down-degree <= lambda");
    if (k <= profile.kmax) {
      if (!(gamma <= (double)n / profile.f(k))) viol.push_back("gamma <= n / f(k)");
      if (!(lambda <= profile.g(k) * gamma)) viol.push_back("lambda <= g(k) * gamma");
    }
    if (!viol.empty()) {
      std::string msg = "extract_incomparable: violated:";
      for (const auto& v : viol) msg += " [" + v + "]";
      throw PreconditionError(msg);
    }
  }

  SubsetFamily fam{n, halving_select(q, k, gamma, lambda)};
  VerifyResult vr = verify_structure(q, fam, StructureClaim::TotallyIncomparable);
  if (!vr.ok) throw VerificationError("extract_incomparable: outputs comparable: " + vr.message);
  if (strict) {
    double bound = gamma / (k * std::log((double)n)) * (1.0 - 1e-12);
    for (const auto& s : fam.sets)
      if (!((double)s.size() >= bound))
        throw VerificationError("extract_incomparable: size guarantee missed");
  }
  return fam;
}

}  // namespace mdil
