#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iterator>
#include <string>
#include <utility>
#include <vector>

#include "mdil/chain_lemma.hpp"
#include "mdil/decompose.hpp"
#include "mdil/driver.hpp"
#include "mdil/errors.hpp"
#include "mdil/fair_division.hpp"
#include "mdil/incomparable.hpp"
#include "mdil/poset.hpp"
#include "mdil/profile.hpp"
#include "mdil/rational.hpp"

namespace mdil {

enum class Relation { Ascending, Descending, Incomparable };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::Ascending: return "ascending";
    case Relation::Descending: return "descending";
    case Relation::Incomparable: return "incomparable";
  }
  return "?";
}

// Exact schedule entry: coeff * (ln n)^log_pow. Paper-mode targets blow past
// every native type, so they are kept symbolically.
struct SchedValue {
  Rational coeff;
  int log_pow = 0;

  double approx(double ln_n) const {
    return rat_double(coeff) * std::pow(ln_n, (double)log_pow);
  }
  bool operator==(const SchedValue& o) const {
    return coeff == o.coeff && log_pow == o.log_pow;
  }
};

enum class ScheduleMode { Practical, Paper };

struct Schedule {
  ScheduleMode mode = ScheduleMode::Practical;
  int h = 0;
  int k = 0;
  long long n = 0;
  std::vector<long long> k_targets;  // executable per-level targets k_1..k_h
  std::vector<SchedValue> k_values;  // paper mode: exact k_1..k_h
  std::vector<SchedValue> n_floors;  // paper mode: exact n_1..n_h
};

namespace detail {

constexpr long long kScheduleSaturation = 4000000000000000000LL;

inline Rational rat_pow12(const Rational& c) {
  Rational r = 1;
  for (int i = 0; i < 12; ++i) r *= c;
  return r;
}

}  // namespace detail

// Per-level set counts, largest first. Practical mode uses the structural
// minimum k_{l-1} = 3 k_l^2 + 1 (one more block than the selection step
// consumes); paper mode uses k_{l-1} = (10 k_l)^12 ln n together with the
// size floors n_1 = n / (1e4 k_1^2 ln n), n_{l+1} = k_l n_l / ((10 k_{l+1})^12 ln n),
// all kept exact.
inline Schedule build_schedule(int h, int k, long long n, ScheduleMode mode) {
  if (h < 1) throw RangeError("build_schedule: h must be >= 1");
  if (k < 2) throw RangeError("build_schedule: k must be >= 2");
  if (n < 3) throw RangeError("build_schedule: n must be >= 3");
  Schedule s;
  s.mode = mode;
  s.h = h;
  s.k = k;
  s.n = n;
  s.k_targets.assign(h, 0);
  s.k_targets[h - 1] = k;

  if (mode == ScheduleMode::Practical) {
    for (int i = h - 1; i >= 1; --i) {
      __int128 v = (__int128)3 * s.k_targets[i] * s.k_targets[i] + 1;
      s.k_targets[i - 1] =
          v > detail::kScheduleSaturation ? detail::kScheduleSaturation : (long long)v;
    }
    return s;
  }

  s.k_values.assign(h, SchedValue{});
  s.k_values[h - 1] = {Rational(k), 0};
  for (int i = h - 1; i >= 1; --i) {
    const SchedValue& kv = s.k_values[i];
    SchedValue next;
    next.coeff = detail::rat_pow12(Rational(10) * kv.coeff);
    next.log_pow = 12 * kv.log_pow + 1;
    s.k_values[i - 1] = next;
  }
  s.n_floors.assign(h, SchedValue{});
  {
    const SchedValue& k1 = s.k_values[0];
    s.n_floors[0].coeff = Rational(n) / (Rational(10000) * k1.coeff * k1.coeff);
    s.n_floors[0].log_pow = -(2 * k1.log_pow + 1);
  }
  for (int i = 0; i + 1 < h; ++i) {
    const SchedValue& ki = s.k_values[i];
    const SchedValue& knext = s.k_values[i + 1];
    Rational div = detail::rat_pow12(Rational(10) * knext.coeff);
    s.n_floors[i + 1].coeff = ki.coeff * s.n_floors[i].coeff / div;
    s.n_floors[i + 1].log_pow = ki.log_pow + s.n_floors[i].log_pow - (12 * knext.log_pow + 1);
  }
  double ln_n = std::log((double)n);
  for (int i = 0; i < h; ++i) {
    double v = s.k_values[i].approx(ln_n);
    s.k_targets[i] = (v >= (double)detail::kScheduleSaturation)
                         ? detail::kScheduleSaturation
                         : (long long)std::ceil(v);
  }
  return s;
}

struct HomogeneityCheck {
  bool ok = false;
  std::vector<Relation> relations;  // per order, when ok
  int bad_order = -1;
  std::pair<int, int> counterexample{-1, -1};
  std::string message;
};

// Classifies the family against the first `upto` orders: ascending,
// descending, or totally incomparable (checked in that priority), else a
// counterexample pair from the named order.
inline HomogeneityCheck verify_homogeneous(const std::vector<Poset>& orders,
                                           const SubsetFamily& fam,
                                           std::size_t upto = SIZE_MAX) {
  HomogeneityCheck out;
  upto = std::min(upto, orders.size());
  for (std::size_t i = 0; i < upto; ++i) {
    if (orders[i].size() != fam.ground_n)
      throw GroundMismatch("verify_homogeneous: order size differs from family ground");
    VerifyResult asc = verify_structure(orders[i], fam, StructureClaim::AscendingChain);
    if (asc.ok) {
      out.relations.push_back(Relation::Ascending);
      continue;
    }
    VerifyResult desc = verify_structure(orders[i], fam, StructureClaim::DescendingChain);
    if (desc.ok) {
      out.relations.push_back(Relation::Descending);
      continue;
    }
    VerifyResult inc = verify_structure(orders[i], fam, StructureClaim::TotallyIncomparable);
    if (inc.ok) {
      out.relations.push_back(Relation::Incomparable);
      continue;
    }
    out.bad_order = (int)i;
    if (inc.counterexample) out.counterexample = *inc.counterexample;
    out.message = "order " + std::to_string(i) + ": " + inc.message;
    return out;
  }
  out.ok = true;
  return out;
}

struct LevelInfo {
  int level = 0;            // 1-based
  long long sets_extracted = 0;
  int ell = 0;              // chain level, or the shift used on the lemma path
  bool chain_branch = false;
  double gamma = 0.0;
  double lambda = 0.0;      // lemma path only
  Relation relation = Relation::Incomparable;
  int block_size = 0;       // common size after this level's trim
};

struct HomogeneousResult {
  SubsetFamily sets;
  std::vector<Relation> relations;  // per order
  std::vector<LevelInfo> levels;
};

namespace detail {

struct LevelExtract {
  std::vector<std::vector<int>> sets;  // original ids, each of size >= need
  bool chain = false;
  int ell = 0;
  double gamma = 0.0, lambda = 0.0;
};

// k' sets inside Q under one order, every set at least `need` big: the
// largest shift level whose chain reaches k'+1 gives equal blocks of that
// size; otherwise the sparse core is split into incomparable sets. Either
// way failure to reach `need` reports the level as too small.
inline LevelExtract level_extract(const Poset& ord, const std::vector<int>& q_ids,
                                  long long kp_ll, int need, int lvl) {
  long long m = (long long)q_ids.size();
  std::string at = "level " + std::to_string(lvl);
  if (kp_ll >= m)
    throw InstanceTooSmall(at + ": ground of " + std::to_string(m) +
                               " cannot host " + std::to_string(kp_ll) + " sets",
                           lvl);
  int kp = (int)kp_ll;
  InducedPoset ind = induced(ord, q_ids);

  long long lmax = (m - 1) / kp;
  int lstar = -1;
  if (lmax >= need) {
    BetweenTable bt(ind.poset);
    if (bt.longest_shifted_chain(need) >= kp + 1) {
      long long lo = need, hi = lmax;
      while (lo < hi) {  // feasibility is monotone: shrinking l only adds pairs
        long long mid = lo + (hi - lo + 1) / 2;
        if (bt.longest_shifted_chain((int)mid) >= kp + 1)
          lo = mid;
        else
          hi = mid - 1;
      }
      lstar = (int)lo;
    }
  }

  LevelExtract out;
  if (lstar >= 1) {
    ChainOrSparseOutcome oc = chain_or_sparse(ind.poset, kp, lstar);
    if (oc.variant != CoreVariant::SetChain)
      throw VerificationError("level_extract: feasible chain level lost its chain");
    out.chain = true;
    out.ell = lstar;
    for (auto& s : oc.family.sets) {
      for (int& x : s) x = ind.to_old[x];
      out.sets.push_back(std::move(s));
    }
    return out;
  }

  if ((long long)need * kp >= m)
    throw InstanceTooSmall(at + ": needs " + std::to_string(kp) + " sets of size " +
                               std::to_string(need) + " from " + std::to_string(m) +
                               " elements",
                           lvl);
  ChainOrSparseOutcome oc = chain_or_sparse(ind.poset, kp, need);
  if (oc.variant == CoreVariant::SetChain)
    throw VerificationError("level_extract: chain appeared at an infeasible level");
  if ((int)oc.core.size() < 2)
    throw InstanceTooSmall(at + ": sparse core has fewer than 2 elements", lvl);

  InducedPoset core = induced(ind.poset, oc.core);
  Poset work =
      oc.variant == CoreVariant::SparseUp ? dual(core.poset) : std::move(core.poset);
  BoundProfile profile = profile_thm1(std::max(64, kp));
  out.ell = need;
  out.gamma = (double)oc.core.size() / profile.f(kp);
  out.lambda = profile.g(kp) * out.gamma;
  SubsetFamily fam = extract_incomparable(work, kp, out.gamma, out.lambda, profile, false);
  int b = fam.min_size();
  if (b < need)
    throw InstanceTooSmall(at + ": incomparable sets reach size " + std::to_string(b) +
                               " but " + std::to_string(need) + " is required",
                           lvl);
  for (auto& s : fam.sets) {
    for (int& x : s) x = ind.to_old[core.to_old[x]];
    std::sort(s.begin(), s.end());
    out.sets.push_back(std::move(s));
  }
  return out;
}

// keep the smallest ids: drop largest-id elements until every set has `size`
inline void trim_to(std::vector<std::vector<int>>& sets, int size) {
  for (auto& s : sets) {
    std::sort(s.begin(), s.end());
    if ((int)s.size() > size) s.resize(size);
  }
}

inline int min_size(const std::vector<std::vector<int>>& sets) {
  int m = sets.empty() ? 0 : (int)sets[0].size();
  for (const auto& s : sets) m = std::min(m, (int)s.size());
  return m;
}

}  // namespace detail

// h orders on one ground set, k >= 2: k disjoint sets homogeneous with
// respect to every order (per order: elementwise ascending, descending, or
// totally incomparable). Level-by-level: a family for the first l-1 orders is
// refined through the l-th by extracting a larger family inside its union and
// matching it to contiguous block ranges, which preserves all earlier
// relations. Verified against every processed order at every level.
inline HomogeneousResult find_homogeneous(const std::vector<Poset>& orders, int k,
                                          const Schedule& sched) {
  int h = (int)orders.size();
  if (h < 1) throw RangeError("find_homogeneous: need at least one order");
  if (k < 2) throw RangeError("find_homogeneous: k must be >= 2");
  long long n = orders[0].size();
  for (const Poset& o : orders)
    if (o.size() != n) throw GroundMismatch("find_homogeneous: orders differ in ground size");
  if (sched.h != h || sched.k != k || sched.n != n)
    throw RangeError("find_homogeneous: schedule does not match (h, k, n)");

  HomogeneousResult res;

  if (h == 1) {
    ExtractionResult er;
    try {
      er = find_family_thm1(orders[0], k, /*strict=*/false);
    } catch (const InstanceTooSmall& e) {
      throw InstanceTooSmall(std::string("level 1: ") + e.what(), 1);
    }
    res.sets = er.sets;
    LevelInfo info;
    info.level = 1;
    info.sets_extracted = k;
    info.ell = er.ell;
    info.chain_branch = (er.branch == Branch::DescendingSetChain);
    info.gamma = er.gamma;
    info.lambda = er.lambda;
    info.relation = info.chain_branch ? Relation::Descending : Relation::Incomparable;
    info.block_size = er.achieved_size;
    res.levels.push_back(info);
    HomogeneityCheck check = verify_homogeneous(orders, res.sets);
    if (!check.ok) throw VerificationError("find_homogeneous: " + check.message);
    res.relations = check.relations;
    return res;
  }

  std::vector<std::vector<int>> family;
  std::vector<Relation> recorded;
  int a = 0;

  for (int lvl = 1; lvl <= h; ++lvl) {
    const Poset& ord = orders[lvl - 1];
    LevelInfo info;
    info.level = lvl;

    if (lvl == 1) {
      std::vector<int> all((std::size_t)n);
      for (long long i = 0; i < n; ++i) all[i] = (int)i;
      detail::LevelExtract ex = detail::level_extract(ord, all, sched.k_targets[0], 1, 1);
      family = std::move(ex.sets);
      info.sets_extracted = sched.k_targets[0];
      info.ell = ex.ell;
      info.chain_branch = ex.chain;
      info.gamma = ex.gamma;
      info.lambda = ex.lambda;
      info.relation = ex.chain ? Relation::Ascending : Relation::Incomparable;
    } else {
      long long k_cur = sched.k_targets[lvl - 1];
      __int128 kp128 = (__int128)3 * k_cur * k_cur;
      long long kp = kp128 > detail::kScheduleSaturation ? detail::kScheduleSaturation
                                                         : (long long)kp128;
      if ((long long)family.size() <= kp)
        throw PreconditionError("find_homogeneous: schedule needs k_{l-1} > 3 k_l^2");

      std::vector<int> q_ids;
      for (const auto& blk : family) q_ids.insert(q_ids.end(), blk.begin(), blk.end());
      std::sort(q_ids.begin(), q_ids.end());

      detail::LevelExtract ex = detail::level_extract(ord, q_ids, kp, a, lvl);
      int b = detail::min_size(ex.sets);
      detail::trim_to(ex.sets, b);

      PartitionSelection sel = partition_select((int)n, family, ex.sets);
      long long ceil_share = ((long long)b + kp - 1) / kp;
      std::vector<std::vector<int>> pieces;
      std::vector<int> labels;
      int h_prev = 0;
      for (auto [t, hj] : sel.pairs) {
        std::vector<int> piece;
        for (int i = h_prev; i < hj; ++i) {
          const auto& blk = family[i];
          std::vector<int> hit;
          std::set_intersection(ex.sets[t].begin(), ex.sets[t].end(), blk.begin(), blk.end(),
                                std::back_inserter(hit));
          piece.insert(piece.end(), hit.begin(), hit.end());
        }
        std::sort(piece.begin(), piece.end());
        if ((long long)piece.size() < ceil_share)
          throw VerificationError("find_homogeneous: selected piece below b/k'");
        pieces.push_back(std::move(piece));
        labels.push_back(t);
        h_prev = hj;
      }
      if ((long long)pieces.size() < k_cur * k_cur)
        throw VerificationError("find_homogeneous: fewer pieces than k_l^2");

      std::vector<std::vector<int>> next;
      if (ex.chain) {
        MonotoneSubsequence mono = erdos_szekeres(labels, std::less<int>());
        if ((long long)mono.indices.size() < k_cur)
          throw VerificationError("find_homogeneous: monotone run shorter than k_l");
        for (long long j = 0; j < k_cur; ++j) next.push_back(pieces[mono.indices[j]]);
        info.relation = mono.increasing ? Relation::Ascending : Relation::Descending;
      } else {
        for (long long j = 0; j < k_cur; ++j) next.push_back(pieces[j]);
        info.relation = Relation::Incomparable;
      }
      family = std::move(next);
      info.sets_extracted = kp;
      info.ell = ex.ell;
      info.chain_branch = ex.chain;
      info.gamma = ex.gamma;
      info.lambda = ex.lambda;
    }

    if (lvl < h) detail::trim_to(family, detail::min_size(family));
    a = detail::min_size(family);
    info.block_size = a;
    recorded.push_back(info.relation);
    res.levels.push_back(info);

    SubsetFamily fam{(int)n, family};
    HomogeneityCheck check = verify_homogeneous(orders, fam, (std::size_t)lvl);
    if (!check.ok)
      throw VerificationError("find_homogeneous: level " + std::to_string(lvl) + " " +
                              check.message);
    for (int i = 0; i < lvl; ++i)
      if (check.relations[i] != recorded[i])
        throw VerificationError("find_homogeneous: relation drifted at level " +
                                std::to_string(lvl));
  }

  res.sets = SubsetFamily{(int)n, family};
  HomogeneityCheck check = verify_homogeneous(orders, res.sets);
  if (!check.ok) throw VerificationError("find_homogeneous: " + check.message);
  res.relations = check.relations;
  return res;
}

}  // namespace mdil
