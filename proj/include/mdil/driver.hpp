#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "mdil/chain_lemma.hpp"
#include "mdil/errors.hpp"
#include "mdil/incomparable.hpp"
#include "mdil/poset.hpp"
#include "mdil/profile.hpp"

namespace mdil {

enum class Branch { DescendingSetChain, TotallyIncomparable };

struct ExtractionResult {
  Branch branch = Branch::DescendingSetChain;
  SubsetFamily sets;
  int ell = 0;
  double gamma = 0.0;
  double lambda = 0.0;
  std::optional<double> guaranteed_size;  // present only in strict mode
  int achieved_size = 0;
  int sparse_core_size = 0;               // 0 in the chain branch
  bool lemma_preconditions_held = false;  // degree/size budgets held on the core
  bool used_dual = false;                 // sparse core had small up-degrees
};

// One partial order, k >= 2: either k descending sets of equal size ell, or k
// pairwise totally incomparable sets. Relaxed mode keeps the algorithm and all
// structural postconditions but drops the size formula (desk-size inputs never
// meet the strict threshold). Strict mode enforces g(k)^2 n >= 1e5 k f(k)^2 and
// certifies the returned sizes.
inline ExtractionResult find_family(const Poset& p, int k, const BoundProfile& profile,
                                    bool strict) {
  long long n = p.size();
  if (k < 2) throw RangeError("find_family: k must be >= 2");
  if (k > profile.kmax) throw RangeError("find_family: k exceeds profile kmax");
  double f = profile.f(k), g = profile.g(k);
  if (strict && !(g * g * (double)n >= 1e5 * k * f * f))
    throw PreconditionError("find_family: requires g(k)^2 n >= 1e5 k f(k)^2");

  int ell = (int)std::max(1.0, std::ceil(g * g * (double)n / (37.0 * k * f * f)));
  if ((long long)ell * k >= n)
    throw InstanceTooSmall("find_family: ground set too small for l*k sets (l=" +
                           std::to_string(ell) + ", k=" + std::to_string(k) + ")");

  ExtractionResult res;
  res.ell = ell;
  ChainOrSparseOutcome oc = chain_or_sparse(p, k, ell);

  if (oc.variant == CoreVariant::SetChain) {
    res.branch = Branch::DescendingSetChain;
    res.sets.ground_n = (int)n;
    res.sets.sets.assign(oc.family.sets.rbegin(), oc.family.sets.rend());
    VerifyResult vr = verify_structure(p, res.sets, StructureClaim::DescendingChain);
    if (!vr.ok) throw VerificationError("find_family: chain branch failed check: " + vr.message);
    res.achieved_size = res.sets.min_size();
    if (res.achieved_size < ell)
      throw VerificationError("find_family: chain branch produced undersized set");
    if (strict) res.guaranteed_size = (double)ell;
    return res;
  }

  res.branch = Branch::TotallyIncomparable;
  res.used_dual = (oc.variant == CoreVariant::SparseUp);
  res.sparse_core_size = (int)oc.core.size();
  if (res.sparse_core_size < 2)
    throw InstanceTooSmall("find_family: sparse core has fewer than 2 elements");
  InducedPoset ind = induced(p, oc.core);
  Poset work = res.used_dual ? dual(ind.poset) : std::move(ind.poset);

  double q = (double)res.sparse_core_size;
  res.gamma = q / f;
  res.lambda = g * res.gamma;
  if (res.gamma >= 1.0) {
    int maxdeg = 0;
    for (int x = 0; x < work.size(); ++x) maxdeg = std::max(maxdeg, work.down(x).count());
    res.lemma_preconditions_held = ((double)maxdeg <= res.lambda);
  }

  SubsetFamily inner = extract_incomparable(work, k, res.gamma, res.lambda, profile, strict);
  res.sets.ground_n = (int)n;
  for (const auto& s : inner.sets) {
    std::vector<int> mapped;
    mapped.reserve(s.size());
    for (int x : s) mapped.push_back(ind.to_old[x]);
    res.sets.sets.push_back(std::move(mapped));
  }
  VerifyResult vr = verify_structure(p, res.sets, StructureClaim::TotallyIncomparable);
  if (!vr.ok) throw VerificationError("find_family: incomparable branch failed check: " + vr.message);
  res.achieved_size = res.sets.min_size();
  if (strict) {
    double bound = 7.0 * (double)n / (16.0 * k * f * std::log((double)n));
    res.guaranteed_size = bound;
    if (!((double)res.achieved_size >= bound * (1.0 - 1e-9)))
      throw VerificationError("find_family: strict size guarantee missed");
  }
  return res;
}

namespace detail {

inline void check_strict_entry(const char* who, const Poset& p, int k, const BoundProfile& pr,
                               double extra_floor, const char* extra_name) {
  if (k < 2 || k > pr.kmax) return;  // find_family reports the range problem
  double n = (double)p.size(), f = pr.f(k), g = pr.g(k);
  std::string viol;
  if (!(g * g * n >= 1e5 * k * f * f)) viol += " [g(k)^2 n >= 1e5 k f(k)^2]";
  if (!(n >= extra_floor)) viol += std::string(" [") + extra_name + "]";
  if (!viol.empty()) throw PreconditionError(std::string(who) + ": requires" + viol);
}

}  // namespace detail

// Linear profile; strict mode additionally demands n >= (100k)^5.
inline ExtractionResult find_family_thm1(const Poset& p, int k, bool strict) {
  BoundProfile pr = profile_thm1(std::max(64, k));
  if (strict)
    detail::check_strict_entry("find_family_thm1", p, k, pr, std::pow(100.0 * k, 5.0),
                               "n >= (100k)^5");
  return find_family(p, k, pr, strict);
}

// Near-linear profile; strict mode demands n >= 1e10 k^3 (ln k)^2.
inline ExtractionResult find_family_thm2(const Poset& p, int k, bool strict) {
  BoundProfile pr = profile_thm2(std::max(64, k));
  double lk = std::log((double)k);
  if (strict)
    detail::check_strict_entry("find_family_thm2", p, k, pr, 1e10 * (double)k * k * k * lk * lk,
                               "n >= 1e10 k^3 (ln k)^2");
  return find_family(p, k, pr, strict);
}

struct BoundsReport {
  long long n = 0;
  int k = 0;
  double lower = 0.0;       // n / (40 k^2 ln n)
  double upper = 0.0;       // 200 n / (k^2 log2 n)
  bool lower_valid = false; // lower bound only stated for n >= (100k)^5
};

// Two-sided estimate of the best worst-case common size for (n, k).
inline BoundsReport mk_bounds(long long n, int k) {
  if (n < 3) throw RangeError("mk_bounds: n must be >= 3");
  if (k < 2) throw RangeError("mk_bounds: k must be >= 2");
  BoundsReport r;
  r.n = n;
  r.k = k;
  double dn = (double)n, dk = (double)k;
  r.lower = dn / (40.0 * dk * dk * std::log(dn));
  r.upper = 200.0 * dn / (dk * dk * std::log2(dn));
  r.lower_valid = (dn >= std::pow(100.0 * dk, 5.0));
  return r;
}

}  // namespace mdil
