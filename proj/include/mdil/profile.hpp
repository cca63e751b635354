#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mdil/errors.hpp"

namespace mdil {

// Growth/degree budget pair (f, g) steering the halving recursion. f(k) is the
// minimum ground size in units of gamma; g(k) caps lambda in units of gamma.
struct BoundProfile {
  std::string name;
  int kmax = 0;
  std::function<double(int)> f;
  std::function<double(int)> g;
};

// Checks every inequality the recursion's accounting leans on, for
// 2 <= k <= kmax. Violations are returned as data, not thrown.
inline std::vector<std::string> validate_profile(const BoundProfile& pr) {
  std::vector<std::string> bad;
  auto flag = [&](int k, const std::string& what) {
    bad.push_back("k=" + std::to_string(k) + ": " + what);
  };
  if (pr.kmax < 2) {
    bad.push_back("kmax must be >= 2");
    return bad;
  }
  if (!(pr.f(2) >= 16.0)) flag(2, "f(2) >= 16");
  if (!(pr.g(2) <= 0.5)) flag(2, "g(2) <= 1/2");
  for (int k = 2; k <= pr.kmax; ++k) {
    if (!(pr.f(k) > pr.f(k - 1))) flag(k, "f increasing");
    if (!(pr.g(k) <= pr.g(k - 1))) flag(k, "g nonincreasing");
    if (!(pr.f(k) > 2.0 * pr.f(k / 2) + 6.0)) flag(k, "f(k) > 2 f(floor(k/2)) + 6");
    if (!(pr.f(k) >= 2.0 * pr.f((k + 1) / 2))) flag(k, "f(k) >= 2 f(ceil(k/2))");
    if (!(pr.g(k) <= (pr.f(k) / 2.0 - pr.f(k / 2) - 3.0) / (2.0 * k)))
      flag(k, "g(k) <= (f(k)/2 - f(floor(k/2)) - 3) / (2k)");
    if (!(pr.f(k) >= 8.0 * k)) flag(k, "f(k) >= 8k");
  }
  return bad;
}

inline bool profile_ok(const BoundProfile& pr) { return validate_profile(pr).empty(); }

// Linear profile: strongest size guarantee, degree budget shrinking with k.
inline BoundProfile profile_thm1(int kmax = 64) {
  return BoundProfile{
      "thm1", kmax,
      [](int k) { return 16.0 * (k - 1); },
      [](int k) { return 1.0 / k; },
  };
}

// Near-linear profile with a constant degree budget. The k log2(k) growth is
// the slowest of this shape that passes validate_profile; k ln(k) fails
// "f(k) >= 2 f(ceil(k/2))" at k = 3 and "f(k) >= 8k" at small k.
inline BoundProfile profile_thm2(int kmax = 64) {
  return BoundProfile{
      "thm2", kmax,
      [](int k) { return k >= 2 ? 8.0 * k * std::log2((double)k) : 1.0; },
      [](int) { return 0.5; },
  };
}

}  // namespace mdil
