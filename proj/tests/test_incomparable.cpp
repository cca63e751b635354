#include <catch2/catch_amalgamated.hpp>

#include <mdil/genlab.hpp>
#include <mdil/incomparable.hpp>
#include <mdil/profile.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

using namespace mdil;

namespace {

Poset chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.push_back({i, i + 1});
  return Poset::from_relations(n, rel);
}

Poset antichain(int n) { return Poset::from_relations(n, {}); }

// bottoms 0..2t-1, top t_i = 2t+i above {2i, 2i+1}
Poset paired_tops(int t) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i < t; ++i) {
    rel.push_back({2 * i, 2 * t + i});
    rel.push_back({2 * i + 1, 2 * t + i});
  }
  return Poset::from_relations(3 * t, rel);
}

bool has_violation(const std::vector<std::string>& bad, const std::string& needle) {
  return std::any_of(bad.begin(), bad.end(), [&](const std::string& s) {
    return s.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("shipped profiles pass their own audit") {
  CHECK(validate_profile(profile_thm1()).empty());
  CHECK(validate_profile(profile_thm2()).empty());
  CHECK(validate_profile(profile_thm1(6)).empty());
  CHECK(validate_profile(profile_thm2(6)).empty());
  CHECK(profile_thm1().f(2) == 16.0);
  CHECK(profile_thm1().g(4) == 0.25);
  CHECK(profile_thm2().f(2) == 16.0);
  CHECK(profile_thm2().g(17) == 0.5);
}

TEST_CASE("profile audit flags a too-small f(2)") {
  BoundProfile pr{"flat", 2, [](int) { return 10.0; }, [](int) { return 0.5; }};
  std::vector<std::string> bad = validate_profile(pr);
  REQUIRE_FALSE(bad.empty());
  CHECK(has_violation(bad, "f(2) >= 16"));
}

TEST_CASE("profile audit rejects natural-log growth") {
  // 8k ln k with the first two values pinned at 8 and 16 looks plausible but
  // fails the doubling requirement at k = 3.
  BoundProfile pr{"kln", 8,
                  [](int k) {
                    if (k <= 1) return 8.0;
                    if (k == 2) return 16.0;
                    return 8.0 * k * std::log((double)k);
                  },
                  [](int) { return 0.5; }};
  std::vector<std::string> bad = validate_profile(pr);
  REQUIRE_FALSE(bad.empty());
  CHECK(has_violation(bad, "k=3"));
  CHECK(has_violation(bad, "f(k) >= 2 f(ceil(k/2))"));
}

TEST_CASE("profile audit needs kmax >= 2") {
  BoundProfile pr{"tiny", 1, [](int) { return 100.0; }, [](int) { return 0.1; }};
  std::vector<std::string> bad = validate_profile(pr);
  REQUIRE(bad.size() == 1);
  CHECK(bad[0] == "kmax must be >= 2");
  CHECK_FALSE(profile_ok(pr));
  CHECK(profile_ok(profile_thm1()));
}

TEST_CASE("condense keeps one clean block per slot") {
  Poset q = paired_tops(4);  // bottoms 0..7, tops 8..11
  CondenseResult r = condense(q, {8, 9, 10, 11}, 2, 1.0);
  CHECK_FALSE(r.trace.emptied);
  REQUIRE(r.trace.steps.size() == 1);
  CHECK(r.trace.steps[0].working_size == 4);
  CHECK(r.trace.steps[0].candidate_sizes == std::vector<int>{4, 4});
  CHECK(r.trace.steps[0].removed_index == -1);
  CHECK(r.sets == std::vector<std::vector<int>>{{0, 1, 2, 3}, {4, 5, 6, 7}});
  CHECK(verify_structure(q, SubsetFamily{q.size(), r.sets},
                         StructureClaim::TotallyIncomparable)
            .ok);
}

TEST_CASE("condense drops the starved block and retries") {
  // 6 and 7 cover disjoint pairs; 8 and 9 cover nothing.
  Poset q = Poset::from_relations(10, {{0, 6}, {1, 6}, {2, 7}, {3, 7}});
  CondenseResult r = condense(q, {6, 7, 8, 9}, 2, 1.0);
  REQUIRE(r.trace.steps.size() == 2);
  CHECK(r.trace.steps[0].working_size == 4);
  CHECK(r.trace.steps[0].candidate_sizes == std::vector<int>{4, 0});
  CHECK(r.trace.steps[0].removed_index == 1);
  CHECK(r.trace.steps[1].working_size == 2);
  CHECK(r.trace.steps[1].removed_index == -1);
  CHECK(r.sets == std::vector<std::vector<int>>{{0, 1}, {2, 3}});
  CHECK_FALSE(r.trace.emptied);
}

TEST_CASE("condense empties when the working set starves out") {
  CondenseResult r = condense(antichain(8), {0, 1, 2, 3, 4, 5, 6, 7}, 2, 0.5);
  CHECK(r.trace.emptied);
  REQUIRE(r.trace.steps.size() == 3);
  for (const auto& st : r.trace.steps) CHECK(st.removed_index == 0);
  CHECK(r.sets == std::vector<std::vector<int>>{{}, {}});
}

TEST_CASE("condense returns k empty sets for an undersized working set") {
  CondenseResult r = condense(chain(10), {0, 1}, 3, 1.0);
  CHECK(r.trace.emptied);
  CHECK(r.trace.steps.empty());
  CHECK(r.sets == std::vector<std::vector<int>>(3));
}

TEST_CASE("condense rejects bad arguments") {
  Poset c = chain(4);
  CHECK_THROWS_AS(condense(c, {0}, 0, 1.0), RangeError);
  CHECK_THROWS_AS(condense(c, {0}, 1, 0.0), RangeError);
  CHECK_THROWS_AS(condense(c, {9}, 1, 1.0), RangeError);
  CHECK_THROWS_AS(condense(Poset::from_relations(1, {}), {0}, 1, 1.0), DegenerateError);
}

TEST_CASE("halving splits an antichain down the middle") {
  std::vector<std::vector<int>> sets = halving_select(antichain(32), 2, 2.0, 0.0);
  REQUIRE(sets.size() == 2);
  std::vector<int> top(16), bot(16);
  for (int i = 0; i < 16; ++i) top[i] = 16 + i, bot[i] = i;
  CHECK(sets[0] == top);  // top-of-extension branch fills the first slot
  CHECK(sets[1] == bot);
}

TEST_CASE("halving hands a heavy down-set to condense") {
  Poset q = paired_tops(4);
  std::vector<std::vector<int>> sets = halving_select(q, 2, 3.0, 0.0);
  CHECK(sets == std::vector<std::vector<int>>{{0, 1}, {2, 3, 4, 5}});
}

TEST_CASE("halving with one slot keeps everything") {
  std::vector<std::vector<int>> sets = halving_select(chain(5), 1, 0.1, 0.0);
  REQUIRE(sets.size() == 1);
  CHECK(sets[0] == std::vector<int>{0, 1, 2, 3, 4});
}

TEST_CASE("halving guards its arguments") {
  Poset c = chain(4);
  CHECK_THROWS_AS(halving_select(c, 0, 1.0, 0.0), RangeError);
  CHECK_THROWS_AS(halving_select(c, 1, 0.0, 0.0), RangeError);
  CHECK_THROWS_AS(halving_select(c, 1, 1.0, -1.0), RangeError);
  CHECK_THROWS_AS(halving_select(Poset::from_relations(1, {}), 2, 1.0, 0.0), DegenerateError);
}

TEST_CASE("extraction splits a 16-antichain into two eights") {
  SubsetFamily fam = extract_incomparable(antichain(16), 2, 1.0, 0.0, profile_thm1(), true);
  REQUIRE(fam.sets.size() == 2);
  CHECK(fam.sets[0].size() == 8);
  CHECK(fam.sets[1].size() == 8);
  CHECK(fam.min_size() == 8);
}

TEST_CASE("strict extraction reports every violated entry bound") {
  Poset a = antichain(16);
  // gamma above n / f(k)
  CHECK_THROWS_WITH(extract_incomparable(a, 2, 2.0, 1.0, profile_thm1(), true),
                    Catch::Matchers::ContainsSubstring("[gamma <= n / f(k)]"));
  // chain: gamma < 1 and a max down-degree way past lambda
  try {
    extract_incomparable(chain(16), 2, 0.5, 0.0, profile_thm1(), true);
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& e) {
    std::string msg = e.what();
    CHECK(msg.find("extract_incomparable: violated:") == 0);
    CHECK(msg.find("[gamma >= 1]") != std::string::npos);
    CHECK(msg.find("[max down-degree <= lambda]") != std::string::npos);
  }
  CHECK_THROWS_WITH(extract_incomparable(a, 5, 1.0, 0.0, profile_thm1(3), true),
                    Catch::Matchers::ContainsSubstring("[k <= profile kmax]"));
}

TEST_CASE("relaxed extraction runs below the strict gamma floor") {
  SubsetFamily fam = extract_incomparable(antichain(4), 2, 0.1, 0.0, profile_thm1(), false);
  REQUIRE(fam.sets.size() == 2);
  CHECK(fam.sets[0].size() == 2);
  CHECK(fam.sets[1].size() == 2);
}

TEST_CASE("extraction guards its arguments") {
  Poset a = antichain(4);
  CHECK_THROWS_AS(extract_incomparable(a, 1, 1.0, 0.0, profile_thm1(), false), RangeError);
  CHECK_THROWS_AS(extract_incomparable(a, 2, 0.0, 0.0, profile_thm1(), false), RangeError);
  CHECK_THROWS_AS(extract_incomparable(a, 2, 1.0, -0.5, profile_thm1(), false), RangeError);
  CHECK_THROWS_AS(
      extract_incomparable(Poset::from_relations(1, {}), 2, 1.0, 0.0, profile_thm1(), false),
      DegenerateError);
}

TEST_CASE("extraction outputs stay disjoint and incomparable on random orders") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    GenSpec spec;
    spec.model = GenModel::RandomDag;
    spec.n = 60;
    spec.p = 0.15;
    spec.seed = seed;
    Poset d = generate(spec);
    SubsetFamily fam = extract_incomparable(d, 3, 0.3, 2.0, profile_thm1(), false);
    REQUIRE(fam.sets.size() == 3);
    CHECK(fam.ground_n == 60);
    CHECK(verify_structure(d, fam, StructureClaim::TotallyIncomparable).ok);
    std::vector<bool> seen(60, false);
    for (const auto& s : fam.sets)
      for (int x : s) {
        CHECK_FALSE(seen[x]);
        seen[x] = true;
      }
  }
}
