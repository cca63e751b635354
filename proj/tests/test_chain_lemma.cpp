#include <catch2/catch_amalgamated.hpp>

#include <mdil/chain_lemma.hpp>
#include <mdil/genlab.hpp>

#include <algorithm>
#include <vector>

using namespace mdil;

namespace {

Poset chain(int n) {
  std::vector<std::pair<int, int>> rel;
  for (int i = 0; i + 1 < n; ++i) rel.push_back({i, i + 1});
  return Poset::from_relations(n, rel);
}

Poset antichain(int n) { return Poset::from_relations(n, {}); }

Poset complete_bipartite(int lower, int upper) {
  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < lower; ++a)
    for (int b = 0; b < upper; ++b) rel.push_back({a, lower + b});
  return Poset::from_relations(lower + upper, rel);
}

Poset random_dag(int n, double p, std::uint64_t seed) {
  GenSpec spec;
  spec.model = GenModel::RandomDag;
  spec.n = n;
  spec.p = p;
  spec.seed = seed;
  return generate(spec);
}

}  // namespace

TEST_CASE("between counts on small posets") {
  Poset c = chain(5);
  CHECK(between_count(c, 0, 4) == 3);
  CHECK(between_count(c, 0, 1) == 0);
  CHECK(between_count(c, 1, 3) == 1);
  CHECK(between_count(c, 4, 0) == 0);
  CHECK(between_count(c, 2, 2) == 0);

  Poset a = antichain(4);
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) CHECK(between_count(a, x, y) == 0);

  CHECK_THROWS_AS(between_count(c, -1, 0), RangeError);
  CHECK_THROWS_AS(between_count(c, 0, 5), RangeError);
}

TEST_CASE("shifted order keeps pairs with enough witnesses") {
  Poset c5 = chain(5);
  Poset s1 = ell_order(c5, 1);
  for (int x = 0; x < 5; ++x)
    for (int y = 0; y < 5; ++y) CHECK(s1.less(x, y) == (y - x >= 2));

  Poset c6 = chain(6);
  Poset s2 = ell_order(c6, 2);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) CHECK(s2.less(x, y) == (y - x >= 3));

  // an antichain has nothing between any pair
  Poset sa = ell_order(antichain(6), 1);
  for (int x = 0; x < 6; ++x)
    for (int y = 0; y < 6; ++y) CHECK_FALSE(sa.less(x, y));

  CHECK_THROWS_AS(ell_order(c5, 0), RangeError);

  // shifting can only drop comparabilities
  Poset d = random_dag(40, 0.25, 7);
  Poset ds = ell_order(d, 1);
  for (int x = 0; x < 40; ++x)
    for (int y = 0; y < 40; ++y)
      if (ds.less(x, y)) CHECK(d.less(x, y));
}

TEST_CASE("between table agrees with pairwise counts") {
  Poset d = random_dag(60, 0.2, 9);
  BetweenTable bt(d);
  for (int x = 0; x < 60; ++x)
    for (int y = 0; y < 60; ++y) CHECK((int)bt.count(x, y) == between_count(d, x, y));

  CHECK(bt.shifted_order(1) == ell_order(d, 1));
  CHECK(bt.shifted_order(2) == ell_order(d, 2));
  CHECK_THROWS_AS(bt.shifted_order(0), RangeError);
}

TEST_CASE("longest shifted chain length on a chain") {
  Poset c = chain(100);
  BetweenTable bt(c);
  CHECK(bt.longest_shifted_chain(1) == 50);  // 0,2,4,...,98
  CHECK(bt.longest_shifted_chain(9) == 10);  // steps of 10
  CHECK(bt.longest_shifted_chain(99) == 1);

  BetweenTable ba(antichain(10));
  CHECK(ba.longest_shifted_chain(1) == 1);
}

TEST_CASE("dichotomy finds ascending sets on a long chain") {
  Poset c = chain(100);
  ChainOrSparseOutcome out = chain_or_sparse(c, 3, 8);
  REQUIRE(out.variant == CoreVariant::SetChain);
  REQUIRE(out.chain == std::vector<int>{0, 9, 18, 27});
  REQUIRE(out.family.sets.size() == 3);
  std::vector<std::vector<int>> want = {
      {1, 2, 3, 4, 5, 6, 7, 8}, {10, 11, 12, 13, 14, 15, 16, 17}, {19, 20, 21, 22, 23, 24, 25, 26}};
  CHECK(out.family.sets == want);
  CHECK(verify_structure(c, out.family, StructureClaim::AscendingChain).ok);
  for (size_t i = 0; i + 1 < out.chain.size(); ++i)
    CHECK(between_count(c, out.chain[i], out.chain[i + 1]) >= 8);
}

TEST_CASE("dichotomy on a 9-chain with two size-2 sets") {
  Poset c = chain(9);
  ChainOrSparseOutcome out = chain_or_sparse(c, 2, 2);
  REQUIRE(out.variant == CoreVariant::SetChain);
  CHECK(out.chain == std::vector<int>{0, 3, 6});
  CHECK(out.family.sets == std::vector<std::vector<int>>{{1, 2}, {4, 5}});
}

TEST_CASE("dichotomy reports a sparse core on an antichain") {
  Poset a = antichain(50);
  ChainOrSparseOutcome out = chain_or_sparse(a, 2, 1);
  REQUIRE(out.variant == CoreVariant::SparseDown);
  CHECK((int)out.core.size() == 50);
  CHECK(out.degree_threshold == Catch::Approx(4.0 * std::sqrt(50.0)));
  CHECK(out.family.sets.empty());

  Poset a16 = antichain(16);
  ChainOrSparseOutcome o16 = chain_or_sparse(a16, 2, 1);
  REQUIRE(o16.variant == CoreVariant::SparseDown);
  CHECK((int)o16.core.size() == 16);
}

TEST_CASE("dichotomy switches to up-degrees when the down side is heavy") {
  // complete bipartite 9 below 8: every upper element has 9 elements below it
  // inside the single shifted level, so the down-sparse side keeps only the 9
  // lower elements while the up-sparse side keeps all 17.
  Poset p = complete_bipartite(9, 8);
  ChainOrSparseOutcome out = chain_or_sparse(p, 2, 1);
  REQUIRE(out.variant == CoreVariant::SparseUp);
  REQUIRE((int)out.core.size() == 17);
  for (int i = 0; i < 17; ++i) CHECK(out.core[i] == i);
  long long q = 17;
  BitRow mask = BitRow::from_indices(17, out.core);
  for (int x : out.core) {
    long long deg = BitRow::and_count(p.up(x), mask);
    CHECK(deg * deg < 16 * q * 1);
    CHECK((double)deg <= out.degree_threshold);
  }
}

TEST_CASE("dichotomy rejects bad parameters") {
  Poset c = chain(10);
  CHECK_THROWS_AS(chain_or_sparse(c, 0, 1), RangeError);
  CHECK_THROWS_AS(chain_or_sparse(c, 1, 0), RangeError);
  CHECK_THROWS_AS(chain_or_sparse(c, 5, 2), PreconditionError);
  CHECK_THROWS_WITH(chain_or_sparse(c, 5, 2), Catch::Matchers::ContainsSubstring("l * k < n"));
}

TEST_CASE("dichotomy invariants hold on random orders") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Poset d = random_dag(120, 0.1, seed);
    int k = 3, l = 2;
    ChainOrSparseOutcome out = chain_or_sparse(d, k, l);
    if (out.variant == CoreVariant::SetChain) {
      REQUIRE((int)out.family.sets.size() == k);
      for (const auto& s : out.family.sets) CHECK((int)s.size() == l);
      CHECK(verify_structure(d, out.family, StructureClaim::AscendingChain).ok);
      REQUIRE((int)out.chain.size() == k + 1);
      for (int i = 0; i < k; ++i) CHECK(between_count(d, out.chain[i], out.chain[i + 1]) >= l);
    } else {
      long long n = d.size();
      long long q = (long long)out.core.size();
      CHECK(q >= (7 * n + 16 * k - 1) / (16 * k));
      BitRow mask = BitRow::from_indices(d.size(), out.core);
      bool down = out.variant == CoreVariant::SparseDown;
      for (int x : out.core) {
        long long deg = down ? BitRow::and_count(d.down(x), mask) : BitRow::and_count(d.up(x), mask);
        CHECK(deg * deg < 16 * q * l);
      }
    }
  }
}
