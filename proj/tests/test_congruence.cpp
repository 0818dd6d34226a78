#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>
#include <vector>

#include "affine/congruence.hpp"
#include "test_util.hpp"

using namespace affine;

namespace {

const FiniteAlgebra& z6() {
  static FiniteAlgebra alg = builtin_algebra("zn_ring", {6});
  return alg;
}

Partition mod3() {
  return Partition::from_blocks(6, {{0, 3}, {1, 4}, {2, 5}});
}

Partition mod2() {
  return Partition::from_blocks(6, {{0, 2, 4}, {1, 3, 5}});
}

Partition halves() {
  return Partition::from_blocks(6, {{0, 1, 2}, {3, 4, 5}});
}

// Unary successor with a tail of length m into a cycle of length n - m.
FiniteAlgebra successor_algebra(std::size_t n, std::size_t m) {
  std::vector<Elem> table(n);
  for (std::size_t i = 0; i + 1 < n; ++i) table[i] = i + 1;
  table[n - 1] = m;
  return FiniteAlgebra("succ", n, Signature({{"s", 1}}), {std::move(table)});
}

std::size_t divisor_count(std::size_t p) {
  std::size_t count = 0;
  for (std::size_t d = 1; d <= p; ++d) {
    if (p % d == 0) ++count;
  }
  return count;
}

bool prime_power(std::size_t p) {
  if (p < 2) return false;
  std::size_t q = 2;
  while (q * q <= p && p % q != 0) ++q;
  if (q * q > p) return true;  // prime
  while (p % q == 0) p /= q;
  return p == 1;
}

}  // namespace

TEST_CASE("partition normal form and accessors") {
  Partition discrete(4);
  CHECK(discrete.block_count() == 4);
  CHECK(discrete.rep(3) == 3);
  CHECK(!discrete.same(0, 1));

  Partition relabeled = Partition::from_block_ids({2, 2, 0, 0});
  CHECK(relabeled.ids() == std::vector<Elem>{0, 0, 2, 2});
  CHECK(relabeled.same(0, 1));
  CHECK(relabeled.blocks() == std::vector<std::vector<Elem>>{{0, 1}, {2, 3}});

  Partition m3 = mod3();
  CHECK(m3.block_count() == 3);
  CHECK(m3.rep(4) == 1);
  CHECK(m3.blocks() == std::vector<std::vector<Elem>>{{0, 3}, {1, 4}, {2, 5}});

  CHECK(Partition::single_block(3).block_count() == 1);
  CHECK(Partition::from_block_ids({0, 0, 0}) == Partition::single_block(3));
  CHECK(m3 == Partition::from_block_ids({0, 1, 2, 0, 1, 2}));

  CHECK_THROWS_AS(Partition(0), ValidationError);
  CHECK_THROWS_AS(Partition::from_block_ids({0, 5, 0}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1}, {1, 2}}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(Partition::from_blocks(3, {{0, 1, 2}, {}}), ValidationError);
}

TEST_CASE("refines and join") {
  CHECK(Partition(6).refines(mod3()));
  CHECK(mod3().refines(Partition::single_block(6)));
  CHECK(!mod2().refines(mod3()));
  CHECK(!mod3().refines(mod2()));
  CHECK(mod3().refines(mod3()));

  CHECK(Partition::join(mod2(), mod3()) == Partition::single_block(6));
  CHECK(Partition::join(mod3(), Partition(6)) == mod3());
  CHECK(Partition::join(mod3(), mod3()) == mod3());
  CHECK_THROWS_AS(Partition::join(mod3(), Partition(5)), ValidationError);
  CHECK_THROWS_AS(mod3().refines(Partition(5)), ValidationError);

  // join is the least upper bound on random pairs
  std::mt19937_64 rng(6100);
  std::vector<Partition> all = testutil::all_partitions(4);
  for (int round = 0; round < 200; ++round) {
    const Partition& a = all[testutil::pick(rng, all.size())];
    const Partition& b = all[testutil::pick(rng, all.size())];
    Partition j = Partition::join(a, b);
    CHECK(a.refines(j));
    CHECK(b.refines(j));
    CHECK(j == Partition::join(b, a));
    for (const Partition& c : all) {
      if (a.refines(c) && b.refines(c)) CHECK(j.refines(c));
    }
  }
}

TEST_CASE("is_congruence on the mod-6 ring") {
  CHECK(is_congruence(z6(), mod3()));
  CHECK(is_congruence(z6(), mod2()));
  CHECK(!is_congruence(z6(), halves()));
  CHECK(is_congruence(z6(), Partition(6)));
  CHECK(is_congruence(z6(), Partition::single_block(6)));
  CHECK_THROWS_AS(is_congruence(z6(), Partition(5)), ValidationError);
}

TEST_CASE("monoid invariance matches operation compatibility") {
  for (std::uint64_t seed = 6200; seed < 6210; ++seed) {
    FiniteAlgebra alg = testutil::random_algebra(seed);
    TranslationMonoid monoid = translation_monoid(alg);
    for (const Partition& p : testutil::all_partitions(alg.carrier())) {
      CHECK(is_congruence(monoid, p) == testutil::compatible_with_operations(alg, p));
    }
  }
}

TEST_CASE("principal congruences") {
  Congruence c = principal_congruence(z6(), 0, 3);
  CHECK(c.partition == mod3());
  CHECK(c.verified);

  CHECK(principal_congruence(z6(), 4, 4).partition == Partition(6));

  FiniteAlgebra z5 = builtin_algebra("zn_ring", {5});
  CHECK(principal_congruence(z5, 0, 1).partition == Partition::single_block(5));

  CHECK(principal_congruence(z6(), 0, 2).partition == mod2());
  CHECK_THROWS_AS(principal_congruence(z6(), 0, 6), ValidationError);
}

TEST_CASE("principal congruence is the least one containing the pair") {
  for (std::uint64_t seed = 6300; seed < 6310; ++seed) {
    FiniteAlgebra alg = testutil::random_algebra(seed);
    std::vector<Partition> congruences;
    for (const Partition& p : testutil::all_partitions(alg.carrier())) {
      if (testutil::compatible_with_operations(alg, p)) congruences.push_back(p);
    }
    for (Elem a = 0; a < alg.carrier(); ++a) {
      for (Elem b = 0; b < alg.carrier(); ++b) {
        Congruence c = principal_congruence(alg, a, b);
        CHECK(c.partition.same(a, b));
        CHECK(testutil::compatible_with_operations(alg, c.partition));
        for (const Partition& q : congruences) {
          if (q.same(a, b)) CHECK(c.partition.refines(q));
        }
      }
    }
  }
}

TEST_CASE("largest congruence below a partition") {
  CHECK(largest_congruence_below(z6(), halves()).partition == Partition(6));
  CHECK(largest_congruence_below(z6(), mod2()).partition == mod2());
  CHECK(largest_congruence_below(z6(), Partition::single_block(6)).partition ==
        Partition::single_block(6));

  // greatest lower bound against the full scan
  for (std::uint64_t seed = 6400; seed < 6410; ++seed) {
    FiniteAlgebra alg = testutil::random_algebra(seed);
    std::vector<Partition> all = testutil::all_partitions(alg.carrier());
    for (const Partition& p : all) {
      Congruence below = largest_congruence_below(alg, p);
      CHECK(below.partition.refines(p));
      CHECK(testutil::compatible_with_operations(alg, below.partition));
      for (const Partition& q : all) {
        if (testutil::compatible_with_operations(alg, q) && q.refines(p)) {
          CHECK(q.refines(below.partition));
        }
      }
    }
  }
}

TEST_CASE("congruence lattice of the mod-6 ring") {
  std::vector<Congruence> lattice = congruence_lattice(z6());
  REQUIRE(lattice.size() == 4);
  CHECK(lattice[0].partition == Partition(6));
  CHECK(lattice[1].partition == mod3());
  CHECK(lattice[2].partition == mod2());
  CHECK(lattice[3].partition == Partition::single_block(6));
}

TEST_CASE("congruence lattice matches the full scan on random algebras") {
  for (std::uint64_t seed = 6500; seed < 6510; ++seed) {
    FiniteAlgebra alg = testutil::random_algebra(seed);
    std::set<std::vector<Elem>> expect;
    for (const Partition& p : testutil::all_partitions(alg.carrier())) {
      if (testutil::compatible_with_operations(alg, p)) expect.insert(p.ids());
    }
    std::set<std::vector<Elem>> got;
    for (const Congruence& c : congruence_lattice(alg)) got.insert(c.partition.ids());
    CHECK(got == expect);
  }
}

TEST_CASE("lattice sizes for small fixtures") {
  CHECK(congruence_lattice(builtin_algebra("zn_ring", {5})).size() == 2);
  FiniteAlgebra one("one", 1, Signature({{"f", 1}}), {{0}});
  CHECK(congruence_lattice(one).size() == 1);
  CHECK_THROWS_AS(congruence_lattice(builtin_algebra("zn_ring", {8})), ValidationError);
}

TEST_CASE("successor algebras have (m+1) times divisor-count congruences") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (std::size_t m = 0; m < n; ++m) {
      FiniteAlgebra alg = successor_algebra(n, m);
      std::vector<Congruence> lattice = congruence_lattice(alg);
      std::size_t period = n - m;
      CHECK(lattice.size() == (m + 1) * divisor_count(period));

      bool chain = true;
      for (std::size_t i = 0; i + 1 < lattice.size(); ++i) {
        chain = chain && lattice[i].partition.refines(lattice[i + 1].partition);
      }
      bool expect_chain = period == 1 || (m == 0 && prime_power(period));
      CHECK(chain == expect_chain);
    }
  }
}

TEST_CASE("quotients compute block tables and reject non-congruences") {
  Congruence c = principal_congruence(z6(), 0, 3);
  FiniteAlgebra q = quotient(z6(), c);
  CHECK(q.carrier() == 3);
  CHECK(q.name() == "zn_ring(6)/3");
  CHECK(q.signature() == z6().signature());
  FiniteAlgebra z3 = builtin_algebra("zn_ring", {3});
  CHECK(q.tables() == z3.tables());

  FiniteAlgebra same = quotient(z6(), Congruence{Partition(6), true});
  CHECK(same.carrier() == 6);
  CHECK(same.tables() == z6().tables());

  FiniteAlgebra collapsed = quotient(z6(), Congruence{Partition::single_block(6), true});
  CHECK(collapsed.carrier() == 1);

  CHECK_THROWS_AS(quotient(z6(), Congruence{halves(), true}), ValidationError);
}

TEST_CASE("quotient tables act on blocks ordered by least member") {
  for (std::uint64_t seed = 6600; seed < 6606; ++seed) {
    FiniteAlgebra alg = testutil::random_algebra(seed);
    for (const Congruence& c : congruence_lattice(alg)) {
      FiniteAlgebra q = quotient(alg, c);
      std::vector<std::vector<Elem>> blocks = c.partition.blocks();
      CHECK(q.carrier() == blocks.size());
      // the projection is a homomorphism: check every unary monoid action
      std::vector<Elem> block_of(alg.carrier());
      for (std::size_t b = 0; b < blocks.size(); ++b) {
        for (Elem e : blocks[b]) block_of[e] = b;
      }
      for (std::size_t s = 0; s < alg.signature().size(); ++s) {
        std::size_t k = alg.signature().at(s).arity;
        std::size_t tuples = 1;
        for (std::size_t i = 0; i < k; ++i) tuples *= alg.carrier();
        std::vector<Elem> args(k), qargs(k);
        for (std::size_t t = 0; t < tuples; ++t) {
          std::size_t rest = t;
          for (std::size_t i = k; i-- > 0;) {
            args[i] = rest % alg.carrier();
            qargs[i] = block_of[args[i]];
            rest /= alg.carrier();
          }
          CHECK(q.apply(s, qargs) == block_of[alg.apply(s, args)]);
        }
      }
    }
  }
}

TEST_CASE("simplicity") {
  CHECK(is_simple(builtin_algebra("zn_ring", {5})));
  CHECK(is_simple(builtin_algebra("zn_group", {7})));
  CHECK(!is_simple(z6()));
  CHECK(!is_simple(builtin_algebra("zn_group", {4})));
  FiniteAlgebra one("one", 1, Signature({{"f", 1}}), {{0}});
  CHECK(!is_simple(one));
  CHECK_THROWS_AS(is_simple(builtin_algebra("zn_ring", {8})), ValidationError);
}
