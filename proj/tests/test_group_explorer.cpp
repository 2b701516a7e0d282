#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "helpers.hpp"
#include "plsigma/ball.hpp"
#include "plsigma/character.hpp"

using namespace plsigma;
using plsigma::testing::thompson_a;
using plsigma::testing::thompson_b;

namespace {

GroupSpec thompson_f() {
  return GroupSpec("thompson_f", IntervalSpec::compact(Rat(0), Rat(1)),
                   {{"A", thompson_a()}, {"B", thompson_b()}});
}

PLMap bump(const Rat& lo, const Rat& hi) {
  // one-bump map supported exactly on (lo, hi)
  Rat mid = (lo + hi) / Rat(2);
  Rat up = (lo + Rat(3) * hi) / Rat(4);
  return make_plmap({{lo, lo}, {mid, up}, {hi, hi}}, Rat(1), Rat(1));
}

GroupSpec two_bumps() {
  return GroupSpec("two_bumps", IntervalSpec::compact(Rat(0), Rat(1)),
                   {{"p", bump(Rat(0), Rat(1, 4))}, {"q", bump(Rat(1, 2), Rat(1))}});
}

}  // namespace

TEST_CASE("enumerate_ball") {
  GroupSpec f = thompson_f();
  SECTION("radius 0 is the identity alone") {
    BallIndex b = enumerate_ball(f, 0);
    REQUIRE(b.size() == 1);
    CHECK(b.elements[0].map.is_identity());
  }
  SECTION("radius 1 has five distinct canonical forms") {
    BallIndex b = enumerate_ball(f, 1);
    CHECK(b.size() == 5);
  }
  SECTION("free abelian rank 2 at radius 2: 13 elements, commutator harvested") {
    GroupSpec g = two_bumps();
    BallIndex b = enumerate_ball(g, 2);
    CHECK(b.size() == 13);
    bool commutator_found = false;
    for (const auto& r : b.relations) {
      if (r.size() == 4) {
        auto e = g.exponent_sums(r);
        bool both = false;
        for (const auto& [gen, s] : r.letters) both |= gen == 1;
        if (e[0] == 0 && e[1] == 0 && both) commutator_found = true;
      }
    }
    CHECK(commutator_found);
  }
  SECTION("every stored word evaluates to its key and every relation to the identity") {
    BallIndex b = enumerate_ball(f, 4);
    for (const auto& e : b.elements) CHECK(f.evaluate_word(e.word) == e.map);
    for (const auto& r : b.relations) CHECK(f.evaluate_word(r).is_identity());
  }
  SECTION("free-group growth bound, with equality for the rank-1 free group") {
    auto free_bound = [](size_t gens, int radius) {
      size_t total = 1, layer = 1;
      for (int r = 1; r <= radius; ++r) {
        layer *= (r == 1) ? 2 * gens : (2 * gens - 1);
        total += layer;
      }
      return total;
    };
    BallIndex bf = enumerate_ball(f, 4);
    CHECK(bf.size() <= free_bound(2, 4));
    GroupSpec cyc("cyclic", IntervalSpec::compact(Rat(0), Rat(1)), {{"b", bump(Rat(0), Rat(1))}});
    BallIndex bc = enumerate_ball(cyc, 5);
    CHECK(bc.size() == free_bound(1, 5));
  }
  SECTION("element cap") {
    CHECK_THROWS_AS(enumerate_ball(f, 6, 50), ResourceBudgetExceeded);
  }
  SECTION("deterministic rebuild") {
    BallIndex b1 = enumerate_ball(f, 3), b2 = enumerate_ball(f, 3);
    REQUIRE(b1.size() == b2.size());
    for (size_t i = 0; i < b1.size(); ++i) {
      CHECK(b1.elements[i].map == b2.elements[i].map);
      CHECK(b1.elements[i].word == b2.elements[i].word);
    }
    CHECK(b1.relations == b2.relations);
  }
}

TEST_CASE("irreducibility_check") {
  SECTION("Thompson F is irreducible") {
    CHECK(is_irreducible(irreducibility_check(thompson_f())));
  }
  SECTION("two separated bumps leave a gap with witness 3/8") {
    auto r = irreducibility_check(two_bumps());
    REQUIRE_FALSE(is_irreducible(r));
    CHECK(std::get<FixedPointWitness>(r).x == Rat(3, 8));
  }
  SECTION("a single undersized bump is reducible") {
    GroupSpec g("small", IntervalSpec::compact(Rat(0), Rat(1)), {{"b", bump(Rat(1, 4), Rat(3, 4))}});
    auto r = irreducibility_check(g);
    REQUIRE_FALSE(is_irreducible(r));
    Rat x = std::get<FixedPointWitness>(r).x;
    CHECK((Rat(0) < x && x < Rat(1)));
    CHECK_FALSE(support(g.gen_map(0)).contains(x));
  }
  SECTION("touching open supports leave an isolated fixed point") {
    GroupSpec g("touching", IntervalSpec::compact(Rat(0), Rat(1)),
                {{"p", bump(Rat(0), Rat(1, 2))}, {"q", bump(Rat(1, 2), Rat(1))}});
    auto r = irreducibility_check(g);
    REQUIRE_FALSE(is_irreducible(r));
    CHECK(std::get<FixedPointWitness>(r).x == Rat(1, 2));
  }
}

TEST_CASE("nonabelian_witness") {
  SECTION("Thompson F: first witness pair is (A, B)") {
    GroupSpec f = thompson_f();
    BallIndex b = enumerate_ball(f, 1);
    auto r = nonabelian_witness(f, b);
    REQUIRE(std::holds_alternative<NonAbelianWitness>(r));
    auto w = std::get<NonAbelianWitness>(r);
    CHECK(b.elements[w.i].map == thompson_a());
    CHECK(b.elements[w.j].map == thompson_b());
  }
  SECTION("cyclic group has no witness") {
    GroupSpec cyc("cyclic", IntervalSpec::compact(Rat(0), Rat(1)), {{"b", bump(Rat(0), Rat(1))}});
    BallIndex b = enumerate_ball(cyc, 4);
    CHECK(std::holds_alternative<NotFoundWithinBall>(nonabelian_witness(cyc, b)));
  }
  SECTION("disjoint supports commute") {
    GroupSpec g = two_bumps();
    BallIndex b = enumerate_ball(g, 3);
    CHECK(std::holds_alternative<NotFoundWithinBall>(nonabelian_witness(g, b)));
  }
}

TEST_CASE("kernel_generation_check") {
  SECTION("Thompson F is verified by lattice witnesses") {
    GroupSpec f = thompson_f();
    BallIndex b = enumerate_ball(f, 3);
    auto r = kernel_generation_check(f, b);
    REQUIRE(std::holds_alternative<VerifiedByLattice>(r));
    auto& v = std::get<VerifiedByLattice>(r);
    CHECK_FALSE(v.left_witnesses.empty());
    CHECK_FALSE(v.right_witnesses.empty());
    // the found witnesses really live in the opposite kernels
    for (size_t i : v.left_witnesses)
      CHECK(germs(b.elements[i].map, f.interval).second.is_trivial());
    for (size_t i : v.right_witnesses)
      CHECK(germs(b.elements[i].map, f.interval).first.is_trivial());
  }
  SECTION("every generator in a kernel: verified by tags") {
    GroupSpec g("tagged", IntervalSpec::compact(Rat(0), Rat(1)),
                {{"p", bump(Rat(0), Rat(3, 4))}, {"q", bump(Rat(1, 4), Rat(1))}});
    BallIndex b = enumerate_ball(g, 1);
    CHECK(std::holds_alternative<VerifiedByTags>(kernel_generation_check(g, b)));
  }
  SECTION("stable-letter construction is not verified") {
    // scaled Thompson copy on [1/4,3/4] plus one f moving both flanks
    PLMap a2 = make_plmap({{Rat(1, 4), Rat(1, 4)}, {Rat(1, 2), Rat(3, 8)}, {Rat(5, 8), Rat(1, 2)}, {Rat(3, 4), Rat(3, 4)}},
                          Rat(1), Rat(1));
    PLMap fmap = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}},
                            Rat(1), Rat(1));
    GroupSpec g("lemma43ish", IntervalSpec::compact(Rat(0), Rat(1)), {{"h", a2}, {"f", fmap}});
    BallIndex b = enumerate_ball(g, 4);
    auto r = kernel_generation_check(g, b);
    REQUIRE(std::holds_alternative<NotVerified>(r));
  }
}

TEST_CASE("conjugate_into") {
  GroupSpec f = thompson_f();
  BallIndex ball = enumerate_ball(f, 3);
  SECTION("support already inside the window") {
    auto r = conjugate_into(f, ball, thompson_b(), Bound::finite(Rat(1, 4)), Bound::finite(Rat(1)));
    REQUIRE(std::holds_alternative<Conjugator>(r));
    CHECK(std::get<Conjugator>(r).map.is_identity());
  }
  SECTION("B itself cannot cross the fixed endpoint, a bounded commutator can") {
    // every element of F fixes 1, so supp(B) = (1/2,1) can never enter (0,1/2]
    auto direct = conjugate_into(f, ball, thompson_b(), Bound::finite(Rat(0)), Bound::finite(Rat(1, 2)));
    CHECK(std::holds_alternative<NotFoundWithinBall>(direct));
    PLMap h2 = commutator(thompson_b(), conjugate(thompson_a(), thompson_b()));
    REQUIRE_FALSE(h2.is_identity());
    REQUIRE(germs(h2, f.interval).second.is_trivial());  // bounded support
    auto r = conjugate_into(f, ball, h2, Bound::finite(Rat(0)), Bound::finite(Rat(1, 2)));
    REQUIRE(std::holds_alternative<Conjugator>(r));
    const auto& c = std::get<Conjugator>(r);
    CHECK(support_image(c.map, support(h2)).within(Bound::finite(Rat(0)), Bound::finite(Rat(1, 2))));
  }
  SECTION("fixed point separating support from target") {
    GroupSpec g = two_bumps();
    BallIndex b = enumerate_ball(g, 3);
    auto r = conjugate_into(g, b, g.gen_map(1), Bound::finite(Rat(0)), Bound::finite(Rat(1, 4)));
    CHECK(std::holds_alternative<NotFoundWithinBall>(r));
  }
}

TEST_CASE("irreducibility provides contracting elements (Lemma 2.1(i) search)") {
  GroupSpec f = thompson_f();
  BallIndex ball = enumerate_ball(f, 4);
  std::mt19937 rng(47);
  std::uniform_int_distribution<long> num(1, 63);
  for (int trial = 0; trial < 20; ++trial) {
    Rat t(num(rng), 64), tp(num(rng), 64);
    if (tp <= t) continue;
    bool found = false;
    for (size_t i = 1; i < ball.size() && !found; ++i) {
      Rat x = tp;
      for (int m = 0; m < 64; ++m) {
        x = ball.elements[i].map.evaluate(x);
        if (x < t) { found = true; break; }
      }
    }
    CHECK(found);
  }
}
