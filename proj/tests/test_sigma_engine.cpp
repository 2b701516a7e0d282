#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "plsigma/classify.hpp"
#include "plsigma/monoid.hpp"

using namespace plsigma;
using plsigma::testing::thompson_a;
using plsigma::testing::thompson_b;

namespace {

GroupSpec thompson_f() {
  return GroupSpec("thompson_f", IntervalSpec::compact(Rat(0), Rat(1)),
                   {{"A", thompson_a()}, {"B", thompson_b()}});
}

Character chi_ab(long a, long b) {
  return tabled({{"A", LogReal(Rat(a))}, {"B", LogReal(Rat(b))}});
}

PLMap bump(const Rat& lo, const Rat& hi) {
  Rat mid = (lo + hi) / Rat(2);
  Rat up = (lo + Rat(3) * hi) / Rat(4);
  return make_plmap({{lo, lo}, {mid, up}, {hi, hi}}, Rat(1), Rat(1));
}

// half line: u scales near 0 with bounded support, v translates by 1 near inf
GroupSpec halfline_uv() {
  PLMap u = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1));
  PLMap v = make_plmap({{Rat(1), Rat(1)}, {Rat(2), Rat(3)}}, Rat(1), Rat(1));
  return GroupSpec("halfline_uv", IntervalSpec::half_line(), {{"u", u}, {"v", v}});
}

Character chi_uv(long cu, long cv) {
  return tabled({{"u", LogReal(Rat(cu))}, {"v", LogReal(Rat(cv))}});
}

}  // namespace

TEST_CASE("word_valuation") {
  GroupSpec f = thompson_f();
  Character chi = chi_ab(0, 1);  // chi(t) = 1 for t = B, chi(A) = 0
  CHECK(word_valuation(chi, Word::empty(), f).is_zero());
  SECTION("t^-1 y t has valuation -chi(t)") {
    Word w = Word::letter(1, -1) * Word::letter(0, 1) * Word::letter(1, 1);  // B^-1 A B
    CHECK(word_valuation(chi, w, f) == LogReal(Rat(-1)));
  }
  SECTION("w_y has valuation min{-chi(t) + chi(h), 0}") {
    Word y = Word::letter(0, 1), f0 = Word::letter(0, 1), h = Word::letter(1, 1);
    // chi(t) = 1 = chi(h): the minimum is 0
    Word t1 = Word::letter(1, 1);
    Word wy1 = y * f0 * h * f0.inverse() * y.inverse() * t1.inverse() * y * t1 * f0 * h.inverse() * f0.inverse();
    CHECK(word_valuation(chi, wy1, f).is_zero());
    // chi(t) = 2 > chi(h) = 1: the minimum is -1
    Word t2 = Word::letter(1, 1) * Word::letter(1, 1);
    Word wy2 = y * f0 * h * f0.inverse() * y.inverse() * t2.inverse() * y * t2 * f0 * h.inverse() * f0.inverse();
    CHECK(word_valuation(chi, wy2, f) == LogReal(Rat(-1)));
  }
}

TEST_CASE("gamma_chi_components") {
  GroupSpec f = thompson_f();
  SECTION("radius 0") {
    auto g = gamma_chi_components(f, chi_ell(), 0);
    CHECK(g.report.nonneg_vertices == 1);
    CHECK(g.report.components == 1);
  }
  SECTION("membership ray: the identity component dominates the nonneg ball") {
    auto g = gamma_chi_components(f, chi_ab(0, 1), 5);
    // elements near the boundary may lack in-ball return paths, but the bulk
    // of the chi-nonnegative ball hangs together at the identity
    CHECK(g.report.identity_component_size * 10 >= g.report.nonneg_vertices * 9);
    CHECK(g.report.evidence_only);
  }
  SECTION("monoid generating set disconnects the chi_ell-nonneg ball") {
    MonoidSpec M{MonoidSpec::Kind::LinearOnLeft, Rat(1, 8), chi_ell()};
    PLMap a = thompson_a(), b = thompson_b();
    PLMap d = conjugate(power(a, 2), b);  // A^2 B A^-2, also in M
    Word dw = conjugated(Word::letter(0, 1).pow(2), Word::letter(1, 1));
    std::vector<GroupElement> gens{{invert(a), Word::letter(0, -1)},
                                   {b, Word::letter(1, 1)},
                                   {d, dw}};
    for (const auto& g : gens) CHECK(monoid_member(M, g, f));
    auto g = gamma_chi_components(f, chi_ell(), 6, gens);
    CHECK(g.report.components >= 2);
    // every vertex in the identity's component is an M-member (Prop 2.4 proof)
    for (size_t v = 0; v < g.vertices.size(); ++v)
      if (g.component[v] == 0) CHECK(monoid_member(M, g.vertices[v], f));
    // and some chi-nonneg vertex lies outside M, hence in another component
    bool outside = false;
    for (size_t v = 0; v < g.vertices.size(); ++v) outside |= !monoid_member(M, g.vertices[v], f);
    CHECK(outside);
  }
}

TEST_CASE("monoid_property_test") {
  GroupSpec f = thompson_f();
  SECTION("LinearOnLeft(1/8) with chi_ell on a radius-4 ball") {
    MonoidSpec M{MonoidSpec::Kind::LinearOnLeft, Rat(1, 8), chi_ell()};
    BallIndex ball = enumerate_ball(f, 4);
    auto rep = monoid_property_test(f, M, ball);
    CHECK(rep.closure_ok);
    CHECK(rep.kernel_law_ok);
    CHECK(rep.quotient_law_ok);
    REQUIRE(rep.properness_witness.has_value());
    PLMap w = f.evaluate_word(*rep.properness_witness);
    CHECK(lr_sign(char_eval(chi_ell(), w, f)) != Sign::Negative);
    CHECK_FALSE(monoid_member(M, {w, *rep.properness_witness}, f));
    CHECK(rep.generation_checked == rep.generation_ok);
  }
  SECTION("identity-only ball: vacuous pass") {
    MonoidSpec M{MonoidSpec::Kind::LinearOnLeft, Rat(1, 8), chi_ell()};
    BallIndex ball = enumerate_ball(f, 0);
    auto rep = monoid_property_test(f, M, ball);
    CHECK(rep.closure_ok);
    CHECK_FALSE(rep.properness_witness.has_value());
  }
  SECTION("TranslationAbove on the half line with chi = -tau_r") {
    GroupSpec h = halfline_uv();
    MonoidSpec M{MonoidSpec::Kind::TranslationAbove, Rat(2), neg_tau_r()};
    BallIndex ball = enumerate_ball(h, 3);
    auto rep = monoid_property_test(h, M, ball);
    CHECK(rep.closure_ok);
    CHECK(rep.kernel_law_ok);
    CHECK(rep.quotient_law_ok);
    REQUIRE(rep.properness_witness.has_value());
    PLMap w = h.evaluate_word(*rep.properness_witness);
    CHECK(support(w).within(Bound::finite(Rat(2)), Bound::pos_inf()));
  }
}

TEST_CASE("find_witnesses") {
  GroupSpec f = thompson_f();
  BallIndex ball = enumerate_ball(f, 4);
  SECTION("left-shrink witnesses for (A -> 0, B -> 1)") {
    auto r = find_witnesses(f, chi_ab(0, 1), WitnessCase::LeftShrink, ball);
    REQUIRE(std::holds_alternative<FH>(r));
    const auto& fh = std::get<FH>(r);
    CHECK(lr_positive(char_eval(chi_ab(0, 1), fh.f, f)));
    CHECK(lr_positive(char_eval(chi_ab(0, 1), fh.h, f)));
    CHECK(fh.f.map.slope_right_of(Rat(0)) < Rat(1));
    CHECK(fh.f.map.affine_on(Rat(0), fh.window_param));
    CHECK(support(fh.h.map).within(Bound::finite(Rat(0)), Bound::finite(fh.window_param)));
  }
  SECTION("no separating witnesses on the germ ray itself") {
    auto r = find_witnesses(f, chi_ell(), WitnessCase::LeftShrink, ball);
    CHECK(std::holds_alternative<NotFoundWithinBall>(r));
  }
  SECTION("translation-right witnesses on the half line") {
    GroupSpec h = halfline_uv();
    BallIndex hb = enumerate_ball(h, 4);
    auto r = find_witnesses(h, chi_uv(0, 1), WitnessCase::TransRight, hb);
    REQUIRE(std::holds_alternative<FH>(r));
    const auto& fh = std::get<FH>(r);
    CHECK(fh.f.map.right_slope().is_one());
    CHECK(fh.f.map.affine_above(fh.window_param));
    CHECK(fh.window_param < fh.f.map.evaluate(fh.window_param));  // tau_r(f) > 0
    CHECK(support(fh.h.map).within(Bound::finite(fh.window_param), Bound::pos_inf()));
  }
}

TEST_CASE("membership_certificate and its verifier") {
  GroupSpec f = thompson_f();
  BallIndex ball = enumerate_ball(f, 4);
  Character chi = chi_ab(0, 1);
  auto wr = find_witnesses(f, chi, WitnessCase::LeftShrink, ball);
  REQUIRE(std::holds_alternative<FH>(wr));
  const auto& fh = std::get<FH>(wr);
  auto cert = membership_certificate(f, chi, fh);
  CHECK(cert.flag_relation_identity);
  CHECK(cert.flag_valuation_gap);
  CHECK(cert.flag_disjoint_supports);
  SECTION("verifier accepts the emitted certificate") {
    auto rep = verify_certificate(f, cert);
    CHECK(rep.ok);
  }
  SECTION("tampered h: support overlapping a commutator") {
    FH bad = fh;
    bad.h = {thompson_b(), Word::letter(1, 1)};  // supp(B) = (1/2, 1), way outside the window
    CHECK_THROWS_AS(membership_certificate(f, chi, bad), HypothesisFailure);
    try {
      membership_certificate(f, chi, bad);
    } catch (const HypothesisFailure& e) {
      CHECK(e.stage == "DisjointnessCheck");
    }
  }
  SECTION("tampered serialized certificate is rejected") {
    auto broken = cert;
    broken.relation_rhs[0] = broken.relation_rhs[0] * Word::letter(0, 1);
    CHECK_FALSE(verify_certificate(f, broken).ok);
    auto broken2 = cert;
    broken2.m += 1;
    CHECK_FALSE(verify_certificate(f, broken2).ok);
    auto broken3 = cert;
    broken3.t = Word::letter(0, 1);  // chi(A) = 0, not positive
    CHECK_FALSE(verify_certificate(f, broken3).ok);
  }
}

TEST_CASE("classify_ray on Thompson's group F") {
  GroupSpec f = thompson_f();
  RunConfig cfg;
  SECTION("[chi_ell] direction is NonMember") {
    auto rc = classify_ray(f, chi_ab(-1, 0), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::NonMember);
    CHECK(rc.non_membership->matched == NonMembershipCertificate::GermRay::ChiEll);
    CHECK(rc.non_membership->theorem == "Prop 2.5");
  }
  SECTION("[chi_r] direction (1,1) is NonMember") {
    auto rc = classify_ray(f, chi_ab(1, 1), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::NonMember);
    CHECK(rc.non_membership->matched == NonMembershipCertificate::GermRay::ChiR);
  }
  SECTION("(0,1) is Member with a verified certificate") {
    auto rc = classify_ray(f, chi_ab(0, 1), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::Member);
    REQUIRE(rc.membership.has_value());
    CHECK(verify_certificate(f, *rc.membership).ok);
  }
  SECTION("(1,0), the ray opposite chi_ell, is Member") {
    auto rc = classify_ray(f, chi_ab(1, 0), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::Member);
    CHECK(verify_certificate(f, *rc.membership).ok);
  }
  SECTION("verdicts are scale invariant") {
    for (auto [a, b] : {std::pair<long, long>{-1, 0}, {1, 1}, {0, 1}}) {
      auto r1 = classify_ray(f, chi_ab(a, b), cfg);
      auto r3 = classify_ray(f, scale_char(Rat(3), chi_ab(a, b)), cfg);
      CHECK(r1.verdict == r3.verdict);
      if (r1.non_membership) {
        REQUIRE(r3.non_membership.has_value());
        CHECK(r1.non_membership->matched == r3.non_membership->matched);
      }
    }
  }
  SECTION("zero character is rejected") {
    CHECK_THROWS_AS(classify_ray(f, chi_ab(0, 0), cfg), ZeroCharacter);
  }
}

TEST_CASE("classify_ray on the half line") {
  GroupSpec h = halfline_uv();
  RunConfig cfg;
  SECTION("[chi_ell] = (1,0) is NonMember") {
    auto rc = classify_ray(h, chi_uv(1, 0), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::NonMember);
    CHECK(rc.non_membership->matched == NonMembershipCertificate::GermRay::ChiEll);
    CHECK(rc.non_membership->theorem == "Prop 5.1");
  }
  SECTION("[-tau_r] = (0,-1) is NonMember") {
    auto rc = classify_ray(h, chi_uv(0, -1), cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::NonMember);
    CHECK(rc.non_membership->matched == NonMembershipCertificate::GermRay::NegTauR);
  }
  SECTION("(0,1) and (-1,0) are Members") {
    for (auto [cu, cv] : {std::pair<long, long>{0, 1}, {-1, 0}}) {
      auto rc = classify_ray(h, chi_uv(cu, cv), cfg);
      REQUIRE(rc.verdict == RayClassification::Verdict::Member);
      CHECK(verify_certificate(h, *rc.membership).ok);
    }
  }
}

TEST_CASE("abelian groups take the direct certificate route") {
  GroupSpec cyc("cyclic", IntervalSpec::compact(Rat(0), Rat(1)), {{"b", bump(Rat(0), Rat(1))}});
  for (long dir : {1L, -1L}) {
    auto rc = classify_ray(cyc, tabled({{"b", LogReal(Rat(dir))}}), RunConfig{.radius = 3});
    REQUIRE(rc.verdict == RayClassification::Verdict::Member);
    CHECK(rc.membership->commuting_shortcut);
    CHECK(verify_certificate(cyc, *rc.membership).ok);
  }
}

TEST_CASE("product_complement") {
  auto shift2 = [](const PLMap& m) {
    std::vector<std::pair<Rat, Rat>> bps;
    for (const auto& [x, y] : m.breakpoints()) bps.emplace_back(x + Rat(2), y + Rat(2));
    return make_plmap(std::move(bps), m.left_slope(), m.right_slope());
  };
  GroupSpec f1 = thompson_f();
  GroupSpec f2("thompson_f_shift", IntervalSpec::compact(Rat(2), Rat(3)),
               {{"A", shift2(thompson_a())}, {"B", shift2(thompson_b())}});
  SECTION("F plus translated F: four complement rays") {
    FactorReport r1{f1, {chi_ell(), chi_r()}};
    FactorReport r2{f2, {chi_ell(), chi_r()}};
    auto pc = product_complement({r1, r2});
    REQUIRE(pc.complement.size() == 4);
    CHECK(pc.product.generators.size() == 4);
    // each pulled-back ray vanishes on the other factor's generators
    for (size_t k = 0; k < pc.complement.size(); ++k) {
      const auto& tc = std::get<TabledChar>(pc.complement[k]);
      for (const auto& g : pc.product.generators) {
        bool same_factor = pc.ray_origin[k] == (k < 2 ? "thompson_f" : "thompson_f_shift");
        (void)same_factor;
        bool other = (k < 2) ? g.symbol.starts_with("thompson_f_shift.") : g.symbol.starts_with("thompson_f.");
        if (other) CHECK(tc.values.at(g.symbol).is_zero());
      }
    }
  }
  SECTION("two infinite-cyclic bumps: empty complement") {
    GroupSpec b1("bump1", IntervalSpec::compact(Rat(0), Rat(1)), {{"p", bump(Rat(0), Rat(1))}});
    GroupSpec b2("bump2", IntervalSpec::compact(Rat(2), Rat(3)), {{"q", bump(Rat(2), Rat(3))}});
    auto pc = product_complement({FactorReport{b1, {}}, FactorReport{b2, {}}});
    CHECK(pc.complement.empty());
  }
  SECTION("single factor unchanged") {
    auto pc = product_complement({FactorReport{f1, {chi_ell(), chi_r()}}});
    CHECK(pc.complement.size() == 2);
  }
  SECTION("overlapping supports rejected") {
    CHECK_THROWS_AS(product_complement({FactorReport{f1, {}}, FactorReport{f1, {}}}), OverlappingSupports);
  }
}

TEST_CASE("family_assembler") {
  GroupSpec f = thompson_f();
  Character chi = chi_ab(0, 1);
  RunConfig cfg;
  // two overlapping subgroups: <A, B> (all of F) and <A^2, B>
  Word wA = Word::letter(0, 1), wB = Word::letter(1, 1);
  Word wC = wA * wA;
  auto make_sub = [&](const std::string& name, std::vector<std::pair<std::string, Word>> gens)
      -> SubgroupWithCertificate {
    std::vector<Generator> sg;
    for (const auto& [sym, w] : gens) sg.push_back({sym, f.evaluate_word(w)});
    GroupSpec subspec(name, f.interval, sg);
    TabledChar restricted;
    for (const auto& [sym, w] : gens) restricted.values[sym] = char_eval(chi, w, f);
    auto rc = classify_ray(subspec, restricted, cfg);
    REQUIRE(rc.verdict == RayClassification::Verdict::Member);
    return {name, gens, *rc.membership};
  };
  auto s1 = make_sub("s1", {{"A", wA}, {"B", wB}});
  auto s2 = make_sub("s2", {{"C", wC}, {"B", wB}});
  SECTION("connected bridge graph covering the generators") {
    BridgeWitness bridge{0, 1, Word::letter(1, 1), Word::letter(1, 1)};  // B in both
    auto r = family_assembler(f, chi, {s1, s2}, {bridge});
    CHECK(r.member);
  }
  SECTION("disconnected bridge graph is inconclusive") {
    auto r = family_assembler(f, chi, {s1, s2}, {});
    CHECK_FALSE(r.member);
  }
  SECTION("single subgroup equal to G reduces to its certificate") {
    auto r = family_assembler(f, chi, {s1}, {});
    CHECK(r.member);
  }
  SECTION("tampered certificate is rejected") {
    auto bad = s1;
    bad.cert.t = Word::letter(0, 1);
    CHECK_THROWS_AS(family_assembler(f, chi, {bad, s2}, {BridgeWitness{0, 1, Word::letter(1, 1), Word::letter(1, 1)}}),
                    UnverifiedSubCertificate);
  }
}

TEST_CASE("bounds_report_lemma43") {
  // H = scaled Thompson copy on [1/4, 3/4], f pushes up everywhere (4.4a shape)
  auto scale_half = [](const PLMap& m) {
    std::vector<std::pair<Rat, Rat>> bps;
    for (const auto& [x, y] : m.breakpoints())
      bps.emplace_back(Rat(1, 4) + x / Rat(2), Rat(1, 4) + y / Rat(2));
    return make_plmap(std::move(bps), m.left_slope(), m.right_slope());
  };
  PLMap fmap = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}},
                          Rat(1), Rat(1));
  GroupSpec g("lemma43", IntervalSpec::compact(Rat(0), Rat(1)),
              {{"h1", scale_half(thompson_a())}, {"h2", scale_half(thompson_b())}, {"f", fmap}});
  BallIndex ball = enumerate_ball(g, 3);
  SECTION("4.4a: one-directional f gives equality") {
    REQUIRE(germs(fmap, g.interval).first.slope > Rat(1));
    REQUIRE(germs(fmap, g.interval).second.slope < Rat(1));
    auto rep = bounds_report_lemma43(g, "f", ball);
    CHECK(rep.lower.size() == 2);
    CHECK(rep.equality);
    CHECK_FALSE(rep.upper_kernel_elements.empty());
    for (const auto& w : rep.upper_kernel_elements) {
      auto [gl, gr] = germs(g.evaluate_word(w), g.interval);
      CHECK(gl.is_trivial());
      CHECK(gr.is_trivial());
    }
  }
  SECTION("4.4b shape: inward-pushing f reports bounds only") {
    PLMap fb = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(3, 8)}, {Rat(3, 4), Rat(5, 8)}, {Rat(1), Rat(1)}},
                          Rat(1), Rat(1));
    GroupSpec gb("lemma43b", IntervalSpec::compact(Rat(0), Rat(1)),
                 {{"h1", scale_half(thompson_a())}, {"h2", scale_half(thompson_b())}, {"f", fb}});
    auto rep = bounds_report_lemma43(gb, "f", enumerate_ball(gb, 3));
    CHECK_FALSE(rep.equality);
  }
  SECTION("missing flank coverage is BadShape") {
    GroupSpec gs("badshape", IntervalSpec::compact(Rat(0), Rat(1)),
                 {{"h1", scale_half(thompson_a())}, {"h2", scale_half(thompson_b())},
                  {"f", bump(Rat(0), Rat(1, 2))}});
    CHECK_THROWS_AS(bounds_report_lemma43(gs, "f", enumerate_ball(gs, 2)), BadShape);
  }
}
