#pragma once

#include <string>
#include <vector>

#include "plsigma/classify.hpp"
#include "plsigma/monoid.hpp"

namespace plsigma {

/// One probe ray with its expected classification.
struct ProbeRay {
  Character chi;
  std::string expect;  // "member" | "non_member" | "unknown"
  std::string label;
};

struct ProbeOutcome {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct CorpusReport {
  std::string entry;
  bool ok = true;
  std::vector<ProbeOutcome> probes;
  size_t member = 0, non_member = 0, unknown = 0;

  void add(std::string name, bool pass, std::string detail = "") {
    ok = ok && pass;
    probes.push_back({std::move(name), pass, std::move(detail)});
  }
};

namespace corpus_detail {

inline PLMap thompson_a() {
  return make_plmap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(3, 4), Rat(1, 2)}, {Rat(1), Rat(1)}},
                    Rat(1), Rat(1));
}
inline PLMap thompson_b() {
  return make_plmap({{Rat(1, 2), Rat(1, 2)}, {Rat(3, 4), Rat(5, 8)}, {Rat(7, 8), Rat(3, 4)}, {Rat(1), Rat(1)}},
                    Rat(1), Rat(1));
}

/// Affine image of a [0,1] map into [lo, lo + scale].
inline PLMap rescale(const PLMap& m, const Rat& lo, const Rat& scale) {
  std::vector<std::pair<Rat, Rat>> bps;
  for (const auto& [x, y] : m.breakpoints()) bps.emplace_back(lo + scale * x, lo + scale * y);
  return make_plmap(std::move(bps), m.left_slope(), m.right_slope());
}

inline PLMap one_bump(const Rat& lo, const Rat& hi) {
  Rat mid = (lo + hi) / Rat(2);
  Rat up = (lo + Rat(3) * hi) / Rat(4);
  return make_plmap({{lo, lo}, {mid, up}, {hi, hi}}, Rat(1), Rat(1));
}

inline Character tabled2(const std::string& s1, long v1, const std::string& s2, long v2) {
  return tabled({{s1, LogReal(Rat(v1))}, {s2, LogReal(Rat(v2))}});
}

inline std::vector<ProbeRay> square_probes(const std::string& g1, const std::string& g2,
                                           const std::string& nm1, const std::string& nm2) {
  // the eight axis and diagonal directions; nm1/nm2 name the two expected
  // non-member directions as "a,b" strings
  std::vector<std::pair<long, long>> dirs{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
  std::vector<ProbeRay> out;
  for (auto [a, b] : dirs) {
    std::string key = std::to_string(a) + "," + std::to_string(b);
    std::string expect = (key == nm1 || key == nm2) ? "non_member" : "member";
    out.push_back({tabled2(g1, a, g2, b), expect, "(" + key + ")"});
  }
  return out;
}

}  // namespace corpus_detail

inline std::vector<std::string> corpus_names() {
  return {"thompson_f", "lemma43",  "hnn_b1",       "wreath_b2",
          "mystery",    "halfline_translation", "line_translation", "product_f_pair", "product_bumps"};
}

/// Deterministic exact realization of each example group. Product entries
/// return the combined product spec.
inline GroupSpec corpus_build(const std::string& name) {
  using namespace corpus_detail;
  if (name == "thompson_f") {
    return GroupSpec("thompson_f", IntervalSpec::compact(Rat(0), Rat(1)),
                     {{"A", thompson_a()}, {"B", thompson_b()}});
  }
  if (name == "lemma43") {
    // inner Thompson copy on [1/4, 3/4]; stable letter pushes up everywhere
    PLMap f = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(3, 4), Rat(7, 8)}, {Rat(1), Rat(1)}},
                         Rat(1), Rat(1));
    return GroupSpec("lemma43", IntervalSpec::compact(Rat(0), Rat(1)),
                     {{"h1", rescale(thompson_a(), Rat(1, 4), Rat(1, 2))},
                      {"h2", rescale(thompson_b(), Rat(1, 4), Rat(1, 2))},
                      {"f", f}});
  }
  if (name == "hnn_b1") {
    // H = dyadic Thompson copy of [1/4, 3/4]; f dyadic, pushing both flanks
    // inward, with f([1/4,3/4]) = [1/2,5/8] inside the window
    PLMap f = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(3, 4), Rat(5, 8)},
                          {Rat(7, 8), Rat(3, 4)}, {Rat(1), Rat(1)}},
                         Rat(1), Rat(1));
    return GroupSpec("hnn_b1", IntervalSpec::compact(Rat(0), Rat(1)),
                     {{"h1", rescale(thompson_a(), Rat(1, 4), Rat(1, 2))},
                      {"h2", rescale(thompson_b(), Rat(1, 4), Rat(1, 2))},
                      {"f", f}});
  }
  if (name == "wreath_b2") {
    // f moves [1/4, 3/4] strictly inward from both sides, h0 pushes up on
    // (1/4, 3/4) strongly enough that c_1 < h0(a_1)
    PLMap f = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(3, 8)}, {Rat(3, 4), Rat(5, 8)}, {Rat(1), Rat(1)}},
                         Rat(1), Rat(1));
    PLMap h0 = make_plmap({{Rat(1, 4), Rat(1, 4)}, {Rat(3, 8), Rat(11, 16)}, {Rat(3, 4), Rat(3, 4)}},
                          Rat(1), Rat(1));
    GroupSpec g("wreath_b2", IntervalSpec::compact(Rat(0), Rat(1)), {{"f", f}, {"h0", h0}});
    // the defining inequality is checked at build time, not assumed
    Rat a1 = f.evaluate(Rat(1, 4)), c1 = f.evaluate(Rat(3, 4));
    if (!(c1 < h0.evaluate(a1)))
      throw ValidationError("wreath_b2 realization violates c_1 < h0(a_1)");
    return g;
  }
  if (name == "mystery") {
    // D_a slopes {2, 3} and D_c slopes {2, 5}; both pairs multiplicatively
    // independent; the two supports jointly cover (0, 1)
    PLMap f = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 4), Rat(1, 2)}, {Rat(7, 8), Rat(3, 4)}, {Rat(1), Rat(1)}},
                         Rat(1), Rat(1));
    PLMap g = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 8), Rat(3, 8)}, {Rat(15, 16), Rat(11, 16)}, {Rat(1), Rat(1)}},
                         Rat(1), Rat(1));
    return GroupSpec("mystery", IntervalSpec::compact(Rat(0), Rat(1)), {{"f", f}, {"g", g}});
  }
  if (name == "halfline_translation") {
    PLMap u = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1)}, {Rat(2), Rat(2)}}, Rat(1), Rat(1));
    PLMap v = make_plmap({{Rat(1), Rat(1)}, {Rat(2), Rat(3)}}, Rat(1), Rat(1));
    return GroupSpec("halfline_translation", IntervalSpec::half_line(),
                     {{"u", u, GenTag::KerRight}, {"v", v, GenTag::KerLeft}});
  }
  if (name == "line_translation") {
    PLMap s = make_plmap({{Rat(0), Rat(1)}}, Rat(1), Rat(1));  // x + 1
    PLMap b = make_plmap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(1), Rat(1)}}, Rat(1), Rat(1));
    return GroupSpec("line_translation", IntervalSpec::full_line(), {{"s", s}, {"b", b}});
  }
  if (name == "product_f_pair" || name == "product_bumps") {
    auto factors = [&]() -> std::vector<FactorReport> {
      if (name == "product_f_pair") {
        GroupSpec f1 = corpus_build("thompson_f");
        std::vector<Generator> shifted;
        for (const auto& g : f1.generators) {
          std::vector<std::pair<Rat, Rat>> bps;
          for (const auto& [x, y] : g.map.breakpoints()) bps.emplace_back(x + Rat(2), y + Rat(2));
          shifted.push_back({g.symbol, make_plmap(std::move(bps), Rat(1), Rat(1))});
        }
        GroupSpec f2("thompson_f_shifted", IntervalSpec::compact(Rat(2), Rat(3)), shifted);
        return {{f1, {}}, {f2, {}}};
      }
      GroupSpec b1("bump_low", IntervalSpec::compact(Rat(0), Rat(1)),
                   {{"p", corpus_detail::one_bump(Rat(0), Rat(1))}});
      GroupSpec b2("bump_high", IntervalSpec::compact(Rat(2), Rat(3)),
                   {{"q", corpus_detail::one_bump(Rat(2), Rat(3))}});
      return {{b1, {}}, {b2, {}}};
    }();
    return product_complement(factors).product;
  }
  throw UnknownEntry("no corpus entry named '" + name + "'");
}

/// Probe rays with expected verdicts, for the entries that classify rays.
inline std::vector<ProbeRay> corpus_probe_rays(const std::string& name) {
  using namespace corpus_detail;
  if (name == "thompson_f") {
    std::vector<ProbeRay> out;
    std::vector<std::tuple<long, long, std::string>> dirs{
        {-1, 0, "non_member"}, {1, 1, "non_member"}, {1, 0, "member"},  {0, 1, "member"},
        {0, -1, "member"},     {-1, -1, "member"},   {1, -1, "member"}, {-1, 1, "member"},
        {2, 1, "member"},      {1, 2, "member"},     {-1, 2, "member"}, {-2, -1, "member"}};
    for (auto& [a, b, e] : dirs)
      out.push_back({tabled2("A", a, "B", b), e, "(" + std::to_string(a) + "," + std::to_string(b) + ")"});
    return out;
  }
  if (name == "halfline_translation")
    return square_probes("u", "v", "1,0", "0,-1");  // [chi_ell] and [-tau_r]
  if (name == "line_translation")
    return square_probes("s", "b", "1,0", "-1,0");  // [tau_ell] and [-tau_r]
  if (name == "mystery") {
    return {{chi_ell(), "non_member", "[chi_ell]"},
            {chi_r(), "non_member", "[chi_r]"},
            {tabled2("f", 1, "g", -1), "unknown", "(1,-1)"}};
  }
  if (name == "hnn_b1") {
    return {{chi_ell(), "non_member", "[chi_ell]"},
            {tabled({{"h1", LogReal()}, {"h2", LogReal()}, {"f", LogReal(Rat(-1))}}), "unknown", "[-chi_ell]"}};
  }
  return {};
}

namespace corpus_detail {

inline void run_classification_probes(const GroupSpec& spec, const std::vector<ProbeRay>& probes,
                                      CorpusReport& rep, const RunConfig& cfg) {
  for (const auto& p : probes) {
    auto rc = classify_ray(spec, p.chi, cfg);
    std::string got = rc.verdict == RayClassification::Verdict::Member
                          ? "member"
                          : (rc.verdict == RayClassification::Verdict::NonMember ? "non_member" : "unknown");
    if (got == "member") ++rep.member;
    if (got == "non_member") ++rep.non_member;
    if (got == "unknown") ++rep.unknown;
    bool pass = got == p.expect;
    if (pass && got == "member") pass = verify_certificate(spec, *rc.membership).ok;
    rep.add("ray " + p.label, pass, "expected " + p.expect + ", got " + got);
  }
}

inline void run_wreath_probes(const GroupSpec& spec, CorpusReport& rep) {
  const PLMap& f = spec.gen_map(spec.gen_index("f"));
  const PLMap& h0 = spec.gen_map(spec.gen_index("h0"));
  Rat a0(1, 4), c0(3, 4);
  Rat a1 = f.evaluate(a0), c1 = f.evaluate(c0);
  rep.add("strongly-acting inequality c_1 < h0(a_1)", c1 < h0.evaluate(a1),
          "c_1 = " + c1.str() + ", h0(a_1) = " + h0.evaluate(a1).str());

  // interval ordering a < a_0 < ... < a_5 < c_5 < ... < c_0 < c
  bool order = Rat(0) < a0 && c0 < Rat(1);
  std::vector<Rat> as{a0}, cs{c0};
  for (int k = 1; k <= 5; ++k) {
    as.push_back(f.evaluate(as.back()));
    cs.push_back(f.evaluate(cs.back()));
    order = order && as[k - 1] < as[k] && cs[k] < cs[k - 1];
  }
  order = order && as.back() < cs.back();
  rep.add("nested window ordering up to k = 5", order);

  // supp(h_k h_{k+1} h_k^-1) strictly above supp(h_{k+1}); the two commute
  bool above_all = true, commute_all = true;
  for (int k = 0; k <= 4; ++k) {
    PLMap hk = conjugate(power(f, k), h0);
    PLMap hk1 = conjugate(power(f, k + 1), h0);
    PLMap moved = conjugate(hk, hk1);
    auto s_moved = support(moved), s_next = support(hk1);
    bool above = !s_moved.empty() && !s_next.empty() &&
                 !(s_moved.hull().first < s_next.hull().second);
    above_all = above_all && above;
    commute_all = commute_all && commutator(hk1, moved).is_identity();
  }
  rep.add("conjugate supports lie strictly above, k <= 4", above_all);
  rep.add("disjoint conjugates commute, k <= 4", commute_all);

  // abelianization evidence: relations of <h_0..h_3> have zero exponent rows
  std::vector<Generator> gens;
  for (int k = 0; k <= 3; ++k)
    gens.push_back({"h" + std::to_string(k), conjugate(power(f, k), h0)});
  GroupSpec sub("wreath_b2_sub", spec.interval, gens);
  BallIndex ball = enumerate_ball(sub, 3);
  bool rank0 = true;
  for (const auto& r : ball.relations)
    for (long e : sub.exponent_sums(r)) rank0 = rank0 && e == 0;
  rep.add("harvested relations have zero exponent sums (abelianizes to Z^{k+1})", rank0,
          std::to_string(ball.relations.size()) + " relations at radius 3");
}

inline void run_hnn_probes(const GroupSpec& spec, CorpusReport& rep, const RunConfig& cfg) {
  const PLMap& f = spec.gen_map(spec.gen_index("f"));
  // structural descending-HNN check: conjugates of the H-generators stay in
  // the full dyadic group of the window (support, dyadic breaks, 2-power
  // slopes); valid because H is the full such group
  auto dyadic = [](const Rat& q) {
    mpz_class d = q.den();
    while (mpz_even_p(d.get_mpz_t())) d /= 2;
    return d == 1;
  };
  bool ok = true;
  for (const auto& g : spec.generators) {
    if (g.symbol == "f") continue;
    PLMap conj = conjugate(f, g.map);
    ok = ok && support(conj).within(Bound::finite(Rat(1, 4)), Bound::finite(Rat(3, 4)));
    for (const auto& [x, y] : conj.breakpoints()) ok = ok && dyadic(x) && dyadic(y);
    Rat prev_x = conj.breakpoints().front().first;
    for (size_t i = 1; i < conj.breakpoints().size(); ++i) {
      const auto& [x, y] = conj.breakpoints()[i];
      Rat slope = (y - conj.breakpoints()[i - 1].second) / (x - conj.breakpoints()[i - 1].first);
      auto e = slope_exponents(slope);
      for (const auto& [p, k] : e) ok = ok && p == 2;
    }
  }
  rep.add("f H f^-1 inside H (descending HNN, structural)", ok,
          "conjugated generators keep dyadic data inside the window");
  run_classification_probes(spec, corpus_probe_rays("hnn_b1"), rep, cfg);
}

}  // namespace corpus_detail

/// Executes the entry's probe suite and returns the per-check report.
inline CorpusReport corpus_run(const std::string& name, const RunConfig& cfg = RunConfig()) {
  using namespace corpus_detail;
  CorpusReport rep;
  rep.entry = name;
  GroupSpec spec = corpus_build(name);

  if (name == "product_f_pair") {
    GroupSpec f1 = corpus_build("thompson_f");
    auto rays = corpus_probe_rays("thompson_f");
    // factor complement from the theorem pipeline: both germ directions
    std::vector<Character> comp{tabled2("A", -1, "B", 0), tabled2("A", 1, "B", 1)};
    for (const auto& chi : comp) {
      auto rc = classify_ray(f1, chi, cfg);
      rep.add("factor complement ray verified non-member",
              rc.verdict == RayClassification::Verdict::NonMember);
    }
    std::vector<Generator> shifted;
    for (const auto& g : f1.generators) {
      std::vector<std::pair<Rat, Rat>> bps;
      for (const auto& [x, y] : g.map.breakpoints()) bps.emplace_back(x + Rat(2), y + Rat(2));
      shifted.push_back({g.symbol, make_plmap(std::move(bps), Rat(1), Rat(1))});
    }
    GroupSpec f2("thompson_f_shifted", IntervalSpec::compact(Rat(2), Rat(3)), shifted);
    auto pc = product_complement({{f1, comp}, {f2, comp}});
    rep.add("product complement has 4 rays", pc.complement.size() == 4);
    bool vanish = true;
    for (size_t k = 0; k < pc.complement.size(); ++k) {
      const auto& tc = std::get<TabledChar>(pc.complement[k]);
      for (const auto& [sym, v] : tc.values) {
        bool own = sym.rfind(pc.ray_origin[k] + ".", 0) == 0;
        if (!own && !v.is_zero()) vanish = false;
      }
    }
    rep.add("each complement ray vanishes on the other factor", vanish);
    return rep;
  }
  if (name == "product_bumps") {
    GroupSpec b1("bump_low", IntervalSpec::compact(Rat(0), Rat(1)), {{"p", one_bump(Rat(0), Rat(1))}});
    GroupSpec b2("bump_high", IntervalSpec::compact(Rat(2), Rat(3)), {{"q", one_bump(Rat(2), Rat(3))}});
    // infinite cyclic factors: both rays carry certificates, complement empty
    for (const auto* g : {&b1, &b2})
      for (long dir : {1L, -1L}) {
        auto rc = classify_ray(*g, tabled({{g->generators[0].symbol, LogReal(Rat(dir))}}), cfg);
        rep.add("cyclic factor ray is member", rc.verdict == RayClassification::Verdict::Member);
      }
    auto pc = product_complement({{b1, {}}, {b2, {}}});
    rep.add("free-abelian product complement is empty", pc.complement.empty());
    return rep;
  }

  rep.add("irreducible", is_irreducible(irreducibility_check(spec)));

  if (name == "thompson_f" || name == "mystery" || name == "halfline_translation" ||
      name == "line_translation") {
    if (name == "halfline_translation" || name == "line_translation") {
      bool cond = spec.translations_at_right() &&
                  (name == "halfline_translation" || spec.translations_at_left());
      rep.add("translation-germ condition on generators", cond);
    }
    run_classification_probes(spec, corpus_probe_rays(name), rep, cfg);
    return rep;
  }
  if (name == "wreath_b2") {
    run_wreath_probes(spec, rep);
    return rep;
  }
  if (name == "hnn_b1") {
    run_hnn_probes(spec, rep, cfg);
    return rep;
  }
  if (name == "lemma43") {
    BallIndex ball = enumerate_ball(spec, std::min(cfg.radius, 4), cfg.element_cap);
    rep.add("kernel generation not verified (infinite cyclic quotient)",
            std::holds_alternative<NotVerified>(kernel_generation_check(spec, ball)));
    auto bounds = bounds_report_lemma43(spec, "f", ball);
    rep.add("lower bound has the two germ rays", bounds.lower.size() == 2);
    rep.add("upper bound carries kernel elements", !bounds.upper_kernel_elements.empty());
    rep.add("one-directional stable letter gives equality", bounds.equality);
    auto rc = classify_ray(spec, chi_ell(), cfg);
    rep.add("[chi_ell] is non-member", rc.verdict == RayClassification::Verdict::NonMember);
    return rep;
  }
  throw UnknownEntry("no probe suite for '" + name + "'");
}

}  // namespace plsigma
