#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plsigma/ball.hpp"
#include "plsigma/certificate.hpp"
#include "plsigma/character.hpp"
#include "plsigma/config.hpp"
#include "plsigma/connectivity.hpp"
#include "plsigma/groupspec.hpp"

namespace plsigma {

struct RayClassification {
  enum class Verdict { Member, NonMember, Unknown };
  Verdict verdict = Verdict::Unknown;
  std::optional<MembershipCertificate> membership;
  std::optional<NonMembershipCertificate> non_membership;
  std::optional<ConnectivityReport> connectivity;
  KernelGenerationResult kernel_generation = NotVerified{"not checked"};
  std::vector<std::string> trail;
};

namespace detail {

struct ExceptionalRay {
  Character chi;
  NonMembershipCertificate::GermRay tag;
  std::string theorem;
  std::string name;
};

inline std::vector<ExceptionalRay> exceptional_rays(const GroupSpec& spec) {
  using GR = NonMembershipCertificate::GermRay;
  switch (spec.interval.kind) {
    case IntervalSpec::Kind::Compact:
      return {{chi_ell(), GR::ChiEll, "Prop 2.5", "chi_ell"}, {chi_r(), GR::ChiR, "Prop 2.5", "chi_r"}};
    case IntervalSpec::Kind::HalfLine:
      return {{chi_ell(), GR::ChiEll, "Prop 5.1", "chi_ell"}, {neg_tau_r(), GR::NegTauR, "Prop 5.1", "-tau_r"}};
    default:
      return {{tau_ell(), GR::TauEll, "Prop 6.1", "tau_ell"}, {neg_tau_r(), GR::NegTauR, "Prop 6.1", "-tau_r"}};
  }
}

/// Membership cases in the order the theorems try them, each keyed by the
/// kernel chi must not vanish on (germ trivial at that end).
struct MembershipRoute {
  WitnessCase witness_case;
  bool kernel_side_right;  // h-kernel: germ trivial at the right (true) or left end
};

inline std::vector<MembershipRoute> membership_routes(const GroupSpec& spec) {
  switch (spec.interval.kind) {
    case IntervalSpec::Kind::Compact:
      return {{WitnessCase::LeftShrink, true}, {WitnessCase::RightShrink, false}};
    case IntervalSpec::Kind::HalfLine:
      return {{WitnessCase::LeftShrink, true}, {WitnessCase::TransRight, false}};
    default:
      return {{WitnessCase::TransLeft, true}, {WitnessCase::TransRight, false}};
  }
}

}  // namespace detail

/// Full decision pipeline for one ray:
///   1. hypothesis checks (irreducibility, non-abelianness, kernel generation)
///   2. ray comparison against the exceptional germ rays of the interval
///      kind; a verified match is a theorem-backed NonMember
///   3. kernel-vanishing search driving the membership lemmas and the
///      Sigma^1-criterion certificate; commuting generator sets take the
///      direct certificate route
///   4. otherwise Unknown, with a connectivity report as evidence
inline RayClassification classify_ray(const GroupSpec& spec, const Character& chi,
                                      const RunConfig& config = RunConfig()) {
  RayClassification rc;
  if (!char_nonzero(chi, spec)) throw ZeroCharacter("classify_ray needs a non-zero character");

  BallIndex ball = enumerate_ball(spec, config.radius, config.element_cap);

  if (const auto* tc = std::get_if<TabledChar>(&chi)) {
    auto rep = char_consistency(*tc, ball.relations, spec);
    if (!rep.ok)
      throw InconsistentCharacter("tabled character violates relation " + spec.word_str(*rep.failing_relation));
    rc.trail.push_back("tabled character consistent on " + std::to_string(ball.relations.size()) +
                       " harvested relations");
  }

  auto irr = irreducibility_check(spec);
  bool irreducible = is_irreducible(irr);
  rc.trail.push_back(irreducible ? "irreducible: generator supports cover the interior"
                                 : "NOT irreducible: fixed interior point " + std::get<FixedPointWitness>(irr).x.str());

  auto nonab = nonabelian_witness(spec, ball);
  const auto* naw = std::get_if<NonAbelianWitness>(&nonab);
  rc.trail.push_back(naw ? "non-abelian: witness pair (" + spec.word_str(ball.elements[naw->i].word) + ", " +
                               spec.word_str(ball.elements[naw->j].word) + ")"
                         : "no non-abelian witness within the ball");

  rc.kernel_generation = kernel_generation_check(spec, ball);
  rc.trail.push_back(std::holds_alternative<VerifiedByTags>(rc.kernel_generation)
                         ? "kernel generation: verified by tags"
                         : (std::holds_alternative<VerifiedByLattice>(rc.kernel_generation)
                                ? "kernel generation: verified by lattice witnesses"
                                : "kernel generation: " + std::get<NotVerified>(rc.kernel_generation).evidence));

  // translation-germ sanity for unbounded ends
  bool tau_r_ok = spec.interval.kind == IntervalSpec::Kind::Compact || spec.translations_at_right();
  bool tau_l_ok = spec.interval.kind != IntervalSpec::Kind::FullLine || spec.translations_at_left();
  if (!tau_r_ok || !tau_l_ok) {
    rc.trail.push_back("non-translation germs at an unbounded end: theorems do not apply");
    rc.verdict = RayClassification::Verdict::Unknown;
    rc.connectivity = gamma_chi_components(spec, chi, config.radius, std::nullopt, config.element_cap).report;
    return rc;
  }

  // (2) exceptional germ rays
  for (const auto& ex : detail::exceptional_rays(spec)) {
    if (!char_nonzero(ex.chi, spec)) continue;
    auto cmp = ray_compare(chi, ex.chi, spec, ball.elements, config.precision_cap);
    if (cmp.verdict == RayRelation::SameRay) {
      if (irreducible && naw) {
        NonMembershipCertificate cert;
        cert.matched = ex.tag;
        cert.theorem = ex.theorem;
        cert.nonabelian_f = ball.elements[naw->i].word;
        cert.nonabelian_g = ball.elements[naw->j].word;
        cert.irreducible = true;
        cert.ray_match_verified = true;
        rc.trail.push_back("matched exceptional ray [" + ex.name + "] (" + ex.theorem + ")");
        rc.verdict = RayClassification::Verdict::NonMember;
        rc.non_membership = std::move(cert);
        return rc;
      }
      rc.trail.push_back("matches [" + ex.name + "] but hypotheses unverified; no non-membership verdict");
    } else if (cmp.verdict == RayRelation::Unresolved) {
      rc.trail.push_back("comparison with [" + ex.name + "] unresolved at the precision cap");
    }
  }

  // (3a) commuting generators: the criterion relations hold directly
  if (spec.generators_commute()) {
    std::optional<GroupElement> t;
    for (int sign : {+1, -1})
      for (size_t g = 0; g < spec.generators.size() && !t; ++g) {
        Word w = Word::letter(static_cast<int>(g), sign);
        if (lr_positive(char_eval(chi, w, spec)))
          t = GroupElement{sign > 0 ? spec.gen_map(static_cast<int>(g)) : invert(spec.gen_map(static_cast<int>(g))), w};
      }
    if (t) {
      FH fh{WitnessCase::LeftShrink, *t, *t, Rat(1)};
      try {
        rc.membership = membership_certificate(spec, chi, fh);
        rc.trail.push_back("commuting generators: direct criterion certificate");
        rc.verdict = RayClassification::Verdict::Member;
        return rc;
      } catch (const HypothesisFailure& e) {
        rc.trail.push_back(std::string("commuting route failed: ") + e.what());
      }
    }
  }

  // (3b) kernel-vanishing routes
  for (const auto& route : detail::membership_routes(spec)) {
    bool have_witness = false;
    for (size_t i = 1; i < ball.size() && !have_witness; ++i) {
      auto [gl, gr] = germs(ball.elements[i].map, spec.interval);
      if (!(route.kernel_side_right ? gr.is_trivial() : gl.is_trivial())) continue;
      if (!char_eval(chi, ball.elements[i], spec).is_zero()) have_witness = true;
    }
    if (!have_witness) {
      rc.trail.push_back("chi vanishes on all ball elements of the " +
                         std::string(route.kernel_side_right ? "right" : "left") + "-end kernel");
      continue;
    }
    rc.trail.push_back("chi is non-zero on the " + std::string(route.kernel_side_right ? "right" : "left") +
                       "-end kernel; trying " + witness_case_name(route.witness_case));
    auto wr = find_witnesses(spec, chi, route.witness_case, ball);
    if (const auto* fh = std::get_if<FH>(&wr)) {
      try {
        rc.membership = membership_certificate(spec, chi, *fh);
        rc.trail.push_back("criterion certificate built via " + witness_case_name(route.witness_case));
        rc.verdict = RayClassification::Verdict::Member;
        return rc;
      } catch (const HypothesisFailure& e) {
        rc.trail.push_back(std::string("certificate construction failed: ") + e.what());
      }
    } else {
      rc.trail.push_back("witnesses f, h not found within the ball for " + witness_case_name(route.witness_case));
    }
  }

  // (4) evidence only
  rc.verdict = RayClassification::Verdict::Unknown;
  rc.connectivity = gamma_chi_components(spec, chi, config.radius, std::nullopt, config.element_cap).report;
  rc.trail.push_back("no theorem applies within the ball; connectivity report attached as evidence");
  return rc;
}

// ---------------------------------------------------------------------------
// product formula

struct FactorReport {
  GroupSpec spec;
  std::vector<Character> complement;  // this factor's Sigma^1 complement rays
};

struct ProductComplement {
  GroupSpec product;
  std::vector<Character> complement;       // pulled back, tabled over product symbols
  std::vector<std::string> ray_origin;     // factor name per complement ray
};

/// Complement of a product with pairwise disjoint factor supports: the union
/// of the factor complements pulled back along the projections (each factor
/// ray extended by zero on the other factors' generators).
inline ProductComplement product_complement(const std::vector<FactorReport>& factors) {
  if (factors.empty()) throw ValidationError("product of zero factors");
  for (size_t i = 0; i < factors.size(); ++i)
    for (size_t j = i + 1; j < factors.size(); ++j) {
      std::vector<SupportSet> si, sj;
      for (const auto& g : factors[i].spec.generators) si.push_back(support(g.map));
      for (const auto& g : factors[j].spec.generators) sj.push_back(support(g.map));
      if (!supports_disjoint(support_union(si), support_union(sj)))
        throw OverlappingSupports("factors '" + factors[i].spec.name + "' and '" + factors[j].spec.name +
                                  "' have overlapping supports");
    }

  // hull interval of the product
  IntervalSpec ival = factors.front().spec.interval;
  for (const auto& f : factors) {
    if (f.spec.interval.kind != ival.kind && (f.spec.interval.kind != IntervalSpec::Kind::Compact ||
                                              ival.kind != IntervalSpec::Kind::Compact))
      ival = IntervalSpec::full_line();
  }
  if (ival.kind == IntervalSpec::Kind::Compact) {
    for (const auto& f : factors) {
      if (f.spec.interval.a < ival.a) ival.a = f.spec.interval.a;
      if (ival.c < f.spec.interval.c) ival.c = f.spec.interval.c;
    }
  }

  // combined generators; symbols prefixed by factor name on collision
  std::vector<Generator> gens;
  std::vector<std::vector<std::string>> symbol_of(factors.size());
  {
    std::map<std::string, int> count;
    for (const auto& f : factors)
      for (const auto& g : f.spec.generators) ++count[g.symbol];
    for (size_t i = 0; i < factors.size(); ++i)
      for (const auto& g : factors[i].spec.generators) {
        std::string sym = count[g.symbol] > 1 ? factors[i].spec.name + "." + g.symbol : g.symbol;
        symbol_of[i].push_back(sym);
        gens.push_back({sym, g.map, g.tag});
      }
  }
  ProductComplement out;
  std::string name;
  for (const auto& f : factors) name += (name.empty() ? "" : "+") + f.spec.name;
  out.product = GroupSpec(name, ival, std::move(gens));

  for (size_t i = 0; i < factors.size(); ++i) {
    for (const auto& chi : factors[i].complement) {
      TabledChar pulled;
      for (const auto& [sym, full] : [&] {
        std::vector<std::pair<std::string, LogReal>> vals;
        for (size_t g = 0; g < factors[i].spec.generators.size(); ++g)
          vals.emplace_back(symbol_of[i][g],
                            char_eval(chi, Word::letter(static_cast<int>(g), +1), factors[i].spec));
        return vals;
      }()) pulled.values[sym] = full;
      for (size_t j = 0; j < factors.size(); ++j) {
        if (j == i) continue;
        for (const auto& sym : symbol_of[j]) pulled.values[sym] = LogReal();
      }
      out.complement.push_back(pulled);
      out.ray_origin.push_back(factors[i].spec.name);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// gluing certified subgroups along a connected bridge graph

struct SubgroupWithCertificate {
  std::string name;
  std::vector<std::pair<std::string, Word>> gens;  // symbol + defining word over G
  MembershipCertificate cert;                      // for chi restricted to this subgroup
};

struct BridgeWitness {
  size_t j1 = 0, j2 = 0;  // indices into the subgroup list
  Word in_j1, in_j2;       // the same element written over each subgroup's symbols
};

struct FamilyResult {
  bool member = false;
  std::string reason;
};

/// Membership assembled from verified subgroup certificates: the bridge
/// graph (edges where chi is non-zero on a common element) must be connected
/// and the subgroups must cover a generating set of G.
inline FamilyResult family_assembler(const GroupSpec& spec, const Character& chi,
                                     const std::vector<SubgroupWithCertificate>& subs,
                                     const std::vector<BridgeWitness>& bridges) {
  if (subs.empty()) return {false, "no subgroups supplied"};
  std::vector<GroupSpec> subspecs;
  for (const auto& s : subs) {
    std::vector<Generator> gens;
    for (const auto& [sym, w] : s.gens) gens.push_back({sym, spec.evaluate_word(w)});
    subspecs.emplace_back(s.name, spec.interval, std::move(gens));
    auto rep = verify_certificate(subspecs.back(), s.cert);
    if (!rep.ok)
      throw UnverifiedSubCertificate("certificate for subgroup '" + s.name + "': " + rep.failures.front());
    // the certificate's character must be the restriction of chi
    for (size_t g = 0; g < s.gens.size(); ++g) {
      LogReal expect = char_eval(chi, s.gens[g].second, spec);
      LogReal got = char_eval(s.cert.chi, Word::letter(static_cast<int>(g), +1), subspecs.back());
      if (!(expect == got))
        throw UnverifiedSubCertificate("certificate character for '" + s.name +
                                       "' is not the restriction of chi");
    }
  }

  // bridge graph connectivity
  std::vector<size_t> parent(subs.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  auto find = [&parent](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& b : bridges) {
    if (b.j1 >= subs.size() || b.j2 >= subs.size()) return {false, "bridge names an unknown subgroup"};
    PLMap m1 = subspecs[b.j1].evaluate_word(b.in_j1);
    PLMap m2 = subspecs[b.j2].evaluate_word(b.in_j2);
    if (m1 != m2) return {false, "bridge words evaluate to different elements"};
    // chi on the common element, expanded through subgroup j1's generators
    Word over_g;
    for (const auto& [g, s] : b.in_j1.letters) {
      Word piece = subs[b.j1].gens[g].second;
      over_g *= (s > 0 ? piece : piece.inverse());
    }
    if (char_eval(chi, over_g, spec).is_zero()) return {false, "chi vanishes on a bridge element"};
    parent[std::max(find(b.j1), find(b.j2))] = std::min(find(b.j1), find(b.j2));
  }
  for (size_t i = 1; i < subs.size(); ++i)
    if (find(i) != find(0)) return {false, "bridge graph is not connected"};

  // covering: every generator of G appears in some subgroup
  for (const auto& g : spec.generators) {
    bool found = false;
    for (const auto& ss : subspecs)
      for (const auto& sg : ss.generators) found = found || sg.map == g.map;
    if (!found) return {false, "generator '" + g.symbol + "' lies in no covered subgroup"};
  }
  return {true, "bridge graph connected over verified certificates"};
}

// ---------------------------------------------------------------------------
// two-sided bounds in the stable-letter construction

struct Lemma43Report {
  std::vector<Character> lower;              // verified complement rays
  std::vector<Word> upper_kernel_elements;   // ball elements of N describing S(G, N)
  bool equality = false;                     // D_a(f) > 1 > D_c(f) refinement
  std::string note;
};

/// For G generated by an inner subgroup H (on [a0, c0]) and one stable
/// letter f whose support contains both flanks: emits the lower bound
/// {[chi_ell], [chi_r]} (hypotheses verified) and the upper bound S(G, N)
/// described by kernel elements found in the ball.
inline Lemma43Report bounds_report_lemma43(const GroupSpec& spec, const std::string& f_symbol,
                                           const BallIndex& ball) {
  if (spec.interval.kind != IntervalSpec::Kind::Compact)
    throw BadShape("stable-letter bounds need a compact interval");
  int fi = spec.gen_index(f_symbol);

  // hull of the H-generators
  std::optional<Rat> a0, c0;
  for (size_t g = 0; g < spec.generators.size(); ++g) {
    if (static_cast<int>(g) == fi) continue;
    SupportSet s = support(spec.gen_map(static_cast<int>(g)));
    if (s.empty()) continue;
    auto [lo, hi] = s.hull();
    if (!lo.is_finite() || !hi.is_finite()) throw BadShape("H-generator with unbounded support");
    if (!a0 || lo.value < *a0) a0 = lo.value;
    if (!c0 || *c0 < hi.value) c0 = hi.value;
  }
  if (!a0) throw BadShape("no H-generators besides the stable letter");

  // supp(f) must contain (a, a0] and [c0, c)
  SupportSet fs = support(spec.gen_map(fi));
  bool left_flank = false, right_flank = false;
  for (const auto& [lo, hi] : fs.intervals) {
    if (lo == Bound::finite(spec.interval.a) && hi.is_finite() && *a0 < hi.value) left_flank = true;
    if (hi == Bound::finite(spec.interval.c) && lo.is_finite() && lo.value < *c0) right_flank = true;
  }
  if (!left_flank || !right_flank)
    throw BadShape("support of '" + f_symbol + "' does not contain both flanks");

  Lemma43Report rep;
  if (!is_irreducible(irreducibility_check(spec))) throw BadShape("group is not irreducible");
  if (!std::holds_alternative<NonAbelianWitness>(nonabelian_witness(spec, ball)))
    throw BadShape("no non-abelian witness found");
  rep.lower = {chi_ell(), chi_r()};

  for (size_t i = 1; i < ball.size(); ++i) {
    auto [gl, gr] = germs(ball.elements[i].map, spec.interval);
    if (gl.is_trivial() && gr.is_trivial()) rep.upper_kernel_elements.push_back(ball.elements[i].word);
  }

  auto [fl, fr] = germs(spec.gen_map(fi), spec.interval);
  if (Rat(1) < fl.slope && fr.slope < Rat(1)) {
    rep.equality = true;
    rep.note = "one-directional stable letter: complement equals S(G, N)";
  } else {
    rep.note = "bounds only; [-chi_ell] is undetermined in this shape";
  }
  return rep;
}

}  // namespace plsigma
