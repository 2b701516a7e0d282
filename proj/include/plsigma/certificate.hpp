#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "plsigma/ball.hpp"
#include "plsigma/character.hpp"
#include "plsigma/groupspec.hpp"

namespace plsigma {

/// Minimum of chi over the initial segments of w (including the empty one),
/// computed exactly in LogReal.
inline LogReal word_valuation(const Character& chi, const Word& w, const GroupSpec& spec) {
  LogReal run, best;
  for (const auto& [g, s] : w.letters) {
    LogReal v = char_eval(chi, Word::letter(g, s), spec);
    run += v;
    if (lr_cmp(run, best) == Sign::Negative) best = run;
  }
  return best;
}

namespace detail {

/// Letter sequence without free reduction; the criterion's valuations are
/// taken over the words as written, where cancelling prefixes still count.
using RawWord = std::vector<std::pair<int, int>>;

inline void raw_append(RawWord& out, const Word& w, int exponent = 1) {
  if (exponent >= 0) {
    for (int k = 0; k < exponent; ++k)
      for (const auto& l : w.letters) out.push_back(l);
  } else {
    for (int k = 0; k < -exponent; ++k)
      for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.emplace_back(it->first, -it->second);
  }
}

inline RawWord raw_conjugation(const Word& y, const Word& t) {  // t^-1 y t
  RawWord r;
  raw_append(r, t, -1);
  raw_append(r, y);
  raw_append(r, t);
  return r;
}

inline RawWord raw_w_y(const Word& y, const Word& t, const Word& f, const Word& h, long m) {
  RawWord r;
  raw_append(r, y);
  raw_append(r, f, m);
  raw_append(r, h);
  raw_append(r, f, -m);
  raw_append(r, y, -1);
  raw_append(r, t, -1);
  raw_append(r, y);
  raw_append(r, t);
  raw_append(r, f, m);
  raw_append(r, h, -1);
  raw_append(r, f, -m);
  return r;
}

inline LogReal raw_valuation(const Character& chi, const RawWord& letters, const GroupSpec& spec) {
  LogReal run, best;
  for (const auto& [g, s] : letters) {
    run += char_eval(chi, Word::letter(g, s), spec);
    if (lr_cmp(run, best) == Sign::Negative) best = run;
  }
  return best;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// witness search (the f and h of the membership lemmas)

enum class WitnessCase { LeftShrink, RightShrink, TransLeft, TransRight };

inline std::string witness_case_name(WitnessCase c) {
  switch (c) {
    case WitnessCase::LeftShrink: return "left-shrink";
    case WitnessCase::RightShrink: return "right-shrink";
    case WitnessCase::TransLeft: return "translation-left";
    default: return "translation-right";
  }
}

struct FH {
  WitnessCase kind;
  GroupElement f, h;
  Rat window_param;  // delta for the shrink cases, k for the translation cases
};
using WitnessResult = std::variant<FH, NotFoundWithinBall>;

namespace detail {

inline Character separating_germ_ray(WitnessCase c) {
  switch (c) {
    case WitnessCase::LeftShrink: return chi_ell();
    case WitnessCase::RightShrink: return chi_r();
    case WitnessCase::TransLeft: return tau_ell();
    default: return neg_tau_r();
  }
}

/// Kernel the h-witness must come from: the germ at the end opposite to the
/// window must be trivial.
inline bool h_kernel_condition(WitnessCase c, const PLMap& m, const GroupSpec& spec) {
  auto [gl, gr] = germs(m, spec.interval);
  switch (c) {
    case WitnessCase::LeftShrink:
    case WitnessCase::TransLeft:
      return gr.is_trivial();
    default:
      return gl.is_trivial();
  }
}

inline std::pair<Bound, Bound> window_bounds(WitnessCase c, const Rat& param, const GroupSpec& spec) {
  Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);
  switch (c) {
    case WitnessCase::LeftShrink:
      return {Bound::finite(a), Bound::finite(a + param)};
    case WitnessCase::RightShrink:
      return {Bound::finite(spec.interval.c - param), Bound::finite(spec.interval.c)};
    case WitnessCase::TransLeft:
      return {Bound::neg_inf(), Bound::finite(param)};  // param is the endpoint -k
    default:
      return {Bound::finite(param), Bound::pos_inf()};  // param is k
  }
}

}  // namespace detail

/// Implements the existence lemmas: f = f1 f2^-1 separates chi from the
/// relevant germ ray (chi(f) > 0, germ observable negative), h is a kernel
/// element with positive chi-value conjugated into f's window.
inline WitnessResult find_witnesses(const GroupSpec& spec, const Character& chi, WitnessCase kind,
                                    const BallIndex& ball) {
  Character psi = detail::separating_germ_ray(kind);
  std::optional<size_t> i1, i2;
  for (size_t i = 1; i < ball.size() && !(i1 && i2); ++i) {
    Sign sc = lr_sign(char_eval(chi, ball.elements[i], spec));
    Sign sp = lr_sign(char_eval(psi, ball.elements[i], spec));
    if (!i1 && sc != Sign::Negative && sp == Sign::Negative) i1 = i;
    if (!i2 && sp != Sign::Negative && sc == Sign::Negative) i2 = i;
  }
  if (!i1 || !i2) return NotFoundWithinBall{};
  GroupElement f{compose(ball.elements[*i1].map, invert(ball.elements[*i2].map)),
                 ball.elements[*i1].word * ball.elements[*i2].word.inverse()};

  // window parameter from f's breakpoint structure
  Rat param;
  const auto& bps = f.map.breakpoints();
  switch (kind) {
    case WitnessCase::LeftShrink: {
      Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);
      std::optional<Rat> first;
      for (const auto& [x, y] : bps)
        if (a < x) { first = x; break; }
      if (!first) return NotFoundWithinBall{};
      param = *first - a;
      break;
    }
    case WitnessCase::RightShrink: {
      std::optional<Rat> last;
      for (const auto& [x, y] : bps)
        if (x < spec.interval.c) last = x;
      if (!last) return NotFoundWithinBall{};
      param = spec.interval.c - *last;
      break;
    }
    case WitnessCase::TransLeft:
      param = bps.front().first;  // window (-inf, param]
      break;
    default:
      param = bps.back().first;  // window [param, +inf)
      break;
  }

  // h0: kernel element with chi != 0, sign corrected, then conjugated into
  // the window
  auto [wlo, whi] = detail::window_bounds(kind, param, spec);
  for (size_t i = 1; i < ball.size(); ++i) {
    if (!detail::h_kernel_condition(kind, ball.elements[i].map, spec)) continue;
    Sign s = lr_sign(char_eval(chi, ball.elements[i], spec));
    if (s == Sign::Zero) continue;
    GroupElement h0 = ball.elements[i];
    if (s == Sign::Negative) h0 = {invert(h0.map), h0.word.inverse()};
    auto conj = conjugate_into(spec, ball, h0.map, wlo, whi);
    if (const auto* c = std::get_if<Conjugator>(&conj)) {
      GroupElement h{compose(compose(c->map, h0.map), invert(c->map)), conjugated(c->word, h0.word)};
      return FH{kind, std::move(f), std::move(h), param};
    }
  }
  return NotFoundWithinBall{};
}

// ---------------------------------------------------------------------------
// membership certificates (the Sigma^1-criterion relations)

struct MembershipCertificate {
  Character chi;
  std::vector<Word> y_plus;  // chi-nonnegative generating set, f and h adjoined
  Word t, f, h;
  WitnessCase window_kind = WitnessCase::LeftShrink;
  bool commuting_shortcut = false;  // all commutators [t^-1,y^-1] trivial
  Rat window_param;                 // delta resp. k (signed endpoint for TransLeft)
  Rat margin_param;                 // delta_1 resp. k_1
  long m = 0;
  std::vector<Word> relation_lhs;   // t^-1 y t
  std::vector<Word> relation_rhs;   // w_y
  bool flag_relation_identity = false;
  bool flag_valuation_gap = false;
  bool flag_disjoint_supports = false;
  bool flag_window_geometry = false;
};

namespace detail {

inline Word build_w_y(const Word& y, const Word& t, const Word& f, const Word& h, long m) {
  Word fm = f.pow(m);
  Word H = fm * h * fm.inverse();
  return y * H * y.inverse() * t.inverse() * y * t * fm * h.inverse() * fm.inverse();
}

}  // namespace detail

/// Assembles and verifies the certificate for [chi] in Sigma^1(G) from the
/// witnesses: picks t, computes the margin delta_1 from the commutator
/// supports, the power m pushing h's support past the margin, and checks the
/// relation t^-1 y t = w_y together with the strict valuation gap for every
/// y in Y_+. Any failed step raises HypothesisFailure naming the stage.
inline MembershipCertificate membership_certificate(const GroupSpec& spec, const Character& chi, const FH& fh) {
  MembershipCertificate cert;
  cert.chi = chi;
  cert.window_kind = fh.kind;
  cert.window_param = fh.window_param;
  cert.f = fh.f.word;
  cert.h = fh.h.word;

  // Y_+ = chi-nonnegative generators and inverses, with f and h adjoined
  std::vector<GroupElement> y_elems;
  for (int sign : {+1, -1})
    for (size_t g = 0; g < spec.generators.size(); ++g) {
      Word w = Word::letter(static_cast<int>(g), sign);
      if (lr_sign(char_eval(chi, w, spec)) != Sign::Negative)
        y_elems.push_back({sign > 0 ? spec.gen_map(static_cast<int>(g)) : invert(spec.gen_map(static_cast<int>(g))), w});
    }
  y_elems.push_back(fh.f);
  y_elems.push_back(fh.h);
  for (const auto& e : y_elems) cert.y_plus.push_back(e.word);

  // t: first element of Y_+ with chi(t) > 0
  std::optional<GroupElement> t;
  for (const auto& e : y_elems)
    if (lr_positive(char_eval(chi, e, spec))) { t = e; break; }
  if (!t) throw HypothesisFailure("PickT", "no element of Y_+ has positive chi-value");
  cert.t = t->word;

  if (!lr_positive(char_eval(chi, fh.f, spec)))
    throw HypothesisFailure("WitnessSigns", "chi(f) is not positive");
  if (!lr_positive(char_eval(chi, fh.h, spec)))
    throw HypothesisFailure("WitnessSigns", "chi(h) is not positive");

  // commutators [t^-1, y^-1] and the margin they leave free
  std::vector<PLMap> comms;
  std::vector<SupportSet> comm_supports;
  bool any_nontrivial = false;
  for (const auto& y : y_elems) {
    PLMap c = commutator(invert(t->map), invert(y.map));
    if (!c.is_identity()) any_nontrivial = true;
    comm_supports.push_back(support(c));
    comms.push_back(std::move(c));
  }

  Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);
  const Rat& cend = spec.interval.c;

  cert.commuting_shortcut = !any_nontrivial;
  if (any_nontrivial) {
    switch (fh.kind) {
      case WitnessCase::LeftShrink: {
        std::optional<Rat> min_lo;
        for (const auto& s : comm_supports) {
          if (s.empty()) continue;
          const Bound& lo = s.hull().first;
          if (!lo.is_finite() || !(a < lo.value))
            throw HypothesisFailure("CommutatorSupports", "a commutator support touches the left end");
          if (!min_lo || lo.value < *min_lo) min_lo = lo.value;
        }
        cert.margin_param = a + (*min_lo - a) / Rat(2);
        break;
      }
      case WitnessCase::RightShrink: {
        std::optional<Rat> max_hi;
        for (const auto& s : comm_supports) {
          if (s.empty()) continue;
          const Bound& hi = s.hull().second;
          if (!hi.is_finite() || !(hi.value < cend))
            throw HypothesisFailure("CommutatorSupports", "a commutator support touches the right end");
          if (!max_hi || *max_hi < hi.value) max_hi = hi.value;
        }
        cert.margin_param = cend - (cend - *max_hi) / Rat(2);
        break;
      }
      case WitnessCase::TransRight: {
        std::optional<Rat> max_hi;
        for (const auto& s : comm_supports) {
          if (s.empty()) continue;
          const Bound& hi = s.hull().second;
          if (!hi.is_finite())
            throw HypothesisFailure("CommutatorSupports", "a commutator support is unbounded above");
          if (!max_hi || *max_hi < hi.value) max_hi = hi.value;
        }
        cert.margin_param = *max_hi;
        break;
      }
      case WitnessCase::TransLeft: {
        std::optional<Rat> min_lo;
        for (const auto& s : comm_supports) {
          if (s.empty()) continue;
          const Bound& lo = s.hull().first;
          if (!lo.is_finite())
            throw HypothesisFailure("CommutatorSupports", "a commutator support is unbounded below");
          if (!min_lo || lo.value < *min_lo) min_lo = lo.value;
        }
        cert.margin_param = *min_lo;
        break;
      }
    }

    // minimal m pushing the window past the margin
    Rat x;
    auto done = [&](const Rat& v) {
      switch (fh.kind) {
        case WitnessCase::LeftShrink: return !(cert.margin_param < v);
        case WitnessCase::RightShrink: return !(v < cert.margin_param);
        case WitnessCase::TransRight: return !(v < cert.margin_param);
        default: return !(cert.margin_param < v);
      }
    };
    switch (fh.kind) {
      case WitnessCase::LeftShrink: x = a + fh.window_param; break;
      case WitnessCase::RightShrink: x = cend - fh.window_param; break;
      default: x = fh.window_param; break;
    }
    long m = 0;
    while (!done(x)) {
      x = fh.f.map.evaluate(x);
      if (++m > 4096) throw HypothesisFailure("PowerSearch", "f does not push the window past the margin");
    }
    cert.m = m;
  } else {
    cert.margin_param = cert.window_param;
    cert.m = 0;
  }

  // H = f^m h f^-m must avoid every commutator support
  PLMap fm = power(fh.f.map, cert.m);
  PLMap H = compose(compose(fm, fh.h.map), invert(fm));
  SupportSet H_supp = support(H);
  for (size_t i = 0; i < comms.size(); ++i)
    if (!supports_disjoint(H_supp, comm_supports[i]))
      throw HypothesisFailure("DisjointnessCheck",
                              "supp(H) meets supp([t^-1,y^-1]) for y = " + spec.word_str(y_elems[i].word));
  cert.flag_disjoint_supports = true;

  // the relations t^-1 y t = w_y, verified exactly, plus the valuation gap
  // (valuations over the words as written, prefixes not freely reduced)
  LogReal chi_t = char_eval(chi, t->word, spec);
  for (const auto& y : y_elems) {
    Word lhs = t->word.inverse() * y.word * t->word;
    Word rhs = detail::build_w_y(y.word, t->word, fh.f.word, fh.h.word, cert.m);
    if (spec.evaluate_word(lhs) != spec.evaluate_word(rhs))
      throw HypothesisFailure("RelationIdentity", "t^-1 y t != w_y for y = " + spec.word_str(y.word));
    LogReal val_l = detail::raw_valuation(chi, detail::raw_conjugation(y.word, t->word), spec);
    LogReal val_r =
        detail::raw_valuation(chi, detail::raw_w_y(y.word, t->word, fh.f.word, fh.h.word, cert.m), spec);
    if (val_l != -chi_t)
      throw HypothesisFailure("ValuationGap", "valuation of t^-1 y t is not -chi(t)");
    if (lr_cmp(val_r, val_l) != Sign::Positive)
      throw HypothesisFailure("ValuationGap", "no strict valuation gap for y = " + spec.word_str(y.word));
    cert.relation_lhs.push_back(std::move(lhs));
    cert.relation_rhs.push_back(std::move(rhs));
  }
  cert.flag_relation_identity = true;
  cert.flag_valuation_gap = true;
  cert.flag_window_geometry = true;
  return cert;
}

// ---------------------------------------------------------------------------
// independent certificate verification

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(std::string why) {
    ok = false;
    failures.push_back(std::move(why));
  }
};

/// Re-checks a membership certificate from its serialized content alone:
/// signs of chi on Y_+/t/f/h, window geometry of f and h, disjointness of
/// supp(H) from every commutator support, the relation identities in exact
/// PL arithmetic, the word shapes, and the strict valuation gaps.
inline VerifyReport verify_certificate(const GroupSpec& spec, const MembershipCertificate& cert) {
  VerifyReport rep;
  try {
    for (const auto& y : cert.y_plus)
      if (lr_sign(char_eval(cert.chi, y, spec)) == Sign::Negative)
        rep.fail("Y_+ contains an element with negative chi-value");
    LogReal chi_t = char_eval(cert.chi, cert.t, spec);
    if (!lr_positive(chi_t)) rep.fail("chi(t) is not positive");
    if (!lr_positive(char_eval(cert.chi, cert.f, spec))) rep.fail("chi(f) is not positive");
    if (!lr_positive(char_eval(cert.chi, cert.h, spec))) rep.fail("chi(h) is not positive");
    bool t_listed = false, f_listed = false, h_listed = false;
    for (const auto& y : cert.y_plus) {
      t_listed |= y == cert.t;
      f_listed |= y == cert.f;
      h_listed |= y == cert.h;
    }
    if (!t_listed || !f_listed || !h_listed) rep.fail("t, f, h must belong to Y_+");

    PLMap fmap = spec.evaluate_word(cert.f);
    PLMap hmap = spec.evaluate_word(cert.h);
    PLMap tmap = spec.evaluate_word(cert.t);
    Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);

    // window geometry
    if (!cert.commuting_shortcut) {
      switch (cert.window_kind) {
        case WitnessCase::LeftShrink:
          if (!(fmap.affine_on(a, a + cert.window_param) && fmap.slope_right_of(a) < Rat(1)))
            rep.fail("f is not linear with slope < 1 on the left window");
          if (!support(hmap).within(Bound::finite(a), Bound::finite(a + cert.window_param)))
            rep.fail("supp(h) is not inside the left window");
          break;
        case WitnessCase::RightShrink:
          if (!(fmap.affine_on(spec.interval.c - cert.window_param, spec.interval.c) &&
                fmap.slope_left_of(spec.interval.c) < Rat(1)))
            rep.fail("f is not affine with slope < 1 on the right window");
          if (!support(hmap).within(Bound::finite(spec.interval.c - cert.window_param),
                                    Bound::finite(spec.interval.c)))
            rep.fail("supp(h) is not inside the right window");
          break;
        case WitnessCase::TransRight: {
          if (!(fmap.right_slope().is_one() && fmap.affine_above(cert.window_param)))
            rep.fail("f is not a translation on [k, inf)");
          Rat k = cert.window_param;
          if (!(k < fmap.evaluate(k))) rep.fail("f does not translate to the right");
          if (!support(hmap).within(Bound::finite(k), Bound::pos_inf()))
            rep.fail("supp(h) is not inside [k, inf)");
          break;
        }
        case WitnessCase::TransLeft: {
          if (!(fmap.left_slope().is_one() && fmap.affine_below(cert.window_param)))
            rep.fail("f is not a translation on (-inf, -k]");
          Rat k = cert.window_param;
          if (!(fmap.evaluate(k) < k)) rep.fail("f does not translate to the left");
          if (!support(hmap).within(Bound::neg_inf(), Bound::finite(k)))
            rep.fail("supp(h) is not inside (-inf, -k]");
          break;
        }
      }
    }

    // H against the commutator supports; in the commuting shortcut every
    // commutator must be trivial
    PLMap fm = power(fmap, cert.m);
    SupportSet H_supp = support(compose(compose(fm, hmap), invert(fm)));
    if (cert.y_plus.size() != cert.relation_lhs.size() || cert.y_plus.size() != cert.relation_rhs.size())
      rep.fail("relation list does not match Y_+");
    for (size_t i = 0; i < cert.y_plus.size() && rep.ok; ++i) {
      const Word& y = cert.y_plus[i];
      PLMap c = commutator(invert(tmap), invert(spec.evaluate_word(y)));
      if (cert.commuting_shortcut && !c.is_identity()) {
        rep.fail("commuting shortcut claimed but [t^-1,y^-1] is non-trivial");
        break;
      }
      if (!supports_disjoint(H_supp, support(c)))
        rep.fail("supp(H) meets a commutator support");
      Word lhs_expect = cert.t.inverse() * y * cert.t;
      Word rhs_expect = detail::build_w_y(y, cert.t, cert.f, cert.h, cert.m);
      if (!(cert.relation_lhs[i] == lhs_expect) || !(cert.relation_rhs[i] == rhs_expect))
        rep.fail("relation words do not have the required shape");
      if (spec.evaluate_word(cert.relation_lhs[i]) != spec.evaluate_word(cert.relation_rhs[i]))
        rep.fail("relation identity fails in exact PL arithmetic");
      LogReal val_l = detail::raw_valuation(cert.chi, detail::raw_conjugation(y, cert.t), spec);
      LogReal val_r =
          detail::raw_valuation(cert.chi, detail::raw_w_y(y, cert.t, cert.f, cert.h, cert.m), spec);
      if (val_l != -chi_t) rep.fail("valuation of t^-1 y t is not -chi(t)");
      if (lr_cmp(val_r, val_l) != Sign::Positive) rep.fail("valuation gap is not strict");
    }
  } catch (const Error& e) {
    rep.fail(std::string("exception: ") + e.what());
  }
  return rep;
}

// ---------------------------------------------------------------------------
// non-membership certificates

struct NonMembershipCertificate {
  enum class GermRay { ChiEll, ChiR, TauEll, NegTauR };
  GermRay matched = GermRay::ChiEll;
  std::string theorem;        // which proposition backs the verdict
  Word nonabelian_f, nonabelian_g;
  bool irreducible = false;
  bool ray_match_verified = false;
};

inline Character germ_ray_character(NonMembershipCertificate::GermRay r) {
  switch (r) {
    case NonMembershipCertificate::GermRay::ChiEll: return chi_ell();
    case NonMembershipCertificate::GermRay::ChiR: return chi_r();
    case NonMembershipCertificate::GermRay::TauEll: return tau_ell();
    default: return neg_tau_r();
  }
}

/// Re-checks a non-membership verdict: the hypotheses (irreducibility and a
/// concrete non-commuting pair) and the SameRay match against the germ ray.
inline VerifyReport verify_non_membership(const GroupSpec& spec, const NonMembershipCertificate& cert,
                                          const Character& chi, const BallIndex& ball,
                                          mpfr_prec_t precision_cap = 4096) {
  VerifyReport rep;
  try {
    if (!is_irreducible(irreducibility_check(spec))) rep.fail("group is not irreducible");
    PLMap cf = spec.evaluate_word(cert.nonabelian_f);
    PLMap cg = spec.evaluate_word(cert.nonabelian_g);
    if (commutator(cf, cg).is_identity()) rep.fail("claimed non-abelian witness pair commutes");
    auto r = ray_compare(chi, germ_ray_character(cert.matched), spec, ball.elements, precision_cap);
    if (r.verdict != RayRelation::SameRay) rep.fail("character is not on the claimed germ ray");
  } catch (const Error& e) {
    rep.fail(std::string("exception: ") + e.what());
  }
  return rep;
}

}  // namespace plsigma
