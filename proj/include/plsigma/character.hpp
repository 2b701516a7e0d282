#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "plsigma/errors.hpp"
#include "plsigma/germs.hpp"
#include "plsigma/groupspec.hpp"
#include "plsigma/logreal.hpp"

namespace plsigma {

/// Character built from germ observables:
///   L_p(g), R_p(g)  -- exponent of the prime p in the left/right germ slope
///   T_l(g), T_r(g)  -- translation amplitudes of the germs (slope-1 germs)
/// plus two distinguished transcendental parts: chi_ell_coeff * (ln of the
/// left germ slope) and chi_r_coeff * (ln of the right germ slope).
/// Any such combination is automatically a homomorphism.
struct GermChar {
  std::map<std::uint64_t, Rat> left_weights;   // weight on L_p
  std::map<std::uint64_t, Rat> right_weights;  // weight on R_p
  Rat t_left{0}, t_right{0};                   // weights on T_l, T_r
  Rat chi_ell_coeff{0}, chi_r_coeff{0};

  bool operator==(const GermChar&) const = default;
};

/// Character given by a table of generator values; must pass
/// char_consistency against harvested relations before use.
struct TabledChar {
  std::map<std::string, LogReal> values;

  bool operator==(const TabledChar&) const = default;
};

using Character = std::variant<GermChar, TabledChar>;

inline Character chi_ell() { GermChar c; c.chi_ell_coeff = Rat(1); return c; }
inline Character chi_r() { GermChar c; c.chi_r_coeff = Rat(1); return c; }
inline Character tau_ell() { GermChar c; c.t_left = Rat(1); return c; }
inline Character neg_tau_r() { GermChar c; c.t_right = Rat(-1); return c; }
inline Character tabled(std::map<std::string, LogReal> v) { return TabledChar{std::move(v)}; }

/// Scales a character by a positive rational (stays on the same ray).
inline Character scale_char(const Rat& s, const Character& chi) {
  if (const auto* g = std::get_if<GermChar>(&chi)) {
    GermChar out = *g;
    for (auto& [p, w] : out.left_weights) w *= s;
    for (auto& [p, w] : out.right_weights) w *= s;
    out.t_left *= s;
    out.t_right *= s;
    out.chi_ell_coeff *= s;
    out.chi_r_coeff *= s;
    return out;
  }
  TabledChar out = std::get<TabledChar>(chi);
  for (auto& [sym, v] : out.values) v = s * v;
  return out;
}

namespace detail {

inline LogReal germ_char_value(const GermChar& chi, const PLMap& g, const GroupSpec& spec) {
  const auto kind = spec.interval.kind;
  if ((!chi.right_weights.empty() || !chi.chi_r_coeff.is_zero()) && kind != IntervalSpec::Kind::Compact)
    throw TranslationObservableUndefined("log-slope observables at an unbounded right end");
  if ((!chi.left_weights.empty() || !chi.chi_ell_coeff.is_zero()) && kind == IntervalSpec::Kind::FullLine)
    throw TranslationObservableUndefined("log-slope observables at an unbounded left end");
  if (!chi.t_right.is_zero() &&
      (kind == IntervalSpec::Kind::Compact || !spec.translations_at_right()))
    throw TranslationObservableUndefined("T_r needs a translation germ at +inf");
  if (!chi.t_left.is_zero() && (kind != IntervalSpec::Kind::FullLine || !spec.translations_at_left()))
    throw TranslationObservableUndefined("T_l needs a translation germ at -inf");

  auto [gl, gr] = germs(g, spec.interval);
  LogReal v;
  if (!chi.left_weights.empty() || !chi.chi_ell_coeff.is_zero()) {
    auto e = slope_exponents(gl.slope);
    for (const auto& [p, k] : e) {
      if (auto it = chi.left_weights.find(p); it != chi.left_weights.end())
        v += LogReal(Rat(k) * it->second);
    }
    if (!chi.chi_ell_coeff.is_zero())
      v += chi.chi_ell_coeff * LogReal::from_exponents(e);
  }
  if (!chi.right_weights.empty() || !chi.chi_r_coeff.is_zero()) {
    auto e = slope_exponents(gr.slope);
    for (const auto& [p, k] : e) {
      if (auto it = chi.right_weights.find(p); it != chi.right_weights.end())
        v += LogReal(Rat(k) * it->second);
    }
    if (!chi.chi_r_coeff.is_zero())
      v += chi.chi_r_coeff * LogReal::from_exponents(e);
  }
  if (!chi.t_left.is_zero()) {
    if (!gl.is_translation())
      throw TranslationObservableUndefined("element germ at -inf is not a translation");
    v += LogReal(chi.t_left * gl.offset);
  }
  if (!chi.t_right.is_zero()) {
    if (!gr.is_translation())
      throw TranslationObservableUndefined("element germ at +inf is not a translation");
    v += LogReal(chi.t_right * gr.offset);
  }
  return v;
}

}  // namespace detail

/// Value of the character on an element given as a canonical map.
/// Tabled characters need a word; use the Word or GroupElement overloads.
inline LogReal char_eval(const Character& chi, const PLMap& g, const GroupSpec& spec) {
  if (const auto* gc = std::get_if<GermChar>(&chi)) return detail::germ_char_value(*gc, g, spec);
  throw ValidationError("tabled character needs a word, not a bare map");
}

inline LogReal char_eval(const Character& chi, const Word& w, const GroupSpec& spec) {
  if (const auto* tc = std::get_if<TabledChar>(&chi)) {
    LogReal v;
    for (const auto& [g, s] : w.letters) {
      const std::string& sym = spec.generators.at(g).symbol;
      auto it = tc->values.find(sym);
      if (it == tc->values.end())
        throw ValidationError("tabled character has no value for generator '" + sym + "'");
      v += (s > 0) ? it->second : -it->second;
    }
    return v;
  }
  // germ characters are homomorphisms over the letters
  const auto& gc = std::get<GermChar>(chi);
  LogReal v;
  for (const auto& [g, s] : w.letters) {
    LogReal t = detail::germ_char_value(gc, spec.gen_map(g), spec);
    v += (s > 0) ? t : -t;
  }
  return v;
}

inline LogReal char_eval(const Character& chi, const GroupElement& e, const GroupSpec& spec) {
  if (std::holds_alternative<GermChar>(chi)) return char_eval(chi, e.map, spec);
  return char_eval(chi, e.word, spec);
}

/// Nonzero on at least one generator (equivalently nonzero as a character).
inline bool char_nonzero(const Character& chi, const GroupSpec& spec) {
  for (size_t i = 0; i < spec.generators.size(); ++i)
    if (!char_eval(chi, Word::letter(static_cast<int>(i), +1), spec).is_zero()) return true;
  return false;
}

struct ConsistencyReport {
  bool ok = true;
  std::optional<Word> failing_relation;
  LogReal residue;
};

/// A tabled value assignment is a character only if it kills every relation.
inline ConsistencyReport char_consistency(const TabledChar& chi, const std::vector<Word>& relations,
                                          const GroupSpec& spec) {
  for (const auto& r : relations) {
    LogReal v = char_eval(Character(chi), r, spec);
    if (!v.is_zero()) return {false, r, v};
  }
  return {};
}

/// [chi] in S(G, K): does chi vanish on every element of K?
inline bool subsphere_test(const Character& chi, std::span<const GroupElement> K, const GroupSpec& spec) {
  for (const auto& e : K)
    if (!char_eval(chi, e, spec).is_zero()) return false;
  return true;
}

enum class RayRelation { SameRay, OppositeRay, Distinct, Unresolved };

struct RayCompareResult {
  RayRelation verdict = RayRelation::Unresolved;
  // Witness payload for Distinct: indices into the element list.
  std::optional<std::pair<size_t, size_t>> cross_witness;  // cross-difference bounded away from 0
  std::optional<size_t> pattern_witness;                   // zero/sign pattern mismatch
  std::string note;
};

/// Compares the rays of two characters on a list of group elements that
/// includes the generators.
///
/// SameRay/OppositeRay are certified by formal cancellation of the
/// cross-differences chi1(g)*chi2(h) - chi1(h)*chi2(g) in the commutative
/// algebra on {1, ln p}; since that algebra is an integral domain it is
/// enough to test each element against one pivot with chi2(pivot) != 0.
/// Distinct needs a rigorous witness: an exact zero-pattern or sign-pattern
/// mismatch, or a cross-difference bounded away from zero by interval
/// refinement. Otherwise Unresolved.
inline RayCompareResult ray_compare(const Character& chi1, const Character& chi2, const GroupSpec& spec,
                                    std::span<const GroupElement> elements,
                                    mpfr_prec_t precision_cap = 4096) {
  std::vector<LogReal> v1, v2;
  v1.reserve(elements.size());
  v2.reserve(elements.size());
  for (const auto& e : elements) {
    v1.push_back(char_eval(chi1, e, spec));
    v2.push_back(char_eval(chi2, e, spec));
  }
  auto all_zero = [](const std::vector<LogReal>& v) {
    for (const auto& x : v)
      if (!x.is_zero()) return false;
    return true;
  };
  if (all_zero(v1)) throw ZeroCharacter("first character vanishes on the whole ball");
  if (all_zero(v2)) throw ZeroCharacter("second character vanishes on the whole ball");

  for (size_t i = 0; i < elements.size(); ++i) {
    if (v1[i].is_zero() != v2[i].is_zero()) {
      RayCompareResult r;
      r.verdict = RayRelation::Distinct;
      r.pattern_witness = i;
      r.note = "zero-pattern mismatch";
      return r;
    }
  }

  size_t pivot = 0;
  while (v2[pivot].is_zero()) ++pivot;

  std::optional<size_t> formal_witness;
  for (size_t i = 0; i < elements.size(); ++i) {
    LogQuad d = LogQuad::product(v1[pivot], v2[i]) - LogQuad::product(v1[i], v2[pivot]);
    if (!d.is_zero()) {
      formal_witness = i;
      auto s = d.sign_bounded(precision_cap);
      if (s && *s != Sign::Zero) {
        RayCompareResult r;
        r.verdict = RayRelation::Distinct;
        r.cross_witness = {pivot, i};
        r.note = "cross-difference bounded away from zero";
        return r;
      }
    }
  }

  if (!formal_witness) {
    RayCompareResult r;
    bool agree = lr_sign(v1[pivot]) == lr_sign(v2[pivot]);
    r.verdict = agree ? RayRelation::SameRay : RayRelation::OppositeRay;
    return r;
  }

  // Formal non-cancellation that interval refinement could not separate:
  // fall back to exact sign patterns, which rule out proportionality with
  // either sign of the constant.
  bool agree_all = true, anti_all = true;
  std::optional<size_t> break_agree, break_anti;
  for (size_t i = 0; i < elements.size(); ++i) {
    Sign s1 = lr_sign(v1[i]), s2 = lr_sign(v2[i]);
    if (s1 != s2 && agree_all) { agree_all = false; break_agree = i; }
    Sign flip = s2 == Sign::Positive ? Sign::Negative : (s2 == Sign::Negative ? Sign::Positive : Sign::Zero);
    if (s1 != flip && anti_all) { anti_all = false; break_anti = i; }
  }
  if (!agree_all && !anti_all) {
    RayCompareResult r;
    r.verdict = RayRelation::Distinct;
    r.pattern_witness = *break_agree;
    r.note = "sign-pattern mismatch";
    return r;
  }
  RayCompareResult r;
  r.verdict = RayRelation::Unresolved;
  r.pattern_witness = formal_witness;
  r.note = "formal non-cancellation below precision cap";
  return r;
}

}  // namespace plsigma
