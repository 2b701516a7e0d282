#pragma once

#include <optional>
#include <string>
#include <vector>

#include "plsigma/ball.hpp"
#include "plsigma/character.hpp"
#include "plsigma/groupspec.hpp"

namespace plsigma {

/// Submonoid of G_chi used in the non-membership proofs: elements whose
/// inverse is linear on a left window, or a translation on a half line.
struct MonoidSpec {
  enum class Kind { LinearOnLeft, TranslationAbove, TranslationBelow };
  Kind kind = Kind::LinearOnLeft;
  Rat param;  // delta > 0 for LinearOnLeft, k for the translation variants
  Character chi;
};

inline bool monoid_member(const MonoidSpec& M, const GroupElement& e, const GroupSpec& spec) {
  if (lr_sign(char_eval(M.chi, e, spec)) == Sign::Negative) return false;
  PLMap inv = invert(e.map);
  switch (M.kind) {
    case MonoidSpec::Kind::LinearOnLeft: {
      Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);
      return inv.affine_on(a, a + M.param);
    }
    case MonoidSpec::Kind::TranslationAbove:
      return inv.right_slope().is_one() && inv.affine_above(M.param);
    case MonoidSpec::Kind::TranslationBelow:
    default:
      return inv.left_slope().is_one() && inv.affine_below(-M.param);
  }
}

struct MonoidReport {
  bool closure_ok = true;           // m1, m2 in M  =>  m1 m2 in M
  bool kernel_law_ok = true;        // M cap M^-1 = M cap ker chi
  bool quotient_law_ok = true;      // m1 m2^-1 in G_chi  =>  m1 m2^-1 in M
  std::optional<Word> properness_witness;  // element of G_chi \ M
  size_t members = 0;
  size_t pairs_checked = 0;
  size_t generation_checked = 0;    // ball elements expressed as quotients
  size_t generation_ok = 0;
  std::vector<std::string> failures;
};

/// Exhaustively checks the monoid laws of M on the ball, hunts a properness
/// witness in G_chi \ M, and gathers quotient-expressibility evidence for
/// gp(M) = G.
inline MonoidReport monoid_property_test(const GroupSpec& spec, const MonoidSpec& M, const BallIndex& ball,
                                         int max_power = 64) {
  MonoidReport rep;
  std::vector<size_t> members;
  for (size_t i = 0; i < ball.size(); ++i)
    if (monoid_member(M, ball.elements[i], spec)) members.push_back(i);
  rep.members = members.size();

  auto compose_elems = [&](const GroupElement& x, const GroupElement& y) {
    return GroupElement{compose(x.map, y.map), x.word * y.word};
  };
  auto invert_elem = [&](const GroupElement& x) {
    return GroupElement{invert(x.map), x.word.inverse()};
  };

  for (size_t a : members) {
    for (size_t b : members) {
      ++rep.pairs_checked;
      GroupElement prod = compose_elems(ball.elements[a], ball.elements[b]);
      if (!monoid_member(M, prod, spec)) {
        rep.closure_ok = false;
        rep.failures.push_back("closure fails on " + spec.word_str(prod.word));
      }
      GroupElement quot = compose_elems(ball.elements[a], invert_elem(ball.elements[b]));
      if (lr_sign(char_eval(M.chi, quot, spec)) != Sign::Negative && !monoid_member(M, quot, spec)) {
        rep.quotient_law_ok = false;
        rep.failures.push_back("quotient law fails on " + spec.word_str(quot.word));
      }
    }
    GroupElement inv = invert_elem(ball.elements[a]);
    bool inv_in = monoid_member(M, inv, spec);
    bool in_ker = char_eval(M.chi, ball.elements[a], spec).is_zero();
    if (inv_in != in_ker) {
      rep.kernel_law_ok = false;
      rep.failures.push_back("kernel law fails on " + spec.word_str(ball.elements[a].word));
    }
  }

  // properness: an element of G_chi outside M; the proof's witness is a
  // commutator conjugated into the monoid's window, so try that first and
  // fall back to a direct ball scan
  {
    auto nw = nonabelian_witness(spec, ball);
    if (const auto* w = std::get_if<NonAbelianWitness>(&nw)) {
      PLMap c = commutator(ball.elements[w->i].map, ball.elements[w->j].map);
      Word cw = word_commutator(ball.elements[w->i].word, ball.elements[w->j].word);
      Bound lo, hi;
      switch (M.kind) {
        case MonoidSpec::Kind::LinearOnLeft: {
          Rat a = spec.interval.kind == IntervalSpec::Kind::Compact ? spec.interval.a : Rat(0);
          lo = Bound::finite(a);
          hi = Bound::finite(a + M.param);
          break;
        }
        case MonoidSpec::Kind::TranslationAbove:
          lo = Bound::finite(M.param);
          hi = Bound::pos_inf();
          break;
        default:
          lo = Bound::neg_inf();
          hi = Bound::finite(-M.param);
          break;
      }
      auto conj = conjugate_into(spec, ball, c, lo, hi);
      if (const auto* g = std::get_if<Conjugator>(&conj)) {
        GroupElement witness{compose(compose(g->map, c), invert(g->map)), conjugated(g->word, cw)};
        if (lr_sign(char_eval(M.chi, witness, spec)) != Sign::Negative && !monoid_member(M, witness, spec))
          rep.properness_witness = witness.word;
      }
    }
  }
  for (size_t i = 0; i < ball.size() && !rep.properness_witness; ++i) {
    const auto& e = ball.elements[i];
    if (lr_sign(char_eval(M.chi, e, spec)) != Sign::Negative && !monoid_member(M, e, spec))
      rep.properness_witness = e.word;
  }

  // generation evidence: g = g0^-m * h with h in M, per ball element
  std::optional<size_t> contractor;
  for (size_t i : members) {
    if (!lr_positive(char_eval(M.chi, ball.elements[i], spec))) continue;
    contractor = i;
    break;
  }
  if (contractor) {
    const GroupElement& g0 = ball.elements[*contractor];
    for (size_t i = 0; i < ball.size(); ++i) {
      ++rep.generation_checked;
      GroupElement h = ball.elements[i];
      bool ok = false;
      for (int m = 0; m <= max_power; ++m) {
        if (monoid_member(M, h, spec)) { ok = true; break; }
        h = compose_elems(g0, h);
      }
      if (ok) ++rep.generation_ok;
    }
  }
  return rep;
}

}  // namespace plsigma
