#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "plsigma/germs.hpp"
#include "plsigma/groupspec.hpp"
#include "plsigma/hnf.hpp"
#include "plsigma/plmap.hpp"

namespace plsigma {

/// Word-metric ball of a GroupSpec with canonical-form deduplication.
/// Element 0 is the identity; discovery order is the deterministic BFS
/// order (generator order, +1 before -1). Whenever BFS reaches an already
/// known canonical form along a fresh edge, the loop word is harvested as a
/// relation.
struct BallIndex {
  int radius = 0;
  std::vector<GroupElement> elements;
  std::map<PLMap, size_t> index;
  std::vector<Word> relations;

  std::optional<size_t> find(const PLMap& m) const {
    auto it = index.find(m);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
  size_t size() const { return elements.size(); }
};

inline BallIndex enumerate_ball(const GroupSpec& spec, int radius, size_t element_cap = 1000000) {
  BallIndex ball;
  ball.radius = radius;
  ball.elements.push_back({PLMap::identity(), Word::empty()});
  ball.index.emplace(PLMap::identity(), 0);
  std::set<Word> seen_relations;

  size_t layer_begin = 0;
  for (int r = 0; r < radius; ++r) {
    size_t layer_end = ball.elements.size();
    for (size_t i = layer_begin; i < layer_end; ++i) {
      for (size_t g = 0; g < spec.generators.size(); ++g) {
        for (int sign : {+1, -1}) {
          Word w = ball.elements[i].word;
          w.append(static_cast<int>(g), sign);
          if (w.size() < ball.elements[i].word.size() + 1) continue;  // backtrack edge
          PLMap m = compose(ball.elements[i].map,
                            sign > 0 ? spec.gen_map(static_cast<int>(g)) : invert(spec.gen_map(static_cast<int>(g))));
          if (auto hit = ball.find(m)) {
            Word rel = w * ball.elements[*hit].word.inverse();
            if (!rel.is_empty() && seen_relations.insert(rel).second) ball.relations.push_back(rel);
            continue;
          }
          if (ball.elements.size() >= element_cap)
            throw ResourceBudgetExceeded("ball element cap " + std::to_string(element_cap) + " reached");
          ball.index.emplace(m, ball.elements.size());
          ball.elements.push_back({std::move(m), std::move(w)});
        }
      }
    }
    layer_begin = layer_end;
  }
  return ball;
}

// ---------------------------------------------------------------------------
// structural hypothesis checks

struct Irreducible {};
struct FixedPointWitness { Rat x; };
using IrreducibilityResult = std::variant<Irreducible, FixedPointWitness>;

inline bool is_irreducible(const IrreducibilityResult& r) { return std::holds_alternative<Irreducible>(r); }

/// Supports of the generators must cover the interior of the interval.
inline IrreducibilityResult irreducibility_check(const GroupSpec& spec) {
  std::vector<SupportSet> parts;
  parts.reserve(spec.generators.size());
  for (const auto& g : spec.generators) parts.push_back(support(g.map));
  SupportSet u = support_union(parts);

  Bound lo, hi;
  switch (spec.interval.kind) {
    case IntervalSpec::Kind::Compact:
      lo = Bound::finite(spec.interval.a);
      hi = Bound::finite(spec.interval.c);
      break;
    case IntervalSpec::Kind::HalfLine:
      lo = Bound::finite(Rat(0));
      hi = Bound::pos_inf();
      break;
    default:
      lo = Bound::neg_inf();
      hi = Bound::pos_inf();
      break;
  }

  auto inside_gap = [](const Bound& glo, const Bound& ghi) -> Rat {
    if (glo.is_finite() && ghi.is_finite()) {
      if (glo.value == ghi.value) return glo.value;  // single uncovered point
      return (glo.value + ghi.value) / Rat(2);
    }
    if (glo.is_finite()) return glo.value + Rat(1);
    if (ghi.is_finite()) return ghi.value - Rat(1);
    return Rat(0);
  };

  Bound cursor = lo;
  for (const auto& [ilo, ihi] : u.intervals) {
    if (cursor < ilo) return FixedPointWitness{inside_gap(cursor, ilo)};
    if (cursor == ilo && !(cursor == lo))
      return FixedPointWitness{cursor.value};  // isolated uncovered point
    if (cursor < ihi) cursor = ihi;
  }
  if (cursor < hi) return FixedPointWitness{inside_gap(cursor, hi)};
  return Irreducible{};
}

struct NonAbelianWitness { size_t i, j; };
struct NotFoundWithinBall {};
using NonAbelianResult = std::variant<NonAbelianWitness, NotFoundWithinBall>;

/// First pair of ball elements, in discovery order, with a non-trivial
/// commutator.
inline NonAbelianResult nonabelian_witness(const GroupSpec&, const BallIndex& ball) {
  for (size_t i = 0; i < ball.size(); ++i)
    for (size_t j = i + 1; j < ball.size(); ++j)
      if (!commutator(ball.elements[i].map, ball.elements[j].map).is_identity())
        return NonAbelianWitness{i, j};
  return NotFoundWithinBall{};
}

// ---------------------------------------------------------------------------
// kernel generation (the torsion-quotient hypothesis, via Lemma-3.4 style
// equivalences: im eta_1 = eta_1(ker eta_2) on both sides)

struct VerifiedByTags {};
struct VerifiedByLattice { std::vector<size_t> left_witnesses, right_witnesses; };
struct NotVerified { std::string evidence; };
using KernelGenerationResult = std::variant<VerifiedByTags, VerifiedByLattice, NotVerified>;

inline bool kernel_generation_ok(const KernelGenerationResult& r) {
  return !std::holds_alternative<NotVerified>(r);
}

namespace detail {

/// One side's germ observable image, either multiplicative (prime exponent
/// lattice of the germ slope) or additive (translation amplitudes).
struct GermSideObservable {
  bool left;
  bool additive;  // translation amplitudes instead of slope exponents

  Germ germ_of(const PLMap& m, const GroupSpec& spec) const {
    auto [gl, gr] = germs(m, spec.interval);
    return left ? gl : gr;
  }
};

}  // namespace detail

/// Decides whether G = (ker sigma_l)*(ker sigma_r) is certified by the ball:
/// either every generator already lies in one of the kernels, or the germ
/// images of kernel elements found in the ball span the full germ images of
/// the generators, on both sides.
inline KernelGenerationResult kernel_generation_check(const GroupSpec& spec, const BallIndex& ball) {
  // tags, inferred from germs when omitted
  bool all_tagged = true;
  for (const auto& g : spec.generators) {
    auto [gl, gr] = germs(g.map, spec.interval);
    if (!gl.is_trivial() && !gr.is_trivial()) { all_tagged = false; break; }
  }
  if (all_tagged) return VerifiedByTags{};

  const bool left_additive = spec.interval.kind == IntervalSpec::Kind::FullLine;
  const bool right_additive = spec.interval.kind != IntervalSpec::Kind::Compact;

  // prime set for the multiplicative sides
  std::vector<std::uint64_t> primes;
  {
    std::set<std::uint64_t> ps;
    for (const auto& g : spec.generators) {
      auto [gl, gr] = germs(g.map, spec.interval);
      if (!left_additive)
        for (const auto& [p, e] : slope_exponents(gl.slope)) ps.insert(p);
      if (!right_additive)
        for (const auto& [p, e] : slope_exponents(gr.slope)) ps.insert(p);
    }
    primes.assign(ps.begin(), ps.end());
  }
  auto exp_vector = [&primes](const Germ& g) {
    std::vector<mpz_class> v(primes.size(), 0);
    for (const auto& [p, e] : slope_exponents(g.slope)) {
      auto it = std::lower_bound(primes.begin(), primes.end(), p);
      v[it - primes.begin()] = e;
    }
    return v;
  };

  // One direction: image of `side` must be generated by the images of the
  // elements trivial on the other side.
  auto verify_side = [&](bool left_side, std::vector<size_t>& witnesses) -> bool {
    bool additive = left_side ? left_additive : right_additive;
    IntLattice have(primes.size());
    RatSubgroup have_add;
    size_t used_elements = 0;
    auto covered = [&]() {
      for (const auto& g : spec.generators) {
        auto [gl, gr] = germs(g.map, spec.interval);
        const Germ& target = left_side ? gl : gr;
        if (additive) {
          if (!have_add.contains(target.offset)) return false;
        } else {
          if (!have.contains(exp_vector(target))) return false;
        }
      }
      return true;
    };
    if (covered()) return true;  // side is trivial on all generators
    for (size_t i = 1; i < ball.size(); ++i) {
      auto [gl, gr] = germs(ball.elements[i].map, spec.interval);
      const Germ& other = left_side ? gr : gl;
      if (!other.is_trivial()) continue;  // not in the other side's kernel
      const Germ& mine = left_side ? gl : gr;
      if (mine.is_trivial()) continue;
      if (additive)
        have_add.add(mine.offset);
      else
        have.add(exp_vector(mine));
      witnesses.push_back(i);
      ++used_elements;
      if (covered()) return true;
    }
    return false;
  };

  VerifiedByLattice v;
  bool left_ok = verify_side(true, v.left_witnesses);
  bool right_ok = verify_side(false, v.right_witnesses);
  if (left_ok && right_ok) return v;
  return NotVerified{std::string("germ image not generated by kernel elements on the ") +
                     (left_ok ? "right" : "left") + " side within radius " + std::to_string(ball.radius)};
}

// ---------------------------------------------------------------------------
// conjugating supports into windows

struct Conjugator { Word word; PLMap map; };
using ConjugateResult = std::variant<Conjugator, NotFoundWithinBall>;

/// Searches the ball, and powers of ball elements, for g with
/// g(supp h) inside the closed window [lo, hi]. Image endpoints are tracked
/// by iterated evaluation, so powers cost two evaluations per step.
inline ConjugateResult conjugate_into(const GroupSpec& spec, const BallIndex& ball, const PLMap& h,
                                      const Bound& lo, const Bound& hi, int max_power = 200) {
  SupportSet s = support(h);
  if (s.within(lo, hi)) return Conjugator{Word::empty(), PLMap::identity()};
  auto [slo, shi] = s.hull();
  // An infinite support end can never be pulled inside a finite window side.
  if (!slo.is_finite() && lo.is_finite()) return NotFoundWithinBall{};
  if (!shi.is_finite() && hi.is_finite()) return NotFoundWithinBall{};

  for (size_t i = 1; i < ball.size(); ++i) {
    const PLMap& g = ball.elements[i].map;
    Rat l = slo.is_finite() ? g.evaluate(slo.value) : Rat(0);
    Rat r = shi.is_finite() ? g.evaluate(shi.value) : Rat(0);
    for (int m = 1; m <= max_power; ++m) {
      bool lower = !lo.is_finite() || !slo.is_finite() || !(l < lo.value);
      bool upper = !hi.is_finite() || !shi.is_finite() || !(hi.value < r);
      if (lower && upper) {
        Word w = ball.elements[i].word.pow(m);
        return Conjugator{w, spec.evaluate_word(w)};
      }
      Rat nl = slo.is_finite() ? g.evaluate(l) : Rat(0);
      Rat nr = shi.is_finite() ? g.evaluate(r) : Rat(0);
      // require progress on each violated side
      if (!upper && shi.is_finite() && !(nr < r)) break;
      if (!lower && slo.is_finite() && !(l < nl)) break;
      l = nl;
      r = nr;
    }
  }
  return NotFoundWithinBall{};
}

}  // namespace plsigma
