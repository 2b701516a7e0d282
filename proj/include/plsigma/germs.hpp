#pragma once

#include <utility>

#include "plsigma/errors.hpp"
#include "plsigma/plmap.hpp"
#include "plsigma/rat.hpp"

namespace plsigma {

/// The affine map t -> slope*t + offset a PL-homeomorphism agrees with near
/// an interval end (or near -inf/+inf for unbounded intervals).
struct Germ {
  Rat slope{1};
  Rat offset{0};

  bool is_trivial() const { return slope.is_one() && offset.is_zero(); }
  bool is_translation() const { return slope.is_one(); }

  /// this ∘ other, as affine maps.
  Germ after(const Germ& other) const {
    return Germ{slope * other.slope, slope * other.offset + offset};
  }

  bool operator==(const Germ&) const = default;
};

/// Left and right germs of f relative to the interval kind.
///
/// Compact [a, c]: the germs are linear through (a, a) resp. (c, c) and are
/// read off in O(1) from the adjacent piece. Half line: left germ through
/// (0, 0), right germ the affine tail near +inf. Full line: both germs are
/// the affine tails.
inline std::pair<Germ, Germ> germs(const PLMap& f, const IntervalSpec& ival) {
  auto tail_left = [&f]() {
    const auto& [x0, y0] = f.breakpoints().front();
    return Germ{f.left_slope(), y0 - f.left_slope() * x0};
  };
  auto tail_right = [&f]() {
    const auto& [xn, yn] = f.breakpoints().back();
    return Germ{f.right_slope(), yn - f.right_slope() * xn};
  };
  auto linear_at = [&f](const Rat& e, bool from_right) {
    Rat s = from_right ? f.slope_right_of(e) : f.slope_left_of(e);
    return Germ{s, e - s * e};  // passes through (e, e)
  };

  switch (ival.kind) {
    case IntervalSpec::Kind::Compact:
      return {linear_at(ival.a, true), linear_at(ival.c, false)};
    case IntervalSpec::Kind::HalfLine:
      return {linear_at(Rat(0), true), tail_right()};
    case IntervalSpec::Kind::FullLine:
    default:
      return {tail_left(), tail_right()};
  }
}

/// Membership in BPL_o(I): both relevant germs trivial, i.e. the support
/// stays away from the ends of the interval.
inline bool bounded_support_test(const PLMap& f, const IntervalSpec& ival) {
  auto [l, r] = germs(f, ival);
  return l.is_trivial() && r.is_trivial();
}

}  // namespace plsigma
