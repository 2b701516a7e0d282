#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <utility>
#include <vector>

#include "plsigma/errors.hpp"
#include "plsigma/rat.hpp"

namespace plsigma {

/// The interval a group acts on: [a, c], [0, inf) or the whole line.
struct IntervalSpec {
  enum class Kind { Compact, HalfLine, FullLine };
  Kind kind = Kind::Compact;
  Rat a, c;  // only meaningful for Compact

  static IntervalSpec compact(Rat lo, Rat hi) {
    if (!(lo < hi)) throw ValidationError("compact interval needs a < c");
    return IntervalSpec{Kind::Compact, std::move(lo), std::move(hi)};
  }
  static IntervalSpec half_line() { return IntervalSpec{Kind::HalfLine, Rat(0), Rat(0)}; }
  static IntervalSpec full_line() { return IntervalSpec{Kind::FullLine, Rat(0), Rat(0)}; }

  bool operator==(const IntervalSpec&) const = default;
};

/// Extended rational: a finite value or one of the two infinities.
struct Bound {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rat value;

  static Bound neg_inf() { return {Kind::NegInf, Rat(0)}; }
  static Bound pos_inf() { return {Kind::PosInf, Rat(0)}; }
  static Bound finite(Rat v) { return {Kind::Finite, std::move(v)}; }

  bool is_finite() const { return kind == Kind::Finite; }

  friend bool operator==(const Bound& a, const Bound& b) {
    if (a.kind != b.kind) return false;
    return a.kind != Kind::Finite || a.value == b.value;
  }
  friend bool operator<(const Bound& a, const Bound& b) {
    auto rank = [](Kind k) { return k == Kind::NegInf ? -1 : (k == Kind::PosInf ? 1 : 0); };
    if (rank(a.kind) != rank(b.kind)) return rank(a.kind) < rank(b.kind);
    return a.kind == Kind::Finite && a.value < b.value;
  }
  friend bool operator<=(const Bound& a, const Bound& b) { return a == b || a < b; }

  std::string str() const {
    switch (kind) {
      case Kind::NegInf: return "-inf";
      case Kind::PosInf: return "+inf";
      default: return value.str();
    }
  }
};

/// Finite union of disjoint, maximal open intervals; the exact support of a
/// PL-homeomorphism.
struct SupportSet {
  std::vector<std::pair<Bound, Bound>> intervals;  // open (lo, hi), sorted

  bool empty() const { return intervals.empty(); }

  bool contains(const Rat& t) const {
    for (const auto& [lo, hi] : intervals) {
      bool above = lo.kind == Bound::Kind::NegInf || (lo.is_finite() && lo.value < t);
      bool below = hi.kind == Bound::Kind::PosInf || (hi.is_finite() && t < hi.value);
      if (above && below) return true;
    }
    return false;
  }

  /// Smallest closed hull [lo, hi]; only valid when non-empty.
  std::pair<Bound, Bound> hull() const {
    return {intervals.front().first, intervals.back().second};
  }

  /// Whole support contained in the closed window [lo, hi] (either bound may
  /// be infinite).
  bool within(const Bound& lo, const Bound& hi) const {
    for (const auto& [l, h] : intervals)
      if (l < lo || hi < h) return false;
    return true;
  }

  bool operator==(const SupportSet&) const = default;
};

/// Union of support sets, re-merged into maximal open intervals.
inline SupportSet support_union(const std::vector<SupportSet>& parts) {
  std::vector<std::pair<Bound, Bound>> all;
  for (const auto& p : parts) all.insert(all.end(), p.intervals.begin(), p.intervals.end());
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) {
    if (x.first == y.first) return x.second < y.second;
    return x.first < y.first;
  });
  SupportSet out;
  for (auto& iv : all) {
    if (!out.intervals.empty()) {
      auto& last = out.intervals.back();
      // open intervals merge only when they genuinely overlap
      if (iv.first < last.second) {
        if (last.second < iv.second) last.second = iv.second;
        continue;
      }
    }
    out.intervals.push_back(iv);
  }
  return out;
}

/// Orientation-preserving finitary PL-homeomorphism of the real line in
/// canonical form: the graph passes through every stored breakpoint, is
/// affine between consecutive ones and beyond the extremes with the two germ
/// slopes. Canonical form keeps exactly the genuine slope-change points; a
/// globally affine map keeps the single anchor (0, f(0)).
class PLMap {
public:
  PLMap() : bps_{{Rat(0), Rat(0)}}, ls_(1), rs_(1) {}

  const std::vector<std::pair<Rat, Rat>>& breakpoints() const { return bps_; }
  const Rat& left_slope() const { return ls_; }
  const Rat& right_slope() const { return rs_; }

  static PLMap identity() { return PLMap(); }

  bool is_identity() const {
    return bps_.size() == 1 && bps_[0].first.is_zero() && bps_[0].second.is_zero() && ls_.is_one() && rs_.is_one();
  }

  bool is_affine() const { return bps_.size() == 1; }

  Rat operator()(const Rat& x) const { return evaluate(x); }

  Rat evaluate(const Rat& x) const {
    if (x <= bps_.front().first)
      return bps_.front().second + ls_ * (x - bps_.front().first);
    if (x >= bps_.back().first)
      return bps_.back().second + rs_ * (x - bps_.back().first);
    size_t i = piece_index(x);
    const auto& [x0, y0] = bps_[i];
    const auto& [x1, y1] = bps_[i + 1];
    return y0 + (y1 - y0) / (x1 - x0) * (x - x0);
  }

  /// Exact preimage, i.e. the inverse map evaluated at y.
  Rat evaluate_inverse(const Rat& y) const {
    if (y <= bps_.front().second)
      return bps_.front().first + (y - bps_.front().second) / ls_;
    if (y >= bps_.back().second)
      return bps_.back().first + (y - bps_.back().second) / rs_;
    size_t lo = 0, hi = bps_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (bps_[mid].second <= y) lo = mid; else hi = mid;
    }
    const auto& [x0, y0] = bps_[lo];
    const auto& [x1, y1] = bps_[lo + 1];
    return x0 + (x1 - x0) / (y1 - y0) * (y - y0);
  }

  /// Slope immediately to the right of x.
  Rat slope_right_of(const Rat& x) const {
    if (x < bps_.front().first) return ls_;
    if (x >= bps_.back().first) return rs_;
    size_t i = piece_index_right(x);
    return piece_slope(i);
  }

  /// Slope immediately to the left of x.
  Rat slope_left_of(const Rat& x) const {
    if (x <= bps_.front().first) return ls_;
    if (x > bps_.back().first) return rs_;
    size_t lo = 0, hi = bps_.size() - 1;
    while (hi - lo > 0) {  // smallest index with bps_[i].x >= x
      size_t mid = (lo + hi) / 2;
      if (bps_[mid].first >= x) hi = mid; else lo = mid + 1;
    }
    return hi == 0 ? ls_ : piece_slope(hi - 1);
  }

  /// True when the map has no breakpoint strictly inside (lo, hi), i.e. is
  /// affine on the closed interval [lo, hi].
  bool affine_on(const Rat& lo, const Rat& hi) const {
    for (const auto& [x, y] : bps_)
      if (lo < x && x < hi) return false;
    return true;
  }

  /// Affine on [lo, +inf)?
  bool affine_above(const Rat& lo) const {
    for (const auto& [x, y] : bps_)
      if (lo < x) return false;
    return true;
  }

  /// Affine on (-inf, hi]?
  bool affine_below(const Rat& hi) const {
    for (const auto& [x, y] : bps_)
      if (x < hi) return false;
    return true;
  }

  friend bool operator==(const PLMap& f, const PLMap& g) {
    return f.ls_ == g.ls_ && f.rs_ == g.rs_ && f.bps_ == g.bps_;
  }
  friend bool operator!=(const PLMap& f, const PLMap& g) { return !(f == g); }
  friend bool operator<(const PLMap& f, const PLMap& g) {
    if (f.bps_.size() != g.bps_.size()) return f.bps_.size() < g.bps_.size();
    for (size_t i = 0; i < f.bps_.size(); ++i) {
      if (int c = f.bps_[i].first.cmp(g.bps_[i].first)) return c < 0;
      if (int c = f.bps_[i].second.cmp(g.bps_[i].second)) return c < 0;
    }
    if (int c = f.ls_.cmp(g.ls_)) return c < 0;
    return f.rs_.cmp(g.rs_) < 0;
  }

  friend PLMap make_plmap(std::vector<std::pair<Rat, Rat>>, Rat, Rat);

private:
  std::vector<std::pair<Rat, Rat>> bps_;
  Rat ls_, rs_;

  // slope of the piece starting at breakpoint i
  Rat piece_slope(size_t i) const {
    const auto& [x0, y0] = bps_[i];
    const auto& [x1, y1] = bps_[i + 1];
    return (y1 - y0) / (x1 - x0);
  }

  // largest i with bps_[i].x <= x, for x strictly inside the breakpoint range
  size_t piece_index(const Rat& x) const {
    size_t lo = 0, hi = bps_.size() - 1;
    while (hi - lo > 1) {
      size_t mid = (lo + hi) / 2;
      if (bps_[mid].first <= x) lo = mid; else hi = mid;
    }
    return lo;
  }

  // largest i with bps_[i].x <= x (x >= first breakpoint)
  size_t piece_index_right(const Rat& x) const { return piece_index(x); }
};

/// Builds the canonical form from raw breakpoint data.
inline PLMap make_plmap(std::vector<std::pair<Rat, Rat>> bps, Rat left_slope, Rat right_slope) {
  if (bps.empty()) throw EmptyBreakpointList("make_plmap needs at least one breakpoint");
  if (left_slope.sign() <= 0 || right_slope.sign() <= 0)
    throw NonMonotone("germ slopes must be positive");
  for (size_t i = 1; i < bps.size(); ++i) {
    if (bps[i].first == bps[i - 1].first) throw DuplicateX("repeated x-coordinate " + bps[i].first.str());
    if (bps[i].first < bps[i - 1].first) throw NonMonotone("breakpoints not x-sorted");
    if (!(bps[i - 1].second < bps[i].second))
      throw NonMonotone("y-coordinates must be strictly increasing (piece slope <= 0)");
  }

  // keep only genuine slope changes
  auto slope_in = [&](size_t i) -> Rat {
    if (i == 0) return left_slope;
    return (bps[i].second - bps[i - 1].second) / (bps[i].first - bps[i - 1].first);
  };
  auto slope_out = [&](size_t i) -> Rat {
    if (i + 1 == bps.size()) return right_slope;
    return (bps[i + 1].second - bps[i].second) / (bps[i + 1].first - bps[i].first);
  };

  std::vector<std::pair<Rat, Rat>> keep;
  for (size_t i = 0; i < bps.size(); ++i)
    if (slope_in(i) != slope_out(i)) keep.push_back(bps[i]);

  PLMap f;
  if (keep.empty()) {
    // globally affine; anchor at (0, f(0))
    Rat y_at_0 = bps[0].second + left_slope * (Rat(0) - bps[0].first);
    f.bps_ = {{Rat(0), y_at_0}};
  } else {
    f.bps_ = std::move(keep);
  }
  f.ls_ = std::move(left_slope);
  f.rs_ = std::move(right_slope);
  return f;
}

/// x -> f(g(x)), canonical.
inline PLMap compose(const PLMap& f, const PLMap& g) {
  std::vector<Rat> xs;
  xs.reserve(g.breakpoints().size() + f.breakpoints().size());
  for (const auto& [x, y] : g.breakpoints()) xs.push_back(x);
  for (const auto& [x, y] : f.breakpoints()) xs.push_back(g.evaluate_inverse(x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

  std::vector<std::pair<Rat, Rat>> bps;
  bps.reserve(xs.size());
  for (const auto& x : xs) bps.emplace_back(x, f.evaluate(g.evaluate(x)));
  return make_plmap(std::move(bps), f.left_slope() * g.left_slope(), f.right_slope() * g.right_slope());
}

inline PLMap invert(const PLMap& f) {
  std::vector<std::pair<Rat, Rat>> bps;
  bps.reserve(f.breakpoints().size());
  for (const auto& [x, y] : f.breakpoints()) bps.emplace_back(y, x);
  return make_plmap(std::move(bps), f.left_slope().inv(), f.right_slope().inv());
}

inline PLMap power(const PLMap& f, long n) {
  if (n < 0) return power(invert(f), -n);
  PLMap acc = PLMap::identity();
  PLMap base = f;
  unsigned long k = static_cast<unsigned long>(n);
  while (k > 0) {
    if (k & 1) acc = compose(acc, base);
    k >>= 1;
    if (k) base = compose(base, base);
  }
  return acc;
}

/// f g f^-1 g^-1
inline PLMap commutator(const PLMap& f, const PLMap& g) {
  return compose(compose(f, g), compose(invert(f), invert(g)));
}

inline PLMap conjugate(const PLMap& g, const PLMap& h) {  // g h g^-1
  return compose(compose(g, h), invert(g));
}

/// Exact support: the maximal open intervals where f(x) != x.
inline SupportSet support(const PLMap& f) {
  // Fixed set first, as a sorted list of closed intervals (possibly points,
  // possibly unbounded).
  struct Closed { Bound lo, hi; };
  std::vector<Closed> fixed;
  auto push_fixed = [&fixed](Bound lo, Bound hi) {
    if (!fixed.empty() && lo <= fixed.back().hi) {
      if (fixed.back().hi < hi) fixed.back().hi = hi;
      return;
    }
    fixed.push_back({std::move(lo), std::move(hi)});
  };

  const auto& bps = f.breakpoints();
  const size_t n = bps.size();
  // piece k: k = 0 -> (-inf, x_0]; 1..n-1 -> [x_{k-1}, x_k]; n -> [x_{n-1}, +inf)
  for (size_t k = 0; k <= n; ++k) {
    Rat s = (k == 0) ? f.left_slope() : (k == n) ? f.right_slope()
            : (bps[k].second - bps[k - 1].second) / (bps[k].first - bps[k - 1].first);
    const auto& anchor = (k == 0) ? bps[0] : bps[k - 1];
    Bound lo = (k == 0) ? Bound::neg_inf() : Bound::finite(bps[k - 1].first);
    Bound hi = (k == n) ? Bound::pos_inf() : Bound::finite(bps[k].first);
    if (s.is_one()) {
      if (anchor.second == anchor.first) push_fixed(lo, hi);  // f(x) = x on the whole piece
    } else {
      // single root of f(x) - x on the piece, if it lands inside
      Rat r = anchor.first + (anchor.first - anchor.second) / (s - Rat(1));
      Bound rb = Bound::finite(r);
      if ((lo <= rb) && (rb <= hi)) push_fixed(rb, rb);
    }
  }

  SupportSet out;
  Bound cursor = Bound::neg_inf();
  for (const auto& c : fixed) {
    if (cursor < c.lo) out.intervals.emplace_back(cursor, c.lo);
    cursor = c.hi;
  }
  if (cursor < Bound::pos_inf()) out.intervals.emplace_back(cursor, Bound::pos_inf());
  return out;
}

/// Image of a support set under g, interval by interval.
inline SupportSet support_image(const PLMap& g, const SupportSet& s) {
  SupportSet out;
  out.intervals.reserve(s.intervals.size());
  for (const auto& [lo, hi] : s.intervals) {
    Bound l = lo.is_finite() ? Bound::finite(g.evaluate(lo.value)) : lo;
    Bound h = hi.is_finite() ? Bound::finite(g.evaluate(hi.value)) : hi;
    out.intervals.emplace_back(l, h);
  }
  return out;
}

inline bool supports_disjoint(const SupportSet& a, const SupportSet& b) {
  for (const auto& [alo, ahi] : a.intervals)
    for (const auto& [blo, bhi] : b.intervals) {
      bool left_of = !(blo < ahi);   // a ends before b starts
      bool right_of = !(alo < bhi);  // a starts after b ends
      if (!left_of && !right_of) return false;
    }
  return true;
}

}  // namespace plsigma
