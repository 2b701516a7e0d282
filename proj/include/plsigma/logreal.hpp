#pragma once

#include <mpfr.h>

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "plsigma/errors.hpp"
#include "plsigma/rat.hpp"

namespace plsigma {

enum class Sign { Negative = -1, Zero = 0, Positive = 1 };

namespace detail {

/// Move-only RAII wrapper for one mpfr number.
class Mpfr {
public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  Mpfr(Mpfr&& o) noexcept { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_swap(v_, o.v_); }
  Mpfr& operator=(Mpfr&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

private:
  mpfr_t v_;
};

/// Directed-rounding interval [lo, hi]; all arithmetic keeps the enclosure.
struct Interval {
  Mpfr lo, hi;

  explicit Interval(mpfr_prec_t prec) : lo(prec), hi(prec) {
    mpfr_set_zero(lo.get(), 0);
    mpfr_set_zero(hi.get(), 0);
  }
  Interval(Interval&&) = default;
  Interval& operator=(Interval&&) = default;

  static Interval of_rat(const Rat& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
    return r;
  }

  static Interval of_ln(std::uint64_t p, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_ui(r.lo.get(), p, MPFR_RNDD);
    mpfr_log(r.lo.get(), r.lo.get(), MPFR_RNDD);
    mpfr_set_ui(r.hi.get(), p, MPFR_RNDU);
    mpfr_log(r.hi.get(), r.hi.get(), MPFR_RNDU);
    return r;
  }

  void add(const Interval& o) {
    mpfr_add(lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
  }

  /// Multiply by an exact rational (sign-aware).
  void scale(const Rat& q, mpfr_prec_t prec) {
    if (q.sign() >= 0) {
      mpfr_mul_q(lo.get(), lo.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(hi.get(), hi.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
    } else {
      Interval t(prec);
      mpfr_mul_q(t.lo.get(), hi.get(), q.mpq().get_mpq_t(), MPFR_RNDD);
      mpfr_mul_q(t.hi.get(), lo.get(), q.mpq().get_mpq_t(), MPFR_RNDU);
      mpfr_swap(lo.get(), t.lo.get());
      mpfr_swap(hi.get(), t.hi.get());
    }
  }

  /// Product of two intervals known to be >= 0.
  static Interval mul_nonneg(const Interval& a, const Interval& b, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_mul(r.lo.get(), a.lo.get(), b.lo.get(), MPFR_RNDD);
    mpfr_mul(r.hi.get(), a.hi.get(), b.hi.get(), MPFR_RNDU);
    return r;
  }

  std::optional<Sign> decided_sign() const {
    if (mpfr_sgn(lo.get()) > 0) return Sign::Positive;
    if (mpfr_sgn(hi.get()) < 0) return Sign::Negative;
    return std::nullopt;
  }
};

}  // namespace detail

/// An element of the formal space Q (+) sum_p Q * ln p, i.e. the exact value
/// space of the engine's characters. A value is zero as a real number iff it
/// is formally zero: 1 and the logarithms of the primes are linearly
/// independent over Q, so the representation is faithful.
class LogReal {
public:
  LogReal() = default;
  LogReal(Rat r) : rat_(std::move(r)) {}
  LogReal(long n) : rat_(Rat(n)) {}

  static LogReal ln_term(std::uint64_t prime, Rat coeff) {
    LogReal v;
    if (!coeff.is_zero()) v.logs_[prime] = std::move(coeff);
    return v;
  }

  /// sum_p e_p * ln p from a prime-exponent table.
  static LogReal from_exponents(const std::map<std::uint64_t, long>& exps) {
    LogReal v;
    for (const auto& [p, e] : exps)
      if (e != 0) v.logs_[p] = Rat(e);
    return v;
  }

  const Rat& rat_part() const { return rat_; }
  const std::map<std::uint64_t, Rat>& log_coeffs() const { return logs_; }

  bool is_zero() const { return rat_.is_zero() && logs_.empty(); }

  LogReal operator-() const {
    LogReal v;
    v.rat_ = -rat_;
    for (const auto& [p, c] : logs_) v.logs_[p] = -c;
    return v;
  }

  LogReal& operator+=(const LogReal& o) {
    rat_ += o.rat_;
    for (const auto& [p, c] : o.logs_) {
      auto it = logs_.find(p);
      if (it == logs_.end()) {
        logs_[p] = c;
      } else {
        it->second += c;
        if (it->second.is_zero()) logs_.erase(it);
      }
    }
    return *this;
  }
  LogReal& operator-=(const LogReal& o) { return *this += -o; }

  friend LogReal operator+(LogReal a, const LogReal& b) { return a += b; }
  friend LogReal operator-(LogReal a, const LogReal& b) { return a -= b; }

  friend LogReal operator*(const Rat& q, const LogReal& v) {
    LogReal r;
    if (q.is_zero()) return r;
    r.rat_ = q * v.rat_;
    for (const auto& [p, c] : v.logs_) r.logs_[p] = q * c;
    return r;
  }

  friend bool operator==(const LogReal& a, const LogReal& b) {
    return a.rat_ == b.rat_ && a.logs_ == b.logs_;
  }
  friend bool operator!=(const LogReal& a, const LogReal& b) { return !(a == b); }

  detail::Interval enclosure(mpfr_prec_t prec) const {
    auto acc = detail::Interval::of_rat(rat_, prec);
    for (const auto& [p, c] : logs_) {
      auto t = detail::Interval::of_ln(p, prec);
      t.scale(c, prec);
      acc.add(t);
    }
    return acc;
  }

  double to_double() const {
    auto iv = enclosure(64);
    return mpfr_get_d(iv.lo.get(), MPFR_RNDN);
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::string s;
    if (!rat_.is_zero()) s = rat_.str();
    for (const auto& [p, c] : logs_) {
      if (!s.empty()) s += " + ";
      s += c.str() + "*ln(" + std::to_string(p) + ")";
    }
    return s;
  }

private:
  Rat rat_;
  std::map<std::uint64_t, Rat> logs_;
};

/// Rigorous sign. Formal zero is decided exactly; otherwise the MPFR
/// enclosure is refined until zero is excluded, which terminates because a
/// formally non-zero LogReal is a non-zero real.
inline Sign lr_sign(const LogReal& v) {
  if (v.is_zero()) return Sign::Zero;
  if (v.log_coeffs().empty()) return v.rat_part().sign() > 0 ? Sign::Positive : Sign::Negative;
  for (mpfr_prec_t prec = 64; prec <= (mpfr_prec_t(1) << 23); prec *= 2) {
    if (auto s = v.enclosure(prec).decided_sign()) return *s;
  }
  throw PrecisionExhausted("lr_sign undecided at 2^23 bits: " + v.str());
}

inline bool lr_nonneg(const LogReal& v) { return lr_sign(v) != Sign::Negative; }
inline bool lr_positive(const LogReal& v) { return lr_sign(v) == Sign::Positive; }

/// Sign of a - b.
inline Sign lr_cmp(const LogReal& a, const LogReal& b) { return lr_sign(a - b); }

inline const LogReal& lr_min(const LogReal& a, const LogReal& b) {
  return lr_cmp(a, b) == Sign::Positive ? b : a;
}

/// Degree <= 2 element of the formal commutative algebra on {1, ln p}.
/// Products of two LogReals land here; distinct monomials are treated as
/// independent, which is the sound direction for equality testing.
class LogQuad {
public:
  using Monomial = std::pair<std::uint64_t, std::uint64_t>;  // (0,0)=1, (p,0)=ln p, (p,q)=ln p ln q

  LogQuad() = default;

  static LogQuad product(const LogReal& a, const LogReal& b) {
    LogQuad out;
    out.add_term({0, 0}, a.rat_part() * b.rat_part());
    for (const auto& [p, c] : b.log_coeffs()) out.add_term({p, 0}, a.rat_part() * c);
    for (const auto& [p, c] : a.log_coeffs()) out.add_term({p, 0}, c * b.rat_part());
    for (const auto& [p, cp] : a.log_coeffs())
      for (const auto& [q, cq] : b.log_coeffs())
        out.add_term(p <= q ? Monomial{p, q} : Monomial{q, p}, cp * cq);
    return out;
  }

  LogQuad& operator-=(const LogQuad& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend LogQuad operator-(LogQuad a, const LogQuad& b) { return a -= b; }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rat>& terms() const { return terms_; }

  /// Sign by interval refinement, bounded by a precision cap; nullopt when
  /// the cap is hit without excluding zero (formal-nonzero, numerically tiny).
  std::optional<Sign> sign_bounded(mpfr_prec_t max_bits) const {
    if (terms_.empty()) return Sign::Zero;
    for (mpfr_prec_t prec = 64; prec <= max_bits; prec *= 2) {
      detail::Interval acc(prec);
      for (const auto& [m, c] : terms_) {
        detail::Interval t(prec);
        if (m.first == 0) {
          t = detail::Interval::of_rat(Rat(1), prec);
        } else if (m.second == 0) {
          t = detail::Interval::of_ln(m.first, prec);
        } else {
          t = detail::Interval::mul_nonneg(detail::Interval::of_ln(m.first, prec),
                                           detail::Interval::of_ln(m.second, prec), prec);
        }
        t.scale(c, prec);
        acc.add(t);
      }
      if (auto s = acc.decided_sign()) return s;
    }
    return std::nullopt;
  }

private:
  std::map<Monomial, Rat> terms_;

  void add_term(const Monomial& m, Rat c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = std::move(c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }
};

}  // namespace plsigma
