#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plsigma {

/// Arbitrary-precision rational, always reduced, denominator > 0.
///
/// Thin value wrapper over GMP's mpq_class that guarantees canonical form on
/// every construction path and fixes the text format used throughout the
/// engine: "num/den" with the "/den" part omitted for integers.
class Rat {
public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}
  Rat(long n, long d) : v_(n, d) { canonicalize(); }
  explicit Rat(const mpq_class& q) : v_(q) { canonicalize(); }
  explicit Rat(const mpz_class& z) : v_(z) {}

  /// Parses "num", "num/den" or a decimal like "-0.125" (handy in tests).
  static Rat parse(std::string_view s) {
    if (s.empty()) throw std::invalid_argument("Rat::parse: empty string");
    std::string str(s);
    auto dot = str.find('.');
    if (dot != std::string::npos) {
      std::string digits = str.substr(0, dot) + str.substr(dot + 1);
      size_t frac_len = str.size() - dot - 1;
      mpz_class num(digits, 10), den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      Rat r;
      r.v_ = mpq_class(num, den);
      r.canonicalize();
      return r;
    }
    mpq_class q;
    if (q.set_str(str, 10) != 0)
      throw std::invalid_argument("Rat::parse: bad rational '" + str + "'");
    if (q.get_den() == 0)
      throw std::invalid_argument("Rat::parse: zero denominator in '" + str + "'");
    Rat r;
    r.v_ = q;
    r.canonicalize();
    return r;
  }

  std::string str() const {
    if (v_.get_den() == 1) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& mpq() const { return v_; }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_one() const { return v_ == 1; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat operator-() const { return Rat(mpq_class(-v_), already_canonical{}); }
  Rat inv() const {
    if (is_zero()) throw std::domain_error("Rat: division by zero");
    mpq_class r;
    mpq_inv(r.get_mpq_t(), v_.get_mpq_t());
    return Rat(r, already_canonical{});
  }
  Rat abs() const { return sign() < 0 ? -*this : *this; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_), already_canonical{}); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_), already_canonical{}); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_), already_canonical{}); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw std::domain_error("Rat: division by zero");
    return Rat(mpq_class(a.v_ / b.v_), already_canonical{});
  }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.v_.get_mpq_t(), b.v_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.v_.get_mpq_t(), b.v_.get_mpq_t()) < 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  int cmp(const Rat& o) const { return mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t()); }

  /// Integer power, q^e with q != 0 for negative e.
  Rat pow(long e) const {
    if (e == 0) return Rat(1);
    Rat base = e > 0 ? *this : inv();
    unsigned long k = e > 0 ? static_cast<unsigned long>(e) : static_cast<unsigned long>(-e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), k);
    return Rat(mpq_class(n, d), already_canonical{});
  }

  double to_double() const { return v_.get_d(); }

private:
  struct already_canonical {};
  Rat(mpq_class q, already_canonical) : v_(std::move(q)) {}
  void canonicalize() {
    if (v_.get_den() == 0) throw std::invalid_argument("Rat: zero denominator");
    v_.canonicalize();
  }
  mpq_class v_;
};

inline Rat rat(std::string_view s) { return Rat::parse(s); }

/// Prime factorization exponents of a positive rational: numerator exponents
/// minus denominator exponents. Keys are the primes.
///
/// Trial division up to 10^6, then a primality test on the residue; slopes in
/// this engine are products of small generator primes, so the residue path is
/// for safety, not for general factoring. Primes beyond 64 bits are rejected.
inline std::map<std::uint64_t, long> slope_exponents(const Rat& q) {
  if (q.sign() <= 0) throw std::domain_error("slope_exponents: non-positive rational");
  std::map<std::uint64_t, long> out;
  auto accumulate = [&out](mpz_class n, int dir) {
    if (n < 0) n = -n;
    for (std::uint64_t p = 2; p <= 1000000 && n > 1; p += (p == 2 ? 1 : 2)) {
      if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        long e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
          mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
          ++e;
        }
        out[p] += dir * e;
      }
      if (mpz_cmp_ui(n.get_mpz_t(), p * p) < 0) break;  // residue is prime
    }
    if (n > 1) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 40) == 0)
        throw std::domain_error("slope_exponents: composite residue beyond trial bound");
      if (!n.fits_ulong_p())
        throw std::domain_error("slope_exponents: prime factor exceeds 64 bits");
      out[n.get_ui()] += dir;
    }
  };
  accumulate(q.num(), +1);
  accumulate(q.den(), -1);
  for (auto it = out.begin(); it != out.end();)
    it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace plsigma
