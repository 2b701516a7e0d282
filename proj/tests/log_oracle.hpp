#pragma once

// Test-side oracle: rational interval enclosures of ln p via the atanh
// series with argument reduction, entirely in exact rational arithmetic.
// Independent of the library's MPFR-based sign oracle.

#include <cstdint>
#include <map>
#include <utility>

#include "plsigma/logreal.hpp"
#include "plsigma/rat.hpp"

namespace plsigma::testing {

/// Enclosure [lo, hi] of 2*atanh(z) = ln((1+z)/(1-z)) for 0 <= z < 1/2,
/// with J series terms; the tail is bounded by a geometric series.
inline std::pair<Rat, Rat> atanh2_enclosure(const Rat& z, int terms) {
  Rat z2 = z * z;
  Rat sum(0), pow = z;
  for (int j = 0; j < terms; ++j) {
    sum += pow / Rat(2 * j + 1);
    pow *= z2;
  }
  // tail < z^(2J+1)/(2J+1) * 1/(1-z^2)
  Rat tail = pow / Rat(2 * terms + 1) / (Rat(1) - z2);
  return {Rat(2) * sum, Rat(2) * (sum + tail)};
}

/// Enclosure of ln p for a prime p, good to roughly `digits` decimal digits.
inline std::pair<Rat, Rat> ln_prime_enclosure(std::uint64_t p, int digits) {
  // terms scale: |z| <= 1/3 always, so each term gains >= log10(9) digits
  int terms = digits / 2 + 16;
  auto ln2 = atanh2_enclosure(Rat(1, 3), terms);  // ln 2 = 2 atanh(1/3)
  if (p == 2) return ln2;
  int k = 0;
  Rat m(static_cast<long>(p));
  while (m > Rat(2)) {
    m /= Rat(2);
    ++k;
  }
  // m in (1, 2]; z = (m-1)/(m+1) in (0, 1/3]
  Rat z = (m - Rat(1)) / (m + Rat(1));
  auto lnm = atanh2_enclosure(z, terms);
  return {lnm.first + Rat(k) * ln2.first, lnm.second + Rat(k) * ln2.second};
}

/// Sign of a LogReal by pure rational interval arithmetic at ~`digits`
/// precision; returns Zero only for the formally zero element.
inline Sign oracle_sign(const LogReal& v, int digits = 110) {
  if (v.is_zero()) return Sign::Zero;
  for (int d = digits; d <= 16 * digits; d *= 2) {
    Rat lo = v.rat_part(), hi = v.rat_part();
    for (const auto& [p, c] : v.log_coeffs()) {
      auto [llo, lhi] = ln_prime_enclosure(p, d);
      if (c.sign() >= 0) {
        lo += c * llo;
        hi += c * lhi;
      } else {
        lo += c * lhi;
        hi += c * llo;
      }
    }
    if (lo.sign() > 0) return Sign::Positive;
    if (hi.sign() < 0) return Sign::Negative;
  }
  throw std::runtime_error("oracle_sign: undecided " + v.str());
}

}  // namespace plsigma::testing
