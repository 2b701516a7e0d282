#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "plsigma/rat.hpp"

namespace plsigma {

/// Sublattice of Z^d kept as an echelon basis (incremental Hermite-style row
/// reduction with exact integer arithmetic). Supports adding generating
/// vectors and deciding membership.
class IntLattice {
public:
  explicit IntLattice(size_t dim) : dim_(dim), pivot_row_(dim, -1) {}

  size_t dim() const { return dim_; }

  void add(std::vector<mpz_class> v) {
    for (size_t j = 0; j < dim_; ++j) {
      if (v[j] == 0) continue;
      int r = pivot_row_[j];
      if (r < 0) {
        if (v[j] < 0)
          for (auto& x : v) x = -x;
        pivot_row_[j] = static_cast<int>(rows_.size());
        rows_.push_back(std::move(v));
        return;
      }
      auto& row = rows_[r];
      mpz_class g, a, b;
      mpz_gcdext(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t(), row[j].get_mpz_t(), v[j].get_mpz_t());
      mpz_class u = row[j] / g, w = v[j] / g;
      std::vector<mpz_class> comb(dim_), rest(dim_);
      for (size_t k = 0; k < dim_; ++k) {
        comb[k] = a * row[k] + b * v[k];  // pivot becomes g
        rest[k] = u * v[k] - w * row[k];  // column j eliminated
      }
      rows_[r] = std::move(comb);
      v = std::move(rest);
    }
  }

  bool contains(std::vector<mpz_class> t) const {
    for (size_t j = 0; j < dim_; ++j) {
      if (t[j] == 0) continue;
      int r = pivot_row_[j];
      if (r < 0) return false;
      const auto& row = rows_[r];
      if (!mpz_divisible_p(t[j].get_mpz_t(), row[j].get_mpz_t())) return false;
      mpz_class q = t[j] / row[j];
      for (size_t k = 0; k < dim_; ++k) t[k] -= q * row[k];
    }
    for (const auto& x : t)
      if (x != 0) return false;
    return true;
  }

private:
  size_t dim_;
  std::vector<int> pivot_row_;  // column -> basis row with pivot there
  std::vector<std::vector<mpz_class>> rows_;
};

/// Finitely generated additive subgroup of Q, i.e. (g/L)*Z; used for the
/// translation-amplitude observables.
class RatSubgroup {
public:
  void add(const Rat& q) {
    if (q.is_zero()) return;
    if (gen_.is_zero()) {
      gen_ = q.abs();
      return;
    }
    // gcd(a/b, c/d) = gcd(a*d, c*b) / (b*d)
    mpz_class n;
    mpz_gcd(n.get_mpz_t(), mpz_class(gen_.num() * q.den()).get_mpz_t(),
            mpz_class(q.num() * gen_.den()).get_mpz_t());
    gen_ = Rat(mpq_class(n, gen_.den() * q.den()));
  }

  bool contains(const Rat& q) const {
    if (q.is_zero()) return true;
    if (gen_.is_zero()) return false;
    return (q / gen_).is_integer();
  }

  bool trivial() const { return gen_.is_zero(); }

private:
  Rat gen_{0};
};

}  // namespace plsigma
