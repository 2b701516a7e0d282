#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "plsigma/errors.hpp"
#include "plsigma/germs.hpp"
#include "plsigma/plmap.hpp"

namespace plsigma {

enum class GenTag { Untagged, KerLeft, KerRight };

struct Generator {
  std::string symbol;
  PLMap map;
  GenTag tag = GenTag::Untagged;
};

/// Freely reduced word over the generators of one GroupSpec; letters are
/// (generator index, exponent +1/-1).
struct Word {
  std::vector<std::pair<int, int>> letters;

  static Word empty() { return {}; }
  static Word letter(int gen, int sign) { return Word{{{gen, sign}}}; }

  size_t size() const { return letters.size(); }
  bool is_empty() const { return letters.empty(); }

  Word& append(int gen, int sign) {
    if (!letters.empty() && letters.back().first == gen && letters.back().second == -sign)
      letters.pop_back();
    else
      letters.emplace_back(gen, sign);
    return *this;
  }

  Word& operator*=(const Word& o) {
    for (const auto& [g, s] : o.letters) append(g, s);
    return *this;
  }
  friend Word operator*(Word a, const Word& b) { return a *= b; }

  Word inverse() const {
    Word w;
    w.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it)
      w.letters.emplace_back(it->first, -it->second);
    return w;
  }

  Word pow(long n) const {
    Word base = n >= 0 ? *this : inverse();
    Word acc;
    for (long i = 0, k = n >= 0 ? n : -n; i < k; ++i) acc *= base;
    return acc;
  }

  friend Word conjugated(const Word& g, const Word& h) {  // g h g^-1
    return g * h * g.inverse();
  }
  friend Word word_commutator(const Word& a, const Word& b) {  // a b a^-1 b^-1
    return a * b * a.inverse() * b.inverse();
  }

  bool operator==(const Word&) const = default;
  bool operator<(const Word& o) const { return letters < o.letters; }
};

/// A group element carried as its canonical map together with a defining
/// word over the ambient GroupSpec's generators.
struct GroupElement {
  PLMap map;
  Word word;
};

/// A finitely generated subgroup of PL_o(I), given by named generator maps.
class GroupSpec {
public:
  std::string name;
  IntervalSpec interval;
  std::vector<Generator> generators;

  GroupSpec() = default;
  GroupSpec(std::string nm, IntervalSpec ival, std::vector<Generator> gens)
      : name(std::move(nm)), interval(std::move(ival)), generators(std::move(gens)) {
    validate();
  }

  int gen_index(const std::string& symbol) const {
    for (size_t i = 0; i < generators.size(); ++i)
      if (generators[i].symbol == symbol) return static_cast<int>(i);
    throw ValidationError("unknown generator symbol '" + symbol + "'");
  }

  const PLMap& gen_map(int i) const { return generators.at(i).map; }

  PLMap evaluate_word(const Word& w) const {
    PLMap acc = PLMap::identity();
    for (const auto& [g, s] : w.letters)
      acc = compose(acc, s > 0 ? generators.at(g).map : inverse_cache(g));
    return acc;
  }

  std::string word_str(const Word& w) const {
    if (w.is_empty()) return "1";
    std::string s;
    for (const auto& [g, e] : w.letters) {
      if (!s.empty()) s += ".";
      s += generators.at(g).symbol;
      if (e < 0) s += "^-1";
    }
    return s;
  }

  /// Exponent sum per generator (image in the free abelianization).
  std::vector<long> exponent_sums(const Word& w) const {
    std::vector<long> e(generators.size(), 0);
    for (const auto& [g, s] : w.letters) e[g] += s;
    return e;
  }

  /// True when every generator germ at the unbounded right end is a
  /// translation (so tau_r is defined). Only meaningful for HalfLine/FullLine.
  bool translations_at_right() const { return trans_right_; }
  /// Same near -inf (tau_ell); only meaningful for FullLine.
  bool translations_at_left() const { return trans_left_; }

  /// Generators pairwise commute, hence the group is abelian.
  bool generators_commute() const {
    for (size_t i = 0; i < generators.size(); ++i)
      for (size_t j = i + 1; j < generators.size(); ++j)
        if (!commutator(generators[i].map, generators[j].map).is_identity()) return false;
    return true;
  }

private:
  mutable std::vector<PLMap> inv_;
  bool trans_right_ = true;
  bool trans_left_ = true;

  const PLMap& inverse_cache(int i) const {
    if (inv_.empty()) {
      inv_.reserve(generators.size());
      for (const auto& g : generators) inv_.push_back(invert(g.map));
    }
    return inv_.at(i);
  }

  void validate() {
    std::map<std::string, int> seen;
    for (const auto& g : generators) {
      if (g.symbol.empty()) throw ValidationError("empty generator symbol");
      if (!seen.emplace(g.symbol, 1).second)
        throw ValidationError("duplicate generator symbol '" + g.symbol + "'");
    }
    Bound lo, hi;
    switch (interval.kind) {
      case IntervalSpec::Kind::Compact:
        lo = Bound::finite(interval.a);
        hi = Bound::finite(interval.c);
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
    for (const auto& g : generators) {
      if (!support(g.map).within(lo, hi))
        throw ValidationError("support of generator '" + g.symbol + "' leaves the interval");
      auto [gl, gr] = germs(g.map, interval);
      if (g.tag == GenTag::KerLeft && !gl.is_trivial())
        throw ValidationError("generator '" + g.symbol + "' tagged KerLeft has a non-trivial left germ");
      if (g.tag == GenTag::KerRight && !gr.is_trivial())
        throw ValidationError("generator '" + g.symbol + "' tagged KerRight has a non-trivial right germ");
      if (!gr.is_translation()) trans_right_ = false;
      if (!gl.is_translation()) trans_left_ = false;
    }
  }
};

}  // namespace plsigma
