#pragma once

#include <random>
#include <vector>

#include "plsigma/plmap.hpp"
#include "plsigma/rat.hpp"

namespace plsigma::testing {

/// Thompson generator A: slopes 1/2, 1, 2 on [0, 1].
inline PLMap thompson_a() {
  return make_plmap({{Rat(0), Rat(0)}, {Rat(1, 2), Rat(1, 4)}, {Rat(3, 4), Rat(1, 2)}, {Rat(1), Rat(1)}},
                    Rat(1), Rat(1));
}

/// Thompson generator B: identity on [0, 1/2], scaled copy of A above.
inline PLMap thompson_b() {
  return make_plmap({{Rat(1, 2), Rat(1, 2)}, {Rat(3, 4), Rat(5, 8)}, {Rat(7, 8), Rat(3, 4)}, {Rat(1), Rat(1)}},
                    Rat(1), Rat(1));
}

/// Random PL-homeomorphism with dyadic breakpoints; slopes at infinity are
/// free unless `bounded` pins them to 1 with matching anchor endpoints.
inline PLMap random_plmap(std::mt19937& rng, bool bounded = false) {
  std::uniform_int_distribution<int> nbp(1, 4), numer(-32, 32), shift(0, 3);
  auto dyadic = [&]() { return Rat(numer(rng), 1L << shift(rng)); };
  int n = nbp(rng);
  std::vector<Rat> xs, ys;
  while ((int)xs.size() < n) {
    Rat v = dyadic();
    bool dup = false;
    for (const auto& x : xs) dup = dup || x == v;
    if (!dup) xs.push_back(v);
  }
  while ((int)ys.size() < n) {
    Rat v = dyadic();
    bool dup = false;
    for (const auto& y : ys) dup = dup || y == v;
    if (!dup) ys.push_back(v);
  }
  std::sort(xs.begin(), xs.end());
  std::sort(ys.begin(), ys.end());
  std::vector<std::pair<Rat, Rat>> bps;
  for (int i = 0; i < n; ++i) bps.emplace_back(xs[i], bounded ? xs[i] : ys[i]);
  if (bounded && n >= 2) {
    // interior points get the random y's squeezed into (x_0, x_{n-1})
    for (int i = 1; i + 1 < n; ++i) {
      Rat t = Rat(i, n);
      bps[i].second = xs[0] + t * (xs[n - 1] - xs[0]);
    }
  }
  std::uniform_int_distribution<int> spick(0, 3);
  static const long snum[4] = {1, 2, 3, 4};
  Rat ls = bounded ? Rat(1) : Rat(snum[spick(rng)], snum[spick(rng)]);
  Rat rs = bounded ? Rat(1) : Rat(snum[spick(rng)], snum[spick(rng)]);
  return make_plmap(std::move(bps), ls, rs);
}

}  // namespace plsigma::testing
