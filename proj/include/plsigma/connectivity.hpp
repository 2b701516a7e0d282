#pragma once

#include <numeric>
#include <optional>
#include <vector>

#include "plsigma/ball.hpp"
#include "plsigma/character.hpp"
#include "plsigma/groupspec.hpp"

namespace plsigma {

/// Summary of the chi-nonnegative induced subgraph of a word-metric ball.
/// Finite balls can neither prove nor refute Sigma^1 membership on their
/// own, hence the evidence_only tag.
struct ConnectivityReport {
  int radius = 0;
  size_t nonneg_vertices = 0;
  size_t components = 0;
  size_t identity_component_size = 0;
  bool evidence_only = true;
};

/// The chi-nonnegative subgraph together with its component partition.
struct ChiSubgraph {
  ConnectivityReport report;
  std::vector<GroupElement> vertices;  // chi(g) >= 0, identity first
  std::vector<LogReal> values;
  std::vector<int> component;          // component id per vertex; 0 = identity's
};

/// Builds the ball for the given generating set (elements of G carrying
/// words over G's generators), keeps the chi-nonnegative vertices, and
/// union-finds components along edges (g, g*x).
inline ChiSubgraph gamma_chi_components(const GroupSpec& spec, const Character& chi, int radius,
                                        std::optional<std::vector<GroupElement>> generating_set = std::nullopt,
                                        size_t element_cap = 1000000) {
  std::vector<GroupElement> gens;
  if (generating_set) {
    gens = *generating_set;
  } else {
    for (size_t i = 0; i < spec.generators.size(); ++i)
      gens.push_back({spec.gen_map(static_cast<int>(i)), Word::letter(static_cast<int>(i), +1)});
  }
  std::vector<PLMap> gen_inv;
  std::vector<LogReal> gen_val;
  for (const auto& g : gens) {
    gen_inv.push_back(invert(g.map));
    gen_val.push_back(char_eval(chi, g, spec));
  }

  // BFS over the alternative alphabet; chi values accumulate letter by letter
  std::vector<GroupElement> elements{{PLMap::identity(), Word::empty()}};
  std::vector<LogReal> values{LogReal()};
  std::map<PLMap, size_t> index{{PLMap::identity(), 0}};
  size_t layer_begin = 0;
  for (int r = 0; r < radius; ++r) {
    size_t layer_end = elements.size();
    for (size_t i = layer_begin; i < layer_end; ++i) {
      for (size_t g = 0; g < gens.size(); ++g) {
        for (int sign : {+1, -1}) {
          PLMap m = compose(elements[i].map, sign > 0 ? gens[g].map : gen_inv[g]);
          if (index.count(m)) continue;
          if (elements.size() >= element_cap)
            throw ResourceBudgetExceeded("connectivity ball element cap reached");
          index.emplace(m, elements.size());
          Word w = elements[i].word * (sign > 0 ? gens[g].word : gens[g].word.inverse());
          values.push_back(sign > 0 ? values[i] + gen_val[g] : values[i] - gen_val[g]);
          elements.push_back({std::move(m), std::move(w)});
        }
      }
    }
    layer_begin = layer_end;
  }

  // chi-nonnegative vertex set
  std::vector<size_t> vertex_of_element(elements.size(), SIZE_MAX);
  ChiSubgraph out;
  for (size_t i = 0; i < elements.size(); ++i) {
    if (lr_sign(values[i]) == Sign::Negative) continue;
    vertex_of_element[i] = out.vertices.size();
    out.vertices.push_back(elements[i]);
    out.values.push_back(values[i]);
  }

  // union-find on edges (g, g*x), both ends in ball and nonnegative
  std::vector<size_t> parent(out.vertices.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](size_t a, size_t b) {
    a = find(a); b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  };
  for (size_t i = 0; i < elements.size(); ++i) {
    if (vertex_of_element[i] == SIZE_MAX) continue;
    for (size_t g = 0; g < gens.size(); ++g) {
      PLMap m = compose(elements[i].map, gens[g].map);
      auto it = index.find(m);
      if (it == index.end()) continue;
      if (vertex_of_element[it->second] == SIZE_MAX) continue;
      unite(vertex_of_element[i], vertex_of_element[it->second]);
    }
  }

  out.component.resize(out.vertices.size());
  std::map<size_t, int> roots;
  for (size_t v = 0; v < out.vertices.size(); ++v) {
    size_t r = find(v);
    auto [it, fresh] = roots.emplace(r, static_cast<int>(roots.size()));
    out.component[v] = it->second;
  }
  out.report.radius = radius;
  out.report.nonneg_vertices = out.vertices.size();
  out.report.components = roots.size();
  for (int c : out.component)
    if (c == 0) ++out.report.identity_component_size;
  return out;
}

}  // namespace plsigma
