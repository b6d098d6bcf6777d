#pragma once

// Independent oracles for zigzag colimits and the lifted factorisation.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "acl/zigzag.hpp"
#include "zigzag_support.hpp"

namespace fx {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void join(int a, int b) { parent[find(a)] = find(b); }
};

// Ord colimit of the lengths by hand: glue heights along the singular maps,
// close k <= k+1 transitively, collapse cycles, require a total order.
// Returns the rank of every (x, k), or nullopt when there is no colimit.
inline std::optional<std::vector<std::vector<int>>> ord_oracle(const Diagram& d) {
  const int n = d.size();
  std::vector<int> off(n + 1, 0);
  for (int x = 0; x < n; ++x) off[x + 1] = off[x] + d.object(x).zigzag().length();
  const int total = off[n];
  std::vector<std::vector<char>> le(total, std::vector<char>(total, 0));
  for (int u = 0; u < total; ++u) le[u][u] = 1;
  for (int x = 0; x < n; ++x)
    for (int k = off[x]; k + 1 < off[x + 1]; ++k) le[k][k + 1] = 1;
  for (auto [x, y] : d.shape().covering_pairs()) {
    const auto& fs = d.arrow(x, y).zigzag_map().singular;
    for (std::size_t k = 0; k < fs.size(); ++k) {
      le[off[x] + k][off[y] + fs[k]] = 1;
      le[off[y] + fs[k]][off[x] + k] = 1;
    }
  }
  for (int k = 0; k < total; ++k)
    for (int i = 0; i < total; ++i)
      if (le[i][k])
        for (int j = 0; j < total; ++j)
          if (le[k][j]) le[i][j] = 1;
  std::vector<std::vector<int>> rank(n);
  for (int x = 0; x < n; ++x)
    for (int u = off[x]; u < off[x + 1]; ++u) {
      int below = 0;
      std::set<int> seen;
      for (int v = 0; v < total; ++v) {
        if (!le[u][v] && !le[v][u]) return std::nullopt;  // incomparable
        if (le[v][u] && !le[u][v]) {
          // count strictly smaller classes once each
          int rep = v;
          for (int w = 0; w < total; ++w)
            if (le[v][w] && le[w][v]) rep = std::min(rep, w);
          if (seen.insert(rep).second) ++below;
        }
      }
      rank[x].push_back(below);
    }
  return rank;
}

// Sites of the exploded restriction at one height, each a FinSet.
struct RawSite {
  int element;
  bool singular;
  int index;
};

// Checks the apex height i and the legs against a hand-made FinSet colimit.
inline std::string check_height(const Diagram& d, const Cocone& c, int i) {
  const Zigzag& y = c.apex.zigzag();
  const int n = d.size();
  std::vector<std::vector<int>> reg(n);
  for (int x = 0; x < n; ++x) reg[x] = reg_dual(c.legs[x].zigzag_map().singular, y.length());
  std::vector<RawSite> sites;
  std::map<std::tuple<int, bool, int>, int> site_of;
  for (int x = 0; x < n; ++x) {
    for (int j = reg[x][i]; j <= reg[x][i + 1]; ++j) {
      site_of[{x, false, j}] = static_cast<int>(sites.size());
      sites.push_back({x, false, j});
    }
    for (int k = reg[x][i]; k < reg[x][i + 1]; ++k) {
      site_of[{x, true, k}] = static_cast<int>(sites.size());
      sites.push_back({x, true, k});
    }
  }
  auto set_of = [&](const RawSite& s) -> const Object& {
    const Zigzag& z = d.object(s.element).zigzag();
    return s.singular ? z.singular[s.index] : z.regular[s.index];
  };
  std::vector<int> off(sites.size() + 1, 0);
  for (std::size_t s = 0; s < sites.size(); ++s)
    off[s + 1] = off[s] + set_of(sites[s]).carrier().size;
  UnionFind uf(off.back());
  auto glue = [&](int from, int to, const Morphism& f) {
    for (int p = 0; p < f.source().carrier().size; ++p) uf.join(off[from] + p, off[to] + f(p));
  };
  for (int x = 0; x < n; ++x) {
    const Zigzag& z = d.object(x).zigzag();
    for (int k = reg[x][i]; k < reg[x][i + 1]; ++k) {
      glue(site_of[{x, false, k}], site_of[{x, true, k}], z.forward[k]);
      glue(site_of[{x, false, k + 1}], site_of[{x, true, k}], z.backward[k]);
    }
  }
  for (auto [x, yy] : d.shape().covering_pairs()) {
    const auto& g = d.arrow(x, yy).zigzag_map();
    const auto fr = reg_dual(g.singular, d.object(yy).zigzag().length());
    for (int k = reg[x][i]; k < reg[x][i + 1]; ++k)
      glue(site_of[{x, true, k}], site_of[{yy, true, g.singular[k]}], g.singular_slices[k]);
    for (int j = reg[yy][i]; j <= reg[yy][i + 1]; ++j)
      glue(site_of[{x, false, fr[j]}], site_of[{yy, false, j}], g.regular_slices[j]);
  }
  // legs of the candidate colimit on every point
  std::vector<int> image(off.back());
  for (std::size_t s = 0; s < sites.size(); ++s) {
    const auto& site = sites[s];
    const Morphism& leg = site.singular
                              ? c.legs[site.element].zigzag_map().singular_slices[site.index]
                              : diagonal_slice(c.legs[site.element], i, site.index);
    for (int p = 0; p < set_of(site).carrier().size; ++p) image[off[s] + p] = leg(p);
  }
  std::set<int> classes, hit(image.begin(), image.end());
  for (int p = 0; p < off.back(); ++p) classes.insert(uf.find(p));
  if (hit.size() != static_cast<std::size_t>(y.singular[i].carrier().size))
    return "legs not jointly surjective at height " + std::to_string(i);
  for (int p = 0; p < off.back(); ++p)
    for (int q = 0; q < off.back(); ++q)
      if ((uf.find(p) == uf.find(q)) != (image[p] == image[q]))
        return "kernel mismatch at height " + std::to_string(i);
  for (int x = 0; x < n; ++x)
    if (!(d.object(x).zigzag().regular[reg[x][i]] == y.regular[i]))
      return "regular object mismatch at height " + std::to_string(i);
  return {};
}

// Random sink of 1..3 globular maps into a random zigzag hitting every height.
inline std::optional<std::pair<std::vector<Morphism>, Zigzag>> random_sink(std::mt19937& rng) {
  Zigzag y = random_zigzag(rng, 3);
  const int legs = pick(rng, 1, 3);
  for (int attempt = 0; attempt < 30; ++attempt) {
    std::vector<Morphism> out;
    std::set<int> hit;
    for (int l = 0; l < legs; ++l) {
      out.push_back(random_map_into(rng, y, 3));
      for (int v : out.back().zigzag_map().singular) hit.insert(v);
    }
    if (static_cast<int>(hit.size()) == y.length()) return std::pair{out, y};
  }
  return std::nullopt;
}

inline bool injective(const Morphism& f) {
  std::set<int> seen;
  for (int v : f.images())
    if (!seen.insert(v).second) return false;
  return true;
}


}  // namespace fx
