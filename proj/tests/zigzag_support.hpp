#pragma once

// Random globular FinSet zigzags, maps and diagrams for property tests.

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <random>

#include "acl/errors.hpp"
#include "acl/zigzag.hpp"
#include "support.hpp"

namespace fx {

inline int pick(std::mt19937& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline Zigzag random_zigzag(std::mt19937& rng, int max_len) {
  const int n = pick(rng, 0, max_len);
  Zigzag z;
  for (int j = 0; j <= n; ++j) z.regular.push_back(set_object(pick(rng, 1, 2)));
  for (int i = 0; i < n; ++i) {
    const int s = pick(rng, 1, 3);
    z.singular.push_back(set_object(s));
    z.forward.push_back(random_set_map(rng, z.regular[i].carrier().size, s));
    z.backward.push_back(random_set_map(rng, z.regular[i + 1].carrier().size, s));
  }
  return z;
}

// A map a -> extended target whose composite with `slice` is g. The extra
// points of the target are the ones past `base`.
inline Morphism lift_through(std::mt19937& rng, const Morphism& g, const Morphism& slice) {
  const int n = g.source().carrier().size, t = slice.source().carrier().size;
  std::vector<int> img(n);
  for (int x = 0; x < n; ++x) {
    std::vector<int> options;
    for (int p = 0; p < t; ++p)
      if (slice(p) == g(x)) options.push_back(p);
    img[x] = options[pick(rng, 0, static_cast<int>(options.size()) - 1)];
  }
  return fn(n, t, img);
}

/// A random globular map X -> y with |X| <= max_len.
inline Morphism random_map_into(std::mt19937& rng, const Zigzag& y, int max_len) {
  const Category& set = *finset();
  const int m = y.length();
  for (int attempt = 0; attempt < 50; ++attempt) {
    const int n = pick(rng, 0, max_len);
    std::vector<int> fs(n);
    for (auto& v : fs) v = pick(rng, 0, std::max(m - 1, 0));
    if (m == 0 && n > 0) continue;
    std::sort(fs.begin(), fs.end());
    const auto fr = reg_dual(fs, m);
    bool ok = true;
    for (int i = 0; i < m && ok; ++i)
      if (fr[i] == fr[i + 1])
        ok = y.regular[i] == y.regular[i + 1] && y.forward[i] == y.backward[i];
    if (!ok) continue;

    Zigzag x;
    x.regular.resize(n + 1);
    std::vector<std::optional<Morphism>> inner(n + 1);  // interior r j -> Y(s i)
    for (int i = 0; i <= m; ++i) x.regular[fr[i]] = y.regular[i];
    for (int i = 0; i < m; ++i)
      for (int j = fr[i] + 1; j < fr[i + 1]; ++j) {
        x.regular[j] = set_object(pick(rng, 1, 2));
        inner[j] = random_set_map(rng, x.regular[j].carrier().size,
                                  y.singular[i].carrier().size);
      }
    ZigzagMapData d;
    d.singular = fs;
    for (int k = 0; k < n; ++k) {
      const int i = fs[k];
      const int c = y.singular[i].carrier().size, extra = pick(rng, 0, 1);
      std::vector<int> sl(c + extra);
      std::iota(sl.begin(), sl.begin() + c, 0);
      for (int e = 0; e < extra; ++e) sl[c + e] = pick(rng, 0, c - 1);
      Morphism slice = fn(c + extra, c, sl);
      x.singular.push_back(set_object(c + extra));
      const Morphism& gf = k == fr[i] ? y.forward[i] : *inner[k];
      const Morphism& gb = k + 1 == fr[i + 1] ? y.backward[i] : *inner[k + 1];
      x.forward.push_back(lift_through(rng, gf, slice));
      x.backward.push_back(lift_through(rng, gb, slice));
      d.singular_slices.push_back(slice);
    }
    for (int i = 0; i <= m; ++i) d.regular_slices.push_back(set.identity(y.regular[i]));
    if (m == 0) x.regular[0] = y.regular[0];
    return make_zigzag_map(set, x, y, std::move(d));
  }
  return identity_zigzag_map(set, y);
}

/// A random globular map out of x, by contracting a random range.
inline Morphism random_map_out_of(std::mt19937& rng, const Zigzag& x) {
  const int a = pick(rng, 0, x.length());
  const int b = pick(rng, a, x.length());
  return contract_range(*finset(), x, a, b);
}

/// Connected shapes with at most four elements.
inline std::vector<FinPoset> small_shapes() {
  return {
      FinPoset::from_relations({"a"}, {}),
      FinPoset::from_relations({"a", "b"}, {{"a", "b"}}),
      FinPoset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}}),
      FinPoset::from_relations({"a", "b", "c"}, {{"a", "c"}, {"b", "c"}}),
      FinPoset::from_relations({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}),
      FinPoset::from_relations({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"b", "d"}}),
      FinPoset::from_relations({"a", "b", "c", "d"}, {{"a", "b"}, {"a", "c"}, {"a", "d"}}),
      FinPoset::from_relations({"a", "b", "c", "d"},
                               {{"a", "b"}, {"a", "c"}, {"b", "d"}, {"c", "d"}}),
  };
}

/// A random globular diagram over `shape`. Tree-shaped Hasse diagrams are
/// built edge by edge; other commuting squares are filled from hom.
inline std::optional<Diagram> random_zig_diagram(std::mt19937& rng,
                                                 const ZigCategory& zig,
                                                 const FinPoset& shape, int max_len) {
  const int n = shape.size();
  const auto cover = shape.covering_pairs();
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::vector<std::optional<Zigzag>> obj(n);
    std::map<std::pair<int, int>, Morphism> arrows;
    const int root = shape.maximal().front();
    obj[root] = random_zigzag(rng, max_len);
    std::queue<int> todo;
    todo.push(root);
    std::vector<std::pair<int, int>> deferred;
    while (!todo.empty()) {
      const int u = todo.front();
      todo.pop();
      for (auto [x, y] : cover) {
        if (arrows.count({x, y})) continue;
        if (y == u && !obj[x]) {
          Morphism f = random_map_into(rng, *obj[y], max_len);
          obj[x] = f.source().zigzag();
          arrows.emplace(std::pair{x, y}, f);
          todo.push(x);
        } else if (x == u && !obj[y]) {
          Morphism f = random_map_out_of(rng, *obj[x]);
          obj[y] = f.target().zigzag();
          arrows.emplace(std::pair{x, y}, f);
          todo.push(y);
        }
      }
    }
    for (auto [x, y] : cover)
      if (!arrows.count({x, y})) deferred.emplace_back(x, y);
    bool ok = true;
    for (auto [x, y] : deferred) {
      // keep a hom element that makes every square through (x, y) commute
      std::optional<Morphism> chosen;
      for (const auto& h : zig.hom(Object(*obj[x]), Object(*obj[y]))) {
        arrows.insert_or_assign({x, y}, h);
        std::vector<std::tuple<int, int, Morphism>> gens;
        for (auto& [k, f] : arrows) gens.emplace_back(k.first, k.second, f);
        std::vector<Object> objects;
        for (auto& z : obj) objects.push_back(Object(*z));
        try {
          Diagram::from_generators(zig, shape, objects, gens);
          chosen = h;
          break;
        } catch (const ValidationError&) {
        }
      }
      if (!chosen) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (auto& [k, f] : arrows) gens.emplace_back(k.first, k.second, f);
    std::vector<Object> objects;
    for (auto& z : obj) objects.push_back(Object(*z));
    return Diagram::from_generators(zig, shape, objects, gens);
  }
  return std::nullopt;
}

}  // namespace fx
