#include "acl/anticolimit.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>

#include "acl/errors.hpp"
#include "acl/fincat.hpp"

namespace acl {

namespace {

const CarrierCategory* as_carrier(const Category& cat) {
  return dynamic_cast<const CarrierCategory*>(&cat);
}

// Position of each maximal element in the sink.
std::vector<int> sink_slot(const FinPoset& shape) {
  std::vector<int> slot(shape.size(), -1);
  auto maxima = shape.maximal();
  for (std::size_t k = 0; k < maxima.size(); ++k) slot[maxima[k]] = static_cast<int>(k);
  return slot;
}

void require_sink_shape(const FinPoset& shape, const Sink& sink) {
  if (shape.maximal().size() != sink.legs.size())
    throw ValidationError("sink has " + std::to_string(sink.legs.size()) +
                          " legs but the shape has " +
                          std::to_string(shape.maximal().size()) +
                          " maximal elements");
  for (const auto& leg : sink.legs)
    if (!(leg.target() == sink.apex))
      throw ValidationError("sink legs do not share the apex");
}

std::vector<Morphism> legs_above(const FinPoset& shape, const Sink& sink,
                                 int i) {
  auto slot = sink_slot(shape);
  std::vector<Morphism> out;
  for (int j : shape.upper_max(i)) out.push_back(sink.legs[slot[j]]);
  return out;
}

}  // namespace

Anticocone make_anticocone(const FinPoset& shape, const Sink& sink,
                           Diagram extension) {
  return {shape, sink, std::move(extension)};
}

void validate_anticocone(const Category& cat, const Anticocone& a) {
  require_sink_shape(a.shape, a.sink);
  if (!(a.extension.shape() == a.shape))
    throw ValidationError("anticocone extension has the wrong shape");
  auto maxima = a.shape.maximal();
  for (std::size_t k = 0; k < maxima.size(); ++k)
    if (!(a.extension.object(maxima[k]) == a.sink.legs[k].source()))
      throw ValidationError("anticocone disagrees with the sink at " +
                            a.shape.name(maxima[k]));
  if (!is_cocone(cat, a.extension, a.sink))
    throw ValidationError("sink is not a cocone over the extension");
}

bool is_anticocone_morphism(const Category& cat, const Anticocone& from,
                            const Anticocone& to,
                            const AnticoconeMorphism& eta) {
  const int n = from.shape.size();
  if (static_cast<int>(eta.components.size()) != n) return false;
  for (int i = 0; i < n; ++i) {
    const auto& c = eta.components[i];
    if (!(c.source() == from.extension.object(i)) ||
        !(c.target() == to.extension.object(i)))
      return false;
    if (from.shape.is_maximal(i) && !(c == cat.identity(c.source()))) return false;
  }
  for (auto [a, b] : from.shape.covering_pairs())
    if (!(cat.compose(to.extension.arrow(a, b), eta.components[a]) ==
          cat.compose(eta.components[b], from.extension.arrow(a, b))))
      return false;
  return true;
}

std::optional<Anticocone> canonical_anticocone(const Category& cat,
                                               const FinPoset& shape,
                                               const Sink& sink) {
  require_sink_shape(shape, sink);
  const int n = shape.size();
  auto slot = sink_slot(shape);
  std::vector<std::optional<Cone>> cones(n);
  std::vector<Object> objects(n);
  for (int i = 0; i < n; ++i) {
    if (shape.is_maximal(i)) {
      objects[i] = sink.legs[slot[i]].source();
      continue;
    }
    auto legs = legs_above(shape, sink, i);
    cones[i] = cat.wide_pullback(legs);
    if (!cones[i]) return std::nullopt;
    objects[i] = cones[i]->apex;
  }
  std::vector<std::tuple<int, int, Morphism>> gens;
  for (auto [a, b] : shape.covering_pairs()) {
    auto ups_a = shape.upper_max(a);
    if (shape.is_maximal(b)) {
      auto k = std::find(ups_a.begin(), ups_a.end(), b) - ups_a.begin();
      gens.emplace_back(a, b, cones[a]->projections[k]);
      continue;
    }
    std::vector<Morphism> maps;
    for (int j : shape.upper_max(b)) {
      auto k = std::find(ups_a.begin(), ups_a.end(), j) - ups_a.begin();
      maps.push_back(cones[a]->projections[k]);
    }
    auto u = cat.cone_mediating(*cones[b], objects[a], maps);
    if (!u) throw std::logic_error("pullback universal map missing");
    gens.emplace_back(a, b, *u);
  }
  return Anticocone{shape, sink,
                    Diagram::from_generators(cat, shape, std::move(objects), gens)};
}

AnticoconeMorphism terminal_morphism(const Category& cat, const Anticocone& a,
                                     const Anticocone& pi) {
  const int n = a.shape.size();
  AnticoconeMorphism eta;
  for (int i = 0; i < n; ++i) {
    if (a.shape.is_maximal(i)) {
      eta.components.push_back(cat.identity(a.extension.object(i)));
      continue;
    }
    auto legs = legs_above(a.shape, a.sink, i);
    auto cone = cat.wide_pullback(legs);
    if (!cone || !(cone->apex == pi.extension.object(i)))
      throw NoSuchLimit("canonical anticocone does not match the sink");
    std::vector<Morphism> maps;
    for (int j : a.shape.upper_max(i)) maps.push_back(a.extension.arrow(i, j));
    auto u = cat.cone_mediating(*cone, a.extension.object(i), maps);
    if (!u) throw ValidationError("no map into the canonical anticocone");
    eta.components.push_back(*u);
  }
  return eta;
}

bool is_anticolimit(const Category& cat, const Anticocone& a) {
  if (!is_cocone(cat, a.extension, a.sink)) return false;
  auto legs = cocone_legs(cat, a.extension, a.sink);
  return cat.is_colimit(a.extension, a.sink.apex, legs);
}

ExistenceResult anticolimits_exist(const Category& cat, const FinPoset& shape,
                                   const Sink& sink, int fallback_bound) {
  if (auto pi = canonical_anticocone(cat, shape, sink))
    return {is_anticolimit(cat, *pi), true, 0};
  SearchLimits limits{fallback_bound, 1};
  bool found = !enumerate_anticolimits(cat, shape, sink, limits).empty();
  // A found anticolimit settles existence; absence is only up to the bound.
  return {found, found, fallback_bound};
}

// ---------------------------------------------------------------------------
// FinSet scheme

namespace {

struct SetScheme {
  const FinPoset& shape;
  const Sink& sink;
  int bound;

  std::vector<int> maxima;
  std::vector<int> offset;  // per sink slot, into the disjoint union
  int total = 0;
  int apex_size = 0;
  std::vector<int> edges;                              // non-maximal elements
  std::vector<std::vector<int>> edge_slots;            // sink slots above e
  std::vector<std::vector<std::vector<int>>> tuples;   // pullback elements
  std::vector<std::pair<int, int>> positions;          // (edge, tuple)

  struct Uf {
    std::vector<int> parent;
    int classes;
    explicit Uf(int n) : parent(n), classes(n) {
      std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    }
    void unite(int a, int b) {
      a = find(a);
      b = find(b);
      if (a != b) {
        parent[a] = b;
        --classes;
      }
    }
  };

  SetScheme(const FinPoset& s, const Sink& k, int b)
      : shape(s), sink(k), bound(b) {
    maxima = shape.maximal();
    auto slot = sink_slot(shape);
    for (const auto& leg : sink.legs) {
      offset.push_back(total);
      total += leg.source().carrier().size;
    }
    apex_size = sink.apex.carrier().size;
    for (int e = 0; e < shape.size(); ++e) {
      if (shape.is_maximal(e)) continue;
      edges.push_back(e);
      std::vector<int> slots;
      for (int v : shape.upper_max(e)) slots.push_back(slot[v]);
      // Pullback elements, lexicographic.
      std::vector<std::vector<int>> ts;
      std::vector<int> cur(slots.size());
      std::function<void(std::size_t)> go = [&](std::size_t i) {
        if (i == slots.size()) {
          ts.push_back(cur);
          return;
        }
        const auto& leg = sink.legs[slots[i]];
        for (int x = 0; x < leg.source().carrier().size; ++x) {
          if (i > 0 && leg(x) != sink.legs[slots[0]](cur[0])) continue;
          cur[i] = x;
          go(i + 1);
        }
      };
      go(0);
      const int ei = static_cast<int>(edge_slots.size());
      for (int t = 0; t < static_cast<int>(ts.size()); ++t) positions.emplace_back(ei, t);
      edge_slots.push_back(std::move(slots));
      tuples.push_back(std::move(ts));
    }
  }

  // Supports that a removed edge x -> y of the full shape forces: a tuple
  // used at x needs its projection used at y, or no arrow x -> y commutes
  // with the legs.
  std::vector<std::vector<int>> needs, needed_by;

  void require_edges_of(const FinPoset& full) {
    needs.assign(positions.size(), {});
    needed_by.assign(positions.size(), {});
    std::vector<int> edge_of(shape.size(), -1), first(edges.size() + 1, 0);
    for (std::size_t ei = 0; ei < edges.size(); ++ei) edge_of[edges[ei]] = static_cast<int>(ei);
    for (std::size_t p = 0; p < positions.size(); ++p) first[positions[p].first + 1] = static_cast<int>(p) + 1;
    for (std::size_t ei = 1; ei <= edges.size(); ++ei) first[ei] = std::max(first[ei], first[ei - 1]);
    for (auto [x, y] : full.covering_pairs()) {
      if (full.is_maximal(y) || shape.leq(x, y)) continue;
      const int ex = edge_of[x], ey = edge_of[y];
      std::vector<std::size_t> where;
      for (int s : edge_slots[ey]) {
        auto it = std::find(edge_slots[ex].begin(), edge_slots[ex].end(), s);
        if (it == edge_slots[ex].end()) throw std::logic_error("removed edge loses a maximum");
        where.push_back(static_cast<std::size_t>(it - edge_slots[ex].begin()));
      }
      for (int t = 0; t < static_cast<int>(tuples[ex].size()); ++t) {
        std::vector<int> proj;
        for (auto w : where) proj.push_back(tuples[ex][t][w]);
        auto it = std::find(tuples[ey].begin(), tuples[ey].end(), proj);
        const int px = first[ex] + t;
        const int py = first[ey] + static_cast<int>(it - tuples[ey].begin());
        needs[px].push_back(py);
        needed_by[py].push_back(px);
      }
    }
  }

  // Whether setting counts[pos] = c keeps the decided part consistent.
  bool supported(const std::vector<int>& counts, std::size_t pos, int c) const {
    if (needs.empty()) return true;
    if (c > 0) {
      for (int q : needs[pos])
        if (q < static_cast<int>(pos) && counts[q] == 0) return false;
    } else {
      for (int q : needed_by[pos])
        if (q < static_cast<int>(pos) && counts[q] > 0) return false;
    }
    return true;
  }

  void glue(Uf& uf, int pos) const {
    auto [e, t] = positions[pos];
    const auto& tup = tuples[e][t];
    for (std::size_t i = 1; i < tup.size(); ++i)
      uf.unite(offset[edge_slots[e][0]] + tup[0], offset[edge_slots[e][i]] + tup[i]);
  }

  // Whether the support (counts > 0 among decided, everything from `from`
  // on) can still generate the kernel of the sink.
  bool feasible(const std::vector<int>& counts, std::size_t from) const {
    Uf uf(total);
    for (std::size_t p = 0; p < positions.size(); ++p)
      if (p >= from || counts[p] > 0) glue(uf, static_cast<int>(p));
    return uf.classes == apex_size;
  }

  // Extends `counts` (decided below `pos`) depth-first; `emit` returns false
  // to stop. `stop_at` limits the depth (for prefix generation).
  bool search(std::vector<int>& counts, std::vector<int>& used, std::size_t pos,
              std::size_t stop_at,
              const std::function<bool(const std::vector<int>&)>& emit) const {
    if (pos == stop_at) return emit(counts);
    const int e = positions[pos].first;
    const int room = bound - used[e];
    // Try 1 first so the full support is reached early, then 0, then more.
    std::vector<int> choices;
    if (room >= 1) choices.push_back(1);
    choices.push_back(0);
    for (int c = 2; c <= room; ++c) choices.push_back(c);
    for (int c : choices) {
      if (!supported(counts, pos, c)) continue;
      counts[pos] = c;
      used[e] += c;
      bool ok = c > 0 || feasible(counts, pos + 1);
      if (ok && !search(counts, used, pos + 1, stop_at, emit)) {
        used[e] -= c;
        counts[pos] = 0;
        return false;
      }
      used[e] -= c;
    }
    counts[pos] = 0;
    return true;
  }

  Anticocone build(const std::vector<int>& counts) const {
    const int n = shape.size();
    std::vector<Object> objects(n);
    auto slot = sink_slot(shape);
    for (int v : maxima) objects[v] = sink.legs[slot[v]].source();
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (std::size_t p = 0, ei = 0; ei < edges.size(); ++ei) {
      std::vector<std::vector<int>> img(edge_slots[ei].size());
      int size = 0;
      for (; p < positions.size() && positions[p].first == static_cast<int>(ei); ++p)
        for (int c = 0; c < counts[p]; ++c, ++size)
          for (std::size_t i = 0; i < img.size(); ++i)
            img[i].push_back(tuples[ei][positions[p].second][i]);
      const int e = edges[ei];
      objects[e] = set_object(size);
      for (std::size_t i = 0; i < img.size(); ++i)
        gens.emplace_back(e, maxima[edge_slots[ei][i]],
                          Morphism::function(objects[e],
                                             sink.legs[edge_slots[ei][i]].source(),
                                             img[i]));
    }
    return Anticocone{shape, sink,
                      Diagram::from_generators(*finset(), shape, objects, gens)};
  }
};

// `full`, when given, is the shape `shape` was reduced from; results are
// restricted to those whose support admits the removed edges.
std::vector<Anticocone> set_scheme_results(const FinPoset& shape, const Sink& sink,
                                           const SetEnumeration& opts,
                                           const FinPoset* full) {
  const Category& set = *finset();
  for (const auto& leg : sink.legs) set.check_morphism(leg);
  if (opts.max_results == 0 || !set.is_jointly_epic(sink.legs, sink.apex))
    return {};
  SetScheme scheme(shape, sink, opts.bound);
  if (full) scheme.require_edges_of(*full);
  const std::size_t npos = scheme.positions.size();
  std::vector<int> counts(npos, 0), used(scheme.edges.size(), 0);
  if (!scheme.feasible(counts, 0)) return {};

  // Prefixes of the search tree are independent tasks, merged in order.
  const std::size_t depth = std::min<std::size_t>(npos, 3);
  std::vector<std::vector<int>> prefixes;
  scheme.search(counts, used, 0, depth, [&](const std::vector<int>& c) {
    prefixes.push_back(c);
    return true;
  });
  std::vector<std::vector<std::vector<int>>> per_task(prefixes.size());
  auto run_task = [&](std::size_t t) {
    std::vector<int> c = prefixes[t];
    std::vector<int> u(scheme.edges.size(), 0);
    for (std::size_t p = 0; p < depth; ++p) u[scheme.positions[p].first] += c[p];
    auto& out = per_task[t];
    scheme.search(c, u, depth, npos, [&](const std::vector<int>& full) {
      out.push_back(full);
      return out.size() < opts.max_results;
    });
  };
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long t = 0; t < static_cast<long>(prefixes.size()); ++t) run_task(t);
  } else {
    std::size_t have = 0;
    for (std::size_t t = 0; t < prefixes.size() && have < opts.max_results; ++t) {
      run_task(t);
      have += per_task[t].size();
    }
  }
  std::vector<std::pair<std::string, Anticocone>> keyed;
  for (const auto& task : per_task)
    for (const auto& c : task) {
      if (keyed.size() >= opts.max_results) break;
      auto a = scheme.build(c);
      if (!is_anticolimit(set, a))
        throw std::logic_error("FinSet scheme produced a non-anticolimit");
      keyed.emplace_back(canonical(a.extension), std::move(a));
    }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Anticocone> out;
  for (auto& [k, a] : keyed) out.push_back(std::move(a));
  return out;
}
}  // namespace

std::vector<Anticocone> enumerate_set_anticolimits(const FinPoset& shape,
                                                   const Sink& sink,
                                                   const SetEnumeration& opts) {
  require_sink_shape(shape, sink);
  if (!shape.is_hypergraph_like())
    throw ValidationError(
        "the FinSet scheme needs a hypergraph-like shape; reduce it first");
  return set_scheme_results(shape, sink, opts, nullptr);
}

std::vector<Anticocone> enumerate_set_anticolimits(const Hypergraph& h,
                                                   const Sink& sink,
                                                   const SetEnumeration& opts) {
  return enumerate_set_anticolimits(hypergraph_to_poset(h), sink, opts);
}

// ---------------------------------------------------------------------------
// FinOrd chain

namespace {

// All preorders on n labelled points.
const std::vector<Carrier>& all_preorders(int n) {
  static std::map<int, std::vector<Carrier>> cache;
  static std::mutex lock;
  std::lock_guard<std::mutex> guard(lock);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<Carrier> out;
  std::vector<std::pair<int, int>> off;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) off.emplace_back(a, b);
  for (long mask = 0; mask < (1L << off.size()); ++mask) {
    Carrier c{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
    for (int a = 0; a < n; ++a) c.order[a * n + a] = 1;
    for (std::size_t t = 0; t < off.size(); ++t)
      if (mask >> t & 1) c.order[off[t].first * n + off[t].second] = 1;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        for (int d = 0; d < n && closed; ++d)
          if (c.le(a, b) && c.le(b, d) && !c.le(a, d)) closed = false;
    if (closed) out.push_back(std::move(c));
  }
  return cache.emplace(n, std::move(out)).first->second;
}

Sink forget_order(const Sink& sink) {
  Sink out{{}, set_object(sink.apex.carrier().size)};
  for (const auto& leg : sink.legs)
    out.legs.push_back(Morphism::function(set_object(leg.source().carrier().size),
                                          out.apex, leg.images()));
  return out;
}

}  // namespace

std::vector<Anticocone> enumerate_ord_anticolimits(const FinPoset& shape,
                                                   const Sink& sink, int bound) {
  require_sink_shape(shape, sink);
  const Category& ord = *finord();
  for (const auto& leg : sink.legs) ord.check_morphism(leg);
  if (!shape.is_hypergraph_like()) {
    auto red = reduce_to_hypergraph_like(shape);
    std::map<std::string, Anticocone> keyed;
    for (const auto& a : enumerate_ord_anticolimits(red.reduced, sink, bound))
      if (auto ext = change_of_shape(ord, red.projection, sink, a))
        keyed.emplace(canonical(ext->extension), std::move(*ext));
    std::vector<Anticocone> out;
    for (auto& [k, a] : keyed) out.push_back(std::move(a));
    return out;
  }
  auto set_results =
      enumerate_set_anticolimits(shape, forget_order(sink), {bound, static_cast<std::size_t>(-1), true});
  const int n = shape.size();
  auto maxima = shape.maximal();
  auto slot = sink_slot(shape);
  std::map<std::string, Anticocone> keyed;
  for (const auto& sa : set_results) {
    const auto& d = sa.extension;
    std::vector<int> edges;
    for (int e = 0; e < n; ++e)
      if (!shape.is_maximal(e)) edges.push_back(e);
    // Preorders on each carrier keeping its maps monotone.
    std::vector<std::vector<const Carrier*>> options(edges.size());
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const int e = edges[k];
      for (const auto& pre : all_preorders(d.object(e).carrier().size)) {
        bool ok = true;
        for (int v : shape.upper_max(e)) {
          const auto& f = d.arrow(e, v);
          const auto& target = sink.legs[slot[v]].source().carrier();
          for (int a = 0; a < pre.size && ok; ++a)
            for (int b = 0; b < pre.size && ok; ++b)
              if (pre.le(a, b) && !target.le(f(a), f(b))) ok = false;
        }
        if (ok) options[k].push_back(&pre);
      }
    }
    std::vector<std::size_t> pick(edges.size(), 0);
    std::function<void(std::size_t)> go = [&](std::size_t k) {
      if (k < edges.size()) {
        for (pick[k] = 0; pick[k] < options[k].size(); ++pick[k]) go(k + 1);
        return;
      }
      std::vector<Object> objects(n);
      for (int v : maxima) objects[v] = sink.legs[slot[v]].source();
      std::vector<std::tuple<int, int, Morphism>> gens;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        const int e = edges[i];
        auto lin = linearize_quotient(*options[i][pick[i]]);
        if (!lin.poset.is_total()) return;
        // Rank of each class in the chain.
        std::vector<int> rank(lin.poset.size, 0);
        for (int a = 0; a < lin.poset.size; ++a)
          for (int b = 0; b < lin.poset.size; ++b)
            if (a != b && lin.poset.le(b, a)) ++rank[a];
        objects[e] = ord_object(lin.poset.size);
        for (int v : shape.upper_max(e)) {
          std::vector<int> img(lin.poset.size, 0);
          const auto& f = d.arrow(e, v);
          for (int x = 0; x < d.object(e).carrier().size; ++x)
            img[rank[lin.quotient(x)]] = f(x);
          gens.emplace_back(e, v, Morphism::function(objects[e], objects[v], img));
        }
      }
      Anticocone a{shape, sink, Diagram::from_generators(ord, shape, objects, gens)};
      if (is_anticolimit(ord, a)) keyed.emplace(canonical(a.extension), std::move(a));
    };
    go(0);
  }
  std::vector<Anticocone> out;
  for (auto& [k, a] : keyed) out.push_back(std::move(a));
  return out;
}

// ---------------------------------------------------------------------------
// Change of shape

namespace {

std::vector<Anticocone> extend_along(const Category& cat, const MonotoneMap& f,
                                     const Sink& sink, const Anticocone& a,
                                     std::size_t limit) {
  if (!is_fair(f) || !is_final(f))
    throw ValidationError("change of shape needs a fair and final map");
  const FinPoset& I = f.source();
  const FinPoset& J = f.target();
  require_sink_shape(J, sink);
  if (I.size() != J.size())
    throw CapabilityMissing("change of shape is implemented for maps that are "
                            "bijective on elements");
  std::vector<int> inv(J.size(), -1);
  for (int i = 0; i < I.size(); ++i) {
    if (inv[f(i)] >= 0)
      throw CapabilityMissing("change of shape is implemented for maps that "
                              "are bijective on elements");
    inv[f(i)] = i;
  }
  std::vector<Object> objects(J.size());
  for (int j = 0; j < J.size(); ++j) objects[j] = a.extension.object(inv[j]);
  auto pairs = J.covering_pairs();
  std::vector<std::vector<Morphism>> options;
  for (auto [x, y] : pairs) {
    if (I.leq(inv[x], inv[y]))
      options.push_back({a.extension.arrow(inv[x], inv[y])});
    else {
      // only maps commuting with the arrows to the maxima above y
      std::vector<Morphism> keep;
      const auto* carrier = as_carrier(cat);
      if (carrier && carrier->kind() == CarrierKind::set) {
        // pointwise: each point goes to a point with the same images
        std::vector<int> ms;
        for (int m : J.upper_max(y))
          if (m != y && I.leq(inv[y], inv[m]) && I.leq(inv[x], inv[m])) ms.push_back(m);
        const int nx = objects[x].carrier().size, ny = objects[y].carrier().size;
        std::vector<std::vector<int>> cand(nx);
        for (int p = 0; p < nx; ++p)
          for (int q = 0; q < ny; ++q)
            if (std::all_of(ms.begin(), ms.end(), [&](int m) {
                  return a.extension.arrow(inv[y], inv[m])(q) ==
                         a.extension.arrow(inv[x], inv[m])(p);
                }))
              cand[p].push_back(q);
        std::vector<int> img(nx);
        std::function<void(int)> fill = [&](int p) {
          if (p == nx) {
            keep.push_back(Morphism::function(objects[x], objects[y], img));
            return;
          }
          for (int q : cand[p]) {
            img[p] = q;
            fill(p + 1);
          }
        };
        fill(0);
        options.push_back(std::move(keep));
        continue;
      }
      for (auto& h : cat.hom(objects[x], objects[y])) {
        bool ok = true;
        for (int m : J.upper_max(y)) {
          if (m == y || !I.leq(inv[y], inv[m]) || !I.leq(inv[x], inv[m])) continue;
          ok = ok && cat.compose(a.extension.arrow(inv[y], inv[m]), h) ==
                         a.extension.arrow(inv[x], inv[m]);
        }
        if (ok) keep.push_back(std::move(h));
      }
      options.push_back(std::move(keep));
    }
  }
  std::vector<Anticocone> out;
  std::vector<std::size_t> pick(pairs.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t k) {
    if (k < pairs.size()) {
      for (pick[k] = 0; pick[k] < options[k].size(); ++pick[k])
        if (!go(k + 1)) return false;
      return true;
    }
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      gens.emplace_back(pairs[i].first, pairs[i].second, options[i][pick[i]]);
    try {
      Anticocone b{J, sink, Diagram::from_generators(cat, J, objects, gens)};
      // Arrows of I must be kept, including non-covering ones.
      for (int x = 0; x < I.size(); ++x)
        for (int y = 0; y < I.size(); ++y)
          if (I.leq(x, y) && !(b.extension.arrow(f(x), f(y)) == a.extension.arrow(x, y)))
            return true;
      if (is_anticolimit(cat, b)) out.push_back(std::move(b));
    } catch (const ValidationError&) {
      // not functorial
    }
    return out.size() < limit;
  };
  if (limit > 0) go(0);
  return out;
}

}  // namespace

std::optional<Anticocone> change_of_shape(const Category& cat,
                                          const MonotoneMap& f,
                                          const Sink& sink,
                                          const Anticocone& a) {
  auto all = extend_along(cat, f, sink, a, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// ---------------------------------------------------------------------------

std::vector<Anticocone> enumerate_anticolimits(const Category& cat,
                                               const FinPoset& shape,
                                               const Sink& sink,
                                               const SearchLimits& limits) {
  require_sink_shape(shape, sink);
  std::vector<Anticocone> out;
  const auto* carrier = as_carrier(cat);
  if (carrier && carrier->kind() == CarrierKind::set) {
    if (shape.is_hypergraph_like())
      return enumerate_set_anticolimits(shape, sink,
                                        {limits.bound, limits.max_results, true});
    auto red = reduce_to_hypergraph_like(shape);
    std::vector<bool> free(shape.size());
    for (int i = 0; i < shape.size(); ++i) free[i] = !shape.is_maximal(i);
    // Reduced results are fetched in growing batches: not all of them
    // extend, and listing every one at a large bound does not fit in memory.
    constexpr std::size_t all = static_cast<std::size_t>(-1);
    std::size_t batch = limits.max_results == all ? all : std::max<std::size_t>(64, 4 * limits.max_results);
    std::map<std::string, Anticocone> keyed;
    for (;;) {
      keyed.clear();
      auto reduced = set_scheme_results(red.reduced, sink, {limits.bound, batch, true}, &shape);
      for (const auto& a : reduced) {
        if (limits.max_results == 1) {
          // a single result needs no deduplication
          auto first = extend_along(cat, red.projection, sink, a, 1);
          if (!first.empty()) return first;
          continue;
        }
        for (auto& b : extend_along(cat, red.projection, sink, a, all)) {
          auto key = canonical_up_to_iso(cat, b.extension, free);
          keyed.emplace(std::move(key), std::move(b));
        }
        if (keyed.size() >= limits.max_results) break;
      }
      if (keyed.size() >= limits.max_results || reduced.size() < batch) break;
      batch = batch > all / 2 ? all : 2 * batch;
    }
    for (auto& [k, a] : keyed) {
      if (out.size() >= limits.max_results) break;
      out.push_back(std::move(a));
    }
    return out;
  }
  if (carrier && carrier->kind() == CarrierKind::ordinal) {
    out = enumerate_ord_anticolimits(shape, sink, limits.bound);
    if (out.size() > limits.max_results) out.resize(limits.max_results);
    return out;
  }
  for (auto& d : cat.extensions(sink_problem(shape, sink), limits))
    out.push_back({shape, sink, std::move(d)});
  return out;
}

FinPoset span_shape() {
  return hypergraph_to_poset(Hypergraph{{"0", "1"}, {"e0"}, {{0, 1}}});
}

std::optional<bool> bicartesian(const Category& cat, const Morphism& f,
                                const Morphism& g) {
  if (!(f.target() == g.target()))
    throw ValidationError("cospan legs do not share a codomain");
  std::vector<Morphism> legs{f, g};
  auto cone = cat.wide_pullback(legs);
  if (!cone) return std::nullopt;
  FinPoset shape = span_shape();
  auto d = Diagram::from_generators(
      cat, shape, {f.source(), g.source(), cone->apex},
      {{2, 0, cone->projections[0]}, {2, 1, cone->projections[1]}});
  std::vector<Morphism> cocone{f, g, cat.compose(f, cone->projections[0])};
  return cat.is_colimit(d, f.target(), cocone);
}

std::vector<Span> antipushout(const Category& cat, const Morphism& f,
                              const Morphism& g, int bound) {
  auto bc = bicartesian(cat, f, g);
  if (bc && !*bc) return {};
  FinPoset shape = span_shape();
  Sink sink{{f, g}, f.target()};
  std::vector<Span> out;
  for (const auto& a : enumerate_anticolimits(cat, shape, sink, {bound}))
    out.push_back({a.extension.object(2), a.extension.arrow(2, 0),
                   a.extension.arrow(2, 1)});
  return out;
}

// ---------------------------------------------------------------------------
// Lemma audit

namespace {

// All anticocone-style morphisms from -> to (identity on maxima, natural).
std::vector<AnticoconeMorphism> morphisms_between(const Category& cat,
                                                  const Diagram& from,
                                                  const Diagram& to) {
  const FinPoset& shape = from.shape();
  const int n = shape.size();
  std::vector<AnticoconeMorphism> out;
  std::vector<std::vector<Morphism>> options(n);
  for (int i = 0; i < n; ++i) {
    if (shape.is_maximal(i)) {
      if (!(from.object(i) == to.object(i))) return out;
      options[i] = {cat.identity(from.object(i))};
    } else {
      options[i] = cat.hom(from.object(i), to.object(i));
    }
  }
  auto pairs = shape.covering_pairs();
  std::vector<Morphism> pick(n);
  auto order = shape.linear_extension();
  std::vector<bool> set(n, false);
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == order.size()) {
      out.push_back({pick});
      return;
    }
    const int i = order[k];
    for (const auto& c : options[i]) {
      pick[i] = c;
      set[i] = true;
      bool ok = true;
      for (auto [a, b] : pairs) {
        if (!(a == i || b == i) || !set[a] || !set[b]) continue;
        ok = cat.compose(to.arrow(a, b), pick[a]) == cat.compose(pick[b], from.arrow(a, b));
        if (!ok) break;
      }
      if (ok) go(k + 1);
      set[i] = false;
    }
  };
  go(0);
  return out;
}

bool pointwise_epi(const Category& cat, const AnticoconeMorphism& eta) {
  for (const auto& c : eta.components) {
    std::vector<Morphism> one{c};
    if (!cat.is_jointly_epic(one, c.target())) return false;
  }
  return true;
}

}  // namespace

LemmaReport check_lemma_suite(const Category& cat, const FinPoset& shape,
                              const Sink& sink, int bound,
                              const std::vector<Diagram>& extra) {
  LemmaReport r;
  auto fail = [&](const std::string& what) {
    if (r.passed) r.failure = what;
    r.passed = false;
  };
  auto all = search_extensions(cat, sink_problem(shape, sink), {bound},
                               ExtensionKind::any);
  struct Entry {
    Diagram d;
    bool cocone;
    bool colimit;
    bool claimed;  // seeded: audited as an anticocone without checking
  };
  std::vector<Entry> acc;
  for (const auto& d : all) {
    bool co = is_cocone(cat, d, sink);
    if (!co) continue;
    bool lim = is_anticolimit(cat, {shape, sink, d});
    acc.push_back({d, true, lim, false});
  }
  for (const auto& d : extra) {
    bool co = is_cocone(cat, d, sink);
    bool lim = co && is_anticolimit(cat, {shape, sink, d});
    acc.push_back({d, co, lim, true});
  }
  r.anticocones = static_cast<long>(acc.size());
  for (const auto& e : acc) r.anticolimits += e.colimit;

  // Sieve: a morphism into an anticocone has an anticocone source.
  for (const auto& a : acc)
    for (const auto& b : all) {
      auto ms = morphisms_between(cat, b, a.d);
      r.morphisms += static_cast<long>(ms.size());
      if (!ms.empty() && !is_cocone(cat, b, sink))
        fail("sieve: a morphism into an anticocone starts at a non-anticocone");
    }
  for (const auto& a : acc) {
    if (!a.colimit) continue;
    for (const auto& b : acc) {
      // Cosieve: out of an anticolimit into an anticocone.
      auto out_of = morphisms_between(cat, a.d, b.d);
      r.morphisms += static_cast<long>(out_of.size());
      if (!out_of.empty() && !b.colimit)
        fail("cosieve: a morphism out of an anticolimit ends at a non-anticolimit");
      // Pointwise epi into an anticolimit.
      for (const auto& eta : morphisms_between(cat, b.d, a.d))
        if (pointwise_epi(cat, eta) && !b.colimit)
          fail("pointwise-epi: an epimorphic anticocone over an anticolimit is "
               "not an anticolimit");
    }
  }
  if (r.anticolimits > 0 && !cat.is_jointly_epic(sink.legs, sink.apex))
    fail("joint epicity: an anticolimit exists for a non-jointly-epic sink");

  if (auto pi = canonical_anticocone(cat, shape, sink)) {
    for (const auto& a : acc) {
      if (a.claimed) continue;
      auto ms = morphisms_between(cat, a.d, pi->extension);
      if (ms.size() != 1) {
        fail("terminality: " + std::to_string(ms.size()) +
             " morphisms into the canonical anticocone");
        continue;
      }
      auto eta = terminal_morphism(cat, {shape, sink, a.d}, *pi);
      if (!(eta.components == ms.front().components))
        fail("terminality: the pullback map is not the unique morphism");
    }
  }
  return r;
}

}  // namespace acl
