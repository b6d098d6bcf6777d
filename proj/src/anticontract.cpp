#include "acl/anticontract.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "acl/errors.hpp"
#include "acl/fincat.hpp"

namespace acl {

namespace {

std::string pad(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

const Morphism* find_pinned(const ExtensionProblem& p, int a, int b) {
  for (const auto& [x, y, f] : p.pinned_arrows)
    if (x == a && y == b) return &f;
  return nullptr;
}

// A non-owning handle for APIs that need a CategoryPtr.
CategoryPtr borrow(const Category& c) { return CategoryPtr(CategoryPtr(), &c); }

// Explosion of a single zigzag (the fence diagram).
Explosion fence(const Category& base, const Zigzag& e) {
  ZigCategory zig(borrow(base), false);
  Diagram one = Diagram::from_generators(zig, FinPoset::discrete({"x"}), {Object(e)}, {});
  return explode(base, one);
}

// Fence cocone components of a map into a length-1 zigzag.
std::vector<Morphism> fence_legs(const Explosion& ex, const Morphism& f) {
  std::vector<Morphism> comps(ex.shape.poset.size());
  for (int p = 0; p < ex.shape.poset.size(); ++p) {
    const auto& site = ex.shape.sites[p];
    comps[p] = site.singular ? f.zigzag_map().singular_slices[site.index]
                             : diagonal_slice(f, 0, site.index);
  }
  return comps;
}

// Per-apex-height data of an Ord extension F of the lengths.
struct Heights {
  std::vector<std::vector<int>> reg;  // [x] -> Reg of the leg x -> apex
  std::vector<Diagram> lengths;       // per height
  std::vector<ExplodedShape> shapes;  // per height
};

Heights split_heights(const Diagram& ord, const Sink& ord_sink) {
  const FinPoset& j = ord.shape();
  const int m = ord_sink.apex.carrier().size;
  const auto maxima = j.maximal();
  Heights h;
  for (int x = 0; x < j.size(); ++x) {
    std::vector<int> lambda;
    const int top = j.upper_max(x).front();
    const auto k = std::find(maxima.begin(), maxima.end(), top) - maxima.begin();
    const auto& leg = ord_sink.legs[k].images();
    for (int v : ord.arrow(x, top).images()) lambda.push_back(leg[v]);
    h.reg.push_back(reg_dual(lambda, m));
  }
  for (int i = 0; i < m; ++i) {
    std::vector<Object> objects;
    for (int x = 0; x < j.size(); ++x)
      objects.push_back(ord_object(h.reg[x][i + 1] - h.reg[x][i]));
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (auto [x, y] : j.covering_pairs()) {
      std::vector<int> img;
      const auto& full = ord.arrow(x, y).images();
      for (int v = h.reg[x][i]; v < h.reg[x][i + 1]; ++v) img.push_back(full[v] - h.reg[y][i]);
      gens.emplace_back(x, y, ord_map(h.reg[x][i + 1] - h.reg[x][i],
                                      h.reg[y][i + 1] - h.reg[y][i], img));
    }
    h.lengths.push_back(Diagram::from_generators(*finord(), j, objects, gens));
    h.shapes.push_back(explosion_shape(h.lengths.back()));
  }
  return h;
}

// Base extension problem over the exploded shape of one height.
ExtensionProblem height_problem(const ZigCategory& zig, const ExtensionProblem& p,
                                const Heights& h, int i) {
  const Category& base = zig.base();
  const FinPoset& j = p.shape;
  const ExplodedShape& sh = h.shapes[i];
  const Zigzag& y = p.sink.apex.zigzag();
  const int n = sh.poset.size();
  ExtensionProblem bp;
  bp.shape = sh.poset;
  bp.objects.assign(n, std::nullopt);
  bp.pinned.assign(n, false);
  std::vector<Zigzag> pieces(j.size());
  for (int x = 0; x < j.size(); ++x) {
    const int c = h.reg[x][i], d = h.reg[x][i + 1];
    const auto& known = p.objects[x];
    if (known) {
      pieces[x] = restrict(known->zigzag(), c, d);
      const Zigzag& z = pieces[x];
      for (int k = 0; k <= z.length(); ++k) {
        bp.objects[sh.regular_at[x][k]] = z.regular[k];
        bp.pinned[sh.regular_at[x][k]] = p.pinned[x];
      }
      for (int k = 0; k < z.length(); ++k) {
        bp.objects[sh.singular_at[x][k]] = z.singular[k];
        bp.pinned[sh.singular_at[x][k]] = p.pinned[x];
      }
    }
    // Globular maps into the apex fix the boundary regular objects.
    const int last = d - c;
    bp.objects[sh.regular_at[x][0]] = y.regular[i];
    bp.objects[sh.regular_at[x][last]] = y.regular[i + 1];
    if (!p.pinned[x]) continue;
    const Zigzag& z = pieces[x];
    for (int k = 0; k < z.length(); ++k) {
      bp.pinned_arrows.emplace_back(sh.regular_at[x][k], sh.singular_at[x][k], z.forward[k]);
      bp.pinned_arrows.emplace_back(sh.regular_at[x][k + 1], sh.singular_at[x][k],
                                    z.backward[k]);
    }
  }
  for (auto [x, yy] : j.covering_pairs()) {
    if (!p.pinned[x]) continue;
    const Morphism* f = find_pinned(p, x, yy);
    if (!f) throw ValidationError("extension problem: missing pinned zigzag map");
    Morphism g = restrict_map(base, *f, h.reg[yy][i], h.reg[yy][i + 1]);
    const auto& gd = g.zigzag_map();
    const int m = g.target().zigzag().length();
    const auto fr = reg_dual(gd.singular, m);
    for (std::size_t s = 0; s < gd.singular.size(); ++s)
      bp.pinned_arrows.emplace_back(sh.singular_at[x][s], sh.singular_at[yy][gd.singular[s]],
                                    gd.singular_slices[s]);
    for (int r = 0; r <= m; ++r)
      bp.pinned_arrows.emplace_back(sh.regular_at[x][fr[r]], sh.regular_at[yy][r],
                                    gd.regular_slices[r]);
    for (int s = 0; s < m; ++s)
      for (int r = fr[s]; r <= fr[s + 1]; ++r)
        bp.pinned_arrows.emplace_back(sh.regular_at[x][r], sh.singular_at[yy][s],
                                      gd.diagonals[s][r - fr[s]]);
  }
  const auto maxima = j.maximal();
  bp.sink.apex = y.singular[i];
  for (int q : sh.poset.maximal()) {
    const auto& site = sh.sites[q];
    const auto k = std::find(maxima.begin(), maxima.end(), site.element) - maxima.begin();
    const Morphism& leg = p.sink.legs[k];
    const int at = h.reg[site.element][i] + site.index;
    bp.sink.legs.push_back(site.singular ? leg.zigzag_map().singular_slices[at]
                                         : diagonal_slice(leg, i, at));
  }
  return bp;
}

// Concatenates per-height diagrams J -> Zig(C) into one J -> Zig=(C).
std::optional<Diagram> concatenate(const ZigCategory& zig, const Diagram& ord,
                                   const Heights& h,
                                   const std::vector<Diagram>& pieces,
                                   const Zigzag& apex) {
  const Category& base = zig.base();
  const FinPoset& j = ord.shape();
  std::vector<Zigzag> zz(j.size());
  for (int x = 0; x < j.size(); ++x) {
    Zigzag& z = zz[x];
    if (pieces.empty()) {
      z = point_zigzag(apex.regular[0]);
      continue;
    }
    z.regular.push_back(pieces[0].object(x).zigzag().regular[0]);
    for (const auto& piece : pieces) {
      const Zigzag& part = piece.object(x).zigzag();
      if (!(part.regular[0] == z.regular.back())) return std::nullopt;
      z.regular.insert(z.regular.end(), part.regular.begin() + 1, part.regular.end());
      z.singular.insert(z.singular.end(), part.singular.begin(), part.singular.end());
      z.forward.insert(z.forward.end(), part.forward.begin(), part.forward.end());
      z.backward.insert(z.backward.end(), part.backward.begin(), part.backward.end());
    }
  }
  std::vector<std::tuple<int, int, Morphism>> gens;
  for (auto [x, y] : j.covering_pairs()) {
    ZigzagMapData d;
    d.singular = ord.arrow(x, y).images();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const auto& part = pieces[i].arrow(x, y).zigzag_map();
      d.singular_slices.insert(d.singular_slices.end(), part.singular_slices.begin(),
                               part.singular_slices.end());
    }
    for (const auto& r : zz[y].regular) d.regular_slices.push_back(base.identity(r));
    try {
      gens.emplace_back(x, y, make_zigzag_map(base, zz[x], zz[y], std::move(d)));
    } catch (const ValidationError&) {
      return std::nullopt;
    }
  }
  std::vector<Object> objects(zz.begin(), zz.end());
  return Diagram::from_generators(zig, j, std::move(objects), gens);
}

}  // namespace

FinPoset jn_poset(int n) {
  if (n < 0) throw ValidationError("J_n needs n >= 0");
  const int width = static_cast<int>(std::to_string(n).size());
  Hypergraph h;
  for (int v = 0; v <= n; ++v) h.vertices.push_back("v" + pad(v, width));
  for (int e = 0; e < n; ++e) {
    h.edges.push_back("e" + pad(e, width));
    h.incidence.push_back({e, e + 1});
  }
  return hypergraph_to_poset(h);
}

std::vector<Diagram> zigzag_extensions(const ZigCategory& zig,
                                       const ExtensionProblem& p,
                                       const SearchLimits& limits) {
  const FinPoset& j = p.shape;
  if (!j.is_connected()) throw ValidationError("zigzag anticolimits need a connected shape");
  const Zigzag& apex = p.sink.apex.zigzag();
  const int m = apex.length();

  ExtensionProblem op;
  op.shape = j;
  op.pinned = p.pinned;
  bool only_maxima = true;
  for (int x = 0; x < j.size(); ++x) {
    if (p.objects[x]) op.objects.push_back(ord_object(p.objects[x]->zigzag().length()));
    else op.objects.push_back(std::nullopt);
    if (!j.is_maximal(x) && (p.pinned[x] || p.objects[x])) only_maxima = false;
  }
  for (const auto& [a, b, f] : p.pinned_arrows)
    op.pinned_arrows.emplace_back(a, b,
                                  ord_map(f.source().zigzag().length(),
                                          f.target().zigzag().length(),
                                          f.zigzag_map().singular));
  op.sink.apex = ord_object(m);
  for (const auto& leg : p.sink.legs)
    op.sink.legs.push_back(ord_map(leg.source().zigzag().length(), m, leg.zigzag_map().singular));

  std::vector<Diagram> ords;
  if (only_maxima && j.is_hypergraph_like()) {
    for (auto& a : enumerate_ord_anticolimits(j, op.sink, limits.bound))
      ords.push_back(std::move(a.extension));
  } else {
    ords = search_extensions(*finord(), op, {limits.bound}, ExtensionKind::anticolimit);
  }

  std::map<std::string, Diagram> found;
  for (const auto& ord : ords) {
    if (found.size() >= limits.max_results) break;
    Heights h = split_heights(ord, op.sink);
    std::vector<std::vector<Diagram>> choices;
    bool empty = false;
    for (int i = 0; i < m && !empty; ++i) {
      choices.push_back(zig.base().extensions(height_problem(zig, p, h, i), {limits.bound}));
      empty = choices.back().empty();
    }
    if (empty) continue;
    std::vector<std::size_t> pick(m, 0);
    for (;;) {
      std::vector<Diagram> pieces;
      bool ok = true;
      for (int i = 0; i < m && ok; ++i) {
        Diagram piece = unexplode(zig, h.lengths[i], h.shapes[i], choices[i][pick[i]]);
        ok = is_globular_diagram(zig.base(), piece);
        pieces.push_back(std::move(piece));
      }
      if (ok) {
        auto a = concatenate(zig, ord, h, pieces, apex);
        if (a) {
          bool keep = true;
          for (int x = 0; x < j.size() && keep; ++x)
            keep = !p.objects[x] || a->object(x) == *p.objects[x];
          for (const auto& [x, y, f] : p.pinned_arrows)
            keep = keep && a->arrow(x, y) == f;
          if (keep && is_cocone(zig, *a, p.sink) &&
              zig.is_colimit(*a, p.sink.apex, cocone_legs(zig, *a, p.sink)))
            found.emplace(canonical(*a), std::move(*a));
        }
      }
      if (found.size() >= limits.max_results) break;
      int i = m - 1;
      while (i >= 0 && ++pick[i] == choices[i].size()) pick[i--] = 0;
      if (i < 0) break;
    }
  }
  std::vector<Diagram> out;
  for (auto& [k, d] : found) out.push_back(std::move(d));
  return out;
}

std::vector<Diagram> ZigCategory::extensions(const ExtensionProblem& problem,
                                             const SearchLimits& limits) const {
  return zigzag_extensions(*this, problem, limits);
}

std::vector<Diagram> zigzag_anticolimits(const ZigCategory& zig,
                                         const FinPoset& shape,
                                         const Sink& sink,
                                         const SearchLimits& limits) {
  return zigzag_extensions(zig, sink_problem(shape, sink), limits);
}

ZigzagAnticolimitParts decompose(const ZigCategory& zig, const Diagram& a,
                                 const Sink& sink) {
  const Category& base = zig.base();
  const FinPoset& j = a.shape();
  const Zigzag& y = sink.apex.zigzag();
  ZigzagAnticolimitParts out{project_to_ord(a), {}};
  auto legs = cocone_legs(zig, a, sink);
  std::vector<std::vector<int>> reg;
  for (const auto& leg : legs) reg.push_back(reg_dual(leg.zigzag_map().singular, y.length()));
  for (int i = 0; i < y.length(); ++i) {
    std::vector<Object> objects;
    for (int x = 0; x < j.size(); ++x)
      objects.push_back(Object(restrict(a.object(x).zigzag(), reg[x][i], reg[x][i + 1])));
    std::vector<std::tuple<int, int, Morphism>> gens;
    for (auto [x, yy] : j.covering_pairs())
      gens.emplace_back(x, yy, restrict_map(base, a.arrow(x, yy), reg[yy][i], reg[yy][i + 1]));
    Diagram piece = Diagram::from_generators(zig, j, std::move(objects), gens);
    out.heights.push_back(explode(base, piece).diagram);
  }
  return out;
}

// --- anticontraction -------------------------------------------------------

void validate_request(const Category& base, const AnticontractionRequest& req) {
  if (req.target.length() != 1)
    throw ValidationError("anticontraction target must have length 1");
  validate_zigzag(base, req.target);
  if (req.sink.empty()) throw ValidationError("anticontraction needs at least one sink leg");
  for (const auto& leg : req.sink) {
    if (!(leg.target() == req.target.singular[0]))
      throw ValidationError("anticontraction sink legs must land in the singular object");
    base.check_morphism(leg);
  }
}

int default_bound(const Category& base, const FinPoset& shape, const Sink& sink) {
  if (sink.apex.is_carrier()) {
    std::optional<Anticocone> pi;
    try {
      pi = canonical_anticocone(base, shape, sink);
    } catch (const CapabilityMissing&) {
    }
    int bound = 0;
    if (pi) {
      for (int x = 0; x < shape.size(); ++x)
        if (!shape.is_maximal(x))
          bound = std::max(bound, pi->extension.object(x).carrier().size);
      return bound + 1;
    }
    for (const auto& leg : sink.legs) bound += leg.source().carrier().size;
    return std::max(bound, 1);
  }
  if (sink.apex.is_zigzag()) {
    int longest = 0;
    for (const auto& leg : sink.legs)
      longest = std::max(longest, leg.source().zigzag().length());
    return std::max(longest + 2, 3);
  }
  return 3;
}

std::vector<Morphism> anticontractions(const Category& base,
                                       const AnticontractionRequest& req) {
  validate_request(base, req);
  const int n = static_cast<int>(req.sink.size()) - 1;
  const FinPoset j = jn_poset(n);
  const Zigzag& x = req.target;
  Sink sink{req.sink, x.singular[0]};
  const int bound = req.bound >= 0 ? req.bound : default_bound(base, j, sink);
  std::vector<Morphism> out;
  if (req.max_results == 0) return out;
  auto lift0 = base.lifts(x.forward[0], req.sink.front(), req.max_results);
  auto lift1 = base.lifts(x.backward[0], req.sink.back(), req.max_results);
  if (lift0.empty() || lift1.empty()) return out;
  const auto maxima = j.maximal();
  for (const auto& acl : enumerate_anticolimits(base, j, sink, {bound})) {
    const Diagram& d = acl.extension;
    for (const auto& l0 : lift0)
      for (const auto& l1 : lift1) {
        Zigzag e;
        e.regular.push_back(x.regular[0]);
        for (int k = 0; k < n; ++k) e.regular.push_back(d.object(j.index_of("e" + pad(k, static_cast<int>(std::to_string(n).size())))));
        e.regular.push_back(x.regular[1]);
        for (int k = 0; k <= n; ++k) e.singular.push_back(req.sink[k].source());
        for (int k = 0; k <= n; ++k) {
          const int v = maxima[k];
          e.forward.push_back(k == 0 ? l0 : d.arrow(j.index_of("e" + pad(k - 1, static_cast<int>(std::to_string(n).size()))), v));
          e.backward.push_back(k == n ? l1 : d.arrow(j.index_of("e" + pad(k, static_cast<int>(std::to_string(n).size()))), v));
        }
        ZigzagMapData data;
        data.singular.assign(n + 1, 0);
        data.singular_slices = req.sink;
        data.regular_slices = {base.identity(x.regular[0]), base.identity(x.regular[1])};
        out.push_back(make_zigzag_map(base, e, x, std::move(data)));
        if (out.size() >= req.max_results) return out;
      }
  }
  return out;
}

Morphism anticontract(const Category& base, const AnticontractionRequest& req,
                      std::size_t pick) {
  auto limited = req;
  limited.max_results = std::min(req.max_results, pick + 1);
  auto all = anticontractions(base, limited);
  if (all.size() <= pick)
    throw NoSuchLimit("no anticontraction #" + std::to_string(pick) + " (found " +
                      std::to_string(all.size()) + ")");
  return all[pick];
}

bool is_contraction_of(const Category& base, const Morphism& f) {
  const Zigzag& x = f.target().zigzag();
  if (x.length() != 1 || !is_globular(base, f)) return false;
  Explosion ex = fence(base, f.source().zigzag());
  return base.is_colimit(ex.diagram, x.singular[0], fence_legs(ex, f));
}

std::optional<std::string> contraction_round_trip(const Category& base,
                                                  const Morphism& f) {
  const Zigzag& x = f.target().zigzag();
  if (x.length() != 1) return "target does not have length 1";
  Morphism g;
  try {
    g = contraction(base, f.source().zigzag());
  } catch (const NoSuchLimit& e) {
    return std::string("contraction failed: ") + e.what();
  }
  if (g == f) return std::nullopt;
  Explosion ex = fence(base, f.source().zigzag());
  const Zigzag& y = g.target().zigzag();
  std::optional<Morphism> u;
  try {
    u = base.mediating(ex.diagram, Cocone{y.singular[0], fence_legs(ex, g)},
                       x.singular[0], fence_legs(ex, f));
  } catch (const CapabilityMissing&) {
    return "contraction differs and no comparison map is available";
  }
  if (!u || !base.is_iso(*u)) return "contraction apex is not isomorphic to the target";
  const auto& gd = g.zigzag_map();
  const auto& fd = f.zigzag_map();
  for (std::size_t i = 0; i < gd.singular_slices.size(); ++i)
    if (!(base.compose(*u, gd.singular_slices[i]) == fd.singular_slices[i]))
      return "singular slice " + std::to_string(i) + " differs";
  if (!(base.compose(*u, y.forward[0]) == x.forward[0]) ||
      !(base.compose(*u, y.backward[0]) == x.backward[0]))
    return "target cospan differs";
  return std::nullopt;
}

// --- recursive anticontraction ----------------------------------------------

std::string to_string(RecursiveStep s) {
  switch (s) {
    case RecursiveStep::direct: return "direct";
    case RecursiveStep::factorised_left: return "factorised-left";
    case RecursiveStep::factorised_right: return "factorised-right";
    case RecursiveStep::bubble: return "bubble";
  }
  return "?";
}

RecursiveResult recursive_anticontract(const Category& base, const Zigzag& x,
                                       int k, const Morphism& a, int bound,
                                       std::size_t pick) {
  if (k < 0 || k >= x.length())
    throw ValidationError("anticontraction height " + std::to_string(k) + " out of range");
  const Zigzag cell = restrict(x, k, k + 1);
  const Object& s0 = cell.singular[0];
  if (!(a.target() == s0))
    throw ValidationError("anticontraction map does not land in singular height " +
                          std::to_string(k));
  base.check_morphism(a);
  auto l0 = base.find_lift(cell.forward[0], a);
  auto l1 = base.find_lift(cell.backward[0], a);

  auto finish = [&](RecursiveStep step, Morphism local) {
    Morphism whole = splice_map(base, x, k, local);
    return RecursiveResult{step, std::move(local), std::move(whole)};
  };
  if (l0 && l1) {
    Zigzag e{{cell.regular[0], cell.regular[1]}, {a.source()}, {*l0}, {*l1}};
    ZigzagMapData d{{0}, {a}, {base.identity(cell.regular[0]), base.identity(cell.regular[1])}, {}};
    return finish(RecursiveStep::direct, make_zigzag_map(base, e, cell, std::move(d)));
  }
  if (l0 || l1) {
    // Factorise the side without a lift and anticontract against it.
    const Morphism& other = l0 ? cell.backward[0] : cell.forward[0];
    try {
      auto fact = factorise_sink(base, Sink{{other}, s0});
      AnticontractionRequest req{cell, {}, bound, pick + 1};
      req.sink = l0 ? std::vector<Morphism>{a, fact.mono_part}
                    : std::vector<Morphism>{fact.mono_part, a};
      auto all = anticontractions(base, req);
      if (all.size() > pick)
        return finish(l0 ? RecursiveStep::factorised_right : RecursiveStep::factorised_left,
                      all[pick]);
    } catch (const CapabilityMissing&) {
    } catch (const NoSuchLimit&) {
    }
  }
  Zigzag e{{cell.regular[0], a.source(), cell.regular[1]},
           {s0, s0},
           {cell.forward[0], a},
           {a, cell.backward[0]}};
  ZigzagMapData d{{0, 0},
                  {base.identity(s0), base.identity(s0)},
                  {base.identity(cell.regular[0]), base.identity(cell.regular[1])},
                  {}};
  return finish(RecursiveStep::bubble, make_zigzag_map(base, e, cell, std::move(d)));
}

}  // namespace acl
