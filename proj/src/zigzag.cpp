#include "acl/zigzag.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "acl/errors.hpp"
#include "acl/fincat.hpp"

namespace acl {

namespace {

std::string height_error(int i, const std::string& family) {
  return "zigzag map: square (" + std::to_string(i) + ", " + family +
         ") does not commute";
}

bool is_identity(const Category& base, const Morphism& f) {
  return f.source() == f.target() && f == base.identity(f.source());
}

// Monotone maps ord n -> ord m in lexicographic order.
void monotone_maps(int n, int m,
                   const std::function<bool(const std::vector<int>&)>& visit) {
  std::vector<int> f(n, 0);
  std::function<bool(int, int)> go = [&](int i, int lo) {
    if (i == n) return visit(f);
    for (int v = lo; v < m; ++v) {
      f[i] = v;
      if (!go(i + 1, v)) return false;
    }
    return true;
  };
  go(0, 0);
}

std::string pad(int v, int width) {
  std::string s = std::to_string(v);
  return std::string(width > static_cast<int>(s.size()) ? width - s.size() : 0,
                     '0') +
         s;
}

// Explosion of zigzags placed on the elements of `shape` with maps on its
// covering pairs.
Explosion explode_raw(const Category& base, const FinPoset& shape,
                      const std::vector<const Zigzag*>& zz,
                      const std::function<const Morphism&(int, int)>& arrow) {
  const int nj = shape.size();
  std::vector<Object> len_objects;
  std::vector<std::tuple<int, int, Morphism>> len_gens;
  for (int x = 0; x < nj; ++x) len_objects.push_back(ord_object(zz[x]->length()));
  for (auto [x, y] : shape.covering_pairs())
    len_gens.emplace_back(
        x, y,
        ord_map(zz[x]->length(), zz[y]->length(), arrow(x, y).zigzag_map().singular));
  Diagram lengths = Diagram::from_generators(*finord(), shape, len_objects, len_gens);
  Explosion e{explosion_shape(lengths), {}};
  const auto& sh = e.shape;
  std::vector<Object> objects(sh.poset.size());
  for (int p = 0; p < sh.poset.size(); ++p) {
    const auto& site = sh.sites[p];
    const Zigzag& z = *zz[site.element];
    objects[p] = site.singular ? z.singular[site.index] : z.regular[site.index];
  }
  std::vector<std::tuple<int, int, Morphism>> gens;
  for (int x = 0; x < nj; ++x) {
    const Zigzag& z = *zz[x];
    for (int i = 0; i < z.length(); ++i) {
      gens.emplace_back(sh.regular_at[x][i], sh.singular_at[x][i], z.forward[i]);
      gens.emplace_back(sh.regular_at[x][i + 1], sh.singular_at[x][i], z.backward[i]);
    }
  }
  for (auto [x, y] : shape.covering_pairs()) {
    const Morphism& f = arrow(x, y);
    const auto& d = f.zigzag_map();
    const int m = zz[y]->length();
    auto fr = reg_dual(d.singular, m);
    for (std::size_t i = 0; i < d.singular.size(); ++i)
      gens.emplace_back(sh.singular_at[x][i], sh.singular_at[y][d.singular[i]],
                        d.singular_slices[i]);
    for (int j = 0; j <= m; ++j)
      gens.emplace_back(sh.regular_at[x][fr[j]], sh.regular_at[y][j],
                        d.regular_slices[j]);
    for (int i = 0; i < m; ++i)
      for (int j = fr[i]; j <= fr[i + 1]; ++j)
        gens.emplace_back(sh.regular_at[x][j], sh.singular_at[y][i],
                          d.diagonals.at(i).at(j - fr[i]));
  }
  e.diagram = Diagram::from_generators(base, sh.poset, std::move(objects), gens);
  return e;
}

// Height-i restriction of a zigzag diagram along Ord legs lambda.
struct HeightPiece {
  std::vector<Zigzag> zigzags;
  std::map<std::pair<int, int>, Morphism> maps;
  std::vector<int> offset;  // first regular index of each restriction
};

HeightPiece height_piece(const Category& base, const Diagram& f,
                         const std::vector<std::vector<int>>& reg_of_leg,
                         int i) {
  HeightPiece h;
  for (int x = 0; x < f.size(); ++x) {
    const int c = reg_of_leg[x][i], d = reg_of_leg[x][i + 1];
    h.zigzags.push_back(restrict(f.object(x).zigzag(), c, d));
    h.offset.push_back(c);
  }
  for (auto [x, y] : f.shape().covering_pairs())
    h.maps.emplace(std::make_pair(x, y),
                   restrict_map(base, f.arrow(x, y), reg_of_leg[y][i],
                                reg_of_leg[y][i + 1]));
  return h;
}

Explosion explode_piece(const Category& base, const FinPoset& shape,
                        const HeightPiece& h) {
  std::vector<const Zigzag*> zz;
  for (const auto& z : h.zigzags) zz.push_back(&z);
  return explode_raw(base, shape, zz, [&](int x, int y) -> const Morphism& {
    return h.maps.at({x, y});
  });
}

std::optional<Cocone> ord_colimit(const Diagram& lengths, Bias bias) {
  const auto& ord = static_cast<const CarrierCategory&>(*finord());
  if (bias == Bias::none) return ord.colimit(lengths);
  return ord.biased_colimit(lengths, bias == Bias::left);
}

// In the M class: the singleton factorisation has an invertible E part.
bool in_m(const Category& base, const Morphism& f) {
  auto fact = base.factorise(std::span<const Morphism>(&f, 1), f.target());
  return base.is_iso(fact.epi_part.front());
}

}  // namespace

// --- duality --------------------------------------------------------------

std::vector<int> reg_dual(const std::vector<int>& f, int m) {
  const int n = static_cast<int>(f.size());
  std::vector<int> g(m + 1, n);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j < n; ++j)
      if (f[j] >= i) {
        g[i] = j;
        break;
      }
  return g;
}

bool is_interval_map(const std::vector<int>& g, int n) {
  if (g.empty() || g.front() != 0 || g.back() != n) return false;
  for (std::size_t i = 0; i + 1 < g.size(); ++i)
    if (g[i] > g[i + 1]) return false;
  return true;
}

std::vector<int> reg_inverse(const std::vector<int>& g, int n) {
  if (!is_interval_map(g, n))
    throw ValidationError("not an endpoint-preserving interval map");
  const int m = static_cast<int>(g.size()) - 1;
  std::vector<int> f(n, 0);
  // (Reg f)(i) <= j iff f(j) >= i.
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= m; ++i)
      if (g[i] <= j) f[j] = i;
  return f;
}

// --- zigzags and maps -----------------------------------------------------

Zigzag point_zigzag(const Object& x) { return Zigzag{{x}, {}, {}, {}}; }

void validate_zigzag(const Category& base, const Zigzag& z) {
  const int n = z.length();
  if (static_cast<int>(z.regular.size()) != n + 1 ||
      static_cast<int>(z.forward.size()) != n ||
      static_cast<int>(z.backward.size()) != n)
    throw ValidationError("zigzag: needs n+1 regular objects and n cospans");
  for (const auto& o : z.regular) base.check_object(o);
  for (const auto& o : z.singular) base.check_object(o);
  for (int i = 0; i < n; ++i) {
    if (!(z.forward[i].source() == z.regular[i]) ||
        !(z.forward[i].target() == z.singular[i]) ||
        !(z.backward[i].source() == z.regular[i + 1]) ||
        !(z.backward[i].target() == z.singular[i]))
      throw ValidationError("zigzag: cospan " + std::to_string(i) +
                            " is ill-typed");
    base.check_morphism(z.forward[i]);
    base.check_morphism(z.backward[i]);
  }
}

ZigzagMapData validate_zigzag_map(const Category& base, const Zigzag& x,
                                  const Zigzag& y, ZigzagMapData raw) {
  const int n = x.length(), m = y.length();
  const auto& fs = raw.singular;
  if (static_cast<int>(fs.size()) != n)
    throw ValidationError("zigzag map: singular map has the wrong length");
  for (int i = 0; i < n; ++i)
    if (fs[i] < 0 || fs[i] >= m || (i && fs[i - 1] > fs[i]))
      throw ValidationError("zigzag map: singular map is not monotone into ord " +
                            std::to_string(m));
  const auto fr = reg_dual(fs, m);
  const auto& ss = raw.singular_slices;
  const auto& rs = raw.regular_slices;
  if (static_cast<int>(ss.size()) != n || static_cast<int>(rs.size()) != m + 1)
    throw ValidationError("zigzag map: wrong number of slices");
  for (int i = 0; i < n; ++i)
    if (!(ss[i].source() == x.singular[i]) ||
        !(ss[i].target() == y.singular[fs[i]]))
      throw ValidationError("zigzag map: singular slice " + std::to_string(i) +
                            " is ill-typed");
  for (int j = 0; j <= m; ++j)
    if (!(rs[j].source() == x.regular[fr[j]]) || !(rs[j].target() == y.regular[j]))
      throw ValidationError("zigzag map: regular slice " + std::to_string(j) +
                            " is ill-typed");

  raw.diagonals.assign(m, {});
  for (int i = 0; i < m; ++i) {
    const int a = fr[i], end = fr[i + 1];
    auto& row = raw.diagonals[i];
    Morphism left = base.compose(y.forward[i], rs[i]);
    Morphism right = base.compose(y.backward[i], rs[i + 1]);
    if (a == end) {
      if (!(left == right)) throw ValidationError(height_error(i, "empty preimage"));
      row.push_back(std::move(left));
      continue;
    }
    const int b = end - 1;
    if (!(left == base.compose(ss[a], x.forward[a])))
      throw ValidationError(height_error(i, "left"));
    if (!(right == base.compose(ss[b], x.backward[b])))
      throw ValidationError(height_error(i, "right"));
    row.push_back(std::move(left));
    for (int j = a; j < b; ++j) {
      Morphism via_left = base.compose(ss[j], x.backward[j]);
      if (!(via_left == base.compose(ss[j + 1], x.forward[j + 1])))
        throw ValidationError(height_error(i, "middle " + std::to_string(j)));
      row.push_back(std::move(via_left));
    }
    row.push_back(std::move(right));
  }
  return raw;
}

Morphism make_zigzag_map(const Category& base, const Zigzag& x,
                         const Zigzag& y, ZigzagMapData raw) {
  auto data = validate_zigzag_map(base, x, y, std::move(raw));
  return Morphism::zigzag_map(Object(x), Object(y), std::move(data));
}

const Morphism& diagonal_slice(const Morphism& f, int i, int j) {
  const auto& d = f.zigzag_map();
  const int m = f.target().zigzag().length();
  if (i < 0 || i >= m || static_cast<int>(d.diagonals.size()) != m)
    throw ValidationError("diagonal slice: height out of range or map not validated");
  const auto fr = reg_dual(d.singular, m);
  if (j < fr[i] || j > fr[i + 1])
    throw ValidationError("diagonal slice: regular index outside f_r([i, i+1])");
  return d.diagonals[i][j - fr[i]];
}

bool is_globular(const Category& base, const Morphism& f) {
  for (const auto& r : f.zigzag_map().regular_slices)
    if (!is_identity(base, r)) return false;
  return true;
}

Morphism identity_zigzag_map(const Category& base, const Zigzag& x) {
  ZigzagMapData d;
  for (int i = 0; i < x.length(); ++i) {
    d.singular.push_back(i);
    d.singular_slices.push_back(base.identity(x.singular[i]));
  }
  for (const auto& r : x.regular) d.regular_slices.push_back(base.identity(r));
  return make_zigzag_map(base, x, x, std::move(d));
}

Morphism compose_zigzag_maps(const Category& base, const Morphism& g,
                             const Morphism& f) {
  if (!(f.target() == g.source()))
    throw ValidationError("zigzag maps do not compose");
  const auto& fd = f.zigzag_map();
  const auto& gd = g.zigzag_map();
  const Zigzag& z = g.target().zigzag();
  const auto gr = reg_dual(gd.singular, z.length());
  ZigzagMapData d;
  for (std::size_t i = 0; i < fd.singular.size(); ++i) {
    const int k = fd.singular[i];
    d.singular.push_back(gd.singular[k]);
    d.singular_slices.push_back(base.compose(gd.singular_slices[k], fd.singular_slices[i]));
  }
  for (int j = 0; j <= z.length(); ++j)
    d.regular_slices.push_back(base.compose(gd.regular_slices[j], fd.regular_slices[gr[j]]));
  return make_zigzag_map(base, f.source().zigzag(), z, std::move(d));
}

Zigzag restrict(const Zigzag& x, int a, int b) {
  if (a < 0 || a > b || b > x.length())
    throw ValidationError("restriction [" + std::to_string(a) + ", " +
                          std::to_string(b) + "] out of range");
  Zigzag r;
  r.regular.assign(x.regular.begin() + a, x.regular.begin() + b + 1);
  r.singular.assign(x.singular.begin() + a, x.singular.begin() + b);
  r.forward.assign(x.forward.begin() + a, x.forward.begin() + b);
  r.backward.assign(x.backward.begin() + a, x.backward.begin() + b);
  return r;
}

Morphism restrict_map(const Category& base, const Morphism& f, int a, int b) {
  const Zigzag& y = f.target().zigzag();
  if (a < 0 || a > b || b > y.length())
    throw ValidationError("map restriction [" + std::to_string(a) + ", " +
                          std::to_string(b) + "] out of range");
  const auto& d = f.zigzag_map();
  const auto fr = reg_dual(d.singular, y.length());
  const int c = fr[a], e = fr[b];
  ZigzagMapData r;
  for (int i = c; i < e; ++i) {
    r.singular.push_back(d.singular[i] - a);
    r.singular_slices.push_back(d.singular_slices[i]);
  }
  for (int j = a; j <= b; ++j) r.regular_slices.push_back(d.regular_slices[j]);
  return make_zigzag_map(base, restrict(f.source().zigzag(), c, e),
                         restrict(y, a, b), std::move(r));
}

// --- explosion ------------------------------------------------------------

Diagram project_to_ord(const Diagram& f) {
  std::vector<Object> objects;
  for (int x = 0; x < f.size(); ++x)
    objects.push_back(ord_object(f.object(x).zigzag().length()));
  std::vector<std::tuple<int, int, Morphism>> gens;
  for (auto [x, y] : f.shape().covering_pairs())
    gens.emplace_back(x, y,
                      ord_map(f.object(x).zigzag().length(),
                              f.object(y).zigzag().length(),
                              f.arrow(x, y).zigzag_map().singular));
  return Diagram::from_generators(*finord(), f.shape(), std::move(objects), gens);
}

ExplodedShape explosion_shape(const Diagram& lengths) {
  const FinPoset& j = lengths.shape();
  ExplodedShape out;
  int widest = 1;
  for (int x = 0; x < j.size(); ++x)
    widest = std::max(widest, 2 * lengths.object(x).carrier().size);
  const int width = static_cast<int>(std::to_string(widest).size());
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> rel;
  std::vector<std::vector<std::string>> sname(j.size()), rname(j.size());
  for (int x = 0; x < j.size(); ++x) {
    const int n = lengths.object(x).carrier().size;
    for (int k = 0; k <= n; ++k) {
      rname[x].push_back(j.name(x) + "." + pad(2 * k, width));
      names.push_back(rname[x].back());
      if (k < n) {
        sname[x].push_back(j.name(x) + "." + pad(2 * k + 1, width));
        names.push_back(sname[x].back());
      }
    }
    for (int k = 0; k < n; ++k) {
      rel.emplace_back(rname[x][k], sname[x][k]);
      rel.emplace_back(rname[x][k + 1], sname[x][k]);
    }
  }
  for (auto [x, y] : j.covering_pairs()) {
    const auto& alpha = lengths.arrow(x, y).images();
    const int m = lengths.object(y).carrier().size;
    const auto fr = reg_dual(alpha, m);
    for (std::size_t i = 0; i < alpha.size(); ++i)
      rel.emplace_back(sname[x][i], sname[y][alpha[i]]);
    for (int k = 0; k <= m; ++k) rel.emplace_back(rname[x][fr[k]], rname[y][k]);
    for (int i = 0; i < m; ++i)
      for (int k = fr[i]; k <= fr[i + 1]; ++k) rel.emplace_back(rname[x][k], sname[y][i]);
  }
  out.poset = FinPoset::from_relations(names, rel);
  out.sites.resize(out.poset.size());
  out.singular_at.resize(j.size());
  out.regular_at.resize(j.size());
  for (int x = 0; x < j.size(); ++x) {
    for (std::size_t k = 0; k < rname[x].size(); ++k) {
      int p = out.poset.index_of(rname[x][k]);
      out.regular_at[x].push_back(p);
      out.sites[p] = {x, false, static_cast<int>(k)};
    }
    for (std::size_t k = 0; k < sname[x].size(); ++k) {
      int p = out.poset.index_of(sname[x][k]);
      out.singular_at[x].push_back(p);
      out.sites[p] = {x, true, static_cast<int>(k)};
    }
  }
  return out;
}

Explosion explode(const Category& base, const Diagram& f) {
  std::vector<const Zigzag*> zz;
  for (int x = 0; x < f.size(); ++x) zz.push_back(&f.object(x).zigzag());
  return explode_raw(base, f.shape(), zz,
                     [&](int x, int y) -> const Morphism& { return f.arrow(x, y); });
}

Diagram unexplode(const ZigCategory& zig, const Diagram& lengths,
                  const ExplodedShape& shape, const Diagram& g) {
  const Category& base = zig.base();
  const FinPoset& j = lengths.shape();
  std::vector<Zigzag> zz(j.size());
  for (int x = 0; x < j.size(); ++x) {
    const int n = lengths.object(x).carrier().size;
    Zigzag& z = zz[x];
    for (int k = 0; k <= n; ++k) z.regular.push_back(g.object(shape.regular_at[x][k]));
    for (int k = 0; k < n; ++k) {
      const int s = shape.singular_at[x][k];
      z.singular.push_back(g.object(s));
      z.forward.push_back(g.arrow(shape.regular_at[x][k], s));
      z.backward.push_back(g.arrow(shape.regular_at[x][k + 1], s));
    }
  }
  std::vector<std::tuple<int, int, Morphism>> gens;
  for (auto [x, y] : j.covering_pairs()) {
    const auto& alpha = lengths.arrow(x, y).images();
    const int m = zz[y].length();
    const auto fr = reg_dual(alpha, m);
    ZigzagMapData d;
    d.singular = alpha;
    for (std::size_t i = 0; i < alpha.size(); ++i)
      d.singular_slices.push_back(
          g.arrow(shape.singular_at[x][i], shape.singular_at[y][alpha[i]]));
    for (int k = 0; k <= m; ++k)
      d.regular_slices.push_back(g.arrow(shape.regular_at[x][fr[k]], shape.regular_at[y][k]));
    gens.emplace_back(x, y, make_zigzag_map(base, zz[x], zz[y], std::move(d)));
  }
  std::vector<Object> objects(zz.begin(), zz.end());
  return Diagram::from_generators(zig, j, std::move(objects), gens);
}

bool is_globular_diagram(const Category& base, const Diagram& f) {
  for (auto [x, y] : f.shape().covering_pairs())
    if (!is_globular(base, f.arrow(x, y))) return false;
  return true;
}

// --- colimits and contraction ---------------------------------------------

Cocone zigzag_colimit(const ZigCategory& zig, const Diagram& f, Bias bias) {
  const Category& base = zig.base();
  if (!f.shape().is_connected())
    throw ValidationError("zigzag colimit: the shape is not connected");
  if (!is_globular_diagram(base, f))
    throw ValidationError("zigzag colimit: the diagram has non-globular maps");
  Diagram lengths = project_to_ord(f);
  auto ord = ord_colimit(lengths, bias);
  if (!ord) throw NoSuchLimit("zigzag colimit: no colimit of the lengths in Ord");
  const int n = ord->apex.carrier().size;
  std::vector<std::vector<int>> reg_of_leg;
  for (const auto& leg : ord->legs) reg_of_leg.push_back(reg_dual(leg.images(), n));

  const Zigzag& first = f.object(0).zigzag();
  Zigzag y;
  for (int j = 0; j <= n; ++j) y.regular.push_back(first.regular[reg_of_leg[0][j]]);
  std::vector<std::vector<Morphism>> slices(f.size());
  for (int x = 0; x < f.size(); ++x)
    slices[x].resize(f.object(x).zigzag().length());
  for (int i = 0; i < n; ++i) {
    HeightPiece piece = height_piece(base, f, reg_of_leg, i);
    Explosion e = explode_piece(base, f.shape(), piece);
    auto c = base.colimit(e.diagram);
    if (!c)
      throw NoSuchLimit("zigzag colimit: no colimit in " + base.name() +
                        " at height " + std::to_string(i));
    y.singular.push_back(c->apex);
    const int len0 = piece.zigzags[0].length();
    y.forward.push_back(c->legs[e.shape.regular_at[0][0]]);
    y.backward.push_back(c->legs[e.shape.regular_at[0][len0]]);
    for (int x = 0; x < f.size(); ++x)
      for (int k = 0; k < piece.zigzags[x].length(); ++k)
        slices[x][piece.offset[x] + k] = c->legs[e.shape.singular_at[x][k]];
  }
  Cocone out{Object(y), {}};
  for (int x = 0; x < f.size(); ++x) {
    ZigzagMapData d;
    d.singular = ord->legs[x].images();
    d.singular_slices = std::move(slices[x]);
    for (int j = 0; j <= n; ++j) d.regular_slices.push_back(base.identity(y.regular[j]));
    out.legs.push_back(make_zigzag_map(base, f.object(x).zigzag(), y, std::move(d)));
  }
  return out;
}

Morphism contraction(const Category& base, const Zigzag& x, Bias bias) {
  const FinPoset one = FinPoset::discrete({"x"});
  Explosion e = explode_raw(base, one, {&x}, [](int, int) -> const Morphism& {
    throw std::logic_error("single-element shape has no covering pairs");
  });
  std::optional<Cocone> c;
  const auto* zig = dynamic_cast<const ZigCategory*>(&base);
  if (zig && bias != Bias::none) {
    try {
      c = zigzag_colimit(*zig, e.diagram, bias);
    } catch (const NoSuchLimit&) {
    }
  } else {
    c = base.colimit(e.diagram);
  }
  if (!c) throw NoSuchLimit("the contraction is not defined: no colimit in " + base.name());
  const int n = x.length();
  Zigzag y{{x.regular.front(), x.regular.back()},
           {c->apex},
           {c->legs[e.shape.regular_at[0][0]]},
           {c->legs[e.shape.regular_at[0][n]]}};
  ZigzagMapData d;
  for (int i = 0; i < n; ++i) {
    d.singular.push_back(0);
    d.singular_slices.push_back(c->legs[e.shape.singular_at[0][i]]);
  }
  d.regular_slices = {base.identity(x.regular.front()), base.identity(x.regular.back())};
  return make_zigzag_map(base, x, y, std::move(d));
}

namespace {

Zigzag concat(const Zigzag& p, const Zigzag& s, const Zigzag& q) {
  Zigzag z = p;
  for (const Zigzag* part : {&s, &q}) {
    z.regular.insert(z.regular.end(), part->regular.begin() + 1, part->regular.end());
    z.singular.insert(z.singular.end(), part->singular.begin(), part->singular.end());
    z.forward.insert(z.forward.end(), part->forward.begin(), part->forward.end());
    z.backward.insert(z.backward.end(), part->backward.begin(), part->backward.end());
  }
  return z;
}

// p ++ g ++ q with identities on the prefix p and suffix q.
Morphism pad_map(const Category& base, const Zigzag& p, const Morphism& g,
                 const Zigzag& q) {
  if (!is_globular(base, g))
    throw ValidationError("only globular maps can be padded by identities");
  const Zigzag& s = g.source().zigzag();
  const Zigzag& t = g.target().zigzag();
  const auto& gd = g.zigzag_map();
  const int lp = p.length(), lt = t.length();
  ZigzagMapData d;
  for (int i = 0; i < lp; ++i) {
    d.singular.push_back(i);
    d.singular_slices.push_back(base.identity(p.singular[i]));
  }
  for (int i = 0; i < s.length(); ++i) {
    d.singular.push_back(lp + gd.singular[i]);
    d.singular_slices.push_back(gd.singular_slices[i]);
  }
  for (int i = 0; i < q.length(); ++i) {
    d.singular.push_back(lp + lt + i);
    d.singular_slices.push_back(base.identity(q.singular[i]));
  }
  for (int j = 0; j < lp; ++j) d.regular_slices.push_back(base.identity(p.regular[j]));
  for (int j = 0; j <= lt; ++j) d.regular_slices.push_back(gd.regular_slices[j]);
  for (int j = 1; j <= q.length(); ++j) d.regular_slices.push_back(base.identity(q.regular[j]));
  return make_zigzag_map(base, concat(p, s, q), concat(p, t, q), std::move(d));
}

}  // namespace

Morphism contract_range(const Category& base, const Zigzag& x, int a, int b,
                        Bias bias) {
  const int n = x.length();
  if (a < 0 || a > b || b > n)
    throw ValidationError("contraction range [" + std::to_string(a) + ", " +
                          std::to_string(b) + "] out of range");
  return pad_map(base, restrict(x, 0, a), contraction(base, restrict(x, a, b), bias),
                 restrict(x, b, n));
}

Morphism splice_map(const Category& base, const Zigzag& y, int k,
                    const Morphism& g) {
  if (k < 0 || k >= y.length())
    throw ValidationError("splice height " + std::to_string(k) + " out of range");
  if (!(g.target().zigzag() == restrict(y, k, k + 1)))
    throw ValidationError("spliced map does not land in height " + std::to_string(k));
  return pad_map(base, restrict(y, 0, k), g, restrict(y, k + 1, y.length()));
}

// --- factorisation ---------------------------------------------------------

namespace {

// Singular slices of the sink landing at height k, with their origins.
struct HeightSink {
  std::vector<Morphism> slices;
  std::vector<std::pair<int, int>> origin;  // (leg, singular index)
};

std::vector<HeightSink> height_sinks(std::span<const Morphism> legs, int m) {
  std::vector<HeightSink> out(m);
  for (std::size_t l = 0; l < legs.size(); ++l) {
    const auto& d = legs[l].zigzag_map();
    for (std::size_t j = 0; j < d.singular.size(); ++j) {
      out[d.singular[j]].slices.push_back(d.singular_slices[j]);
      out[d.singular[j]].origin.emplace_back(static_cast<int>(l), static_cast<int>(j));
    }
  }
  return out;
}

void check_sink(const Category& base, std::span<const Morphism> legs,
                const Zigzag& y) {
  for (const auto& f : legs) {
    if (!(f.target().zigzag() == y))
      throw ValidationError("zigzag sink: legs must share their target");
    if (!is_globular(base, f))
      throw ValidationError("zigzag sink: legs must be globular");
  }
}

}  // namespace

SinkFactorisation factorise_zigzag_sink(const Category& base,
                                        std::span<const Morphism> legs,
                                        const Zigzag& y) {
  check_sink(base, legs, y);
  const int m = y.length();
  auto sinks = height_sinks(legs, m);
  Zigzag z;
  z.regular = y.regular;
  std::vector<Morphism> m_slices;
  // e_i singular slices, filled per height.
  std::vector<std::vector<Morphism>> e_slices(legs.size());
  for (std::size_t l = 0; l < legs.size(); ++l)
    e_slices[l].resize(legs[l].zigzag_map().singular.size());
  for (int k = 0; k < m; ++k) {
    const auto& hs = sinks[k];
    if (hs.slices.empty()) {
      z.singular.push_back(y.singular[k]);
      z.forward.push_back(y.forward[k]);
      z.backward.push_back(y.backward[k]);
      m_slices.push_back(base.identity(y.singular[k]));
      continue;
    }
    auto fact = base.factorise(hs.slices, y.singular[k]);
    z.singular.push_back(fact.image);
    m_slices.push_back(fact.mono_part);
    for (std::size_t t = 0; t < hs.origin.size(); ++t) {
      auto [l, j] = hs.origin[t];
      e_slices[l][j] = fact.epi_part[t];
    }
    // Cospan maps through the first leg hitting this height.
    const int l = hs.origin.front().first;
    const Zigzag& x = legs[l].source().zigzag();
    const auto& sing = legs[l].zigzag_map().singular;
    int a = -1, b = -1;
    for (int j = 0; j < static_cast<int>(sing.size()); ++j)
      if (sing[j] == k) {
        if (a < 0) a = j;
        b = j;
      }
    z.forward.push_back(base.compose(e_slices[l][a], x.forward[a]));
    z.backward.push_back(base.compose(e_slices[l][b], x.backward[b]));
  }
  SinkFactorisation out;
  out.image = Object(z);
  for (std::size_t l = 0; l < legs.size(); ++l) {
    ZigzagMapData d;
    d.singular = legs[l].zigzag_map().singular;
    d.singular_slices = std::move(e_slices[l]);
    for (const auto& r : z.regular) d.regular_slices.push_back(base.identity(r));
    out.epi_part.push_back(
        make_zigzag_map(base, legs[l].source().zigzag(), z, std::move(d)));
  }
  ZigzagMapData md;
  for (int k = 0; k < m; ++k) md.singular.push_back(k);
  md.singular_slices = std::move(m_slices);
  for (const auto& r : z.regular) md.regular_slices.push_back(base.identity(r));
  out.mono_part = make_zigzag_map(base, z, y, std::move(md));
  return out;
}

bool is_singular_epi(const Category& base, std::span<const Morphism> legs,
                     const Zigzag& y) {
  auto sinks = height_sinks(legs, y.length());
  for (int k = 0; k < y.length(); ++k) {
    auto fact = base.factorise(sinks[k].slices, y.singular[k]);
    if (!base.is_iso(fact.mono_part)) return false;
  }
  return true;
}

bool is_relabelling(const Category& base, const Morphism& m) {
  const auto& d = m.zigzag_map();
  if (!is_globular(base, m)) return false;
  if (m.source().zigzag().length() != m.target().zigzag().length()) return false;
  for (std::size_t i = 0; i < d.singular.size(); ++i)
    if (d.singular[i] != static_cast<int>(i)) return false;
  for (const auto& s : d.singular_slices)
    if (!in_m(base, s)) return false;
  return true;
}

Morphism zigzag_orthogonal_lift(const Category& base,
                                std::span<const Morphism> e_sink,
                                const Morphism& m,
                                std::span<const Morphism> tops,
                                const Morphism& bottom) {
  if (e_sink.size() != tops.size())
    throw ValidationError("orthogonal lift: one top map per sink leg");
  if (!is_relabelling(base, m))
    throw ValidationError("orthogonal lift: right map is not a relabelling");
  for (std::size_t l = 0; l < e_sink.size(); ++l)
    if (!(compose_zigzag_maps(base, m, tops[l]) ==
          compose_zigzag_maps(base, bottom, e_sink[l])))
      throw ValidationError("orthogonal lift: square " + std::to_string(l) +
                            " does not commute");
  const Zigzag& y = bottom.source().zigzag();
  const Zigzag& z = m.source().zigzag();
  const auto& gd = bottom.zigzag_map();
  const auto& md = m.zigzag_map();
  auto sinks = height_sinks(e_sink, y.length());
  ZigzagMapData h;
  h.singular = gd.singular;
  for (int k = 0; k < y.length(); ++k) {
    std::vector<Morphism> top_slices;
    for (auto [l, j] : sinks[k].origin)
      top_slices.push_back(tops[l].zigzag_map().singular_slices[j]);
    h.singular_slices.push_back(base.orthogonal_lift(
        sinks[k].slices, md.singular_slices[gd.singular[k]], top_slices,
        gd.singular_slices[k]));
  }
  for (const auto& r : z.regular) h.regular_slices.push_back(base.identity(r));
  Morphism lift = make_zigzag_map(base, y, z, std::move(h));
  if (!(compose_zigzag_maps(base, m, lift) == bottom))
    throw ValidationError("orthogonal lift: lower triangle fails");
  for (std::size_t l = 0; l < e_sink.size(); ++l)
    if (!(compose_zigzag_maps(base, lift, e_sink[l]) == tops[l]))
      throw ValidationError("orthogonal lift: upper triangle fails");
  return lift;
}

// --- the category ----------------------------------------------------------

ZigCategory::ZigCategory(CategoryPtr base, bool globular_only)
    : base_(std::move(base)), globular_only_(globular_only) {}

std::string ZigCategory::name() const {
  return (globular_only_ ? "Zig=(" : "Zig(") + base_->name() + ")";
}

void ZigCategory::check_object(const Object& x) const {
  if (!x.is_zigzag()) throw ValidationError(name() + ": object is not a zigzag");
  validate_zigzag(*base_, x.zigzag());
}

void ZigCategory::check_morphism(const Morphism& f) const {
  if (!f.is_zigzag_map())
    throw ValidationError(name() + ": morphism is not a zigzag map");
  check_object(f.source());
  check_object(f.target());
  validate_zigzag_map(*base_, f.source().zigzag(), f.target().zigzag(),
                      f.zigzag_map());
  if (globular_only_ && !is_globular(*base_, f))
    throw ValidationError(name() + ": map is not globular");
}

Morphism ZigCategory::identity(const Object& x) const {
  return identity_zigzag_map(*base_, x.zigzag());
}

Morphism ZigCategory::compose(const Morphism& g, const Morphism& f) const {
  return compose_zigzag_maps(*base_, g, f);
}

bool ZigCategory::is_iso(const Morphism& f) const {
  const auto& d = f.zigzag_map();
  if (f.source().zigzag().length() != f.target().zigzag().length()) return false;
  for (std::size_t i = 0; i < d.singular.size(); ++i)
    if (d.singular[i] != static_cast<int>(i)) return false;
  for (const auto& s : d.singular_slices)
    if (!base_->is_iso(s)) return false;
  for (const auto& r : d.regular_slices)
    if (!base_->is_iso(r)) return false;
  return true;
}

std::optional<Cocone> ZigCategory::colimit(const Diagram& d) const {
  try {
    return zigzag_colimit(*this, d);
  } catch (const NoSuchLimit&) {
    return std::nullopt;
  }
}

bool ZigCategory::is_colimit(const Diagram& d, const Object& apex,
                             std::span<const Morphism> legs) const {
  const Category& base = *base_;
  if (!d.shape().is_connected() || !is_globular_diagram(base, d)) return false;
  const Zigzag& y = apex.zigzag();
  const int n = y.length();
  std::vector<Morphism> ord_legs;
  std::vector<std::vector<int>> reg_of_leg;
  for (int x = 0; x < d.size(); ++x) {
    const auto& leg = legs[x];
    if (!(leg.target() == apex) || !is_globular(base, leg)) return false;
    ord_legs.push_back(
        ord_map(d.object(x).zigzag().length(), n, leg.zigzag_map().singular));
    reg_of_leg.push_back(reg_dual(leg.zigzag_map().singular, n));
  }
  if (!finord()->is_colimit(project_to_ord(d), ord_object(n), ord_legs)) return false;
  for (int i = 0; i < n; ++i) {
    HeightPiece piece = height_piece(base, d, reg_of_leg, i);
    Explosion e = explode_piece(base, d.shape(), piece);
    std::vector<Morphism> comps(e.shape.poset.size());
    for (int p = 0; p < e.shape.poset.size(); ++p) {
      const auto& site = e.shape.sites[p];
      const int x = site.element;
      comps[p] = site.singular
                     ? legs[x].zigzag_map().singular_slices[piece.offset[x] + site.index]
                     : diagonal_slice(legs[x], i, piece.offset[x] + site.index);
    }
    if (!base.is_colimit(e.diagram, y.singular[i], comps)) return false;
  }
  return true;
}

SinkFactorisation ZigCategory::factorise(std::span<const Morphism> legs,
                                         const Object& target) const {
  return factorise_zigzag_sink(*base_, legs, target.zigzag());
}

Morphism ZigCategory::orthogonal_lift(std::span<const Morphism> epi_sink,
                                      const Morphism& mono,
                                      std::span<const Morphism> tops,
                                      const Morphism& bottom) const {
  return zigzag_orthogonal_lift(*base_, epi_sink, mono, tops, bottom);
}

template <class Slices>
std::vector<Morphism> ZigCategory::enumerate(const Zigzag& x, const Zigzag& y,
                                             Slices&& slices,
                                             const std::vector<int>* singular,
                                             std::size_t limit) const {
  const Category& base = *base_;
  const int n = x.length(), m = y.length();
  std::vector<Morphism> out;
  auto try_map = [&](const std::vector<int>& fs) {
    const auto fr = reg_dual(fs, m);
    for (int j = 0; j <= m; ++j)
      if (!(x.regular[fr[j]] == y.regular[j])) return true;
    for (int k = 0; k < m; ++k)
      if (fr[k] == fr[k + 1] && !(y.forward[k] == y.backward[k])) return true;
    std::vector<std::vector<Morphism>> choices(n);
    for (int i = 0; i < n; ++i) {
      choices[i] = slices(i, fs[i]);
      if (choices[i].empty()) return true;
    }
    std::vector<Morphism> pick(n);
    std::function<bool(int)> go = [&](int i) {
      if (i == n) {
        ZigzagMapData d{fs, pick, {}, {}};
        for (int j = 0; j <= m; ++j) d.regular_slices.push_back(base.identity(y.regular[j]));
        out.push_back(make_zigzag_map(base, x, y, std::move(d)));
        return out.size() < limit;
      }
      const int k = fs[i];
      const bool first = i == 0 || fs[i - 1] != k;
      const bool last = i == n - 1 || fs[i + 1] != k;
      for (const auto& s : choices[i]) {
        Morphism in = base.compose(s, x.forward[i]);
        if (first ? !(in == y.forward[k])
                  : !(in == base.compose(pick[i - 1], x.backward[i - 1])))
          continue;
        if (last && !(base.compose(s, x.backward[i]) == y.backward[k])) continue;
        pick[i] = s;
        if (!go(i + 1)) return false;
      }
      return true;
    };
    return go(0);
  };
  if (limit == 0) return out;
  if (singular) {
    try_map(*singular);
  } else {
    monotone_maps(n, m, try_map);
  }
  return out;
}

std::vector<Morphism> ZigCategory::lifts(const Morphism& f, const Morphism& leg,
                                         std::size_t limit) const {
  const Zigzag& x = f.source().zigzag();
  const Zigzag& a = leg.source().zigzag();
  const auto& fd = f.zigzag_map();
  const auto& ld = leg.zigzag_map();
  if (!(f.target() == leg.target()))
    throw ValidationError("lift: maps do not share a target");
  std::vector<Morphism> out;
  monotone_maps(x.length(), a.length(), [&](const std::vector<int>& hs) {
    for (std::size_t i = 0; i < hs.size(); ++i)
      if (ld.singular[hs[i]] != fd.singular[i]) return true;
    auto found = enumerate(
        x, a,
        [&](int i, int k) {
          return base_->lifts(fd.singular_slices[i], ld.singular_slices[k],
                              static_cast<std::size_t>(-1));
        },
        &hs, limit - out.size());
    for (auto& h : found)
      if (compose(leg, h) == f) out.push_back(std::move(h));
    return out.size() < limit;
  });
  return out;
}

std::vector<Morphism> ZigCategory::hom(const Object& a, const Object& b) const {
  const Zigzag& x = a.zigzag();
  const Zigzag& y = b.zigzag();
  return enumerate(
      x, y, [&](int i, int k) { return base_->hom(x.singular[i], y.singular[k]); },
      nullptr, static_cast<std::size_t>(-1));
}

std::vector<Morphism> ZigCategory::automorphisms(const Object& x) const {
  std::vector<Morphism> out;
  for (auto& f : hom(x, x))
    if (is_iso(f)) out.push_back(std::move(f));
  return out;
}

CategoryPtr zig_tower(const CategoryPtr& base, int level) {
  if (level < 0) throw ValidationError("negative zigzag level");
  static std::mutex lock;
  static std::map<std::pair<const Category*, int>, CategoryPtr> cache;
  std::lock_guard<std::mutex> guard(lock);
  CategoryPtr cur = base;
  for (int k = 1; k <= level; ++k) {
    auto& slot = cache[{base.get(), k}];
    if (!slot) slot = std::make_shared<ZigCategory>(cur);
    cur = slot;
  }
  return cur;
}

}  // namespace acl
