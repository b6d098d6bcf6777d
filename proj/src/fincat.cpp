#include "acl/fincat.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "acl/errors.hpp"

namespace acl {

namespace {

const Carrier& carrier_of(const Object& x) { return x.carrier(); }

// Union-find over a flat index space.
struct Classes {
  std::vector<int> parent;
  explicit Classes(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Calls `emit` for every images vector 0..n-1 -> 0..m-1 (lexicographic order)
// accepted by `ok(prefix_length, images)`, which checks the newest entry.
// Stops early when emit returns false.
void for_each_function(
    int n, int m, const std::function<bool(int, const std::vector<int>&)>& ok,
    const std::function<bool(const std::vector<int>&)>& emit) {
  std::vector<int> img(n, 0);
  bool stop = false;
  std::function<void(int)> go = [&](int x) {
    if (stop) return;
    if (x == n) {
      if (!emit(img)) stop = true;
      return;
    }
    for (int y = 0; y < m && !stop; ++y) {
      img[x] = y;
      if (ok(x, img)) go(x + 1);
    }
  };
  go(0);
}

// Monotonicity of the newest entry x against earlier ones.
bool monotone_step(const Carrier& s, const Carrier& t, int x,
                   const std::vector<int>& img) {
  if (!s.ordered() || s.order.empty()) return true;
  for (int y = 0; y < x; ++y) {
    if (s.le(y, x) && !t.le(img[y], img[x])) return false;
    if (s.le(x, y) && !t.le(img[x], img[y])) return false;
  }
  return true;
}

}  // namespace

Carrier preorder_closure(int size, std::vector<std::uint8_t> rel) {
  for (int a = 0; a < size; ++a) rel[a * size + a] = 1;
  for (int k = 0; k < size; ++k)
    for (int a = 0; a < size; ++a)
      if (rel[a * size + k])
        for (int b = 0; b < size; ++b)
          if (rel[k * size + b]) rel[a * size + b] = 1;
  return {size, std::move(rel)};
}

Linearisation linearize_quotient(const Carrier& pre) {
  const int n = pre.size;
  std::vector<int> cls(n, -1);
  int k = 0;
  for (int a = 0; a < n; ++a) {
    if (cls[a] >= 0) continue;
    for (int b = a; b < n; ++b)
      if (cls[b] < 0 && pre.le(a, b) && pre.le(b, a)) cls[b] = k;
    ++k;
  }
  Carrier pos{k, std::vector<std::uint8_t>(static_cast<std::size_t>(k) * k, 0)};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (pre.le(a, b)) pos.order[cls[a] * k + cls[b]] = 1;
  return {pos, Morphism::function(Object(pre), Object(pos), cls)};
}

// ---------------------------------------------------------------------------
// CarrierCategory

std::string CarrierCategory::name() const {
  switch (kind_) {
    case CarrierKind::set: return "FinSet";
    case CarrierKind::preorder: return "FinPre";
    case CarrierKind::poset: return "FinPos";
    case CarrierKind::ordinal: return "FinOrd";
  }
  return "?";
}

void CarrierCategory::check_object(const Object& x) const {
  if (!x.is_carrier())
    throw ValidationError(name() + ": object is not a finite carrier");
  const auto& c = x.carrier();
  if (c.size < 0) throw ValidationError(name() + ": negative size");
  if (!ordered()) {
    if (!c.order.empty())
      throw ValidationError("FinSet objects carry no order");
    return;
  }
  const int n = c.size;
  if (c.order.size() != static_cast<std::size_t>(n) * n)
    throw ValidationError(name() + ": order matrix has the wrong size");
  for (int a = 0; a < n; ++a) {
    if (!c.le(a, a)) throw ValidationError(name() + ": order not reflexive");
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d)
        if (c.le(a, b) && c.le(b, d) && !c.le(a, d))
          throw ValidationError(name() + ": order not transitive");
  }
  if (kind_ == CarrierKind::preorder) return;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (c.le(a, b) && c.le(b, a))
        throw ValidationError(name() + ": order not antisymmetric");
  if (kind_ == CarrierKind::ordinal && !(c == Carrier::ordinal(n)))
    throw ValidationError("FinOrd objects must be ordinals 0 < 1 < ... < n-1");
}

bool CarrierCategory::monotone(const Carrier& s, const Carrier& t,
                               const std::vector<int>& images) const {
  if (!ordered()) return true;
  for (int a = 0; a < s.size; ++a)
    for (int b = 0; b < s.size; ++b)
      if (s.le(a, b) && !t.le(images[a], images[b])) return false;
  return true;
}

void CarrierCategory::check_morphism(const Morphism& f) const {
  check_object(f.source());
  check_object(f.target());
  if (!f.is_function())
    throw ValidationError(name() + ": morphism is not a function");
  const auto& s = carrier_of(f.source());
  const auto& t = carrier_of(f.target());
  if (static_cast<int>(f.images().size()) != s.size)
    throw ValidationError(name() + ": function is not total");
  for (int y : f.images())
    if (y < 0 || y >= t.size)
      throw ValidationError(name() + ": image outside the target");
  if (!monotone(s, t, f.images()))
    throw ValidationError(name() + ": map is not monotone");
}

Morphism CarrierCategory::identity(const Object& x) const {
  std::vector<int> img(carrier_of(x).size);
  std::iota(img.begin(), img.end(), 0);
  return Morphism::function(x, x, std::move(img));
}

Morphism CarrierCategory::compose(const Morphism& g, const Morphism& f) const {
  if (!(f.target() == g.source()))
    throw ValidationError(name() + ": composing non-composable morphisms");
  std::vector<int> img(f.images().size());
  for (std::size_t x = 0; x < img.size(); ++x) img[x] = g(f(x));
  return Morphism::function(f.source(), g.target(), std::move(img));
}

bool CarrierCategory::is_iso(const Morphism& f) const {
  const auto& s = carrier_of(f.source());
  const auto& t = carrier_of(f.target());
  if (s.size != t.size) return false;
  std::vector<int> inv(t.size, -1);
  for (int x = 0; x < s.size; ++x) {
    if (inv[f(x)] >= 0) return false;
    inv[f(x)] = x;
  }
  return monotone(t, s, inv);
}

std::optional<Cone> CarrierCategory::wide_pullback(
    std::span<const Morphism> legs) const {
  const std::size_t k = legs.size();
  // Tuples in lexicographic order.
  std::vector<std::vector<int>> tuples;
  std::vector<int> cur(k);
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == k) {
      tuples.push_back(cur);
      return;
    }
    const int n = carrier_of(legs[i].source()).size;
    for (int x = 0; x < n; ++x) {
      if (i > 0 && legs[i](x) != legs[0](cur[0])) continue;
      cur[i] = x;
      go(i + 1);
    }
  };
  go(0);
  const int n = static_cast<int>(tuples.size());
  Carrier apex{n, {}};
  if (ordered()) {
    apex.order.assign(static_cast<std::size_t>(n) * n, 0);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        bool le = true;
        for (std::size_t i = 0; i < k && le; ++i)
          le = carrier_of(legs[i].source()).le(tuples[a][i], tuples[b][i]);
        apex.order[a * n + b] = le;
      }
    if (kind_ == CarrierKind::ordinal) {
      // Componentwise order refines lexicographic order, so a total result
      // is already listed as 0 < 1 < ... .
      if (!apex.is_total()) return std::nullopt;
      apex = Carrier::ordinal(n);
    }
  }
  Cone cone{Object(apex), {}};
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<int> img(n);
    for (int t = 0; t < n; ++t) img[t] = tuples[t][i];
    cone.projections.push_back(
        Morphism::function(cone.apex, legs[i].source(), std::move(img)));
  }
  return cone;
}

Cocone CarrierCategory::quotient(const Diagram& d) const {
  std::vector<int> offset(d.size() + 1, 0);
  for (int i = 0; i < d.size(); ++i)
    offset[i + 1] = offset[i] + carrier_of(d.object(i)).size;
  const int total = offset.back();
  Classes uf(total);
  for (int i = 0; i < d.size(); ++i)
    for (int j = 0; j < d.size(); ++j)
      if (i != j && d.shape().leq(i, j)) {
        const auto& f = d.arrow(i, j);
        for (int x = 0; x < carrier_of(d.object(i)).size; ++x)
          uf.unite(offset[i] + x, offset[j] + f(x));
      }
  std::vector<int> cls(total, -1);
  int k = 0;
  for (int e = 0; e < total; ++e) {
    int r = uf.find(e);
    if (cls[r] < 0) cls[r] = k++;
    cls[e] = cls[r];
  }
  Carrier apex{k, {}};
  if (ordered()) {
    std::vector<std::uint8_t> rel(static_cast<std::size_t>(k) * k, 0);
    for (int i = 0; i < d.size(); ++i) {
      const auto& c = carrier_of(d.object(i));
      for (int x = 0; x < c.size; ++x)
        for (int y = 0; y < c.size; ++y)
          if (c.le(x, y)) rel[cls[offset[i] + x] * k + cls[offset[i] + y]] = 1;
    }
    apex = preorder_closure(k, std::move(rel));
  }
  Cocone out{Object(apex), {}};
  for (int i = 0; i < d.size(); ++i) {
    std::vector<int> img(carrier_of(d.object(i)).size);
    for (std::size_t x = 0; x < img.size(); ++x)
      img[x] = cls[offset[i] + static_cast<int>(x)];
    out.legs.push_back(Morphism::function(d.object(i), out.apex, img));
  }
  return out;
}

namespace {

Cocone compose_cocone(const Cocone& c, const Morphism& q) {
  Cocone out{q.target(), {}};
  for (const auto& leg : c.legs) {
    std::vector<int> img(leg.images().size());
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = q(leg(x));
    out.legs.push_back(Morphism::function(leg.source(), out.apex, img));
  }
  return out;
}

// Relabels a total poset as an ordinal.
Morphism to_ordinal(const Carrier& pos) {
  std::vector<int> img(pos.size, 0);
  for (int a = 0; a < pos.size; ++a)
    for (int b = 0; b < pos.size; ++b)
      if (b != a && pos.le(b, a)) ++img[a];
  return Morphism::function(Object(pos), Object(Carrier::ordinal(pos.size)),
                            img);
}

}  // namespace

std::optional<Cocone> CarrierCategory::colimit(const Diagram& d) const {
  Cocone q = quotient(d);
  if (kind_ == CarrierKind::set || kind_ == CarrierKind::preorder) return q;
  auto lin = linearize_quotient(q.apex.carrier());
  Cocone p = compose_cocone(q, lin.quotient);
  if (kind_ == CarrierKind::poset) return p;
  if (!lin.poset.is_total()) return std::nullopt;
  return compose_cocone(p, to_ordinal(lin.poset));
}

std::optional<Cocone> CarrierCategory::biased_colimit(const Diagram& d,
                                                      bool lower_first) const {
  if (kind_ != CarrierKind::ordinal)
    throw ValidationError("biased colimits are only defined in FinOrd");
  Cocone q = quotient(d);
  auto lin = linearize_quotient(q.apex.carrier());
  Cocone p = compose_cocone(q, lin.quotient);
  const Carrier& pos = lin.poset;
  if (pos.is_total()) return compose_cocone(p, to_ordinal(pos));
  // Position key of a class: the first (or last) diagram element it meets.
  const int k = pos.size;
  std::vector<int> key(k, lower_first ? d.size() : -1);
  for (int i = 0; i < d.size(); ++i)
    for (int y : p.legs[i].images())
      key[y] = lower_first ? std::min(key[y], i) : std::max(key[y], i);
  // Linear extension of pos choosing by key among available minima.
  std::vector<int> img(k, -1);
  std::vector<bool> placed(k, false);
  for (int next = 0; next < k; ++next) {
    int best = -1;
    for (int a = 0; a < k; ++a) {
      if (placed[a]) continue;
      bool minimal = true;
      for (int b = 0; b < k && minimal; ++b)
        if (!placed[b] && b != a && pos.le(b, a)) minimal = false;
      if (!minimal) continue;
      bool better = best < 0 || (lower_first ? key[a] < key[best]
                                             : key[a] > key[best]);
      if (better) best = a;
    }
    placed[best] = true;
    img[best] = next;
  }
  Morphism ext = Morphism::function(Object(pos), Object(Carrier::ordinal(k)),
                                    std::move(img));
  return compose_cocone(p, ext);
}

std::optional<Morphism> CarrierCategory::mediating(
    const Diagram& d, const Cocone& colim, const Object& apex,
    std::span<const Morphism> legs) const {
  const auto& c = carrier_of(colim.apex);
  std::vector<int> u(c.size, -1);
  for (int i = 0; i < d.size(); ++i)
    for (int x = 0; x < carrier_of(d.object(i)).size; ++x) {
      int cls = colim.legs[i](x);
      int y = legs[i](x);
      if (u[cls] >= 0 && u[cls] != y) return std::nullopt;
      u[cls] = y;
    }
  for (int v : u)
    if (v < 0) return std::nullopt;
  if (!monotone(c, carrier_of(apex), u)) return std::nullopt;
  return Morphism::function(colim.apex, apex, std::move(u));
}

bool CarrierCategory::is_jointly_epic(std::span<const Morphism> legs,
                                      const Object& apex) const {
  std::vector<bool> hit(carrier_of(apex).size, false);
  for (const auto& f : legs)
    for (int y : f.images()) hit[y] = true;
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

SinkFactorisation CarrierCategory::factorise(std::span<const Morphism> legs,
                                             const Object& target) const {
  if (kind_ != CarrierKind::set) missing("a sink factorisation structure");
  const int n = carrier_of(target).size;
  std::vector<bool> hit(n, false);
  for (const auto& f : legs)
    for (int y : f.images()) hit[y] = true;
  std::vector<int> index(n, -1), incl;
  for (int y = 0; y < n; ++y)
    if (hit[y]) {
      index[y] = static_cast<int>(incl.size());
      incl.push_back(y);
    }
  Object image(Carrier::set(static_cast<int>(incl.size())));
  SinkFactorisation out{image, {}, Morphism::function(image, target, incl)};
  for (const auto& f : legs) {
    std::vector<int> img(f.images().size());
    for (std::size_t x = 0; x < img.size(); ++x) img[x] = index[f(x)];
    out.epi_part.push_back(Morphism::function(f.source(), image, img));
  }
  return out;
}

Morphism CarrierCategory::orthogonal_lift(std::span<const Morphism> epi_sink,
                                          const Morphism& mono,
                                          std::span<const Morphism> tops,
                                          const Morphism& bottom) const {
  if (kind_ != CarrierKind::set) missing("orthogonal lifts");
  if (epi_sink.size() != tops.size())
    throw ValidationError("orthogonal lift: one top map per sink member");
  const int n = carrier_of(bottom.source()).size;
  std::vector<int> h(n, -1);
  for (std::size_t k = 0; k < epi_sink.size(); ++k) {
    const auto& e = epi_sink[k];
    for (std::size_t x = 0; x < e.images().size(); ++x) {
      int y = e(x), z = tops[k](x);
      if (mono(z) != bottom(y))
        throw ValidationError("orthogonal lift: square does not commute");
      if (h[y] >= 0 && h[y] != z)
        throw ValidationError("orthogonal lift: top maps disagree");
      h[y] = z;
    }
  }
  for (int y = 0; y < n; ++y) {
    if (h[y] >= 0) continue;
    // Not hit by the sink: the lift is forced by injectivity of the mono.
    for (int z = 0; z < carrier_of(mono.source()).size; ++z)
      if (mono(z) == bottom(y)) h[y] = z;
    if (h[y] < 0)
      throw ValidationError("orthogonal lift: no diagonal exists");
  }
  return Morphism::function(bottom.source(), mono.source(), std::move(h));
}

std::vector<Morphism> CarrierCategory::lifts(const Morphism& f,
                                             const Morphism& leg,
                                             std::size_t limit) const {
  const auto& s = carrier_of(f.source());
  const auto& a = carrier_of(leg.source());
  std::vector<Morphism> out;
  if (limit == 0) return out;
  for_each_function(
      s.size, a.size,
      [&](int x, const std::vector<int>& img) {
        return leg(img[x]) == f(x) && (!ordered() || monotone_step(s, a, x, img));
      },
      [&](const std::vector<int>& img) {
        out.push_back(Morphism::function(f.source(), leg.source(), img));
        return out.size() < limit;
      });
  return out;
}

namespace {

// All relations on n points satisfying the kind's axioms, up to isomorphism.
std::vector<Carrier> ordered_carriers(int n, CarrierKind kind) {
  std::vector<Carrier> out;
  std::set<std::vector<std::uint8_t>> seen;
  const int free = n * (n - 1);
  std::vector<std::pair<int, int>> offdiag;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b) offdiag.emplace_back(a, b);
  std::vector<int> perm(n);
  for (long mask = 0; mask < (1L << free); ++mask) {
    Carrier c{n, std::vector<std::uint8_t>(static_cast<std::size_t>(n) * n, 0)};
    for (int a = 0; a < n; ++a) c.order[a * n + a] = 1;
    for (int t = 0; t < free; ++t)
      if (mask >> t & 1) c.order[offdiag[t].first * n + offdiag[t].second] = 1;
    bool ok = true;
    for (int a = 0; a < n && ok; ++a)
      for (int b = 0; b < n && ok; ++b)
        for (int d = 0; d < n && ok; ++d)
          if (c.le(a, b) && c.le(b, d) && !c.le(a, d)) ok = false;
    if (ok && kind == CarrierKind::poset)
      for (int a = 0; a < n && ok; ++a)
        for (int b = a + 1; b < n && ok; ++b)
          if (c.le(a, b) && c.le(b, a)) ok = false;
    if (!ok) continue;
    // Canonical form: least relabelled matrix.
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint8_t> best;
    do {
      std::vector<std::uint8_t> m(c.order.size());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) m[perm[a] * n + perm[b]] = c.order[a * n + b];
      if (best.empty() || m < best) best = std::move(m);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(best).second) out.push_back({n, best});
  }
  return out;
}

}  // namespace

std::vector<Object> CarrierCategory::objects_up_to(int bound) const {
  std::vector<Object> out;
  for (int n = 0; n <= bound; ++n) {
    switch (kind_) {
      case CarrierKind::set: out.emplace_back(Carrier::set(n)); break;
      case CarrierKind::ordinal: out.emplace_back(Carrier::ordinal(n)); break;
      default:
        if (n > 4) missing("object enumeration beyond four elements");
        for (auto& c : ordered_carriers(n, kind_)) out.emplace_back(c);
    }
  }
  return out;
}

std::vector<Morphism> CarrierCategory::hom(const Object& a,
                                           const Object& b) const {
  const auto& s = carrier_of(a);
  const auto& t = carrier_of(b);
  std::vector<Morphism> out;
  for_each_function(
      s.size, t.size,
      [&](int x, const std::vector<int>& img) {
        return !ordered() || monotone_step(s, t, x, img);
      },
      [&](const std::vector<int>& img) {
        out.push_back(Morphism::function(a, b, img));
        return true;
      });
  return out;
}

std::vector<Morphism> CarrierCategory::automorphisms(const Object& x) const {
  const auto& c = carrier_of(x);
  std::vector<Morphism> out;
  if (kind_ == CarrierKind::ordinal) return {identity(x)};
  std::vector<int> perm(c.size);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    auto f = Morphism::function(x, x, perm);
    if (is_iso(f)) out.push_back(std::move(f));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::optional<Morphism> CarrierCategory::cone_mediating(
    const Cone& cone, const Object& x, std::span<const Morphism> maps) const {
  const int n = carrier_of(x).size;
  const int m = carrier_of(cone.apex).size;
  std::vector<int> u(n, -1);
  for (int e = 0; e < n; ++e)
    for (int t = 0; t < m && u[e] < 0; ++t) {
      bool match = true;
      for (std::size_t k = 0; k < maps.size() && match; ++k)
        match = cone.projections[k](t) == maps[k](e);
      if (match) u[e] = t;
    }
  if (std::find(u.begin(), u.end(), -1) != u.end()) return std::nullopt;
  if (!monotone(carrier_of(x), carrier_of(cone.apex), u)) return std::nullopt;
  return Morphism::function(x, cone.apex, std::move(u));
}

CategoryPtr finset() {
  static const CategoryPtr c =
      std::make_shared<CarrierCategory>(CarrierKind::set);
  return c;
}
CategoryPtr finpre() {
  static const CategoryPtr c =
      std::make_shared<CarrierCategory>(CarrierKind::preorder);
  return c;
}
CategoryPtr finpos() {
  static const CategoryPtr c =
      std::make_shared<CarrierCategory>(CarrierKind::poset);
  return c;
}
CategoryPtr finord() {
  static const CategoryPtr c =
      std::make_shared<CarrierCategory>(CarrierKind::ordinal);
  return c;
}

// ---------------------------------------------------------------------------
// Signature

Signature::Signature(std::vector<Label> labels) : labels_(std::move(labels)) {
  std::set<std::string> names;
  for (const auto& l : labels_) {
    if (l.dim < 0) throw ValidationError("label " + l.name + " has negative dimension");
    if (!names.insert(l.name).second)
      throw ValidationError("duplicate label " + l.name);
  }
  std::sort(labels_.begin(), labels_.end(),
            [](const Label& a, const Label& b) {
              return std::tie(a.dim, a.name) < std::tie(b.dim, b.name);
            });
}

const Label& Signature::label(std::string_view name) const {
  for (const auto& l : labels_)
    if (l.name == name) return l;
  throw ValidationError("unknown label " + std::string(name));
}

void Signature::check_object(const Object& x) const {
  if (!x.is_label()) throw ValidationError("Sigma: object is not a label");
  if (!(label(x.label().name) == x.label()))
    throw ValidationError("Sigma: label " + x.label().name +
                          " has the wrong dimension");
}

void Signature::check_morphism(const Morphism& f) const {
  check_object(f.source());
  check_object(f.target());
  if (!f.is_arrow()) throw ValidationError("Sigma: morphism is not an arrow");
  if (!below(f.source().label(), f.target().label()))
    throw ValidationError("Sigma: no arrow " + f.source().label().name +
                          " -> " + f.target().label().name);
}

Morphism Signature::identity(const Object& x) const {
  return Morphism::arrow(x, x);
}

Morphism Signature::compose(const Morphism& g, const Morphism& f) const {
  if (!(f.target() == g.source()))
    throw ValidationError("Sigma: composing non-composable arrows");
  return Morphism::arrow(f.source(), g.target());
}

bool Signature::is_iso(const Morphism& f) const {
  return f.source() == f.target();
}

std::optional<Label> Signature::meet(const std::vector<Label>& xs) const {
  std::vector<Label> lower;
  for (const auto& p : labels_)
    if (std::all_of(xs.begin(), xs.end(),
                    [&](const Label& x) { return below(p, x); }))
      lower.push_back(p);
  for (const auto& p : lower)
    if (std::all_of(lower.begin(), lower.end(),
                    [&](const Label& q) { return below(q, p); }))
      return p;
  return std::nullopt;
}

std::optional<Label> Signature::join(const std::vector<Label>& xs) const {
  std::vector<Label> upper;
  for (const auto& p : labels_)
    if (std::all_of(xs.begin(), xs.end(),
                    [&](const Label& x) { return below(x, p); }))
      upper.push_back(p);
  for (const auto& p : upper)
    if (std::all_of(upper.begin(), upper.end(),
                    [&](const Label& q) { return below(p, q); }))
      return p;
  return std::nullopt;
}

std::optional<Cone> Signature::wide_pullback(
    std::span<const Morphism> legs) const {
  std::vector<Label> xs;
  for (const auto& f : legs) xs.push_back(f.source().label());
  auto m = meet(xs);
  if (!m) return std::nullopt;
  Cone cone{Object(*m), {}};
  for (const auto& f : legs)
    cone.projections.push_back(Morphism::arrow(cone.apex, f.source()));
  return cone;
}

std::optional<Cocone> Signature::colimit(const Diagram& d) const {
  std::vector<Label> xs;
  for (const auto& o : d.objects()) xs.push_back(o.label());
  auto j = join(xs);
  if (!j) return std::nullopt;
  Cocone c{Object(*j), {}};
  for (const auto& o : d.objects()) c.legs.push_back(Morphism::arrow(o, c.apex));
  return c;
}

std::optional<Morphism> Signature::mediating(const Diagram&,
                                             const Cocone& colim,
                                             const Object& apex,
                                             std::span<const Morphism>) const {
  if (!below(colim.apex.label(), apex.label())) return std::nullopt;
  return Morphism::arrow(colim.apex, apex);
}

bool Signature::is_jointly_epic(std::span<const Morphism>,
                                const Object&) const {
  return true;
}

SinkFactorisation Signature::factorise(std::span<const Morphism> legs,
                                       const Object& target) const {
  std::vector<Label> xs;
  for (const auto& f : legs) xs.push_back(f.source().label());
  auto j = join(xs);
  if (!j) throw NoSuchLimit("Sigma: the sink sources have no join");
  Object image(*j);
  SinkFactorisation out{image, {}, Morphism::arrow(image, target)};
  for (const auto& f : legs)
    out.epi_part.push_back(Morphism::arrow(f.source(), image));
  return out;
}

Morphism Signature::orthogonal_lift(std::span<const Morphism>,
                                    const Morphism& mono,
                                    std::span<const Morphism>,
                                    const Morphism& bottom) const {
  if (!below(bottom.source().label(), mono.source().label()))
    throw ValidationError("Sigma: no diagonal arrow exists");
  return Morphism::arrow(bottom.source(), mono.source());
}

std::vector<Morphism> Signature::lifts(const Morphism& f, const Morphism& leg,
                                       std::size_t limit) const {
  if (limit == 0 || !below(f.source().label(), leg.source().label())) return {};
  return {Morphism::arrow(f.source(), leg.source())};
}

std::vector<Object> Signature::objects_up_to(int) const {
  std::vector<Object> out;
  for (const auto& l : labels_) out.emplace_back(l);
  return out;
}

std::vector<Morphism> Signature::hom(const Object& a, const Object& b) const {
  if (!below(a.label(), b.label())) return {};
  return {Morphism::arrow(a, b)};
}

std::optional<Morphism> Signature::cone_mediating(
    const Cone& cone, const Object& x, std::span<const Morphism>) const {
  if (!below(x.label(), cone.apex.label())) return std::nullopt;
  return Morphism::arrow(x, cone.apex);
}

// ---------------------------------------------------------------------------

Object set_object(int n) { return Object(Carrier::set(n)); }
Object ord_object(int n) { return Object(Carrier::ordinal(n)); }

Morphism ord_map(int n, int m, std::vector<int> images) {
  auto f = Morphism::function(ord_object(n), ord_object(m), std::move(images));
  finord()->check_morphism(f);
  return f;
}

std::vector<int> parse_digits(std::string_view text) {
  std::vector<int> out;
  if (text.find(',') != std::string_view::npos) {
    std::size_t pos = 0;
    while (pos <= text.size()) {
      auto end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      auto part = text.substr(pos, end - pos);
      if (part.empty()) throw ParseError("empty entry in digit list");
      int v = 0;
      for (char c : part) {
        if (c < '0' || c > '9') throw ParseError("bad digit in digit list");
        v = v * 10 + (c - '0');
      }
      out.push_back(v);
      pos = end + 1;
    }
    return out;
  }
  for (char c : text) {
    if (c < '0' || c > '9') throw ParseError(std::string("bad digit '") + c + "'");
    out.push_back(c - '0');
  }
  return out;
}

std::string digits(const std::vector<int>& images) {
  bool wide = std::any_of(images.begin(), images.end(),
                          [](int v) { return v > 9; });
  std::string s;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (wide && i) s += ',';
    s += std::to_string(images[i]);
  }
  return s;
}

}  // namespace acl
