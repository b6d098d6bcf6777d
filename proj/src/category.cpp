#include "acl/category.hpp"

#include <sstream>

#include "acl/errors.hpp"
#include "acl/extension.hpp"

namespace acl {

Diagram Diagram::from_generators(
    const Category& cat, FinPoset shape, std::vector<Object> objects,
    const std::vector<std::tuple<int, int, Morphism>>& generators) {
  const int n = shape.size();
  if (static_cast<int>(objects.size()) != n)
    throw ValidationError("diagram needs one object per shape element");
  Diagram d;
  d.arrows_.assign(static_cast<std::size_t>(n) * n, std::nullopt);
  for (int i = 0; i < n; ++i) d.arrows_[i * n + i] = cat.identity(objects[i]);

  std::vector<std::vector<std::pair<int, const Morphism*>>> out(n);
  for (const auto& [a, b, f] : generators) {
    if (!shape.less(a, b))
      throw ValidationError("generator " + shape.name(a) + " -> " +
                            shape.name(b) + " is not a strict relation");
    if (!(f.source() == objects[a]) || !(f.target() == objects[b]))
      throw ValidationError("generator " + shape.name(a) + " -> " +
                            shape.name(b) + " has the wrong type");
    out[a].emplace_back(b, &f);
  }
  // Process sources from the top down so that arrows out of every target
  // are complete before they are composed with.
  auto order = shape.linear_extension();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int a = *it;
    for (const auto& [b, f] : out[a]) {
      for (int c = 0; c < n; ++c) {
        if (!shape.leq(b, c)) continue;
        Morphism comp = cat.compose(*d.arrows_[b * n + c], *f);
        auto& slot = d.arrows_[a * n + c];
        if (!slot) {
          slot = std::move(comp);
        } else if (!(*slot == comp)) {
          throw ValidationError("diagram is not functorial: two composites " +
                                shape.name(a) + " -> " + shape.name(c) +
                                " differ");
        }
      }
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (shape.leq(a, b) && !d.arrows_[a * n + b])
        throw ValidationError("no generator path " + shape.name(a) + " -> " +
                              shape.name(b));
  d.shape_ = std::move(shape);
  d.objects_ = std::move(objects);
  return d;
}

const Morphism& Diagram::arrow(int a, int b) const {
  const auto& slot = arrows_.at(a * size() + b);
  if (!slot)
    throw ValidationError("no arrow " + shape_.name(a) + " -> " +
                          shape_.name(b));
  return *slot;
}

bool operator==(const Diagram& a, const Diagram& b) {
  return a.shape_ == b.shape_ && a.objects_ == b.objects_ &&
         a.arrows_ == b.arrows_;
}

std::string canonical(const Diagram& d) {
  std::ostringstream os;
  for (int i = 0; i < d.size(); ++i) os << canonical(d.object(i)) << ';';
  for (auto [a, b] : d.shape().covering_pairs())
    os << a << '<' << b << '=' << canonical(d.arrow(a, b)) << ';';
  return os.str();
}

void Category::missing(const std::string& what) const {
  throw CapabilityMissing(name() + " does not provide " + what);
}

std::optional<Cone> Category::wide_pullback(std::span<const Morphism>) const {
  missing("wide pullbacks");
}

std::optional<Cocone> Category::colimit(const Diagram&) const {
  missing("colimits");
}

std::optional<Morphism> Category::mediating(const Diagram&, const Cocone&,
                                            const Object&,
                                            std::span<const Morphism>) const {
  missing("mediating maps");
}

bool Category::is_colimit(const Diagram& d, const Object& apex,
                          std::span<const Morphism> legs) const {
  auto colim = colimit(d);
  if (!colim) return false;
  auto u = mediating(d, *colim, apex, legs);
  return u && is_iso(*u);
}

bool Category::is_jointly_epic(std::span<const Morphism>,
                               const Object&) const {
  missing("joint-epicity tests");
}

SinkFactorisation Category::factorise(std::span<const Morphism>,
                                      const Object&) const {
  missing("a sink factorisation structure");
}

Morphism Category::orthogonal_lift(std::span<const Morphism>, const Morphism&,
                                   std::span<const Morphism>,
                                   const Morphism&) const {
  missing("orthogonal lifts");
}

std::vector<Morphism> Category::lifts(const Morphism&, const Morphism&,
                                      std::size_t) const {
  missing("lift search");
}

std::vector<Object> Category::objects_up_to(int) const {
  missing("object enumeration");
}

std::vector<Morphism> Category::hom(const Object&, const Object&) const {
  missing("hom-set enumeration");
}

std::vector<Morphism> Category::automorphisms(const Object& x) const {
  return {identity(x)};
}

std::optional<Morphism> Category::cone_mediating(
    const Cone&, const Object&, std::span<const Morphism>) const {
  missing("maps into limit cones");
}

std::vector<Diagram> Category::extensions(const ExtensionProblem& problem,
                                          const SearchLimits& limits) const {
  return search_extensions(*this, problem, limits, ExtensionKind::anticolimit);
}

std::optional<Morphism> Category::find_lift(const Morphism& f,
                                            const Morphism& leg) const {
  auto all = lifts(f, leg, 1);
  if (all.empty()) return std::nullopt;
  return all.front();
}

Cone wide_pullback(const Category& cat, std::span<const Morphism> legs) {
  if (legs.empty()) throw ValidationError("wide pullback of an empty family");
  for (const auto& f : legs)
    if (!(f.target() == legs.front().target()))
      throw ValidationError("wide pullback legs do not share a codomain");
  auto cone = cat.wide_pullback(legs);
  if (!cone) throw NoSuchLimit("pullback does not exist in " + cat.name());
  return *cone;
}

Cocone colimit_poset_diagram(const Category& cat, const Diagram& d) {
  auto c = cat.colimit(d);
  if (!c) throw NoSuchLimit("colimit does not exist in " + cat.name());
  return *c;
}

bool is_jointly_epic(const Category& cat, const Sink& sink) {
  return cat.is_jointly_epic(sink.legs, sink.apex);
}

SinkFactorisation factorise_sink(const Category& cat, const Sink& sink) {
  return cat.factorise(sink.legs, sink.apex);
}

std::optional<Morphism> find_lift(const Category& cat, const Morphism& f,
                                  const Morphism& leg) {
  if (!(f.target() == leg.target()))
    throw ValidationError("find_lift: morphisms do not share a codomain");
  return cat.find_lift(f, leg);
}

namespace {

std::optional<std::vector<Morphism>> try_cocone_legs(const Category& cat,
                                                     const Diagram& d,
                                                     const Sink& sink) {
  const auto maxima = d.shape().maximal();
  if (maxima.size() != sink.legs.size())
    throw ValidationError("sink has " + std::to_string(sink.legs.size()) +
                          " legs but the shape has " +
                          std::to_string(maxima.size()) + " maximal elements");
  std::vector<std::optional<Morphism>> leg_of(d.size());
  for (std::size_t k = 0; k < maxima.size(); ++k) {
    if (!(sink.legs[k].source() == d.object(maxima[k])))
      throw ValidationError("sink leg " + std::to_string(k) +
                            " does not start at the diagram object");
    leg_of[maxima[k]] = sink.legs[k];
  }
  std::vector<Morphism> legs(d.size());
  for (int i = 0; i < d.size(); ++i) {
    std::optional<Morphism> found;
    for (int v : d.shape().upper_max(i)) {
      Morphism via = cat.compose(*leg_of[v], d.arrow(i, v));
      if (!found) {
        found = std::move(via);
      } else if (!(*found == via)) {
        return std::nullopt;
      }
    }
    legs[i] = *found;
  }
  return legs;
}

}  // namespace

std::vector<Morphism> cocone_legs(const Category& cat, const Diagram& d,
                                  const Sink& sink) {
  auto legs = try_cocone_legs(cat, d, sink);
  if (!legs) throw ValidationError("sink is not a cocone over the diagram");
  return *legs;
}

bool is_cocone(const Category& cat, const Diagram& d, const Sink& sink) {
  return try_cocone_legs(cat, d, sink).has_value();
}

}  // namespace acl
