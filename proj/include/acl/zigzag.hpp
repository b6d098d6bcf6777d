#pragma once

// Zigzags over a base category, zigzag maps and the category Zig=(C) of
// globular maps: ordinal/interval duality, restriction, explosion,
// connected colimits, contraction and the lifted sink factorisation.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "acl/category.hpp"

namespace acl {

/// (Reg f)(i) = min({j | f(j) >= i} u {n}) for f : ord n -> ord m, giving a
/// map ord (m+1) -> ord (n+1) that keeps both endpoints.
std::vector<int> reg_dual(const std::vector<int>& f, int m);
/// The map f with Reg f = g, for an endpoint-preserving monotone
/// g : ord (m+1) -> ord (n+1). Throws ValidationError otherwise.
std::vector<int> reg_inverse(const std::vector<int>& g, int n);
bool is_interval_map(const std::vector<int>& g, int n);

/// Length-0 zigzag on a single regular object.
Zigzag point_zigzag(const Object& x);
/// Throws ValidationError unless the cospans are well-typed in `base`.
void validate_zigzag(const Category& base, const Zigzag& z);

/// Checks every square of a zigzag map and fills in the diagonal slices.
/// Errors name the failing height and square family.
ZigzagMapData validate_zigzag_map(const Category& base, const Zigzag& x,
                                  const Zigzag& y, ZigzagMapData raw);
/// Validated zigzag map as a morphism.
Morphism make_zigzag_map(const Category& base, const Zigzag& x,
                         const Zigzag& y, ZigzagMapData raw);
/// f(r j, s i) of a validated map, for j in f_r([i, i+1]).
const Morphism& diagonal_slice(const Morphism& f, int i, int j);
bool is_globular(const Category& base, const Morphism& f);

Morphism identity_zigzag_map(const Category& base, const Zigzag& x);
/// g . f
Morphism compose_zigzag_maps(const Category& base, const Morphism& g,
                             const Morphism& f);

/// X[a, b]: the cospans between X(r a) and X(r b).
Zigzag restrict(const Zigzag& x, int a, int b);
/// f[a, b] : X[f_r(a), f_r(b)] -> Y[a, b] for a <= b.
Morphism restrict_map(const Category& base, const Morphism& f, int a, int b);

/// Exp_F(J) for F : J -> Ord, as a poset on sites s^x_i and r^x_j.
struct ExplodedShape {
  struct Site {
    int element = 0;
    bool singular = false;
    int index = 0;
  };
  FinPoset poset;
  std::vector<Site> sites;                   // by poset element
  std::vector<std::vector<int>> singular_at;  // [x][i] -> poset element
  std::vector<std::vector<int>> regular_at;   // [x][j] -> poset element
};

/// Explosion shape of an ordinal-valued diagram.
ExplodedShape explosion_shape(const Diagram& lengths);
/// pi . F: lengths and singular maps of a zigzag-valued diagram.
Diagram project_to_ord(const Diagram& f);

struct Explosion {
  ExplodedShape shape;
  Diagram diagram;  // into the base
};
Explosion explode(const Category& base, const Diagram& f);

class ZigCategory;
/// Inverse of explode: rebuilds J -> Zig(C) from an ordinal diagram and a
/// base diagram over its explosion shape. The result need not be globular.
Diagram unexplode(const ZigCategory& zig, const Diagram& lengths,
                  const ExplodedShape& shape, const Diagram& g);
/// All arrows of the diagram are globular maps.
bool is_globular_diagram(const Category& base, const Diagram& f);

/// How to order incomparable heights when the Ord colimit is not total.
enum class Bias { none, left, right };

/// Connected colimit in Zig=(C): Ord colimit of the lengths, then one base
/// colimit per height of the exploded restriction. Throws NoSuchLimit naming
/// the failing stage.
Cocone zigzag_colimit(const ZigCategory& zig, const Diagram& f,
                      Bias bias = Bias::none);

/// Colimit of the fence diagram of X, as the map X -> zz[X(r0) -> C <- X(rn)].
/// Throws NoSuchLimit when the colimit is absent.
Morphism contraction(const Category& base, const Zigzag& x,
                     Bias bias = Bias::none);
/// Contracts heights [a, b) of X to a single height, identity elsewhere.
Morphism contract_range(const Category& base, const Zigzag& x, int a, int b,
                        Bias bias = Bias::none);
/// Extends g : E -> Y[k, k+1] by identities to a map into Y.
Morphism splice_map(const Category& base, const Zigzag& y, int k,
                    const Morphism& g);

/// (Sing(E), Relab(M)) factorisation of a sink of globular maps into y.
SinkFactorisation factorise_zigzag_sink(const Category& base,
                                        std::span<const Morphism> legs,
                                        const Zigzag& y);
/// Every height's sink of singular slices lies in E (checked through the
/// base factorisation having an invertible M part).
bool is_singular_epi(const Category& base, std::span<const Morphism> legs,
                     const Zigzag& y);
/// Globular, identity singular map, every singular slice in M.
bool is_relabelling(const Category& base, const Morphism& m);
/// The unique h : Y -> Z with m . h = g and h . e_i = f_i.
Morphism zigzag_orthogonal_lift(const Category& base,
                                std::span<const Morphism> e_sink,
                                const Morphism& m,
                                std::span<const Morphism> tops,
                                const Morphism& bottom);

/// Zig=(C) over a base category. With `globular_only` false, check_morphism
/// also admits non-globular maps.
class ZigCategory final : public Category {
 public:
  explicit ZigCategory(CategoryPtr base, bool globular_only = true);

  const Category& base() const { return *base_; }
  const CategoryPtr& base_ptr() const { return base_; }
  bool globular_only() const { return globular_only_; }

  std::string name() const override;
  void check_object(const Object& x) const override;
  void check_morphism(const Morphism& f) const override;
  Morphism identity(const Object& x) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  bool is_iso(const Morphism& f) const override;

  std::optional<Cocone> colimit(const Diagram& d) const override;
  bool is_colimit(const Diagram& d, const Object& apex,
                  std::span<const Morphism> legs) const override;
  SinkFactorisation factorise(std::span<const Morphism> legs,
                              const Object& target) const override;
  Morphism orthogonal_lift(std::span<const Morphism> epi_sink,
                           const Morphism& mono,
                           std::span<const Morphism> tops,
                           const Morphism& bottom) const override;
  std::vector<Morphism> lifts(const Morphism& f, const Morphism& leg,
                              std::size_t limit) const override;
  std::vector<Morphism> hom(const Object& a, const Object& b) const override;
  std::vector<Morphism> automorphisms(const Object& x) const override;
  /// Pinned anticolimit problems through the Ord/explosion decomposition.
  std::vector<Diagram> extensions(const ExtensionProblem& problem,
                                  const SearchLimits& limits) const override;

 private:
  // Globular maps x -> y whose singular slices at i are drawn from
  // `slices(i, k)`, k being the chosen image height.
  template <class Slices>
  std::vector<Morphism> enumerate(const Zigzag& x, const Zigzag& y,
                                  Slices&& slices,
                                  const std::vector<int>* singular,
                                  std::size_t limit) const;

  CategoryPtr base_;
  bool globular_only_;
};

/// Zig=^k over a base, sharing instances: level 0 is the base itself.
CategoryPtr zig_tower(const CategoryPtr& base, int level);

}  // namespace acl
