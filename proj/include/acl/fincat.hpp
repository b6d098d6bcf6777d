#pragma once

// Concrete finite categories: FinSet, FinPre, FinPos, FinOrd and the
// dimension-ordered label poset of a signature.

#include <string>
#include <string_view>
#include <vector>

#include "acl/category.hpp"

namespace acl {

enum class CarrierKind { set, preorder, poset, ordinal };

/// Finite carriers with functions; ordered kinds require monotone maps.
class CarrierCategory final : public Category {
 public:
  explicit CarrierCategory(CarrierKind kind) : kind_(kind) {}

  CarrierKind kind() const { return kind_; }
  bool ordered() const { return kind_ != CarrierKind::set; }

  std::string name() const override;
  void check_object(const Object& x) const override;
  void check_morphism(const Morphism& f) const override;
  Morphism identity(const Object& x) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  bool is_iso(const Morphism& f) const override;

  std::optional<Cone> wide_pullback(
      std::span<const Morphism> legs) const override;
  std::optional<Cocone> colimit(const Diagram& d) const override;
  std::optional<Morphism> mediating(
      const Diagram& d, const Cocone& colim, const Object& apex,
      std::span<const Morphism> legs) const override;
  bool is_jointly_epic(std::span<const Morphism> legs,
                       const Object& apex) const override;
  SinkFactorisation factorise(std::span<const Morphism> legs,
                              const Object& target) const override;
  Morphism orthogonal_lift(std::span<const Morphism> epi_sink,
                           const Morphism& mono,
                           std::span<const Morphism> tops,
                           const Morphism& bottom) const override;
  std::vector<Morphism> lifts(const Morphism& f, const Morphism& leg,
                              std::size_t limit) const override;
  std::vector<Object> objects_up_to(int bound) const override;
  std::vector<Morphism> hom(const Object& a, const Object& b) const override;
  std::vector<Morphism> automorphisms(const Object& x) const override;
  std::optional<Morphism> cone_mediating(
      const Cone& cone, const Object& x,
      std::span<const Morphism> maps) const override;

  /// Ord colimit where incomparable classes of the Pos colimit are ordered
  /// by where they come from instead of failing: with `lower_first`, classes
  /// meeting earlier diagram elements come first. Identical to colimit()
  /// whenever the Pos colimit is already total. Ordinal kind only.
  std::optional<Cocone> biased_colimit(const Diagram& d,
                                       bool lower_first) const;

 private:
  // Preorder colimit on classes; `order` empty for sets.
  Cocone quotient(const Diagram& d) const;
  bool monotone(const Carrier& s, const Carrier& t,
                const std::vector<int>& images) const;

  CarrierKind kind_;
};

CategoryPtr finset();
CategoryPtr finpre();
CategoryPtr finpos();
CategoryPtr finord();

/// The generator set of a signature with its dimension function; a thin
/// category with f -> g iff f = g or dim f < dim g.
class Signature final : public Category {
 public:
  explicit Signature(std::vector<Label> labels);

  const std::vector<Label>& labels() const { return labels_; }
  /// Throws ValidationError for unknown names.
  const Label& label(std::string_view name) const;
  static bool below(const Label& a, const Label& b) {
    return a == b || a.dim < b.dim;
  }

  std::string name() const override { return "Sigma"; }
  void check_object(const Object& x) const override;
  void check_morphism(const Morphism& f) const override;
  Morphism identity(const Object& x) const override;
  Morphism compose(const Morphism& g, const Morphism& f) const override;
  bool is_iso(const Morphism& f) const override;

  std::optional<Cone> wide_pullback(
      std::span<const Morphism> legs) const override;
  std::optional<Cocone> colimit(const Diagram& d) const override;
  std::optional<Morphism> mediating(
      const Diagram& d, const Cocone& colim, const Object& apex,
      std::span<const Morphism> legs) const override;
  bool is_jointly_epic(std::span<const Morphism> legs,
                       const Object& apex) const override;
  SinkFactorisation factorise(std::span<const Morphism> legs,
                              const Object& target) const override;
  Morphism orthogonal_lift(std::span<const Morphism> epi_sink,
                           const Morphism& mono,
                           std::span<const Morphism> tops,
                           const Morphism& bottom) const override;
  std::vector<Morphism> lifts(const Morphism& f, const Morphism& leg,
                              std::size_t limit) const override;
  std::vector<Object> objects_up_to(int bound) const override;
  std::vector<Morphism> hom(const Object& a, const Object& b) const override;
  std::optional<Morphism> cone_mediating(
      const Cone& cone, const Object& x,
      std::span<const Morphism> maps) const override;

  std::optional<Label> meet(const std::vector<Label>& xs) const;
  std::optional<Label> join(const std::vector<Label>& xs) const;

 private:
  std::vector<Label> labels_;
};

struct Linearisation {
  Carrier poset;
  Morphism quotient;  // preorder -> poset
};

/// Reflection of a preorder into posets: identify a ~ b iff a <= b <= a.
Linearisation linearize_quotient(const Carrier& preorder);

/// Smallest preorder containing `rel` (reflexive-transitive closure).
Carrier preorder_closure(int size, std::vector<std::uint8_t> rel);

/// Shorthands.
Object set_object(int n);
Object ord_object(int n);
Morphism ord_map(int n, int m, std::vector<int> images);
/// Parses "0122" (or "0,1,10" for larger values) into images.
std::vector<int> parse_digits(std::string_view text);
std::string digits(const std::vector<int>& images);

}  // namespace acl
