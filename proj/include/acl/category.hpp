#pragma once

// The uniform category interface and poset-shaped diagrams.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "acl/poset.hpp"
#include "acl/value.hpp"

namespace acl {

class Category;

struct Cone {
  Object apex;
  std::vector<Morphism> projections;
};

/// Legs from every element of a diagram (or every member of a sink).
struct Cocone {
  Object apex;
  std::vector<Morphism> legs;
};

/// A family of morphisms with common codomain.
struct Sink {
  std::vector<Morphism> legs;
  Object apex;
};

struct SinkFactorisation {
  Object image;
  std::vector<Morphism> epi_part;  // the E-sink
  Morphism mono_part;              // the M-morphism
};

/// A functor from a finite poset, stored with a morphism for every pair
/// a <= b (identities included).
class Diagram {
 public:
  Diagram() = default;

  /// Composes generators along every chain and checks that composites
  /// agree. Generators must cover every covering pair of `shape`.
  static Diagram from_generators(
      const Category& cat, FinPoset shape, std::vector<Object> objects,
      const std::vector<std::tuple<int, int, Morphism>>& generators);

  const FinPoset& shape() const { return shape_; }
  int size() const { return shape_.size(); }
  const Object& object(int i) const { return objects_.at(i); }
  const std::vector<Object>& objects() const { return objects_; }
  /// The morphism D(a <= b).
  const Morphism& arrow(int a, int b) const;

  /// Same shape, objects and arrows.
  friend bool operator==(const Diagram& a, const Diagram& b);

 private:
  FinPoset shape_;
  std::vector<Object> objects_;
  std::vector<std::optional<Morphism>> arrows_;  // n * n
};

/// An extension problem: find diagrams over `shape` that agree with the
/// pinned part (an up-closed set containing every maximal element) and make
/// `sink` a colimit. Free elements may carry a fixed object.
struct ExtensionProblem {
  FinPoset shape;
  std::vector<std::optional<Object>> objects;  // required where pinned
  std::vector<bool> pinned;
  /// Arrows a -> b for (at least) every covering pair inside the pinned part.
  std::vector<std::tuple<int, int, Morphism>> pinned_arrows;
  Sink sink;  // one leg per maximal element, increasing index order
};

/// Which extensions a search keeps.
enum class ExtensionKind { any, anticocone, anticolimit };

struct SearchLimits {
  int bound = 3;  // size bound on free objects
  std::size_t max_results = static_cast<std::size_t>(-1);
};

/// Stable serialisation of a diagram (objects, then arrows on covering
/// pairs) used to sort and deduplicate results.
std::string canonical(const Diagram& d);

/// Morphisms of a finite category, with optional capabilities. A capability
/// the instance does not provide throws CapabilityMissing.
class Category {
 public:
  virtual ~Category() = default;

  virtual std::string name() const = 0;
  /// Throw ValidationError when the value is not in the category.
  virtual void check_object(const Object& x) const = 0;
  virtual void check_morphism(const Morphism& f) const = 0;
  virtual Morphism identity(const Object& x) const = 0;
  /// g . f
  virtual Morphism compose(const Morphism& g, const Morphism& f) const = 0;
  virtual bool is_iso(const Morphism& f) const = 0;

  /// Limit of a non-empty family with shared codomain; nullopt when the
  /// limit does not exist (or cannot be decided by this instance).
  virtual std::optional<Cone> wide_pullback(
      std::span<const Morphism> legs) const;
  /// Colimit of a connected diagram; nullopt when it does not exist.
  virtual std::optional<Cocone> colimit(const Diagram& d) const;
  /// The map u : colim.apex -> apex with u . colim.legs[i] = legs[i].
  virtual std::optional<Morphism> mediating(
      const Diagram& d, const Cocone& colim, const Object& apex,
      std::span<const Morphism> legs) const;
  /// Whether `legs` (one per diagram element) form a colimit cocone.
  virtual bool is_colimit(const Diagram& d, const Object& apex,
                          std::span<const Morphism> legs) const;
  virtual bool is_jointly_epic(std::span<const Morphism> legs,
                               const Object& apex) const;
  virtual SinkFactorisation factorise(std::span<const Morphism> legs,
                                      const Object& target) const;
  virtual Morphism orthogonal_lift(std::span<const Morphism> epi_sink,
                                   const Morphism& mono,
                                   std::span<const Morphism> tops,
                                   const Morphism& bottom) const;
  /// Morphisms h with leg . h = f, in deterministic order, at most `limit`.
  virtual std::vector<Morphism> lifts(const Morphism& f, const Morphism& leg,
                                      std::size_t limit) const;
  /// Representatives of all objects up to isomorphism with size <= bound.
  virtual std::vector<Object> objects_up_to(int bound) const;
  virtual std::vector<Morphism> hom(const Object& a, const Object& b) const;
  virtual std::vector<Morphism> automorphisms(const Object& x) const;

  /// The map u : x -> cone.apex with cone.projections[k] . u = maps[k].
  virtual std::optional<Morphism> cone_mediating(
      const Cone& cone, const Object& x, std::span<const Morphism> maps) const;
  /// Anticolimit extensions of a pinned problem, deduplicated up to
  /// isomorphism fixing the pinned part and sorted canonically. The default
  /// is an exhaustive search over objects_up_to and hom.
  virtual std::vector<Diagram> extensions(const ExtensionProblem& problem,
                                          const SearchLimits& limits) const;

  std::optional<Morphism> find_lift(const Morphism& f,
                                    const Morphism& leg) const;

 protected:
  [[noreturn]] void missing(const std::string& what) const;
};

using CategoryPtr = std::shared_ptr<const Category>;

/// Throws NoSuchLimit when the pullback is absent.
Cone wide_pullback(const Category& cat, std::span<const Morphism> legs);
/// Throws NoSuchLimit when the colimit is absent.
Cocone colimit_poset_diagram(const Category& cat, const Diagram& d);
bool is_jointly_epic(const Category& cat, const Sink& sink);
SinkFactorisation factorise_sink(const Category& cat, const Sink& sink);
std::optional<Morphism> find_lift(const Category& cat, const Morphism& f,
                                  const Morphism& leg);

/// Legs for every element of `d`, obtained from a sink over max of its shape
/// (sink legs in increasing element order) by precomposition. Throws
/// ValidationError when the sink is not a cocone over `d`.
std::vector<Morphism> cocone_legs(const Category& cat, const Diagram& d,
                                  const Sink& sink);
/// Whether the sink over max(shape) is a cocone over `d`.
bool is_cocone(const Category& cat, const Diagram& d, const Sink& sink);

}  // namespace acl
