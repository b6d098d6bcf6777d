#pragma once

// Anticocones and anticolimits: the canonical pullback anticocone, existence,
// bounded enumeration in FinSet and FinOrd, change of shape and antipushouts.

#include <optional>
#include <string>
#include <vector>

#include "acl/category.hpp"
#include "acl/extension.hpp"
#include "acl/poset.hpp"

namespace acl {

/// A diagram over `shape` extending the sink's sources such that the sink is
/// a cocone over it.
struct Anticocone {
  FinPoset shape;
  Sink sink;
  Diagram extension;
};

/// Components eta_i : A i -> B i, identities on maximal elements.
struct AnticoconeMorphism {
  std::vector<Morphism> components;
};

/// Throws ValidationError unless A agrees with the sink on max(shape) and
/// the sink is a cocone over it.
void validate_anticocone(const Category& cat, const Anticocone& a);
/// Whether eta is natural and trivial on maximal elements.
bool is_anticocone_morphism(const Category& cat, const Anticocone& from,
                            const Anticocone& to, const AnticoconeMorphism& eta);

/// Pi(kappa): wide pullbacks of the legs above each element; nullopt when a
/// pullback is missing.
std::optional<Anticocone> canonical_anticocone(const Category& cat,
                                               const FinPoset& shape,
                                               const Sink& sink);
/// The unique morphism A -> Pi.
AnticoconeMorphism terminal_morphism(const Category& cat, const Anticocone& a,
                                     const Anticocone& pi);
bool is_anticolimit(const Category& cat, const Anticocone& a);

struct ExistenceResult {
  bool exists = false;
  /// True when decided by the canonical anticocone; false when it was
  /// missing and the answer comes from a bounded search (then `exists` =
  /// false only means "none up to `bound`").
  bool decided = true;
  int bound = 0;
};
ExistenceResult anticolimits_exist(const Category& cat, const FinPoset& shape,
                                   const Sink& sink, int fallback_bound = 3);

struct SetEnumeration {
  int bound = 3;
  std::size_t max_results = static_cast<std::size_t>(-1);
  bool parallel = true;
};

/// The FinSet scheme over a hypergraph-like shape: for each non-maximal
/// element e choose a carrier of size <= bound mapping to the pullback of
/// the legs above e, and keep the families whose quotient is the apex.
std::vector<Anticocone> enumerate_set_anticolimits(const FinPoset& shape,
                                                   const Sink& sink,
                                                   const SetEnumeration& opts);
/// Hypergraph convenience overload (shape from hypergraph_to_poset).
std::vector<Anticocone> enumerate_set_anticolimits(const Hypergraph& h,
                                                   const Sink& sink,
                                                   const SetEnumeration& opts);

/// FinOrd anticolimits through the chain Set -> Pre -> Pos -> Ord.
std::vector<Anticocone> enumerate_ord_anticolimits(const FinPoset& shape,
                                                   const Sink& sink, int bound);

/// Extends an I-anticolimit along a fair and final map I -> J that is a
/// bijection on elements, filling in the arrows of J not present in I.
/// Throws ValidationError when f is not fair and final.
std::optional<Anticocone> change_of_shape(const Category& cat,
                                          const MonotoneMap& f,
                                          const Sink& sink,
                                          const Anticocone& a);

/// Anticolimits of a sink over any shape in any supported category,
/// dispatching to the FinSet scheme, the FinOrd chain or the category's own
/// extension search.
std::vector<Anticocone> enumerate_anticolimits(const Category& cat,
                                               const FinPoset& shape,
                                               const Sink& sink,
                                               const SearchLimits& limits);

/// The span shape {0, 1 > e0} used for antipushouts.
FinPoset span_shape();

struct Span {
  Object apex;
  Morphism left;
  Morphism right;
};
/// All antipushouts of the cospan (f, g) up to `bound`.
std::vector<Span> antipushout(const Category& cat, const Morphism& f,
                              const Morphism& g, int bound);
/// Bicartesian criterion: the pullback of (f, g) exists and is a pushout.
std::optional<bool> bicartesian(const Category& cat, const Morphism& f,
                                const Morphism& g);

struct LemmaReport {
  bool passed = true;
  std::string failure;  // first counterexample
  long anticocones = 0;
  long anticolimits = 0;
  long morphisms = 0;
};

/// Audits the sieve, cosieve, pointwise-epi, joint-epicity and terminality
/// properties over all extensions with free objects of size <= bound.
/// `extra` anticocones are added to the audited population unchecked, which
/// lets tests seed faults.
LemmaReport check_lemma_suite(const Category& cat, const FinPoset& shape,
                              const Sink& sink, int bound,
                              const std::vector<Diagram>& extra = {});

/// Anticocone of a diagram over `shape` whose maxima carry the sink sources.
Anticocone make_anticocone(const FinPoset& shape, const Sink& sink,
                           Diagram extension);

}  // namespace acl
