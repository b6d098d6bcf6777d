#pragma once

// Anticontraction: anticolimits in Zig=(C) assembled from Ord and per-height
// base anticolimits, anticontractions of length-1 zigzags and the recursive
// scheme that falls back to factorisation and bubbles.

#include <optional>
#include <string>
#include <vector>

#include "acl/anticolimit.hpp"
#include "acl/zigzag.hpp"

namespace acl {

/// Poset of the hypergraph with vertices 0..n and edges e -> {e, e+1};
/// vertex k is the k-th maximal element.
FinPoset jn_poset(int n);

/// Pinned extension problems in Zig=(C): an Ord extension of the lengths,
/// then for every height of the apex an extension over the exploded shape in
/// the base; candidates are unexploded, kept when globular, concatenated and
/// verified as colimits.
std::vector<Diagram> zigzag_extensions(const ZigCategory& zig,
                                       const ExtensionProblem& problem,
                                       const SearchLimits& limits);
/// Sink-only problems (only the maxima pinned).
std::vector<Diagram> zigzag_anticolimits(const ZigCategory& zig,
                                         const FinPoset& shape,
                                         const Sink& sink,
                                         const SearchLimits& limits);

/// One ingredient of a zigzag anticolimit: the lengths and, per height of
/// the apex, the exploded base diagram.
struct ZigzagAnticolimitParts {
  Diagram lengths;
  std::vector<Diagram> heights;
};
/// Projection used by the embedding into (Ord, exploded heights) pairs.
ZigzagAnticolimitParts decompose(const ZigCategory& zig, const Diagram& a,
                                 const Sink& sink);

struct AnticontractionRequest {
  Zigzag target;                // length 1
  std::vector<Morphism> sink;   // A_0 .. A_n -> target.singular[0]
  int bound = -1;               // -1 picks a default from the sink
  std::size_t max_results = static_cast<std::size_t>(-1);
};

/// Checks the request and throws ValidationError when it is malformed.
void validate_request(const Category& base, const AnticontractionRequest& req);
/// Default size bound: |Pi_e| + 1 over carriers, longest source + 2 over
/// zigzags, 3 otherwise.
int default_bound(const Category& base, const FinPoset& shape, const Sink& sink);

/// All anticontractions up to the bound, in canonical order of the J_n
/// anticolimit, then of the two boundary lifts.
std::vector<Morphism> anticontractions(const Category& base,
                                       const AnticontractionRequest& req);
/// The `pick`-th anticontraction. Throws NoSuchLimit when there are fewer.
Morphism anticontract(const Category& base, const AnticontractionRequest& req,
                      std::size_t pick = 0);

/// f : E -> X with |X| = 1 is a contraction of E: globular and the fence of
/// E with the singular and diagonal slices of f is a colimit.
bool is_contraction_of(const Category& base, const Morphism& f);
/// Contracts the source of f again and compares with f after transporting
/// along the comparison isomorphism of the two colimits (the identity when
/// the base picks colimits canonically). Returns the first mismatch.
std::optional<std::string> contraction_round_trip(const Category& base,
                                                  const Morphism& f);

enum class RecursiveStep { direct, factorised_left, factorised_right, bubble };
std::string to_string(RecursiveStep s);

struct RecursiveResult {
  RecursiveStep step;
  Morphism local;  // E -> X[k, k+1]
  Morphism map;    // spliced into the whole zigzag
};

/// Recursive anticontraction of the singular height k of x along
/// a : A -> x(s k): (a) both boundary lifts, (b) one lift and a factorised
/// other side, (c) a bubble. `pick` selects among anticolimits in (b).
RecursiveResult recursive_anticontract(const Category& base, const Zigzag& x,
                                       int k, const Morphism& a,
                                       int bound = -1, std::size_t pick = 0);

}  // namespace acl
