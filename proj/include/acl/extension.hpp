#pragma once

// Exhaustive search for diagrams extending a pinned part.

#include <string>
#include <vector>

#include "acl/category.hpp"

namespace acl {

/// Every diagram over `problem.shape` agreeing with the pinned part, with
/// free objects drawn from `cat.objects_up_to(limits.bound)` (or the fixed
/// object) and free arrows from `cat.hom`, filtered by `kind`. Results are
/// deduplicated up to automorphisms of the free objects and sorted by
/// canonical form; `max_results` caps how many distinct results are
/// collected (in search order) before sorting.
std::vector<Diagram> search_extensions(const Category& cat,
                                       const ExtensionProblem& problem,
                                       const SearchLimits& limits,
                                       ExtensionKind kind);

/// Canonical form of a diagram up to automorphisms of the objects at the
/// elements flagged in `free`.
std::string canonical_up_to_iso(const Category& cat, const Diagram& d,
                                const std::vector<bool>& free);

/// The problem "extend this sink", with only the maximal elements pinned.
ExtensionProblem sink_problem(const FinPoset& shape, const Sink& sink);

}  // namespace acl
