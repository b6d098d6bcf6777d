#pragma once

// Text front end for n-diagrams over a signature and replayable move scripts.
//
// Diagram literal: a label name at dimension 0, otherwise
//   zz[r0 | f0 > s0 < b0 | r1 | f1 > s1 < b1 | r2]
// with objects one dimension lower. Map literals: `*` between labels,
// `{i0,i1: slice0, slice1}` between zigzags (singular map, then singular
// slices; regular slices are identities).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acl/fincat.hpp"
#include "acl/zigzag.hpp"

namespace acl {

/// "x:0, alpha:2, beta:2"
std::shared_ptr<const Signature> parse_signature(std::string_view text);
std::string print_signature(const Signature& sig);

struct NDiagram {
  int dim = 0;
  Object value;
};

/// Categories Zig=^k(sigma) for one signature.
class DiagramContext {
 public:
  explicit DiagramContext(std::shared_ptr<const Signature> sig);

  const Signature& signature() const { return *sig_; }
  /// The category whose objects are k-diagrams.
  const Category& level(int k) const;
  CategoryPtr level_ptr(int k) const;

  NDiagram parse(std::string_view text) const;
  /// Map literal between two k-diagrams.
  Morphism parse_map(std::string_view text, const Object& source,
                     const Object& target, int k) const;
  std::string print(const NDiagram& d) const;
  std::string print(const Object& x) const;
  std::string print_map(const Morphism& f) const;

 private:
  std::shared_ptr<const Signature> sig_;
};

/// Dimension of an object of the zigzag tower (0 for labels).
int dimension_of(const Object& x);

enum class StepStatus { ok, validation_failed, parse_failed, capability_missing };

struct TraceEntry {
  int step = 0;
  std::string command;
  std::optional<int> pick;
  std::string hash;  // content hash of the printed diagram after the move
  std::vector<std::string> recursive_steps;  // outermost last
  bool round_trip = true;  // anticontraction contracts back exactly
  std::string to_json() const;
};

struct ScriptResult {
  StepStatus status = StepStatus::ok;
  std::string error;          // names the failing step
  std::shared_ptr<const Signature> signature;
  std::optional<NDiagram> initial;
  std::optional<NDiagram> current;
  /// The (n+1)-diagram of all moves: one cospan per move.
  std::optional<Zigzag> history;
  std::vector<TraceEntry> trace;
};

struct ScriptOptions {
  int bound = -1;  // default bound for anticontractions
  int pick = 0;    // default pick for anticontractions
};

/// Runs a move script. Never throws for script-level failures; they are
/// reported through `status` and `error`.
ScriptResult run_script(std::string_view text, const ScriptOptions& options = {});

/// Exit code for a status: 0 ok, 1 validation, 2 parse, 3 capability.
int exit_code(StepStatus s);

}  // namespace acl
