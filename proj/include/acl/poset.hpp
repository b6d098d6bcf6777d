#pragma once

// Finite posets used as diagram shapes, monotone maps between them, and the
// shape toolkit: covering-edge removal, fairness, finality and the
// correspondence with hypergraphs.

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace acl {

/// A finite partial order on named elements.
///
/// Elements are stored sorted by name, so element index order coincides with
/// lexicographic identifier order; every search in the kernel iterates in
/// this order. The order relation is kept fully closed.
class FinPoset {
 public:
  FinPoset() = default;

  /// Builds the reflexive-transitive closure of `relations`. Throws
  /// ValidationError on duplicate names, unknown names or a cycle.
  static FinPoset from_relations(
      std::vector<std::string> names,
      const std::vector<std::pair<std::string, std::string>>& relations);

  /// Takes an already closed relation `le[a * n + b]` over `names` (which
  /// need not be sorted) and checks the partial-order axioms.
  static FinPoset from_matrix(std::vector<std::string> names,
                              const std::vector<std::uint8_t>& le);

  /// The chain 0 < 1 < ... < n-1 with elements named "0".."n-1" (zero-padded
  /// to equal width when n > 10).
  static FinPoset chain(int n);
  static FinPoset discrete(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  /// Throws ValidationError for an unknown identifier.
  int index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  bool leq(int a, int b) const { return le_[a * size() + b] != 0; }
  bool less(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }
  /// `a` is covered by `b`: a < b with nothing strictly between.
  bool covers(int a, int b) const;

  std::vector<int> upper_set(int i) const;
  std::vector<int> upper_max(int i) const;
  std::vector<int> maximal() const;
  std::vector<int> minimal() const;
  bool is_maximal(int i) const;
  bool is_minimal(int i) const;
  std::vector<std::pair<int, int>> covering_pairs() const;
  /// Every non-maximal element is minimal.
  bool is_hypergraph_like() const;
  /// Connected as an undirected comparability graph (empty poset: false).
  bool is_connected() const;
  /// Connectivity of the full sub-poset on `subset`.
  bool is_connected(const std::vector<int>& subset) const;
  /// A linear extension, smaller elements first, ties broken by index.
  std::vector<int> linear_extension() const;

  const std::vector<std::uint8_t>& relation() const { return le_; }

  friend bool operator==(const FinPoset&, const FinPoset&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> le_;
};

/// A monotone map between finite posets, validated on construction.
class MonotoneMap {
 public:
  MonotoneMap(FinPoset source, FinPoset target, std::vector<int> assignment);

  static MonotoneMap identity(const FinPoset& p);

  const FinPoset& source() const { return source_; }
  const FinPoset& target() const { return target_; }
  int operator()(int i) const { return assignment_.at(i); }
  const std::vector<int>& assignment() const { return assignment_; }

 private:
  FinPoset source_;
  FinPoset target_;
  std::vector<int> assignment_;
};

/// H = (V, E, incidence) with non-empty incidence sets.
struct Hypergraph {
  std::vector<std::string> vertices;
  std::vector<std::string> edges;
  std::vector<std::vector<int>> incidence;  // edge -> vertex indices

  void validate() const;
  friend bool operator==(const Hypergraph&, const Hypergraph&) = default;
};

std::vector<int> upper_set(const FinPoset& p, std::string_view element);
std::vector<int> upper_max(const FinPoset& p, std::string_view element);

/// Removes exactly the pair (a, b) from the order; (a, b) must be covering.
FinPoset remove_covering_edge(const FinPoset& p, int a, int b);
FinPoset remove_covering_edge(const FinPoset& p, std::string_view a,
                              std::string_view b);

bool is_fair(const MonotoneMap& f);
bool is_final(const MonotoneMap& f);

FinPoset hypergraph_to_poset(const Hypergraph& h);
/// Throws ValidationError when some non-maximal element is not minimal.
Hypergraph poset_to_hypergraph(const FinPoset& p);

struct HypergraphReduction {
  FinPoset reduced;
  MonotoneMap projection;  // identity on elements, reduced -> original
};

/// Removes covering pairs (a, b) with b non-maximal, lexicographically first
/// pair each round, until the poset is hypergraph-like.
HypergraphReduction reduce_to_hypergraph_like(const FinPoset& p);

/// Renders the literal `poset { elems: [...]; le: [...] }` listing covering
/// pairs only.
std::string to_literal(const FinPoset& p);
FinPoset parse_poset(std::string_view text);

}  // namespace acl
