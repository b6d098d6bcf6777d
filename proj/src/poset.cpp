#include "acl/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "acl/cursor.hpp"
#include "acl/errors.hpp"

namespace acl {

namespace {

// Sorts names and permutes the relation matrix accordingly.
FinPoset sorted_poset(std::vector<std::string> names,
                      std::vector<std::uint8_t> le) {
  const int n = static_cast<int>(names.size());
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return names[a] < names[b]; });
  std::vector<std::string> sorted_names(n);
  std::vector<std::uint8_t> sorted_le(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a) {
    sorted_names[a] = names[perm[a]];
    for (int b = 0; b < n; ++b)
      sorted_le[a * n + b] = le[perm[a] * n + perm[b]];
  }
  return FinPoset::from_matrix(std::move(sorted_names), sorted_le);
}

void check_names(const std::vector<std::string>& names) {
  std::set<std::string> seen;
  for (const auto& nm : names) {
    if (nm.empty()) throw ValidationError("empty element identifier");
    if (!seen.insert(nm).second)
      throw ValidationError("duplicate element identifier '" + nm + "'");
  }
}

}  // namespace

FinPoset FinPoset::from_relations(
    std::vector<std::string> names,
    const std::vector<std::pair<std::string, std::string>>& relations) {
  check_names(names);
  const int n = static_cast<int>(names.size());
  auto idx = [&](const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end())
      throw ValidationError("unknown element '" + s + "' in relation");
    return static_cast<int>(it - names.begin());
  };
  std::vector<std::uint8_t> le(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) le[i * n + i] = 1;
  for (const auto& [a, b] : relations) le[idx(a) * n + idx(b)] = 1;
  // Warshall closure.
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (le[i * n + k])
        for (int j = 0; j < n; ++j)
          if (le[k * n + j]) le[i * n + j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (le[i * n + j] && le[j * n + i])
        throw ValidationError("relation violates antisymmetry between '" +
                              names[i] + "' and '" + names[j] + "'");
  return sorted_poset(std::move(names), std::move(le));
}

FinPoset FinPoset::from_matrix(std::vector<std::string> names,
                               const std::vector<std::uint8_t>& le) {
  check_names(names);
  const int n = static_cast<int>(names.size());
  if (le.size() != static_cast<std::size_t>(n) * n)
    throw ValidationError("relation matrix has wrong size");
  if (!std::is_sorted(names.begin(), names.end())) return sorted_poset(names, le);
  for (int i = 0; i < n; ++i)
    if (!le[i * n + i]) throw ValidationError("relation is not reflexive");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && le[i * n + j] && le[j * n + i])
        throw ValidationError("relation is not antisymmetric");
      if (le[i * n + j])
        for (int k = 0; k < n; ++k)
          if (le[j * n + k] && !le[i * n + k])
            throw ValidationError("relation is not transitive");
    }
  FinPoset p;
  p.names_ = std::move(names);
  p.le_ = le;
  return p;
}

FinPoset FinPoset::chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> rel;
  // Zero-padded so that name order matches numeric order.
  const std::size_t width = std::to_string(n > 0 ? n - 1 : 0).size();
  auto label = [&](int i) {
    std::string s = std::to_string(i);
    return std::string(width - s.size(), '0') + s;
  };
  for (int i = 0; i < n; ++i) {
    names.push_back(label(i));
    if (i > 0) rel.emplace_back(label(i - 1), label(i));
  }
  return from_relations(std::move(names), rel);
}

FinPoset FinPoset::discrete(std::vector<std::string> names) {
  return from_relations(std::move(names), {});
}

int FinPoset::index_of(std::string_view name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name)
    throw ValidationError("unknown element '" + std::string(name) + "'");
  return static_cast<int>(it - names_.begin());
}

bool FinPoset::contains(std::string_view name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

bool FinPoset::covers(int a, int b) const {
  if (!less(a, b)) return false;
  for (int c = 0; c < size(); ++c)
    if (less(a, c) && less(c, b)) return false;
  return true;
}

std::vector<int> FinPoset::upper_set(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (leq(i, j)) out.push_back(j);
  return out;
}

std::vector<int> FinPoset::upper_max(int i) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (leq(i, j) && is_maximal(j)) out.push_back(j);
  return out;
}

bool FinPoset::is_maximal(int i) const {
  for (int j = 0; j < size(); ++j)
    if (less(i, j)) return false;
  return true;
}

bool FinPoset::is_minimal(int i) const {
  for (int j = 0; j < size(); ++j)
    if (less(j, i)) return false;
  return true;
}

std::vector<int> FinPoset::maximal() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_maximal(i)) out.push_back(i);
  return out;
}

std::vector<int> FinPoset::minimal() const {
  std::vector<int> out;
  for (int i = 0; i < size(); ++i)
    if (is_minimal(i)) out.push_back(i);
  return out;
}

std::vector<std::pair<int, int>> FinPoset::covering_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < size(); ++a)
    for (int b = 0; b < size(); ++b)
      if (covers(a, b)) out.emplace_back(a, b);
  return out;
}

bool FinPoset::is_hypergraph_like() const {
  for (int i = 0; i < size(); ++i)
    if (!is_maximal(i) && !is_minimal(i)) return false;
  return true;
}

bool FinPoset::is_connected() const {
  std::vector<int> all(size());
  std::iota(all.begin(), all.end(), 0);
  return is_connected(all);
}

bool FinPoset::is_connected(const std::vector<int>& subset) const {
  if (subset.empty()) return false;
  std::vector<char> seen(subset.size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    std::size_t k = stack.back();
    stack.pop_back();
    for (std::size_t m = 0; m < subset.size(); ++m)
      if (!seen[m] && comparable(subset[k], subset[m])) {
        seen[m] = 1;
        ++count;
        stack.push_back(m);
      }
  }
  return count == subset.size();
}

std::vector<int> FinPoset::linear_extension() const {
  std::vector<int> order;
  std::vector<char> placed(size(), 0);
  while (static_cast<int>(order.size()) < size()) {
    for (int i = 0; i < size(); ++i) {
      if (placed[i]) continue;
      bool ready = true;
      for (int j = 0; j < size() && ready; ++j)
        if (!placed[j] && less(j, i)) ready = false;
      if (ready) {
        placed[i] = 1;
        order.push_back(i);
        break;
      }
    }
  }
  return order;
}

MonotoneMap::MonotoneMap(FinPoset source, FinPoset target,
                         std::vector<int> assignment)
    : source_(std::move(source)),
      target_(std::move(target)),
      assignment_(std::move(assignment)) {
  if (static_cast<int>(assignment_.size()) != source_.size())
    throw ValidationError("monotone map is not total");
  for (int v : assignment_)
    if (v < 0 || v >= target_.size())
      throw ValidationError("monotone map leaves its target");
  for (int a = 0; a < source_.size(); ++a)
    for (int b = 0; b < source_.size(); ++b)
      if (source_.leq(a, b) && !target_.leq(assignment_[a], assignment_[b]))
        throw ValidationError("map is not monotone at (" + source_.name(a) +
                              ", " + source_.name(b) + ")");
}

MonotoneMap MonotoneMap::identity(const FinPoset& p) {
  std::vector<int> a(p.size());
  std::iota(a.begin(), a.end(), 0);
  return MonotoneMap(p, p, std::move(a));
}

void Hypergraph::validate() const {
  std::set<std::string> ids(vertices.begin(), vertices.end());
  if (ids.size() != vertices.size())
    throw ValidationError("duplicate vertex identifier");
  for (const auto& e : edges)
    if (!ids.insert(e).second)
      throw ValidationError("hyperedge identifier '" + e +
                            "' clashes with another identifier");
  if (incidence.size() != edges.size())
    throw ValidationError("incidence must be given for every hyperedge");
  for (const auto& inc : incidence) {
    if (inc.empty()) throw ValidationError("hyperedge with empty incidence");
    for (int v : inc)
      if (v < 0 || v >= static_cast<int>(vertices.size()))
        throw ValidationError("incidence names an unknown vertex");
  }
}

std::vector<int> upper_set(const FinPoset& p, std::string_view element) {
  return p.upper_set(p.index_of(element));
}

std::vector<int> upper_max(const FinPoset& p, std::string_view element) {
  return p.upper_max(p.index_of(element));
}

FinPoset remove_covering_edge(const FinPoset& p, int a, int b) {
  if (!p.covers(a, b))
    throw ValidationError("(" + p.name(a) + ", " + p.name(b) +
                          ") is not a covering pair");
  auto le = p.relation();
  le[a * p.size() + b] = 0;
  return FinPoset::from_matrix(p.names(), le);
}

FinPoset remove_covering_edge(const FinPoset& p, std::string_view a,
                              std::string_view b) {
  return remove_covering_edge(p, p.index_of(a), p.index_of(b));
}

bool is_fair(const MonotoneMap& f) {
  const FinPoset& I = f.source();
  const FinPoset& J = f.target();
  const auto max_i = I.maximal();
  for (int i : max_i)
    if (!J.is_maximal(f(i))) return false;
  for (int j : J.maximal()) {
    bool hit = std::any_of(max_i.begin(), max_i.end(),
                           [&](int i) { return f(i) == j; });
    if (!hit) return false;
  }
  for (int j = 0; j < J.size(); ++j)
    for (int i1 : max_i)
      for (int i2 : max_i) {
        if (!J.leq(j, f(i1)) || !J.leq(j, f(i2))) continue;
        bool lifted = false;
        for (int i0 = 0; i0 < I.size() && !lifted; ++i0)
          lifted = I.leq(i0, i1) && I.leq(i0, i2) && f(i0) == j;
        if (!lifted) return false;
      }
  return true;
}

bool is_final(const MonotoneMap& f) {
  const FinPoset& I = f.source();
  const FinPoset& J = f.target();
  for (int j = 0; j < J.size(); ++j) {
    std::vector<int> pre;
    for (int i = 0; i < I.size(); ++i)
      if (J.leq(j, f(i))) pre.push_back(i);
    if (!I.is_connected(pre)) return false;
  }
  return true;
}

FinPoset hypergraph_to_poset(const Hypergraph& h) {
  h.validate();
  std::vector<std::string> names = h.vertices;
  names.insert(names.end(), h.edges.begin(), h.edges.end());
  std::vector<std::pair<std::string, std::string>> rel;
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    for (int v : h.incidence[e]) rel.emplace_back(h.edges[e], h.vertices[v]);
  return FinPoset::from_relations(std::move(names), rel);
}

Hypergraph poset_to_hypergraph(const FinPoset& p) {
  if (!p.is_hypergraph_like())
    throw ValidationError(
        "poset is not hypergraph-like: a non-maximal element is not minimal");
  Hypergraph h;
  std::vector<int> vertex_of(p.size(), -1);
  for (int i : p.maximal()) {
    vertex_of[i] = static_cast<int>(h.vertices.size());
    h.vertices.push_back(p.name(i));
  }
  for (int i = 0; i < p.size(); ++i) {
    if (p.is_maximal(i)) continue;
    h.edges.push_back(p.name(i));
    std::vector<int> inc;
    for (int v : p.upper_max(i)) inc.push_back(vertex_of[v]);
    h.incidence.push_back(std::move(inc));
  }
  return h;
}

HypergraphReduction reduce_to_hypergraph_like(const FinPoset& p) {
  FinPoset current = p;
  for (;;) {
    // Index order is lexicographic, so the first hit is the least pair.
    bool removed = false;
    for (int a = 0; a < current.size() && !removed; ++a)
      for (int b = 0; b < current.size() && !removed; ++b)
        if (!current.is_maximal(b) && current.covers(a, b)) {
          current = remove_covering_edge(current, a, b);
          removed = true;
        }
    if (!removed) break;
  }
  std::vector<int> ident(p.size());
  std::iota(ident.begin(), ident.end(), 0);
  MonotoneMap proj(current, p, std::move(ident));
  return {std::move(current), std::move(proj)};
}

std::string to_literal(const FinPoset& p) {
  std::ostringstream os;
  os << "poset { elems: [";
  for (int i = 0; i < p.size(); ++i) os << (i ? "," : "") << p.name(i);
  os << "]; le: [";
  bool first = true;
  for (auto [a, b] : p.covering_pairs()) {
    os << (first ? "" : ",") << '(' << p.name(a) << ',' << p.name(b) << ')';
    first = false;
  }
  os << "] }";
  return os.str();
}

FinPoset parse_poset(std::string_view text) {
  Cursor c(text);
  c.expect("poset");
  c.expect("{");
  c.expect("elems");
  c.expect(":");
  c.expect("[");
  std::vector<std::string> names;
  if (!c.accept("]")) {
    do names.push_back(c.identifier());
    while (c.accept(","));
    c.expect("]");
  }
  std::vector<std::pair<std::string, std::string>> rel;
  if (c.accept(";")) {
    if (c.accept("le")) {
      c.expect(":");
      c.expect("[");
      if (!c.accept("]")) {
        do {
          c.expect("(");
          std::string a = c.identifier();
          c.expect(",");
          std::string b = c.identifier();
          c.expect(")");
          rel.emplace_back(std::move(a), std::move(b));
        } while (c.accept(","));
        c.expect("]");
      }
    }
  }
  c.expect("}");
  if (!c.at_end()) c.fail("trailing input after poset literal");
  return FinPoset::from_relations(std::move(names), rel);
}

}  // namespace acl
