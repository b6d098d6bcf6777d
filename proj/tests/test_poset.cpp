#include <random>

#include "acl/errors.hpp"
#include "acl/poset.hpp"
#include "doctest.h"

using namespace acl;

namespace {

FinPoset P(std::vector<std::string> names,
           std::vector<std::pair<std::string, std::string>> rel) {
  return FinPoset::from_relations(std::move(names), rel);
}

std::vector<std::string> names_of(const FinPoset& p,
                                  const std::vector<int>& idx) {
  std::vector<std::string> out;
  for (int i : idx) out.push_back(p.name(i));
  return out;
}

FinPoset diamond() {
  return P({"a", "b", "d", "t"}, {{"d", "a"}, {"d", "b"}, {"a", "t"}, {"b", "t"}});
}

// Every naturally labelled poset on n points (relations only go upwards in
// index order, so every isomorphism class appears at least once).
std::vector<FinPoset> natural_posets(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) slots.emplace_back(a, b);
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  std::vector<FinPoset> out;
  for (long mask = 0; mask < (1L << slots.size()); ++mask) {
    std::vector<std::uint8_t> le(n * n, 0);
    for (int i = 0; i < n; ++i) le[i * n + i] = 1;
    for (std::size_t t = 0; t < slots.size(); ++t)
      if (mask >> t & 1) le[slots[t].first * n + slots[t].second] = 1;
    bool closed = true;
    for (int a = 0; a < n && closed; ++a)
      for (int b = 0; b < n && closed; ++b)
        for (int c = 0; c < n && closed; ++c)
          if (le[a * n + b] && le[b * n + c] && !le[a * n + c]) closed = false;
    if (closed) out.push_back(FinPoset::from_matrix(names, le));
  }
  return out;
}

}  // namespace

TEST_CASE("upper sets") {
  auto c = FinPoset::chain(3);
  CHECK(names_of(c, upper_set(c, "0")) == std::vector<std::string>{"0", "1", "2"});
  CHECK(names_of(c, upper_max(c, "0")) == std::vector<std::string>{"2"});
  auto span = P({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  CHECK(names_of(span, upper_max(span, "a")) == std::vector<std::string>{"b", "c"});
  Hypergraph j2{{"0", "1", "2"}, {"e0", "e1"}, {{0, 1}, {1, 2}}};
  auto jp = hypergraph_to_poset(j2);
  CHECK(names_of(jp, upper_max(jp, "e0")) == std::vector<std::string>{"0", "1"});
  CHECK_THROWS_AS(upper_set(c, "7"), ValidationError);
}

TEST_CASE("chain names follow numeric order") {
  auto c = FinPoset::chain(12);
  for (int i = 0; i + 1 < 12; ++i) CHECK(c.covers(i, i + 1));
  CHECK(c.name(0) == "00");
}

TEST_CASE("construction rejects bad relations") {
  CHECK_THROWS_AS(P({"a", "b"}, {{"a", "b"}, {"b", "a"}}), ValidationError);
  CHECK_THROWS_AS(P({"a", "a"}, {}), ValidationError);
  CHECK_THROWS_AS(P({"a"}, {{"a", "z"}}), ValidationError);
}

TEST_CASE("random relations: cycles are rejected, acyclic ones accepted") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 2 + static_cast<int>(rng() % 5);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    std::vector<std::pair<std::string, std::string>> rel;
    std::vector<std::uint8_t> reach(n * n, 0);
    for (int i = 0; i < n; ++i) reach[i * n + i] = 1;
    for (int k = 0; k < n; ++k) {
      int a = rng() % n, b = rng() % n;
      if (a == b) continue;
      rel.emplace_back(names[a], names[b]);
      reach[a * n + b] = 1;
    }
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (reach[i * n + k] && reach[k * n + j]) reach[i * n + j] = 1;
    bool cyclic = false;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (reach[i * n + j] && reach[j * n + i]) cyclic = true;
    if (cyclic) {
      CHECK_THROWS_AS(P(names, rel), ValidationError);
    } else {
      auto p = P(names, rel);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(p.leq(p.index_of(names[i]), p.index_of(names[j])) ==
                (reach[i * n + j] != 0));
    }
  }
}

TEST_CASE("remove covering edge") {
  auto r = remove_covering_edge(diamond(), "d", "a");
  // Oracle: the expected closed relation written out by hand.
  auto expected = P({"a", "b", "d", "t"}, {{"d", "b"}, {"d", "t"}, {"a", "t"}, {"b", "t"}});
  CHECK(r == expected);
  CHECK(!r.leq(r.index_of("d"), r.index_of("a")));
  MonotoneMap incl(r, diamond(), {0, 1, 2, 3});
  CHECK(incl.source().size() == 4);

  auto extra = P({"a", "b", "c", "m"}, {{"a", "b"}, {"a", "c"}, {"a", "m"}, {"m", "b"}});
  CHECK_THROWS_AS(remove_covering_edge(extra, "a", "b"), ValidationError);
  CHECK(extra.leq(extra.index_of("a"), extra.index_of("b")));

  auto two = remove_covering_edge(FinPoset::chain(2), "0", "1");
  CHECK(two == FinPoset::discrete({"0", "1"}));
}

TEST_CASE("fair and final examples") {
  auto span = P({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  auto point = FinPoset::discrete({"*"});
  auto id = MonotoneMap::identity(span);
  CHECK(is_fair(id));
  CHECK(is_final(id));
  MonotoneMap collapse(span, point, {0, 0, 0});
  CHECK(is_fair(collapse));
  MonotoneMap two_to_one(FinPoset::discrete({"x", "y"}), point, {0, 0});
  CHECK(!is_final(two_to_one));

  auto red = remove_covering_edge(diamond(), "d", "a");
  MonotoneMap lemma(red, diamond(), {0, 1, 2, 3});
  CHECK(is_fair(lemma));
  CHECK(is_final(lemma));
}

TEST_CASE("hypergraph correspondence") {
  Hypergraph single{{"v"}, {}, {}};
  CHECK(hypergraph_to_poset(single) == FinPoset::discrete({"v"}));
  Hypergraph j2{{"0", "1", "2"}, {"e0", "e1"}, {{0, 1}, {1, 2}}};
  auto p = hypergraph_to_poset(j2);
  CHECK(p.size() == 5);
  CHECK(poset_to_hypergraph(p) == j2);
  CHECK_THROWS_AS(poset_to_hypergraph(FinPoset::chain(3)), ValidationError);
}

TEST_CASE("reduce to hypergraph-like") {
  auto span = P({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}});
  auto same = reduce_to_hypergraph_like(span);
  CHECK(same.reduced == span);

  auto chain = reduce_to_hypergraph_like(FinPoset::chain(3));
  CHECK(chain.reduced == P({"0", "1", "2"}, {{"0", "2"}, {"1", "2"}}));

  auto d = reduce_to_hypergraph_like(diamond());
  CHECK(d.reduced == P({"a", "b", "d", "t"}, {{"a", "t"}, {"b", "t"}, {"d", "t"}}));
  CHECK(is_fair(d.projection));
  CHECK(is_final(d.projection));
}

TEST_CASE("reduction is fair, final and idempotent on all posets up to six points") {
  long checked = 0;
  for (int n = 1; n <= 6; ++n)
    for (const auto& p : natural_posets(n)) {
      auto r = reduce_to_hypergraph_like(p);
      REQUIRE(r.reduced.is_hypergraph_like());
      REQUIRE(is_fair(r.projection));
      REQUIRE(is_final(r.projection));
      REQUIRE(reduce_to_hypergraph_like(r.reduced).reduced == r.reduced);
      ++checked;
    }
  CHECK(checked > 300);
}

TEST_CASE("hypergraph round trip on hypergraph-like posets") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : natural_posets(n)) {
      if (!p.is_hypergraph_like()) continue;
      auto h = poset_to_hypergraph(p);
      CHECK(hypergraph_to_poset(h) == p);
      CHECK(poset_to_hypergraph(hypergraph_to_poset(h)) == h);
    }
}

TEST_CASE("poset literal round trip") {
  auto d = diamond();
  auto text = to_literal(d);
  CHECK(text == "poset { elems: [a,b,d,t]; le: [(a,t),(b,t),(d,a),(d,b)] }");
  CHECK(parse_poset(text) == d);
  CHECK(parse_poset("poset { elems: [x,y]; le: [] }") == FinPoset::discrete({"x", "y"}));
  CHECK_THROWS_AS(parse_poset("poset { elems: [x; le: [] }"), ParseError);
}
