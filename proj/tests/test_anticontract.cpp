#include <random>
#include <set>

#include "acl/anticontract.hpp"
#include "acl/errors.hpp"
#include "doctest.h"
#include "support.hpp"
#include "zigzag_support.hpp"

using namespace acl;
using namespace fx;

namespace {

const Category& SET = *finset();

Zigzag cospan(int a, int s, int b, std::vector<int> fwd, std::vector<int> bwd) {
  Zigzag z{{set_object(a), set_object(b)}, {set_object(s)}, {fn(a, s, fwd)}, {fn(b, s, bwd)}};
  validate_zigzag(SET, z);
  return z;
}

bool injective(const Morphism& f) {
  std::set<int> seen;
  for (int v : f.images())
    if (!seen.insert(v).second) return false;
  return true;
}

}  // namespace

TEST_CASE("J_n shapes") {
  for (int n = 0; n <= 12; ++n) {
    FinPoset j = jn_poset(n);
    CHECK(j.size() == 2 * n + 1);
    CHECK(j.is_hypergraph_like());
    CHECK(j.maximal().size() == static_cast<std::size_t>(n + 1));
  }
  CHECK_THROWS_AS(jn_poset(-1), ValidationError);
}

TEST_CASE("anticontraction splits a two-point singular level") {
  Zigzag x = cospan(1, 2, 1, {0}, {1});
  AnticontractionRequest req{x, {fn(1, 2, {0}), fn(1, 2, {1})}};
  auto all = anticontractions(SET, req);
  REQUIRE(all.size() == 1);
  const Morphism& f = all[0];
  const Zigzag& e = f.source().zigzag();
  REQUIRE(e.length() == 2);
  CHECK(e.regular[1] == set_object(0));
  CHECK(e.singular[0] == set_object(1));
  CHECK(e.singular[1] == set_object(1));
  CHECK(f.zigzag_map().singular_slices == req.sink);
  CHECK(f.target().zigzag() == x);
  CHECK(is_contraction_of(SET, f));
  CHECK(contraction_round_trip(SET, f) == std::nullopt);
}

TEST_CASE("anticontraction along the identity is the identity") {
  Zigzag x = cospan(2, 3, 1, {0, 2}, {1});
  AnticontractionRequest req{x, {SET.identity(x.singular[0])}};
  auto f = anticontract(SET, req);
  CHECK(f == identity_zigzag_map(SET, x));
  CHECK(contraction_round_trip(SET, f) == std::nullopt);
}

TEST_CASE("anticontraction errors") {
  // not jointly epic: point 2 is missed
  Zigzag x = cospan(1, 3, 1, {0}, {1});
  AnticontractionRequest req{x, {fn(1, 3, {0}), fn(1, 3, {1})}};
  CHECK(anticontractions(SET, req).empty());
  CHECK_THROWS_AS(anticontract(SET, req), NoSuchLimit);
  // no boundary lift: r0 lands on 1, which A_0 misses
  Zigzag y = cospan(1, 2, 1, {1}, {1});
  CHECK(anticontractions(SET, {y, {fn(1, 2, {0}), fn(1, 2, {1})}}).empty());
  // malformed requests
  CHECK_THROWS_AS(validate_request(SET, {y, {}}), ValidationError);
  CHECK_THROWS_AS(validate_request(SET, {y, {fn(1, 3, {0})}}), ValidationError);
  Zigzag two{{set_object(1), set_object(1), set_object(1)},
             {set_object(1), set_object(1)},
             {fn(1, 1, {0}), fn(1, 1, {0})},
             {fn(1, 1, {0}), fn(1, 1, {0})}};
  CHECK_THROWS_AS(validate_request(SET, {two, {fn(1, 1, {0})}}), ValidationError);
}

TEST_CASE("several anticontractions are listed canonically") {
  // {0,1} and {1,2} over 3 points: the middle regular object must be {1}
  // up to the choice of a larger overlap within the bound.
  Zigzag x = cospan(1, 3, 1, {0}, {2});
  AnticontractionRequest req{x, {fn(2, 3, {0, 1}), fn(2, 3, {1, 2})}};
  auto all = anticontractions(SET, req);
  REQUIRE(!all.empty());
  std::set<std::string> keys;
  for (const auto& f : all) {
    keys.insert(canonical(f));
    CHECK(contraction_round_trip(SET, f) == std::nullopt);
  }
  CHECK(keys.size() == all.size());
  CHECK(anticontract(SET, req, 0) == all[0]);
}

TEST_CASE("random anticontractions contract back exactly") {
  std::mt19937 rng(99);
  int produced = 0;
  for (int t = 0; t < 200; ++t) {
    const int s = pick(rng, 1, 3);
    Zigzag x{{set_object(pick(rng, 0, 2)), set_object(pick(rng, 0, 2))}, {set_object(s)}, {}, {}};
    x.forward.push_back(random_set_map(rng, x.regular[0].carrier().size, s));
    x.backward.push_back(random_set_map(rng, x.regular[1].carrier().size, s));
    AnticontractionRequest req{x, {}, -1, 4};
    const int legs = pick(rng, 1, 3);
    for (int l = 0; l < legs; ++l) req.sink.push_back(random_set_map(rng, pick(rng, 1, 2), s));
    for (const auto& f : anticontractions(SET, req)) {
      ++produced;
      CHECK(is_contraction_of(SET, f));
      CHECK(contraction_round_trip(SET, f) == std::nullopt);
      CHECK(f.zigzag_map().singular_slices == req.sink);
    }
  }
  CHECK(produced > 20);
}

TEST_CASE("zigzag anticolimits") {
  auto zig = std::make_shared<ZigCategory>(finset());
  // the singleton sink id_Y has the constant extension
  Zigzag y = cospan(1, 2, 1, {0}, {1});
  auto single = zigzag_anticolimits(*zig, jn_poset(0), Sink{{zig->identity(y)}, y}, {3});
  REQUIRE(single.size() == 1);
  CHECK(single[0].object(0) == Object(y));

  // empty boundaries: two singletons over two points. Every length d >= 1 of
  // the apex of the span works, with all objects over it empty.
  Zigzag apex = cospan(0, 2, 0, {}, {});
  Zigzag left = cospan(0, 1, 0, {}, {}), right = left;
  auto leg = [&](const Zigzag& src, int p) {
    return make_zigzag_map(SET, src, apex,
                           {{0}, {fn(1, 2, {p})}, {SET.identity(set_object(0)),
                                                   SET.identity(set_object(0))}, {}});
  };
  Sink sink{{leg(left, 0), leg(right, 1)}, apex};
  auto found = zigzag_anticolimits(*zig, jn_poset(1), sink, {3});
  std::set<int> lengths;
  const int e = jn_poset(1).index_of("e0");
  for (const auto& a : found) {
    lengths.insert(a.object(e).zigzag().length());
    for (const auto& s : a.object(e).zigzag().singular) CHECK(s == set_object(0));
  }
  CHECK(lengths == std::set<int>{1, 2, 3});
  CHECK(found.size() == 3);

  // decomposition is injective on results
  std::set<std::string> parts;
  for (const auto& a : found) {
    auto d = decompose(*zig, a, sink);
    CHECK(d.lengths == project_to_ord(a));
    std::string key = canonical(d.lengths);
    for (const auto& h : d.heights) key += "|" + canonical(h);
    parts.insert(key);
  }
  CHECK(parts.size() == found.size());
}

TEST_CASE("zigzag anticolimits match antipushouts of the singular slices") {
  // Length-1 sources over a length-1 apex with empty boundaries: results of
  // length 1 correspond to FinSet antipushouts of the singular slices.
  auto zig = std::make_shared<ZigCategory>(finset());
  Zigzag apex = cospan(0, 3, 0, {}, {});
  auto leg = [&](int size, std::vector<int> img) {
    Zigzag src = cospan(0, size, 0, {}, {});
    return make_zigzag_map(SET, src, apex,
                           {{0}, {fn(size, 3, img)}, {SET.identity(set_object(0)),
                                                      SET.identity(set_object(0))}, {}});
  };
  Sink sink{{leg(2, {0, 1}), leg(2, {1, 2})}, apex};
  const int e = jn_poset(1).index_of("e0");
  std::set<std::string> zigs;
  for (const auto& a : zigzag_anticolimits(*zig, jn_poset(1), sink, {2}))
    if (a.object(e).zigzag().length() == 1) {
      const auto& g = a.arrow(e, jn_poset(1).index_of("v0")).zigzag_map().singular_slices[0];
      const auto& h = a.arrow(e, jn_poset(1).index_of("v1")).zigzag_map().singular_slices[0];
      zigs.insert(canonical(g) + canonical(h));
    }
  std::set<std::string> sets;
  Sink base{{fn(2, 3, {0, 1}), fn(2, 3, {1, 2})}, set_object(3)};
  for (const auto& a : enumerate_anticolimits(SET, jn_poset(1), base, {2}))
    sets.insert(canonical(a.extension.arrow(e, jn_poset(1).index_of("v0"))) +
                canonical(a.extension.arrow(e, jn_poset(1).index_of("v1"))));
  CHECK(!sets.empty());
  CHECK(zigs == sets);
}

TEST_CASE("recursive anticontraction steps") {
  Zigzag x = cospan(1, 2, 1, {0}, {1});

  // (a) both boundaries lift along the identity
  auto a = recursive_anticontract(SET, x, 0, SET.identity(set_object(2)));
  CHECK(a.step == RecursiveStep::direct);
  CHECK(a.map == identity_zigzag_map(SET, x));

  // (b) only r0 lifts along {0}; r1 factors through {1} and the two
  // anticontract together
  auto b = recursive_anticontract(SET, x, 0, fn(1, 2, {0}));
  CHECK(b.step == RecursiveStep::factorised_right);
  const auto& slices = b.local.zigzag_map().singular_slices;
  REQUIRE(slices.size() == 2);
  CHECK(slices[0] == fn(1, 2, {0}));
  CHECK(injective(slices[1]));
  CHECK(contraction_round_trip(SET, b.local) == std::nullopt);
  auto bl = recursive_anticontract(SET, x, 0, fn(1, 2, {1}));
  CHECK(bl.step == RecursiveStep::factorised_left);

  // (c) neither boundary lifts
  Zigzag y = cospan(1, 2, 1, {1}, {1});
  auto c = recursive_anticontract(SET, y, 0, fn(1, 2, {0}));
  CHECK(c.step == RecursiveStep::bubble);
  const Zigzag& e = c.local.source().zigzag();
  REQUIRE(e.length() == 2);
  CHECK(e.singular[0] == y.singular[0]);
  CHECK(e.singular[1] == y.singular[0]);
  CHECK(e.regular[1] == set_object(1));

  // (b) is tried but finds no anticontraction, so (c) follows
  Zigzag z = cospan(1, 3, 1, {0}, {1});
  CHECK(recursive_anticontract(SET, z, 0, fn(1, 3, {0})).step == RecursiveStep::bubble);

  CHECK_THROWS_AS(recursive_anticontract(SET, x, 1, fn(1, 2, {0})), ValidationError);
  CHECK_THROWS_AS(recursive_anticontract(SET, x, 0, fn(1, 3, {0})), ValidationError);
}

TEST_CASE("recursive anticontraction inside a longer zigzag keeps the boundary") {
  std::mt19937 rng(5);
  for (int t = 0; t < 60; ++t) {
    Zigzag x = random_zigzag(rng, 3);
    if (x.length() == 0) continue;
    const int k = pick(rng, 0, x.length() - 1);
    const int s = x.singular[k].carrier().size;
    Morphism a = random_set_map(rng, pick(rng, 1, 2), s);
    auto r = recursive_anticontract(SET, x, k, a);
    const Zigzag& src = r.map.source().zigzag();
    CHECK(r.map.target().zigzag() == x);
    CHECK(is_globular(SET, r.map));
    CHECK(src.regular.front() == x.regular.front());
    CHECK(src.regular.back() == x.regular.back());
    // step (b) goes through a genuine anticontraction
    if (r.step == RecursiveStep::factorised_left || r.step == RecursiveStep::factorised_right)
      CHECK(contraction_round_trip(SET, r.local) == std::nullopt);
  }
}
