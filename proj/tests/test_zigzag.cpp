#include <functional>
#include <map>
#include <random>
#include <set>

#include "acl/errors.hpp"
#include "acl/zigzag.hpp"
#include "doctest.h"
#include "support.hpp"
#include "zigzag_oracles.hpp"
#include "zigzag_support.hpp"

using namespace acl;
using namespace fx;

namespace {

const Category& SET = *finset();

Zigzag zz(std::vector<Object> r, std::vector<Object> s, std::vector<Morphism> f,
          std::vector<Morphism> b) {
  Zigzag z{std::move(r), std::move(s), std::move(f), std::move(b)};
  validate_zigzag(SET, z);
  return z;
}

// {0,1} -> 1 <- {0,1}: a single cospan of sets.
Zigzag cospan(int a, int s, int b, std::vector<int> fwd, std::vector<int> bwd) {
  return zz({set_object(a), set_object(b)}, {set_object(s)}, {fn(a, s, fwd)},
            {fn(b, s, bwd)});
}

}  // namespace

TEST_CASE("reg dual on small examples") {
  // 2 -> 1 constant 0: Reg is ord 2 -> ord 3 sending 0 -> 0 and 1 -> 2.
  CHECK(reg_dual({0, 0}, 1) == std::vector<int>{0, 2});
  // the empty map ord 0 -> ord 1
  CHECK(reg_dual({}, 1) == std::vector<int>{0, 0});
  CHECK(reg_dual({0, 1, 1}, 2) == std::vector<int>{0, 1, 3});
}

TEST_CASE("duality laws exhaustive up to 5") {
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; m <= 5; ++m) {
      auto maps = monotone(n, m);
      std::set<std::vector<int>> images;
      for (const auto& f : maps) {
        auto g = reg_dual(f, m);
        REQUIRE(g.size() == static_cast<std::size_t>(m + 1));
        CHECK(g.front() == 0);
        CHECK(g.back() == n);
        CHECK(is_interval_map(g, n));
        CHECK(reg_inverse(g, n) == f);
        for (int i = 0; i <= m; ++i)
          for (int j = 0; j < n; ++j) CHECK((f[j] >= i) == (j >= g[i]));
        images.insert(g);
      }
      // bijective onto endpoint-preserving monotone maps
      std::size_t ends = 0;
      for (const auto& g : monotone(m + 1, n + 1))
        if (g.front() == 0 && g.back() == n) ++ends;
      CHECK(images.size() == maps.size());
      CHECK(images.size() == ends);
    }
}

TEST_CASE("reg dual is contravariantly functorial") {
  for (int n = 0; n <= 4; ++n)
    for (int m = 0; m <= 4; ++m)
      for (int k = 0; k <= 4; ++k)
        for (const auto& f : monotone(n, m))
          for (const auto& g : monotone(m, k)) {
            std::vector<int> gf;
            for (int v : f) gf.push_back(g[v]);
            auto rf = reg_dual(f, m), rg = reg_dual(g, k);
            std::vector<int> composite;
            for (int v : rg) composite.push_back(rf[v]);
            CHECK(reg_dual(gf, k) == composite);
          }
  for (int n = 0; n <= 5; ++n) {
    std::vector<int> id(n);
    std::iota(id.begin(), id.end(), 0);
    std::vector<int> rid(n + 1);
    std::iota(rid.begin(), rid.end(), 0);
    CHECK(reg_dual(id, n) == rid);
  }
}

TEST_CASE("reg inverse rejects non-interval maps") {
  CHECK_THROWS_AS(reg_inverse({1, 2}, 2), ValidationError);
  CHECK_THROWS_AS(reg_inverse({0, 2, 1}, 2), ValidationError);
}

TEST_CASE("zigzag validation") {
  CHECK_NOTHROW(cospan(2, 1, 2, {0, 0}, {0, 0}));
  Zigzag bad{{set_object(2), set_object(2)}, {set_object(1)}, {fn(2, 1, {0, 0})},
             {fn(3, 1, {0, 0, 0})}};
  CHECK_THROWS_AS(validate_zigzag(SET, bad), ValidationError);
}

TEST_CASE("zigzag map validation names the failing square") {
  // X = 1 -> 2 <- 1 (0 and 1), Y = 1 -> 1 <- 1
  Zigzag x = cospan(1, 2, 1, {0}, {1});
  Zigzag y = cospan(1, 1, 1, {0}, {0});
  ZigzagMapData ok{{0}, {fn(2, 1, {0, 0})}, {fn(1, 1, {0}), fn(1, 1, {0})}, {}};
  auto f = make_zigzag_map(SET, x, y, ok);
  CHECK(is_globular(SET, f));
  CHECK(diagonal_slice(f, 0, 0) == fn(1, 1, {0}));

  // seeded fault: the singular slice does not land in Y(s0) commutatively
  Zigzag y2 = cospan(1, 2, 1, {0}, {0});
  ZigzagMapData bad{{0}, {fn(2, 2, {0, 1})}, {fn(1, 1, {0}), fn(1, 1, {0})}, {}};
  try {
    make_zigzag_map(SET, x, y2, bad);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("0") != std::string::npos);
    CHECK(what.find("right") != std::string::npos);
  }
}

TEST_CASE("empty preimage needs the target cospan to agree") {
  // X of length 0 into Y of length 1: Y.fwd . r0 == Y.bwd . r1
  Zigzag x = point_zigzag(set_object(1));
  Zigzag y = cospan(1, 2, 1, {0}, {0});
  ZigzagMapData d{{}, {}, {fn(1, 1, {0}), fn(1, 1, {0})}, {}};
  auto f = make_zigzag_map(SET, x, y, d);
  CHECK(diagonal_slice(f, 0, 0) == fn(1, 2, {0}));
  Zigzag y2 = cospan(1, 2, 1, {0}, {1});
  CHECK_THROWS_AS(make_zigzag_map(SET, x, y2, d), ValidationError);
}

TEST_CASE("identity, composition and restriction") {
  Zigzag x = zz({set_object(1), set_object(1), set_object(1)},
                {set_object(2), set_object(2)}, {fn(1, 2, {0}), fn(1, 2, {1})},
                {fn(1, 2, {1}), fn(1, 2, {0})});
  auto id = identity_zigzag_map(SET, x);
  CHECK(compose_zigzag_maps(SET, id, id) == id);
  Zigzag part = restrict(x, 1, 2);
  CHECK(part.length() == 1);
  CHECK(part.forward[0] == fn(1, 2, {1}));
  auto rid = restrict_map(SET, id, 0, 1);
  CHECK(rid == identity_zigzag_map(SET, restrict(x, 0, 1)));
  CHECK(restrict(x, 1, 1).length() == 0);
}

TEST_CASE("explode then unexplode is the identity") {
  auto zig = std::make_shared<ZigCategory>(finset());
  Zigzag x = cospan(1, 2, 1, {0}, {1});
  Zigzag y = cospan(1, 1, 1, {0}, {0});
  auto f = make_zigzag_map(SET, x, y,
                           {{0}, {fn(2, 1, {0, 0})}, {fn(1, 1, {0}), fn(1, 1, {0})}, {}});
  FinPoset two = FinPoset::from_relations({"a", "b"}, {{"a", "b"}});
  Diagram d = Diagram::from_generators(*zig, two, {Object(x), Object(y)}, {{0, 1, f}});
  Explosion ex = explode(SET, d);
  // sites: a has r0 s0 r1, b has r0 s0 r1
  CHECK(ex.shape.poset.size() == 6);
  Diagram back = unexplode(*zig, project_to_ord(d), ex.shape, ex.diagram);
  CHECK(back == d);
  CHECK(is_globular_diagram(SET, back));
}

TEST_CASE("contraction over the signature") {
  auto sig = std::make_shared<Signature>(
      std::vector<Label>{{"x", 0}, {"f", 1}, {"m", 2}});
  Object x = Label{"x", 0}, f = Label{"f", 1}, m = Label{"m", 2};
  auto arr = [](const Object& a, const Object& b) { return Morphism::arrow(a, b); };
  // x -> f <- x -> f <- x contracts to x -> f <- x
  Zigzag two{{x, x, x}, {f, f}, {arr(x, f), arr(x, f)}, {arr(x, f), arr(x, f)}};
  validate_zigzag(*sig, two);
  auto c = contraction(*sig, two);
  const Zigzag& t = c.target().zigzag();
  REQUIRE(t.length() == 1);
  CHECK(t.singular[0] == f);
  CHECK(c.zigzag_map().singular == std::vector<int>{0, 0});

  // x -> f <- x -> m <- x: m is above f, so the apex is m
  Zigzag mixed{{x, x, x}, {f, m}, {arr(x, f), arr(x, m)}, {arr(x, f), arr(x, m)}};
  CHECK(contraction(*sig, mixed).target().zigzag().singular[0] == m);

  // two distinct generators of the same dimension have no join
  auto sig2 = std::make_shared<Signature>(
      std::vector<Label>{{"x", 0}, {"a", 1}, {"b", 1}});
  Object a = Label{"a", 1}, b = Label{"b", 1};
  Zigzag clash{{x, x, x}, {a, b}, {arr(x, a), arr(x, b)}, {arr(x, a), arr(x, b)}};
  CHECK_THROWS_AS(contraction(*sig2, clash), NoSuchLimit);

  // length 0: the fence is a single object
  auto p = contraction(*sig, point_zigzag(x));
  CHECK(p.target().zigzag().singular[0] == x);
  CHECK(p.zigzag_map().singular.empty());
}

TEST_CASE("contraction of a FinSet zigzag is a pushout") {
  // 1 -> 2 <- 1 -> 2 <- 1, glued along the middle point
  Zigzag x = zz({set_object(1), set_object(1), set_object(1)},
                {set_object(2), set_object(2)}, {fn(1, 2, {0}), fn(1, 2, {0})},
                {fn(1, 2, {1}), fn(1, 2, {1})});
  auto c = contraction(SET, x);
  CHECK(c.target().zigzag().singular[0] == set_object(3));
  CHECK(is_globular(SET, c));
  auto r = contract_range(SET, x, 1, 2);
  CHECK(r.target().zigzag() == x);  // one height: unchanged up to the iso chosen
}

TEST_CASE("splice extends a local map by identities") {
  Zigzag y = zz({set_object(1), set_object(1), set_object(1)},
                {set_object(2), set_object(1)}, {fn(1, 2, {0}), fn(1, 1, {0})},
                {fn(1, 2, {1}), fn(1, 1, {0})});
  Zigzag cell = restrict(y, 0, 1);
  auto g = identity_zigzag_map(SET, cell);
  CHECK(splice_map(SET, y, 0, g) == identity_zigzag_map(SET, y));
}

TEST_CASE("zigzag colimit agrees with a hand-made oracle") {
  auto zig = std::make_shared<ZigCategory>(finset());
  std::mt19937 rng(20261018);
  const auto shapes = small_shapes();
  int checked = 0, absent = 0;
  while (checked < 100) {
    const auto& shape = shapes[rng() % shapes.size()];
    auto d = random_zig_diagram(rng, *zig, shape, 3);
    if (!d) continue;
    ++checked;
    auto ranks = ord_oracle(*d);
    if (!ranks) {
      ++absent;
      CHECK_THROWS_AS(zigzag_colimit(*zig, *d), NoSuchLimit);
      continue;
    }
    Cocone c = zigzag_colimit(*zig, *d);
    for (int x = 0; x < d->size(); ++x)
      CHECK(c.legs[x].zigzag_map().singular == (*ranks)[x]);
    for (int i = 0; i < c.apex.zigzag().length(); ++i) {
      INFO("shape size ", shape.size(), " height ", i);
      CHECK(check_height(*d, c, i) == "");
    }
    CHECK(zig->is_colimit(*d, c.apex, c.legs));
  }
  MESSAGE("diagrams without an Ord colimit: ", absent);
}

TEST_CASE("lifted factorisation and orthogonal lifts") {
  auto zig = std::make_shared<ZigCategory>(finset());
  std::mt19937 rng(7);
  int checked = 0;
  while (checked < 100) {
    auto s = random_sink(rng);
    if (!s) continue;
    ++checked;
    auto& [legs, y] = *s;
    auto fact = factorise_zigzag_sink(SET, legs, y);
    for (std::size_t l = 0; l < legs.size(); ++l)
      CHECK(compose_zigzag_maps(SET, fact.mono_part, fact.epi_part[l]) == legs[l]);
    CHECK(is_singular_epi(SET, fact.epi_part, fact.image.zigzag()));
    CHECK(is_relabelling(SET, fact.mono_part));
    for (const auto& sl : fact.mono_part.zigzag_map().singular_slices) CHECK(injective(sl));

    // square: e-sink against the factorisation of q . legs for a random q
    Morphism q = random_map_out_of(rng, y);
    std::vector<Morphism> pushed;
    for (const auto& f : legs) pushed.push_back(compose_zigzag_maps(SET, q, f));
    auto other = factorise_zigzag_sink(SET, pushed, q.target().zigzag());
    Morphism bottom = compose_zigzag_maps(SET, q, fact.mono_part);
    Morphism h = zig->orthogonal_lift(fact.epi_part, other.mono_part, other.epi_part, bottom);
    for (std::size_t l = 0; l < legs.size(); ++l)
      CHECK(compose_zigzag_maps(SET, h, fact.epi_part[l]) == other.epi_part[l]);
    CHECK(compose_zigzag_maps(SET, other.mono_part, h) == bottom);
    int fillers = 0;
    for (const auto& g : zig->hom(fact.image, other.image)) {
      bool ok = compose_zigzag_maps(SET, other.mono_part, g) == bottom;
      for (std::size_t l = 0; ok && l < legs.size(); ++l)
        ok = compose_zigzag_maps(SET, g, fact.epi_part[l]) == other.epi_part[l];
      fillers += ok;
    }
    CHECK(fillers == 1);
  }
}

TEST_CASE("zigzag lifts through a leg") {
  auto zig = std::make_shared<ZigCategory>(finset());
  std::mt19937 rng(11);
  for (int t = 0; t < 40; ++t) {
    Zigzag y = random_zigzag(rng, 2);
    Morphism leg = random_map_into(rng, y, 2);
    Morphism f = compose_zigzag_maps(SET, leg, random_map_into(rng, leg.source().zigzag(), 2));
    auto ls = zig->lifts(f, leg, 100);
    CHECK(!ls.empty());
    for (const auto& h : ls) CHECK(compose_zigzag_maps(SET, leg, h) == f);
  }
}

TEST_CASE("biased colimits order parallel heights") {
  // x -> a <- x  and  x -> b <- x  glued only at the boundary: the two
  // heights are incomparable, so only a biased colimit exists.
  auto sig = std::make_shared<Signature>(std::vector<Label>{{"x", 0}, {"a", 1}, {"b", 1}});
  auto zig = std::make_shared<ZigCategory>(sig);
  Object x = Label{"x", 0}, a = Label{"a", 1}, b = Label{"b", 1};
  auto arr = [](const Object& s, const Object& t) { return Morphism::arrow(s, t); };
  Zigzag za{{x, x}, {a}, {arr(x, a)}, {arr(x, a)}};
  Zigzag zb{{x, x}, {b}, {arr(x, b)}, {arr(x, b)}};
  Zigzag point = point_zigzag(x);
  auto into = [&](const Zigzag& t) {
    return make_zigzag_map(*sig, point, t, {{}, {}, {sig->identity(x), sig->identity(x)}, {}});
  };
  FinPoset span = FinPoset::from_relations({"l", "o", "r"}, {{"o", "l"}, {"o", "r"}});
  const int l = span.index_of("l"), o = span.index_of("o"), r = span.index_of("r");
  std::vector<Object> objects(3);
  objects[l] = za;
  objects[o] = point;
  objects[r] = zb;
  Diagram d = Diagram::from_generators(*zig, span, objects, {{o, l, into(za)}, {o, r, into(zb)}});
  CHECK_THROWS_AS(zigzag_colimit(*zig, d), NoSuchLimit);
  auto left = zigzag_colimit(*zig, d, Bias::left).apex.zigzag();
  auto right = zigzag_colimit(*zig, d, Bias::right).apex.zigzag();
  REQUIRE(left.length() == 2);
  REQUIRE(right.length() == 2);
  CHECK(left.singular[0] != right.singular[0]);
  CHECK(left.singular[0] == right.singular[1]);
}
