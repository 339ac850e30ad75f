#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <vector>

#include "relkit/perm.hpp"
#include "relkit/perm_group.hpp"
#include "support.hpp"

using relkit::BudgetError;
using relkit::Perm;
using relkit::PermGroup;
using testutil::group;

TEST_CASE("trivial and symmetric groups") {
  CHECK(PermGroup::trivial(7).order() == 1);
  CHECK(PermGroup::symmetric(1).order() == 1);
  CHECK(PermGroup::symmetric(5).order() == 120);
  CHECK(PermGroup::symmetric(8).order() == 40320);
}

TEST_CASE("order agrees with breadth-first closure on random groups") {
  // The table-based engine is the thing under test; the oracle is plain
  // closure over products, which cannot be wrong in an interesting way.
  std::mt19937 rng(20260825);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 100; ++trial) {
    int degree = 3 + static_cast<int>(rng() % 8);  // 3..10
    auto gens = testutil::random_gens(degree, 1 + rng() % 2, rng);
    auto closure = testutil::naive_closure(degree, gens, 5000);
    if (closure.empty()) continue;  // too big for the oracle
    PermGroup g = PermGroup::build(degree, gens);
    INFO("degree " << degree << " trial " << trial);
    REQUIRE(g.order() == closure.size());
    for (const Perm& p : closure) CHECK(g.contains(p));
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("known orders") {
  CHECK(group(6, {"(1,2,5)(3,4,6)", "(1,4)(2,5)"}).order() == 60);
  CHECK(group(11, {"(1,10)(2,8)(3,11)(5,7)", "(1,4,7,6)(2,11,10,9)"}).order() ==
        7920);
  CHECK(group(13, {"(1,10,4)(6,9,7)(8,12,13)",
                   "(1,3,2)(4,9,5)(7,8,12)(10,13,11)"})
            .order() == 5616);
  CHECK(group(12, {"(1,4,7,3,6,10)(2,5,9,12,11,8)",
                   "(1,6)(2,3)(4,9)(5,11)(7,10)(8,12)"})
            .order() == 192);
  CHECK(group(23, {"(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,"
                   "22,23)",
                   "(2,16,9,6,8)(3,12,13,18,4)(7,17,10,11,22)(14,19,21,20,"
                   "15)"})
            .order() == 10200960);
}

TEST_CASE("membership") {
  PermGroup g = group(6, {"(1,2,5)(3,4,6)", "(1,4)(2,5)"});
  CHECK(g.contains(Perm::identity(6)));
  CHECK(g.contains(relkit::parse_cycles("(1,2,5)(3,4,6)", 6).inverse()));
  // odd permutations are outside PSL(2,5)
  CHECK_FALSE(g.contains(relkit::parse_cycles("(1,2)", 6)));
  int inside = 0;
  PermGroup s6 = PermGroup::symmetric(6);
  s6.for_each_element([&](const Perm& p) {
    if (g.contains(p)) ++inside;
  });
  CHECK(inside == 60);
}

TEST_CASE("element stream hits each element once") {
  PermGroup g = group(11, {"(1,10)(2,8)(3,11)(5,7)", "(1,4,7,6)(2,11,10,9)"});
  std::set<Perm> seen;
  g.for_each_element([&](const Perm& p) { seen.insert(p); });
  CHECK(seen.size() == 7920);
  for (const Perm& p : seen) CHECK(g.contains(p));
}

TEST_CASE("elements() refuses oversized groups") {
  PermGroup big = PermGroup::symmetric(14);
  try {
    big.elements(1000);
    FAIL("expected BudgetError");
  } catch (const BudgetError& e) {
    CHECK(e.required() == big.order());
  }
}

TEST_CASE("order overflows are reported, not wrapped") {
  CHECK_THROWS_AS(PermGroup::symmetric(21).order(), std::overflow_error);
  CHECK_NOTHROW(PermGroup::symmetric(20).order());
}

TEST_CASE("point orbits") {
  PermGroup g = group(6, {"(1,2,5)(3,4,6)", "(1,4)(2,5)"});
  auto orbit = g.point_orbit(0);
  CHECK(orbit == std::vector<int>{0, 1, 2, 3, 4, 5});
  PermGroup h = group(6, {"(1,2)(3,6)"});
  CHECK(h.point_orbit(0) == std::vector<int>{0, 1});
  CHECK(h.point_orbit(3) == std::vector<int>{3});
}

TEST_CASE("setwise stabilizer matches brute filtering") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int degree = 5 + static_cast<int>(rng() % 6);  // 5..10
    auto gens = testutil::random_gens(degree, 2, rng);
    PermGroup g = PermGroup::build(degree, gens);
    uint32_t mask = rng() & ((1u << degree) - 1);
    PermGroup brute = g.setwise_stabilizer(mask, /*brute_limit=*/1'000'000);
    PermGroup search = g.setwise_stabilizer(mask, /*brute_limit=*/0);
    INFO("degree " << degree << " mask " << mask << " trial " << trial);
    REQUIRE(brute.order() == search.order());
    search.for_each_element([&](const Perm& p) { CHECK(brute.contains(p)); });
  }
}

TEST_CASE("setwise stabilizer on a group too big to enumerate") {
  PermGroup s12 = PermGroup::symmetric(12);
  uint32_t mask = relkit::parse_set("[1,2,3,4,5]", 12);
  PermGroup stab = s12.setwise_stabilizer(mask);
  CHECK(stab.order() == 120ull * 5040ull);  // S_5 x S_7
  stab.for_each_element([&](const Perm& p) {
    if (p.is_identity()) return;
    CHECK(p.image_mask(mask) == mask);
  });
}

TEST_CASE("orbit of a set times stabilizer order equals group order") {
  PermGroup g = group(12, {"(1,4,7,3,6,10)(2,5,9,12,11,8)",
                           "(1,6)(2,3)(4,9)(5,11)(7,10)(8,12)"});
  uint32_t mask = relkit::parse_set("[1,2,3]", 12);
  // orbit size by brute closure over generator images
  std::set<uint32_t> orbit{mask};
  std::vector<uint32_t> work{mask};
  auto gens = g.generators();
  while (!work.empty()) {
    uint32_t m = work.back();
    work.pop_back();
    for (const Perm& p : gens) {
      uint32_t im = p.image_mask(m);
      if (orbit.insert(im).second) work.push_back(im);
    }
  }
  PermGroup stab = g.setwise_stabilizer(mask);
  CHECK(orbit.size() * stab.order() == g.order());
}

TEST_CASE("build rejects malformed input") {
  CHECK_THROWS_AS(PermGroup::build(3, {}), std::invalid_argument);
  std::vector<Perm> mixed{relkit::parse_cycles("(1,2)", 4),
                          relkit::parse_cycles("(1,2)", 5)};
  CHECK_THROWS_AS(PermGroup::build(4, mixed), std::invalid_argument);
  PermGroup g = group(4, {"(1,2)"});
  CHECK_THROWS_AS(g.contains(relkit::parse_cycles("(1,2)", 5)),
                  std::invalid_argument);
}
