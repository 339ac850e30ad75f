#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "relkit/catalog.hpp"
#include "relkit/perm.hpp"

using relkit::Catalog;
using relkit::CatalogEntry;
using relkit::CatalogError;
using relkit::Claim;
using relkit::parse_catalog;
using relkit::parse_set;
using relkit::print_catalog;
using relkit::SizeSpec;

namespace {

int error_line(const std::string& text) {
  try {
    parse_catalog(text);
  } catch (const CatalogError& e) {
    return e.line();
  }
  return -1;
}

std::string bundled_text() {
  std::ifstream in(RELKIT_DATA_DIR "/catalog.txt");
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

TEST_CASE("a stanza parses into an entry") {
  Catalog c = parse_catalog(
      "# demo\n"
      "[entry]\n"
      "id = PSL_2_5\n"
      "degree = 6\n"
      "gen = (1,2,5)(3,4,6)\n"
      "gen = (1,4)(2,5)\n"
      "claim = order 60\n"
      "claim = defined-by [1,2,5]\n"
      "\n"
      "[entry]\n"
      "id = G_6_1\n"
      "degree = 6\n"
      "parent = PSL_2_5\n"
      "gen = (1,2,3)(4,5,6)\n"
      "gen = (1,5)(2,6)\n"
      "claim = defined-in PSL_2_5 [1,2]\n"
      "claim = regular-set [3,4,5,6]\n"
      "claim = all-subgroups-rg\n"
      "suspect = order 34\n"
      "note = second maximal subgroup\n");

  REQUIRE(c.entries().size() == 2);
  CHECK(c.find("PSL_2_5") != nullptr);
  CHECK(c.find("missing") == nullptr);

  const CatalogEntry& e = c.at("G_6_1");
  CHECK(e.degree == 6);
  CHECK(e.parent == "PSL_2_5");
  REQUIRE(e.generators.size() == 2);
  CHECK(relkit::print_cycles(e.generators[1]) == "(1,5)(2,6)");
  REQUIRE(e.claims.size() == 4);
  CHECK(e.claims[0].kind == Claim::Kind::DefinedIn);
  CHECK(e.claims[0].context == "PSL_2_5");
  CHECK(e.claims[0].seeds == std::vector<std::uint32_t>{parse_set("[1,2]", 6)});
  CHECK(e.claims[1].kind == Claim::Kind::RegularSetWitness);
  CHECK(e.claims[1].witness == parse_set("[3,4,5,6]", 6));
  CHECK(e.claims[2].kind == Claim::Kind::AllSubgroupsRg);
  CHECK(e.claims[3].kind == Claim::Kind::Order);
  CHECK(e.claims[3].value == 34);
  CHECK(e.claims[3].suspect);
  REQUIRE(e.notes.size() == 1);
  CHECK(e.notes[0] == "second maximal subgroup");

  const CatalogEntry& p = c.at("PSL_2_5");
  CHECK(p.claims[0].kind == Claim::Kind::Order);
  CHECK(p.claims[0].value == 60);
  CHECK_FALSE(p.claims[0].suspect);
  CHECK(p.claims[1].kind == Claim::Kind::DefinedBy);
  CHECK_FALSE(p.claims[1].has_sizes);
  CHECK(p.claims[1].seeds == std::vector<std::uint32_t>{parse_set("[1,2,5]", 6)});
}

TEST_CASE("claim grammar covers every recorded phrasing") {
  auto one = [](const std::string& claim) {
    Catalog c = parse_catalog(
        "[entry]\nid = A\ndegree = 12\n[entry]\nid = B\ndegree = 12\nclaim = " +
        claim + "\n");
    REQUIRE(c.at("B").claims.size() == 1);
    return c.at("B").claims[0];
  };

  Claim c = one("rg");
  CHECK(c.kind == Claim::Kind::Rg);
  CHECK(one("not-rg").kind == Claim::Kind::NotRg);
  CHECK(one("no-regular-set").kind == Claim::Kind::NoRegularSet);
  CHECK(one("has-regular-set").kind == Claim::Kind::HasRegularSet);
  CHECK(one("all-subgroups-rg").kind == Claim::Kind::AllSubgroupsRg);

  c = one("regular-set size 5");
  CHECK(c.kind == Claim::Kind::RegularSetOfSize);
  CHECK(c.size == 5);

  c = one("regular-set-sizes 4..8");
  CHECK(c.kind == Claim::Kind::RegularSetSizes);
  CHECK(c.sizes.kind == SizeSpec::Kind::Range);
  CHECK(c.sizes.lo == 4);
  CHECK(c.sizes.hi == 8);

  c = one("regular-set-sizes {6,8}");
  CHECK(c.sizes.kind == SizeSpec::Kind::List);
  CHECK(c.sizes.items == std::vector<int>{6, 8});

  c = one("regular-set-sizes any");
  CHECK(c.sizes.kind == SizeSpec::Kind::Any);

  c = one("defined-by [1,2];[1,2,3]");
  CHECK(c.kind == Claim::Kind::DefinedBy);
  CHECK(c.seeds.size() == 2);

  c = one("defined-by size 4 orbit 14");
  CHECK(c.has_sizes);
  CHECK(c.sizes.kind == SizeSpec::Kind::Single);
  CHECK(c.sizes.lo == 4);
  CHECK(c.orbit_size == 14);

  c = one("defined-by size 3..12");
  CHECK(c.sizes.kind == SizeSpec::Kind::Range);
  CHECK(c.orbit_size == 0);

  c = one("defined-in A [1,2];[3,4]");
  CHECK(c.kind == Claim::Kind::DefinedIn);
  CHECK(c.context == "A");
  CHECK_FALSE(c.has_sizes);
  CHECK(c.seeds.size() == 2);

  c = one("defined-in A size {6,7}");
  CHECK(c.has_sizes);
  CHECK(c.sizes.items == std::vector<int>{6, 7});

  c = one("defined-in A size any");
  CHECK(c.sizes.kind == SizeSpec::Kind::Any);

  c = one("defined-in A");
  CHECK(c.has_sizes);
  CHECK(c.sizes.kind == SizeSpec::Kind::Some);

  c = one("defined-union A:[1,2,3,4,5] self:[1]");
  CHECK(c.kind == Claim::Kind::DefinedUnion);
  REQUIRE(c.parts.size() == 2);
  CHECK(c.parts[0].first == "A");
  CHECK(c.parts[0].second == parse_set("[1,2,3,4,5]", 12));
  CHECK(c.parts[1].first == "self");
  CHECK(c.parts[1].second == 1);

  c = one("conjugate A");
  CHECK(c.kind == Claim::Kind::ConjugateTo);
  CHECK(c.context == "A");

  c = one("subgroup-classes 2");
  CHECK(c.kind == Claim::Kind::SubgroupClasses);
  CHECK(c.value == 2);

  c = one("orbit-closure-order 1344");
  CHECK(c.kind == Claim::Kind::OrbitClosureOrder);
  CHECK(c.value == 1344);
}

TEST_CASE("printing is canonical and round-trips") {
  const std::string text =
      "[entry]\n"
      "id = A\n"
      "degree = 9\n"
      "gen = (1,8,3,9,5,2,4)\n"
      "claim = order 56\n"
      "claim = not-rg\n"
      "suspect = regular-set size 3\n"
      "note = reconstructed\n"
      "\n"
      "[entry]\n"
      "id = B\n"
      "degree = 9\n"
      "parent = A\n"
      "claim = defined-union A:[1,5] self:[1,2,3,7]\n"
      "claim = defined-in A size 2..7\n";
  Catalog c = parse_catalog(text);
  CHECK(print_catalog(c) == text);

  // odd spacing normalizes to the same canonical form
  Catalog messy = parse_catalog(
      "[entry]\n  id=A\ndegree =9\n\ngen =  (1,8,3,9,5,2,4)\n"
      "claim =order   56\nclaim = not-rg\nsuspect = regular-set size 3\n"
      "note = reconstructed\n[entry]\nid = B\ndegree = 9\nparent = A\n"
      "claim = defined-union  A:[1,5]   self:[1,2,3,7]\n"
      "claim = defined-in A size 2..7\n");
  CHECK(print_catalog(messy) == text);
}

TEST_CASE("parse errors carry the offending line") {
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nrogue line\n") == 4);
  CHECK(error_line("id = A\n") == 1);                     // before any [entry]
  CHECK(error_line("[entry]\ndegree = 5\n") == 1);        // entry without id
  CHECK(error_line("[entry]\nid = A\ngen = (1,2)\n") == 3);  // gen before degree
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = order ten\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = frobnicate 3\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\ngen = (1,2,2)\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 0\n") == 3);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nwidth = 4\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = order 5 extra\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = regular-set []\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = regular-set-sizes 8..2\n") ==
        4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = regular-set-sizes {3,3}\n") ==
        4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = regular-set size 9\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = defined-union A\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = defined-in bad!id\n") == 4);
}

TEST_CASE("cross references are validated") {
  // duplicate entry id: reported on the second header line
  CHECK(error_line("[entry]\nid = A\ndegree = 5\n\n[entry]\nid = A\ndegree = 5\n") ==
        5);
  // unknown parent
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nparent = Z\n") == 1);
  // parent of a different degree
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nparent = B\n\n"
                   "[entry]\nid = B\ndegree = 6\n") == 1);
  // claim references follow the same rules, reported on the claim line
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = conjugate Z\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = defined-in B size any\n\n"
                   "[entry]\nid = B\ndegree = 6\n") == 4);
  CHECK(error_line("[entry]\nid = A\ndegree = 5\nclaim = defined-union Z:[1]\n") == 4);

  // `self` never needs a catalog entry, and forward references are fine
  Catalog c = parse_catalog(
      "[entry]\nid = A\ndegree = 5\nclaim = defined-union self:[1,2] B:[1]\n"
      "claim = conjugate B\n\n[entry]\nid = B\ndegree = 5\n");
  CHECK(c.entries().size() == 2);
}

TEST_CASE("the bundled catalog parses and cross-checks") {
  Catalog c = parse_catalog(bundled_text());
  CHECK(c.entries().size() >= 190);

  // canonical printing round-trips the whole file
  CHECK(print_catalog(parse_catalog(print_catalog(c))) == print_catalog(c));

  std::set<int> degrees;
  std::size_t with_gens = 0, suspects = 0;
  for (const CatalogEntry& e : c.entries()) {
    degrees.insert(e.degree);
    with_gens += e.has_generators();
    for (const Claim& cl : e.claims) suspects += cl.suspect;
    CHECK((!e.claims.empty() || !e.notes.empty()));
  }
  // every degree the survey touches, including the ones that only carry notes
  CHECK(degrees ==
        std::set<int>{5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 17, 21, 22, 23, 24, 32});
  CHECK(with_gens >= 180);
  CHECK(suspects >= 4);

  const CatalogEntry& m11 = c.at("M_11");
  CHECK(m11.degree == 11);
  bool has_order = false;
  for (const Claim& cl : m11.claims)
    if (cl.kind == Claim::Kind::Order) {
      has_order = true;
      CHECK(cl.value == 7920);
    }
  CHECK(has_order);

  // the recorded duplicates of the degree-13 subgroup chain stay distinct
  CHECK(c.find("H_13_1a") != nullptr);
  CHECK(c.find("H_13_1b") != nullptr);

  // entries recorded without generators still carry their claims
  const CatalogEntry& m24 = c.at("M_24");
  CHECK_FALSE(m24.has_generators());
  bool no_reg = false;
  for (const Claim& cl : m24.claims)
    no_reg |= cl.kind == Claim::Kind::NoRegularSet;
  CHECK(no_reg);
}
