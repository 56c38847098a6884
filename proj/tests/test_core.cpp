#include <doctest.h>

#include "ea/catalog.hpp"
#include "ea/checks.hpp"
#include "ea/io.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace ea;

namespace {

const char* kChain2Doc =
    "# two-step chain, written by hand\n"
    "ea 3\n"
    "zero 0\n"
    "unit 2\n"
    "table\n"
    "0 1 2\n"
    "1 2 .\n"
    "2 . .\n";

}  // namespace

TEST_CASE("parse a hand-written two-step chain") {
  auto e = parse_ea(kChain2Doc);
  CHECK(e.n == 3);
  CHECK(e.zero == 0);
  CHECK(e.unit == 2);
  CHECK(e.at(1, 1) == 2);
  CHECK(!e.defined(1, 2));
  CHECK(e.labels == std::vector<std::string>{"e0", "e1", "e2"});
  CHECK(validate_ea(e).valid);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_WITH_AS(parse_ea("ea x\n"), doctest::Contains("malformed"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_ea("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2\n"),
                       doctest::Contains("table row"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_ea("ea 3\nlabels a a b\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n"),
      doctest::Contains("duplicate label"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_ea("ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 7\n2 7 .\n"),
      doctest::Contains("out of range"), ParseError);

  // entry (1,2) defined, mirror cell empty
  std::string asym =
      "ea 3\nzero 0\nunit 2\ntable\n0 1 2\n1 2 0\n2 . .\n";
  CHECK_THROWS_WITH_AS(parse_ea(asym), doctest::Contains("asymmetric at (1,2)"),
                       ParseError);
  try {
    parse_ea(asym);
  } catch (const ParseError& ex) {
    CHECK(ex.line == 7);
  }
}

TEST_CASE("serialization round-trips and normalizes") {
  auto e = parse_ea(kChain2Doc);
  std::string canonical = serialize_ea(e);
  CHECK(canonical ==
        "ea 3\nlabels e0 e1 e2\nzero 0\nunit 2\ntable\n0 1 2\n1 2 .\n2 . .\n");
  CHECK(serialize_ea(parse_ea(canonical)) == canonical);

  auto c3 = testutil::chain(3);
  auto back = parse_ea(serialize_ea(c3));
  CHECK(back.sum == c3.sum);
  CHECK(back.labels == c3.labels);
}

TEST_CASE("validation reports the broken axiom with a witness") {
  auto e = parse_ea(kChain2Doc);

  SUBCASE("redirecting a+a leaves a without a complement") {
    e.at(1, 1) = 1;
    auto rep = validate_ea(e);
    CHECK(!rep.valid);
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.axiom == "Eiii" && v.witness == std::vector<int>{1}) found = true;
    CHECK(found);
    for (const auto& v : rep.violations) CHECK(oracle::axiom_violated(e, v.axiom, v.witness));
  }

  SUBCASE("a sum with the unit flags the zero-one law") {
    e.at(2, 1) = 2;
    e.at(1, 2) = 2;
    auto rep = validate_ea(e);
    CHECK(!rep.valid);
    bool found = false;
    for (const auto& v : rep.violations)
      if (v.axiom == "Eiv" && v.witness == std::vector<int>{1}) found = true;
    CHECK(found);
  }

  SUBCASE("asymmetric cells flag commutativity") {
    e.at(1, 2) = 0;
    auto rep = validate_ea(e);
    CHECK(!rep.valid);
    CHECK(rep.violations.front().axiom == "Ei");
  }
}

TEST_CASE("derived structure of the two-step chain") {
  auto e = parse_ea(kChain2Doc);
  auto d = derive(e);
  CHECK(d.complement[1] == 1);
  CHECK(d.ominus(2, 1) == 1);
  CHECK(d.leq(0, 1));
  CHECK(d.leq(1, 2));
  CHECK(!d.leq(2, 1));
}

TEST_CASE("derive rejects invalid tables") {
  auto e = parse_ea(kChain2Doc);
  e.at(1, 1) = 1;
  CHECK_THROWS_AS(derive(e), std::invalid_argument);
}

TEST_CASE("atoms of the Boolean square are incomparable complements") {
  auto e = testutil::boolean(2);
  auto d = derive(e);
  CHECK(d.complement[1] == 2);
  CHECK(!d.leq(1, 2));
  CHECK(!d.leq(2, 1));
}

TEST_CASE("bounds in the diamond and MO(2)") {
  auto dia = testutil::diamond();
  auto dd = derive(dia);
  CHECK(bound(dd, 1, 2, BoundKind::kMeet) == 0);
  CHECK(bound(dd, 1, 2, BoundKind::kJoin) == 3);

  auto m = testutil::mo(2);
  auto md = derive(m);
  CHECK(bound(md, 1, 3, BoundKind::kMeet) == 0);  // atoms of different pairs
  CHECK(bound(md, 1, 2, BoundKind::kMeet) == 0);  // an atom and its complement
}

TEST_CASE("classification of the standard small algebras") {
  auto check = [](const EffectAlgebra& e, bool ortho, bool lattice, bool mv) {
    auto d = derive(e);
    auto c = classify(e, d);
    CHECK(c.orthoalgebra == ortho);
    CHECK(c.lattice == lattice);
    CHECK(c.mv == mv);
  };
  check(testutil::mo(2), true, true, false);
  check(testutil::chain(3), false, true, true);
  check(testutil::boolean(2), true, true, true);
  check(testutil::diamond(), false, true, false);
}

TEST_CASE("order laws hold across the catalog") {
  for (const auto& [name, alg] : testutil::acceptance_catalog()) {
    if (alg.n > 10) continue;  // the full sweep runs in the acceptance suite
    auto d = derive(alg);
    auto r = check_order_laws(alg, d);
    INFO(name, ": ", r.detail);
    CHECK(r.ok);
  }
}

TEST_CASE("derived data agrees with the direct definitions") {
  for (auto steps : {1, 2, 3, 4}) {
    auto e = testutil::chain(steps);
    auto d = derive(e);
    for (int x = 0; x < e.n; ++x) {
      CHECK(oracle::complement_of(e, x) == d.complement[x]);
      for (int y = 0; y < e.n; ++y) CHECK(oracle::leq(e, x, y) == d.leq(x, y));
    }
  }
  for (const auto& e : {testutil::mo(3), testutil::boolean(3), testutil::diamond()}) {
    auto d = derive(e);
    for (int x = 0; x < e.n; ++x)
      for (int y = 0; y < e.n; ++y) {
        auto m = bound(d, x, y, BoundKind::kMeet);
        auto om = oracle::meet(e, x, y);
        CHECK(m == om);
        CHECK(bound(d, x, y, BoundKind::kJoin) == oracle::join(e, x, y));
      }
  }
}

TEST_CASE("generalized validation flags cancellation failures") {
  CHECK(validate_gea(make_gea(1, 0, {{0}})).valid);

  auto g = make_gea(3, 0, {{0, 1, 2}, {1, 2, 2}, {2, 2, kUndef}});
  auto rep = validate_gea(g);
  CHECK(!rep.valid);
  bool found = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "GE3") found = true;
  CHECK(found);
}
