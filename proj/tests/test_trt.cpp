#include <doctest.h>

#include "ea/checks.hpp"
#include "ea/io.hpp"
#include "ea/iso.hpp"
#include "ea/trt.hpp"
#include "test_util.hpp"

using namespace ea;

TEST_CASE("the standard small algebras satisfy the triple conditions") {
  for (const auto& e : {testutil::chain(2), testutil::chain(3), testutil::boolean(2),
                        testutil::diamond(), testutil::mo(2)}) {
    auto d = derive(e);
    auto rep = trt_check(e, d);
    CHECK(rep.homogeneous);
    CHECK(rep.sharply_dominating);
    CHECK(rep.block_interval);
    CHECK(rep.unique_y);
    CHECK(rep.is_trt());
  }
}

TEST_CASE("source-side maps on the three-step chain") {
  auto c3 = testutil::chain(3);
  auto d = derive(c3);
  auto maps = m_maps(c3, d);
  CHECK(maps.hat[1] == 3);
  CHECK(maps.hat[2] == 3);
  CHECK(maps.r[1] == 2);  // 1 minus a = 2a
  CHECK(maps.r[2] == 1);
}

TEST_CASE("meets with sharp elements") {
  auto dia = testutil::diamond();
  auto d = derive(dia);
  CHECK(pi_map(dia, d, 3, 1) == 1);
  CHECK(pi_map(dia, d, 0, 1) == 0);
}

TEST_CASE("top of the splitting set") {
  auto c2 = testutil::chain(2);
  CHECK(s_map(c2, derive(c2), 1, 1) == 2);  // a+a = 1 makes the unit eligible

  auto c3 = testutil::chain(3);
  CHECK(s_map(c3, derive(c3), 1, 1) == 0);  // a+a = 2a below the unit

  auto dia = testutil::diamond();
  CHECK(s_map(dia, derive(dia), 1, 2) == 0);
}

TEST_CASE("triple extraction of the three-step chain") {
  auto c3 = testutil::chain(3);
  auto ext = extract_triple(c3, derive(c3));
  CHECK(ext.sharp_to_e == std::vector<int>{0, 3});
  CHECK(ext.meager_to_e == std::vector<int>{0, 1, 2});
  CHECK(ext.triple.sharp.n == 2);
  CHECK(ext.triple.sharp.at(0, 1) == 1);
  CHECK(ext.triple.meager.at(1, 1) == 2);
  CHECK(!ext.triple.meager.defined(1, 2));
  CHECK(ext.triple.h[0] == bit(0));
  CHECK(ext.triple.h[1] == (bit(0) | bit(1) | bit(2)));
  CHECK(validate_triple(ext.triple).valid);
}

TEST_CASE("triple extraction of the all-sharp square") {
  auto b2 = testutil::boolean(2);
  auto ext = extract_triple(b2, derive(b2));
  CHECK(ext.triple.sharp.n == 4);
  CHECK(ext.triple.meager.n == 1);
  for (auto h : ext.triple.h) CHECK(h == bit(0));
  CHECK(find_isomorphism(b2, ext.triple.sharp).has_value());
}

TEST_CASE("triple-side maps agree with the worked examples") {
  auto c3 = testutil::chain(3);
  auto ext = extract_triple(c3, derive(c3));
  CHECK(hat_from_triple(ext.triple, 1) == 1);
  CHECK(hat_from_triple(ext.triple, 0) == 0);
  CHECK(r_from_triple(ext.triple, 1) == 2);
  CHECK(r_from_triple(ext.triple, 2) == 1);
  CHECK(pi_from_triple(ext.triple, 1, 2) == 2);
  CHECK(pi_from_triple(ext.triple, 0, 2) == 0);

  auto dia = testutil::diamond();
  auto dext = extract_triple(dia, derive(dia));
  // the other atom is ruled out: their meager sum does not exist
  CHECK(r_from_triple(dext.triple, 1) == 1);
  CHECK(r_from_triple(dext.triple, 2) == 2);
}

TEST_CASE("sums decided from the triple alone") {
  auto c2 = testutil::chain(2);
  auto e2 = extract_triple(c2, derive(c2));
  auto r2 = oplus_via_triple(e2.triple, 1, 1);
  REQUIRE(r2.has_value());
  CHECK(*r2 == std::pair{1, 0});  // a+a = (unit, 0)

  auto c3 = testutil::chain(3);
  auto e3 = extract_triple(c3, derive(c3));
  auto r3 = oplus_via_triple(e3.triple, 1, 1);
  REQUIRE(r3.has_value());
  CHECK(*r3 == std::pair{0, 2});  // a+a = (0, 2a)

  auto dia = testutil::diamond();
  auto ed = extract_triple(dia, derive(dia));
  CHECK(!oplus_via_triple(ed.triple, 1, 2).has_value());
}

TEST_CASE("pair algebra rebuilt from the three-step chain") {
  auto c3 = testutil::chain(3);
  auto ext = extract_triple(c3, derive(c3));
  auto tea = reconstruct_tea(ext.triple);
  REQUIRE(tea.pairs.size() == 4);
  CHECK(tea.pairs[0] == std::pair{0, 0});
  CHECK(tea.pairs[1] == std::pair{0, 1});
  CHECK(tea.pairs[2] == std::pair{0, 2});
  CHECK(tea.pairs[3] == std::pair{1, 0});
  CHECK(tea.algebra.at(1, 1) == 2);  // (0,a)+(0,a) = (0,2a)
  CHECK(tea.algebra.at(1, 2) == 3);  // (0,a)+(0,2a) = (1,0)
  CHECK(find_isomorphism(c3, tea.algebra).has_value());
}

TEST_CASE("pair algebra of the diamond keeps the atoms incompatible") {
  auto dia = testutil::diamond();
  auto ext = extract_triple(dia, derive(dia));
  auto tea = reconstruct_tea(ext.triple);
  REQUIRE(tea.pairs.size() == 4);
  int pa = tea.pair_index(0, 1);
  int pb = tea.pair_index(0, 2);
  CHECK(!tea.algebra.defined(pa, pb));
}

TEST_CASE("certificates on the worked examples") {
  auto c3 = testutil::chain(3);
  auto cert = verify_triple_theorem(c3, derive(c3));
  REQUIRE(cert.ok);
  CHECK(cert.tea.algebra.label(cert.phi[2]) == "(0,2a)");
  CHECK(cert.tea.algebra.label(cert.phi[3]) == "(1,0)");

  auto m = testutil::mo(2);
  auto mcert = verify_triple_theorem(m, derive(m));
  REQUIRE(mcert.ok);
  for (int x = 0; x < m.n; ++x)
    CHECK(mcert.tea.pairs[mcert.phi[x]].second == 0);  // x maps to (x, 0)
}

TEST_CASE("sum reconstruction matches the source on TRT instances") {
  for (const auto& e : {testutil::chain(2), testutil::chain(5), testutil::boolean(3),
                        testutil::diamond(), testutil::mo(3),
                        generate(product_spec(chain_spec(2), chain_spec(2)))}) {
    auto d = derive(e);
    auto r = check_sum_reconstruction(e, d);
    INFO(r.detail);
    CHECK(r.ok);
  }
}

TEST_CASE("triple files round-trip and rebuild the source") {
  auto dia = testutil::diamond();
  auto ext = extract_triple(dia, derive(dia));
  std::string doc = serialize_triple(ext.triple);
  auto parsed = parse_triple(doc);
  CHECK(serialize_triple(parsed) == doc);
  CHECK(validate_triple(parsed).valid);
  auto tea = reconstruct_tea(parsed);
  CHECK(find_isomorphism(dia, tea.algebra).has_value());
}

TEST_CASE("corrupt triples are rejected with diagnostics") {
  auto c3 = testutil::chain(3);
  auto ext = extract_triple(c3, derive(c3));

  SUBCASE("h missing the bottom element") {
    ext.triple.h[1] &= ~bit(0);
    CHECK(!validate_triple(ext.triple).valid);
    CHECK_THROWS_AS(reconstruct_tea(ext.triple), DataError);
  }
  SUBCASE("h not monotone") {
    ext.triple.h[0] |= bit(2);
    CHECK(!validate_triple(ext.triple).valid);
  }
}

TEST_CASE("extraction follows the condition check") {
  for (const auto& e : enumerate_all(5)) {
    auto d = derive(e);
    if (trt_check(e, d).is_trt())
      CHECK_NOTHROW(extract_triple(e, d));
    else
      CHECK_THROWS_AS(extract_triple(e, d), DataError);
  }
}

TEST_CASE("every homogeneous seven-element algebra rebuilds from its triple") {
  int verified = 0;
  for (const auto& e : enumerate_all(7)) {
    if (e.n != 7) continue;
    auto d = derive(e);
    if (!is_homogeneous(e, d)) continue;
    REQUIRE(trt_check(e, d).is_trt());
    auto cert = verify_triple_theorem(e, d);
    INFO(cert.failure);
    CHECK(cert.ok);
    ++verified;
  }
  CHECK(verified == 12);
}

TEST_CASE("the six-element non-homogeneous algebra is refused") {
  // two complement pairs p/p', q/q' with p'+p' = q'+q' = q and p'+q' = p;
  // q' <= p'+p' <= q = (q')' admits no splitting below p'
  auto e = make_effect_algebra(6, 0, 5,
                               {{0, 1, 2, 3, 4, 5},
                                {1, kUndef, kUndef, 5, kUndef, kUndef},
                                {2, kUndef, kUndef, kUndef, 5, kUndef},
                                {3, 5, kUndef, 2, 1, kUndef},
                                {4, kUndef, 5, 1, 2, kUndef},
                                {5, kUndef, kUndef, kUndef, kUndef, kUndef}});
  REQUIRE(validate_ea(e).valid);
  auto d = derive(e);
  std::vector<int> w;
  CHECK(!is_homogeneous(e, d, &w));
  CHECK(w == std::vector<int>{4, 3, 3});
  auto rep = trt_check(e, d);
  CHECK(!rep.homogeneous);
  CHECK(rep.sharply_dominating);
  CHECK(rep.block_interval);
  CHECK(!rep.unique_y);
  CHECK(!rep.is_trt());
  CHECK_THROWS_AS(extract_triple(e, d), DataError);
}
