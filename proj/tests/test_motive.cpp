#include <doctest.h>

#include "ellfib/motive.hpp"

using namespace ellfib;

namespace {

MotiveClass L(std::size_t k) { return MotiveClass::monomial(1, k); }

}  // namespace

TEST_CASE("ring arithmetic") {
  const MotiveClass gm = MotiveClass::gm();
  CHECK(gm == L(1) - MotiveClass::integer(1));
  CHECK(gm * gm == L(2) - MotiveClass::monomial(2, 1) + MotiveClass::integer(1));
  CHECK((L(3) - L(3)).is_zero());
  CHECK(to_string(L(11) - L(9)) == "L^11 - L^9");
  CHECK(to_string(gm) == "L - 1");
  CHECK(to_string(MotiveClass()) == "0");
  CHECK(to_string(MotiveClass::integer(-3)) == "-3");
  const auto terms = (L(11) - L(9)).terms();
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].first == 11);
  CHECK(terms[1].second == -1);
}

TEST_CASE("poly_class and stratum_class examples") {
  CHECK(poly_class(4, 6) == L(10) - L(9));
  CHECK(poly_class(0, 6) == L(6));
  CHECK(poly_class(0, 0) == MotiveClass::integer(1));
  CHECK(stratum_class(4, 6) == MotiveClass::gm() * (L(10) - L(9)));
  CHECK(stratum_class(0, 6) == MotiveClass::gm() * L(6));
  CHECK(stratum_class(0, 0) == MotiveClass::gm());
  CHECK_THROWS_AS(poly_class(-1, 2), Error);
}

TEST_CASE("strata of L_{1,12n}") {
  const auto s = strata(1);
  // (4,6), then (k,6) for k < 4, then (4,l) for l < 6.
  CHECK(s.size() == 1 + 4 + 6);
  CHECK(s.front() == std::make_pair(4, 6));
  for (const auto& [k, l] : s) CHECK((k == 4 || l == 6));
}

TEST_CASE("stratified sum equals closed form") {
  CHECK(moduli_class_stratified(1) == L(11) - L(9));
  CHECK(moduli_class_stratified(2) == L(21) - L(19));
  CHECK(moduli_class_closed(3) == L(31) - L(29));
  for (int n = 1; n <= 20; ++n) CHECK(moduli_class_stratified(n) == moduli_class_closed(n));
  CHECK_THROWS_AS(moduli_class_closed(0), Error);
}

TEST_CASE("recurrence reproduces the closed form") {
  for (int d1 = 0; d1 <= 12; ++d1) {
    for (int d2 = 0; d2 <= 12; ++d2) CHECK(poly_class_recurrence(d1, d2) == poly_class(d1, d2));
  }
}

TEST_CASE("point counts") {
  CHECK(point_count(L(11) - L(9), 5) == 46875000);
  CHECK(point_count(moduli_class_closed(1), 5) == 46875000);
  CHECK(point_count(moduli_class_closed(1), 7) == BigInt(1977326743) - BigInt(40353607));
  for (int q : {2, 5, 49}) {
    CHECK(point_count(MotiveClass::gm(), q) == q - 1);
    CHECK(point_count(MotiveClass::integer(1), q) == 1);
  }
  // Counting is a ring homomorphism.
  const MotiveClass a = poly_class(3, 2), b = stratum_class(1, 6);
  CHECK(point_count(a * b, 7) == point_count(a, 7) * point_count(b, 7));
  CHECK(point_count(a - b, 7) == point_count(a, 7) - point_count(b, 7));
  CHECK(point_count(moduli_class_closed(20), 5) ==
        boost::multiprecision::pow(BigInt(5), 201) - boost::multiprecision::pow(BigInt(5), 199));
}
