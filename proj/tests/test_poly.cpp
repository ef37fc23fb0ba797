#include <doctest.h>

#include <random>

#include "ellfib/poly.hpp"
#include "oracles.hpp"

using namespace ellfib;

namespace {

oracle::IntPoly ints(const Poly& f) {
  oracle::IntPoly out;
  for (Fq c : f.coeffs()) out.push_back(static_cast<std::int64_t>(c.index()));
  return out;
}

}  // namespace

TEST_CASE("ring operations over F_5") {
  const FieldSpec F = FieldSpec::make(5);
  const Poly a = Poly::from_ints(F, {1, 1}), b = Poly::from_ints(F, {4, 1});
  CHECK(a * b == Poly::from_ints(F, {4, 0, 1}));
  const auto [s, r] = divrem(Poly::from_ints(F, {0, 0, 0, 1}), Poly::t(F));
  CHECK(s == Poly::from_ints(F, {0, 0, 1}));
  CHECK(r.is_zero());
  CHECK(eval(Poly::from_ints(F, {1, 0, 1}), Fq{2}) == F.zero());
  CHECK(derivative(Poly::from_ints(F, {1, 2, 3, 4, 1, 1})) == Poly::from_ints(F, {2, 1, 2, 4}));
  CHECK_FALSE(Poly(F).degree());
  CHECK(Poly::from_ints(F, {3, 0, 0}).degree() == 0u);
  CHECK_THROWS_AS(divrem(a, Poly(F)), Error);
  CHECK_THROWS_AS(a + Poly::from_ints(FieldSpec::make(7), {1}), Error);
}

TEST_CASE("divrem identity on random inputs") {
  const FieldSpec F = FieldSpec::of_order(25);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    std::vector<Fq> x(rng() % 12), y(1 + rng() % 6);
    for (auto& c : x) c = Fq{rng() % 25};
    for (auto& c : y) c = Fq{rng() % 25};
    y.back() = Fq{1 + rng() % 24};
    const Poly f(F, x), g(F, y);
    const auto [s, r] = divrem(f, g);
    CHECK(s * g + r == f);
    CHECK(degree_less(r, g));
  }
}

TEST_CASE("gcd") {
  const FieldSpec F = FieldSpec::make(5);
  CHECK(gcd(Poly::from_ints(F, {-1, 0, 1}), Poly::from_ints(F, {-1, 1})) == Poly::from_ints(F, {4, 1}));
  CHECK(gcd(Poly::t(F), Poly::from_ints(F, {1, 1})) == Poly::from_ints(F, {1}));
  CHECK_THROWS_AS(gcd(Poly(F), Poly(F)), Error);
  // Against the independent Euclid on every pair of monic quadratics.
  for (const Poly& f : MonicPolys(F, 2)) {
    for (const Poly& g : MonicPolys(F, 2)) {
      CHECK(static_cast<int>(*gcd(f, g).degree()) == oracle::gcd_degree(ints(f), ints(g), 5));
    }
  }
}

TEST_CASE("factor examples") {
  const FieldSpec F = FieldSpec::make(5);
  const Factorization a = factor(Poly::from_ints(F, {4, 0, 1}));
  REQUIRE(a.factors.size() == 2);
  CHECK(a.factors[0].first == Poly::from_ints(F, {1, 1}));
  CHECK(a.factors[1].first == Poly::from_ints(F, {4, 1}));
  const Factorization c = factor(Poly::from_ints(F, {0, 0, 1}));
  REQUIRE(c.factors.size() == 1);
  CHECK(c.factors[0].first == Poly::t(F));
  CHECK(c.factors[0].second == 2);
  const Factorization d = factor(Poly::from_ints(F, {4, 0, 1, 0, 0}));
  CHECK(d.expand(F) == Poly::from_ints(F, {4, 0, 1}));
  CHECK_THROWS_AS(factor(Poly(F)), Error);
}

TEST_CASE("t^2 + 4 splits at its roots over F_5") {
  // t^2 + 4 = t^2 - 1 has roots 1 and 4; (t + 2)(t + 3) is t^2 + 1.
  const FieldSpec F = FieldSpec::make(5);
  CHECK(Poly::from_ints(F, {2, 1}) * Poly::from_ints(F, {3, 1}) == Poly::from_ints(F, {1, 0, 1}));
  const Poly f = Poly::from_ints(F, {4, 0, 1});
  std::vector<std::uint64_t> roots;
  for (Fq x : F.elements()) {
    if (eval(f, x).is_zero()) roots.push_back(x.index());
  }
  CHECK(roots == std::vector<std::uint64_t>{1, 4});
  const Factorization fac = factor(f);
  REQUIRE(fac.factors.size() == 2);
  CHECK(fac.factors[0].first == Poly::from_ints(F, {1, 1}));
  CHECK(fac.factors[1].first == Poly::from_ints(F, {4, 1}));
  const Factorization other = factor(Poly::from_ints(F, {1, 0, 1}));
  REQUIRE(other.factors.size() == 2);
  CHECK(other.factors[0].first == Poly::from_ints(F, {2, 1}));
  CHECK(other.factors[1].first == Poly::from_ints(F, {3, 1}));
}

TEST_CASE("factor round trip with multiplicities") {
  for (std::uint64_t q : {5u, 7u, 25u, 9u, 8u}) {
    const FieldSpec F = FieldSpec::of_order(q);
    // Irreducibles of degree 1..3 found by the independent test over F_p, or
    // by root-freeness up to degree 3 for extension fields.
    std::vector<Poly> irr;
    for (std::size_t d = 1; d <= 3; ++d) {
      for (const Poly& f : MonicPolys(F, d)) {
        bool root = false;
        for (Fq x : F.elements()) root = root || eval(f, x).is_zero();
        if (!root) irr.push_back(f);
        if (irr.size() >= 4 * d) break;
      }
    }
    std::mt19937_64 rng(q);
    for (int trial = 0; trial < 20; ++trial) {
      std::shuffle(irr.begin(), irr.end(), rng);
      const unsigned mult[5] = {1, 1, 2, 3, 5};
      Poly f = Poly::constant(F, Fq{1 + rng() % (q - 1)});
      for (int i = 0; i < 5; ++i) f = f * pow(irr[i], mult[i]);
      const Factorization fac = factor(f, rng());
      CHECK(fac.expand(F) == f);
      CHECK(fac.factors.size() == 5);
      for (const auto& [p, e] : fac.factors) CHECK(is_irreducible(p));
    }
  }
}

TEST_CASE("is_irreducible matches trial division over F_5 up to degree 5") {
  const FieldSpec F = FieldSpec::make(5);
  for (std::size_t d = 1; d <= 5; ++d) {
    std::uint64_t count = 0;
    for (const Poly& f : MonicPolys(F, d)) {
      const bool irr = is_irreducible(f);
      CHECK(irr == oracle::irreducible(ints(f), 5));
      count += irr;
    }
    // Necklace counts: 5, 10, 40, 150, 624.
    const std::uint64_t expect[] = {0, 5, 10, 40, 150, 624};
    CHECK(count == expect[d]);
  }
}

TEST_CASE("factorization is seed independent") {
  const FieldSpec F = FieldSpec::of_order(7);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    std::vector<Fq> c(9);
    for (auto& x : c) x = Fq{rng() % 7};
    c.back() = Fq{1};
    const Poly f(F, c);
    const Factorization a = factor(f, 1), b = factor(f, 99);
    CHECK(a.factors == b.factors);
  }
}

TEST_CASE("monic polynomial streams") {
  const FieldSpec F5 = FieldSpec::make(5), F7 = FieldSpec::make(7);
  const MonicPolys zero(F5, 0);
  CHECK(zero.size() == 1);
  CHECK(*zero.begin() == Poly::from_ints(F5, {1}));
  CHECK(MonicPolys(F5, 2).size() == 25);
  std::vector<Poly> lin(MonicPolys(F7, 1).begin(), MonicPolys(F7, 1).end());
  REQUIRE(lin.size() == 7);
  for (std::int64_t a = 0; a < 7; ++a) CHECK(lin[a] == Poly::from_ints(F7, {a, 1}));
  // Strided partitions cover the stream exactly once.
  std::uint64_t seen = 0;
  for (std::uint64_t s = 0; s < 3; ++s) {
    for (const Poly& f : MonicPolys(F5, 3, s, 3)) {
      CHECK(f.is_monic());
      ++seen;
    }
  }
  CHECK(seen == 125);
  CHECK(monic_poly_at(F5, 2, 7) == Poly::from_ints(F5, {2, 1, 1}));
  CHECK_FALSE(monic_count(5, 40));
}

TEST_CASE("coefficient parsing and printing") {
  const FieldSpec F = FieldSpec::make(5);
  CHECK(parse_coeffs(F, "1,0,2") == Poly::from_ints(F, {1, 0, 2}));
  CHECK(parse_coeffs(F, " -1 , 0 ") == Poly::from_ints(F, {4}));
  CHECK(format_coeffs(Poly::from_ints(F, {1, 0, 2})) == "1,0,2");
  CHECK(format_coeffs(Poly(F)) == "0");
  CHECK(to_string(Poly::from_ints(F, {4, 0, 1})) == "t^2 + 4");
  CHECK(to_string(Poly::from_ints(F, {0, 2})) == "2*t");
  CHECK_THROWS_AS(parse_coeffs(F, "1,,2"), Error);
  CHECK_THROWS_AS(parse_coeffs(F, "x"), Error);
}
