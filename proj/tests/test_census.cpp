#include <doctest.h>

#include <map>
#include <set>

#include "ellfib/census.hpp"
#include "oracles.hpp"

using namespace ellfib;

namespace {

BigInt big_pow(std::uint64_t q, unsigned e) { return boost::multiprecision::pow(BigInt(q), e); }

// All polynomials of degree <= d, zero included.
std::vector<Poly> all_polys(const FieldSpec& F, std::size_t d) {
  std::vector<Poly> out{Poly(F)};
  for (std::size_t k = 0; k <= d; ++k) {
    for (const Poly& m : MonicPolys(F, k)) {
      for (Fq c : F.elements()) {
        if (!c.is_zero()) out.push_back(scale(m, c));
      }
    }
  }
  return out;
}

bool below(const Poly& f, unsigned bound) { return f.is_zero() || *f.degree() < bound; }

}  // namespace

TEST_CASE("coprime pair examples") {
  const FieldSpec F5 = FieldSpec::make(5), F7 = FieldSpec::make(7);
  CHECK(count_coprime_pairs(F5, 2, 2) == 500);
  CHECK(count_coprime_pairs(F5, 0, 3) == 125);
  // (t + a, t + b) are coprime iff a != b.
  std::uint64_t distinct = 0;
  for (int a = 0; a < 7; ++a) {
    for (int b = 0; b < 7; ++b) distinct += a != b;
  }
  CHECK(count_coprime_pairs(F7, 1, 1) == distinct);
}

TEST_CASE("kernel, serial reference and brute force agree") {
  for (std::int64_t p : {5, 7}) {
    const FieldSpec F = FieldSpec::make(static_cast<std::uint64_t>(p));
    for (int d1 = 0; d1 <= 3; ++d1) {
      for (int d2 = 0; d2 <= 3; ++d2) {
        const std::uint64_t brute = oracle::coprime_pairs(p, d1, d2);
        CHECK(count_coprime_pairs(F, d1, d2) == brute);
        CHECK(count_coprime_pairs_reference(F, d1, d2) == brute);
      }
    }
  }
  // Extension field and a field past the table kernel.
  const FieldSpec F25 = FieldSpec::of_order(25);
  CHECK(count_coprime_pairs(F25, 2, 1) == count_coprime_pairs_reference(F25, 2, 1));
  const FieldSpec F257 = FieldSpec::make(257);
  CHECK(count_coprime_pairs(F257, 1, 1) == 257 * 256);
}

TEST_CASE("parallel schedule does not change counts") {
  const FieldSpec F = FieldSpec::make(7);
  const std::uint64_t serial = count_coprime_pairs(F, 3, 4, CensusOptions{kDefaultBudget, 1});
  for (int jobs : {2, 3, 8}) CHECK(count_coprime_pairs(F, 3, 4, CensusOptions{kDefaultBudget, jobs}) == serial);
  for (std::uint64_t stride : {1u, 2u, 5u, 400u}) {
    std::uint64_t sum = 0;
    for (std::uint64_t s = 0; s < stride; ++s) sum += count_coprime_pairs_partition(F, 3, 4, s, stride);
    CHECK(sum == serial);
  }
  CHECK(serial == 7 * 7 * 7 * 7 * 7 * 7 * 7 - 7 * 7 * 7 * 7 * 7 * 7);
}

TEST_CASE("budget and argument errors") {
  const FieldSpec F = FieldSpec::make(5);
  try {
    count_coprime_pairs(F, 6, 6, CensusOptions{1000, 1});
    FAIL("expected BudgetExceeded");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BudgetExceeded);
    CHECK(std::string(e.what()).find("244140625") != std::string::npos);
  }
  CHECK_THROWS_AS(count_coprime_pairs(F, -1, 2), Error);
  CHECK_THROWS_AS(count_coprime_pairs(F, 1, 1, CensusOptions{kDefaultBudget, 0}), Error);
  CHECK_THROWS_AS(stratum_census(F, 1, CensusOptions{1000, 1}), Error);
  CHECK_THROWS_AS(direct_coarse_census(F, 1, CensusOptions{1000, 1}), Error);
  CHECK(pair_space_size(5, 2, 2) == 625u);
  CHECK_FALSE(pair_space_size(5, 20, 20));
}

TEST_CASE("stratum census of L_{1,12}(F_5)") {
  const CensusReport r = stratum_census(FieldSpec::make(5), 1, CensusOptions{kDefaultBudget, 2});
  CHECK(r.observed == 46875000);
  CHECK(r.formula == 46875000);
  CHECK(r.match);
  CHECK(r.strata.size() == 11);
  std::map<std::pair<int, int>, BigInt> contrib;
  for (const auto& s : r.strata) {
    CHECK(s.match);
    contrib[{s.k, s.l}] = s.contribution;
  }
  CHECK(contrib[{4, 6}] == 4 * (big_pow(5, 10) - big_pow(5, 9)));
  CHECK(contrib[{0, 6}] == 4 * big_pow(5, 6));
}

TEST_CASE("coarse encodings") {
  const FieldSpec F = FieldSpec::make(5);
  const WeierstrassFibration w(F, 1, Poly::from_ints(F, {1, 2, 0, 0, 3}), Poly::from_ints(F, {2, 0, 1, 4}));
  REQUIRE(validate(w).valid);
  const auto code = coarse_canonical_form(w);
  for (std::uint64_t l = 1; l < 5; ++l) CHECK(coarse_canonical_form(twist(w, Fq{l})) == code);
  CHECK(coarse_canonical_form(WeierstrassFibration(F, 1, w.a4(), -w.a6())) == code);
  CHECK(coarse_canonical_form(WeierstrassFibration(F, 1, scale(w.a4(), Fq{2}), w.a6())) != code);
  CHECK(coarse_bits(5) == 3);
  CHECK(coarse_bits(2) == 1);
  CHECK(coarse_bits(256) == 8);
  CHECK(code.size() == (13 + 13) * 3 / 8 + 1);

  // Monic coprime linear pairs all encode differently.
  std::set<std::vector<std::uint8_t>> codes;
  std::uint64_t pairs = 0;
  for (const Poly& a : MonicPolys(F, 1)) {
    for (const Poly& b : MonicPolys(F, 1)) {
      if (!gcd(a, b).is_unit()) continue;
      ++pairs;
      codes.insert(coarse_encode(F, 1, 1, a, b));
    }
  }
  CHECK(pairs == 20);
  CHECK(codes.size() == pairs);
}

TEST_CASE("bounded direct census against a set-based oracle") {
  struct Case {
    std::uint64_t q;
    unsigned d4, d6;
  };
  for (const Case& cs : {Case{5, 1, 2}, Case{5, 2, 2}, Case{7, 1, 1}, Case{25, 1, 1}, Case{5, 0, 3}}) {
    const FieldSpec F = FieldSpec::of_order(cs.q);
    const auto A = all_polys(F, cs.d4), B = all_polys(F, cs.d6);
    std::set<std::pair<std::vector<Fq>, std::vector<Fq>>> classes;
    std::uint64_t valid = 0;
    for (const Poly& a4 : A) {
      for (const Poly& a6 : B) {
        if (a4.is_zero() && a6.is_zero()) continue;
        if (!gcd(a4, a6).is_unit()) continue;
        if (below(a4, cs.d4) && below(a6, cs.d6)) continue;
        ++valid;
        const Poly cube = a4 * a4 * a4, square = a6 * a6;
        const Fq mu = F.inv(a4.is_zero() ? square.leading() : cube.leading());
        const Poly c = scale(cube, mu), s = scale(square, mu);
        classes.emplace(std::vector<Fq>(c.coeffs().begin(), c.coeffs().end()),
                        std::vector<Fq>(s.coeffs().begin(), s.coeffs().end()));
      }
    }
    for (int jobs : {1, 3}) {
      const DirectCensus d = direct_coarse_census_bounded(F, cs.d4, cs.d6, CensusOptions{kDefaultBudget, jobs});
      CHECK(d.valid_models == valid);
      CHECK(d.classes == classes.size());
    }
  }
}

TEST_CASE("a model and its twists form one class") {
  const FieldSpec F = FieldSpec::make(7);
  const WeierstrassFibration w(F, 1, Poly::from_ints(F, {3, 0, 1, 0, 2}), Poly::from_ints(F, {1, 1, 0, 0, 0, 0, 5}));
  REQUIRE(validate(w).valid);
  std::set<std::vector<std::uint8_t>> codes;
  for (std::uint64_t l = 1; l < 7; ++l) codes.insert(coarse_canonical_form(twist(w, Fq{l})));
  CHECK(codes.size() == 1);
}
