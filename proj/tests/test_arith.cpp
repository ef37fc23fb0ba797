#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "ellfib/arith.hpp"

using namespace ellfib;

namespace {

BigInt big_pow(std::uint64_t q, unsigned e) { return boost::multiprecision::pow(BigInt(q), e); }

std::uint64_t strip6(std::uint64_t x) {
  while (x % 2 == 0) x /= 2;
  while (x % 3 == 0) x /= 3;
  return x;
}

bool is_prime_naive(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("heights of places") {
  const FieldSpec F5 = FieldSpec::make(5), F7 = FieldSpec::make(7);
  CHECK(height_of_place(F5, Poly::t(F5)) == 5);
  CHECK(height_of_place(F5, Poly::from_ints(F5, {2, 0, 1})) == 25);
  CHECK(height_of_place(F7, Poly::from_ints(F7, {3, 1})) == 7);
  CHECK_THROWS_AS(height_of_place(F5, Poly::from_ints(F5, {4, 0, 1})), Error);
}

TEST_CASE("height of the discriminant") {
  const FieldSpec F5 = FieldSpec::make(5), F7 = FieldSpec::make(7);
  const WeierstrassFibration w(F5, 1, Poly::from_ints(F5, {1}), Poly::from_ints(F5, {0, 0, 0, 0, 0, 0, 1}));
  CHECK(height_of_discriminant(w) == 244140625);
  CHECK(height_from_configuration(F5, fiber_configuration(w)) == big_pow(5, 12));
  const WeierstrassFibration v(F7, 2, Poly::from_ints(F7, {1, 0, 0, 0, 0, 0, 0, 0, 1}), Poly::from_ints(F7, {0, 3}));
  CHECK(height_of_discriminant(v) == big_pow(7, 24));
  const WeierstrassFibration bad(F5, 1, Poly(F5), Poly::from_ints(F5, {0, 0, 0, 0, 0, 0, 1}));
  CHECK_THROWS_AS(height_of_discriminant(bad), Error);
  // Twisting leaves the height alone.
  CHECK(height_of_discriminant(twist(w, Fq{2})) == height_of_discriminant(w));
}

TEST_CASE("height factorization over random valid models") {
  for (std::uint64_t q : {5u, 7u, 25u}) {
    const FieldSpec F = FieldSpec::of_order(q);
    std::mt19937_64 rng(q);
    int seen = 0;
    for (int i = 0; i < 200; ++i) {
      const unsigned n = 1 + static_cast<unsigned>(i % 2);
      std::vector<Fq> x(4 * n + 1), y(6 * n + 1);
      for (auto& c : x) c = Fq{rng() % q};
      for (auto& c : y) c = Fq{rng() % q};
      const WeierstrassFibration w(F, n, Poly(F, x), Poly(F, y));
      if (!validate(w).valid) continue;
      ++seen;
      CHECK(height_from_configuration(F, fiber_configuration(w)) == big_pow(q, 12 * n));
    }
    CHECK(seen > 100);
  }
}

TEST_CASE("Z over F_q(t)") {
  const ZTable a = z_fqt(HeightQuery(5, big_pow(5, 12)));
  CHECK(a.total == 46875000);
  CHECK(a.equality_case);
  CHECK(a.bound_holds);
  REQUIRE(a.bound_exact);
  CHECK(a.bound_exact->first == 46875000);
  CHECK(a.bound_exact->second == 1);

  const ZTable b = z_fqt(HeightQuery(5, big_pow(5, 11)));
  CHECK(b.total == 0);
  CHECK(b.rows.empty());
  CHECK(b.bound_holds);
  CHECK_FALSE(b.equality_case);

  const ZTable c = z_fqt(HeightQuery(5, big_pow(5, 24)));
  CHECK(c.total == (big_pow(5, 11) - big_pow(5, 9)) + (big_pow(5, 21) - big_pow(5, 19)));
  CHECK(c.equality_case);
  CHECK(c.rows.size() == 2);

  // B = 1: Z = 0 and the bound is (B^{5/6} - 1) * ... = 0.
  CHECK(z_fqt(HeightQuery(7, 1)).equality_case);
  CHECK_THROWS_AS(HeightQuery(7, 0), Error);
  CHECK_THROWS_AS(HeightQuery(6, 10), Error);
}

TEST_CASE("Z increments term by term") {
  for (std::uint64_t q : {5u, 7u, 11u, 25u}) {
    BigInt prev = 0;
    for (unsigned m = 1; m <= 6; ++m) {
      const ZTable t = z_fqt(HeightQuery(q, big_pow(q, 12 * m)));
      CHECK(t.total - prev == big_pow(q, 10 * m + 1) - big_pow(q, 10 * m - 1));
      CHECK(t.equality_case);
      prev = t.total;
    }
  }
}

TEST_CASE("the bound holds strictly away from q^{12m}") {
  std::mt19937_64 rng(5);
  for (std::uint64_t q : {5u, 7u}) {
    for (int i = 0; i < 30; ++i) {
      const BigInt b = big_pow(q, 12) * (1 + rng() % 100000) + 1 + rng() % 1000;
      const ZTable t = z_fqt(HeightQuery(q, b));
      CHECK(t.bound_holds);
      CHECK_FALSE(t.equality_case);
      CHECK(compare_with_bound(q, b, t.total) < 0);
      // The floating bound is an upper bound for the total.
      CHECK(t.bound_upper >= t.total.convert_to<double>());
    }
  }
  // A total above the bound is reported as such.
  CHECK(compare_with_bound(5, big_pow(5, 12), 46875001) > 0);
}

TEST_CASE("rational curves") {
  const RationalCurve a = rational_curve(-1, 0);
  CHECK(a.delta == 64);
  CHECK(a.ht6 == 1);
  CHECK(a.semistable6);
  CHECK(a.minimal6);
  CHECK(a.bad_primes.empty());

  const RationalCurve b = rational_curve(1, 1);
  CHECK(b.delta == -496);
  CHECK(b.ht6 == 31);
  CHECK(b.semistable6);
  REQUIRE(b.bad_primes.size() == 1);
  CHECK(b.bad_primes[0] == std::make_pair(std::uint64_t{31}, 1u));

  const RationalCurve c = rational_curve(625, 15625);
  CHECK_FALSE(c.minimal6);
  CHECK(c.min_a == 1);
  CHECK(c.min_b == 1);
  CHECK(c.ht6 == 31);

  // 5 | A and 5 | Delta: additive at 5.
  const RationalCurve d = rational_curve(5, 5);
  CHECK(d.delta == -16 * (4 * 125 + 27 * 25));
  CHECK_FALSE(d.semistable6);

  CHECK_THROWS_AS(rational_curve(-3, 2), Error);
  CHECK_THROWS_AS(rational_curve(std::int64_t{1} << 50, 0), Error);
}

TEST_CASE("minimalization leaves ht6 and semistability unchanged") {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t a = static_cast<std::int64_t>(rng() % 201) - 100;
    const std::int64_t b = static_cast<std::int64_t>(rng() % 201) - 100;
    if (4 * a * a * a + 27 * b * b == 0) continue;
    const RationalCurve base = rational_curve(a, b);
    for (std::int64_t p : {5, 7}) {
      const std::int64_t p4 = p * p * p * p, p6 = p4 * p * p;
      const RationalCurve scaled = rational_curve(a * p4, b * p6);
      CHECK_FALSE(scaled.minimal6);
      CHECK(scaled.ht6 == base.ht6);
      CHECK(scaled.semistable6 == base.semistable6);
      CHECK(scaled.min_a == base.min_a);
      CHECK(scaled.min_b == base.min_b);
    }
  }
}

TEST_CASE("integer factorization") {
  CHECK(factor_integer(1).empty());
  CHECK(factor_integer(496) == std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {31, 1}});
  CHECK(factor_integer(999999999989ULL) == std::vector<std::pair<std::uint64_t, unsigned>>{{999999999989ULL, 1}});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = 1 + rng() % 1'000'000'000'000ULL;
    std::uint64_t prod = 1;
    std::uint64_t last = 0;
    for (const auto& [p, e] : factor_integer(n)) {
      CHECK(p > last);
      last = p;
      if (p < 1'000'000) CHECK(is_prime_naive(p));
      for (unsigned k = 0; k < e; ++k) prod *= p;
    }
    CHECK(prod == n);
  }
  CHECK_THROWS_AS(factor_integer(0), Error);
}

TEST_CASE("Q-side explorer: small cap against brute force") {
  // cap 0: the enumeration region is |Delta| <= B_max itself; compare every
  // row against a direct scan of a box that contains the truncated region.
  ZqOptions o;
  o.b_max = 3000;
  o.valuation_cap = 0;
  o.points_per_decade = 3;
  const ZqResult r = z_q_experiment(o);
  CHECK(r.self_check_passed);
  const std::int64_t amin = r.a_min;
  for (const ZqRow& row : r.rows) {
    const std::int64_t row_cut = -static_cast<std::int64_t>(std::ceil(std::pow(1.2L * row.bound, 2.0L / 3.0L)));
    std::uint64_t count = 0, count_abs = 0;
    for (std::int64_t a = amin; a <= 20; ++a) {
      if (a < row_cut) continue;
      const std::int64_t bmax = static_cast<std::int64_t>(std::sqrt((4.0L * std::abs(a) * a * a + 3000.0L) / 27.0L)) + 2;
      for (std::int64_t b = -bmax; b <= bmax; ++b) {
        const __int128 s = 4 * static_cast<__int128>(a) * a * a + 27 * static_cast<__int128>(b) * b;
        if (s == 0) continue;
        const auto ad = static_cast<std::uint64_t>(16 * (s < 0 ? -s : s));
        if (ad > row.bound) continue;
        const RationalCurve c = rational_curve(a, b);
        if (!c.minimal6 || !c.semistable6) continue;
        if (strip6(ad) <= row.bound) ++count;
        ++count_abs;
      }
    }
    CHECK(row.count == count);
    CHECK(row.count_abs == count_abs);
  }
}

TEST_CASE("Q-side explorer properties") {
  ZqOptions o;
  o.b_max = 20000;
  o.jobs = 3;
  const ZqResult r = z_q_experiment(o);
  CHECK(r.self_check_passed);
  CHECK(std::isfinite(r.slope));
  CHECK(r.window == std::make_pair(std::uint64_t{2000}, std::uint64_t{20000}));
  REQUIRE_FALSE(r.rows.empty());
  CHECK(r.rows.front().bound == 1);
  CHECK(r.rows.back().bound == 20000);
  for (std::size_t i = 1; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].bound > r.rows[i - 1].bound);
    CHECK(r.rows[i].count >= r.rows[i - 1].count);
    CHECK(r.rows[i].count_abs >= r.rows[i - 1].count_abs);
  }
  // (-1, 0) has ht6 = 1 and is counted from B = 1 on.
  bool found = false;
  for (const auto& c : r.curves) found = found || (c.a == -1 && c.b == 0);
  CHECK(found);
  CHECK(r.rows.front().count >= 1);
  // Every counted curve re-verifies.
  for (const auto& c : r.curves) {
    const RationalCurve rc = rational_curve(c.a, c.b);
    CHECK(rc.minimal6);
    CHECK(rc.semistable6);
    CHECK(rc.ht6 == c.ht6);
  }
  // Same answer single-threaded, and rows do not depend on b_max.
  o.jobs = 1;
  const ZqResult s = z_q_experiment(o);
  CHECK(s.curves.size() == r.curves.size());
  o.b_max = 200000;
  const ZqResult big = z_q_experiment(o);
  for (const auto& row : r.rows) {
    for (const auto& other : big.rows) {
      if (other.bound == row.bound) CHECK(other.count == row.count);
    }
  }
  ZqOptions tight;
  tight.b_max = 1000;
  tight.budget = 100;
  CHECK_THROWS_AS(z_q_experiment(tight), Error);
}
