#include "ellfib/arith.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace ellfib {

namespace {

using i128 = __int128;

BigInt big_pow(std::uint64_t base, unsigned exp) { return boost::multiprecision::pow(BigInt(base), exp); }

// Gaps between consecutive integers coprime to 210, starting from 11.
const std::vector<std::uint64_t>& wheel_gaps() {
  static const std::vector<std::uint64_t> gaps = [] {
    std::vector<std::uint64_t> residues;
    for (std::uint64_t r = 11; r < 11 + 210; ++r) {
      if (r % 2 && r % 3 && r % 5 && r % 7) residues.push_back(r);
    }
    std::vector<std::uint64_t> g;
    for (std::size_t i = 0; i < residues.size(); ++i) {
      const std::uint64_t next = i + 1 < residues.size() ? residues[i + 1] : residues[0] + 210;
      g.push_back(next - residues[i]);
    }
    return g;
  }();
  return gaps;
}

template <class Visit>
void for_each_wheel_candidate(std::uint64_t limit, Visit&& visit) {
  for (std::uint64_t p : {5ULL, 7ULL}) {
    if (p > limit || !visit(p)) return;
  }
  const auto& gaps = wheel_gaps();
  std::uint64_t d = 11;
  for (std::size_t i = 0; d <= limit; d += gaps[i], i = (i + 1) % gaps.size()) {
    if (!visit(d)) return;
  }
}

std::uint64_t strip_six(std::uint64_t x) {
  while (x % 2 == 0) x /= 2;
  while (x % 3 == 0) x /= 3;
  return x;
}

std::uint64_t abs_u64(std::int64_t v) {
  return v < 0 ? static_cast<std::uint64_t>(-(v + 1)) + 1 : static_cast<std::uint64_t>(v);
}

// Largest r with r^k <= n.
std::uint64_t iroot_u64(std::uint64_t n, unsigned k) {
  auto r = static_cast<std::uint64_t>(std::pow(static_cast<long double>(n), 1.0L / k));
  auto pow_le = [&](std::uint64_t x) {
    i128 v = 1;
    for (unsigned i = 0; i < k; ++i) {
      v *= x;
      if (v > static_cast<i128>(n)) return false;
    }
    return true;
  };
  while (r > 0 && !pow_le(r)) --r;
  while (pow_le(r + 1)) ++r;
  return r;
}

i128 isqrt_floor(i128 n) {
  if (n <= 0) return 0;
  auto r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i128 isqrt_ceil(i128 n) {
  const i128 r = isqrt_floor(n);
  return r * r == n ? r : r + 1;
}

// p^4 | a and p^6 | b for some prime p >= 5: divide it out, repeatedly.
bool reduce_away_from_six(std::int64_t& a, std::int64_t& b) {
  bool reduced = false;
  while (true) {
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max();
    if (a != 0) limit = std::min(limit, iroot_u64(abs_u64(a), 4));
    if (b != 0) limit = std::min(limit, iroot_u64(abs_u64(b), 6));
    bool found = false;
    for_each_wheel_candidate(limit, [&](std::uint64_t p) {
      const auto p4 = static_cast<std::int64_t>(p * p * p * p);
      const auto p6 = p4 * static_cast<std::int64_t>(p * p);
      if (a % p4 == 0 && b % p6 == 0) {
        a /= p4;
        b /= p6;
        found = true;
        return false;
      }
      return true;
    });
    if (!found) return reduced;
    reduced = true;
  }
}

std::int64_t short_discriminant(std::int64_t a, std::int64_t b) {
  constexpr std::int64_t kMaxA = std::int64_t{1} << 40, kMaxB = std::int64_t{1} << 60;
  if (a > kMaxA || a < -kMaxA || b > kMaxB || b < -kMaxB) {
    throw Error(ErrorCode::Overflow, "curve coefficients too large");
  }
  const i128 d = -16 * (4 * static_cast<i128>(a) * a * a + 27 * static_cast<i128>(b) * b);
  if (d >= (i128{1} << 63) || d <= -(i128{1} << 63)) throw Error(ErrorCode::Overflow, "discriminant exceeds 63 bits");
  return static_cast<std::int64_t>(d);
}

BigInt iroot_big(const BigInt& n, unsigned k) {
  if (n < 2) return n;
  BigInt lo = 0, hi = 1;
  while (boost::multiprecision::pow(hi, k) <= n) hi *= 2;
  while (hi - lo > 1) {
    const BigInt mid = (lo + hi) / 2;
    if (boost::multiprecision::pow(mid, k) <= n) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// The enumeration keeps a >= -ceil((1.2 region)^{2/3}).
std::int64_t negative_a_cut(std::uint64_t region) {
  const long double cut = std::pow(1.2L * static_cast<long double>(region), 2.0L / 3.0L);
  return -static_cast<std::int64_t>(std::ceil(cut));
}

double to_double_up(const BigInt& num, const BigInt& den) {
  const long double v = num.convert_to<long double>() / den.convert_to<long double>();
  return std::nextafter(static_cast<double>(v * (1.0L + 1e-15L)), std::numeric_limits<double>::infinity());
}

}  // namespace

BigInt height_of_place(const FieldSpec& field, const Poly& place) {
  if (!(place.field() == field)) throw Error(ErrorCode::FieldMismatch, "place over a different field");
  if (!is_irreducible(place)) throw Error(ErrorCode::Reducible, "place must be irreducible");
  return big_pow(field.q(), static_cast<unsigned>(*place.degree()));
}

BigInt height_from_configuration(const FieldSpec& field, const FiberConfiguration& cfg) {
  BigInt h = 1;
  for (const auto& fp : cfg.places) h *= big_pow(field.q(), static_cast<unsigned>(fp.residue_degree * fp.k));
  return h;
}

BigInt height_of_discriminant(const WeierstrassFibration& w) {
  if (!validate(w).valid) throw Error(ErrorCode::InvalidModel, "a4 and a6 vanish simultaneously");
  const BigInt h = big_pow(w.field().q(), 12 * w.n());
  if (height_from_configuration(w.field(), fiber_configuration(w)) != h) {
    throw std::logic_error("local heights do not multiply to q^{12n}");
  }
  return h;
}

HeightQuery::HeightQuery(std::uint64_t q_, BigInt bound_) : q(q_), bound(std::move(bound_)) {
  if (!prime_power_decompose(q)) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  if (bound < 1) throw Error(ErrorCode::Usage, "height bound must be >= 1");
}

int compare_with_bound(std::uint64_t q, const BigInt& bound, const BigInt& total) {
  const BigInt y = big_pow(q, 11) - big_pow(q, 9);
  const BigInt d = big_pow(q, 10) - 1;
  const BigInt x = total * d + y;
  const BigInt lhs = boost::multiprecision::pow(x, 6);
  const BigInt rhs = boost::multiprecision::pow(y, 6) * boost::multiprecision::pow(bound, 5);
  return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
}

ZTable z_fqt(const HeightQuery& query) {
  ZTable t;
  t.q = query.q;
  t.bound = query.bound;
  const BigInt q(query.q);
  BigInt cumulative = 0;
  for (int n = 1; big_pow(query.q, 12 * static_cast<unsigned>(n)) <= query.bound; ++n) {
    ZRow row;
    row.n = n;
    row.term = point_count(moduli_class_closed(n), q);
    cumulative += row.term;
    row.cumulative = cumulative;
    t.rows.push_back(std::move(row));
  }
  t.total = cumulative;

  const BigInt y = big_pow(query.q, 11) - big_pow(query.q, 9);
  const BigInt d = big_pow(query.q, 10) - 1;
  const BigInt root = iroot_big(query.bound, 6);
  if (boost::multiprecision::pow(root, 6) == query.bound) {
    BigInt num = y * (boost::multiprecision::pow(root, 5) - 1);
    BigInt den = d;
    const BigInt g = boost::multiprecision::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    t.bound_upper = to_double_up(num, den);
    t.bound_exact = std::make_pair(std::move(num), std::move(den));
  } else {
    const long double b = query.bound.convert_to<long double>();
    const long double b56 = std::exp(std::log(b) * 5.0L / 6.0L);
    const long double v = y.convert_to<long double>() / d.convert_to<long double>() * (b56 - 1.0L);
    t.bound_upper = std::nextafter(static_cast<double>(v * (1.0L + 1e-15L)), std::numeric_limits<double>::infinity());
  }
  const int cmp = compare_with_bound(query.q, query.bound, t.total);
  t.bound_holds = cmp <= 0;
  t.equality_case = cmp == 0;
  return t;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor_integer(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, unsigned>> out;
  if (n == 0) throw Error(ErrorCode::Usage, "cannot factor 0");
  auto take = [&](std::uint64_t p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  };
  take(2);
  take(3);
  for_each_wheel_candidate(std::numeric_limits<std::uint64_t>::max(), [&](std::uint64_t p) {
    if (p > n / p) return false;
    take(p);
    return true;
  });
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

RationalCurve rational_curve(std::int64_t a, std::int64_t b) {
  RationalCurve c;
  c.a = a;
  c.b = b;
  c.delta = short_discriminant(a, b);
  if (c.delta == 0) throw Error(ErrorCode::SingularCurve, "discriminant is zero");
  c.min_a = a;
  c.min_b = b;
  c.minimal6 = !reduce_away_from_six(c.min_a, c.min_b);
  c.min_delta = short_discriminant(c.min_a, c.min_b);
  c.ht6 = strip_six(abs_u64(c.min_delta));
  c.bad_primes = factor_integer(c.ht6);
  c.semistable6 = std::all_of(c.bad_primes.begin(), c.bad_primes.end(), [&](const auto& pe) {
    return c.min_a % static_cast<std::int64_t>(pe.first) != 0;
  });
  return c;
}

ZqResult z_q_experiment(const ZqOptions& opts) {
  if (opts.b_max < 1) throw Error(ErrorCode::Usage, "Bmax must be >= 1");
  if (opts.b_max > opts.budget) {
    throw Error(ErrorCode::BudgetExceeded, "Bmax " + std::to_string(opts.b_max) + " exceeds budget " +
                                               std::to_string(opts.budget));
  }
  if (opts.points_per_decade < 1) throw Error(ErrorCode::Usage, "grid needs at least one point per decade");
  if (opts.jobs < 1) throw Error(ErrorCode::Usage, "jobs must be >= 1");

  unsigned __int128 region = opts.b_max;
  for (unsigned i = 0; i < opts.valuation_cap; ++i) region *= 6;
  if (region >> 62) throw Error(ErrorCode::Overflow, "6^cap * Bmax exceeds 2^62");

  ZqResult res;
  res.region = static_cast<std::uint64_t>(region);
  // |Delta| = 16 |4a^3 + 27b^2| <= region  <=>  |4a^3 + 27b^2| <= k.
  const i128 k = static_cast<i128>(res.region / 16);
  // For a > 0 both terms are nonnegative, so 4a^3 <= k bounds a exactly.
  res.a_max = static_cast<std::int64_t>(iroot_u64(static_cast<std::uint64_t>(k / 4), 3));
  // For a < 0 the region follows the cusp 27b^2 = -4a^3 indefinitely. Past
  // a_min the expected number of lattice points per unit step of a is below
  // 1/100; the boundary audit checks that nothing counted sits near it.
  res.a_min = negative_a_cut(res.region);

  const std::uint64_t b_max = opts.b_max;
  std::vector<ZqCurve> curves;
  std::uint64_t candidates = 0;
  const std::int64_t lo = res.a_min, hi = res.a_max;
  const std::int64_t span = hi - lo + 1;
#pragma omp parallel num_threads(opts.jobs) reduction(+ : candidates)
  {
    std::vector<ZqCurve> local;
#pragma omp for schedule(dynamic, 4096)
    for (std::int64_t i = 0; i < span; ++i) {
      const std::int64_t a = lo + i;
      const i128 t = 4 * static_cast<i128>(a) * a * a;
      const i128 upper = k - t;
      if (upper < 0) continue;
      const i128 lower = -k - t;
      const i128 b_hi = isqrt_floor(upper / 27);
      const i128 b_lo = lower > 0 ? isqrt_ceil((lower + 26) / 27) : 0;
      for (i128 bb = b_lo; bb <= b_hi; ++bb) {
        for (int sign : {1, -1}) {
          if (sign < 0 && bb == 0) continue;
          ++candidates;
          const i128 s = t + 27 * bb * bb;
          if (s == 0) continue;
          const auto abs_delta = static_cast<std::uint64_t>(16 * (s < 0 ? -s : s));
          const std::uint64_t ht6 = strip_six(abs_delta);
          if (ht6 > b_max) continue;
          if (std::gcd(ht6, abs_u64(a)) != 1) continue;
          const auto b = static_cast<std::int64_t>(sign * bb);
          std::int64_t ra = a, rb = b;
          if (reduce_away_from_six(ra, rb)) continue;
          local.push_back(ZqCurve{a, b, ht6, abs_delta});
        }
      }
    }
#pragma omp critical
    curves.insert(curves.end(), local.begin(), local.end());
  }
  std::sort(curves.begin(), curves.end(),
            [](const ZqCurve& x, const ZqCurve& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  res.candidates = candidates;

  std::vector<std::uint64_t> grid;
  for (int i = 0;; ++i) {
    const auto g = static_cast<std::uint64_t>(std::llround(std::pow(10.0L, static_cast<long double>(i) / opts.points_per_decade)));
    if (g > b_max) break;
    if (grid.empty() || grid.back() != g) grid.push_back(g);
  }
  if (grid.empty() || grid.back() != b_max) grid.push_back(b_max);

  unsigned __int128 cap = 1;
  for (unsigned i = 0; i < opts.valuation_cap; ++i) cap *= 6;
  for (std::uint64_t bound : grid) {
    ZqRow row;
    row.bound = bound;
    const unsigned __int128 delta_cap = cap * bound;
    // Each row applies its own A cut so a row does not depend on b_max.
    const std::int64_t row_a_min = negative_a_cut(static_cast<std::uint64_t>(delta_cap));
    for (const auto& c : curves) {
      if (c.a < row_a_min) continue;
      if (c.ht6 <= bound && c.abs_delta <= delta_cap) ++row.count;
      if (c.abs_delta <= bound) ++row.count_abs;
    }
    res.rows.push_back(row);
  }

  // Least-squares slope of log count against log B over the top decade.
  const std::uint64_t window_lo = std::max<std::uint64_t>(1, b_max / 10);
  res.window = {window_lo, b_max};
  long double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (const auto& row : res.rows) {
    if (row.bound < window_lo || row.count == 0) continue;
    const long double x = std::log(static_cast<long double>(row.bound));
    const long double y = std::log(static_cast<long double>(row.count));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++m;
  }
  const long double denom = m * sxx - sx * sx;
  res.slope = m >= 2 && denom != 0 ? static_cast<double>((m * sxy - sx * sy) / denom)
                                   : std::numeric_limits<double>::quiet_NaN();

  const long double edge = 0.99L * static_cast<long double>(-res.a_min);
  res.audit_edge_count = static_cast<std::uint64_t>(std::count_if(curves.begin(), curves.end(), [&](const ZqCurve& c) {
    return c.a < 0 && static_cast<long double>(-c.a) >= edge;
  }));
  res.audit_passed = res.audit_edge_count == 0;

  res.self_check_passed = std::all_of(curves.begin(), curves.end(), [](const ZqCurve& c) {
    const RationalCurve rc = rational_curve(c.a, c.b);
    return rc.minimal6 && rc.semistable6 && rc.ht6 == c.ht6 && abs_u64(rc.delta) == c.abs_delta;
  });
  res.curves = std::move(curves);
  return res;
}

}  // namespace ellfib
