#include "ellfib/census.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "census_kernel.hpp"

namespace ellfib {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void require_degrees(int d1, int d2) {
  if (d1 < 0 || d2 < 0) throw Error(ErrorCode::NegativeDegree, "degrees must be >= 0");
  if (d1 > kernel::kMaxDegree || d2 > kernel::kMaxDegree) {
    throw Error(ErrorCode::DegreeMismatch, "degree too large for the census kernel");
  }
}

std::uint64_t require_budget(std::uint64_t q, int d1, int d2, std::uint64_t budget) {
  const auto size = pair_space_size(q, d1, d2);
  if (!size || *size > budget) {
    const std::string need = size ? std::to_string(*size) : std::string("> 2^64");
    throw Error(ErrorCode::BudgetExceeded, "census over q=" + std::to_string(q) + " degrees (" +
                                               std::to_string(d1) + "," + std::to_string(d2) + ") needs " + need +
                                               " pairs; budget is " + std::to_string(budget));
  }
  return *size;
}

template <class Arith>
std::uint64_t count_pairs_parallel(const Arith& F, int d1, int d2, int jobs) {
  const std::uint64_t rows = *monic_count(F.q(), static_cast<std::size_t>(d1));
  const std::uint64_t cols = *monic_count(F.q(), static_cast<std::size_t>(d2));
  std::uint64_t total = 0;
  const auto n_rows = static_cast<std::int64_t>(rows);
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs) reduction(+ : total)
  for (std::int64_t i = 0; i < n_rows; ++i) {
    total += kernel::count_row(F, d1, d2, static_cast<std::uint64_t>(i), cols);
  }
  return total;
}

template <class Arith>
std::uint64_t count_pairs_strided(const Arith& F, int d1, int d2, std::uint64_t start, std::uint64_t stride) {
  const std::uint64_t rows = *monic_count(F.q(), static_cast<std::size_t>(d1));
  const std::uint64_t cols = *monic_count(F.q(), static_cast<std::size_t>(d2));
  std::uint64_t total = 0;
  for (std::uint64_t i = start; i < rows; i += stride) total += kernel::count_row(F, d1, d2, i, cols);
  return total;
}

int positive_jobs(int jobs) {
  if (jobs < 1) throw Error(ErrorCode::Usage, "jobs must be >= 1");
  return jobs;
}

// Degree of a packed polynomial: index of its highest nonzero slot.
int packed_degree(std::uint64_t key, unsigned bits) {
  if (key == 0) return -1;
  int hi = 63;
  while (((key >> hi) & 1) == 0) --hi;
  return hi / static_cast<int>(bits);
}

struct GroupResult {
  std::uint64_t valid = 0;
  std::uint64_t classes = 0;
  std::vector<std::uint64_t> by_l;
  std::uint64_t key4 = 0;
};

template <class Arith>
DirectCensus direct_impl(const Arith& F, const FieldSpec& field, unsigned D4, unsigned D6, int jobs) {
  using Elem = typename Arith::Elem;
  const std::uint64_t q = field.q();
  const unsigned bits = coarse_bits(q);
  const int slots4 = static_cast<int>(3 * D4 + 1);
  const int slots6 = static_cast<int>(2 * D6 + 1);
  if (slots4 * bits > 64 || slots6 * bits > 64) {
    throw Error(ErrorCode::Overflow, "coarse encoding halves must fit in 64 bits for the direct census");
  }
  const int w6 = static_cast<int>(D6) + 1;
  const std::uint64_t n6 = *monic_count(q, D6 + 1);  // all polynomials of degree <= D6
  const std::uint64_t units = q - 1;

  // a6 coefficient table, degrees, and packed (mu * a6^2) for every unit mu.
  std::vector<Elem> a6_digits(n6 * w6);
  std::vector<int> a6_deg(n6);
  std::vector<std::uint64_t> key6(n6 * units);
  std::vector<Elem> a6_lead_sq_inv(n6, 0);
  {
    std::array<Elem, kernel::kMaxDegree + 1> sq{}, scaled{};
    for (std::uint64_t j = 0; j < n6; ++j) {
      Elem* d = &a6_digits[j * w6];
      std::uint64_t rest = j;
      int deg = -1;
      for (int i = 0; i < w6; ++i) {
        d[i] = static_cast<Elem>(rest % q);
        rest /= q;
        if (d[i] != 0) deg = i;
      }
      a6_deg[j] = deg;
      const int dsq = kernel::multiply(F, d, deg, d, deg, sq.data());
      if (deg >= 0) a6_lead_sq_inv[j] = F.inv(F.mul(d[deg], d[deg]));
      for (std::uint64_t m = 0; m < units; ++m) {
        const auto mu = static_cast<Elem>(m + 1);
        for (int i = 0; i <= dsq; ++i) scaled[i] = F.mul(mu, sq[i]);
        key6[j * units + m] = kernel::pack(scaled.data(), dsq, slots6, bits);
      }
    }
  }

  // inv(c^3) for each unit c.
  std::vector<Elem> inv_cube(units);
  for (std::uint64_t m = 0; m < units; ++m) {
    const auto c = static_cast<Elem>(m + 1);
    inv_cube[m] = F.inv(F.mul(c, F.mul(c, c)));
  }

  // Groups: a4 = c * u for monic u of degree k <= D4, plus the a4 = 0 group.
  std::vector<std::pair<int, std::uint64_t>> groups;
  for (unsigned k = 0; k <= D4; ++k) {
    const std::uint64_t count = *monic_count(q, k);
    for (std::uint64_t idx = 0; idx < count; ++idx) groups.emplace_back(static_cast<int>(k), idx);
  }
  groups.emplace_back(-1, 0);

  std::vector<GroupResult> results(groups.size());
  const auto n_groups = static_cast<std::int64_t>(groups.size());
#pragma omp parallel num_threads(jobs)
  {
    std::vector<std::uint64_t> keys;
    keys.reserve(n6 * units);
    std::array<Elem, kernel::kMaxDegree + 1> u{}, cube{}, tmp{}, a{}, b{};
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t g = 0; g < n_groups; ++g) {
      const auto [k, idx] = groups[static_cast<std::size_t>(g)];
      GroupResult& out = results[static_cast<std::size_t>(g)];
      out.by_l.assign(D6 + 1, 0);
      keys.clear();
      if (k >= 0) {
        std::uint64_t rest = idx;
        for (int i = 0; i < k; ++i) {
          u[i] = static_cast<Elem>(rest % q);
          rest /= q;
        }
        u[k] = 1;
        const int dsq = kernel::multiply(F, u.data(), k, u.data(), k, tmp.data());
        const int dcube = kernel::multiply(F, tmp.data(), dsq, u.data(), k, cube.data());
        out.key4 = kernel::pack(cube.data(), dcube, slots4, bits);
      }
      for (std::uint64_t j = 0; j < n6; ++j) {
        const int d6 = a6_deg[j];
        const Elem* d = &a6_digits[j * w6];
        bool ok;
        if (k >= 0) {
          for (int i = 0; i <= k; ++i) b[i] = u[i];
          for (int i = 0; i <= d6; ++i) a[i] = d[i];
          ok = kernel::coprime(F, a.data(), d6, b.data(), k);
          ok = ok && (k == static_cast<int>(D4) || d6 == static_cast<int>(D6));
        } else {
          // a4 = 0: gcd is a6 itself, and a4 always vanishes at infinity.
          ok = d6 == 0 && D6 == 0;
        }
        if (!ok) continue;
        if (k >= 0) {
          out.valid += units;
          for (std::uint64_t m = 0; m < units; ++m) keys.push_back(key6[j * units + (inv_cube[m] - 1)]);
        } else {
          out.valid += 1;
          keys.push_back(key6[j * units + (a6_lead_sq_inv[j] - 1)]);
        }
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      out.classes = keys.size();
      for (std::uint64_t key : keys) {
        const int dsq = packed_degree(key, bits);
        if (dsq >= 0) ++out.by_l[static_cast<std::size_t>(dsq / 2)];
      }
    }
  }

  // Distinct monic u have distinct cubes, so the groups partition the
  // encodings; confirm that instead of assuming it.
  std::vector<std::uint64_t> key4s;
  key4s.reserve(results.size());
  for (const auto& r : results) key4s.push_back(r.key4);
  std::sort(key4s.begin(), key4s.end());
  if (std::adjacent_find(key4s.begin(), key4s.end()) != key4s.end()) {
    throw std::logic_error("coarse encodings collide across a4 groups");
  }

  DirectCensus census;
  census.classes_by_stratum.assign(D4 + 1, std::vector<std::uint64_t>(D6 + 1, 0));
  for (std::size_t g = 0; g < groups.size(); ++g) {
    census.valid_models += results[g].valid;
    census.classes += results[g].classes;
    const int k = groups[g].first;
    if (k < 0) continue;
    for (unsigned l = 0; l <= D6; ++l) census.classes_by_stratum[static_cast<std::size_t>(k)][l] += results[g].by_l[l];
  }
  return census;
}

}  // namespace

std::optional<std::uint64_t> pair_space_size(std::uint64_t q, int d1, int d2) {
  if (d1 < 0 || d2 < 0) return std::nullopt;
  return monic_count(q, static_cast<std::size_t>(d1) + static_cast<std::size_t>(d2));
}

std::uint64_t count_coprime_pairs(const FieldSpec& field, int d1, int d2, const CensusOptions& opts) {
  require_degrees(d1, d2);
  require_budget(field.q(), d1, d2, opts.budget);
  const int jobs = positive_jobs(opts.jobs);
  if (field.q() <= kernel::TableArith::kMaxOrder) {
    return count_pairs_parallel(kernel::TableArith(field), d1, d2, jobs);
  }
  return count_pairs_parallel(kernel::SpecArith(field), d1, d2, jobs);
}

std::uint64_t count_coprime_pairs_partition(const FieldSpec& field, int d1, int d2, std::uint64_t start,
                                            std::uint64_t stride, std::uint64_t budget) {
  require_degrees(d1, d2);
  require_budget(field.q(), d1, d2, budget);
  if (stride == 0) throw Error(ErrorCode::Usage, "stride must be positive");
  if (field.q() <= kernel::TableArith::kMaxOrder) {
    return count_pairs_strided(kernel::TableArith(field), d1, d2, start, stride);
  }
  return count_pairs_strided(kernel::SpecArith(field), d1, d2, start, stride);
}

std::uint64_t count_coprime_pairs_reference(const FieldSpec& field, int d1, int d2, std::uint64_t budget) {
  require_degrees(d1, d2);
  require_budget(field.q(), d1, d2, budget);
  std::uint64_t count = 0;
  for (const Poly& u : MonicPolys(field, static_cast<std::size_t>(d1))) {
    for (const Poly& v : MonicPolys(field, static_cast<std::size_t>(d2))) {
      if (gcd(u, v).is_unit()) ++count;
    }
  }
  return count;
}

CensusReport poly_count_report(const FieldSpec& field, int d1, int d2, const CensusOptions& opts) {
  const auto start = Clock::now();
  CensusReport r;
  r.kind = "poly-count";
  r.q = field.q();
  r.degrees = std::make_pair(d1, d2);
  r.observed = count_coprime_pairs(field, d1, d2, opts);
  r.formula = point_count(poly_class(d1, d2), BigInt(field.q()));
  r.match = r.observed == r.formula;
  r.seconds = seconds_since(start);
  return r;
}

CensusReport stratum_census(const FieldSpec& field, int n, const CensusOptions& opts) {
  const auto start = Clock::now();
  const auto index_set = strata(n);
  for (const auto& [k, l] : index_set) require_budget(field.q(), k, l, opts.budget);

  const BigInt q(field.q());
  CensusReport r;
  r.kind = "census-strata";
  r.q = field.q();
  r.n = n;
  BigInt pairs = 0;
  for (const auto& [k, l] : index_set) {
    StratumRow row;
    row.k = k;
    row.l = l;
    row.observed = count_coprime_pairs(field, k, l, opts);
    row.formula = point_count(poly_class(k, l), q);
    row.contribution = (q - 1) * row.observed;
    row.match = row.formula == row.observed;
    pairs += row.observed;
    r.strata.push_back(std::move(row));
  }
  r.observed = (q - 1) * pairs;
  r.formula = point_count(moduli_class_closed(n), q);
  r.match = r.observed == r.formula &&
            std::all_of(r.strata.begin(), r.strata.end(), [](const StratumRow& s) { return s.match; });
  r.seconds = seconds_since(start);
  return r;
}

unsigned coarse_bits(std::uint64_t q) {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < q) ++bits;
  return std::max(bits, 1u);
}

std::vector<std::uint8_t> coarse_encode(const FieldSpec& field, unsigned deg_bound4, unsigned deg_bound6,
                                        const Poly& a4, const Poly& a6) {
  if (a4.is_zero() && a6.is_zero()) throw Error(ErrorCode::InvalidModel, "both sections are zero");
  const Poly cube = a4 * a4 * a4;
  const Poly square = a6 * a6;
  const Fq mu = field.inv(a4.is_zero() ? square.leading() : cube.leading());
  const Poly c = scale(cube, mu), s = scale(square, mu);

  const unsigned bits = coarse_bits(field.q());
  const std::size_t slots4 = 3 * deg_bound4 + 1, slots6 = 2 * deg_bound6 + 1;
  if (c.coeffs().size() > slots4 || s.coeffs().size() > slots6) {
    throw Error(ErrorCode::DegreeMismatch, "coefficients exceed the encoding bounds");
  }
  std::vector<std::uint8_t> out(((slots4 + slots6) * bits + 7) / 8, 0);
  std::size_t bit = 0;
  auto put = [&](const Poly& f, std::size_t slots) {
    for (std::size_t i = 0; i < slots; ++i, bit += bits) {
      const std::uint64_t v = f.coeff(i).index();
      for (unsigned b = 0; b < bits; ++b) {
        if ((v >> b) & 1) out[(bit + b) / 8] |= static_cast<std::uint8_t>(1u << ((bit + b) % 8));
      }
    }
  };
  put(c, slots4);
  put(s, slots6);
  return out;
}

std::vector<std::uint8_t> coarse_canonical_form(const WeierstrassFibration& w) {
  if (!validate(w).valid) throw Error(ErrorCode::InvalidModel, "a4 and a6 vanish simultaneously");
  return coarse_encode(w.field(), 4 * w.n(), 6 * w.n(), w.a4(), w.a6());
}

DirectCensus direct_coarse_census_bounded(const FieldSpec& field, unsigned deg_bound4, unsigned deg_bound6,
                                          const CensusOptions& opts) {
  const int jobs = positive_jobs(opts.jobs);
  if (deg_bound4 + 1 > kernel::kMaxDegree || 3 * deg_bound4 > kernel::kMaxDegree ||
      2 * deg_bound6 > kernel::kMaxDegree) {
    throw Error(ErrorCode::DegreeMismatch, "degree bounds too large for the direct census");
  }
  require_budget(field.q(), static_cast<int>(deg_bound4 + 1), static_cast<int>(deg_bound6 + 1), opts.budget);
  if (field.q() <= kernel::TableArith::kMaxOrder) {
    return direct_impl(kernel::TableArith(field), field, deg_bound4, deg_bound6, jobs);
  }
  return direct_impl(kernel::SpecArith(field), field, deg_bound4, deg_bound6, jobs);
}

CensusReport direct_coarse_census(const FieldSpec& field, int n, const CensusOptions& opts, bool force) {
  if (n < 1) throw Error(ErrorCode::NonPositiveN, "n must be positive");
  const auto start = Clock::now();
  CensusOptions run = opts;
  if (force) run.budget = UINT64_MAX;
  const auto D4 = static_cast<unsigned>(4 * n), D6 = static_cast<unsigned>(6 * n);
  const DirectCensus census = direct_coarse_census_bounded(field, D4, D6, run);

  const BigInt q(field.q());
  CensusReport r;
  r.kind = "census-direct";
  r.q = field.q();
  r.n = n;
  r.valid_models = census.valid_models;
  r.observed = census.classes;
  r.formula = point_count(moduli_class_closed(n), q);
  bool strata_ok = true;
  for (const auto& [k, l] : strata(n)) {
    StratumRow row;
    row.k = k;
    row.l = l;
    row.observed = census.classes_by_stratum[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
    row.formula = point_count(stratum_class(k, l), q);
    row.contribution = row.observed;
    row.match = row.formula == row.observed;
    strata_ok = strata_ok && row.match;
    r.strata.push_back(std::move(row));
  }
  r.match = r.observed == r.formula && strata_ok;
  r.seconds = seconds_since(start);
  return r;
}

}  // namespace ellfib
