#pragma once

// Global-field counting: heights of places and discriminants over F_q(t),
// the counting function Z over F_q(t) with its closed-form bound, and an
// away-from-6 explorer for the corresponding count over Q.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellfib/motive.hpp"
#include "ellfib/weier.hpp"

namespace ellfib {

/// |O_K / p| = q^{deg p} for a monic irreducible p in F_q[t].
BigInt height_of_place(const FieldSpec& field, const Poly& place);

/// Product over the configuration of q^{residue_degree * k}.
BigInt height_from_configuration(const FieldSpec& field, const FiberConfiguration& cfg);

/// q^{12n}. Checks it against the product of local heights; a mismatch
/// raises std::logic_error.
BigInt height_of_discriminant(const WeierstrassFibration& w);

struct HeightQuery {
  std::uint64_t q = 0;
  BigInt bound;

  /// Validates q as a prime power and bound >= 1.
  HeightQuery(std::uint64_t q, BigInt bound);
};

struct ZRow {
  int n = 0;
  BigInt term;
  BigInt cumulative;
};

struct ZTable {
  std::uint64_t q = 0;
  BigInt bound;
  std::vector<ZRow> rows;
  BigInt total;
  /// (q^11 - q^9)/(q^10 - 1) * (B^{5/6} - 1), exact as a reduced fraction
  /// when B is a perfect sixth power.
  std::optional<std::pair<BigInt, BigInt>> bound_exact;
  /// The same bound in floating point, rounded upward.
  double bound_upper = 0.0;
  /// Exact comparison of total against the bound.
  bool bound_holds = false;
  bool equality_case = false;
};

ZTable z_fqt(const HeightQuery& query);

/// Sign of total - (q^11 - q^9)/(q^10 - 1) * (B^{5/6} - 1), decided in exact
/// integer arithmetic by comparing sixth powers.
int compare_with_bound(std::uint64_t q, const BigInt& bound, const BigInt& total);

struct RationalCurve {
  std::int64_t a = 0;
  std::int64_t b = 0;
  /// -16 (4 a^3 + 27 b^2) of the input model.
  std::int64_t delta = 0;
  bool minimal6 = false;
  /// Representative with no p >= 5 such that p^4 | a and p^6 | b.
  std::int64_t min_a = 0;
  std::int64_t min_b = 0;
  std::int64_t min_delta = 0;
  /// Prime-to-6 part of |min_delta|.
  std::uint64_t ht6 = 0;
  /// No prime p >= 5 divides both min_delta and c4 = -48 min_a.
  bool semistable6 = false;
  /// Primes p >= 5 dividing min_delta with their exponents.
  std::vector<std::pair<std::uint64_t, unsigned>> bad_primes;
};

RationalCurve rational_curve(std::int64_t a, std::int64_t b);

/// Trial division with a 2-3-5-7 wheel.
std::vector<std::pair<std::uint64_t, unsigned>> factor_integer(std::uint64_t n);

struct ZqOptions {
  std::uint64_t b_max = 1'000'000;
  int points_per_decade = 4;
  /// Curves are enumerated and counted inside |Delta| <= 6^cap * B.
  unsigned valuation_cap = 6;
  int jobs = 1;
  std::uint64_t budget = 100'000'000;
};

/// Rows only count curves with a >= -ceil((1.2 * 6^cap * B)^{2/3}), the same
/// cut the enumeration uses at b_max, so a row is independent of b_max.
struct ZqRow {
  std::uint64_t bound = 0;
  /// minimal6, semistable6, 0 < ht6 <= B and |Delta| <= 6^cap * B.
  std::uint64_t count = 0;
  /// minimal6, semistable6 and |Delta| <= B (2- and 3-parts included).
  std::uint64_t count_abs = 0;
};

struct ZqCurve {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::uint64_t ht6 = 0;
  std::uint64_t abs_delta = 0;
};

struct ZqResult {
  std::vector<ZqRow> rows;
  double slope = 0.0;
  std::pair<std::uint64_t, std::uint64_t> window{0, 0};
  /// Enumerated A range; the positive end is exact, the negative end is a
  /// truncation of the cusp strip 27 b^2 ~ -4 a^3.
  std::int64_t a_min = 0;
  std::int64_t a_max = 0;
  std::uint64_t region = 0;
  std::uint64_t candidates = 0;
  /// Counted curves with a <= -0.99 |a_min|; the audit passes iff zero.
  std::uint64_t audit_edge_count = 0;
  bool audit_passed = false;
  bool self_check_passed = false;
  /// Curves counted at b_max, sorted by (a, b).
  std::vector<ZqCurve> curves;
};

inline constexpr const char* kZqDisclaimer =
    "conjecture-exploration only; away-from-6 proxy (ht6 = prime-to-6 part of |Delta|); "
    "short-form representatives may over-count twists at 2 and 3";

ZqResult z_q_experiment(const ZqOptions& opts);

}  // namespace ellfib
