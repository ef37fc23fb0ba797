#pragma once

// Exhaustive enumeration oracles for the counting formulas.
//
// Every count here is exact. The fast kernels run under OpenMP and split the
// outermost enumeration index across workers; partial totals are merged by
// integer addition, so results do not depend on the schedule. The serial
// reference implementations walk MonicPolys streams with the generic Poly
// gcd and are kept to cross-check the kernels.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ellfib/motive.hpp"
#include "ellfib/poly.hpp"
#include "ellfib/weier.hpp"

namespace ellfib {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct CensusOptions {
  /// Maximum number of enumerated pairs per count.
  std::uint64_t budget = kDefaultBudget;
  int jobs = 1;
};

/// q^(d1+d2), or nullopt past 64 bits.
std::optional<std::uint64_t> pair_space_size(std::uint64_t q, int d1, int d2);

/// Number of monic pairs (u, v), deg u = d1, deg v = d2, with gcd(u, v) = 1.
std::uint64_t count_coprime_pairs(const FieldSpec& field, int d1, int d2, const CensusOptions& opts = {});

/// One worker's share: outer indices start, start + stride, ... of u.
std::uint64_t count_coprime_pairs_partition(const FieldSpec& field, int d1, int d2, std::uint64_t start,
                                            std::uint64_t stride, std::uint64_t budget = kDefaultBudget);

/// Serial reference using MonicPolys and Poly gcd.
std::uint64_t count_coprime_pairs_reference(const FieldSpec& field, int d1, int d2,
                                            std::uint64_t budget = kDefaultBudget);

struct StratumRow {
  int k = 0;
  int l = 0;
  std::uint64_t observed = 0;
  BigInt formula;
  BigInt contribution;
  bool match = false;
};

struct CensusReport {
  std::string kind;
  std::uint64_t q = 0;
  std::optional<int> n;
  std::optional<std::pair<int, int>> degrees;
  BigInt observed;
  BigInt formula;
  bool match = false;
  double seconds = 0.0;
  std::vector<StratumRow> strata;
  /// direct census only: number of valid models before deduplication.
  std::optional<std::uint64_t> valid_models;
};

CensusReport poly_count_report(const FieldSpec& field, int d1, int d2, const CensusOptions& opts = {});

/// |L_{1,12n}(F_q)| observed as (q - 1) * sum over strata of coprime-pair counts.
CensusReport stratum_census(const FieldSpec& field, int n, const CensusOptions& opts = {});

/// Bit width of one packed coefficient: ceil(log2 q).
unsigned coarse_bits(std::uint64_t q);

/// Packs (a4^3, a6^2) scaled by the unique common scalar that makes the
/// leading coefficient of a4^3 (or of a6^2 when a4 = 0) equal to 1. Slots:
/// 3*deg_bound4 + 1 coefficients of a4^3 then 2*deg_bound6 + 1 of a6^2,
/// constant terms first, coarse_bits(q) bits each, LSB-first.
std::vector<std::uint8_t> coarse_encode(const FieldSpec& field, unsigned deg_bound4, unsigned deg_bound6,
                                        const Poly& a4, const Poly& a6);

/// coarse_encode with bounds (4n, 6n), for a valid model.
std::vector<std::uint8_t> coarse_canonical_form(const WeierstrassFibration& w);

struct DirectCensus {
  std::uint64_t valid_models = 0;
  std::uint64_t classes = 0;
  /// classes_by_stratum[k][l]: classes with deg a4 = k, deg a6 = l.
  std::vector<std::vector<std::uint64_t>> classes_by_stratum;
};

/// Enumerates every (a4, a6) with deg a4 <= deg_bound4, deg a6 <= deg_bound6,
/// keeps the pairs with no common zero on P^1 (gcd constant, and not both
/// degrees deficient), and counts distinct coarse encodings.
DirectCensus direct_coarse_census_bounded(const FieldSpec& field, unsigned deg_bound4, unsigned deg_bound6,
                                          const CensusOptions& opts = {});

/// Dedup census of L_{1,12n}(F_q); refuses budgets past opts.budget unless force.
CensusReport direct_coarse_census(const FieldSpec& field, int n, const CensusOptions& opts = {}, bool force = false);

}  // namespace ellfib
