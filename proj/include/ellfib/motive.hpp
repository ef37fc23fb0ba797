#pragma once

// Classes in the subring Z[L] of the Grothendieck ring of varieties, where
// L = [A^1]. Every class the moduli computation manipulates lives here.

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ellfib/error.hpp"

namespace ellfib {

using BigInt = boost::multiprecision::cpp_int;

class MotiveClass {
 public:
  MotiveClass() = default;
  /// coeffs[i] is the coefficient of L^i.
  explicit MotiveClass(std::vector<BigInt> coeffs);

  static MotiveClass integer(BigInt c);
  /// c * L^k
  static MotiveClass monomial(BigInt c, std::size_t k);
  static MotiveClass lefschetz() { return monomial(1, 1); }
  /// [G_m] = L - 1
  static MotiveClass gm();

  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : BigInt(0); }

  MotiveClass& operator+=(const MotiveClass& o);
  MotiveClass& operator-=(const MotiveClass& o);
  friend MotiveClass operator+(MotiveClass a, const MotiveClass& b) { return a += b; }
  friend MotiveClass operator-(MotiveClass a, const MotiveClass& b) { return a -= b; }
  friend MotiveClass operator*(const MotiveClass& a, const MotiveClass& b);
  friend bool operator==(const MotiveClass&, const MotiveClass&) = default;

  /// Nonzero terms as (exponent, coefficient), highest exponent first.
  std::vector<std::pair<std::size_t, BigInt>> terms() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

/// "L^11 - L^9"; "0" for the zero class.
std::string to_string(const MotiveClass& x);

/// [Poly_1^{(d1,d2)}]: monic pairs of degrees (d1, d2) without a common root.
MotiveClass poly_class(int d1, int d2);

/// [F_{k,l}] = [G_m][Poly_1^{(k,l)}].
MotiveClass stratum_class(int k, int l);

/// The (k, l) index set of the stratification of L_{1,12n}: (4n, 6n), then
/// (k, 6n) for k < 4n, then (4n, l) for l < 6n.
std::vector<std::pair<int, int>> strata(int n);

/// Sum of stratum_class over strata(n).
MotiveClass moduli_class_stratified(int n);

/// L^{10n+1} - L^{10n-1}.
MotiveClass moduli_class_closed(int n);

/// The right-hand side of the coprime-pair recurrence,
/// L^{d1+d2} - sum_{k>=1} [Poly_1^{(d1-k,d2-k)}] L^k, built from poly_class.
MotiveClass poly_class_recurrence(int d1, int d2);

/// #_q: substitute L = q.
BigInt point_count(const MotiveClass& x, const BigInt& q);

}  // namespace ellfib
