#include "ellfib/motive.hpp"

#include <algorithm>

#include "ellfib/error.hpp"

namespace ellfib {

namespace {

void require_nonnegative(int d1, int d2) {
  if (d1 < 0 || d2 < 0) throw Error(ErrorCode::NegativeDegree, "degrees must be >= 0");
}

void require_positive(int n) {
  if (n < 1) throw Error(ErrorCode::NonPositiveN, "n must be positive");
}

}  // namespace

MotiveClass::MotiveClass(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

MotiveClass MotiveClass::integer(BigInt c) { return MotiveClass(std::vector<BigInt>{std::move(c)}); }

MotiveClass MotiveClass::monomial(BigInt c, std::size_t k) {
  std::vector<BigInt> v(k + 1);
  v[k] = std::move(c);
  return MotiveClass(std::move(v));
}

MotiveClass MotiveClass::gm() { return lefschetz() - integer(1); }

void MotiveClass::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

MotiveClass& MotiveClass::operator+=(const MotiveClass& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

MotiveClass& MotiveClass::operator-=(const MotiveClass& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

MotiveClass operator*(const MotiveClass& a, const MotiveClass& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<BigInt> r(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) r[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return MotiveClass(std::move(r));
}

std::vector<std::pair<std::size_t, BigInt>> MotiveClass::terms() const {
  std::vector<std::pair<std::size_t, BigInt>> out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    if (coeffs_[i] != 0) out.emplace_back(i, coeffs_[i]);
  }
  return out;
}

std::string to_string(const MotiveClass& x) {
  if (x.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : x.terms()) {
    const bool negative = c < 0;
    const BigInt mag = negative ? BigInt(-c) : c;
    if (s.empty()) {
      if (negative) s += "-";
    } else {
      s += negative ? " - " : " + ";
    }
    if (k == 0) {
      s += mag.str();
      continue;
    }
    if (mag != 1) s += mag.str() + "*";
    s += "L";
    if (k > 1) s += "^" + std::to_string(k);
  }
  return s;
}

MotiveClass poly_class(int d1, int d2) {
  require_nonnegative(d1, d2);
  const auto top = static_cast<std::size_t>(d1 + d2);
  if (d1 > 0 && d2 > 0) return MotiveClass::monomial(1, top) - MotiveClass::monomial(1, top - 1);
  return MotiveClass::monomial(1, top);
}

MotiveClass stratum_class(int k, int l) { return MotiveClass::gm() * poly_class(k, l); }

std::vector<std::pair<int, int>> strata(int n) {
  require_positive(n);
  std::vector<std::pair<int, int>> out;
  out.emplace_back(4 * n, 6 * n);
  for (int k = 0; k < 4 * n; ++k) out.emplace_back(k, 6 * n);
  for (int l = 0; l < 6 * n; ++l) out.emplace_back(4 * n, l);
  return out;
}

MotiveClass moduli_class_stratified(int n) {
  MotiveClass total;
  for (const auto& [k, l] : strata(n)) total += stratum_class(k, l);
  return total;
}

MotiveClass moduli_class_closed(int n) {
  require_positive(n);
  const auto e = static_cast<std::size_t>(10 * n);
  return MotiveClass::monomial(1, e + 1) - MotiveClass::monomial(1, e - 1);
}

MotiveClass poly_class_recurrence(int d1, int d2) {
  require_nonnegative(d1, d2);
  MotiveClass r = MotiveClass::monomial(1, static_cast<std::size_t>(d1 + d2));
  for (int k = 1; k <= std::min(d1, d2); ++k) {
    r -= poly_class(d1 - k, d2 - k) * MotiveClass::monomial(1, static_cast<std::size_t>(k));
  }
  return r;
}

BigInt point_count(const MotiveClass& x, const BigInt& q) {
  BigInt acc = 0;
  const auto& c = x.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = acc * q + c[i];
  return acc;
}

}  // namespace ellfib
