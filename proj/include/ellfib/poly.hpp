#pragma once

// Dense univariate polynomials over F_q.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ellfib/gf.hpp"

namespace ellfib {

class Poly {
 public:
  /// The zero polynomial.
  explicit Poly(FieldSpec field) : field_(std::move(field)) {}
  /// coeffs[i] is the coefficient of t^i; trailing zeros are dropped.
  Poly(FieldSpec field, std::vector<Fq> coeffs);

  static Poly constant(const FieldSpec& field, Fq c);
  static Poly monomial(const FieldSpec& field, Fq c, std::size_t k);
  static Poly t(const FieldSpec& field) { return monomial(field, field.one(), 1); }
  /// Coefficients given as integers reduced through Z -> F_p (prime fields)
  /// or as element indices (extension fields); constant term first.
  static Poly from_ints(const FieldSpec& field, std::span<const std::int64_t> c);
  static Poly from_ints(const FieldSpec& field, std::initializer_list<std::int64_t> c) {
    return from_ints(field, std::span<const std::int64_t>(c.begin(), c.size()));
  }

  const FieldSpec& field() const { return field_; }
  std::span<const Fq> coeffs() const { return coeffs_; }

  bool is_zero() const { return coeffs_.empty(); }
  /// nullopt for the zero polynomial.
  std::optional<std::size_t> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return coeffs_.size() - 1;
  }
  /// True for nonzero constants.
  bool is_unit() const { return coeffs_.size() == 1; }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == field_.one(); }
  Fq coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Fq{}; }
  Fq leading() const { return coeffs_.empty() ? Fq{} : coeffs_.back(); }

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
  }

 private:
  void trim();

  FieldSpec field_;
  std::vector<Fq> coeffs_;
};

/// Degree ordering helper: zero sorts below every nonzero polynomial.
inline bool degree_less(const Poly& a, const Poly& b) {
  if (a.is_zero()) return !b.is_zero();
  if (b.is_zero()) return false;
  return *a.degree() < *b.degree();
}

Poly operator+(const Poly& f, const Poly& g);
Poly operator-(const Poly& f, const Poly& g);
Poly operator-(const Poly& f);
Poly operator*(const Poly& f, const Poly& g);
Poly scale(const Poly& f, Fq c);

/// (quotient, remainder) with f = quotient * g + remainder, deg remainder < deg g.
std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g);
Poly rem(const Poly& f, const Poly& g);

Fq eval(const Poly& f, Fq a);
Poly derivative(const Poly& f);
/// f scaled to leading coefficient 1; zero stays zero.
Poly monic(const Poly& f);
/// Monic gcd; gcd(f, 0) = monic(f).
Poly gcd(const Poly& f, const Poly& g);
Poly pow(const Poly& f, std::uint64_t k);
Poly powmod(const Poly& f, std::uint64_t k, const Poly& modulus);

/// Largest m with p^m | f, for nonconstant p and nonzero f.
unsigned multiplicity(const Poly& f, const Poly& p);

struct Factorization {
  Fq unit;
  /// Monic irreducible factors with multiplicities, ordered by degree, then
  /// by coefficient indices compared from the constant term upward.
  std::vector<std::pair<Poly, unsigned>> factors;

  Poly expand(const FieldSpec& field) const;
};

inline constexpr std::uint64_t kDefaultFactorSeed = 0x5eed'e11f'1b2a'7105ULL;

/// Squarefree decomposition, distinct-degree splitting, then equal-degree
/// splitting driven by a generator seeded with `seed`.
Factorization factor(const Poly& f, std::uint64_t seed = kDefaultFactorSeed);

/// Independent irreducibility check: nonconstant and no common factor with
/// t^{q^i} - t for 1 <= i <= deg/2.
bool is_irreducible(const Poly& f);

/// The monic polynomial of degree d whose lower coefficients are the base-q
/// digits of index (constant term in the lowest digit).
Poly monic_poly_at(const FieldSpec& field, std::size_t d, std::uint64_t index);

/// Count of monic polynomials of degree d, or nullopt on 64-bit overflow.
std::optional<std::uint64_t> monic_count(std::uint64_t q, std::size_t d);

/// Stream over monic polynomials of degree exactly d, visiting indices
/// start, start + stride, ... below q^d. Independent instances with
/// disjoint starts partition the enumeration without shared state.
class MonicPolys {
 public:
  MonicPolys(FieldSpec field, std::size_t d, std::uint64_t start = 0, std::uint64_t stride = 1);

  class iterator {
   public:
    using value_type = Poly;
    using difference_type = std::ptrdiff_t;

    Poly operator*() const { return monic_poly_at(*owner_->field_ptr(), owner_->degree(), index_); }
    iterator& operator++() {
      index_ = index_ + owner_->stride() < owner_->end_index() ? index_ + owner_->stride() : owner_->end_index();
      return *this;
    }
    iterator operator++(int) {
      auto tmp = *this;
      ++*this;
      return tmp;
    }
    bool operator==(const iterator& o) const { return index_ == o.index_; }
    std::uint64_t index() const { return index_; }

   private:
    friend class MonicPolys;
    iterator(const MonicPolys* owner, std::uint64_t index) : owner_(owner), index_(index) {}
    const MonicPolys* owner_ = nullptr;
    std::uint64_t index_ = 0;
  };

  iterator begin() const { return iterator(this, start_ < count_ ? start_ : count_); }
  iterator end() const { return iterator(this, count_); }

  std::uint64_t size() const;
  std::size_t degree() const { return d_; }
  std::uint64_t stride() const { return stride_; }
  std::uint64_t end_index() const { return count_; }
  const FieldSpec* field_ptr() const { return &field_; }

 private:
  FieldSpec field_;
  std::size_t d_;
  std::uint64_t start_;
  std::uint64_t stride_;
  std::uint64_t count_;
};

/// "c0,c1,...": constant term first; each entry an integer as in from_ints.
Poly parse_coeffs(const FieldSpec& field, std::string_view text);
std::string format_coeffs(const Poly& f);
/// Human form, highest degree first, e.g. "t^2 + 4".
std::string to_string(const Poly& f);

}  // namespace ellfib
