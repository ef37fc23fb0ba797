#pragma once

// Finite fields F_{p^e} with p < 2^32.
//
// An element is stored as its index in [0, q): the base-p digits of the index
// are the coefficients of the element in the power basis of the modulus,
// constant digit first. The representation is canonical, so equality of
// elements is equality of indices, and index order is the enumeration order
// (0 first, 1 second).

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "ellfib/error.hpp"

namespace ellfib {

class Fq {
 public:
  constexpr Fq() = default;
  constexpr explicit Fq(std::uint64_t index) : index_(index) {}

  constexpr std::uint64_t index() const { return index_; }
  constexpr bool is_zero() const { return index_ == 0; }

  friend constexpr bool operator==(Fq, Fq) = default;
  friend constexpr auto operator<=>(Fq, Fq) = default;

 private:
  std::uint64_t index_ = 0;
};

bool is_prime(std::uint64_t n);

/// Returns (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q);

class FieldSpec {
 public:
  /// Builds F_{p^e}. For e > 1 the modulus is either supplied (constant
  /// coefficient first, monic, length e + 1) or generated as the first monic
  /// irreducible of degree e in monic-enumeration order.
  static FieldSpec make(std::uint64_t p, unsigned e = 1,
                        std::optional<std::vector<std::uint64_t>> modulus = std::nullopt);

  /// Builds the field of order q with the generated modulus.
  static FieldSpec of_order(std::uint64_t q);

  std::uint64_t p() const { return impl_->p; }
  unsigned e() const { return impl_->e; }
  std::uint64_t q() const { return impl_->q; }
  /// Monic modulus over F_p, constant first; empty for prime fields.
  const std::vector<std::uint64_t>& modulus() const { return impl_->modulus; }
  bool is_prime_field() const { return impl_->e == 1; }

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  /// Image of an integer under Z -> F_p -> F_q.
  Fq from_int(std::int64_t v) const;
  /// Checked element constructor.
  Fq element(std::uint64_t index) const;
  bool contains(Fq a) const { return a.index() < impl_->q; }

  std::vector<std::uint64_t> coeffs(Fq a) const;
  Fq from_coeffs(std::span<const std::uint64_t> c) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq div(Fq a, Fq b) const { return mul(a, inv(b)); }
  Fq pow(Fq a, std::uint64_t k) const;

  /// All q elements in index order.
  std::vector<Fq> elements() const;

  friend bool operator==(const FieldSpec& a, const FieldSpec& b);

 private:
  struct Impl {
    std::uint64_t p = 0;
    unsigned e = 1;
    std::uint64_t q = 0;
    std::vector<std::uint64_t> modulus;
    // Discrete log tables for small extension fields; empty otherwise.
    std::vector<std::uint32_t> exp_table;
    std::vector<std::uint32_t> log_table;
  };

  explicit FieldSpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

  void check(Fq a) const;
  Fq ext_add(Fq a, Fq b, bool subtract) const;
  Fq ext_mul_slow(Fq a, Fq b) const;

  std::shared_ptr<const Impl> impl_;
};

}  // namespace ellfib
