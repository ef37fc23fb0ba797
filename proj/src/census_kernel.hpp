#pragma once

// Fixed-array polynomial kernels for the census hot loops. Elements are the
// field's canonical indices; arithmetic comes from an Arith policy.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "ellfib/gf.hpp"

namespace ellfib::kernel {

inline constexpr int kMaxDegree = 63;

/// Full operation tables for fields with q <= 256.
class TableArith {
 public:
  using Elem = std::uint8_t;
  static constexpr std::uint64_t kMaxOrder = 256;

  explicit TableArith(const FieldSpec& field) : q_(static_cast<unsigned>(field.q())) {
    add_.resize(q_ * q_);
    sub_.resize(q_ * q_);
    mul_.resize(q_ * q_);
    inv_.assign(q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      for (unsigned b = 0; b < q_; ++b) {
        add_[a * q_ + b] = static_cast<Elem>(field.add(Fq{a}, Fq{b}).index());
        sub_[a * q_ + b] = static_cast<Elem>(field.sub(Fq{a}, Fq{b}).index());
        mul_[a * q_ + b] = static_cast<Elem>(field.mul(Fq{a}, Fq{b}).index());
      }
      if (a != 0) inv_[a] = static_cast<Elem>(field.inv(Fq{a}).index());
    }
  }

  unsigned q() const { return q_; }
  Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
  Elem sub(Elem a, Elem b) const { return sub_[a * q_ + b]; }
  Elem mul(Elem a, Elem b) const { return mul_[a * q_ + b]; }
  Elem inv(Elem a) const { return inv_[a]; }

 private:
  unsigned q_;
  std::vector<Elem> add_, sub_, mul_, inv_;
};

/// Falls back to FieldSpec arithmetic for larger fields.
class SpecArith {
 public:
  using Elem = std::uint64_t;

  explicit SpecArith(const FieldSpec& field) : field_(field) {}

  std::uint64_t q() const { return field_.q(); }
  Elem add(Elem a, Elem b) const { return field_.add(Fq{a}, Fq{b}).index(); }
  Elem sub(Elem a, Elem b) const { return field_.sub(Fq{a}, Fq{b}).index(); }
  Elem mul(Elem a, Elem b) const { return field_.mul(Fq{a}, Fq{b}).index(); }
  Elem inv(Elem a) const { return field_.inv(Fq{a}).index(); }

 private:
  FieldSpec field_;
};

/// True iff gcd(a, b) is a nonzero constant. Degrees are -1 for zero. Both
/// buffers are overwritten.
template <class Arith>
bool coprime(const Arith& F, typename Arith::Elem* a, int da, typename Arith::Elem* b, int db) {
  if (da < db) {
    std::swap(a, b);
    std::swap(da, db);
  }
  while (true) {
    if (db < 0) return da == 0;
    if (db == 0) return true;
    const auto inv = F.inv(b[db]);
    while (da >= db) {
      const auto c = F.mul(a[da], inv);
      const int shift = da - db;
      for (int i = 0; i < db; ++i) a[shift + i] = F.sub(a[shift + i], F.mul(c, b[i]));
      a[da] = 0;
      do {
        --da;
      } while (da >= 0 && a[da] == 0);
    }
    std::swap(a, b);
    std::swap(da, db);
  }
}

/// Coprime monic v of degree d2 against the fixed monic u with index u_index.
template <class Arith>
std::uint64_t count_row(const Arith& F, int d1, int d2, std::uint64_t u_index, std::uint64_t v_count) {
  using Elem = typename Arith::Elem;
  const std::uint64_t q = F.q();
  std::array<Elem, kMaxDegree + 1> u{}, v{}, a{}, b{};
  for (int i = 0; i < d1; ++i) {
    u[i] = static_cast<Elem>(u_index % q);
    u_index /= q;
  }
  u[d1] = 1;
  v[d2] = 1;
  std::uint64_t count = 0;
  for (std::uint64_t j = 0; j < v_count; ++j) {
    for (int i = 0; i <= d2; ++i) a[i] = v[i];
    for (int i = 0; i <= d1; ++i) b[i] = u[i];
    if (coprime(F, a.data(), d2, b.data(), d1)) ++count;
    for (int i = 0; i < d2; ++i) {
      if (v[i] + 1u < q) {
        ++v[i];
        break;
      }
      v[i] = 0;
    }
  }
  return count;
}

/// Schoolbook product of dense coefficient arrays (degrees -1 for zero).
template <class Arith>
int multiply(const Arith& F, const typename Arith::Elem* x, int dx, const typename Arith::Elem* y, int dy,
             typename Arith::Elem* out) {
  if (dx < 0 || dy < 0) return -1;
  for (int i = 0; i <= dx + dy; ++i) out[i] = 0;
  for (int i = 0; i <= dx; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j <= dy; ++j) out[i + j] = F.add(out[i + j], F.mul(x[i], y[j]));
  }
  return dx + dy;
}

/// Packs `slots` coefficients at `bits` each, LSB-first; coefficients past
/// deg are zero.
template <class Elem>
std::uint64_t pack(const Elem* c, int deg, int slots, unsigned bits) {
  std::uint64_t key = 0;
  for (int i = 0; i <= deg && i < slots; ++i) key |= static_cast<std::uint64_t>(c[i]) << (i * bits);
  return key;
}

}  // namespace ellfib::kernel
