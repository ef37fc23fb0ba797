#include "ellfib/gf.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace ellfib {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::ReducibleModulus: return "ReducibleModulus";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::BothZero: return "BothZero";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::InvalidModel: return "InvalidModel";
    case ErrorCode::NonPositiveN: return "NonPositiveN";
    case ErrorCode::NegativeDegree: return "NegativeDegree";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::SingularCurve: return "SingularCurve";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

namespace {

using Vec = std::vector<std::uint64_t>;

constexpr std::uint64_t kMaxChar = std::uint64_t{1} << 32;
constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 62;
constexpr std::uint64_t kLogTableLimit = std::uint64_t{1} << 16;

void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Dense F_p polynomial helpers, used only to certify and apply the modulus.
Vec mod_monic(Vec a, const Vec& m, std::uint64_t p) {
  const std::size_t dm = m.size() - 1;
  trim(a);
  while (a.size() > dm) {
    const std::uint64_t c = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    if (c != 0) {
      for (std::size_t i = 0; i < dm; ++i) {
        a[shift + i] = (a[shift + i] + (p - c) * m[i] % p) % p;
      }
    }
    a.pop_back();
    trim(a);
  }
  return a;
}

Vec mul_mod(const Vec& a, const Vec& b, const Vec& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
  }
  return mod_monic(std::move(r), m, p);
}

Vec pow_mod(Vec base, std::uint64_t k, const Vec& m, std::uint64_t p) {
  Vec acc{1};
  acc = mod_monic(acc, m, p);
  while (k > 0) {
    if (k & 1) acc = mul_mod(acc, base, m, p);
    k >>= 1;
    if (k > 0) base = mul_mod(base, base, m, p);
  }
  return acc;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(p), new_r = static_cast<std::int64_t>(a % p);
  while (new_r != 0) {
    const std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

Vec gcd_fp(Vec a, Vec b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t inv = inv_mod(b.back(), p);
    Vec mb(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) mb[i] = b[i] * inv % p;
    a = mod_monic(std::move(a), mb, p);
    std::swap(a, b);
  }
  return a;
}

bool irreducible_over_fp(const Vec& m, std::uint64_t p) {
  const std::size_t deg = m.size() - 1;
  Vec xpow = mod_monic(Vec{0, 1}, m, p);
  for (std::size_t i = 1; i <= deg / 2; ++i) {
    xpow = pow_mod(xpow, p, m, p);
    Vec diff = xpow;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (gcd_fp(m, diff, p).size() > 1) return false;
  }
  return true;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Largest r with r^e <= n.
std::uint64_t iroot(std::uint64_t n, unsigned e) {
  if (e == 1) return n;
  std::uint64_t lo = 0, hi = std::uint64_t{1} << (64 / e + 1);
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    unsigned __int128 v = 1;
    bool over = false;
    for (unsigned i = 0; i < e && !over; ++i) {
      v *= mid;
      over = v > n;
    }
    if (over) {
      hi = mid - 1;
    } else {
      lo = mid;
    }
  }
  return lo;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  if (n % 3 == 0) return n == 3;
  for (std::uint64_t d = 5; d <= n / d; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint64_t, unsigned>> prime_power_decompose(std::uint64_t q) {
  if (q < 2) return std::nullopt;
  for (unsigned e = 1; e < 64; ++e) {
    const std::uint64_t r = iroot(q, e);
    if (r < 2) break;
    if (ipow(r, e) == q && r < kMaxChar && is_prime(r)) return std::make_pair(r, e);
  }
  return std::nullopt;
}

FieldSpec FieldSpec::make(std::uint64_t p, unsigned e, std::optional<std::vector<std::uint64_t>> modulus) {
  if (p >= kMaxChar || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, std::to_string(p) + " is not a prime below 2^32");
  }
  if (e == 0) throw Error(ErrorCode::DegreeMismatch, "extension degree must be >= 1");
  unsigned __int128 q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxOrder) throw Error(ErrorCode::Overflow, "field order exceeds 2^62");
  }

  auto impl = std::make_shared<Impl>();
  impl->p = p;
  impl->e = e;
  impl->q = static_cast<std::uint64_t>(q);

  if (modulus) {
    Vec m = *modulus;
    for (auto& c : m) {
      if (c >= p) throw Error(ErrorCode::DegreeMismatch, "modulus coefficient out of range");
    }
    if (m.size() != e + 1 || m.back() != 1) {
      throw Error(ErrorCode::DegreeMismatch,
                  "modulus must be monic of degree " + std::to_string(e) + ", constant term first");
    }
    if (!irreducible_over_fp(m, p)) throw Error(ErrorCode::ReducibleModulus, "modulus is reducible");
    if (e > 1) impl->modulus = std::move(m);
  } else if (e > 1) {
    const std::uint64_t count = impl->q;
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      Vec m(e + 1, 0);
      std::uint64_t rest = idx;
      for (unsigned i = 0; i < e; ++i) {
        m[i] = rest % p;
        rest /= p;
      }
      m[e] = 1;
      if (irreducible_over_fp(m, p)) {
        impl->modulus = std::move(m);
        break;
      }
    }
  }

  FieldSpec f{impl};
  if (e > 1 && impl->q <= kLogTableLimit) {
    const std::uint64_t order = impl->q - 1;
    Vec prime_divisors;
    std::uint64_t rest = order;
    for (std::uint64_t d = 2; d <= rest / d; ++d) {
      if (rest % d == 0) {
        prime_divisors.push_back(d);
        while (rest % d == 0) rest /= d;
      }
    }
    if (rest > 1) prime_divisors.push_back(rest);

    auto slow_pow = [&](Fq a, std::uint64_t k) {
      Fq acc = f.one();
      while (k > 0) {
        if (k & 1) acc = f.ext_mul_slow(acc, a);
        k >>= 1;
        a = f.ext_mul_slow(a, a);
      }
      return acc;
    };
    std::uint64_t gen = 2;
    for (; gen < impl->q; ++gen) {
      const bool primitive = std::all_of(prime_divisors.begin(), prime_divisors.end(), [&](std::uint64_t r) {
        return slow_pow(Fq{gen}, order / r) != f.one();
      });
      if (primitive) break;
    }
    impl->exp_table.resize(2 * order);
    impl->log_table.assign(impl->q, 0);
    Fq x = f.one();
    for (std::uint64_t i = 0; i < order; ++i) {
      impl->exp_table[i] = static_cast<std::uint32_t>(x.index());
      impl->exp_table[i + order] = static_cast<std::uint32_t>(x.index());
      impl->log_table[x.index()] = static_cast<std::uint32_t>(i);
      x = f.ext_mul_slow(x, Fq{gen});
    }
  }
  return f;
}

FieldSpec FieldSpec::of_order(std::uint64_t q) {
  const auto pe = prime_power_decompose(q);
  if (!pe) throw Error(ErrorCode::NotPrime, std::to_string(q) + " is not a prime power");
  return make(pe->first, pe->second);
}

bool operator==(const FieldSpec& a, const FieldSpec& b) {
  if (a.impl_ == b.impl_) return true;
  return a.impl_->p == b.impl_->p && a.impl_->e == b.impl_->e && a.impl_->modulus == b.impl_->modulus;
}

void FieldSpec::check(Fq a) const {
  if (a.index() >= impl_->q) {
    throw Error(ErrorCode::FieldMismatch,
                "element index " + std::to_string(a.index()) + " outside F_" + std::to_string(impl_->q));
  }
}

Fq FieldSpec::from_int(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(impl_->p);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return Fq{static_cast<std::uint64_t>(r)};
}

Fq FieldSpec::element(std::uint64_t index) const {
  check(Fq{index});
  return Fq{index};
}

std::vector<std::uint64_t> FieldSpec::coeffs(Fq a) const {
  check(a);
  std::vector<std::uint64_t> c(impl_->e);
  std::uint64_t rest = a.index();
  for (unsigned i = 0; i < impl_->e; ++i) {
    c[i] = rest % impl_->p;
    rest /= impl_->p;
  }
  return c;
}

Fq FieldSpec::from_coeffs(std::span<const std::uint64_t> c) const {
  if (c.size() > impl_->e) throw Error(ErrorCode::DegreeMismatch, "too many coordinates for element");
  std::uint64_t idx = 0;
  for (std::size_t i = c.size(); i-- > 0;) {
    if (c[i] >= impl_->p) throw Error(ErrorCode::FieldMismatch, "coordinate out of range");
    idx = idx * impl_->p + c[i];
  }
  return Fq{idx};
}

Fq FieldSpec::ext_add(Fq a, Fq b, bool subtract) const {
  const std::uint64_t p = impl_->p;
  std::uint64_t x = a.index(), y = b.index(), out = 0, place = 1;
  for (unsigned i = 0; i < impl_->e; ++i) {
    const std::uint64_t dx = x % p, dy = y % p;
    x /= p;
    y /= p;
    out += (subtract ? (dx + p - dy) % p : (dx + dy) % p) * place;
    place *= p;
  }
  return Fq{out};
}

Fq FieldSpec::ext_mul_slow(Fq a, Fq b) const {
  const Vec m = impl_->modulus;
  Vec prod = mul_mod(coeffs(a), coeffs(b), m, impl_->p);
  prod.resize(impl_->e, 0);
  return from_coeffs(prod);
}

Fq FieldSpec::add(Fq a, Fq b) const {
  check(a);
  check(b);
  if (impl_->e == 1) {
    const std::uint64_t s = a.index() + b.index();
    return Fq{s >= impl_->p ? s - impl_->p : s};
  }
  return ext_add(a, b, false);
}

Fq FieldSpec::sub(Fq a, Fq b) const {
  check(a);
  check(b);
  if (impl_->e == 1) {
    return Fq{a.index() >= b.index() ? a.index() - b.index() : a.index() + impl_->p - b.index()};
  }
  return ext_add(a, b, true);
}

Fq FieldSpec::neg(Fq a) const { return sub(zero(), a); }

Fq FieldSpec::mul(Fq a, Fq b) const {
  check(a);
  check(b);
  if (impl_->e == 1) return Fq{a.index() * b.index() % impl_->p};
  if (a.is_zero() || b.is_zero()) return zero();
  if (!impl_->exp_table.empty()) {
    return Fq{impl_->exp_table[impl_->log_table[a.index()] + impl_->log_table[b.index()]]};
  }
  return ext_mul_slow(a, b);
}

Fq FieldSpec::inv(Fq a) const {
  check(a);
  if (a.is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (impl_->e == 1) return Fq{inv_mod(a.index(), impl_->p)};
  if (!impl_->exp_table.empty()) {
    const std::uint64_t order = impl_->q - 1;
    return Fq{impl_->exp_table[(order - impl_->log_table[a.index()]) % order]};
  }
  return pow(a, impl_->q - 2);
}

Fq FieldSpec::pow(Fq a, std::uint64_t k) const {
  check(a);
  Fq acc = one();
  while (k > 0) {
    if (k & 1) acc = mul(acc, a);
    k >>= 1;
    if (k > 0) a = mul(a, a);
  }
  return acc;
}

std::vector<Fq> FieldSpec::elements() const {
  std::vector<Fq> out;
  out.reserve(impl_->q);
  for (std::uint64_t i = 0; i < impl_->q; ++i) out.emplace_back(i);
  return out;
}

}  // namespace ellfib
