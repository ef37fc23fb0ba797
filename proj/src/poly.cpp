#include "ellfib/poly.hpp"

#include <algorithm>
#include <charconv>
#include <random>

namespace ellfib {

namespace {

void require_same_field(const Poly& f, const Poly& g) {
  if (!(f.field() == g.field())) throw Error(ErrorCode::FieldMismatch, "polynomials over different fields");
}

// a^{1/p}: the inverse of Frobenius is a -> a^{q/p}.
Fq pth_root(const FieldSpec& F, Fq a) { return F.pow(a, F.q() / F.p()); }

Poly exact_div(const Poly& f, const Poly& g) { return divrem(f, g).first; }

bool is_one(const Poly& f) { return f.is_unit() && f.leading() == f.field().one(); }

// Squarefree decomposition of a monic polynomial: (squarefree part, multiplicity)
// pairs with pairwise coprime parts.
void squarefree_decompose(const Poly& f, unsigned scale_mult, std::vector<std::pair<Poly, unsigned>>& out) {
  const FieldSpec& F = f.field();
  if (f.is_unit()) return;
  Poly c = gcd(f, derivative(f));
  Poly w = exact_div(f, c);
  unsigned i = 1;
  while (!is_one(w)) {
    Poly y = gcd(w, c);
    Poly fac = exact_div(w, y);
    if (!is_one(fac)) out.emplace_back(fac, i * scale_mult);
    w = std::move(y);
    c = exact_div(c, w);
    ++i;
  }
  if (!is_one(c)) {
    // Every exponent of c is a multiple of p.
    const std::size_t p = static_cast<std::size_t>(F.p());
    std::vector<Fq> root(*c.degree() / p + 1);
    for (std::size_t k = 0; k < root.size(); ++k) root[k] = pth_root(F, c.coeff(k * p));
    squarefree_decompose(Poly(F, std::move(root)), scale_mult * static_cast<unsigned>(F.p()), out);
  }
}

// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
std::vector<std::pair<Poly, std::size_t>> distinct_degree(const Poly& f) {
  const FieldSpec& F = f.field();
  std::vector<std::pair<Poly, std::size_t>> out;
  Poly rest = f;
  const Poly t = Poly::t(F);
  Poly xpow = rem(t, rest);
  for (std::size_t i = 1; !rest.is_unit() && 2 * i <= *rest.degree(); ++i) {
    xpow = powmod(xpow, F.q(), rest);
    Poly g = gcd(rest, xpow - t);
    if (!is_one(g)) {
      out.emplace_back(g, i);
      rest = exact_div(rest, g);
      xpow = rem(xpow, rest);
    }
  }
  if (!rest.is_unit()) {
    const std::size_t d = *rest.degree();
    out.emplace_back(rest, d);
  }
  return out;
}

Poly random_below(const FieldSpec& F, std::size_t deg_bound, std::mt19937_64& rng) {
  std::vector<Fq> c(deg_bound);
  for (auto& x : c) x = Fq{rng() % F.q()};
  return Poly(F, std::move(c));
}

void equal_degree(const Poly& f, std::size_t d, std::mt19937_64& rng, std::vector<Poly>& out) {
  const FieldSpec& F = f.field();
  const std::size_t n = *f.degree();
  if (n == d) {
    out.push_back(f);
    return;
  }
  while (true) {
    Poly a = random_below(F, n, rng);
    if (a.is_zero() || a.is_unit()) continue;
    Poly probe(F);
    if (F.p() == 2) {
      // Trace from F_{q^d} to F_2.
      const std::uint64_t steps = static_cast<std::uint64_t>(F.e()) * d;
      Poly term = a;
      probe = a;
      for (std::uint64_t k = 1; k < steps; ++k) {
        term = rem(term * term, f);
        probe = probe + term;
      }
    } else {
      // a^{(q^d - 1)/2} = (a^{1 + q + ... + q^{d-1}})^{(q-1)/2}
      Poly frob = a;
      Poly norm = a;
      for (std::size_t k = 1; k < d; ++k) {
        frob = powmod(frob, F.q(), f);
        norm = rem(norm * frob, f);
      }
      probe = powmod(norm, (F.q() - 1) / 2, f) - Poly::constant(F, F.one());
    }
    Poly g = gcd(f, probe);
    if (!g.is_zero() && !g.is_unit() && *g.degree() < n) {
      equal_degree(g, d, rng, out);
      equal_degree(exact_div(f, g), d, rng, out);
      return;
    }
  }
}

bool coeff_less(const Poly& a, const Poly& b) {
  if (degree_less(a, b)) return true;
  if (degree_less(b, a)) return false;
  const auto ca = a.coeffs();
  const auto cb = b.coeffs();
  return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(), cb.end());
}

}  // namespace

Poly::Poly(FieldSpec field, std::vector<Fq> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  for (Fq c : coeffs_) {
    if (!field_.contains(c)) throw Error(ErrorCode::FieldMismatch, "coefficient outside field");
  }
  trim();
}

void Poly::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly Poly::constant(const FieldSpec& field, Fq c) { return Poly(field, std::vector<Fq>{c}); }

Poly Poly::monomial(const FieldSpec& field, Fq c, std::size_t k) {
  std::vector<Fq> v(k + 1);
  v[k] = c;
  return Poly(field, std::move(v));
}

Poly Poly::from_ints(const FieldSpec& field, std::span<const std::int64_t> c) {
  std::vector<Fq> v;
  v.reserve(c.size());
  for (std::int64_t x : c) {
    if (field.is_prime_field()) {
      v.push_back(field.from_int(x));
    } else {
      if (x < 0) throw Error(ErrorCode::FieldMismatch, "extension-field coefficients are element indices >= 0");
      v.push_back(field.element(static_cast<std::uint64_t>(x)));
    }
  }
  return Poly(field, std::move(v));
}

Poly operator+(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  const FieldSpec& F = f.field();
  std::vector<Fq> r(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add(f.coeff(i), g.coeff(i));
  return Poly(F, std::move(r));
}

Poly operator-(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  const FieldSpec& F = f.field();
  std::vector<Fq> r(std::max(f.coeffs().size(), g.coeffs().size()));
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub(f.coeff(i), g.coeff(i));
  return Poly(F, std::move(r));
}

Poly operator-(const Poly& f) { return Poly(f.field()) - f; }

Poly operator*(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  const FieldSpec& F = f.field();
  if (f.is_zero() || g.is_zero()) return Poly(F);
  const auto a = f.coeffs();
  const auto b = g.coeffs();
  std::vector<Fq> r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  return Poly(F, std::move(r));
}

Poly scale(const Poly& f, Fq c) {
  const FieldSpec& F = f.field();
  std::vector<Fq> r(f.coeffs().begin(), f.coeffs().end());
  for (auto& x : r) x = F.mul(x, c);
  return Poly(F, std::move(r));
}

std::pair<Poly, Poly> divrem(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  const FieldSpec& F = f.field();
  if (g.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  if (degree_less(f, g)) return {Poly(F), f};
  const std::size_t dg = *g.degree();
  const Fq inv_lead = F.inv(g.leading());
  std::vector<Fq> r(f.coeffs().begin(), f.coeffs().end());
  std::vector<Fq> quot(r.size() - dg);
  const auto gc = g.coeffs();
  for (std::size_t k = r.size(); k-- > dg;) {
    const Fq c = F.mul(r[k], inv_lead);
    quot[k - dg] = c;
    if (c.is_zero()) continue;
    for (std::size_t i = 0; i <= dg; ++i) r[k - dg + i] = F.sub(r[k - dg + i], F.mul(c, gc[i]));
  }
  r.resize(dg);
  return {Poly(F, std::move(quot)), Poly(F, std::move(r))};
}

Poly rem(const Poly& f, const Poly& g) { return divrem(f, g).second; }

Fq eval(const Poly& f, Fq a) {
  const FieldSpec& F = f.field();
  Fq acc{};
  const auto c = f.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, a), c[i]);
  return acc;
}

Poly derivative(const Poly& f) {
  const FieldSpec& F = f.field();
  if (f.coeffs().size() <= 1) return Poly(F);
  std::vector<Fq> r(f.coeffs().size() - 1);
  for (std::size_t i = 1; i < f.coeffs().size(); ++i) {
    r[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i % F.p())), f.coeff(i));
  }
  return Poly(F, std::move(r));
}

Poly monic(const Poly& f) {
  if (f.is_zero() || f.is_monic()) return f;
  return scale(f, f.field().inv(f.leading()));
}

Poly gcd(const Poly& f, const Poly& g) {
  require_same_field(f, g);
  if (f.is_zero() && g.is_zero()) throw Error(ErrorCode::BothZero, "gcd(0, 0) is undefined");
  Poly a = f, b = g;
  while (!b.is_zero()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly pow(const Poly& f, std::uint64_t k) {
  Poly acc = Poly::constant(f.field(), f.field().one());
  Poly base = f;
  while (k > 0) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return acc;
}

Poly powmod(const Poly& f, std::uint64_t k, const Poly& modulus) {
  Poly acc = rem(Poly::constant(f.field(), f.field().one()), modulus);
  Poly base = rem(f, modulus);
  while (k > 0) {
    if (k & 1) acc = rem(acc * base, modulus);
    k >>= 1;
    if (k > 0) base = rem(base * base, modulus);
  }
  return acc;
}

unsigned multiplicity(const Poly& f, const Poly& p) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "multiplicity in the zero polynomial");
  if (p.is_zero() || p.is_unit()) throw Error(ErrorCode::DegreeMismatch, "multiplicity needs a nonconstant divisor");
  unsigned m = 0;
  Poly rest = f;
  while (true) {
    auto [quot, r] = divrem(rest, p);
    if (!r.is_zero()) return m;
    rest = std::move(quot);
    ++m;
  }
}

Poly Factorization::expand(const FieldSpec& field) const {
  Poly acc = Poly::constant(field, unit);
  for (const auto& [f, m] : factors) acc = acc * pow(f, m);
  return acc;
}

Factorization factor(const Poly& f, std::uint64_t seed) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot factor the zero polynomial");
  Factorization out{f.leading(), {}};
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree_decompose(monic(f), 1, sqf);

  std::mt19937_64 rng(seed);
  for (const auto& [part, mult] : sqf) {
    for (const auto& [block, d] : distinct_degree(part)) {
      std::vector<Poly> irr;
      equal_degree(block, d, rng, irr);
      for (auto& g : irr) out.factors.emplace_back(std::move(g), mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return coeff_less(a.first, b.first); });
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.is_zero() || f.is_unit()) return false;
  const FieldSpec& F = f.field();
  const Poly g = monic(f);
  const Poly t = Poly::t(F);
  Poly xpow = rem(t, g);
  for (std::size_t i = 1; 2 * i <= *g.degree(); ++i) {
    xpow = powmod(xpow, F.q(), g);
    if (!gcd(g, xpow - t).is_unit()) return false;
  }
  return true;
}

std::optional<std::uint64_t> monic_count(std::uint64_t q, std::size_t d) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < d; ++i) {
    if (n > UINT64_MAX / q) return std::nullopt;
    n *= q;
  }
  return n;
}

Poly monic_poly_at(const FieldSpec& field, std::size_t d, std::uint64_t index) {
  std::vector<Fq> c(d + 1);
  for (std::size_t i = 0; i < d; ++i) {
    c[i] = Fq{index % field.q()};
    index /= field.q();
  }
  c[d] = field.one();
  return Poly(field, std::move(c));
}

MonicPolys::MonicPolys(FieldSpec field, std::size_t d, std::uint64_t start, std::uint64_t stride)
    : field_(std::move(field)), d_(d), start_(start), stride_(stride) {
  if (stride_ == 0) throw Error(ErrorCode::Usage, "stride must be positive");
  const auto n = monic_count(field_.q(), d_);
  if (!n) throw Error(ErrorCode::Overflow, "q^d exceeds 64 bits");
  count_ = *n;
}

std::uint64_t MonicPolys::size() const {
  if (start_ >= count_) return 0;
  return (count_ - start_ + stride_ - 1) / stride_;
}

Poly parse_coeffs(const FieldSpec& field, std::string_view text) {
  std::vector<std::int64_t> vals;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view tok = text.substr(pos, comma - pos);
    while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
    while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
      throw Error(ErrorCode::Usage, "bad polynomial '" + std::string(text) +
                                        "': expected comma-separated integers, constant term first, "
                                        "e.g. \"1,0,2\" for 2t^2 + 1");
    }
    vals.push_back(v);
    pos = comma + 1;
  }
  return Poly::from_ints(field, vals);
}

std::string format_coeffs(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f.coeff(i).index());
  }
  return s;
}

std::string to_string(const Poly& f) {
  if (f.is_zero()) return "0";
  std::string s;
  for (std::size_t i = f.coeffs().size(); i-- > 0;) {
    const Fq c = f.coeff(i);
    if (c.is_zero()) continue;
    if (!s.empty()) s += " + ";
    const bool show_coeff = i == 0 || c.index() != 1;
    if (show_coeff) s += std::to_string(c.index());
    if (i > 0) {
      if (show_coeff) s += '*';
      s += 't';
      if (i > 1) s += '^' + std::to_string(i);
    }
  }
  return s;
}

}  // namespace ellfib
