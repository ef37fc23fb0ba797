#include "ellfib/weier.hpp"

#include <stdexcept>

namespace ellfib {

namespace {

bool below(const Poly& f, std::size_t bound) { return f.is_zero() || *f.degree() < bound; }

void require_valid(const WeierstrassFibration& w) {
  if (!validate(w).valid) throw Error(ErrorCode::InvalidModel, "a4 and a6 vanish simultaneously");
}

}  // namespace

WeierstrassFibration::WeierstrassFibration(FieldSpec field, unsigned n, Poly a4, Poly a6)
    : field_(std::move(field)), n_(n), a4_(std::move(a4)), a6_(std::move(a6)) {
  if (field_.p() == 2 || field_.p() == 3) {
    throw Error(ErrorCode::FieldMismatch, "short Weierstrass models need characteristic other than 2, 3");
  }
  if (n_ == 0) throw Error(ErrorCode::NonPositiveN, "n must be positive");
  if (!(a4_.field() == field_) || !(a6_.field() == field_)) {
    throw Error(ErrorCode::FieldMismatch, "coefficients over a different field");
  }
  if (!below(a4_, 4 * n_ + 1) || !below(a6_, 6 * n_ + 1)) {
    throw Error(ErrorCode::DegreeMismatch, "need deg a4 <= 4n and deg a6 <= 6n");
  }
}

Validity validate(const WeierstrassFibration& w) {
  Validity v;
  const bool z4 = w.a4().is_zero(), z6 = w.a6().is_zero();
  v.zero_section = z4 && z6 ? ZeroSection::Both : z4 ? ZeroSection::A4 : z6 ? ZeroSection::A6 : ZeroSection::None;
  if (z4 && z6) return v;

  const Poly g = gcd(w.a4(), w.a6());
  if (!g.is_unit()) {
    v.common_zero = Place::finite(factor(g).factors.front().first);
    return v;
  }
  if (below(w.a4(), 4 * w.n()) && below(w.a6(), 6 * w.n())) {
    v.common_zero = Place::infinity();
    return v;
  }
  v.valid = v.zero_section == ZeroSection::None;
  return v;
}

Poly discriminant(const WeierstrassFibration& w) {
  const FieldSpec& F = w.field();
  const Poly a4_cubed = w.a4() * w.a4() * w.a4();
  const Poly a6_squared = w.a6() * w.a6();
  const Poly inner = scale(a4_cubed, F.from_int(4)) + scale(a6_squared, F.from_int(27));
  return scale(inner, F.from_int(-16));
}

unsigned discriminant_valuation(const WeierstrassFibration& w, const Place& place) {
  const Poly delta = discriminant(w);
  if (delta.is_zero()) throw Error(ErrorCode::InvalidModel, "discriminant vanishes identically");
  if (place.is_infinity()) return static_cast<unsigned>(12 * w.n() - *delta.degree());
  return multiplicity(delta, *place.poly);
}

std::size_t FiberConfiguration::weighted_sum() const {
  std::size_t s = 0;
  for (const auto& fp : places) s += fp.k * fp.residue_degree;
  return s;
}

FiberConfiguration fiber_configuration(const WeierstrassFibration& w, std::uint64_t seed) {
  require_valid(w);
  const Poly delta = discriminant(w);
  FiberConfiguration cfg;
  cfg.n = w.n();
  if (delta.is_zero()) throw std::logic_error("valid model with zero discriminant");
  for (auto& [p, k] : factor(delta, seed).factors) {
    const std::size_t d = *p.degree();
    cfg.places.push_back(FiberPlace{Place::finite(std::move(p)), d, k});
  }
  const std::size_t total = 12 * std::size_t{w.n()};
  if (*delta.degree() < total) {
    cfg.places.push_back(FiberPlace{Place::infinity(), 1, static_cast<unsigned>(total - *delta.degree())});
  }
  if (cfg.weighted_sum() != total) throw std::logic_error("fiber configuration does not sum to 12n");
  return cfg;
}

std::string_view to_string(Reduction r) {
  switch (r) {
    case Reduction::Good: return "good";
    case Reduction::Multiplicative: return "multiplicative";
    case Reduction::Additive: return "additive";
  }
  return "?";
}

Reduction classify_reduction(const WeierstrassFibration& w, const Place& place) {
  if (!place.is_infinity() && !is_irreducible(*place.poly)) {
    throw Error(ErrorCode::Reducible, "place must be a monic irreducible polynomial");
  }
  if (discriminant_valuation(w, place) == 0) return Reduction::Good;
  const bool a4_vanishes =
      place.is_infinity() ? below(w.a4(), 4 * w.n()) : (w.a4().is_zero() || rem(w.a4(), *place.poly).is_zero());
  return a4_vanishes ? Reduction::Additive : Reduction::Multiplicative;
}

Reduction reduction_at(const WeierstrassFibration& w, const Place& place) {
  require_valid(w);
  const Reduction r = classify_reduction(w, place);
  if (r == Reduction::Additive) throw std::logic_error("additive reduction on a valid model");
  return r;
}

std::optional<int> kodaira_dimension(int n) {
  if (n < 1) throw Error(ErrorCode::NonPositiveN, "n must be positive");
  if (n == 1) return std::nullopt;
  return n == 2 ? 0 : 1;
}

WeierstrassFibration twist(const WeierstrassFibration& w, Fq lambda) {
  const FieldSpec& F = w.field();
  if (lambda.is_zero()) throw Error(ErrorCode::DivisionByZero, "twist by zero");
  return WeierstrassFibration(F, w.n(), scale(w.a4(), F.pow(lambda, 4)), scale(w.a6(), F.pow(lambda, 6)));
}

}  // namespace ellfib
