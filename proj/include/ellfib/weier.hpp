#pragma once

// Short Weierstrass models y^2 = x^3 + a4 x + a6 of elliptic fibrations over
// P^1_{F_q}, written in the affine chart x -> [1:x]; a4 and a6 are sections of
// O(4n) and O(6n), so a polynomial of degree d representing a section of
// O(m) vanishes to order m - d at infinity.

#include <optional>
#include <string>
#include <vector>

#include "ellfib/poly.hpp"

namespace ellfib {

class WeierstrassFibration {
 public:
  /// Requires char F not in {2, 3}, n >= 1, deg a4 <= 4n and deg a6 <= 6n.
  WeierstrassFibration(FieldSpec field, unsigned n, Poly a4, Poly a6);

  const FieldSpec& field() const { return field_; }
  unsigned n() const { return n_; }
  /// Euler characteristic of the surface, equal to n.
  unsigned chi() const { return n_; }
  const Poly& a4() const { return a4_; }
  const Poly& a6() const { return a6_; }

 private:
  FieldSpec field_;
  unsigned n_;
  Poly a4_;
  Poly a6_;
};

/// A closed point of P^1: a monic irreducible polynomial, or infinity.
struct Place {
  std::optional<Poly> poly;

  static Place infinity() { return Place{}; }
  static Place finite(Poly p) { return Place{std::move(p)}; }
  bool is_infinity() const { return !poly.has_value(); }
  std::size_t residue_degree() const { return poly ? *poly->degree() : 1; }

  friend bool operator==(const Place&, const Place&) = default;
};

enum class ZeroSection { None, A4, A6, Both };

struct Validity {
  bool valid = false;
  /// A place where a4 and a6 vanish simultaneously (absent when valid or
  /// when both sections are identically zero).
  std::optional<Place> common_zero;
  /// Set when a4 or a6 is the zero section, which alone makes the model invalid.
  ZeroSection zero_section = ZeroSection::None;
};

Validity validate(const WeierstrassFibration& w);

/// -16 (4 a4^3 + 27 a6^2).
Poly discriminant(const WeierstrassFibration& w);

/// Order of vanishing of the discriminant section (of O(12n)) at a place.
unsigned discriminant_valuation(const WeierstrassFibration& w, const Place& place);

struct FiberPlace {
  Place place;
  std::size_t residue_degree = 1;
  /// Kodaira index: the fiber over the place has type I_k.
  unsigned k = 0;

  friend bool operator==(const FiberPlace&, const FiberPlace&) = default;
};

struct FiberConfiguration {
  unsigned n = 0;
  std::vector<FiberPlace> places;

  std::size_t mu() const { return places.size(); }
  /// Sum of k * residue_degree; equals 12n for every valid model.
  std::size_t weighted_sum() const;

  friend bool operator==(const FiberConfiguration&, const FiberConfiguration&) = default;
};

FiberConfiguration fiber_configuration(const WeierstrassFibration& w, std::uint64_t seed = kDefaultFactorSeed);

enum class Reduction { Good, Multiplicative, Additive };

std::string_view to_string(Reduction r);

/// Reduction type at a place of a valid model. Additive reduction cannot
/// occur for a valid model; reaching it raises std::logic_error.
Reduction reduction_at(const WeierstrassFibration& w, const Place& place);

/// The same classification without the validity gate: additive whenever the
/// discriminant and a4 both vanish at the place.
Reduction classify_reduction(const WeierstrassFibration& w, const Place& place);

/// Kodaira dimension of the surface: nullopt encodes -infinity (n = 1,
/// rational), 0 for n = 2 (K3), 1 for n >= 3.
std::optional<int> kodaira_dimension(int n);

/// (lambda^4 a4, lambda^6 a6): the same point of the moduli space.
WeierstrassFibration twist(const WeierstrassFibration& w, Fq lambda);

}  // namespace ellfib
