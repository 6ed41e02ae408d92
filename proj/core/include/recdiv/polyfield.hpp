#pragma once

// Polynomials over Z and F_p, factorization modulo p, and arithmetic in
// F_{p^k} = F_p[x]/(g) for a monic irreducible g of degree k.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "recdiv/arith.hpp"

namespace recdiv {

// Integer polynomial, lowest degree first, no trailing zeros.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<i64> coeffs);

  // Parses highest-degree-first coefficients, e.g. {1, -1, -1, -1} = x^3 - x^2 - x - 1.
  static IntPoly from_descending(const std::vector<i64>& coeffs);

  const std::vector<i64>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  i64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
  i64 operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
  bool is_monic() const { return leading() == 1; }

  // Exact derivative; throws std::overflow_error on 64-bit overflow.
  IntPoly derivative() const;
  std::string to_string() const;

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  std::vector<i64> coeffs_;
};

class FpPoly {
 public:
  FpPoly() = default;
  // Coefficients are reduced mod p; trailing zeros are stripped.
  FpPoly(u64 p, std::vector<u64> coeffs);
  static FpPoly constant(u64 p, u64 c) { return FpPoly(p, {c}); }
  static FpPoly monomial(u64 p, std::size_t degree, u64 c = 1);

  u64 modulus() const { return p_; }
  const std::vector<u64>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  u64 leading() const { return c_.empty() ? 0 : c_.back(); }
  u64 operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0; }

  u64 evaluate(u64 x) const;
  FpPoly derivative() const;
  FpPoly monic() const;
  std::string to_string() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(u64 s, const FpPoly& a);
  friend bool operator==(const FpPoly&, const FpPoly&) = default;
  friend auto operator<=>(const FpPoly& a, const FpPoly& b) {
    // Degree first, then coefficients from lowest degree upwards.
    if (auto c = a.c_.size() <=> b.c_.size(); c != 0) return c;
    return a.c_ <=> b.c_;
  }

 private:
  void trim();

  u64 p_ = 2;
  std::vector<u64> c_;
};

// Quotient and remainder; throws std::domain_error on division by zero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);
// Monic gcd (zero if both inputs are zero).
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& m);
FpPoly pow_mod(FpPoly base, u128 exp, const FpPoly& m);

// Rabin's test: x^{p^k} == x mod f and gcd(x^{p^{k/q}} - x, f) == 1 for prime q | k.
bool is_irreducible(const FpPoly& f);

FpPoly reduce_poly(const IntPoly& poly, u64 p);

struct PolyFactor {
  FpPoly factor;  // monic irreducible
  unsigned multiplicity;
  friend bool operator==(const PolyFactor&, const PolyFactor&) = default;
};

// Squarefree decomposition, distinct-degree splitting, then Cantor–Zassenhaus.
// Randomness derives from (seed, p, coefficients), so the output is reproducible;
// it is sorted by degree and then by coefficients.
std::vector<PolyFactor> factor_mod_p(const FpPoly& f, u64 seed = 0);

struct FactorPattern {
  u64 p = 0;
  std::vector<unsigned> degrees;  // with multiplicity, descending
  bool squarefree = false;

  // Dash-joined descending degrees, e.g. "2-1".
  std::string label() const;
  bool is_one_and_rest(unsigned d) const;  // pattern {1, d-1}, squarefree
  friend bool operator==(const FactorPattern&, const FactorPattern&) = default;
};

// Throws std::domain_error("pattern undefined at this prime") if p divides the leading coefficient.
FactorPattern pattern(const IntPoly& poly, u64 p, u64 seed = 0);

// Smallest root in [0, p), if any.
std::optional<u64> fp_root(const IntPoly& poly, u64 p, u64 seed = 0);

class ExtField {
 public:
  // Throws std::invalid_argument unless `modulus` is monic irreducible of degree >= 1.
  explicit ExtField(FpPoly modulus);

  u64 characteristic() const { return modulus_.modulus(); }
  unsigned degree() const { return static_cast<unsigned>(modulus_.degree()); }
  const FpPoly& modulus() const { return modulus_; }
  // p^k - 1; throws std::overflow_error if it exceeds 64 bits.
  u64 unit_group_order() const;

 private:
  FpPoly modulus_;
};

class ExtElem {
 public:
  ExtElem(std::shared_ptr<const ExtField> field, std::vector<u64> coords);
  static ExtElem scalar(std::shared_ptr<const ExtField> field, u64 c);
  static ExtElem from_poly(std::shared_ptr<const ExtField> field, const FpPoly& poly);
  // Residue class of x, a root of the field modulus.
  static ExtElem generator(std::shared_ptr<const ExtField> field);

  const ExtField& field() const { return *field_; }
  const std::shared_ptr<const ExtField>& field_ptr() const { return field_; }
  const std::vector<u64>& coords() const { return coords_; }
  bool is_zero() const;
  bool is_one() const;
  bool in_base_field() const;
  u64 base_coord() const { return coords_[0]; }
  FpPoly as_poly() const;

  ExtElem pow(u128 exp) const;
  // Throws std::domain_error for zero.
  ExtElem inverse() const;

  friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
  friend ExtElem operator-(const ExtElem& a);
  friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
  friend bool operator==(const ExtElem& a, const ExtElem& b) { return a.coords_ == b.coords_; }

 private:
  std::shared_ptr<const ExtField> field_;
  std::vector<u64> coords_;
};

// a^{(p^k - 1)/(p - 1)}, an element of F_p.
u64 ext_norm(const ExtElem& a);
ExtElem frobenius(const ExtElem& a);
u64 ext_elem_order(const ExtElem& a, const FactoredInteger& totient);

// Solves sum_i gamma_i * roots_i^n = init_n for n = 0..d-1 by elimination on the
// Vandermonde system. Throws std::domain_error("ramified prime; exclude") on repeated roots.
std::vector<ExtElem> solve_gamma(const std::vector<ExtElem>& roots, const std::vector<u64>& init);

}  // namespace recdiv
