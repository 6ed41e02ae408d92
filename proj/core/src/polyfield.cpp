#include "recdiv/polyfield.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace recdiv {

// ---------------------------------------------------------------- IntPoly

IntPoly::IntPoly(std::vector<i64> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPoly IntPoly::from_descending(const std::vector<i64>& coeffs) {
  return IntPoly(std::vector<i64>(coeffs.rbegin(), coeffs.rend()));
}

IntPoly IntPoly::derivative() const {
  std::vector<i64> out;
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    i64 v;
    if (__builtin_mul_overflow(coeffs_[i], static_cast<i64>(i), &v))
      throw std::overflow_error("derivative overflows 64 bits");
    out.push_back(v);
  }
  return IntPoly(std::move(out));
}

namespace {

template <typename Coeff>
std::string render(const std::vector<Coeff>& c, bool signed_terms) {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = c.size(); k-- > 0;) {
    if (c[k] == 0) continue;
    bool negative = signed_terms && static_cast<i64>(c[k]) < 0;
    u64 mag = negative ? static_cast<u64>(-static_cast<i64>(c[k])) : static_cast<u64>(c[k]);
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) out << mag;
    if (k >= 1) out << "x";
    if (k >= 2) out << "^" << k;
  }
  return out.str();
}

}  // namespace

std::string IntPoly::to_string() const { return render(coeffs_, true); }

// ----------------------------------------------------------------- FpPoly

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  for (auto& v : c_) v %= p_;
  trim();
}

FpPoly FpPoly::monomial(u64 p, std::size_t degree, u64 c) {
  std::vector<u64> v(degree + 1, 0);
  v[degree] = c;
  return FpPoly(p, std::move(v));
}

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 FpPoly::evaluate(u64 x) const {
  u64 acc = 0;
  for (std::size_t k = c_.size(); k-- > 0;) acc = add_mod(mul_mod(acc, x, p_), c_[k], p_);
  return acc;
}

FpPoly FpPoly::derivative() const {
  std::vector<u64> out;
  for (std::size_t i = 1; i < c_.size(); ++i) out.push_back(mul_mod(c_[i], i % p_, p_));
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::monic() const {
  if (is_zero()) return *this;
  return inv_mod(leading(), p_) * *this;
}

std::string FpPoly::to_string() const { return render(c_, false); }

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = add_mod(a[i], b[i], a.p_);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  std::vector<u64> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = sub_mod(a[i], b[i], a.p_);
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  if (a.is_zero() || b.is_zero()) return FpPoly(a.p_, {});
  std::vector<u64> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] = add_mod(out[i + j], mul_mod(a.c_[i], b.c_[j], a.p_), a.p_);
  }
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(u64 s, const FpPoly& a) {
  std::vector<u64> out(a.c_);
  for (auto& v : out) v = mul_mod(v, s % a.p_, a.p_);
  return FpPoly(a.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  const u64 p = a.modulus();
  if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
  std::vector<u64> rem(a.coeffs());
  std::vector<u64> quot(a.degree() - b.degree() + 1, 0);
  const u64 lead_inv = inv_mod(b.leading(), p);
  const auto& bc = b.coeffs();
  for (int k = a.degree() - b.degree(); k >= 0; --k) {
    u64 q = mul_mod(rem[k + b.degree()], lead_inv, p);
    quot[k] = q;
    if (q == 0) continue;
    for (int j = 0; j <= b.degree(); ++j)
      rem[k + j] = sub_mod(rem[k + j], mul_mod(q, bc[j], p), p);
  }
  rem.resize(b.degree());
  return {FpPoly(p, std::move(quot)), FpPoly(p, std::move(rem))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.is_zero()) {
    a = a % b;
    std::swap(a, b);
  }
  return a.monic();
}

FpPoly mul_mod(const FpPoly& a, const FpPoly& b, const FpPoly& m) { return (a * b) % m; }

FpPoly pow_mod(FpPoly base, u128 exp, const FpPoly& m) {
  FpPoly result = FpPoly::constant(m.modulus(), 1) % m;
  base = base % m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    exp >>= 1;
    if (exp > 0) base = mul_mod(base, base, m);
  }
  return result;
}

bool is_irreducible(const FpPoly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  const u64 p = f.modulus();
  const unsigned k = static_cast<unsigned>(f.degree());
  const FpPoly x = FpPoly::monomial(p, 1) % f;
  // powers[j] = x^{p^j} mod f
  std::vector<FpPoly> powers{x};
  for (unsigned j = 1; j <= k; ++j) powers.push_back(pow_mod(powers.back(), p, f));
  if (!(powers[k] == x)) return false;
  for (unsigned q = 2; q <= k; ++q) {
    if (k % q != 0 || !is_prime(q)) continue;
    if (gcd(f, powers[k / q] - x).degree() != 0) return false;
  }
  return true;
}

FpPoly reduce_poly(const IntPoly& poly, u64 p) {
  std::vector<u64> c;
  c.reserve(poly.coeffs().size());
  for (i64 v : poly.coeffs()) c.push_back(to_residue(v, p));
  return FpPoly(p, std::move(c));
}

// ---------------------------------------------------------- factorization

namespace {

u64 splitmix64(u64 x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

u64 fingerprint(const FpPoly& f, u64 seed) {
  u64 h = splitmix64(seed ^ splitmix64(f.modulus()));
  for (u64 c : f.coeffs()) h = splitmix64(h ^ c);
  return h;
}

std::vector<PolyFactor> squarefree_decomposition(const FpPoly& f) {
  const u64 p = f.modulus();
  std::vector<PolyFactor> out;
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f / c;
  unsigned i = 1;
  while (w.degree() > 0) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (fac.degree() > 0) out.push_back({fac.monic(), i});
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0) {
    // c is a polynomial in x^p; its p-th root has the same coefficients over F_p.
    std::vector<u64> root;
    for (std::size_t k = 0; k < c.coeffs().size(); k += p) root.push_back(c.coeffs()[k]);
    for (auto& [g, m] : squarefree_decomposition(FpPoly(p, std::move(root))))
      out.push_back({g, m * static_cast<unsigned>(p)});
  }
  return out;
}

// Splits a squarefree monic f into (product of all degree-i factors, i).
std::vector<std::pair<FpPoly, unsigned>> distinct_degree(FpPoly f) {
  const u64 p = f.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  const FpPoly x = FpPoly::monomial(p, 1);
  FpPoly h = x % f;
  for (unsigned i = 1; 2 * i <= static_cast<unsigned>(f.degree()); ++i) {
    h = pow_mod(h, p, f);
    FpPoly g = gcd(f, h - x);
    if (g.degree() > 0) {
      out.emplace_back(g, i);
      f = f / g;
      h = h % f;
    }
  }
  if (f.degree() > 0) out.emplace_back(f.monic(), static_cast<unsigned>(f.degree()));
  return out;
}

FpPoly random_poly(u64 p, int degree_below, std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, p - 1);
  std::vector<u64> c(degree_below);
  for (auto& v : c) v = dist(rng);
  return FpPoly(p, std::move(c));
}

// Cantor–Zassenhaus for a squarefree monic f whose factors all have degree i.
void equal_degree(const FpPoly& f, unsigned i, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  if (static_cast<unsigned>(f.degree()) == i) {
    out.push_back(f);
    return;
  }
  const u64 p = f.modulus();
  for (;;) {
    FpPoly a = random_poly(p, f.degree(), rng);
    if (a.degree() < 1) continue;
    FpPoly b;
    if (p == 2) {
      // Absolute trace to F_2: a + a^2 + ... + a^{2^{i-1}}.
      FpPoly term = a;
      b = a;
      for (unsigned j = 1; j < i; ++j) {
        term = mul_mod(term, term, f);
        b = b + term;
      }
    } else {
      // a^{(p^i-1)/2} = (a * a^p * ... * a^{p^{i-1}})^{(p-1)/2}; no exponent overflow.
      FpPoly conj = a % f;
      FpPoly norm = conj;
      for (unsigned j = 1; j < i; ++j) {
        conj = pow_mod(conj, p, f);
        norm = mul_mod(norm, conj, f);
      }
      b = pow_mod(norm, (p - 1) / 2, f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, i, rng, out);
      equal_degree(f / g, i, rng, out);
      return;
    }
  }
}

#ifndef NDEBUG
void verify_factorization(const FpPoly& f, const std::vector<PolyFactor>& factors) {
  FpPoly product = FpPoly::constant(f.modulus(), f.leading());
  for (const auto& [g, m] : factors) {
    if (!is_irreducible(g)) throw std::logic_error("factor_mod_p produced a reducible factor");
    for (unsigned j = 0; j < m; ++j) product = product * g;
  }
  if (!(product == f)) throw std::logic_error("factor_mod_p product mismatch");
}
#endif

}  // namespace

std::vector<PolyFactor> factor_mod_p(const FpPoly& f, u64 seed) {
  if (f.is_zero()) throw std::invalid_argument("cannot factor the zero polynomial");
  std::mt19937_64 rng(fingerprint(f, seed));
  std::vector<PolyFactor> out;
  for (const auto& [part, mult] : squarefree_decomposition(f.monic())) {
    for (const auto& [block, deg] : distinct_degree(part)) {
      std::vector<FpPoly> irreducibles;
      equal_degree(block, deg, rng, irreducibles);
      for (auto& g : irreducibles) out.push_back({std::move(g), mult});
    }
  }
  std::sort(out.begin(), out.end(), [](const PolyFactor& a, const PolyFactor& b) {
    if (a.factor != b.factor) return a.factor < b.factor;
    return a.multiplicity < b.multiplicity;
  });
#ifndef NDEBUG
  verify_factorization(f, out);
#endif
  return out;
}

std::string FactorPattern::label() const {
  std::string s;
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(degrees[i]);
  }
  return s;
}

bool FactorPattern::is_one_and_rest(unsigned d) const {
  if (!squarefree || d < 2) return false;
  if (d == 2) return degrees == std::vector<unsigned>{1, 1};
  return degrees == std::vector<unsigned>{d - 1, 1};
}

FactorPattern pattern(const IntPoly& poly, u64 p, u64 seed) {
  if (poly.degree() < 1) throw std::invalid_argument("pattern needs a non-constant polynomial");
  if (to_residue(poly.leading(), p) == 0) throw std::domain_error("pattern undefined at this prime");
  FpPoly f = reduce_poly(poly, p);
  FactorPattern out;
  out.p = p;
  for (const auto& [g, m] : factor_mod_p(f, seed))
    for (unsigned j = 0; j < m; ++j) out.degrees.push_back(static_cast<unsigned>(g.degree()));
  std::sort(out.degrees.rbegin(), out.degrees.rend());
  out.squarefree = gcd(f, f.derivative()).degree() == 0;
  return out;
}

std::optional<u64> fp_root(const IntPoly& poly, u64 p, u64 seed) {
  FpPoly f = reduce_poly(poly, p);
  if (f.is_zero()) return 0;
  if (f.degree() < 1) return std::nullopt;
  // Only the linear part gcd(f, x^p - x) matters.
  FpPoly x = FpPoly::monomial(p, 1);
  FpPoly linear = gcd(f, pow_mod(x, p, f) - x);
  std::optional<u64> best;
  if (linear.degree() < 1) return best;
  for (const auto& [g, m] : factor_mod_p(linear, seed)) {
    u64 root = sub_mod(0, g[0], p);
    if (!best || root < *best) best = root;
  }
  return best;
}

// --------------------------------------------------------------- ExtField

ExtField::ExtField(FpPoly modulus) : modulus_(std::move(modulus)) {
  if (modulus_.degree() < 1 || modulus_.leading() != 1 || !is_irreducible(modulus_))
    throw std::invalid_argument("extension modulus must be monic irreducible");
}

u64 ExtField::unit_group_order() const {
  u128 q = 1;
  for (unsigned i = 0; i < degree(); ++i) {
    q *= characteristic();
    if (q > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("p^k exceeds 64 bits");
  }
  return static_cast<u64>(q - 1);
}

ExtElem::ExtElem(std::shared_ptr<const ExtField> field, std::vector<u64> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  const u64 p = field_->characteristic();
  if (coords_.size() > field_->degree()) {
    coords_ = (FpPoly(p, coords_) % field_->modulus()).coeffs();
  }
  coords_.resize(field_->degree(), 0);
  for (auto& c : coords_) c %= p;
}

ExtElem ExtElem::scalar(std::shared_ptr<const ExtField> field, u64 c) {
  return ExtElem(std::move(field), std::vector<u64>{c});
}

ExtElem ExtElem::from_poly(std::shared_ptr<const ExtField> field, const FpPoly& poly) {
  FpPoly r = poly % field->modulus();
  return ExtElem(std::move(field), r.coeffs());
}

ExtElem ExtElem::generator(std::shared_ptr<const ExtField> field) {
  const u64 p = field->characteristic();
  return from_poly(std::move(field), FpPoly::monomial(p, 1));
}

bool ExtElem::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](u64 c) { return c == 0; });
}

bool ExtElem::in_base_field() const {
  return std::all_of(coords_.begin() + 1, coords_.end(), [](u64 c) { return c == 0; });
}

bool ExtElem::is_one() const { return coords_[0] == 1 && in_base_field(); }

FpPoly ExtElem::as_poly() const { return FpPoly(field_->characteristic(), coords_); }

namespace {

void require_same_field(const ExtElem& a, const ExtElem& b) {
  if (a.field_ptr() != b.field_ptr() && !(a.field().modulus() == b.field().modulus()))
    throw std::invalid_argument("extension elements from different fields");
}

}  // namespace

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
  require_same_field(a, b);
  const u64 p = a.field().characteristic();
  std::vector<u64> c(a.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = add_mod(a.coords_[i], b.coords_[i], p);
  return ExtElem(a.field_, std::move(c));
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
  require_same_field(a, b);
  const u64 p = a.field().characteristic();
  std::vector<u64> c(a.coords_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = sub_mod(a.coords_[i], b.coords_[i], p);
  return ExtElem(a.field_, std::move(c));
}

ExtElem operator-(const ExtElem& a) { return ExtElem::scalar(a.field_, 0) - a; }

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
  require_same_field(a, b);
  return ExtElem::from_poly(a.field_, a.as_poly() * b.as_poly());
}

ExtElem ExtElem::pow(u128 exp) const {
  return ExtElem::from_poly(field_, pow_mod(as_poly(), exp, field_->modulus()));
}

ExtElem ExtElem::inverse() const {
  if (is_zero()) throw std::domain_error("zero is not invertible");
  // Extended Euclid: s * a + t * g = 1.
  const u64 p = field_->characteristic();
  FpPoly r0 = field_->modulus(), r1 = as_poly();
  FpPoly s0(p, {}), s1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  // r0 is a nonzero constant because the modulus is irreducible.
  return ExtElem::from_poly(field_, inv_mod(r0[0], p) * s0);
}

u64 ext_norm(const ExtElem& a) {
  const u64 p = a.field().characteristic();
  u128 exp = 0, pk = 1;
  for (unsigned i = 0; i < a.field().degree(); ++i) {
    exp += pk;
    pk *= p;
  }
  ExtElem n = a.pow(exp);
  if (!n.in_base_field()) throw std::logic_error("norm left the base field");
  return n.base_coord();
}

ExtElem frobenius(const ExtElem& a) { return a.pow(a.field().characteristic()); }

u64 ext_elem_order(const ExtElem& a, const FactoredInteger& totient) {
  if (a.is_zero()) throw std::domain_error("zero has no multiplicative order");
  if (totient.value() != a.field().unit_group_order())
    throw std::invalid_argument("totient must factor p^k - 1");
  return order_from_group_order(totient, [&](u64 e) { return a.pow(e).is_one(); });
}

std::vector<ExtElem> solve_gamma(const std::vector<ExtElem>& roots, const std::vector<u64>& init) {
  const std::size_t d = roots.size();
  if (d == 0 || init.size() != d) throw std::invalid_argument("solve_gamma needs d roots and d terms");
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      if (roots[i] == roots[j]) throw std::domain_error("ramified prime; exclude");

  const auto& field = roots[0].field_ptr();
  // Augmented Vandermonde system: rows n = 0..d-1, columns roots^n | init_n.
  std::vector<std::vector<ExtElem>> m;
  std::vector<ExtElem> power(d, ExtElem::scalar(field, 1));
  for (std::size_t n = 0; n < d; ++n) {
    std::vector<ExtElem> row = power;
    row.push_back(ExtElem::scalar(field, init[n]));
    m.push_back(std::move(row));
    for (std::size_t i = 0; i < d; ++i) power[i] = power[i] * roots[i];
  }
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t pivot = col;
    while (pivot < d && m[pivot][col].is_zero()) ++pivot;
    if (pivot == d) throw std::domain_error("ramified prime; exclude");
    std::swap(m[col], m[pivot]);
    ExtElem inv = m[col][col].inverse();
    for (auto& v : m[col]) v = v * inv;
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      ExtElem factor = m[r][col];
      for (std::size_t c = col; c <= d; ++c) m[r][c] = m[r][c] - factor * m[col][c];
    }
  }
  std::vector<ExtElem> gamma;
  for (std::size_t i = 0; i < d; ++i) gamma.push_back(m[i][d]);
  return gamma;
}

}  // namespace recdiv
