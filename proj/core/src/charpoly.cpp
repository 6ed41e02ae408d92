#include "recdiv/charpoly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace recdiv {

namespace {

using QPoly = std::vector<mpq_class>;  // lowest degree first

void trim(QPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

QPoly to_qpoly(const IntPoly& p) {
  QPoly out;
  for (i64 c : p.coeffs()) out.emplace_back(static_cast<long>(c));
  return out;
}

QPoly qmod(QPoly a, const QPoly& b) {
  while (a.size() >= b.size()) {
    mpq_class q = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= q * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

QPoly qgcd(QPoly a, QPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    QPoly r = qmod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Power sums s_1..s_count of the roots of f (any nonzero leading coefficient).
std::vector<mpq_class> power_sums(const QPoly& f, std::size_t count) {
  const std::size_t d = f.size() - 1;
  std::vector<mpq_class> s(count + 1, 0);
  s[0] = static_cast<long>(d);
  for (std::size_t k = 1; k <= count; ++k) {
    mpq_class acc = 0;
    for (std::size_t i = 1; i <= std::min(k - 1, d); ++i) acc += f[d - i] * s[k - i];
    if (k <= d) acc += static_cast<long>(k) * f[d - k];
    s[k] = -acc / f[d];
  }
  return s;
}

// Monic polynomial of degree `degree` whose roots have power sums u_1..u_degree.
QPoly from_power_sums(const std::vector<mpq_class>& u, std::size_t degree) {
  std::vector<mpq_class> e(degree + 1, 0);
  e[0] = 1;
  for (std::size_t k = 1; k <= degree; ++k) {
    mpq_class acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc += (i % 2 == 1 ? 1 : -1) * e[k - i] * u[i];
    e[k] = acc / static_cast<long>(k);
  }
  QPoly out(degree + 1);
  for (std::size_t k = 0; k <= degree; ++k) out[degree - k] = (k % 2 == 0 ? e[k] : -e[k]);
  return out;
}

// Exact division by (x - 1); throws if 1 is not a root.
QPoly divide_by_x_minus_one(const QPoly& f) {
  const std::size_t n = f.size() - 1;
  QPoly q(n);
  mpq_class carry = 0;
  for (std::size_t k = n; k-- > 0;) {
    carry += f[k + 1];
    q[k] = carry;
  }
  if (carry + f[0] != 0) throw std::logic_error("ratio polynomial lacks the (x-1)^d factor");
  return q;
}

int mobius(u64 n) {
  int sign = 1;
  for (const auto& [q, e] : factor_integer(n).factors()) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

u64 euler_phi(u64 n) {
  u64 phi = n;
  for (const auto& [q, e] : factor_integer(n).factors()) phi = phi / q * (q - 1);
  return phi;
}

QPoly qmul(const QPoly& a, const QPoly& b) {
  QPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

QPoly cyclotomic(u64 m) {
  QPoly num{1}, den{1};
  for (u64 k = 1; k <= m; ++k) {
    if (m % k != 0) continue;
    int mu = mobius(m / k);
    if (mu == 0) continue;
    QPoly term(k + 1, 0);
    term[0] = -1;
    term[k] = 1;
    (mu > 0 ? num : den) = qmul(mu > 0 ? num : den, term);
  }
  // num / den is exact.
  QPoly q(num.size() - den.size() + 1, 0);
  QPoly r = num;
  for (std::size_t k = q.size(); k-- > 0;) {
    q[k] = r[k + den.size() - 1] / den.back();
    for (std::size_t i = 0; i < den.size(); ++i) r[k + i] -= q[k] * den[i];
  }
  return q;
}

mpz_class eval_exact(const IntPoly& f, const mpz_class& x) {
  mpz_class acc = 0;
  for (std::size_t k = f.coeffs().size(); k-- > 0;) acc = acc * x + static_cast<long>(f.coeffs()[k]);
  return acc;
}

std::vector<u64> divisors_of(u64 n) {
  std::vector<u64> divs{1};
  for (const auto& [q, e] : factor_integer(n).factors()) {
    const std::size_t base = divs.size();
    u64 qp = 1;
    for (unsigned j = 0; j < e; ++j) {
      qp *= q;
      for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * qp);
    }
  }
  return divs;
}

// Degrees of all proper nontrivial sub-products of the given factor degrees.
std::set<unsigned> subset_degree_sums(const std::vector<unsigned>& degrees, unsigned d) {
  std::vector<bool> reach(d + 1, false);
  reach[0] = true;
  for (unsigned g : degrees)
    for (unsigned s = d; s >= g; --s)
      if (reach[s - g]) reach[s] = true;
  std::set<unsigned> out;
  for (unsigned s = 1; s < d; ++s)
    if (reach[s]) out.insert(s);
  return out;
}

}  // namespace

std::string to_string(Tri t) {
  switch (t) {
    case Tri::yes: return "yes";
    case Tri::no: return "no";
    case Tri::unknown: return "unknown";
  }
  return "unknown";
}

mpz_class resultant(const IntPoly& f, const IntPoly& g) {
  const int m = f.degree(), n = g.degree();
  if (m < 0 || n < 0) return 0;
  if (m == 0 && n == 0) return 1;
  const int size = m + n;
  std::vector<std::vector<mpz_class>> a(size, std::vector<mpz_class>(size, 0));
  for (int r = 0; r < n; ++r)
    for (int j = 0; j <= m; ++j) a[r][r + j] = static_cast<long>(f[m - j]);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j <= n; ++j) a[n + r][r + j] = static_cast<long>(g[n - j]);
  // Bareiss fraction-free elimination.
  mpz_class previous = 1;
  int sign = 1;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < size; ++r)
        if (a[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), previous.get_mpz_t());
      }
      a[i][k] = 0;
    }
    previous = a[k][k];
  }
  return sign * a[size - 1][size - 1];
}

mpz_class discriminant(const IntPoly& poly) {
  const int d = poly.degree();
  if (d < 1) throw std::invalid_argument("discriminant needs degree >= 1");
  if (d == 1) return 1;
  mpz_class res = resultant(poly, poly.derivative());
  mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), mpz_class(static_cast<long>(poly.leading())).get_mpz_t());
  return ((d * (d - 1) / 2) % 2 == 0) ? res : mpz_class(-res);
}

Irreducibility is_irreducible_over_Q(const IntPoly& poly, unsigned prime_budget) {
  const int d = poly.degree();
  if (d < 1) throw std::invalid_argument("irreducibility needs degree >= 1");
  if (!poly.is_monic()) throw std::invalid_argument("characteristic polynomial must be monic");
  if (d == 1) return {Tri::yes, "linear"};
  if (poly[0] == 0) return {Tri::no, "root 0"};

  const u64 c0 = poly[0] < 0 ? static_cast<u64>(-(poly[0] + 1)) + 1 : static_cast<u64>(poly[0]);
  for (u64 r : divisors_of(c0)) {
    for (int sign : {1, -1}) {
      mpz_class x = mpz_class(static_cast<unsigned long>(r)) * sign;
      if (eval_exact(poly, x) == 0) return {Tri::no, "root " + x.get_str()};
    }
  }

  std::set<unsigned> possible;
  for (unsigned s = 1; s < static_cast<unsigned>(d); ++s) possible.insert(s);
  unsigned used = 0;
  for (u64 p = 2; used < prime_budget; ++p) {
    if (!is_prime(p)) continue;
    FactorPattern pat = pattern(poly, p);
    if (!pat.squarefree) continue;
    ++used;
    if (pat.degrees.size() == 1) return {Tri::yes, "irreducible mod " + std::to_string(p)};
    std::set<unsigned> sums = subset_degree_sums(pat.degrees, static_cast<unsigned>(d));
    std::set<unsigned> kept;
    std::set_intersection(possible.begin(), possible.end(), sums.begin(), sums.end(),
                          std::inserter(kept, kept.begin()));
    possible = std::move(kept);
    if (possible.empty())
      return {Tri::yes, "factor degrees incompatible up to p = " + std::to_string(p)};
  }
  return {Tri::unknown, ""};
}

Nondegeneracy nondegeneracy(const IntPoly& poly) {
  if (poly.degree() < 1) throw std::invalid_argument("nondegeneracy needs degree >= 1");
  if (poly.degree() >= 2 && discriminant(poly) == 0) throw std::domain_error("repeated roots");
  QPoly f = to_qpoly(poly);
  if (f[0] == 0) f.erase(f.begin());  // drop the (simple) zero root
  const std::size_t d = f.size() - 1;
  if (d <= 1) return {};

  const std::size_t total = d * d;
  auto direct = power_sums(f, total);
  QPoly reversed(f.rbegin(), f.rend());
  auto inverse = power_sums(reversed, total);
  std::vector<mpq_class> ratio_sums(total + 1);
  for (std::size_t k = 0; k <= total; ++k) ratio_sums[k] = direct[k] * inverse[k];
  // Roots of `ratios` are all alpha_j / alpha_i; the d diagonal pairs contribute (x-1)^d.
  QPoly ratios = from_power_sums(ratio_sums, total);
  for (std::size_t i = 0; i < d; ++i) ratios = divide_by_x_minus_one(ratios);

  const u64 bound = d * (d - 1);
  const u64 max_m = 2 * bound * bound;
  for (u64 m = 1; m <= max_m; ++m) {
    if (euler_phi(m) > bound) continue;
    if (qgcd(ratios, cyclotomic(m)).size() > 1) return {false, static_cast<unsigned>(m)};
  }
  return {};
}

SdCertificate sd_certificate(const IntPoly& poly, unsigned prime_budget) {
  SdCertificate out;
  const int d = poly.degree();
  if (d < 2 || !poly.is_monic()) {
    out.note = "needs a monic polynomial of degree >= 2";
    return out;
  }
  if (is_irreducible_over_Q(poly, prime_budget).verdict != Tri::yes) {
    out.note = "irreducibility not established";
    return out;
  }
  const unsigned du = static_cast<unsigned>(d);
  std::vector<unsigned> transposition(du - 1, 1);
  transposition[0] = 2;
  std::vector<unsigned> long_cycle{du - 1, 1};
  if (du == 2) long_cycle = {1, 1};

  unsigned used = 0;
  for (u64 p = 2; used < prime_budget; ++p) {
    if (!is_prime(p)) continue;
    FactorPattern pat = pattern(poly, p);
    if (!pat.squarefree) continue;
    ++used;
    if (!out.full_cycle_prime && pat.degrees == std::vector<unsigned>{du}) out.full_cycle_prime = p;
    if (!out.transposition_prime && pat.degrees == transposition) out.transposition_prime = p;
    if (!out.long_cycle_prime && pat.degrees == long_cycle) out.long_cycle_prime = p;
    if (out.transposition_prime && out.long_cycle_prime && out.full_cycle_prime) break;
  }
  out.certified = out.transposition_prime.has_value() && out.long_cycle_prime.has_value();
  if (!out.certified) out.note = "no transposition or (d-1)-cycle witness within budget";
  return out;
}

std::vector<std::vector<unsigned>> partitions(unsigned d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> current;
  auto rec = [&](auto&& self, unsigned remaining, unsigned max_part) -> void {
    if (remaining == 0) {
      out.push_back(current);
      return;
    }
    for (unsigned part = std::min(remaining, max_part); part >= 1; --part) {
      current.push_back(part);
      self(self, remaining - part, part);
      current.pop_back();
    }
  };
  rec(rec, d, d);
  return out;
}

mpq_class expected_pattern_density(unsigned d, const std::vector<unsigned>& cycle_type) {
  unsigned sum = 0;
  std::map<unsigned, unsigned> counts;
  for (unsigned part : cycle_type) {
    if (part == 0) throw std::invalid_argument("cycle type must be a partition of d");
    sum += part;
    ++counts[part];
  }
  if (sum != d || d == 0) throw std::invalid_argument("cycle type must be a partition of d");
  // |class| / d! = 1 / prod_k (k^{m_k} m_k!)
  mpz_class centralizer = 1;
  for (const auto& [k, m] : counts) {
    mpz_class kpow, mfact;
    mpz_ui_pow_ui(kpow.get_mpz_t(), k, m);
    mpz_fac_ui(mfact.get_mpz_t(), m);
    centralizer *= kpow * mfact;
  }
  return mpq_class(mpz_class(1), centralizer);
}

PolyProfile analyze(const IntPoly& poly, unsigned prime_budget) {
  PolyProfile out;
  out.polynomial = poly;
  out.discriminant = poly.degree() >= 2 ? discriminant(poly) : mpz_class(1);
  out.irreducible = is_irreducible_over_Q(poly, prime_budget);
  if (out.discriminant == 0) {
    out.nondegenerate = Tri::no;
  } else {
    Nondegeneracy nd = nondegeneracy(poly);
    out.nondegenerate = nd.nondegenerate ? Tri::yes : Tri::no;
    out.degeneracy_witness_m = nd.witness_m;
  }
  out.sd = sd_certificate(poly, prime_budget);
  return out;
}

std::string PolyProfile::describe() const {
  std::ostringstream s;
  auto prime_or_dash = [](const std::optional<u64>& p) { return p ? std::to_string(*p) : std::string("-"); };
  s << "polynomial:            " << polynomial.to_string() << "\n";
  s << "degree:                " << polynomial.degree() << "\n";
  s << "discriminant:          " << discriminant.get_str() << "\n";
  s << "irreducible over Q:    " << to_string(irreducible.verdict);
  if (!irreducible.witness.empty()) s << " (" << irreducible.witness << ")";
  s << "\n";
  s << "non-degenerate:        " << to_string(nondegenerate);
  if (discriminant == 0) s << " (repeated roots)";
  if (degeneracy_witness_m) s << " (root ratio of order " << *degeneracy_witness_m << ")";
  s << "\n";
  s << "S_d certified:         " << (sd.certified ? "yes" : "unknown");
  if (!sd.note.empty()) s << " (" << sd.note << ")";
  s << "\n";
  s << "  witness {d}:         " << prime_or_dash(sd.full_cycle_prime) << "\n";
  s << "  witness {2,1..1}:    " << prime_or_dash(sd.transposition_prime) << "\n";
  s << "  witness {d-1,1}:     " << prime_or_dash(sd.long_cycle_prime) << "\n";
  s << "mult. independence:    " << multiplicative_independence << "\n";
  s << "hypotheses:            " << (hypotheses_verified() ? "verified" : "unverified") << "\n";
  return s.str();
}

}  // namespace recdiv
