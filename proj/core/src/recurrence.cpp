#include "recdiv/recurrence.hpp"

#include <sstream>
#include <stdexcept>

namespace recdiv {

namespace {

std::string join(const std::vector<i64>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

using Matrix = std::vector<std::vector<u64>>;

Matrix mat_mul(const Matrix& a, const Matrix& b, u64 p) {
  const std::size_t d = a.size();
  Matrix c(d, std::vector<u64>(d, 0));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < d; ++j)
        c[i][j] = add_mod(c[i][j], mul_mod(a[i][k], b[k][j], p), p);
    }
  return c;
}

}  // namespace

RecurrenceSpec::RecurrenceSpec(std::vector<i64> coeffs, std::vector<i64> init)
    : coeffs_(std::move(coeffs)), init_(std::move(init)) {
  if (coeffs_.empty()) throw std::invalid_argument("recurrence order must be at least 1");
  if (init_.size() != coeffs_.size())
    throw std::invalid_argument("need exactly d initial terms");
}

RecurrenceSpec RecurrenceSpec::from_charpoly(const IntPoly& charpoly, std::vector<i64> init) {
  if (!charpoly.is_monic() || charpoly.degree() < 1)
    throw std::invalid_argument("characteristic polynomial must be monic");
  std::vector<i64> c(charpoly.coeffs().begin(), charpoly.coeffs().end() - 1);
  return RecurrenceSpec(std::move(c), std::move(init));
}

IntPoly RecurrenceSpec::charpoly() const {
  std::vector<i64> c = coeffs_;
  c.push_back(1);
  return IntPoly(std::move(c));
}

std::vector<u64> RecurrenceSpec::init_mod(u64 p) const {
  std::vector<u64> out;
  for (i64 v : init_) out.push_back(to_residue(v, p));
  return out;
}

std::string RecurrenceSpec::fingerprint() const {
  std::vector<i64> desc(coeffs_.rbegin(), coeffs_.rend());
  desc.insert(desc.begin(), 1);
  return "poly=" + join(desc) + ";init=" + join(init_);
}

ModStream::ModStream(const RecurrenceSpec& spec, u64 p)
    : p_(p), initial_(spec.init_mod(p)), window_(initial_), narrow_(p < (u64{1} << 30) && spec.order() <= 8) {
  for (i64 c : spec.coeffs()) neg_coeffs_.push_back(sub_mod(0, to_residue(c, p), p));
  if (narrow_) barrett_ = static_cast<u64>((static_cast<u128>(1) << 64) / p);
}

void ModStream::advance() {
  const std::size_t d = window_.size();
  u64 next;
  if (narrow_) {
    u64 acc = 0;
    for (std::size_t i = 0; i < d; ++i) acc += neg_coeffs_[i] * window_[i];
    u64 quot = static_cast<u64>((static_cast<u128>(acc) * barrett_) >> 64);
    next = acc - quot * p_;
    if (next >= p_) next -= p_;
  } else {
    next = 0;
    for (std::size_t i = 0; i < d; ++i) next = add_mod(next, mul_mod(neg_coeffs_[i], window_[i], p_), p_);
  }
  for (std::size_t i = 0; i + 1 < d; ++i) window_[i] = window_[i + 1];
  window_[d - 1] = next;
  ++index_;
}

bool ModStream::at_initial_state() const { return window_ == initial_; }

mpz_class term_int(const RecurrenceSpec& spec, u64 n) {
  if (n > kTermIntGuard) throw std::out_of_range("use term_mod");
  const std::size_t d = spec.order();
  std::vector<mpz_class> a;
  for (i64 v : spec.init()) a.emplace_back(static_cast<long>(v));
  if (n < d) return a[n];
  for (u64 k = d; k <= n; ++k) {
    mpz_class next = 0;
    for (std::size_t i = 0; i < d; ++i) next -= static_cast<long>(spec.coeffs()[i]) * a[a.size() - d + i];
    a.push_back(next);
    if (a.size() > 2 * d) a.erase(a.begin(), a.begin() + static_cast<long>(d));
  }
  return a.back();
}

u64 term_mod(const RecurrenceSpec& spec, u64 n, u64 p) {
  const std::size_t d = spec.order();
  const auto init = spec.init_mod(p);
  if (n < d) return init[n];
  // Companion matrix acting on column (a_k, ..., a_{k+d-1}).
  Matrix step(d, std::vector<u64>(d, 0));
  for (std::size_t i = 0; i + 1 < d; ++i) step[i][i + 1] = 1;
  for (std::size_t j = 0; j < d; ++j) step[d - 1][j] = sub_mod(0, to_residue(spec.coeffs()[j], p), p);
  Matrix power(d, std::vector<u64>(d, 0));
  for (std::size_t i = 0; i < d; ++i) power[i][i] = 1 % p;
  for (u64 e = n; e > 0; e >>= 1) {
    if (e & 1) power = mat_mul(power, step, p);
    if (e > 1) step = mat_mul(step, step, p);
  }
  u64 acc = 0;
  for (std::size_t j = 0; j < d; ++j) acc = add_mod(acc, mul_mod(power[0][j], init[j], p), p);
  return acc;
}

u64 period_mod(const RecurrenceSpec& spec, u64 p, PeriodMethod method, u64 step_cap, u64 seed) {
  if (to_residue(spec.coeffs()[0], p) == 0) throw std::domain_error("not purely periodic");
  if (method == PeriodMethod::brute) {
    ModStream s(spec, p);
    for (u64 t = 1; t <= step_cap; ++t) {
      s.advance();
      if (s.at_initial_state()) return t;
    }
    throw std::runtime_error("period exceeds step budget");
  }
  const FpPoly f = reduce_poly(spec.charpoly(), p);
  if (gcd(f, f.derivative()).degree() != 0)
    throw std::domain_error("ramified prime: characteristic polynomial not squarefree");
  u64 period = 1;
  for (const auto& [g, mult] : factor_mod_p(f, seed)) {
    if (g.degree() == 1) {
      period = lcm(period, mult_order(sub_mod(0, g[0], p), p));
      continue;
    }
    auto field = std::make_shared<const ExtField>(g);
    const FactoredInteger totient = factor_integer(field->unit_group_order());
    period = lcm(period, ext_elem_order(ExtElem::generator(field), totient));
  }
  return period;
}

ZeroScan has_zero_bruteforce(const RecurrenceSpec& spec, u64 p, u64 cap) {
  ModStream s(spec, p);
  ZeroScan out;
  for (u64 n = 0; n < cap; ++n) {
    if (n > 0 && s.at_initial_state()) {
      out.kind = ZeroScan::Kind::nondivisor;
      out.steps = n;
      return out;
    }
    if (s.current() == 0) {
      out.kind = ZeroScan::Kind::divisor;
      out.witness = n;
      out.steps = n + 1;
      return out;
    }
    s.advance();
  }
  out.kind = ZeroScan::Kind::capped;
  out.steps = cap;
  return out;
}

std::vector<u64> zero_term_scan(const RecurrenceSpec& spec, u64 bound) {
  if (bound > kTermIntGuard) throw std::out_of_range("use term_mod");
  const std::size_t d = spec.order();
  std::vector<mpz_class> window;
  for (i64 v : spec.init()) window.emplace_back(static_cast<long>(v));
  std::vector<u64> zeros;
  for (u64 n = 0; n <= bound; ++n) {
    if (window[0] == 0) zeros.push_back(n);
    mpz_class next = 0;
    for (std::size_t i = 0; i < d; ++i) next -= static_cast<long>(spec.coeffs()[i]) * window[i];
    window.erase(window.begin());
    window.push_back(std::move(next));
  }
  return zeros;
}

PowerProbe perfect_power_probe(const RecurrenceSpec& spec, unsigned D, u64 A, u64 B, u64 count) {
  if (D < 2 || A < 1) throw std::invalid_argument("perfect_power_probe needs D >= 2 and A >= 1");
  PowerProbe out;
  if (count == 0) return out;
  if (A * (count - 1) + B > kTermIntGuard) throw std::out_of_range("use term_mod");
  for (u64 n = 0; n < count; ++n) {
    mpz_class v = abs(term_int(spec, A * n + B));
    mpz_class root;
    if (mpz_root(root.get_mpz_t(), v.get_mpz_t(), D) == 0) {
      out.all_powers = false;
      out.counterexample = n;
      return out;
    }
  }
  return out;
}

}  // namespace recdiv
