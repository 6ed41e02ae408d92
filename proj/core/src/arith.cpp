#include "recdiv/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace recdiv {

namespace {

constexpr u64 kTrialBound = 1'000'000;

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = sieve_primes(kTrialBound);
  return primes;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return add_mod(mul_mod(x, x, n), c, n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_into(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  u64 d = pollard_brent(n);
  split_into(d, out);
  split_into(n / d, out);
}

}  // namespace

u64 pow_mod(u64 base, u128 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 gcd(u64 a, u64 b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  u128 l = static_cast<u128>(a / gcd(a, b)) * b;
  if (l > static_cast<u128>(UINT64_MAX)) throw std::overflow_error("lcm exceeds 64 bits");
  return static_cast<u64>(l);
}

u64 inv_mod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  u64 r = m, new_r = a % m;
  // Bezout coefficients stay below m in magnitude, so i64 suffices for m < 2^63.
  while (new_r != 0) {
    u64 q = r / new_r;
    i64 tmp_t = t - static_cast<i64>(q) * new_t;
    t = new_t;
    new_t = tmp_t;
    u64 tmp_r = r - q * new_r;
    r = new_r;
    new_r = tmp_r;
  }
  if (r != 1) throw std::domain_error("element is not invertible modulo " + std::to_string(m));
  return to_residue(t, m);
}

std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit / 2 + 1, false);  // index i <-> 2i+1
  primes.push_back(2);
  for (u64 i = 1; 2 * i + 1 <= limit; ++i) {
    if (composite[i]) continue;
    u64 p = 2 * i + 1;
    primes.push_back(p);
    for (u64 j = p * p; j <= limit; j += 2 * p) composite[j / 2] = true;
  }
  return primes;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  if (n < 41 * 41) return true;
  u64 d = n - 1;
  unsigned s = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++s;
  }
  // Sinclair's seven-base set is deterministic below 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL, 1795265022ULL}) {
    u64 x = pow_mod(a % n, d, n);
    if (a % n == 0 || x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

FactoredInteger::FactoredInteger(u64 value, std::vector<Factor> factors)
    : value_(value), factors_(std::move(factors)) {
  if (value_ == 0) throw std::invalid_argument("factored integer must be positive");
  u128 product = 1;
  u64 previous = 0;
  for (const auto& [q, e] : factors_) {
    if (q <= previous || e == 0 || !is_prime(q))
      throw std::invalid_argument("malformed factor list");
    previous = q;
    for (unsigned i = 0; i < e; ++i) {
      product *= q;
      if (product > value_) throw std::invalid_argument("factors do not multiply to value");
    }
  }
  if (product != value_) throw std::invalid_argument("factors do not multiply to value");
}

FactoredInteger factor_integer(u64 n) {
  if (n == 0) throw std::invalid_argument("cannot factor zero");
  std::map<u64, unsigned> found;
  u64 rest = n;
  for (u64 q : small_primes()) {
    if (q * q > rest) break;
    if (rest % q != 0) {
      // Cheap early exit for a large prime cofactor.
      if (q == 1021 && is_prime(rest)) break;
      continue;
    }
    do {
      rest /= q;
      ++found[q];
    } while (rest % q == 0);
  }
  split_into(rest, found);
  return FactoredInteger(n, {found.begin(), found.end()});
}

u64 mult_order(u64 a, u64 p, const FactoredInteger& totient) {
  a %= p;
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  if (totient.value() != p - 1) throw std::invalid_argument("totient must factor p - 1");
  return order_from_group_order(totient, [&](u64 e) { return pow_mod(a, e, p) == 1; });
}

u64 mult_order(u64 a, u64 p) { return mult_order(a, p, factor_integer(p - 1)); }

}  // namespace recdiv
