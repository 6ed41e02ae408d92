#pragma once

// Exact 64-bit integer primitives: sieve, deterministic primality,
// factorization and multiplicative orders. Every modular product goes
// through a 128-bit accumulator, so moduli up to 2^64 - 1 are safe.

#include <cstdint>
#include <utility>
#include <vector>

namespace recdiv {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;
  return (s < a || s >= m) ? s - m : s;
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

// Maps a signed value into [0, m).
constexpr u64 to_residue(i64 v, u64 m) {
  if (v >= 0) return static_cast<u64>(v) % m;
  u64 r = (static_cast<u64>(-(v + 1)) % m + 1) % m;  // |v| without overflow at INT64_MIN
  return r == 0 ? 0 : m - r;
}

u64 pow_mod(u64 base, u128 exp, u64 m);

// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
u64 inv_mod(u64 a, u64 m);

u64 gcd(u64 a, u64 b);
// Throws std::overflow_error if the result does not fit in 64 bits.
u64 lcm(u64 a, u64 b);

std::vector<u64> sieve_primes(u64 limit);

// Deterministic for every 64-bit n.
bool is_prime(u64 n);

class FactoredInteger {
 public:
  using Factor = std::pair<u64, unsigned>;

  FactoredInteger() = default;
  // Validates every invariant; throws std::invalid_argument on violation.
  FactoredInteger(u64 value, std::vector<Factor> factors);

  u64 value() const { return value_; }
  const std::vector<Factor>& factors() const& { return factors_; }
  std::vector<Factor> factors() && { return std::move(factors_); }

  friend bool operator==(const FactoredInteger&, const FactoredInteger&) = default;

 private:
  u64 value_ = 1;
  std::vector<Factor> factors_;
};

// Trial division by primes below 10^6, then Brent's variant of Pollard rho.
FactoredInteger factor_integer(u64 n);

// Smallest e >= 1 with a^e == 1 (mod p). `totient` must factor p - 1.
// Throws std::domain_error("zero has no multiplicative order") for a == 0 mod p.
u64 mult_order(u64 a, u64 p, const FactoredInteger& totient);
u64 mult_order(u64 a, u64 p);

// Generic order computation in a group of known factored order: `is_identity_pow(e)`
// must report whether x^e is the identity.
template <typename PowIsOne>
u64 order_from_group_order(const FactoredInteger& group_order, PowIsOne&& is_identity_pow) {
  u64 order = group_order.value();
  for (const auto& [q, e] : group_order.factors()) {
    for (unsigned i = 0; i < e; ++i) {
      if (order % q != 0 || !is_identity_pow(order / q)) break;
      order /= q;
    }
  }
  return order;
}

}  // namespace recdiv
