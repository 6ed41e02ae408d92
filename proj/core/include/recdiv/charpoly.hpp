#pragma once

// Hypothesis checks on a characteristic polynomial: discriminant,
// irreducibility over Q, non-degeneracy (no root ratio is a root of unity),
// a Galois-group-is-S_d certificate from factorization patterns, and the exact
// Chebotarev densities of cycle types in S_d.

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "recdiv/polyfield.hpp"

namespace recdiv {

enum class Tri { yes, no, unknown };
std::string to_string(Tri t);

inline constexpr unsigned kDefaultPrimeBudget = 200;

// Resultant of two integer polynomials (Sylvester determinant, fraction-free elimination).
mpz_class resultant(const IntPoly& f, const IntPoly& g);
// (-1)^{d(d-1)/2} Res(P, P') / lc(P).
mpz_class discriminant(const IntPoly& poly);

struct Irreducibility {
  Tri verdict = Tri::unknown;
  std::string witness;
};

// Sound but incomplete. "no" comes with a rational root; "yes" with an
// irreducible reduction or with incompatible factor-degree sets across
// `prime_budget` squarefree primes.
Irreducibility is_irreducible_over_Q(const IntPoly& poly, unsigned prime_budget = kDefaultPrimeBudget);

struct Nondegeneracy {
  bool nondegenerate = true;
  std::optional<unsigned> witness_m;  // least m with a root ratio of exact order m
};

// Throws std::domain_error("repeated roots") when the discriminant vanishes.
Nondegeneracy nondegeneracy(const IntPoly& poly);

struct SdCertificate {
  bool certified = false;
  std::optional<u64> full_cycle_prime;     // pattern {d}
  std::optional<u64> transposition_prime;  // pattern {2, 1, ..., 1}
  std::optional<u64> long_cycle_prime;     // pattern {d-1, 1}
  std::string note;
};

SdCertificate sd_certificate(const IntPoly& poly, unsigned prime_budget = kDefaultPrimeBudget);

// (# permutations of S_d with the given cycle type) / d!. Throws
// std::invalid_argument unless `cycle_type` is a partition of d.
mpq_class expected_pattern_density(unsigned d, const std::vector<unsigned>& cycle_type);

// All partitions of d, parts in descending order.
std::vector<std::vector<unsigned>> partitions(unsigned d);

struct PolyProfile {
  IntPoly polynomial;
  mpz_class discriminant;
  Irreducibility irreducible;
  Tri nondegenerate = Tri::unknown;
  std::optional<unsigned> degeneracy_witness_m;
  SdCertificate sd;
  std::string multiplicative_independence = "not checked";

  bool hypotheses_verified() const {
    return irreducible.verdict == Tri::yes && nondegenerate == Tri::yes && sd.certified;
  }
  std::string describe() const;
};

PolyProfile analyze(const IntPoly& poly, unsigned prime_budget = kDefaultPrimeBudget);

}  // namespace recdiv
