#include "recdiv/charpoly.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oracles.hpp"

namespace recdiv {
namespace {

IntPoly desc(std::vector<i64> c) { return IntPoly::from_descending(std::move(c)); }

const IntPoly kTribonacci = desc({1, -1, -1, -1});
const IntPoly kCubeRootTwo = desc({1, 0, 0, -2});
const IntPoly kCyclicCubic = desc({1, 1, -2, -1});

mpq_class canonical(u64 num, u64 den) {
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

IntPoly reversed(const IntPoly& p) {
  std::vector<i64> c(p.coeffs().rbegin(), p.coeffs().rend());
  return IntPoly(c);
}

IntPoly monic_reversal(const IntPoly& p) {
  // x^d P(1/x) scaled to be monic; only valid when the constant term is +-1.
  IntPoly r = reversed(p);
  std::vector<i64> c = r.coeffs();
  if (c.back() == -1) {
    for (auto& v : c) v = -v;
  }
  return IntPoly(c);
}

TEST(Discriminant, Examples) {
  EXPECT_EQ(discriminant(kTribonacci), -44);
  EXPECT_EQ(discriminant(kCubeRootTwo), -108);
  EXPECT_EQ(discriminant(desc({1, -6, 11, -6})), 4);
  EXPECT_EQ(discriminant(kCyclicCubic), 49);
  EXPECT_EQ(discriminant(desc({1, 0, 1})), -4);
  EXPECT_EQ(discriminant(desc({1, -2, 1})), 0);
}

TEST(Discriminant, MatchesCubicFormula) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 300; ++i) {
    const i64 b = static_cast<i64>(rng() % 41) - 20;
    const i64 c = static_cast<i64>(rng() % 41) - 20;
    const i64 d = static_cast<i64>(rng() % 41) - 20;
    ASSERT_EQ(discriminant(desc({1, b, c, d})), oracle::cubic_discriminant(1, b, c, d)) << b << " " << c << " " << d;
  }
}

TEST(Discriminant, VanishesModPExactlyAtNonSquarefreeReductions) {
  for (const IntPoly& poly : {kTribonacci, kCubeRootTwo, kCyclicCubic, desc({1, 0, -1, 0, 1, 3})}) {
    const mpz_class disc = discriminant(poly);
    for (u64 p : sieve_primes(500)) {
      const bool divides = mpz_divisible_ui_p(disc.get_mpz_t(), p) != 0;
      ASSERT_EQ(divides, !pattern(poly, p).squarefree) << poly.to_string() << " p=" << p;
    }
  }
}

TEST(Resultant, ProductOfRootDifferences) {
  // Res((x-1)(x-2), (x-3)(x-5)) = (1-3)(1-5)(2-3)(2-5) = 24.
  EXPECT_EQ(resultant(desc({1, -3, 2}), desc({1, -8, 15})), 24);
  EXPECT_EQ(resultant(desc({1, -3, 2}), desc({1, -1})), 0);
}

TEST(Irreducibility, Examples) {
  EXPECT_EQ(is_irreducible_over_Q(desc({1, 0, 0, -1})).verdict, Tri::no);
  EXPECT_EQ(is_irreducible_over_Q(kTribonacci).verdict, Tri::yes);
  EXPECT_EQ(is_irreducible_over_Q(kCubeRootTwo).verdict, Tri::yes);
  EXPECT_EQ(is_irreducible_over_Q(kCyclicCubic).verdict, Tri::yes);
  EXPECT_EQ(is_irreducible_over_Q(desc({1, 5})).verdict, Tri::yes);
  EXPECT_THROW(is_irreducible_over_Q(desc({2, 1})), std::invalid_argument);
}

TEST(Irreducibility, DegreeSumsRuleOutFactors) {
  // Galois group A4: no prime is inert, but patterns {3, 1} and {2, 2} leave no common proper degree.
  Irreducibility r = is_irreducible_over_Q(desc({1, 0, 0, 8, 12}));
  EXPECT_EQ(r.verdict, Tri::yes);
  EXPECT_FALSE(r.witness.empty());
}

TEST(Irreducibility, NoInertPrimeStaysUnknown) {
  // x^4 + 1 is irreducible but splits into {2, 2} or linear factors modulo every prime,
  // so degree sums never exclude a quadratic factor.
  EXPECT_EQ(is_irreducible_over_Q(desc({1, 0, 0, 0, 1}), 1000).verdict, Tri::unknown);
}

TEST(Irreducibility, ProductsWithoutRationalRootsAreNeverCalledIrreducible) {
  // (x^2 + 1)(x^2 + x + 1) has no rational root, so the answer must stay unknown.
  EXPECT_NE(is_irreducible_over_Q(desc({1, 1, 2, 1, 1})).verdict, Tri::yes);
  // (x^2 - 2)(x^3 - 3)
  EXPECT_NE(is_irreducible_over_Q(desc({1, 0, -2, -3, 0, 6})).verdict, Tri::yes);
}

TEST(Nondegeneracy, Examples) {
  Nondegeneracy x4 = nondegeneracy(desc({1, 0, 0, 0, 1}));
  EXPECT_FALSE(x4.nondegenerate);
  EXPECT_EQ(x4.witness_m, std::optional<unsigned>(2));  // zeta and -zeta are both roots
  EXPECT_TRUE(nondegeneracy(kTribonacci).nondegenerate);
  Nondegeneracy gauss = nondegeneracy(desc({1, -2, 2}));
  EXPECT_FALSE(gauss.nondegenerate);
  EXPECT_EQ(gauss.witness_m, std::optional<unsigned>(4));
  EXPECT_THROW(nondegeneracy(desc({1, -2, 1})), std::domain_error);
}

TEST(Nondegeneracy, MoreCases) {
  // alpha * omega / alpha = omega for the roots of x^3 - 2.
  EXPECT_EQ(nondegeneracy(kCubeRootTwo).witness_m, std::optional<unsigned>(3));
  // Roots 2 and -2: ratio -1.
  EXPECT_EQ(nondegeneracy(desc({1, 0, -4})).witness_m, std::optional<unsigned>(2));
  // x^2 + x + 1: primitive cube roots, ratio of order 3.
  EXPECT_EQ(nondegeneracy(desc({1, 1, 1})).witness_m, std::optional<unsigned>(3));
}

TEST(Nondegeneracy, InvariantUnderReversal) {
  const std::vector<IntPoly> polys{kTribonacci, desc({1, 0, 0, 0, 1}), desc({1, 1, 1}), desc({1, 0, -1, 0, 1, -1}),
                                   kCyclicCubic, desc({1, 3, 0, 1}), desc({1, 0, 1, 1})};
  for (const IntPoly& p : polys) {
    Nondegeneracy a = nondegeneracy(p);
    Nondegeneracy b = nondegeneracy(monic_reversal(p));
    ASSERT_EQ(a.nondegenerate, b.nondegenerate) << p.to_string();
    ASSERT_EQ(a.witness_m, b.witness_m) << p.to_string();
  }
}

TEST(SdCertificate, Examples) {
  SdCertificate tri = sd_certificate(kTribonacci);
  EXPECT_TRUE(tri.certified);
  EXPECT_EQ(tri.long_cycle_prime, std::optional<u64>(7));
  EXPECT_EQ(tri.transposition_prime, std::optional<u64>(7));
  EXPECT_FALSE(sd_certificate(desc({1, 0, 0, -1})).certified);
  SdCertificate cyclic = sd_certificate(kCyclicCubic, 1000);
  EXPECT_FALSE(cyclic.certified);
  EXPECT_FALSE(cyclic.long_cycle_prime.has_value());
  EXPECT_TRUE(cyclic.full_cycle_prime.has_value());
}

TEST(SdCertificate, WitnessesCarryTheClaimedPatterns) {
  for (const IntPoly& poly : {kTribonacci, kCubeRootTwo, desc({1, 0, 0, -1, -1}), desc({1, -1, 0, 0, 0, -1})}) {
    SdCertificate cert = sd_certificate(poly);
    const unsigned d = poly.degree();
    if (cert.long_cycle_prime) {
      ASSERT_TRUE(pattern(poly, *cert.long_cycle_prime).is_one_and_rest(d));
    }
    if (cert.transposition_prime) {
      FactorPattern pat = pattern(poly, *cert.transposition_prime);
      ASSERT_TRUE(pat.squarefree);
      ASSERT_EQ(std::count(pat.degrees.begin(), pat.degrees.end(), 2u), 1);
      ASSERT_EQ(std::count(pat.degrees.begin(), pat.degrees.end(), 1u), static_cast<long>(d - 2));
    }
    if (cert.full_cycle_prime) {
      ASSERT_EQ(pattern(poly, *cert.full_cycle_prime).degrees, std::vector<unsigned>{d});
    }
    ASSERT_EQ(cert.certified, cert.transposition_prime.has_value() && cert.long_cycle_prime.has_value());
  }
}

TEST(PatternDensity, Examples) {
  EXPECT_EQ(expected_pattern_density(3, {1, 2}), mpq_class(1, 2));
  EXPECT_EQ(expected_pattern_density(3, {2, 1}), mpq_class(1, 2));
  EXPECT_EQ(expected_pattern_density(3, {3}), mpq_class(1, 3));
  EXPECT_EQ(expected_pattern_density(3, {1, 1, 1}), mpq_class(1, 6));
  EXPECT_THROW(expected_pattern_density(3, {2, 2}), std::invalid_argument);
  EXPECT_THROW(expected_pattern_density(3, {3, 0}), std::invalid_argument);
}

TEST(PatternDensity, MatchesPermutationCountAndSumsToOne) {
  for (unsigned d : {3u, 4u, 5u}) {
    const auto counts = oracle::cycle_type_counts(d);
    u64 factorial = 1;
    for (unsigned i = 2; i <= d; ++i) factorial *= i;
    mpq_class total = 0;
    const auto parts = partitions(d);
    ASSERT_EQ(parts.size(), counts.size());
    for (const auto& part : parts) {
      const mpq_class density = expected_pattern_density(d, part);
      std::vector<unsigned> key = part;
      std::sort(key.begin(), key.end(), std::greater<>());
      ASSERT_EQ(density, canonical(counts.at(key), factorial));
      total += density;
    }
    ASSERT_EQ(total, 1);
  }
}

TEST(PatternDensity, OneAndRestIsOneOverDMinusOne) {
  for (unsigned d = 3; d <= 7; ++d) {
    EXPECT_EQ(expected_pattern_density(d, {d - 1, 1}), mpq_class(1, d - 1));
  }
}

TEST(Analyze, TribonacciProfile) {
  PolyProfile prof = analyze(kTribonacci);
  EXPECT_EQ(prof.discriminant, -44);
  EXPECT_EQ(prof.irreducible.verdict, Tri::yes);
  EXPECT_EQ(prof.nondegenerate, Tri::yes);
  EXPECT_TRUE(prof.sd.certified);
  EXPECT_TRUE(prof.hypotheses_verified());
  EXPECT_EQ(prof.multiplicative_independence, "not checked");
  EXPECT_FALSE(prof.describe().empty());
}

TEST(Analyze, NegativeControls) {
  EXPECT_FALSE(analyze(kCyclicCubic).hypotheses_verified());
  EXPECT_FALSE(analyze(desc({1, 0, 0, 0, 1})).hypotheses_verified());
  EXPECT_FALSE(analyze(desc({1, 0, 0, -1})).hypotheses_verified());
}

}  // namespace
}  // namespace recdiv
