#include "recdiv/polyfield.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>

#include "oracles.hpp"

namespace recdiv {
namespace {

const IntPoly kTribonacci = IntPoly::from_descending({1, -1, -1, -1});

FpPoly fp(u64 p, std::vector<u64> c) { return FpPoly(p, std::move(c)); }

TEST(ReducePoly, Examples) {
  EXPECT_EQ(reduce_poly(kTribonacci, 2), fp(2, {1, 1, 1, 1}));
  EXPECT_EQ(reduce_poly(kTribonacci, 7), fp(7, {6, 6, 6, 1}));
  EXPECT_TRUE(reduce_poly(IntPoly({14, 7}), 7).is_zero());
}

TEST(FpPolyArithmetic, DivmodReconstructs) {
  std::mt19937_64 rng(3);
  const u64 p = 101;
  for (int i = 0; i < 200; ++i) {
    std::vector<u64> a(rng() % 8 + 1), b(rng() % 5 + 1);
    for (auto& v : a) v = rng() % p;
    for (auto& v : b) v = rng() % p;
    b.back() = b.back() == 0 ? 1 : b.back();
    FpPoly fa(p, a), fb(p, b);
    auto [q, r] = divmod(fa, fb);
    ASSERT_EQ(q * fb + r, fa);
    ASSERT_LT(r.degree(), fb.degree());
  }
  EXPECT_THROW(divmod(fp(5, {1}), fp(5, {})), std::domain_error);
}

TEST(FactorModP, Examples) {
  EXPECT_EQ(factor_mod_p(reduce_poly(kTribonacci, 2)), (std::vector<PolyFactor>{{fp(2, {1, 1}), 3}}));
  // x - 3 = x + 4 and x^2 + 2x + 5 over F_7.
  EXPECT_EQ(factor_mod_p(reduce_poly(kTribonacci, 7)),
            (std::vector<PolyFactor>{{fp(7, {4, 1}), 1}, {fp(7, {5, 2, 1}), 1}}));
  EXPECT_EQ(factor_mod_p(reduce_poly(kTribonacci, 5)), (std::vector<PolyFactor>{{fp(5, {4, 4, 4, 1}), 1}}));
  EXPECT_EQ(oracle::roots_naive(kTribonacci.coeffs(), 7), (std::vector<u64>{3}));
  EXPECT_TRUE(oracle::roots_naive(kTribonacci.coeffs(), 5).empty());
}

TEST(FactorModP, SmallCharacteristicRepeatedFactors) {
  // (x^2 + x + 1)^2 (x + 1)^3 over F_2, and x^9 - 1 = (x - 1)^9 over F_3.
  FpPoly a = fp(2, {1, 1, 1});
  FpPoly b = fp(2, {1, 1});
  FpPoly f = a * a * b * b * b;
  EXPECT_EQ(factor_mod_p(f), (std::vector<PolyFactor>{{b, 3}, {a, 2}}));
  FpPoly g = FpPoly::monomial(3, 9) - FpPoly::constant(3, 1);
  EXPECT_EQ(factor_mod_p(g), (std::vector<PolyFactor>{{fp(3, {2, 1}), 9}}));
}

TEST(FactorModP, ProductAndIrreducibilityOnRandomInputs) {
  std::mt19937_64 rng(11);
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 13ULL, 101ULL, 65537ULL, 2147483647ULL}) {
    for (int i = 0; i < 60; ++i) {
      std::vector<u64> c(rng() % 9 + 2);
      for (auto& v : c) v = rng() % p;
      c.back() = 1 + rng() % (p - 1);
      FpPoly f(p, c);
      auto factors = factor_mod_p(f, rng());
      FpPoly product = FpPoly::constant(p, f.leading());
      for (const auto& [g, m] : factors) {
        ASSERT_TRUE(is_irreducible(g)) << g.to_string();
        ASSERT_EQ(g.leading(), 1u);
        for (unsigned j = 0; j < m; ++j) product = product * g;
      }
      ASSERT_EQ(product, f) << "p = " << p;
      ASSERT_TRUE(std::is_sorted(factors.begin(), factors.end(),
                                 [](const PolyFactor& x, const PolyFactor& y) { return x.factor < y.factor; }));
    }
  }
}

TEST(FactorModP, OutputIndependentOfSeed) {
  FpPoly f = reduce_poly(IntPoly::from_descending({1, 0, 0, 0, 0, 0, 0, 0, -1}), 17);  // splits completely
  auto reference = factor_mod_p(f, 0);
  EXPECT_EQ(reference.size(), 8u);
  for (u64 seed = 1; seed < 20; ++seed) EXPECT_EQ(factor_mod_p(f, seed), reference);
}

TEST(Pattern, Examples) {
  FactorPattern a = pattern(kTribonacci, 7);
  EXPECT_EQ(a.degrees, (std::vector<unsigned>{2, 1}));
  EXPECT_TRUE(a.squarefree);
  EXPECT_EQ(a.label(), "2-1");
  FactorPattern b = pattern(kTribonacci, 2);
  EXPECT_EQ(b.degrees, (std::vector<unsigned>{1, 1, 1}));
  EXPECT_FALSE(b.squarefree);
  FactorPattern c = pattern(IntPoly::from_descending({1, 0, 0, -2}), 5);
  EXPECT_EQ(c.degrees, (std::vector<unsigned>{2, 1}));
  EXPECT_TRUE(c.squarefree);
  EXPECT_THROW(pattern(IntPoly({1, 3}), 3), std::domain_error);
}

TEST(Pattern, DegreesSumAndSquarefreeFlagAgreeWithRootCount) {
  for (u64 p : sieve_primes(400)) {
    FactorPattern pat = pattern(kTribonacci, p);
    unsigned sum = 0, linear = 0;
    for (unsigned g : pat.degrees) {
      sum += g;
      linear += g == 1;
    }
    ASSERT_EQ(sum, 3u);
    if (pat.squarefree) {
      ASSERT_EQ(linear, oracle::roots_naive(kTribonacci.coeffs(), p).size()) << p;
    }
  }
}

TEST(Pattern, CoarseChebotarevFrequencies) {
  std::map<std::string, double> freq;
  double total = 0;
  for (u64 p : sieve_primes(2000)) {
    if (p <= 50) continue;
    FactorPattern pat = pattern(kTribonacci, p);
    if (!pat.squarefree) continue;
    freq[pat.label()] += 1;
    total += 1;
  }
  EXPECT_NEAR(freq["1-1-1"] / total, 1.0 / 6, 0.1);
  EXPECT_NEAR(freq["2-1"] / total, 1.0 / 2, 0.1);
  EXPECT_NEAR(freq["3"] / total, 1.0 / 3, 0.1);
}

TEST(FpRoot, Examples) {
  EXPECT_EQ(fp_root(kTribonacci, 7), std::optional<u64>(3));
  EXPECT_EQ(fp_root(kTribonacci, 5), std::nullopt);
  EXPECT_EQ(fp_root(IntPoly({-2, 1}), 11), std::optional<u64>(2));
}

TEST(FpRoot, SmallestRootMatchesExhaustiveSearch) {
  const IntPoly f = IntPoly::from_descending({1, 3, -7, 0, 12});
  for (u64 p : sieve_primes(300)) {
    auto roots = oracle::roots_naive(f.coeffs(), p);
    auto got = fp_root(f, p);
    if (roots.empty()) {
      ASSERT_FALSE(got.has_value()) << p;
    } else {
      ASSERT_EQ(got, std::optional<u64>(roots.front())) << p;
    }
  }
}

class ExtFieldTest : public ::testing::Test {
 protected:
  // F_49 built on the quadratic factor of the Tribonacci polynomial at p = 7.
  std::shared_ptr<const ExtField> f49 = std::make_shared<const ExtField>(fp(7, {5, 2, 1}));
  // F_4 = F_2[x]/(x^2 + x + 1).
  std::shared_ptr<const ExtField> f4 = std::make_shared<const ExtField>(fp(2, {1, 1, 1}));

  ExtElem random_elem(std::mt19937_64& rng) const {
    return ExtElem(f49, {rng() % 7, rng() % 7});
  }
};

TEST_F(ExtFieldTest, RejectsReducibleModulus) {
  EXPECT_THROW(ExtField(fp(7, {6, 0, 1})), std::invalid_argument);  // x^2 - 1
  EXPECT_THROW(ExtField(fp(7, {1, 2})), std::invalid_argument);     // not monic
}

TEST_F(ExtFieldTest, NormExamples) {
  EXPECT_EQ(ext_norm(ExtElem::generator(f49)), 5u);
  EXPECT_EQ(ext_norm(ExtElem::scalar(f49, 1)), 1u);
  EXPECT_EQ(ext_norm(ExtElem::scalar(f49, 3)), 2u);  // 3^2 mod 7
  EXPECT_EQ(ext_norm(ExtElem::scalar(f49, 0)), 0u);
}

TEST_F(ExtFieldTest, NormIsMultiplicativeAndEqualsConjugateProduct) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 1000; ++i) {
    ExtElem a = random_elem(rng), b = random_elem(rng);
    ASSERT_EQ(ext_norm(a * b), mul_mod(ext_norm(a), ext_norm(b), 7));
    ExtElem conj_product = a * frobenius(a);
    ASSERT_TRUE(conj_product.in_base_field());
    ASSERT_EQ(ext_norm(a), conj_product.base_coord());
  }
}

TEST_F(ExtFieldTest, FrobeniusProperties) {
  std::mt19937_64 rng(9);
  EXPECT_EQ(frobenius(ExtElem::scalar(f49, 4)), ExtElem::scalar(f49, 4));
  ExtElem theta = ExtElem::generator(f49);
  ExtElem image = frobenius(theta);
  EXPECT_FALSE(image == theta);
  EXPECT_TRUE((image * image + ExtElem::scalar(f49, 2) * image + ExtElem::scalar(f49, 5)).is_zero());
  for (int i = 0; i < 100; ++i) {
    ExtElem a = random_elem(rng);
    ASSERT_EQ(frobenius(frobenius(a)), a);
  }
}

TEST_F(ExtFieldTest, InverseRoundTrip) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    ExtElem a = random_elem(rng);
    if (a.is_zero()) continue;
    ASSERT_TRUE((a * a.inverse()).is_one());
  }
  EXPECT_THROW(ExtElem::scalar(f49, 0).inverse(), std::domain_error);
}

TEST_F(ExtFieldTest, ElementOrders) {
  EXPECT_EQ(ext_elem_order(ExtElem::scalar(f49, 1), factor_integer(48)), 1u);
  EXPECT_EQ(ext_elem_order(ExtElem::generator(f4), factor_integer(3)), 3u);
  EXPECT_EQ(ext_elem_order(ExtElem::scalar(f49, 2), factor_integer(48)), mult_order(2, 7));
  EXPECT_EQ(ext_elem_order(ExtElem::scalar(f49, 2), factor_integer(48)), 3u);
  EXPECT_THROW(ext_elem_order(ExtElem::scalar(f49, 0), factor_integer(48)), std::domain_error);
  // Brute force over all of F_49^*.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    ExtElem a = random_elem(rng);
    if (a.is_zero()) continue;
    u64 naive = 1;
    for (ExtElem x = a; !x.is_one(); x = x * a) ++naive;
    ASSERT_EQ(ext_elem_order(a, factor_integer(48)), naive);
  }
}

TEST_F(ExtFieldTest, SolveGammaExamples) {
  // Sequence 2 * 3^n on roots (3, 5) over F_7 embedded in F_49.
  std::vector<ExtElem> roots{ExtElem::scalar(f49, 3), ExtElem::scalar(f49, 5)};
  auto g = solve_gamma(roots, {2, 6});
  EXPECT_EQ(g[0], ExtElem::scalar(f49, 2));
  EXPECT_TRUE(g[1].is_zero());

  // Power sums of the Tribonacci roots at p = 7 give gamma = (1, 1, 1).
  ExtElem theta = ExtElem::generator(f49);
  std::vector<ExtElem> tri{ExtElem::scalar(f49, 3), theta, frobenius(theta)};
  auto ones = solve_gamma(tri, {3, 1, 3});  // e1 = 1, e1^2 - 2 e2 = 1 + 2 = 3
  for (const auto& e : ones) EXPECT_TRUE(e.is_one());

  EXPECT_THROW(solve_gamma({roots[0], roots[0]}, {1, 2}), std::domain_error);
}

TEST_F(ExtFieldTest, SolveGammaReconstructsTribonacci) {
  ExtElem theta = ExtElem::generator(f49);
  std::vector<ExtElem> roots{ExtElem::scalar(f49, 3), theta, frobenius(theta)};
  auto gammas = solve_gamma(roots, {1, 1, 1});
  EXPECT_TRUE(gammas[0].in_base_field());
  const auto expected = oracle::sequence_mod({-1, -1, -1}, {1, 1, 1}, 6, 7);
  for (u64 n = 0; n < 6; ++n) {
    ExtElem sum = ExtElem::scalar(f49, 0);
    for (std::size_t i = 0; i < 3; ++i) sum = sum + gammas[i] * roots[i].pow(n);
    ASSERT_TRUE(sum.in_base_field());
    ASSERT_EQ(sum.base_coord(), expected[n]) << n;
  }
}

}  // namespace
}  // namespace recdiv
