#include <gtest/gtest.h>

#include <random>

#include "hgf/cyclotomic.hpp"
#include "hgf/errors.hpp"

using namespace hgf;

namespace {

// Naive oracle: Phi_L by exact division of x^L - 1 by Phi_d for proper divisors d.
std::vector<std::int64_t> phi_by_division(std::uint32_t L) {
  std::vector<std::int64_t> num(L + 1, 0);
  num[0] = -1;
  num[L] = 1;
  for (std::uint32_t d = 1; d < L; ++d) {
    if (L % d) continue;
    const auto den = phi_by_division(d);
    std::vector<std::int64_t> q(num.size() - den.size() + 1, 0);
    for (std::size_t i = num.size(); i-- >= den.size();) {
      const std::int64_t c = num[i];
      if (i + 1 < den.size()) break;
      const std::size_t s = i + 1 - den.size();
      q[s] = c;
      for (std::size_t j = 0; j < den.size(); ++j) num[s + j] -= c * den[j];
      if (s == 0) break;
    }
    while (num.size() > 1 && num.back() == 0) num.pop_back();
    num = q;
    while (num.size() > 1 && num.back() == 0) num.pop_back();
  }
  return num;
}

CycNum random_elem(std::mt19937_64& rng, std::uint32_t L, int span = 5) {
  std::uniform_int_distribution<int> c(-span, span);
  std::vector<BigInt> v(L);
  for (auto& x : v) x = c(rng);
  return CycNum::from_poly(L, v, std::uniform_int_distribution<int>(1, 4)(rng));
}

}  // namespace

TEST(CyclotomicPolynomial, SmallLevels) {
  EXPECT_EQ(cyclotomic_polynomial(1), (std::vector<std::int64_t>{-1, 1}));
  EXPECT_EQ(cyclotomic_polynomial(4), (std::vector<std::int64_t>{1, 0, 1}));
  EXPECT_EQ(cyclotomic_polynomial(12), (std::vector<std::int64_t>{1, 0, -1, 0, 1}));
}

TEST(CyclotomicPolynomial, MatchesDivisionOracle) {
  for (std::uint32_t L = 1; L <= 120; ++L) EXPECT_EQ(cyclotomic_polynomial(L), phi_by_division(L)) << L;
}

TEST(CyclotomicPolynomial, Level105HasCoefficientMinusTwo) {
  const auto c = cyclotomic_polynomial(105);
  EXPECT_EQ(c.size(), 49u);
  EXPECT_EQ(c[7], -2);
}

TEST(CycNum, FrozenExamples) {
  EXPECT_EQ(CycNum::zeta(4, 1) * CycNum::zeta(4, 1), CycNum(4, -1));
  const CycNum z3 = CycNum::zeta(3, 1);
  EXPECT_EQ((CycNum(3, 1) + z3) * (CycNum(3, 1) + z3 * z3), CycNum(3, 1));
  EXPECT_EQ(inv(CycNum::zeta(5, 1)), CycNum::zeta(5, 4));
  EXPECT_THROW(inv(CycNum(7)), DomainError);
}

TEST(CycNum, GaloisExamples) {
  const CycNum z5 = CycNum::zeta(5, 1);
  EXPECT_EQ(galois_apply(1, z5), z5);
  EXPECT_EQ(galois_apply(2, z5), CycNum::zeta(5, 2));
  EXPECT_THROW(galois_apply(5, z5), DomainError);
  EXPECT_THROW(galois_apply(2, CycNum::zeta(6, 1)), DomainError);
}

TEST(CycNum, CoercionExamples) {
  EXPECT_EQ(coerce_level(CycNum::zeta(3, 1), 6), CycNum::zeta(6, 2));
  const CycNum down = coerce_level(-CycNum::zeta(6, 1), 3);
  EXPECT_EQ(down.level(), 3u);
  EXPECT_EQ(down, CycNum::zeta(3, 2));
  for (std::uint32_t L : {1u, 2u, 7u, 30u}) EXPECT_EQ(coerce_level(CycNum(60, 1), L), CycNum(L, 1));
  EXPECT_THROW(coerce_level(CycNum::zeta(12, 1), 4), CoercionError);
  // i lies in Q(mu_12) and in Q(mu_4), not in Q(mu_3).
  EXPECT_EQ(coerce_level(CycNum::zeta(12, 3), 4), CycNum::zeta(4, 1));
  EXPECT_THROW(coerce_level(CycNum::zeta(12, 3), 3), CoercionError);
  // Cross-level equality goes through the lcm.
  EXPECT_EQ(CycNum::zeta(2, 1), CycNum(5, -1));
  EXPECT_NE(CycNum::zeta(3, 1), CycNum::zeta(5, 1));
}

TEST(CycNum, EmbedExamples) {
  auto near = [](std::complex<double> a, std::complex<double> b) { return std::abs(a - b) < 1e-12; };
  EXPECT_TRUE(near(embed_complex(CycNum(9, 1)), {1.0, 0.0}));
  EXPECT_TRUE(near(embed_complex(CycNum::zeta(6, 1)), {0.5, 0.8660254037844386}));
  EXPECT_TRUE(near(embed_complex(CycNum::zeta(8, 1) + CycNum::zeta(8, -1)), {1.4142135623730951, 0.0}));
}

TEST(CycNum, CanonicalRationals) {
  const CycNum a = CycNum::from_coeffs(5, {Rational(2, 4), Rational(0), Rational(-3, 6), Rational(0)});
  EXPECT_EQ(a.coeff(0), Rational(1, 2));
  EXPECT_EQ(a.coeff(2), Rational(-1, 2));
  EXPECT_EQ(a.den(), 2);
  EXPECT_EQ(a.str(), "1/2 - 1/2*z^2");
}

TEST(CycNumProperty, InverseRoundTrip) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::uint32_t> lv(1, 60);
  int done = 0;
  while (done < 1000) {
    const std::uint32_t L = lv(rng);
    const CycNum a = random_elem(rng, L);
    if (a.is_zero()) continue;
    ASSERT_EQ(inv(a) * a, CycNum(L, 1)) << a.str();
    ++done;
  }
}

TEST(CycNumProperty, GaloisComposition) {
  std::mt19937_64 rng(77);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t L = std::uniform_int_distribution<std::uint32_t>(2, 90)(rng);
    std::vector<std::int64_t> units;
    for (std::int64_t c = 1; c < L; ++c)
      if (gcd_u64(c, L) == 1) units.push_back(c);
    const std::int64_t c1 = units[rng() % units.size()], c2 = units[rng() % units.size()];
    const CycNum a = random_elem(rng, L);
    EXPECT_EQ(galois_apply(c1, galois_apply(c2, a)), galois_apply(c1 * c2 % L, a));
  }
}

TEST(CycNumProperty, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t L = std::uniform_int_distribution<std::uint32_t>(1, 120)(rng);
    const int k = std::uniform_int_distribution<int>(1, 10)(rng);
    CycNum prod(L, 1), sum(L);
    std::complex<double> fprod = 1, fsum = 0;
    for (int i = 0; i < k; ++i) {
      const CycNum a = random_elem(rng, L, 2);
      prod *= a;
      sum += a;
      fprod *= embed_complex(a);
      fsum += embed_complex(a);
    }
    const double scale = std::max(1.0, std::abs(fprod));
    EXPECT_LT(std::abs(embed_complex(prod) - fprod), 1e-10 * scale);
    EXPECT_LT(std::abs(embed_complex(sum) - fsum), 1e-10 * std::max(1.0, std::abs(fsum)));
  }
}

TEST(CycNumProperty, RaiseThenLowerRoundTrips) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t L = std::uniform_int_distribution<std::uint32_t>(1, 40)(rng);
    const std::uint32_t k = std::uniform_int_distribution<std::uint32_t>(1, 6)(rng);
    const CycNum a = random_elem(rng, L);
    const CycNum up = coerce_level(a, L * k);
    ASSERT_EQ(up.level(), L * k);
    const CycNum back = coerce_level(up, L);
    ASSERT_EQ(back.level(), L);
    EXPECT_EQ(back, a);
  }
}

TEST(CycNumProperty, RingAxioms) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 200; ++t) {
    const std::uint32_t L = std::uniform_int_distribution<std::uint32_t>(1, 60)(rng);
    const CycNum a = random_elem(rng, L), b = random_elem(rng, L), c = random_elem(rng, L);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - b) + b, a);
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
  }
}

TEST(CycNum, LargeCoefficientsUseExactFallback) {
  CycNum a = CycNum::from_poly(7, {BigInt("123456789012345678901234567890"), 3, -5});
  CycNum b = a * a * a;
  EXPECT_EQ(b / a, a * a);
  EXPECT_EQ(inv(a) * a, CycNum(7, 1));
}

TEST(CycNum, MulZeta) {
  EXPECT_EQ(mul_zeta(CycNum(3, 1), 6, 1), CycNum::zeta(6, 1));
  EXPECT_EQ(mul_zeta(CycNum::zeta(5, 1), 5, 4), CycNum(5, 1));
  EXPECT_EQ(mul_zeta(CycNum::zeta(4, 1), 4, -1).level(), 4u);
}

TEST(CycNum, DimensionBound) { EXPECT_THROW(level_data(65537 * 3), ResourceError); }
