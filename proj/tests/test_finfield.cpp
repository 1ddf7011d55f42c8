#include <gtest/gtest.h>

#include <random>

#include "hgf/errors.hpp"
#include "hgf/finfield.hpp"

using namespace hgf;

namespace {

const std::vector<std::uint32_t> kOrders = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 81, 121, 125};

// Naive polynomial arithmetic over F_p, independent of FieldSpec.
using Poly = std::vector<std::uint32_t>;

Poly mulmod_poly(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  const std::size_t f = m.size() - 1;
  std::vector<std::uint64_t> r(2 * f, 0);
  for (std::size_t i = 0; i < f; ++i)
    for (std::size_t j = 0; j < f; ++j) r[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
  for (std::size_t i = 2 * f - 1; i >= f; --i) {
    const std::uint64_t c = r[i] % p;
    r[i] = 0;
    for (std::size_t j = 0; j < f; ++j) r[i - f + j] += c * (p - m[j]);
    if (i == f) break;
  }
  Poly out(f);
  for (std::size_t i = 0; i < f; ++i) out[i] = static_cast<std::uint32_t>(r[i] % p);
  return out;
}

// Multiplicative order of t modulo m, or 0 if t is a zero divisor or does not return to 1 within p^f steps.
std::uint64_t order_of_t(const Poly& m, std::uint32_t p) {
  const std::size_t f = m.size() - 1;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < f; ++i) q *= p;
  Poly t(f, 0), one(f, 0), x(f, 0);
  t[1 % f] = 1;
  if (f == 1) t[0] = (p - m[0]) % p;
  one[0] = 1;
  x = t;
  for (std::uint64_t k = 1; k <= q; ++k) {
    if (x == one) return k;
    x = mulmod_poly(x, t, m, p);
  }
  return 0;
}

}  // namespace

TEST(FieldSpec, PrimeFieldGenerators) {
  EXPECT_EQ(build_field(5, 1)->generator().code, 2u);
  EXPECT_EQ(build_field(7, 1)->generator().code, 3u);
  EXPECT_EQ(build_field(2, 1)->generator().code, 1u);
  // Oracle: smallest element whose powers enumerate every unit.
  for (std::uint32_t p : {3u, 11u, 13u, 41u, 97u}) {
    std::uint32_t g = 1;
    for (;; ++g) {
      std::uint64_t x = 1, k = 0;
      do {
        x = x * g % p;
        ++k;
      } while (x != 1);
      if (k == p - 1) break;
    }
    EXPECT_EQ(build_field(p, 1)->generator().code, g) << p;
  }
}

TEST(FieldSpec, F9ModulusIsSmallestPrimitive) {
  const auto F = build_field(3, 2);
  // Oracle search over (c1, c0) in lexicographic order.
  Poly best;
  for (std::uint32_t c1 = 0; c1 < 3 && best.empty(); ++c1)
    for (std::uint32_t c0 = 0; c0 < 3; ++c0) {
      Poly m{c0, c1, 1};
      if (order_of_t(m, 3) == 8) {
        best = m;
        break;
      }
    }
  EXPECT_EQ(F->modulus(), best);
  EXPECT_EQ(best, (Poly{2, 1, 1}));
  EXPECT_EQ(F->generator().code, 3u);  // the class of t
}

TEST(FieldSpec, ModuliArePrimitiveAndMinimal) {
  for (std::uint32_t q : kOrders) {
    const auto F = field_of_order(q);
    if (F->f() == 1) continue;
    const Poly& m = F->modulus();
    ASSERT_EQ(m.size(), F->f() + 1);
    EXPECT_EQ(order_of_t(m, F->p()), q - 1) << q;
    // No smaller candidate (in the fixed order) is primitive.
    const std::uint32_t mine = [&] {
      std::uint32_t c = 0;
      for (std::size_t i = m.size() - 1; i-- > 0;) c = c * F->p() + m[i];
      return c;
    }();
    for (std::uint32_t t = 0; t < mine; ++t) {
      Poly cand(F->f() + 1, 1);
      std::uint32_t x = t;
      for (std::uint32_t i = 0; i < F->f(); ++i) {
        cand[i] = x % F->p();
        x /= F->p();
      }
      if (cand[0] == 0) continue;
      EXPECT_NE(order_of_t(cand, F->p()), q - 1) << q << " candidate " << t;
    }
  }
}

TEST(FieldSpec, ErrorsAndBounds) {
  EXPECT_THROW(build_field(6, 1), DomainError);
  EXPECT_THROW(build_field(5, 0), DomainError);
  EXPECT_THROW(build_field(2, 21), ResourceError);
  EXPECT_THROW(field_of_order(12), DomainError);
}

TEST(FieldSpec, DiscreteLogExamples) {
  const auto F = build_field(7, 1);
  EXPECT_EQ(F->dlog(F->generator()), 1u);
  EXPECT_EQ(F->dlog(F->one()), 0u);
  EXPECT_EQ(F->dlog(F->from_int(6)), 3u);
  EXPECT_THROW(F->dlog(F->zero()), DomainError);
}

TEST(FieldSpec, DlogTableIsBijection) {
  for (std::uint32_t q : kOrders) {
    const auto F = field_of_order(q);
    std::vector<int> seen(F->order(), 0);
    for (std::uint32_t c = 1; c < q; ++c) {
      const std::uint32_t k = F->dlog({c});
      ++seen[k];
      EXPECT_EQ(F->exp(k).code, c);
    }
    for (int s : seen) EXPECT_EQ(s, 1);
  }
}

TEST(FieldSpec, ArithmeticMatchesNaivePolynomials) {
  std::mt19937_64 rng(3);
  for (std::uint32_t q : kOrders) {
    const auto F = field_of_order(q);
    if (F->f() == 1) continue;
    for (int t = 0; t < 300; ++t) {
      const FqElem a{static_cast<std::uint32_t>(rng() % q)}, b{static_cast<std::uint32_t>(rng() % q)};
      const Poly pa = F->coeffs(a), pb = F->coeffs(b);
      EXPECT_EQ(F->coeffs(F->mul(a, b)), mulmod_poly(pa, pb, F->modulus(), F->p()));
      Poly s(F->f());
      for (std::uint32_t i = 0; i < F->f(); ++i) s[i] = (pa[i] + pb[i]) % F->p();
      EXPECT_EQ(F->coeffs(F->add(a, b)), s);
      EXPECT_EQ(F->add(F->sub(a, b), b), a);
      if (a.code) EXPECT_EQ(F->mul(a, F->inv(a)), F->one());
    }
  }
}

TEST(FieldSpecProperty, DlogIsHomomorphism) {
  std::mt19937_64 rng(11);
  for (std::uint32_t q : kOrders) {
    const auto F = field_of_order(q);
    for (int t = 0; t < 200; ++t) {
      const FqElem a{1 + static_cast<std::uint32_t>(rng() % (q - 1))}, b{1 + static_cast<std::uint32_t>(rng() % (q - 1))};
      EXPECT_EQ(F->dlog(F->mul(a, b)), (F->dlog(a) + F->dlog(b)) % F->order());
    }
  }
}

TEST(Characters, Examples) {
  const auto F7 = build_field(7, 1);
  for (std::uint32_t m = 0; m < 6; ++m) EXPECT_EQ(MultCharacter(*F7, m)(F7->one()), CycNum(6, 1));
  const auto F13 = build_field(13, 1);
  for (std::uint32_t N : {2u, 3u, 4u, 6u, 12u}) {
    const MultCharacter phi = power_residue_character(*F13, N);
    EXPECT_EQ(phi(F13->generator()), CycNum::zeta(N, 1));
    EXPECT_EQ(phi.order(), N);
    EXPECT_TRUE(phi(F13->zero()).is_zero());
  }
  const auto F5 = build_field(5, 1);
  EXPECT_EQ(AddCharacter(*F5)(F5->zero()), CycNum(5, 1));
  EXPECT_EQ(AddCharacter(*F5)(F5->from_int(2)), CycNum::zeta(5, 2));
}

TEST(Characters, TraceOnF9) {
  const auto F = build_field(3, 2);
  const FqElem t{3};
  // Tr(t) = t + t^3 computed with the naive polynomial oracle.
  const Poly pt = F->coeffs(t);
  const Poly t3 = mulmod_poly(mulmod_poly(pt, pt, F->modulus(), 3), pt, F->modulus(), 3);
  const Poly tr{(pt[0] + t3[0]) % 3, (pt[1] + t3[1]) % 3};
  ASSERT_EQ(tr[1], 0u);
  EXPECT_EQ(F->trace(t), tr[0]);
  EXPECT_EQ(AddCharacter(*F)(t), CycNum::zeta(3, tr[0]));
}

TEST(CharactersProperty, OrthogonalityAndMultiplicativity) {
  std::mt19937_64 rng(21);
  for (std::uint32_t q : kOrders) {
    const auto F = field_of_order(q);
    for (std::uint32_t m = 0; m < F->order(); ++m) {
      const MultCharacter chi(*F, m);
      CycNum s(F->order());
      for (std::uint32_t c = 1; c < q; ++c) s += chi({c});
      EXPECT_EQ(s, CycNum(F->order(), m == 0 ? Rational(q - 1) : Rational(0)));
      EXPECT_EQ(chi.order(), F->order() / gcd_u64(m, F->order()));
      const FqElem a{1 + static_cast<std::uint32_t>(rng() % (q - 1))}, b{1 + static_cast<std::uint32_t>(rng() % (q - 1))};
      EXPECT_EQ(chi(F->mul(a, b)), chi(a) * chi(b));
      EXPECT_EQ(chi(F->neg(F->one())), CycNum(F->order(), chi.at_minus_one()));
    }
    const AddCharacter psi(*F);
    CycNum s(F->p());
    for (std::uint32_t c = 0; c < q; ++c) s += psi({c});
    EXPECT_TRUE(s.is_zero()) << q;
    const FqElem x{static_cast<std::uint32_t>(rng() % q)}, y{static_cast<std::uint32_t>(rng() % q)};
    EXPECT_EQ(psi(F->add(x, y)), psi(x) * psi(y));
  }
}
