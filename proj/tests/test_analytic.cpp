#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hgf/analytic.hpp"
#include "hgf/errors.hpp"

using namespace hgf;

namespace {

constexpr double kPi = std::numbers::pi;

double rel(Complex x, Complex ref) { return std::abs(x - ref) / std::abs(ref); }

}  // namespace

TEST(Gamma, ClosedFormsAndIdentities) {
  EXPECT_NEAR(gamma_complex(0.5).real(), std::sqrt(kPi), 1e-14);
  EXPECT_NEAR(std::abs(beta_complex(0.5, 0.5) - kPi), 0.0, 1e-10);
  for (double s : {0.1, 0.7, 1.5, 3.25, 7.0, -0.5, -2.3})
    EXPECT_NEAR(gamma_complex(s).real() / std::tgamma(s), 1.0, 1e-13) << s;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> re(-4.0, 6.0), im(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const Complex s(re(rng), im(rng));
    EXPECT_LT(rel(gamma_complex(s + 1.0) / gamma_complex(s), s), 1e-12) << s;
    const Complex refl = gamma_complex(s) * gamma_complex(1.0 - s) * std::sin(kPi * s);
    EXPECT_LT(rel(refl, Complex(kPi)), 1e-10) << s;
  }
  EXPECT_THROW(gamma_complex(0.0), DomainError);
  EXPECT_THROW(gamma_complex(-3.0), DomainError);
  const GammaBeta gb = gamma_beta(1.0, 2.0);
  EXPECT_NEAR(gb.beta.real(), 0.5, 1e-14);
}

TEST(Series, ClosedForms) {
  EXPECT_EQ(hgf_series(ComplexParams{0.3, 0.7, 1.2}, 0.0), Complex(1.0));
  EXPECT_NEAR(hgf_series(ComplexParams{1, 1, 2}, 0.5).real(), 2.0 * std::log(2.0), 1e-14);
  // F(1,1;2;l) = -log(1-l)/l, F(a,b;b;l) = (1-l)^{-a}, F(1/2,1;3/2;-l^2) = atan(l)/l.
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> rr(0.0, 0.9), th(0.0, 2.0 * kPi);
  for (int i = 0; i < 100; ++i) {
    const Complex l = std::polar(rr(rng), th(rng));
    EXPECT_LT(rel(hgf_series(ComplexParams{1, 1, 2}, l), -std::log(1.0 - l) / l), 1e-13);
    const Complex a(0.3, -0.4);
    EXPECT_LT(rel(hgf_series(ComplexParams{a, 0.8, 0.8}, l), std::pow(1.0 - l, -a)), 1e-13);
    const Complex z = std::sqrt(rr(rng)) * std::exp(Complex(0, th(rng)));
    EXPECT_LT(rel(hgf_series(ComplexParams{0.5, 1, 1.5}, -z * z), std::atan(z) / z), 1e-13);
  }
  // A terminating series is a polynomial: F(-2,b;c;l) = 1 - 2bl/c + b(b+1)l^2/(c(c+1)).
  const Complex l(0.4, 0.2);
  EXPECT_LT(rel(hgf_series(ComplexParams{-2, 0.5, 1.5}, l), 1.0 - 2.0 * 0.5 * l / 1.5 + 0.5 * 1.5 * l * l / (1.5 * 2.5)),
            1e-15);
  EXPECT_THROW(hgf_series(ComplexParams{0.5, 0.5, 1}, 0.96), DomainError);
  EXPECT_THROW(hgf_series(ComplexParams{0.5, 0.5, -1}, 0.2), DomainError);
  EXPECT_THROW(hgf_series(HGFParams{Rational(1, 2), Rational(1, 2), Rational(-2)}, 0.2), DomainError);
  EXPECT_NEAR(hgf_series(HGFParams{Rational(1), Rational(1), Rational(2)}, 0.5).real(), 2.0 * std::log(2.0), 1e-14);
}

TEST(Series, DerivativeMatchesFiniteDifference) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> par(0.1, 2.0), lr(-0.6, 0.6);
  for (int i = 0; i < 50; ++i) {
    const ComplexParams p{par(rng), Complex(par(rng), 0.3), par(rng) + 0.5};
    const Complex l(lr(rng), lr(rng));
    const double h = 1e-5;
    const Complex fd = (hgf_series(p, l + h) - hgf_series(p, l - h)) / (2.0 * h);
    EXPECT_LT(rel(fd, hgf_series_derivative(p, l)), 1e-6);
  }
}

TEST(EulerIntegral, CrossMethodAndEndpoints) {
  const ComplexParams p{0.25, 0.25, 1.0};
  EXPECT_LT(rel(euler_quadrature(p, 0.1), hgf_series(p, 0.1)), 1e-10);
  const ComplexParams q{1.0 / 3.0, 0.5, 1.0};
  EXPECT_LT(rel(euler_quadrature(q, 0.3), hgf_series(q, 0.3)), 1e-10);
  // lambda = 0 leaves the beta integrand.
  EXPECT_LT(rel(euler_integral(q, 0.0), beta_complex(0.5, 0.5)), 1e-12);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.05, 0.95), lr(-0.7, 0.7);
  for (int i = 0; i < 30; ++i) {
    const double b = u(rng);
    const ComplexParams r{Complex(u(rng), u(rng) - 0.5), b, b + u(rng)};
    const Complex l(lr(rng), lr(rng));
    EXPECT_LT(rel(euler_quadrature(r, l), hgf_series(r, l)), 1e-10) << i;
  }
  EXPECT_THROW(euler_quadrature(ComplexParams{0.5, 1.0, 1.0}, 0.2), DomainError);
  EXPECT_THROW(euler_quadrature(ComplexParams{0.5, 0.5, 1.0}, 2.0), DomainError);
  EXPECT_THROW(euler_quadrature(ComplexParams{0.5, 0.5, 1.0}, 1.0), DomainError);
}

TEST(EulerIntegral, EulerGaussValueAtOne) {
  const ComplexParams real{0.25, 0.5, 1.5};
  EXPECT_LT(rel(euler_quadrature(real, 1.0), euler_gauss_value(real)), 1e-9);
  const ComplexParams cplx{Complex(0.3, 0.2), 0.5, Complex(1.5, 0.1)};
  EXPECT_LT(rel(euler_quadrature(cplx, 1.0), euler_gauss_value(cplx)), 1e-9);
  // Gauss: F(a,b;c;1) with a = -n terminates; Chu-Vandermonde F(-2,b;c;1) = (c-b)_2/(c)_2.
  const ComplexParams cv{-2.0, 0.5, 1.5};
  EXPECT_LT(rel(euler_gauss_value(cv), 1.0 * 2.0 / (1.5 * 2.5)), 1e-13);
}

TEST(Continuation, LoopsAndPaths) {
  const ComplexParams p{0.5, 0.5, 1.0};
  const ValueAndDerivative init = hgf_initial(p, 0.5);
  // Contractible loop.
  const ValueAndDerivative c = hgf_continue(p, PathSpec::loop(Complex(0.5, 0.3), 0.2, -kPi / 2), init);
  EXPECT_LT(rel(c.value, init.value), 1e-8);
  EXPECT_LT(rel(c.derivative, init.derivative), 1e-8);
  // Around 0 the holomorphic solution returns.
  const ValueAndDerivative z = hgf_continue(p, PathSpec::loop(0.0, 0.5), init);
  EXPECT_LT(rel(z.value, init.value), 1e-8);
  EXPECT_LT(rel(z.derivative, init.derivative), 1e-8);
  // Continuation to another point in the disk agrees with the series there.
  const Complex end(0.1, -0.4);
  const ValueAndDerivative e = hgf_continue(p, PathSpec::polyline({0.5, Complex(0.5, -0.4), end}), init);
  EXPECT_LT(rel(e.value, hgf_series(p, end)), 1e-9);
  EXPECT_LT(rel(e.derivative, hgf_series_derivative(p, end)), 1e-9);
  // Clearance.
  EXPECT_THROW(hgf_continue(p, PathSpec::polyline({0.5, Complex(1.0, 0.0005)}), init), DomainError);
  EXPECT_THROW(hgf_continue(p, PathSpec::loop(0.5, 0.5), init), DomainError);
  EXPECT_THROW(hgf_continue(p, PathSpec::polyline({0.5}), init), DomainError);
}

TEST(PeriodMatrix, EntriesAndDeterminant) {
  const Eigen::Matrix2cd m = period_matrix(2, 1, 1, 0.5);
  EXPECT_LT(rel(m(0, 0), Complex(0, 2 * kPi) * hgf_series(ComplexParams{0.5, 0.5, 1}, 0.5)), 1e-15);
  EXPECT_GT(std::abs(m.determinant()), 1.0);
  for (double l : {0.1, 0.4, 0.8}) {
    const Eigen::Matrix2cd k = period_matrix(3, 1, 2, l);
    EXPECT_EQ(k(0, 0).real(), 0.0);
    EXPECT_EQ(k(1, 0).real(), 0.0);
  }
  // (1-z)(1-z) = 4 for N = 2, and g(1/2) = B(1/2,1/2) F(1/2,1/2;1;1/2) = f(1/2)/(2 pi i) * pi.
  EXPECT_LT(rel(m(0, 1), 4.0 * kPi * hgf_series(ComplexParams{0.5, 0.5, 1}, 0.5)), 1e-13);
  EXPECT_THROW(period_matrix(2, 1, 1, 0.97), DomainError);
  EXPECT_THROW(period_matrix(3, 0, 1, 0.5), DomainError);
  EXPECT_THROW(period_matrix(3, 1, 3, 0.5), DomainError);
}

TEST(PeriodMatrix, ContinuedOutsideLensKeepsWronskianScaling) {
  // det = w (f g' - f' g) with w = (1-z^a)(1-z^b); l (1-l)^{(a+b)/N} W is constant on the principal branch here.
  const std::uint32_t N = 3, a = 1, b = 1;
  const Complex w = (1.0 - root_of_unity(a, N)) * (1.0 - root_of_unity(b, N));
  const Complex end(-0.5, 1.0);
  const Eigen::Matrix2cd m = period_matrix(N, a, b, PathSpec::polyline({0.5, Complex(0.5, 1.0), end}));
  const Complex scaled_end = end * std::pow(1.0 - end, 2.0 / 3.0) * m.determinant() / w;
  const WronskianReport rep = wronskian_check(N, a, b, {0.5});
  EXPECT_LT(rel(scaled_end, rep.constant), 1e-8);
  EXPECT_THROW(period_matrix(N, a, b, PathSpec::polyline({0.97, 0.5})), DomainError);
}

TEST(Contour, AlphaPeriodMatchesSeries) {
  for (auto [N, a, b, l] : {std::tuple{2u, 1u, 1u, 0.1}, {3u, 1u, 2u, 0.05}, {3u, 2u, 2u, 0.1}, {4u, 1u, 3u, 0.1},
                            {5u, 2u, 4u, 0.05}}) {
    ContourSpec s;
    s.N = N;
    s.a = a;
    s.b = b;
    s.lambda = l;
    const ContourResult r = contour_period_alpha(s);
    const Complex ref = Complex(0, 2 * kPi) * hgf_series(ComplexParams{a / double(N), b / double(N), 1.0}, l);
    EXPECT_LT(rel(r.value, ref), 1e-8) << N << a << b;
    EXPECT_LT(r.closure_error, 1e-10);
    s.orientation = -1;
    EXPECT_LT(rel(contour_period_alpha(s).value, -ref), 1e-8);
  }
  // Complex lambda.
  ContourSpec s;
  s.lambda = Complex(0.05, 0.05);
  EXPECT_LT(rel(contour_period_alpha(s).value, period_f(2, 1, 1, s.lambda).value), 1e-8);
}

TEST(Contour, BranchFailureSuggestsSmallerEpsilon) {
  ContourSpec s;
  s.lambda = 0.9;
  s.epsilon = 1e-4;
  try {
    contour_period_alpha(s);
    FAIL() << "expected a branch failure";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("smaller epsilon"), std::string::npos);
  }
  s = ContourSpec{};
  s.N = 8;
  s.epsilon = 0.2;
  EXPECT_THROW(contour_period_alpha(s), DomainError);
  s = ContourSpec{};
  s.samples = 4;
  EXPECT_THROW(contour_period_alpha(s), DomainError);
}

TEST(PathPeriod, DeltaMatchesG) {
  for (auto [N, a, b, l] : {std::tuple{2u, 1u, 1u, 0.9}, {2u, 1u, 1u, 0.8}, {4u, 1u, 3u, 0.8}, {3u, 2u, 2u, 0.85}}) {
    const Complex g = period_g(N, a, b, l).value;
    EXPECT_LT(rel(path_period_delta(N, a, b, l), g), 1e-9) << N << a << b << l;
  }
  EXPECT_LT(rel(path_period_delta(2, 1, 1, 0.9), beta_complex(0.5, 0.5) * hgf_series(ComplexParams{0.5, 0.5, 1}, 0.1)),
            1e-9);
  EXPECT_LT(rel(path_period_delta(3, 1, 2, 1.0), beta_complex(1.0 / 3, 2.0 / 3)), 1e-12);
  // The second column is w * delta.
  const Complex w = (1.0 - root_of_unity(1, 4)) * (1.0 - root_of_unity(3, 4));
  EXPECT_LT(rel(w * path_period_delta(4, 1, 3, 0.8), period_matrix(4, 1, 3, 0.8)(0, 1)), 1e-9);
  EXPECT_THROW(path_period_delta(2, 1, 1, -0.5), DomainError);
}

TEST(Wronskian, ScaledWronskianIsConstant) {
  const WronskianReport r = wronskian_check(2, 1, 1, {0.3, 0.5, 0.7});
  EXPECT_TRUE(r.ok);
  EXPECT_LT(r.max_rel_deviation, 1e-8);
  EXPECT_GT(std::abs(r.constant), 1.0);
  EXPECT_TRUE(wronskian_check(3, 1, 1, {0.4, 0.6}).ok);
  EXPECT_TRUE(wronskian_check(5, 2, 3, {Complex(0.3, 0.2), 0.5, Complex(0.6, -0.1)}).ok);
  EXPECT_THROW(wronskian_check(2, 1, 1, {}), DomainError);
}

TEST(Monodromy, NumericalLocalMonodromy) {
  for (auto [N, a, b] : {std::tuple{2u, 1u, 1u}, {3u, 1u, 1u}, {3u, 1u, 2u}, {4u, 1u, 3u}, {5u, 2u, 2u}, {4u, 3u, 3u}}) {
    const NumericalMonodromy m = numerical_monodromy(N, a, b);
    EXPECT_TRUE(m.ok()) << N << a << b << " " << m.err_f_at_0 << " " << m.err_g_at_0 << " " << m.err_at_1;
    EXPECT_LT(m.err_at_1, 1e-6);
  }
  // Another base point.
  EXPECT_TRUE(numerical_monodromy(3, 2, 2, 0.3).ok());
  EXPECT_THROW(numerical_monodromy(2, 1, 1, 0.99), DomainError);
}
