#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

#include "hgf/cyclotomic.hpp"

namespace hgf {

using Complex = std::complex<double>;

// Parameters of F(a,b;c;.) with complex entries.
struct ComplexParams {
  Complex a, b, c;
  void validate() const;  // DomainError if c is a non-positive integer
};

// Exact rational parameters, embedded on demand.
struct HGFParams {
  Rational a, b, c;
  void validate() const;
  ComplexParams embed() const;
};

// Gamma via the Lanczos approximation (g = 7, 9 terms) with reflection for Re s < 1/2.
// DomainError at the poles s = 0, -1, -2, ...
Complex gamma_complex(Complex s);
Complex beta_complex(Complex s, Complex t);

struct GammaBeta {
  Complex gamma_s, gamma_t, beta;
};
GammaBeta gamma_beta(Complex s, Complex t);

// Partial sum of the power series with a ratio-test tail bound below tol * max(1, |sum|).
// DomainError if |lambda| > 1 - margin.
Complex hgf_series(const ComplexParams& p, Complex lambda, double tol = 1e-16, double margin = 0.05);
Complex hgf_series(const HGFParams& p, Complex lambda, double tol = 1e-16, double margin = 0.05);
// d/dlambda F = (ab/c) F(a+1,b+1;c+1;lambda).
Complex hgf_series_derivative(const ComplexParams& p, Complex lambda, double tol = 1e-16, double margin = 0.05);

// F(a,b;c;lambda) from the Euler integral divided by B(b, c-b), by tanh-sinh quadrature.
// Requires 0 < Re b < Re c and lambda off [1, inf); lambda = 1 is accepted when Re(c-a-b) > 0.
Complex euler_quadrature(const ComplexParams& p, Complex lambda, double tol = 1e-14);
// The unnormalized integral B(b,c-b) F(a,b;c;lambda).
Complex euler_integral(const ComplexParams& p, Complex lambda, double tol = 1e-14);
// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)); DomainError unless Re(c-a-b) > 0.
Complex euler_gauss_value(const ComplexParams& p);

struct ValueAndDerivative {
  Complex value, derivative;
};

struct CirclePath {
  Complex center;
  double radius = 0.5;
  double start_angle = 0.0;  // path starts at center + radius e^{i start_angle}
  int orientation = 1;       // +1 counterclockwise, -1 clockwise
  int turns = 1;
};

struct PathSpec {
  std::vector<Complex> waypoints;  // polyline, used when circle is empty
  std::optional<CirclePath> circle;
  double clearance = 1e-3;  // minimum distance to 0 and 1
  double abs_tol = 1e-13;
  double rel_tol = 1e-13;
  double initial_step = 1e-3;

  static PathSpec polyline(std::vector<Complex> pts);
  static PathSpec loop(Complex center, double radius, double start_angle = 0.0, int orientation = 1, int turns = 1);
  Complex start() const;
  Complex end() const;
  // DomainError if the path is malformed or passes within clearance of 0 or 1.
  void validate() const;
};

// Integrates the hypergeometric differential equation along the path with adaptive Dormand-Prince steps.
ValueAndDerivative hgf_continue(const ComplexParams& p, const PathSpec& path, const ValueAndDerivative& init);

// Series value and derivative of F(a,b;c;.) at lambda.
ValueAndDerivative hgf_initial(const ComplexParams& p, Complex lambda);

// f(l) = 2 pi i F(a/N,b/N;1;l) and g(l) = B(a/N,b/N) F(a/N,b/N;(a+b)/N;1-l), with derivatives, by series.
// DomainError for indices out of range, or |lambda| > 0.95 for f, or |1-lambda| > 0.95 for g.
ValueAndDerivative period_f(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda);
ValueAndDerivative period_g(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda);

// [[f, (1-z^a)(1-z^b) g], [f', (1-z^a)(1-z^b) g']] with z = e^{2 pi i/N}; lambda in the lens where both series apply.
Eigen::Matrix2cd period_matrix(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda);
// Both columns continued along a path that starts in the lens region.
Eigen::Matrix2cd period_matrix(std::uint32_t N, std::uint32_t a, std::uint32_t b, const PathSpec& path);

struct ContourSpec {
  std::uint32_t N = 2, a = 1, b = 1;
  Complex lambda = 0.1;
  double epsilon = 0.01;
  std::uint32_t samples = 4096;
  int orientation = 1;  // +1 follows x(s) = 1 + sqrt(eps) e(-s); -1 reverses it
  void validate() const;
};

struct ContourResult {
  Complex value;
  std::uint32_t refinements = 0;  // substeps inserted to keep the branch unambiguous
  double closure_error = 0.0;     // |y(1) - y(0)|
};

// Trapezoidal integral of N x^a y^b / (1 - x^N) dx/x over the alpha circle, with y tracked by Newton continuation
// on y^N (1 - u + lambda u) = 1 - u, u = x^N, starting from the root nearest 1.
// DomainError if the branch cannot be followed; the message suggests a smaller epsilon.
ContourResult contour_period_alpha(const ContourSpec& spec);

// int_0^1 (1-(1-l)t)^{-b/N} t^{a/N} (1-t)^{b/N} dt/(t(1-t)) by tanh-sinh; DomainError unless |1-l| < 1.
Complex path_period_delta(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda, double tol = 1e-14);

struct WronskianReport {
  std::vector<Complex> samples;
  std::vector<Complex> scaled;  // lambda (1-lambda)^{(a+b)/N} (f g' - f' g)
  Complex constant;
  double max_rel_deviation = 0.0;
  bool ok = false;
};

WronskianReport wronskian_check(std::uint32_t N, std::uint32_t a, std::uint32_t b, const std::vector<Complex>& samples,
                                double tol = 1e-8);

// Loops based at a real point of the lens region, counterclockwise, radius equal to the distance to the other puncture.
struct NumericalMonodromy {
  std::uint32_t N = 2, a = 1, b = 1;
  double base = 0.5;
  Complex f, g;
  Complex f_around_0, g_around_0, f_around_1;
  double err_f_at_0 = 0.0;  // |T0 f - f| / |f|
  double err_g_at_0 = 0.0;  // |(1-T0) g - f| / |f|
  Complex lhs_at_1, rhs_at_1;  // (1-T1) f and -z^{-a-b}((1-z^{a+b}) f + (1-z^a)(1-z^b) g)
  double err_at_1 = 0.0;
  double tol = 1e-6;
  bool ok() const;
};

NumericalMonodromy numerical_monodromy(std::uint32_t N, std::uint32_t a, std::uint32_t b, double base = 0.5,
                                       double tol = 1e-6);

// e^{2 pi i k / N}
Complex root_of_unity(std::int64_t k, std::uint32_t N);

}  // namespace hgf
