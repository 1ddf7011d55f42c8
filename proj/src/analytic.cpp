#include "hgf/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

constexpr double kPi = std::numbers::pi;
const Complex kTwoPiI(0.0, 2.0 * kPi);
constexpr double kLensMargin = 0.05;

bool is_nonpositive_integer(Complex s) {
  return s.imag() == 0.0 && s.real() <= 0.0 && s.real() == std::floor(s.real());
}

// Lanczos coefficients for g = 7, n = 9.
constexpr std::array<double, 9> kLanczos = {0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
                                            771.32342877765313,   -176.61502916214059,   12.507343278686905,
                                            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

Complex lanczos_gamma(Complex z) {
  if (z.real() < 0.5) return kPi / (std::sin(kPi * z) * lanczos_gamma(1.0 - z));
  z -= 1.0;
  Complex x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + 7.5;
  return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

double rel_err(Complex x, Complex ref) {
  const double s = std::abs(ref);
  return std::abs(x - ref) / (s > 0 ? s : 1.0);
}

void check_indices(std::uint32_t N, std::uint32_t a, std::uint32_t b) {
  if (N < 2 || a < 1 || b < 1 || a >= N || b >= N)
    throw DomainError("form indices must satisfy 1 <= a, b <= N-1 with N >= 2");
}

// The series argument of a period must lie in |z| <= 0.95.
void check_disk(Complex z, const char* what) {
  if (std::abs(z) > 1.0 - kLensMargin)
    throw DomainError(std::string(what) + " > 0.95 is outside the series region; supply a continuation path");
}

ComplexParams period_params(std::uint32_t N, std::uint32_t a, std::uint32_t b) {
  const double n = N;
  return {a / n, b / n, 1.0};
}

double segment_distance(Complex p, Complex A, Complex B) {
  const Complex d = B - A;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - A);
  const double t = std::clamp(((p - A) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(p - (A + t * d));
}

using State = std::vector<Complex>;

// Integrates (y, y') along l(t), t in [0,1], for the hypergeometric equation.
template <class Curve>
void integrate_segment(const ComplexParams& p, const PathSpec& path, Curve curve, State& y) {
  namespace odeint = boost::numeric::odeint;
  const Complex s = p.a + p.b + 1.0 - p.c;
  const Complex ab = p.a * p.b;
  auto rhs = [&](const State& x, State& dx, double t) {
    Complex l, dl;
    curve(t, l, dl);
    const Complex ypp = -(p.c / l - s / (1.0 - l)) * x[1] + ab / (l * (1.0 - l)) * x[0];
    dx[0] = x[1] * dl;
    dx[1] = ypp * dl;
  };
  auto stepper = odeint::make_controlled(path.abs_tol, path.rel_tol, odeint::runge_kutta_dopri5<State>());
  odeint::integrate_adaptive(stepper, rhs, y, 0.0, 1.0, path.initial_step);
}

}  // namespace

void ComplexParams::validate() const {
  if (is_nonpositive_integer(c)) throw DomainError("c must not be a non-positive integer");
}

void HGFParams::validate() const {
  if (c <= 0 && c.get_den() == 1) throw DomainError("c must not be a non-positive integer");
}

ComplexParams HGFParams::embed() const { return {a.get_d(), b.get_d(), c.get_d()}; }

Complex gamma_complex(Complex s) {
  if (is_nonpositive_integer(s)) throw DomainError("gamma has a pole at a non-positive integer");
  return lanczos_gamma(s);
}

Complex beta_complex(Complex s, Complex t) {
  if (is_nonpositive_integer(s) || is_nonpositive_integer(t)) throw DomainError("beta has a pole");
  if (is_nonpositive_integer(s + t)) return 0.0;
  return gamma_complex(s) * gamma_complex(t) / gamma_complex(s + t);
}

GammaBeta gamma_beta(Complex s, Complex t) { return {gamma_complex(s), gamma_complex(t), beta_complex(s, t)}; }

Complex hgf_series(const ComplexParams& p, Complex lambda, double tol, double margin) {
  p.validate();
  const double r = std::abs(lambda);
  if (r > 1.0 - margin) throw DomainError("|lambda| too large for the series; use continuation");
  const double A = std::abs(p.a), B = std::abs(p.b), C = std::abs(p.c);
  Complex term = 1.0, sum = 1.0;
  for (std::uint64_t n = 0; n < 1000000; ++n) {
    const double nd = static_cast<double>(n);
    term *= (p.a + nd) * (p.b + nd) / ((1.0 + nd) * (p.c + nd)) * lambda;
    sum += term;
    const double m = nd + 1.0;
    if (m <= C + 1.0) continue;
    // sup over k >= m of |(a+k)(b+k)/((1+k)(c+k))| |lambda|
    const double rho = std::max(1.0, (A + m) / (m - C)) * std::max(1.0, (B + m) / (m + 1.0)) * r;
    if (rho >= 1.0) continue;
    const double tail = std::abs(term) * rho / (1.0 - rho);
    if (tail <= tol * std::max(1.0, std::abs(sum))) return sum;
  }
  throw DomainError("series did not reach the requested tolerance");
}

Complex hgf_series(const HGFParams& p, Complex lambda, double tol, double margin) {
  p.validate();
  return hgf_series(p.embed(), lambda, tol, margin);
}

Complex hgf_series_derivative(const ComplexParams& p, Complex lambda, double tol, double margin) {
  p.validate();
  const ComplexParams q{p.a + 1.0, p.b + 1.0, p.c + 1.0};
  return p.a * p.b / p.c * hgf_series(q, lambda, tol, margin);
}

Complex euler_integral(const ComplexParams& p, Complex lambda, double tol) {
  p.validate();
  if (!(p.b.real() > 0.0 && p.c.real() > p.b.real())) throw DomainError("Euler integral needs 0 < Re b < Re c");
  const bool at_one = lambda == Complex(1.0);
  if (at_one) {
    if (!((p.c - p.a - p.b).real() > 0.0)) throw DomainError("Euler integral at lambda = 1 needs Re(c-a-b) > 0");
  } else if (lambda.imag() == 0.0 && lambda.real() >= 1.0) {
    throw DomainError("lambda on the cut [1, inf)");
  }
  auto integrand = [&](double x, double xc) -> Complex {
    const double t = xc < 0 ? -xc : x;
    const double omt = xc > 0 ? xc : 1.0 - x;
    const Complex lt = std::log(Complex(t)), lomt = std::log(Complex(omt));
    if (at_one) return std::exp((p.b - 1.0) * lt + (p.c - p.a - p.b - 1.0) * lomt);
    return std::exp((p.b - 1.0) * lt + (p.c - p.b - 1.0) * lomt - p.a * std::log(1.0 - lambda * t));
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  const double re = ts.integrate([&](double x, double xc) { return integrand(x, xc).real(); }, 0.0, 1.0, tol);
  const double im = ts.integrate([&](double x, double xc) { return integrand(x, xc).imag(); }, 0.0, 1.0, tol);
  return {re, im};
}

Complex euler_quadrature(const ComplexParams& p, Complex lambda, double tol) {
  const Complex I = euler_integral(p, lambda, tol);
  return I / beta_complex(p.b, p.c - p.b);
}

Complex euler_gauss_value(const ComplexParams& p) {
  p.validate();
  if (!((p.c - p.a - p.b).real() > 0.0)) throw DomainError("Euler-Gauss summation needs Re(c-a-b) > 0");
  return gamma_complex(p.c) * gamma_complex(p.c - p.a - p.b) / (gamma_complex(p.c - p.a) * gamma_complex(p.c - p.b));
}

PathSpec PathSpec::polyline(std::vector<Complex> pts) {
  PathSpec s;
  s.waypoints = std::move(pts);
  return s;
}

PathSpec PathSpec::loop(Complex center, double radius, double start_angle, int orientation, int turns) {
  PathSpec s;
  s.circle = CirclePath{center, radius, start_angle, orientation, turns};
  return s;
}

Complex PathSpec::start() const {
  if (circle) return circle->center + std::polar(circle->radius, circle->start_angle);
  if (waypoints.empty()) throw DomainError("empty path");
  return waypoints.front();
}

Complex PathSpec::end() const {
  if (circle) return start();
  if (waypoints.empty()) throw DomainError("empty path");
  return waypoints.back();
}

void PathSpec::validate() const {
  if (!(clearance > 0.0)) throw DomainError("clearance must be positive");
  if (!(abs_tol > 0.0 && rel_tol > 0.0 && initial_step > 0.0)) throw DomainError("tolerances must be positive");
  const std::array<Complex, 2> punctures = {Complex(0.0), Complex(1.0)};
  if (circle) {
    if (!(circle->radius > 0.0)) throw DomainError("circle radius must be positive");
    if (circle->orientation != 1 && circle->orientation != -1) throw DomainError("orientation must be +1 or -1");
    if (circle->turns < 1) throw DomainError("turns must be positive");
    for (Complex s : punctures)
      if (std::abs(std::abs(s - circle->center) - circle->radius) < clearance)
        throw DomainError("path passes within clearance of a singular point");
    return;
  }
  if (waypoints.size() < 2) throw DomainError("a polyline needs at least two waypoints");
  for (std::size_t i = 0; i + 1 < waypoints.size(); ++i)
    for (Complex s : punctures)
      if (segment_distance(s, waypoints[i], waypoints[i + 1]) < clearance)
        throw DomainError("path passes within clearance of a singular point");
}

ValueAndDerivative hgf_continue(const ComplexParams& p, const PathSpec& path, const ValueAndDerivative& init) {
  p.validate();
  path.validate();
  State y = {init.value, init.derivative};
  if (path.circle) {
    const CirclePath c = *path.circle;
    const double sweep = 2.0 * kPi * c.orientation * c.turns;
    integrate_segment(p, path,
                      [&](double t, Complex& l, Complex& dl) {
                        const Complex e = std::polar(c.radius, c.start_angle + sweep * t);
                        l = c.center + e;
                        dl = Complex(0.0, sweep) * e;
                      },
                      y);
  } else {
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) {
      const Complex A = path.waypoints[i], D = path.waypoints[i + 1] - A;
      integrate_segment(p, path,
                        [&](double t, Complex& l, Complex& dl) {
                          l = A + t * D;
                          dl = D;
                        },
                        y);
    }
  }
  return {y[0], y[1]};
}

ValueAndDerivative hgf_initial(const ComplexParams& p, Complex lambda) {
  return {hgf_series(p, lambda), hgf_series_derivative(p, lambda)};
}

ValueAndDerivative period_f(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda) {
  check_indices(N, a, b);
  check_disk(lambda, "|lambda|");
  const ComplexParams p = period_params(N, a, b);
  return {kTwoPiI * hgf_series(p, lambda), kTwoPiI * hgf_series_derivative(p, lambda)};
}

ValueAndDerivative period_g(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda) {
  check_indices(N, a, b);
  check_disk(1.0 - lambda, "|1-lambda|");
  const double n = N;
  const ComplexParams p{a / n, b / n, (a + b) / n};
  const Complex B = beta_complex(p.a, p.b);
  return {B * hgf_series(p, 1.0 - lambda), -B * hgf_series_derivative(p, 1.0 - lambda)};
}

Complex root_of_unity(std::int64_t k, std::uint32_t N) {
  const std::int64_t r = ((k % static_cast<std::int64_t>(N)) + N) % N;
  return std::polar(1.0, 2.0 * kPi * static_cast<double>(r) / N);
}

namespace {

Eigen::Matrix2cd assemble(std::uint32_t N, std::uint32_t a, std::uint32_t b, const ValueAndDerivative& f,
                          const ValueAndDerivative& g) {
  const Complex w = (1.0 - root_of_unity(a, N)) * (1.0 - root_of_unity(b, N));
  Eigen::Matrix2cd m;
  m << f.value, w * g.value, f.derivative, w * g.derivative;
  return m;
}

}  // namespace

Eigen::Matrix2cd period_matrix(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda) {
  return assemble(N, a, b, period_f(N, a, b, lambda), period_g(N, a, b, lambda));
}

Eigen::Matrix2cd period_matrix(std::uint32_t N, std::uint32_t a, std::uint32_t b, const PathSpec& path) {
  const Complex l0 = path.start();
  const ComplexParams p = period_params(N, a, b);
  const ValueAndDerivative f = hgf_continue(p, path, period_f(N, a, b, l0));
  const ValueAndDerivative g = hgf_continue(p, path, period_g(N, a, b, l0));
  return assemble(N, a, b, f, g);
}

void ContourSpec::validate() const {
  check_indices(N, a, b);
  if (!(epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (samples < 8) throw DomainError("at least 8 samples are required");
  if (orientation != 1 && orientation != -1) throw DomainError("orientation must be +1 or -1");
  if (lambda == Complex(0.0)) throw DomainError("lambda must be nonzero");
  // The circle must not reach the other N-th roots of unity, where 1 - x^N vanishes.
  if (std::sqrt(epsilon) >= 0.5 * std::abs(1.0 - root_of_unity(1, N)))
    throw DomainError("circle meets another root of unity; try a smaller epsilon");
}

ContourResult contour_period_alpha(const ContourSpec& spec) {
  spec.validate();
  const double r = std::sqrt(spec.epsilon);
  const double sigma = spec.orientation;
  const std::uint32_t N = spec.N;
  const Complex lam = spec.lambda;
  const double sep = std::abs(1.0 - root_of_unity(1, N));  // relative gap between conjugate branches
  const std::string hint = "; try a smaller epsilon";

  auto x_at = [&](double s) { return 1.0 + r * std::exp(Complex(0.0, -2.0 * kPi * sigma * s)); };
  auto newton = [&](Complex x, Complex y, bool& converged) {
    const Complex u = std::pow(x, static_cast<int>(N));
    const Complex D = 1.0 - u + lam * u, R = 1.0 - u;
    converged = false;
    for (int it = 0; it < 60; ++it) {
      const Complex yn1 = std::pow(y, static_cast<int>(N) - 1);
      const Complex dy = (yn1 * y * D - R) / (static_cast<double>(N) * yn1 * D);
      y -= dy;
      if (std::abs(dy) <= 1e-15 * std::abs(y)) {
        converged = true;
        break;
      }
    }
    return y;
  };

  ContourResult res;
  // Initial branch: the N-th root of (1-u)/(1-u+lambda u) nearest to 1.
  const Complex x0 = x_at(0.0);
  const Complex u0 = std::pow(x0, static_cast<int>(N));
  const Complex base = std::pow((1.0 - u0) / (1.0 - u0 + lam * u0), 1.0 / N);
  Complex y = base;
  for (std::uint32_t k = 1; k < N; ++k) {
    const Complex c = base * root_of_unity(k, N);
    if (std::abs(c - 1.0) < std::abs(y - 1.0)) y = c;
  }
  bool ok = false;
  y = newton(x0, y, ok);
  if (!ok) throw DomainError("Newton failed at the start of the contour" + hint);
  const Complex y_start = y;

  // Follows the branch from s0 to s1, halving on ambiguity.
  auto track = [&](auto&& self, double s0, double s1, Complex y0, int depth) -> Complex {
    bool conv = false;
    const Complex y1 = newton(x_at(s1), y0, conv);
    if (conv && std::abs(y1 - y0) <= 0.25 * sep * std::abs(y0)) return y1;
    if (depth >= 30) throw DomainError("branch collision on the contour" + hint);
    ++res.refinements;
    const double sm = 0.5 * (s0 + s1);
    const Complex ym = self(self, s0, sm, y0, depth + 1);
    return self(self, sm, s1, ym, depth + 1);
  };

  const std::uint32_t M = spec.samples;
  const double n = N;
  Complex sum = 0.0;
  for (std::uint32_t k = 0; k < M; ++k) {
    const double s = static_cast<double>(k) / M;
    if (k > 0) y = track(track, static_cast<double>(k - 1) / M, s, y, 0);
    const Complex x = x_at(s);
    const Complex xN = std::pow(x, static_cast<int>(N));
    const Complex dx = Complex(0.0, -2.0 * kPi * sigma) * (x - 1.0);
    sum += n * std::pow(x, static_cast<int>(spec.a)) * std::pow(y, static_cast<int>(spec.b)) / (1.0 - xN) / x * dx;
  }
  const Complex y_end = track(track, static_cast<double>(M - 1) / M, 1.0, y, 0);
  res.closure_error = std::abs(y_end - y_start);
  if (res.closure_error > 1e-8 * std::abs(y_start))
    throw DomainError("branch of y does not close around the contour" + hint);
  res.value = sum / static_cast<double>(M);
  return res;
}

Complex path_period_delta(std::uint32_t N, std::uint32_t a, std::uint32_t b, Complex lambda, double tol) {
  check_indices(N, a, b);
  if (!(std::abs(1.0 - lambda) < 1.0)) throw DomainError("path period needs |1-lambda| < 1");
  const double n = N;
  return euler_integral({b / n, a / n, (a + b) / n}, 1.0 - lambda, tol);
}

WronskianReport wronskian_check(std::uint32_t N, std::uint32_t a, std::uint32_t b, const std::vector<Complex>& samples,
                                double tol) {
  check_indices(N, a, b);
  if (samples.empty()) throw DomainError("no sample points");
  WronskianReport rep;
  rep.samples = samples;
  const double s = static_cast<double>(a + b) / N;
  for (Complex l : samples) {
    const ValueAndDerivative f = period_f(N, a, b, l), g = period_g(N, a, b, l);
    const Complex W = f.value * g.derivative - f.derivative * g.value;
    rep.scaled.push_back(l * std::pow(1.0 - l, s) * W);
  }
  rep.constant = rep.scaled.front();
  for (Complex v : rep.scaled) rep.max_rel_deviation = std::max(rep.max_rel_deviation, rel_err(v, rep.constant));
  rep.ok = rep.max_rel_deviation <= tol && std::abs(rep.constant) > 0.0;
  return rep;
}

bool NumericalMonodromy::ok() const { return err_f_at_0 <= tol && err_g_at_0 <= tol && err_at_1 <= tol; }

NumericalMonodromy numerical_monodromy(std::uint32_t N, std::uint32_t a, std::uint32_t b, double base, double tol) {
  check_indices(N, a, b);
  if (!(base > 0.05 && base < 0.95)) throw DomainError("base point must lie in (0.05, 0.95)");
  NumericalMonodromy m;
  m.N = N;
  m.a = a;
  m.b = b;
  m.base = base;
  m.tol = tol;
  const ComplexParams p = period_params(N, a, b);
  const ValueAndDerivative f = period_f(N, a, b, base), g = period_g(N, a, b, base);
  m.f = f.value;
  m.g = g.value;
  const PathSpec around0 = PathSpec::loop(0.0, base, 0.0);
  const PathSpec around1 = PathSpec::loop(1.0, 1.0 - base, kPi);
  m.f_around_0 = hgf_continue(p, around0, f).value;
  m.g_around_0 = hgf_continue(p, around0, g).value;
  m.f_around_1 = hgf_continue(p, around1, f).value;
  m.err_f_at_0 = rel_err(m.f_around_0, m.f);
  m.err_g_at_0 = rel_err(m.g - m.g_around_0, m.f);
  const Complex za = root_of_unity(a, N), zb = root_of_unity(b, N), zab = root_of_unity(a + b, N);
  m.lhs_at_1 = m.f - m.f_around_1;
  m.rhs_at_1 = -std::conj(zab) * ((1.0 - zab) * m.f + (1.0 - za) * (1.0 - zb) * m.g);
  m.err_at_1 = rel_err(m.lhs_at_1, m.rhs_at_1);
  return m;
}

}  // namespace hgf
