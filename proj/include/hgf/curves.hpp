#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hgf/cyclotomic.hpp"
#include "hgf/finfield.hpp"

namespace hgf {

// Hypergeometric curve (1 - x^N)(1 - y^N) = lambda x^N y^N over F_q.
struct CurveSpec {
  std::uint32_t N = 1;
  std::shared_ptr<const FieldSpec> field;
  FqElem lambda;

  // Throws DomainError unless q = 1 mod N and lambda is not 0 or 1.
  void validate() const;
};

// Affine hypersurface prod_{i=0}^{d} (1 - x_i^N) = lambda.
struct HypersurfaceSpec {
  std::uint32_t d = 1;
  std::uint32_t N = 1;
  std::shared_ptr<const FieldSpec> field;
  FqElem lambda;
  std::uint64_t bound = 1ull << 24;  // limit on q^{d+1}

  void validate() const;
};

std::uint64_t count_points(const CurveSpec& spec, bool projective);

// N(X, chi^{a,b}) at level N, including the points at infinity.
CycNum eigencount(const CurveSpec& spec, std::int64_t a, std::int64_t b);

// -eigencount for a, b != 0.
CycNum frobenius_trace(const CurveSpec& spec, std::int64_t a, std::int64_t b);

// Weighted count over prod (1 - u_i) = lambda with weights w(u, a) = phi_N^a(u), w(0, 0) = 1, w(0, a != 0) = 0.
CycNum eigencount_hypersurface(const HypersurfaceSpec& spec, const std::vector<std::int64_t>& a);

// #U(F_q), counted in u-space with N-th root multiplicities.
std::uint64_t count_hypersurface_points(const HypersurfaceSpec& spec);

struct InterpolationRow {
  std::uint32_t p = 0;
  CycNum value;                 // at level N
  std::complex<double> approx;  // complex embedding of value
};

struct SkippedPrime {
  std::uint32_t p = 0;
  std::string reason;
};

struct InterpolationTable {
  std::uint32_t N = 1;
  Rational lambda;
  std::int64_t a = 0, b = 0;
  std::vector<InterpolationRow> rows;  // ordered by p
  std::vector<SkippedPrime> skipped;
};

// Rows (p, F(phi_N^a, phi_N^b; eps; lambda mod p)) for primes p in [p_min, p_max] with p = 1 mod N
// and p not dividing the numerator or denominator of lambda(1 - lambda)N.
InterpolationTable interpolation_table(std::uint32_t N, const Rational& lambda, std::uint32_t p_min,
                                       std::uint32_t p_max, std::int64_t a, std::int64_t b);

// Reduction of a rational with denominator prime to p.
FqElem reduce_rational(const FieldSpec& F, const Rational& x);

}  // namespace hgf
