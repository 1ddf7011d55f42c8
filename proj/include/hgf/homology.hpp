#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "hgf/cyclotomic.hpp"

namespace hgf {

// Element sum c_ij xi^i eta^j of Z[mu_N x mu_N], indices mod N.
class GroupRingElem {
 public:
  explicit GroupRingElem(std::uint32_t N = 1);
  static GroupRingElem monomial(std::uint32_t N, std::int64_t i, std::int64_t j, const BigInt& c = 1);
  static GroupRingElem one(std::uint32_t N) { return monomial(N, 0, 0); }

  std::uint32_t N() const { return N_; }
  const BigInt& at(std::int64_t i, std::int64_t j) const { return c_[index(i, j)]; }
  BigInt& at(std::int64_t i, std::int64_t j) { return c_[index(i, j)]; }
  bool is_zero() const;

  GroupRingElem& operator+=(const GroupRingElem& o);
  GroupRingElem& operator-=(const GroupRingElem& o);
  GroupRingElem operator*(const GroupRingElem& o) const;
  friend GroupRingElem operator+(GroupRingElem a, const GroupRingElem& b) { return a += b; }
  friend GroupRingElem operator-(GroupRingElem a, const GroupRingElem& b) { return a -= b; }
  friend bool operator==(const GroupRingElem& a, const GroupRingElem& b) { return a.N_ == b.N_ && a.c_ == b.c_; }
  friend bool operator!=(const GroupRingElem& a, const GroupRingElem& b) { return !(a == b); }
  GroupRingElem pow(std::uint64_t k) const;
  std::string str() const;

 private:
  std::size_t index(std::int64_t i, std::int64_t j) const;
  std::uint32_t N_;
  std::vector<BigInt> c_;
};

// Canonical element of Z[mu_N x mu_N]/I_N on the basis xi^i eta^j, 1 <= i,j <= N-1.
class QuotientElem {
 public:
  explicit QuotientElem(std::uint32_t N = 1);
  std::uint32_t N() const { return N_; }
  std::uint32_t dim() const { return (N_ - 1) * (N_ - 1); }
  // 1 <= i, j <= N-1
  const BigInt& at(std::uint32_t i, std::uint32_t j) const { return c_[(i - 1) * (N_ - 1) + (j - 1)]; }
  BigInt& at(std::uint32_t i, std::uint32_t j) { return c_[(i - 1) * (N_ - 1) + (j - 1)]; }
  const std::vector<BigInt>& coeffs() const { return c_; }
  std::vector<BigInt>& coeffs() { return c_; }
  bool is_zero() const;
  bool is_one() const;
  GroupRingElem lift() const;

  QuotientElem operator+(const QuotientElem& o) const;
  QuotientElem operator-(const QuotientElem& o) const;
  QuotientElem operator*(const QuotientElem& o) const;
  friend bool operator==(const QuotientElem& a, const QuotientElem& b) { return a.N_ == b.N_ && a.c_ == b.c_; }
  friend bool operator!=(const QuotientElem& a, const QuotientElem& b) { return !(a == b); }

 private:
  std::uint32_t N_;
  std::vector<BigInt> c_;
};

// c'_ij = c_ij - c_0j - c_i0 + c_00 for 1 <= i,j <= N-1.
QuotientElem reduce_mod_IN(const GroupRingElem& x);
bool in_ideal(const GroupRingElem& x);

// 2x2 matrix acting on coordinate columns for the basis (alpha, beta).
struct MatrixGR {
  GroupRingElem m[2][2];

  static MatrixGR identity(std::uint32_t N);
  MatrixGR operator*(const MatrixGR& o) const;
  MatrixGR operator-(const MatrixGR& o) const;
  MatrixGR pow(std::uint64_t k) const;
  bool is_zero() const;
  bool is_zero_mod_IN() const;
  bool is_identity_mod_IN() const;
  friend bool operator==(const MatrixGR& a, const MatrixGR& b);
};

enum class Puncture { Zero, One, Infinity };

// T_0: beta -> beta - (1-xi)(1-eta) alpha. T_1: alpha -> alpha + xi^-1 eta^-1 ((1 - xi eta) alpha + beta).
// T_inf: alpha -> (xi + eta - 1) alpha - beta, beta -> beta + (1-xi)(1-eta) alpha.
MatrixGR monodromy_matrix(Puncture s, std::uint32_t N);

struct RelationCheck {
  std::string relation;
  bool modulo_ideal = true;
  bool holds = false;
};

struct MonodromyReport {
  std::uint32_t N = 1;
  std::vector<RelationCheck> checks;       // asserted relations, reduced mod I_N
  bool unipotent_T1_unquotiented = false;  // (1 - T_1^N)^2 = 0 in the full group ring (recorded only)
  bool unipotent_T0_unquotiented = false;  // (1 - T_0)^2 = 0 in the full group ring
  bool tinf_quasi_unipotent = false;       // (1 - T_inf^N)^2 = 0 mod I_N (recorded only)
  bool ok() const;
  std::vector<std::string> failures() const;
};

MonodromyReport verify_monodromy_relations(std::uint32_t N, std::uint32_t bound = 8);

struct IntersectionBlock {
  Eigen::MatrixXi matrix;  // rows/cols indexed by (i-1)(N-1) + (j-1)
  BigInt det;
};

// M[(i,j),(i',j')] = -1 if (i-i', j-j') = (0,0) or (1,1) mod N, else 0, for 1 <= i,j,i',j' <= N-1.
IntersectionBlock intersection_block(std::uint32_t N);

// Exact integer determinant by fraction-free elimination.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a);

enum class UnitVariable { Xi, Eta, XiEta };

// Class of sum_{i=0}^{c-1} x^{i*stride} with x the chosen variable.
// DomainError unless c >= 1 and gcd(c, N) = 1.
QuotientElem cyclotomic_unit(std::int64_t c, UnitVariable x, std::uint32_t N, std::int64_t stride = 1);

// Class of x^k.
GroupRingElem variable_power(UnitVariable x, std::uint32_t N, std::int64_t k);

// Matrix of y -> u*y on the quotient basis (column k is the image of basis element k).
std::vector<std::vector<BigInt>> multiplication_matrix(const QuotientElem& u);

// Inverse in the quotient from the exact rational solve of u*v = 1; nullopt if singular or non-integral.
std::optional<QuotientElem> quotient_inverse(const QuotientElem& u);

}  // namespace hgf
