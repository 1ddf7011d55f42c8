#pragma once

#include <gmpxx.h>

#include <complex>
#include <ostream>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace hgf {

using BigInt = mpz_class;
using Rational = mpq_class;

std::uint64_t euler_phi(std::uint64_t n);
std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_level(std::uint64_t a, std::uint64_t b);

// Coefficients of Phi_L in ascending degree.
std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t L);

// Largest phi(L) accepted for any level.
inline constexpr std::uint32_t kMaxCyclotomicDim = 1u << 15;

// Per-level constants shared by all numbers of that level.
class LevelData {
 public:
  explicit LevelData(std::uint32_t L);

  std::uint32_t level() const { return L_; }
  std::uint32_t dim() const { return phi_; }
  const std::vector<std::int64_t>& poly() const { return poly_; }
  const std::vector<std::pair<std::uint32_t, std::int64_t>>& tail() const { return tail_; }

  // Reduce a polynomial in zeta_L of any length modulo Phi_L; result has length dim().
  template <class T>
  void reduce(std::vector<T>& v) const;

  // As reduce(), for __int128 with overflow detection. Returns false on overflow.
  bool reduce_checked(std::vector<__int128>& v) const;

 private:
  std::uint32_t L_;
  std::uint32_t phi_;
  std::vector<std::int64_t> poly_;
  std::vector<std::pair<std::uint32_t, std::int64_t>> tail_;
};

// Cached, thread-safe. Throws ResourceError when phi(L) exceeds kMaxCyclotomicDim.
const LevelData& level_data(std::uint32_t L);

template <class T>
void LevelData::reduce(std::vector<T>& v) const {
  for (std::size_t i = v.size(); i-- > phi_;) {
    if (v[i] == 0) continue;
    const T c = v[i];
    const std::size_t base = i - phi_;
    for (const auto& [e, a] : tail_) v[base + e] -= c * static_cast<long>(a);
    v[i] = 0;
  }
  v.resize(phi_, T(0));
}

// Exact element of Q(mu_L): sum_i (num_i / den) zeta_L^i, 0 <= i < phi(L).
// Canonical form: den > 0 and gcd(num_0, ..., num_{phi-1}, den) = 1, so each
// coefficient num_i/den is recoverable in lowest terms.
class CycNum {
 public:
  CycNum() : CycNum(1u) {}
  explicit CycNum(std::uint32_t level);
  CycNum(std::uint32_t level, const Rational& r);

  static CycNum zeta(std::uint32_t level, std::int64_t k);
  // Polynomial in zeta_L of any length (e.g. a group-ring vector of length L).
  static CycNum from_poly(std::uint32_t level, std::vector<BigInt> num, BigInt den = 1);
  static CycNum from_int_poly(std::uint32_t level, const std::vector<std::int64_t>& num,
                              std::int64_t den = 1);
  static CycNum from_coeffs(std::uint32_t level, const std::vector<Rational>& coeffs);

  std::uint32_t level() const { return L_; }
  std::size_t dim() const { return num_.size(); }
  Rational coeff(std::size_t i) const;
  std::vector<Rational> coeffs() const;
  const std::vector<BigInt>& num() const { return num_; }
  const BigInt& den() const { return den_; }

  bool is_zero() const;
  bool is_integral() const { return den_ == 1; }
  bool is_rational() const;

  CycNum operator-() const;
  CycNum& operator+=(const CycNum& o);
  CycNum& operator-=(const CycNum& o);
  CycNum& operator*=(const CycNum& o);
  CycNum& operator/=(const CycNum& o);
  CycNum& operator*=(const Rational& r);

  friend CycNum operator+(CycNum a, const CycNum& b) { return a += b; }
  friend CycNum operator-(CycNum a, const CycNum& b) { return a -= b; }
  friend CycNum operator*(CycNum a, const CycNum& b) { return a *= b; }
  friend CycNum operator/(CycNum a, const CycNum& b) { return a /= b; }
  friend CycNum operator*(CycNum a, const Rational& r) { return a *= r; }

  friend bool operator==(const CycNum& a, const CycNum& b);
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

  // Human-readable form such as "1/2 - 3*z^2" with z = zeta_L.
  std::string str() const;

 private:
  void normalize();

  std::uint32_t L_;
  std::vector<BigInt> num_;
  BigInt den_;
};

// Multiplicative inverse via the extended Euclidean algorithm against Phi_L.
CycNum inv(const CycNum& a);

// zeta_L -> zeta_L^c.
CycNum galois_apply(std::int64_t c, const CycNum& a);

// Raise to a multiple level, or lower to a divisor level; other pairs go through the lcm.
CycNum coerce_level(const CycNum& a, std::uint32_t L);

// Multiply by zeta_L^k, staying at the level of a if L divides it.
CycNum mul_zeta(const CycNum& a, std::uint32_t L, std::int64_t k);

std::complex<double> embed_complex(const CycNum& a);

inline std::ostream& operator<<(std::ostream& os, const CycNum& a) {
  return os << "[L=" << a.level() << "] " << a.str();
}

BigInt bigint_from_i128(__int128 v);
// False when x does not fit in a signed 128-bit integer.
bool bigint_to_i128(const BigInt& x, __int128& out);

}  // namespace hgf
