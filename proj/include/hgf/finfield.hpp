#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "hgf/cyclotomic.hpp"

namespace hgf {

// Element of F_q encoded as sum_i c_i p^i, with c_i the coefficient of t^i.
struct FqElem {
  std::uint32_t code = 0;
  friend bool operator==(FqElem a, FqElem b) { return a.code == b.code; }
  friend bool operator!=(FqElem a, FqElem b) { return a.code != b.code; }
};

inline constexpr std::uint32_t kDefaultFieldBound = 1u << 20;

class FieldSpec {
 public:
  FieldSpec(std::uint32_t p, std::uint32_t f, std::uint32_t bound = kDefaultFieldBound);

  std::uint32_t p() const { return p_; }
  std::uint32_t f() const { return f_; }
  std::uint32_t q() const { return q_; }
  // Order of the multiplicative group, q - 1.
  std::uint32_t order() const { return q_ - 1; }
  // Monic modulus, ascending coefficients, length f+1 (empty for f = 1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  FqElem generator() const { return {exp_[1 % order()]}; }

  FqElem zero() const { return {0}; }
  FqElem one() const { return {1}; }
  // Image of an integer under Z -> F_p -> F_q.
  FqElem from_int(std::int64_t n) const;
  FqElem from_coeffs(const std::vector<std::int64_t>& c) const;
  std::vector<std::uint32_t> coeffs(FqElem x) const;

  FqElem add(FqElem a, FqElem b) const;
  FqElem sub(FqElem a, FqElem b) const;
  FqElem neg(FqElem a) const;
  FqElem mul(FqElem a, FqElem b) const;
  FqElem inv(FqElem a) const;
  FqElem div(FqElem a, FqElem b) const { return mul(a, inv(b)); }
  FqElem pow(FqElem a, std::int64_t e) const;

  // g^k for k taken mod q-1.
  FqElem exp(std::int64_t k) const;
  // Throws DomainError for x = 0.
  std::uint32_t dlog(FqElem x) const;
  // dlog or -1 for zero, without throwing.
  std::int64_t dlog_or_neg(FqElem x) const { return log_[x.code]; }
  // Absolute trace to F_p, as an integer in [0, p).
  std::uint32_t trace(FqElem x) const { return trace_[x.code]; }
  // dlog(-1): (q-1)/2 for odd q, 0 for even q.
  std::uint32_t dlog_minus_one() const { return p_ == 2 ? 0 : order() / 2; }

 private:
  std::uint32_t p_, f_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_;
  std::vector<std::int32_t> log_;
  std::vector<std::uint32_t> trace_;
};

bool is_prime(std::uint64_t n);

// Cached and thread-safe; equal (p, f) return the same object.
std::shared_ptr<const FieldSpec> build_field(std::uint32_t p, std::uint32_t f,
                                             std::uint32_t bound = kDefaultFieldBound);
// Field of order q, where q must be a prime power.
std::shared_ptr<const FieldSpec> field_of_order(std::uint32_t q, std::uint32_t bound = kDefaultFieldBound);

// chi_m(g^k) = zeta_{q-1}^{mk}, chi_m(0) = 0.
struct MultCharacter {
  const FieldSpec* field = nullptr;
  std::uint32_t m = 0;

  MultCharacter() = default;
  MultCharacter(const FieldSpec& F, std::int64_t exponent);

  bool is_trivial() const { return m == 0; }
  std::uint32_t order() const;
  CycNum operator()(FqElem x) const;
  // Exponent e with chi(x) = zeta_{q-1}^e, or -1 when x = 0.
  std::int64_t value_exp(FqElem x) const;
  // chi(-1) = +-1.
  int at_minus_one() const;

  MultCharacter operator*(const MultCharacter& o) const;
  MultCharacter conj() const;
  MultCharacter pow(std::int64_t k) const;

  friend bool operator==(const MultCharacter& a, const MultCharacter& b) {
    return a.field == b.field && a.m == b.m;
  }
};

// Power residue character of exact order N: exponent (q-1)/N.
MultCharacter power_residue_character(const FieldSpec& F, std::uint32_t N);

// psi_c(x) = zeta_p^{Tr(cx)}.
struct AddCharacter {
  const FieldSpec* field = nullptr;
  FqElem twist{1};

  explicit AddCharacter(const FieldSpec& F, FqElem c = FqElem{1});
  CycNum operator()(FqElem x) const;
  std::uint32_t value_exp(FqElem x) const { return field->trace(field->mul(twist, x)); }
};

}  // namespace hgf
