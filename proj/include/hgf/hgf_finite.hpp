#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "hgf/cyclotomic.hpp"
#include "hgf/finfield.hpp"

namespace hgf {

// F(alpha, beta; gamma; lambda) from the defining sum over all characters nu, with
// Gauss sums at level lcm(p, q-1). Each summand is lowered to level q-1, so a failed
// lowering raises CoercionError. For gamma trivial the result is checked to be integral.
CycNum hgf2f1(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma, FqElem lambda,
              FqElem twist = FqElem{1});

// (1/(1-q)) sum_nu prod_i ((alpha_i)_nu / (eps)°_nu) nu(lambda), for d+1 parameters.
CycNum hgf_general(const std::vector<MultCharacter>& alphas, FqElem lambda);

// sum_t conj(alpha)(1 - lambda t) beta(t) conj(beta)gamma(1 - t). Requires alpha, beta not in {eps, gamma}.
CycNum euler_integral_rep(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma,
                          FqElem lambda);

// g°(gamma) g(conj(alpha beta) gamma) / (g(conj(alpha) gamma) g(conj(beta) gamma)) at level q-1.
CycNum euler_gauss_value(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma);

// Exact element (sum_i num_i zeta_M^i) / den of Q(mu_M), num reduced modulo Phi_M.
struct FastCyc {
  std::uint32_t level = 1;
  std::vector<__int128> num;
  __int128 den = 1;

  static FastCyc zero(std::uint32_t M);
  static FastCyc from_cycnum(const CycNum& x);
  CycNum to_cycnum() const;
  bool is_zero() const;
  FastCyc times_zeta(std::int64_t e) const;
  void normalize();
  friend bool operator==(const FastCyc& a, const FastCyc& b);
  friend bool operator!=(const FastCyc& a, const FastCyc& b) { return !(a == b); }
};

// Fast evaluation of F(chi_a, chi_b; chi_c; lambda) for all lambda at once, from Jacobi sums
// at level q-1:
//   F(a,b;c;g^k) = J'(-a,a) J'(-b,b-c) / ((1-q) s(a,-a) s(b,c-b)) * sum_n J'(a+n,-a) J'(b+n,c-b) zeta^{nk}
// with J'(x,y) = g(x)g(y)/g°(x+y) and s(x,y) = J'(x,y) J'(-x,-y).
class HgfEngine {
 public:
  explicit HgfEngine(std::shared_ptr<const FieldSpec> field);

  const FieldSpec& field() const { return *field_; }
  std::uint32_t M() const { return M_; }

  // Entry k is F(chi_a, chi_b; chi_c; g^k), for k in [0, q-1).
  std::vector<FastCyc> row(std::int64_t a, std::int64_t b, std::int64_t c) const;
  FastCyc value(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda) const;
  // q * J'(x, y), reduced modulo Phi_M, as int64 coefficients.
  const std::vector<std::int64_t>& scaled_jacobi(std::uint32_t x, std::uint32_t y) const;

 private:
  const std::vector<std::vector<std::int64_t>>& jacobi_column(std::uint32_t y) const;

  std::shared_ptr<const FieldSpec> field_;
  std::uint32_t M_, phi_;
  std::vector<std::uint32_t> log_x_, log_1mx_;
  mutable std::mutex mu_;
  mutable std::map<std::uint32_t, std::unique_ptr<std::vector<std::vector<std::int64_t>>>> columns_;
};

}  // namespace hgf
