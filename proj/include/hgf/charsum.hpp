#pragma once

#include <cstdint>
#include <vector>

#include "hgf/cyclotomic.hpp"
#include "hgf/finfield.hpp"

namespace hgf {

// Working level for Gauss sums: lcm(p, q-1).
std::uint32_t gauss_level(const FieldSpec& F);

// g(chi) = -sum_x psi(x) chi(x) in Q(mu_{lcm(p, q-1)}).
CycNum gauss_sum(const AddCharacter& psi, const MultCharacter& chi);
CycNum gauss_sum(const MultCharacter& chi);
// g°(chi): q when chi is trivial, otherwise g(chi).
CycNum gauss_sum_variant(const AddCharacter& psi, const MultCharacter& chi);
CycNum gauss_sum_variant(const MultCharacter& chi);

// j(chi1, chi2) = -sum_{x+y=1} chi1(x) chi2(y), by direct summation at level q-1.
CycNum jacobi_sum(const MultCharacter& chi1, const MultCharacter& chi2);

// (alpha)_nu = g(alpha nu)/g(alpha); the variant uses g° throughout.
CycNum pochhammer(const MultCharacter& alpha, const MultCharacter& nu, bool variant,
                  const AddCharacter* psi = nullptr);

// One factor g(chi_m)^{+-1} or g°(chi_m)^{+-1} in a product of Gauss sums.
struct GaussFactor {
  std::int64_t m;
  bool variant = false;
  bool inverse = false;
};

// scalar * prod of factors, evaluated exactly at level lcm(p, q-1). Inverses use
// g(chi)^{-1} = g°(conj chi)/(q chi(-1)) and g°(chi)^{-1} = g(conj chi)/(q chi(-1)).
CycNum gauss_product(const FieldSpec& F, const std::vector<GaussFactor>& factors,
                     const Rational& scalar = 1, FqElem twist = FqElem{1});

// Unreduced Jacobi sum in Z[x]/(x^{q-1} - 1): coefficient vector of length q-1.
std::vector<std::int64_t> jacobi_group_ring(const FieldSpec& F, std::int64_t m1, std::int64_t m2);

}  // namespace hgf
