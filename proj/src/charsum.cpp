#include "hgf/charsum.hpp"

#include <map>
#include <mutex>
#include <tuple>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

std::uint32_t mod_u(std::int64_t k, std::uint32_t M) {
  const std::int64_t r = k % static_cast<std::int64_t>(M);
  return static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

// Exponents e_x (mod L) with g(chi_m) = -sum_x zeta_L^{e_x}, for the twist c.
std::vector<std::uint32_t> gauss_terms(const FieldSpec& F, std::uint32_t m, FqElem twist) {
  const std::uint32_t L = gauss_level(F), M = F.order();
  const std::uint64_t sp = L / F.p(), sm = L / M;
  std::vector<std::uint32_t> out;
  out.reserve(M);
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    const FqElem x{c};
    const std::uint64_t e = sp * F.trace(F.mul(twist, x)) + sm * ((static_cast<std::uint64_t>(m) * F.dlog(x)) % M);
    out.push_back(static_cast<std::uint32_t>(e % L));
  }
  return out;
}

void check_same_field(const MultCharacter& a, const MultCharacter& b) {
  if (a.field != b.field) throw DomainError("characters over different fields");
}

using GaussKey = std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>;

const CycNum& cached_gauss(const FieldSpec& F, std::uint32_t m) {
  static std::mutex mu;
  static std::map<GaussKey, std::unique_ptr<CycNum>> cache;
  const GaussKey key{F.p(), F.f(), m};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;
  }
  auto val = std::make_unique<CycNum>(gauss_product(F, {{m, false, false}}));
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(key, std::move(val));
  return *it->second;
}

}  // namespace

std::uint32_t gauss_level(const FieldSpec& F) {
  const std::uint64_t L = lcm_level(F.p(), F.order());
  if (L > 0xffffffffull) throw ResourceError("Gauss sum level too large");
  return static_cast<std::uint32_t>(L);
}

CycNum gauss_product(const FieldSpec& F, const std::vector<GaussFactor>& factors, const Rational& scalar,
                     FqElem twist) {
  const std::uint32_t L = gauss_level(F), M = F.order();
  level_data(L);  // enforce the dimension bound before allocating
  Rational s = scalar;
  std::vector<std::uint32_t> sparse_ms;
  for (const GaussFactor& fac : factors) {
    std::uint32_t m = mod_u(fac.m, M);
    bool variant = fac.variant;
    if (fac.inverse) {
      const int sign = MultCharacter(F, m).at_minus_one();
      s /= Rational(static_cast<long>(F.q()) * sign);
      m = mod_u(-static_cast<std::int64_t>(m), M);
      variant = !variant;
    }
    if (m == 0) {
      if (variant) s *= Rational(static_cast<long>(F.q()));
      continue;
    }
    sparse_ms.push_back(m);
  }
  if (sparse_ms.empty()) return CycNum(L, s);
  double bound = 1;
  for (std::size_t i = 0; i < sparse_ms.size(); ++i) bound *= M;
  if (bound > 4e18) throw ResourceError("Gauss sum product too large for exact group-ring accumulation");
  std::vector<std::int64_t> acc(L, 0);
  for (std::uint32_t e : gauss_terms(F, sparse_ms[0], twist)) acc[e] -= 1;
  for (std::size_t k = 1; k < sparse_ms.size(); ++k) {
    const auto terms = gauss_terms(F, sparse_ms[k], twist);
    std::vector<std::int64_t> next(L, 0);
    for (std::uint32_t e = 0; e < L; ++e) {
      const std::int64_t c = acc[e];
      if (!c) continue;
      for (std::uint32_t t : terms) {
        std::uint32_t idx = e + t;
        if (idx >= L) idx -= L;
        next[idx] -= c;
      }
    }
    acc.swap(next);
  }
  CycNum r = CycNum::from_int_poly(L, acc);
  if (s != 1) r *= s;
  return r;
}

CycNum gauss_sum(const AddCharacter& psi, const MultCharacter& chi) {
  if (psi.field != chi.field) throw DomainError("characters over different fields");
  if (psi.twist.code == 1) return cached_gauss(*chi.field, chi.m);
  return gauss_product(*chi.field, {{chi.m, false, false}}, 1, psi.twist);
}

CycNum gauss_sum(const MultCharacter& chi) { return cached_gauss(*chi.field, chi.m); }

CycNum gauss_sum_variant(const AddCharacter& psi, const MultCharacter& chi) {
  if (chi.is_trivial()) return CycNum(gauss_level(*chi.field), Rational(static_cast<long>(chi.field->q())));
  return gauss_sum(psi, chi);
}

CycNum gauss_sum_variant(const MultCharacter& chi) { return gauss_sum_variant(AddCharacter(*chi.field), chi); }

std::vector<std::int64_t> jacobi_group_ring(const FieldSpec& F, std::int64_t m1, std::int64_t m2) {
  const std::uint32_t M = F.order();
  const std::uint64_t a = mod_u(m1, M), b = mod_u(m2, M);
  std::vector<std::int64_t> v(M, 0);
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    const FqElem x{c};
    const FqElem y = F.sub(F.one(), x);
    if (y.code == 0) continue;
    v[(a * F.dlog(x) + b * F.dlog(y)) % M] -= 1;
  }
  return v;
}

CycNum jacobi_sum(const MultCharacter& chi1, const MultCharacter& chi2) {
  check_same_field(chi1, chi2);
  return CycNum::from_int_poly(chi1.field->order(), jacobi_group_ring(*chi1.field, chi1.m, chi2.m));
}

CycNum pochhammer(const MultCharacter& alpha, const MultCharacter& nu, bool variant, const AddCharacter* psi) {
  check_same_field(alpha, nu);
  const FqElem twist = psi ? psi->twist : FqElem{1};
  const std::int64_t an = static_cast<std::int64_t>(alpha.m) + nu.m;
  return gauss_product(*alpha.field, {{an, variant, false}, {alpha.m, variant, true}}, 1, twist);
}

}  // namespace hgf
