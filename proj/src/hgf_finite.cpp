#include "hgf/hgf_finite.hpp"

#include <stdexcept>
#include <string>

#include "hgf/charsum.hpp"
#include "hgf/errors.hpp"

namespace hgf {

using i128 = __int128;

namespace {

std::uint32_t mod_u(std::int64_t k, std::uint32_t M) {
  const std::int64_t r = k % static_cast<std::int64_t>(M);
  return static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

void same_field(const MultCharacter& a, const MultCharacter& b) {
  if (a.field != b.field || a.field == nullptr) throw DomainError("characters over different fields");
}

Rational frac(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

int sign_at_minus_one(const FieldSpec& F, std::int64_t m) { return MultCharacter(F, m).at_minus_one(); }

// (alpha)_nu / (eps)°_nu = g(alpha nu) g°(conj alpha) g(conj nu) / (q alpha(-1) nu(-1)), lowered to level q-1.
CycNum ratio_over_eps(const FieldSpec& F, std::int64_t a, std::int64_t n, FqElem twist) {
  const long q = F.q();
  const Rational s = frac(1, q * sign_at_minus_one(F, a) * sign_at_minus_one(F, n));
  return coerce_level(gauss_product(F, {{a + n, false, false}, {-a, true, false}, {-n, false, false}}, s, twist),
                      F.order());
}

// (beta)_nu / (gamma)°_nu = g(beta nu) g°(gamma) g°(conj beta) g(conj(gamma nu)) / (q^2 beta(-1) (gamma nu)(-1)).
CycNum ratio_over_gamma(const FieldSpec& F, std::int64_t b, std::int64_t c, std::int64_t n, FqElem twist) {
  const long q = F.q();
  const Rational s = frac(1, q * q * sign_at_minus_one(F, b) * sign_at_minus_one(F, c + n));
  return coerce_level(
      gauss_product(F, {{b + n, false, false}, {c, true, false}, {-b, true, false}, {-c - n, false, false}}, s, twist),
      F.order());
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    const i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

struct Overflow {};

i128 cmul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

}  // namespace

CycNum hgf2f1(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma, FqElem lambda,
              FqElem twist) {
  same_field(alpha, beta);
  same_field(alpha, gamma);
  const FieldSpec& F = *alpha.field;
  const std::uint32_t M = F.order();
  if (lambda.code >= F.q()) throw DomainError("argument out of range");
  CycNum sum(M);
  if (lambda.code == 0) return sum;
  const std::uint32_t k = F.dlog(lambda);
  for (std::uint32_t n = 0; n < M; ++n) {
    const CycNum r1 = ratio_over_eps(F, alpha.m, n, twist);
    const CycNum r2 = ratio_over_gamma(F, beta.m, gamma.m, n, twist);
    sum += mul_zeta(r1 * r2, M, static_cast<std::int64_t>(n) * k);
  }
  sum *= frac(1, 1 - static_cast<long>(F.q()));
  sum = coerce_level(sum, M);
  if (gamma.is_trivial() && !sum.is_integral())
    throw std::logic_error("F(alpha, beta; eps; lambda) is not integral: " + sum.str());
  return sum;
}

CycNum hgf_general(const std::vector<MultCharacter>& alphas, FqElem lambda) {
  if (alphas.size() < 2) throw DomainError("hgf_general needs at least two parameters");
  for (const auto& a : alphas) same_field(alphas[0], a);
  const FieldSpec& F = *alphas[0].field;
  const std::uint32_t M = F.order();
  CycNum sum(M);
  if (lambda.code == 0) return sum;
  const std::uint32_t k = F.dlog(lambda);
  for (std::uint32_t n = 0; n < M; ++n) {
    CycNum term(M, 1);
    for (const auto& a : alphas) term *= ratio_over_eps(F, a.m, n, FqElem{1});
    sum += mul_zeta(term, M, static_cast<std::int64_t>(n) * k);
  }
  sum *= frac(1, 1 - static_cast<long>(F.q()));
  return coerce_level(sum, M);
}

CycNum euler_integral_rep(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma,
                          FqElem lambda) {
  same_field(alpha, beta);
  same_field(alpha, gamma);
  if (alpha.is_trivial() || alpha == gamma || beta.is_trivial() || beta == gamma)
    throw DomainError("euler_integral_rep requires alpha, beta not in {eps, gamma}");
  const FieldSpec& F = *alpha.field;
  const std::uint32_t M = F.order();
  std::vector<std::int64_t> v(M, 0);
  const std::uint64_t ma = mod_u(-static_cast<std::int64_t>(alpha.m), M), mb = beta.m,
                      mc = mod_u(static_cast<std::int64_t>(gamma.m) - beta.m, M);
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    const FqElem t{c};
    const FqElem u = F.sub(F.one(), F.mul(lambda, t));
    const FqElem w = F.sub(F.one(), t);
    if (u.code == 0 || w.code == 0) continue;
    v[(ma * F.dlog(u) + mb * F.dlog(t) + mc * F.dlog(w)) % M] += 1;
  }
  return CycNum::from_int_poly(M, v);
}

CycNum euler_gauss_value(const MultCharacter& alpha, const MultCharacter& beta, const MultCharacter& gamma) {
  same_field(alpha, beta);
  same_field(alpha, gamma);
  if (alpha.is_trivial() || alpha == gamma || beta.is_trivial() || beta == gamma)
    throw DomainError("euler_gauss_value requires alpha, beta not in {eps, gamma}");
  const FieldSpec& F = *alpha.field;
  const std::int64_t a = alpha.m, b = beta.m, c = gamma.m;
  return coerce_level(
      gauss_product(F, {{c, true, false}, {c - a - b, false, false}, {c - a, false, true}, {c - b, false, true}}),
      F.order());
}

// ---- FastCyc --------------------------------------------------------------

FastCyc FastCyc::zero(std::uint32_t M) {
  FastCyc r;
  r.level = M;
  r.num.assign(level_data(M).dim(), 0);
  return r;
}

FastCyc FastCyc::from_cycnum(const CycNum& x) {
  FastCyc r;
  r.level = x.level();
  r.num.resize(x.dim());
  for (std::size_t i = 0; i < x.dim(); ++i)
    if (!bigint_to_i128(x.num()[i], r.num[i])) throw ResourceError("value exceeds 128-bit fast representation");
  if (!bigint_to_i128(x.den(), r.den)) throw ResourceError("value exceeds 128-bit fast representation");
  return r;
}

CycNum FastCyc::to_cycnum() const {
  std::vector<BigInt> v(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) v[i] = bigint_from_i128(num[i]);
  return CycNum::from_poly(level, std::move(v), bigint_from_i128(den));
}

bool FastCyc::is_zero() const {
  for (i128 x : num)
    if (x != 0) return false;
  return true;
}

void FastCyc::normalize() {
  if (den < 0) {
    den = -den;
    for (auto& x : num) x = -x;
  }
  i128 g = den;
  for (i128 x : num) {
    if (g == 1) break;
    if (x) g = gcd128(g, x);
  }
  if (is_zero()) {
    den = 1;
    return;
  }
  if (g > 1) {
    for (auto& x : num) x /= g;
    den /= g;
  }
}

FastCyc FastCyc::times_zeta(std::int64_t e) const {
  const std::uint32_t s = mod_u(e, level);
  std::vector<i128> v(level, 0);
  for (std::size_t i = 0; i < num.size(); ++i) v[(i + s) % level] += num[i];
  FastCyc r;
  r.level = level;
  r.den = den;
  if (!level_data(level).reduce_checked(v)) return from_cycnum(mul_zeta(to_cycnum(), level, e));
  r.num = std::move(v);
  return r;
}

bool operator==(const FastCyc& a, const FastCyc& b) {
  if (a.level != b.level) return a.to_cycnum() == b.to_cycnum();
  if (a.den == b.den) return a.num == b.num;
  try {
    for (std::size_t i = 0; i < a.num.size(); ++i)
      if (cmul(a.num[i], b.den) != cmul(b.num[i], a.den)) return false;
    return true;
  } catch (const Overflow&) {
    return a.to_cycnum() == b.to_cycnum();
  }
}

// ---- HgfEngine ------------------------------------------------------------

HgfEngine::HgfEngine(std::shared_ptr<const FieldSpec> field) : field_(std::move(field)) {
  const FieldSpec& F = *field_;
  M_ = F.order();
  phi_ = level_data(M_).dim();
  for (std::uint32_t c = 1; c < F.q(); ++c) {
    const FqElem x{c};
    const FqElem y = F.sub(F.one(), x);
    if (y.code == 0) continue;
    log_x_.push_back(F.dlog(x));
    log_1mx_.push_back(F.dlog(y));
  }
}

const std::vector<std::vector<std::int64_t>>& HgfEngine::jacobi_column(std::uint32_t y) const {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = columns_[y];
  if (slot) return *slot;
  const LevelData& ld = level_data(M_);
  const std::int64_t q = field_->q();
  auto col = std::make_unique<std::vector<std::vector<std::int64_t>>>(M_);
  std::vector<std::int64_t> raw(M_);
  for (std::uint32_t x = 0; x < M_; ++x) {
    std::fill(raw.begin(), raw.end(), 0);
    if (x == 0 && y == 0) {
      raw[0] = 1;  // q * (1/q)
    } else {
      for (std::size_t t = 0; t < log_x_.size(); ++t)
        raw[(static_cast<std::uint64_t>(x) * log_x_[t] + static_cast<std::uint64_t>(y) * log_1mx_[t]) % M_] -= q;
    }
    std::vector<i128> w(raw.begin(), raw.end());
    if (!ld.reduce_checked(w)) throw ResourceError("Jacobi sum coefficients overflow");
    std::vector<std::int64_t> out(phi_);
    for (std::uint32_t i = 0; i < phi_; ++i) {
      if (w[i] > (i128(1) << 50) || w[i] < -(i128(1) << 50)) throw ResourceError("Jacobi sum coefficients too large");
      out[i] = static_cast<std::int64_t>(w[i]);
    }
    (*col)[x] = std::move(out);
  }
  slot = std::move(col);
  return *slot;
}

const std::vector<std::int64_t>& HgfEngine::scaled_jacobi(std::uint32_t x, std::uint32_t y) const {
  return jacobi_column(y % M_)[x % M_];
}

namespace {

// G(x) = g(x)g(conj x) and G°(z) = g°(z)g°(conj z), as integers.
i128 G_plain(const FieldSpec& F, std::uint32_t x) { return x == 0 ? 1 : i128(F.q()) * sign_at_minus_one(F, x); }
i128 G_variant(const FieldSpec& F, std::uint32_t z) {
  return z == 0 ? i128(F.q()) * F.q() : i128(F.q()) * sign_at_minus_one(F, z);
}

}  // namespace

std::vector<FastCyc> HgfEngine::row(std::int64_t a_in, std::int64_t b_in, std::int64_t c_in) const {
  const FieldSpec& F = *field_;
  const std::uint32_t M = M_, phi = phi_;
  const std::uint32_t a = mod_u(a_in, M), b = mod_u(b_in, M), c = mod_u(c_in, M);
  const std::uint32_t na = mod_u(-std::int64_t(a), M), nb = mod_u(-std::int64_t(b), M);
  const std::uint32_t cb = mod_u(std::int64_t(c) - b, M), bc = mod_u(std::int64_t(b) - c, M);
  const LevelData& ld = level_data(M);
  const auto& col1 = jacobi_column(na);  // J'(a+n, -a)
  const auto& col2 = jacobi_column(cb);  // J'(b+n, c-b)

  auto conv = [&](const std::vector<std::int64_t>& u, const std::vector<std::int64_t>& v) {
    std::vector<i128> r(2 * phi - 1, 0);
    for (std::uint32_t i = 0; i < phi; ++i) {
      if (!u[i]) continue;
      for (std::uint32_t j = 0; j < phi; ++j) r[i + j] += i128(u[i]) * v[j];
    }
    if (!ld.reduce_checked(r)) throw ResourceError("Jacobi product overflow");
    return r;
  };

  // Constant factor: J'(-a,a) J'(-b,b-c) / ((1-q) s(a,-a) s(b,c-b)), with J' = Jq / q.
  const std::vector<i128> Q = conv(jacobi_column(a)[na], jacobi_column(bc)[nb]);
  const i128 q = F.q();
  // s(x,y) = G(x)G(y)/G°(x+y)
  const i128 s1n = G_plain(F, a) * G_plain(F, na), s1d = G_variant(F, 0);
  const i128 s2n = G_plain(F, b) * G_plain(F, cb), s2d = G_variant(F, c);
  // F = Q * S_k * s1d * s2d / (q^4 (1-q) s1n s2n)
  const i128 den = q * q * q * q * (1 - q) * s1n * s2n;
  const i128 scale = s1d * s2d;

  std::vector<std::vector<i128>> P(M);
  for (std::uint32_t n = 0; n < M; ++n) {
    auto p = conv(col1[(a + n) % M], col2[(b + n) % M]);
    p.resize(phi);
    P[n] = std::move(p);
  }

  std::vector<FastCyc> out(M);
  std::vector<i128> acc(M);
  for (std::uint32_t k = 0; k < M; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::uint32_t n = 0; n < M; ++n) {
      const std::uint32_t shift = static_cast<std::uint32_t>((static_cast<std::uint64_t>(n) * k) % M);
      const auto& p = P[n];
      std::uint32_t idx = shift;
      for (std::uint32_t i = 0; i < phi; ++i) {
        acc[idx] += p[i];
        if (++idx == M) idx = 0;
      }
    }
    std::vector<i128> S = acc;
    if (!ld.reduce_checked(S)) throw ResourceError("hypergeometric sum overflow");
    FastCyc v;
    v.level = M;
    try {
      std::vector<i128> prod(2 * phi - 1, 0);
      for (std::uint32_t i = 0; i < phi; ++i) {
        if (!S[i]) continue;
        for (std::uint32_t j = 0; j < phi; ++j) {
          i128 t = cmul(S[i], Q[j]);
          if (__builtin_add_overflow(prod[i + j], t, &prod[i + j])) throw Overflow{};
        }
      }
      if (!ld.reduce_checked(prod)) throw Overflow{};
      for (auto& x : prod) x = cmul(x, scale);
      v.num = std::move(prod);
      v.den = den;
      v.normalize();
    } catch (const Overflow&) {
      std::vector<BigInt> sb(phi), qb(phi);
      for (std::uint32_t i = 0; i < phi; ++i) {
        sb[i] = bigint_from_i128(S[i]);
        qb[i] = bigint_from_i128(Q[i]);
      }
      CycNum x = CycNum::from_poly(M, sb) * CycNum::from_poly(M, qb);
      Rational r(bigint_from_i128(scale), bigint_from_i128(den));
      r.canonicalize();
      x *= r;
      v = FastCyc::from_cycnum(x);
    }
    out[k] = std::move(v);
  }
  return out;
}

FastCyc HgfEngine::value(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda) const {
  if (lambda.code >= field_->q()) throw DomainError("argument out of range");
  if (lambda.code == 0) return FastCyc::zero(M_);
  return row(a, b, c)[field_->dlog(lambda)];
}

}  // namespace hgf
