#include "hgf/cyclotomic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

using i128 = __int128;

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool fits_bits(const BigInt& x, std::size_t bits) { return mpz_sizeinbase(x.get_mpz_t(), 2) <= bits; }

}  // namespace

BigInt bigint_from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  const auto hi = static_cast<std::uint64_t>(u >> 64);
  const auto lo = static_cast<std::uint64_t>(u);
  BigInt r;
  if (hi == 0) {
    mpz_import(r.get_mpz_t(), 1, 1, sizeof(lo), 0, 0, &lo);
  } else {
    const std::uint64_t words[2] = {hi, lo};
    mpz_import(r.get_mpz_t(), 2, 1, sizeof(std::uint64_t), 0, 0, words);
  }
  if (neg) r = -r;
  return r;
}

bool bigint_to_i128(const BigInt& x, __int128& out) {
  if (mpz_sizeinbase(x.get_mpz_t(), 2) > 126) return false;
  std::uint64_t words[2] = {0, 0};
  std::size_t count = 0;
  mpz_export(words, &count, -1, sizeof(std::uint64_t), 0, 0, x.get_mpz_t());
  unsigned __int128 u = (static_cast<unsigned __int128>(words[1]) << 64) | words[0];
  out = static_cast<__int128>(u);
  if (sgn(x) < 0) out = -out;
  return true;
}

namespace {

std::int64_t to_i64(const BigInt& x) { return static_cast<std::int64_t>(mpz_get_si(x.get_mpz_t())); }

// Reduce an integer polynomial modulo Phi_L, with an int128 fast path.
std::vector<BigInt> reduce_int(const LevelData& ld, std::vector<i128> v) {
  std::vector<i128> w = v;
  if (ld.reduce_checked(w)) {
    std::vector<BigInt> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = bigint_from_i128(w[i]);
    return out;
  }
  std::vector<BigInt> big(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) big[i] = bigint_from_i128(v[i]);
  ld.reduce(big);
  return big;
}

std::uint32_t checked_level(std::uint64_t L) {
  if (L == 0 || L > 0xffffffffull) throw ResourceError("cyclotomic level out of range: " + std::to_string(L));
  return static_cast<std::uint32_t>(L);
}

std::uint32_t mod_level(std::int64_t k, std::uint32_t L) {
  const std::int64_t r = k % static_cast<std::int64_t>(L);
  return static_cast<std::uint32_t>(r < 0 ? r + L : r);
}

// Solver lowering level L elements to the subfield of level L2 (L2 | L).
struct LowerSolver {
  std::uint32_t L = 0, L2 = 0, k = 0, phi2 = 0;
  std::vector<std::uint32_t> rows;
  std::vector<BigInt> inv_num;  // phi2 x phi2, row-major
  BigInt inv_den;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::unique_ptr<LowerSolver> build_solver(std::uint32_t L, std::uint32_t L2) {
  auto s = std::make_unique<LowerSolver>();
  const LevelData& ld = level_data(L);
  const LevelData& ld2 = level_data(L2);
  s->L = L;
  s->L2 = L2;
  s->k = L / L2;
  s->phi2 = ld2.dim();
  const std::uint32_t phi = ld.dim(), phi2 = s->phi2;
  // Column i of B is zeta_L2^i written at level L.
  std::vector<std::vector<std::int64_t>> cols(phi2);
  for (std::uint32_t i = 0; i < phi2; ++i) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(i) * s->k + 1, 0);
    v.back() = 1;
    ld.reduce(v);
    cols[i] = std::move(v);
  }
  // Pick phi2 independent rows by elimination modulo a large prime.
  const std::uint64_t P = (1ull << 61) - 1;
  std::vector<std::vector<std::uint64_t>> a(phi2, std::vector<std::uint64_t>(phi));
  for (std::uint32_t i = 0; i < phi2; ++i)
    for (std::uint32_t j = 0; j < phi; ++j) {
      const std::int64_t c = cols[i][j];
      a[i][j] = c >= 0 ? static_cast<std::uint64_t>(c) % P : P - (static_cast<std::uint64_t>(-c) % P);
    }
  for (std::uint32_t i = 0; i < phi2; ++i) {
    std::uint32_t piv = phi;
    for (std::uint32_t j = 0; j < phi; ++j)
      if (a[i][j]) {
        piv = j;
        break;
      }
    if (piv == phi) throw std::logic_error("subfield basis is degenerate");
    s->rows.push_back(piv);
    const std::uint64_t invp = powmod(a[i][piv], P - 2, P);
    for (std::uint32_t r = i + 1; r < phi2; ++r) {
      if (!a[r][piv]) continue;
      const std::uint64_t f = mulmod(a[r][piv], invp, P);
      for (std::uint32_t j = 0; j < phi; ++j) a[r][j] = (a[r][j] + P - mulmod(f, a[i][j], P)) % P;
    }
  }
  // Exact inverse of the selected square block.
  std::vector<std::vector<Rational>> m(phi2, std::vector<Rational>(2 * phi2));
  for (std::uint32_t r = 0; r < phi2; ++r) {
    for (std::uint32_t i = 0; i < phi2; ++i) m[r][i] = static_cast<long>(cols[i][s->rows[r]]);
    m[r][phi2 + r] = 1;
  }
  for (std::uint32_t c = 0; c < phi2; ++c) {
    std::uint32_t piv = c;
    while (piv < phi2 && m[piv][c] == 0) ++piv;
    if (piv == phi2) throw std::logic_error("subfield block is singular");
    std::swap(m[piv], m[c]);
    const Rational d = m[c][c];
    for (auto& x : m[c]) x /= d;
    for (std::uint32_t r = 0; r < phi2; ++r) {
      if (r == c || m[r][c] == 0) continue;
      const Rational f = m[r][c];
      for (std::uint32_t j = c; j < 2 * phi2; ++j) m[r][j] -= f * m[c][j];
    }
  }
  BigInt den = 1;
  for (std::uint32_t r = 0; r < phi2; ++r)
    for (std::uint32_t j = 0; j < phi2; ++j) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), m[r][phi2 + j].get_den_mpz_t());
  s->inv_den = den;
  s->inv_num.resize(static_cast<std::size_t>(phi2) * phi2);
  for (std::uint32_t r = 0; r < phi2; ++r)
    for (std::uint32_t j = 0; j < phi2; ++j) {
      const Rational& x = m[r][phi2 + j];
      s->inv_num[static_cast<std::size_t>(r) * phi2 + j] = x.get_num() * (den / x.get_den());
    }
  return s;
}

const LowerSolver& lower_solver(std::uint32_t L, std::uint32_t L2) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::unique_ptr<LowerSolver>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{L, L2}];
  if (!slot) slot = build_solver(L, L2);
  return *slot;
}

CycNum raise(const CycNum& a, std::uint32_t L2) {
  if (L2 == a.level()) return a;
  const std::uint32_t k = L2 / a.level();
  std::vector<BigInt> v(a.dim() == 0 ? 1 : (a.dim() - 1) * static_cast<std::size_t>(k) + 1);
  for (std::size_t i = 0; i < a.dim(); ++i) v[i * k] = a.num()[i];
  return CycNum::from_poly(L2, std::move(v), a.den());
}

CycNum lower(const CycNum& a, std::uint32_t L2) {
  if (L2 == a.level()) return a;
  const LowerSolver& s = lower_solver(a.level(), L2);
  const std::uint32_t phi2 = s.phi2;
  std::vector<BigInt> c(phi2);
  for (std::uint32_t i = 0; i < phi2; ++i) {
    BigInt acc = 0;
    for (std::uint32_t r = 0; r < phi2; ++r) {
      const BigInt& w = s.inv_num[static_cast<std::size_t>(i) * phi2 + r];
      if (w != 0) acc += w * a.num()[s.rows[r]];
    }
    c[i] = acc;
  }
  // Verify: c (over inv_den) written at level L must reproduce a (over 1).
  std::vector<BigInt> back(phi2 == 0 ? 1 : (phi2 - 1) * static_cast<std::size_t>(s.k) + 1);
  for (std::uint32_t i = 0; i < phi2; ++i) back[i * s.k] = c[i];
  level_data(a.level()).reduce(back);
  for (std::size_t j = 0; j < back.size(); ++j)
    if (back[j] != s.inv_den * a.num()[j])
      throw CoercionError("element of level " + std::to_string(a.level()) + " is not in Q(mu_" + std::to_string(L2) + ")");
  return CycNum::from_poly(L2, std::move(c), s.inv_den * a.den());
}

}  // namespace

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_level(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t r = n;
  for (std::uint64_t p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

std::vector<std::int64_t> cyclotomic_polynomial(std::uint32_t L) {
  if (L == 0) throw DomainError("cyclotomic_polynomial: L must be positive");
  if (L == 1) return {-1, 1};
  const std::uint64_t phi = euler_phi(L);
  // Phi_L = prod_{d | L} (1 - x^d)^{mu(L/d)}, computed as a power series mod x^{phi+1}.
  std::vector<std::int64_t> c(phi + 1, 0);
  c[0] = 1;
  const auto ps = prime_factors(L);
  const std::size_t np = ps.size();
  for (std::uint32_t mask = 0; mask < (1u << np); ++mask) {
    std::uint64_t sq = 1;
    int bits = 0;
    for (std::size_t i = 0; i < np; ++i)
      if (mask >> i & 1) {
        sq *= ps[i];
        ++bits;
      }
    const std::uint64_t d = L / sq;
    if (d > phi) {
      // (1 - x^d)^{+-1} is 1 modulo x^{phi+1}
      continue;
    }
    if (bits % 2 == 0) {
      for (std::uint64_t i = phi; i >= d; --i) c[i] -= c[i - d];
    } else {
      for (std::uint64_t i = d; i <= phi; ++i) c[i] += c[i - d];
    }
  }
  return c;
}

LevelData::LevelData(std::uint32_t L) : L_(L) {
  if (L == 0) throw DomainError("level must be positive");
  const std::uint64_t phi = euler_phi(L);
  if (phi > kMaxCyclotomicDim) throw ResourceError("cyclotomic dimension too large at level " + std::to_string(L));
  phi_ = static_cast<std::uint32_t>(phi);
  poly_ = cyclotomic_polynomial(L);
  for (std::uint32_t e = 0; e < phi_; ++e)
    if (poly_[e] != 0) tail_.emplace_back(e, poly_[e]);
}

bool LevelData::reduce_checked(std::vector<__int128>& v) const {
  for (std::size_t i = v.size(); i-- > phi_;) {
    const i128 c = v[i];
    if (c == 0) continue;
    const std::size_t base = i - phi_;
    for (const auto& [e, a] : tail_) {
      i128 prod;
      if (__builtin_mul_overflow(c, static_cast<i128>(a), &prod)) return false;
      if (__builtin_sub_overflow(v[base + e], prod, &v[base + e])) return false;
    }
    v[i] = 0;
  }
  v.resize(phi_, 0);
  return true;
}

const LevelData& level_data(std::uint32_t L) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::unique_ptr<LevelData>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[L];
  if (!slot) slot = std::make_unique<LevelData>(L);
  return *slot;
}

// ---- CycNum ---------------------------------------------------------------

CycNum::CycNum(std::uint32_t level) : L_(level), num_(level_data(level).dim()), den_(1) {}

CycNum::CycNum(std::uint32_t level, const Rational& r) : CycNum(level) {
  num_[0] = r.get_num();
  den_ = r.get_den();
}

CycNum CycNum::zeta(std::uint32_t level, std::int64_t k) {
  std::vector<BigInt> v(mod_level(k, level) + 1);
  v.back() = 1;
  return from_poly(level, std::move(v));
}

CycNum CycNum::from_poly(std::uint32_t level, std::vector<BigInt> num, BigInt den) {
  if (den == 0) throw DomainError("zero denominator");
  const LevelData& ld = level_data(level);
  if (num.size() > level) {
    // fold modulo x^L - 1 first
    for (std::size_t i = level; i < num.size(); ++i) num[i % level] += num[i];
    num.resize(level);
  }
  ld.reduce(num);
  CycNum r(level);
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

CycNum CycNum::from_int_poly(std::uint32_t level, const std::vector<std::int64_t>& num, std::int64_t den) {
  if (den == 0) throw DomainError("zero denominator");
  const LevelData& ld = level_data(level);
  std::vector<i128> v(std::min<std::size_t>(num.size(), level), 0);
  for (std::size_t i = 0; i < num.size(); ++i) v[i % level] += num[i];
  CycNum r(level);
  r.num_ = reduce_int(ld, std::move(v));
  r.den_ = static_cast<long>(den);
  r.normalize();
  return r;
}

CycNum CycNum::from_coeffs(std::uint32_t level, const std::vector<Rational>& coeffs) {
  BigInt den = 1;
  for (const auto& c : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<BigInt> num(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) num[i] = coeffs[i].get_num() * (den / coeffs[i].get_den());
  return from_poly(level, std::move(num), den);
}

void CycNum::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& x : num_) x = -x;
  }
  if (den_ == 1) return;
  BigInt g = den_;
  for (const auto& x : num_) {
    if (x == 0) continue;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    if (g == 1) return;
  }
  if (is_zero()) {
    den_ = 1;
    return;
  }
  for (auto& x : num_) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
}

Rational CycNum::coeff(std::size_t i) const {
  Rational r(num_.at(i), den_);
  r.canonicalize();
  return r;
}

std::vector<Rational> CycNum::coeffs() const {
  std::vector<Rational> out(num_.size());
  for (std::size_t i = 0; i < num_.size(); ++i) out[i] = coeff(i);
  return out;
}

bool CycNum::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const BigInt& x) { return x == 0; });
}

bool CycNum::is_rational() const {
  return std::all_of(num_.begin() + (num_.empty() ? 0 : 1), num_.end(), [](const BigInt& x) { return x == 0; });
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& x : r.num_) x = -x;
  return r;
}

CycNum& CycNum::operator+=(const CycNum& o) {
  if (o.L_ != L_) {
    const std::uint32_t L = checked_level(lcm_level(L_, o.L_));
    *this = raise(*this, L);
    return *this += raise(o, L);
  }
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  normalize();
  return *this;
}

CycNum& CycNum::operator-=(const CycNum& o) { return *this += -o; }

CycNum& CycNum::operator*=(const Rational& r) {
  for (auto& x : num_) x *= r.get_num();
  den_ *= r.get_den();
  normalize();
  return *this;
}

CycNum& CycNum::operator*=(const CycNum& o) {
  if (o.L_ != L_) {
    const std::uint32_t L = checked_level(lcm_level(L_, o.L_));
    *this = raise(*this, L);
    return *this *= raise(o, L);
  }
  const LevelData& ld = level_data(L_);
  const std::size_t n = num_.size();
  bool small = true;
  for (std::size_t i = 0; i < n && small; ++i) small = fits_bits(num_[i], 50) && fits_bits(o.num_[i], 50);
  std::vector<BigInt> prod;
  if (small) {
    std::vector<std::int64_t> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = to_i64(num_[i]);
      b[i] = to_i64(o.num_[i]);
    }
    std::vector<i128> v(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (!a[i]) continue;
      const i128 ai = a[i];
      for (std::size_t j = 0; j < n; ++j) v[i + j] += ai * b[j];
    }
    prod = reduce_int(ld, std::move(v));
  } else {
    prod.assign(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (num_[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        mpz_addmul(prod[i + j].get_mpz_t(), num_[i].get_mpz_t(), o.num_[j].get_mpz_t());
    }
    ld.reduce(prod);
  }
  num_ = std::move(prod);
  den_ *= o.den_;
  normalize();
  return *this;
}

CycNum& CycNum::operator/=(const CycNum& o) { return *this *= inv(o); }

bool operator==(const CycNum& a, const CycNum& b) {
  if (a.L_ == b.L_) return a.den_ == b.den_ && a.num_ == b.num_;
  const std::uint32_t L = checked_level(lcm_level(a.L_, b.L_));
  return raise(a, L) == raise(b, L);
}

std::string CycNum::str() const {
  std::ostringstream os;
  bool any = false;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    if (num_[i] == 0) continue;
    Rational c = coeff(i);
    const bool neg = c < 0;
    if (neg) c = -c;
    os << (any ? (neg ? " - " : " + ") : (neg ? "-" : ""));
    if (i == 0) {
      os << c.get_str();
    } else {
      if (c != 1) os << c.get_str() << "*";
      os << "z";
      if (i > 1) os << "^" << i;
    }
    any = true;
  }
  if (!any) os << "0";
  return os.str();
}

// ---- free functions ------------------------------------------------------

namespace {

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly poly_sub_mul(const QPoly& a, const QPoly& q, const QPoly& b) {
  QPoly r(std::max(a.size(), q.empty() || b.empty() ? 0 : q.size() + b.size() - 1));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] -= q[i] * b[j];
  trim(r);
  return r;
}

void poly_divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const Rational lead = b.back();
  while (r.size() >= b.size() && !r.empty()) {
    const std::size_t shift = r.size() - b.size();
    const Rational f = r.back() / lead;
    q[shift] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[shift + j] -= f * b[j];
    trim(r);
  }
}

}  // namespace

CycNum inv(const CycNum& a) {
  if (a.is_zero()) throw DomainError("inverse of zero");
  const std::uint32_t L = a.level();
  QPoly r0(level_data(L).poly().begin(), level_data(L).poly().end());
  QPoly r1 = a.coeffs();
  trim(r1);
  QPoly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    QPoly q, r;
    poly_divmod(r0, r1, q, r);
    QPoly s2 = poly_sub_mul(s0, q, s1);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    if (r1.empty()) throw std::logic_error("inverse: element shares a factor with Phi_L");
  }
  for (auto& c : s1) c /= r1[0];
  return CycNum::from_coeffs(L, s1);
}

CycNum galois_apply(std::int64_t c, const CycNum& a) {
  const std::uint32_t L = a.level();
  const std::uint32_t cm = mod_level(c, L);
  if (gcd_u64(cm, L) != 1) throw DomainError("galois_apply: exponent not coprime to the level");
  std::vector<BigInt> v(L);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.num()[i] == 0) continue;
    v[static_cast<std::uint64_t>(i) * cm % L] += a.num()[i];
  }
  return CycNum::from_poly(L, std::move(v), a.den());
}

CycNum coerce_level(const CycNum& a, std::uint32_t L) {
  if (L == 0) throw DomainError("level must be positive");
  if (L % a.level() == 0) return raise(a, L);
  if (a.level() % L == 0) return lower(a, L);
  const std::uint32_t M = checked_level(lcm_level(a.level(), L));
  return lower(raise(a, M), L);
}

CycNum mul_zeta(const CycNum& a, std::uint32_t L, std::int64_t k) {
  const std::uint32_t M = checked_level(lcm_level(a.level(), L));
  const CycNum b = raise(a, M);
  const std::uint32_t shift = mod_level(k * static_cast<std::int64_t>(M / L) % M, M);
  std::vector<BigInt> v(M);
  for (std::size_t i = 0; i < b.dim(); ++i) v[(i + shift) % M] = b.num()[i];
  return CycNum::from_poly(M, std::move(v), b.den());
}

std::complex<double> embed_complex(const CycNum& a) {
  std::complex<double> s = 0;
  const double den = a.den().get_d();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a.num()[i] == 0) continue;
    const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / a.level();
    s += (a.num()[i].get_d() / den) * std::complex<double>(std::cos(t), std::sin(t));
  }
  return s;
}

}  // namespace hgf
