#include "hgf/homology.hpp"

#include <numeric>
#include <sstream>

#include "hgf/errors.hpp"

namespace hgf {

namespace {

std::uint32_t mod_u(std::int64_t k, std::uint32_t M) {
  const std::int64_t r = k % static_cast<std::int64_t>(M);
  return static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

void check_same(std::uint32_t a, std::uint32_t b) {
  if (a != b) throw DomainError("group ring elements of different levels");
}

}  // namespace

// ---- GroupRingElem --------------------------------------------------------

GroupRingElem::GroupRingElem(std::uint32_t N) : N_(N), c_(static_cast<std::size_t>(N) * N) {
  if (N == 0) throw DomainError("level must be positive");
}

GroupRingElem GroupRingElem::monomial(std::uint32_t N, std::int64_t i, std::int64_t j, const BigInt& c) {
  GroupRingElem x(N);
  x.at(i, j) = c;
  return x;
}

std::size_t GroupRingElem::index(std::int64_t i, std::int64_t j) const {
  return static_cast<std::size_t>(mod_u(i, N_)) * N_ + mod_u(j, N_);
}

bool GroupRingElem::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

GroupRingElem& GroupRingElem::operator+=(const GroupRingElem& o) {
  check_same(N_, o.N_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

GroupRingElem& GroupRingElem::operator-=(const GroupRingElem& o) {
  check_same(N_, o.N_);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

GroupRingElem GroupRingElem::operator*(const GroupRingElem& o) const {
  check_same(N_, o.N_);
  GroupRingElem r(N_);
  for (std::uint32_t i = 0; i < N_; ++i)
    for (std::uint32_t j = 0; j < N_; ++j) {
      const BigInt& a = c_[i * N_ + j];
      if (a == 0) continue;
      for (std::uint32_t k = 0; k < N_; ++k)
        for (std::uint32_t l = 0; l < N_; ++l) {
          const BigInt& b = o.c_[k * N_ + l];
          if (b != 0) r.c_[((i + k) % N_) * N_ + (j + l) % N_] += a * b;
        }
    }
  return r;
}

GroupRingElem GroupRingElem::pow(std::uint64_t k) const {
  GroupRingElem r = one(N_), b = *this;
  for (; k; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

std::string GroupRingElem::str() const {
  std::ostringstream os;
  bool first = true;
  for (std::uint32_t i = 0; i < N_; ++i)
    for (std::uint32_t j = 0; j < N_; ++j) {
      const BigInt& v = c_[i * N_ + j];
      if (v == 0) continue;
      os << (first ? "" : " + ") << v << "*x^" << i << "y^" << j;
      first = false;
    }
  return first ? "0" : os.str();
}

// ---- QuotientElem ---------------------------------------------------------

QuotientElem::QuotientElem(std::uint32_t N) : N_(N), c_(static_cast<std::size_t>(N - 1) * (N - 1)) {
  if (N == 0) throw DomainError("level must be positive");
}

bool QuotientElem::is_zero() const {
  for (const auto& v : c_)
    if (v != 0) return false;
  return true;
}

bool QuotientElem::is_one() const { return *this == reduce_mod_IN(GroupRingElem::one(N_)); }

GroupRingElem QuotientElem::lift() const {
  GroupRingElem x(N_);
  for (std::uint32_t i = 1; i < N_; ++i)
    for (std::uint32_t j = 1; j < N_; ++j) x.at(i, j) = at(i, j);
  return x;
}

QuotientElem QuotientElem::operator+(const QuotientElem& o) const {
  check_same(N_, o.N_);
  QuotientElem r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] += o.c_[k];
  return r;
}

QuotientElem QuotientElem::operator-(const QuotientElem& o) const {
  check_same(N_, o.N_);
  QuotientElem r = *this;
  for (std::size_t k = 0; k < c_.size(); ++k) r.c_[k] -= o.c_[k];
  return r;
}

QuotientElem QuotientElem::operator*(const QuotientElem& o) const {
  check_same(N_, o.N_);
  return reduce_mod_IN(lift() * o.lift());
}

QuotientElem reduce_mod_IN(const GroupRingElem& x) {
  const std::uint32_t N = x.N();
  QuotientElem r(N);
  for (std::uint32_t i = 1; i < N; ++i)
    for (std::uint32_t j = 1; j < N; ++j) r.at(i, j) = x.at(i, j) - x.at(0, j) - x.at(i, 0) + x.at(0, 0);
  return r;
}

bool in_ideal(const GroupRingElem& x) { return reduce_mod_IN(x).is_zero(); }

// ---- MatrixGR -------------------------------------------------------------

MatrixGR MatrixGR::identity(std::uint32_t N) {
  MatrixGR r;
  r.m[0][0] = r.m[1][1] = GroupRingElem::one(N);
  r.m[0][1] = r.m[1][0] = GroupRingElem(N);
  return r;
}

MatrixGR MatrixGR::operator*(const MatrixGR& o) const {
  MatrixGR r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
  return r;
}

MatrixGR MatrixGR::operator-(const MatrixGR& o) const {
  MatrixGR r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
  return r;
}

MatrixGR MatrixGR::pow(std::uint64_t k) const {
  MatrixGR r = identity(m[0][0].N()), b = *this;
  for (; k; k >>= 1) {
    if (k & 1) r = r * b;
    if (k > 1) b = b * b;
  }
  return r;
}

bool MatrixGR::is_zero() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

bool MatrixGR::is_zero_mod_IN() const {
  for (const auto& row : m)
    for (const auto& e : row)
      if (!in_ideal(e)) return false;
  return true;
}

bool MatrixGR::is_identity_mod_IN() const { return (*this - identity(m[0][0].N())).is_zero_mod_IN(); }

bool operator==(const MatrixGR& a, const MatrixGR& b) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (a.m[i][j] != b.m[i][j]) return false;
  return true;
}

MatrixGR monodromy_matrix(Puncture s, std::uint32_t N) {
  const GroupRingElem one = GroupRingElem::one(N), xi = GroupRingElem::monomial(N, 1, 0),
                      eta = GroupRingElem::monomial(N, 0, 1);
  const GroupRingElem w = (one - xi) * (one - eta);
  MatrixGR r = MatrixGR::identity(N);
  switch (s) {
    case Puncture::Zero:
      r.m[0][1] = GroupRingElem(N) - w;
      break;
    case Puncture::One: {
      // alpha -> alpha + u((1 - xi eta) alpha + beta) = u alpha + u beta, u = xi^-1 eta^-1
      const GroupRingElem u = GroupRingElem::monomial(N, -1, -1);
      r.m[0][0] = u;
      r.m[1][0] = u;
      break;
    }
    case Puncture::Infinity:
      r.m[0][0] = xi + eta - one;
      r.m[1][0] = GroupRingElem(N) - one;
      r.m[0][1] = w;
      break;
  }
  return r;
}

// ---- relations ------------------------------------------------------------

bool MonodromyReport::ok() const {
  for (const auto& c : checks)
    if (!c.holds) return false;
  return true;
}

std::vector<std::string> MonodromyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.holds) out.push_back(c.relation + " fails for N=" + std::to_string(N));
  return out;
}

MonodromyReport verify_monodromy_relations(std::uint32_t N, std::uint32_t bound) {
  if (N == 0) throw DomainError("level must be positive");
  if (N > bound) throw ResourceError("N exceeds the configured bound");
  MonodromyReport rep;
  rep.N = N;
  const MatrixGR I = MatrixGR::identity(N), T0 = monodromy_matrix(Puncture::Zero, N),
                 T1 = monodromy_matrix(Puncture::One, N), Ti = monodromy_matrix(Puncture::Infinity, N);
  const MatrixGR u0 = (I - T0) * (I - T0);
  const MatrixGR d1 = I - T1.pow(N);
  const MatrixGR u1 = d1 * d1;
  rep.checks.push_back({"(1-T0)^2 = 0", true, u0.is_zero_mod_IN()});
  rep.checks.push_back({"(1-T1^N)^2 = 0", true, u1.is_zero_mod_IN()});
  rep.checks.push_back({"Tinf^N = 1", true, Ti.pow(N).is_identity_mod_IN()});
  rep.checks.push_back({"Tinf T1 T0 = 1", true, (Ti * T1 * T0).is_identity_mod_IN()});
  rep.checks.push_back({"T1 T0 Tinf = 1", true, (T1 * T0 * Ti).is_identity_mod_IN()});
  rep.unipotent_T0_unquotiented = u0.is_zero();
  rep.unipotent_T1_unquotiented = u1.is_zero();
  const MatrixGR di = I - Ti.pow(N);
  rep.tinf_quasi_unipotent = (di * di).is_zero_mod_IN();
  return rep;
}

// ---- intersection block ---------------------------------------------------

BigInt bareiss_determinant(std::vector<std::vector<BigInt>> a) {
  const std::size_t n = a.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        BigInt t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i][j] = t;
      }
    prev = a[k][k];
  }
  BigInt d = a[n - 1][n - 1];
  return sign < 0 ? BigInt(-d) : d;
}

IntersectionBlock intersection_block(std::uint32_t N) {
  if (N < 2) throw DomainError("intersection block needs N >= 2");
  const std::uint32_t n = (N - 1) * (N - 1);
  IntersectionBlock out;
  out.matrix = Eigen::MatrixXi::Zero(n, n);
  for (std::uint32_t i = 1; i < N; ++i)
    for (std::uint32_t j = 1; j < N; ++j)
      for (std::uint32_t k = 1; k < N; ++k)
        for (std::uint32_t l = 1; l < N; ++l) {
          const std::uint32_t di = (i + N - k) % N, dj = (j + N - l) % N;
          if ((di == 0 && dj == 0) || (di == 1 && dj == 1))
            out.matrix((i - 1) * (N - 1) + (j - 1), (k - 1) * (N - 1) + (l - 1)) = -1;
        }
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::uint32_t r = 0; r < n; ++r)
    for (std::uint32_t c = 0; c < n; ++c) a[r][c] = out.matrix(r, c);
  out.det = bareiss_determinant(std::move(a));
  return out;
}

// ---- cyclotomic units -----------------------------------------------------

GroupRingElem variable_power(UnitVariable x, std::uint32_t N, std::int64_t k) {
  switch (x) {
    case UnitVariable::Xi:
      return GroupRingElem::monomial(N, k, 0);
    case UnitVariable::Eta:
      return GroupRingElem::monomial(N, 0, k);
    case UnitVariable::XiEta:
      break;
  }
  return GroupRingElem::monomial(N, k, k);
}

QuotientElem cyclotomic_unit(std::int64_t c, UnitVariable x, std::uint32_t N, std::int64_t stride) {
  if (c < 1) throw DomainError("cyclotomic unit needs c >= 1");
  if (std::gcd(c, static_cast<std::int64_t>(N)) != 1) throw DomainError("cyclotomic unit needs gcd(c, N) = 1");
  GroupRingElem s(N);
  for (std::int64_t i = 0; i < c; ++i) s += variable_power(x, N, i * stride);
  return reduce_mod_IN(s);
}

std::vector<std::vector<BigInt>> multiplication_matrix(const QuotientElem& u) {
  const std::uint32_t N = u.N(), n = u.dim();
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (std::uint32_t i = 1; i < N; ++i)
    for (std::uint32_t j = 1; j < N; ++j) {
      QuotientElem e(N);
      e.at(i, j) = 1;
      const QuotientElem img = u * e;
      const std::uint32_t col = (i - 1) * (N - 1) + (j - 1);
      for (std::uint32_t r = 0; r < n; ++r) a[r][col] = img.coeffs()[r];
    }
  return a;
}

std::optional<QuotientElem> quotient_inverse(const QuotientElem& u) {
  const std::uint32_t N = u.N(), n = u.dim();
  const auto A = multiplication_matrix(u);
  const QuotientElem one = reduce_mod_IN(GroupRingElem::one(N));
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1));
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t c = 0; c < n; ++c) m[r][c] = A[r][c];
    m[r][n] = one.coeffs()[r];
  }
  for (std::uint32_t k = 0; k < n; ++k) {
    std::uint32_t p = k;
    while (p < n && m[p][k] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(m[k], m[p]);
    const Rational piv = m[k][k];
    for (std::uint32_t c = k; c <= n; ++c) m[k][c] /= piv;
    for (std::uint32_t r = 0; r < n; ++r) {
      if (r == k || m[r][k] == 0) continue;
      const Rational f = m[r][k];
      for (std::uint32_t c = k; c <= n; ++c) m[r][c] -= f * m[k][c];
    }
  }
  QuotientElem v(N);
  for (std::uint32_t r = 0; r < n; ++r) {
    if (m[r][n].get_den() != 1) return std::nullopt;
    v.coeffs()[r] = m[r][n].get_num();
  }
  if (!(u * v).is_one()) return std::nullopt;
  return v;
}

}  // namespace hgf
