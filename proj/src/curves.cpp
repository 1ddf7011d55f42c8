#include "hgf/curves.hpp"

#include "hgf/errors.hpp"
#include "hgf/hgf_finite.hpp"

namespace hgf {

namespace {

std::uint32_t mod_u(std::int64_t k, std::uint32_t M) {
  const std::int64_t r = k % static_cast<std::int64_t>(M);
  return static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

// Number of x in F_q with x^N = w.
std::uint64_t root_count(const FieldSpec& F, std::uint32_t N, FqElem w) {
  if (w.code == 0) return 1;
  return F.dlog(w) % N == 0 ? N : 0;
}

// Exponent e (mod N) with w(u, a) = zeta_N^e, or -1 when the weight vanishes.
std::int64_t weight_exp(const FieldSpec& F, std::uint32_t N, FqElem u, std::uint32_t a) {
  if (u.code == 0) return a == 0 ? 0 : -1;
  return static_cast<std::int64_t>((static_cast<std::uint64_t>(a) * F.dlog(u)) % N);
}

// v with (1-u)(1-v) = lambda u v, if any.
bool solve_v(const FieldSpec& F, FqElem lambda, FqElem u, FqElem& v) {
  const FqElem one_u = F.sub(F.one(), u);
  const FqElem den = F.add(one_u, F.mul(lambda, u));
  if (den.code == 0) return false;
  v = F.div(one_u, den);
  return true;
}

template <class Visit>
void enumerate_hypersurface(const HypersurfaceSpec& s, Visit&& visit) {
  const FieldSpec& F = *s.field;
  const std::uint32_t q = F.q(), d = s.d;
  std::vector<FqElem> u(d + 1, FqElem{0});
  std::vector<std::uint32_t> idx(d, 0);
  while (true) {
    FqElem prod = F.one();
    for (std::uint32_t i = 0; i < d; ++i) {
      u[i] = FqElem{idx[i]};
      prod = F.mul(prod, F.sub(F.one(), u[i]));
    }
    if (prod.code != 0) {
      u[d] = F.sub(F.one(), F.div(s.lambda, prod));
      visit(u);
    }
    std::uint32_t i = 0;
    while (i < d && ++idx[i] == q) idx[i++] = 0;
    if (i == d) break;
  }
}

}  // namespace

void CurveSpec::validate() const {
  if (!field) throw DomainError("curve has no field");
  if (N == 0 || field->order() % N) throw DomainError("q must be 1 mod N");
  if (lambda.code >= field->q()) throw DomainError("lambda out of range");
  if (lambda.code == 0 || lambda == field->one()) throw DomainError("lambda must not be 0 or 1");
}

void HypersurfaceSpec::validate() const {
  if (!field) throw DomainError("hypersurface has no field");
  if (d == 0) throw DomainError("dimension must be at least 1");
  if (N == 0 || field->order() % N) throw DomainError("q must be 1 mod N");
  if (lambda.code >= field->q()) throw DomainError("lambda out of range");
  if (lambda.code == 0 || lambda == field->one()) throw DomainError("lambda must not be 0 or 1");
  double total = 1;
  for (std::uint32_t i = 0; i <= d; ++i) total *= field->q();
  if (total > static_cast<double>(bound)) throw ResourceError("q^(d+1) exceeds the enumeration bound");
}

std::uint64_t count_points(const CurveSpec& spec, bool projective) {
  spec.validate();
  const FieldSpec& F = *spec.field;
  std::uint64_t total = 0;
  for (std::uint32_t c = 0; c < F.q(); ++c) {
    FqElem v;
    if (!solve_v(F, spec.lambda, {c}, v)) continue;
    total += root_count(F, spec.N, {c}) * root_count(F, spec.N, v);
  }
  if (projective) {
    const FqElem w = F.inv(F.sub(F.one(), spec.lambda));
    total += 2 * root_count(F, spec.N, w);
  }
  return total;
}

CycNum eigencount(const CurveSpec& spec, std::int64_t a_in, std::int64_t b_in) {
  spec.validate();
  const FieldSpec& F = *spec.field;
  const std::uint32_t N = spec.N, a = mod_u(a_in, N), b = mod_u(b_in, N);
  std::vector<std::int64_t> counts(N, 0);
  for (std::uint32_t c = 0; c < F.q(); ++c) {
    FqElem v;
    if (!solve_v(F, spec.lambda, {c}, v)) continue;
    const std::int64_t e1 = weight_exp(F, N, {c}, a), e2 = weight_exp(F, N, v, b);
    if (e1 < 0 || e2 < 0) continue;
    counts[(e1 + e2) % N] += 1;
  }
  const FqElem w = F.inv(F.sub(F.one(), spec.lambda));
  const std::uint64_t k = F.dlog(w);
  if (b == 0) counts[(static_cast<std::uint64_t>(a) * k) % N] += 1;
  if (a == 0) counts[(static_cast<std::uint64_t>(b) * k) % N] += 1;
  return CycNum::from_int_poly(N, counts);
}

CycNum frobenius_trace(const CurveSpec& spec, std::int64_t a, std::int64_t b) {
  if (mod_u(a, spec.N) == 0 || mod_u(b, spec.N) == 0)
    throw DomainError("frobenius_trace needs a, b != 0; use eigencount");
  return -eigencount(spec, a, b);
}

CycNum eigencount_hypersurface(const HypersurfaceSpec& spec, const std::vector<std::int64_t>& a_in) {
  spec.validate();
  if (a_in.size() != spec.d + 1) throw DomainError("index vector must have d+1 entries");
  const FieldSpec& F = *spec.field;
  const std::uint32_t N = spec.N;
  std::vector<std::uint32_t> a(a_in.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = mod_u(a_in[i], N);
  std::vector<std::int64_t> counts(N, 0);
  enumerate_hypersurface(spec, [&](const std::vector<FqElem>& u) {
    std::int64_t e = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const std::int64_t w = weight_exp(F, N, u[i], a[i]);
      if (w < 0) return;
      e += w;
    }
    counts[e % N] += 1;
  });
  return CycNum::from_int_poly(N, counts);
}

std::uint64_t count_hypersurface_points(const HypersurfaceSpec& spec) {
  spec.validate();
  const FieldSpec& F = *spec.field;
  std::uint64_t total = 0;
  enumerate_hypersurface(spec, [&](const std::vector<FqElem>& u) {
    std::uint64_t m = 1;
    for (const FqElem& x : u) m *= root_count(F, spec.N, x);
    total += m;
  });
  return total;
}

FqElem reduce_rational(const FieldSpec& F, const Rational& x) {
  const long p = F.p();
  const BigInt pn = p;
  BigInt n = x.get_num() % pn, d = x.get_den() % pn;
  if (d == 0) throw DomainError("denominator divisible by p");
  const FqElem fn = F.from_int(n.get_si()), fd = F.from_int(d.get_si());
  return F.div(fn, fd);
}

InterpolationTable interpolation_table(std::uint32_t N, const Rational& lambda, std::uint32_t p_min,
                                       std::uint32_t p_max, std::int64_t a, std::int64_t b) {
  if (N == 0) throw DomainError("N must be positive");
  if (lambda == 0 || lambda == 1) throw DomainError("lambda must not be 0 or 1");
  InterpolationTable t;
  t.N = N;
  t.lambda = lambda;
  t.a = mod_u(a, N);
  t.b = mod_u(b, N);
  const BigInt num = lambda.get_num(), den = lambda.get_den(), diff = den - num;
  for (std::uint32_t p = std::max<std::uint32_t>(2, p_min); p <= p_max; ++p) {
    if (!is_prime(p)) continue;
    const BigInt P = p;
    if (N % p == 0) {
      t.skipped.push_back({p, "p divides N"});
      continue;
    }
    if ((p - 1) % N) {
      t.skipped.push_back({p, "p is not 1 mod N"});
      continue;
    }
    if (num % P == 0) {
      t.skipped.push_back({p, "p divides the numerator of lambda"});
      continue;
    }
    if (den % P == 0) {
      t.skipped.push_back({p, "p divides the denominator of lambda"});
      continue;
    }
    if (diff % P == 0) {
      t.skipped.push_back({p, "p divides the numerator of 1 - lambda"});
      continue;
    }
    const auto F = build_field(p, 1);
    const FqElem lam = reduce_rational(*F, lambda);
    const std::uint32_t step = (p - 1) / N;
    const HgfEngine eng(F);
    const FastCyc v = eng.value(static_cast<std::int64_t>(t.a) * step, static_cast<std::int64_t>(t.b) * step, 0, lam);
    InterpolationRow row;
    row.p = p;
    row.value = coerce_level(v.to_cycnum(), N);
    row.approx = embed_complex(row.value);
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace hgf
