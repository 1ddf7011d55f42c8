#include "hgf/finfield.hpp"

#include <map>
#include <mutex>
#include <string>

#include "hgf/errors.hpp"

namespace hgf {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<std::uint32_t> digits(std::uint32_t code, std::uint32_t p, std::uint32_t f) {
  std::vector<std::uint32_t> d(f);
  for (std::uint32_t i = 0; i < f; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

std::uint32_t encode(const std::vector<std::uint32_t>& d, std::uint32_t p) {
  std::uint32_t c = 0;
  for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
  return c;
}

// Powers of t modulo the monic polynomial with lower coefficients `low`.
// Fills exp with t^0..t^{q-2} and returns true iff t has order exactly q-1.
bool power_cycle(const std::vector<std::uint32_t>& low, std::uint32_t p, std::uint32_t q,
                 std::vector<std::uint32_t>& exp) {
  const std::uint32_t f = static_cast<std::uint32_t>(low.size());
  exp.assign(q - 1, 0);
  std::vector<std::uint32_t> cur(f, 0);
  cur[0] = 1;
  for (std::uint32_t k = 0; k < q - 1; ++k) {
    const std::uint32_t code = encode(cur, p);
    if (k > 0 && code == 1) return false;
    exp[k] = code;
    const std::uint32_t top = cur[f - 1];
    for (std::uint32_t i = f - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top)
      for (std::uint32_t i = 0; i < f; ++i) cur[i] = (cur[i] + (p - low[i]) * top) % p;
  }
  return encode(cur, p) == 1;
}

}  // namespace

FieldSpec::FieldSpec(std::uint32_t p, std::uint32_t f, std::uint32_t bound) : p_(p), f_(f) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (f < 1) throw DomainError("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > bound) throw ResourceError("field order " + std::to_string(p) + "^" + std::to_string(f) + " exceeds bound");
  }
  q_ = static_cast<std::uint32_t>(q);
  if (f == 1) {
    for (std::uint32_t g = 1; g < p; ++g) {
      exp_.assign(q_ - 1, 0);
      std::uint64_t x = 1;
      bool ok = true;
      for (std::uint32_t k = 0; k < q_ - 1; ++k) {
        if (k > 0 && x == 1) {
          ok = false;
          break;
        }
        exp_[k] = static_cast<std::uint32_t>(x);
        x = x * g % p;
      }
      if (ok && x == 1) break;
      exp_.clear();
    }
  } else {
    // Candidates in increasing order of sum_j c_j p^j, i.e. lexicographic in (c_{f-1}, ..., c_0).
    for (std::uint32_t t = 0; t < q_; ++t) {
      const auto low = digits(t, p, f);
      if (low[0] == 0) continue;
      if (power_cycle(low, p, q_, exp_)) {
        modulus_ = low;
        modulus_.push_back(1);
        break;
      }
      exp_.clear();
    }
  }
  if (exp_.empty()) throw std::logic_error("no primitive element found");
  log_.assign(q_, -1);
  for (std::uint32_t k = 0; k < q_ - 1; ++k) log_[exp_[k]] = static_cast<std::int32_t>(k);
  // Trace is F_p-linear: Tr(sum c_j t^j) = sum c_j Tr(t^j).
  std::vector<std::uint32_t> basis_tr(f);
  for (std::uint32_t j = 0; j < f; ++j) {
    FqElem y{encode([&] {
      std::vector<std::uint32_t> d(f, 0);
      d[j] = 1;
      return d;
    }(), p)};
    FqElem acc{0}, cur = y;
    for (std::uint32_t i = 0; i < f; ++i) {
      acc = add(acc, cur);
      cur = pow(cur, p);
    }
    if (acc.code >= p) throw std::logic_error("trace landed outside the prime field");
    basis_tr[j] = acc.code;
  }
  trace_.assign(q_, 0);
  for (std::uint32_t c = 0; c < q_; ++c) {
    std::uint64_t s = 0;
    std::uint32_t x = c;
    for (std::uint32_t j = 0; j < f; ++j) {
      s += static_cast<std::uint64_t>(x % p) * basis_tr[j];
      x /= p;
    }
    trace_[c] = static_cast<std::uint32_t>(s % p);
  }
}

FqElem FieldSpec::from_int(std::int64_t n) const {
  const std::int64_t r = n % static_cast<std::int64_t>(p_);
  return {static_cast<std::uint32_t>(r < 0 ? r + p_ : r)};
}

FqElem FieldSpec::from_coeffs(const std::vector<std::int64_t>& c) const {
  if (c.size() > f_) throw DomainError("too many coefficients for F_" + std::to_string(q_));
  std::vector<std::uint32_t> d(f_, 0);
  for (std::size_t i = 0; i < c.size(); ++i) d[i] = from_int(c[i]).code;
  return {encode(d, p_)};
}

std::vector<std::uint32_t> FieldSpec::coeffs(FqElem x) const { return digits(x.code, p_, f_); }

FqElem FieldSpec::add(FqElem a, FqElem b) const {
  if (f_ == 1) return {(a.code + b.code) % p_};
  if (p_ == 2) return {a.code ^ b.code};
  std::uint32_t r = 0, w = 1, x = a.code, y = b.code;
  for (std::uint32_t i = 0; i < f_; ++i) {
    r += ((x % p_ + y % p_) % p_) * w;
    x /= p_;
    y /= p_;
    w *= p_;
  }
  return {r};
}

FqElem FieldSpec::neg(FqElem a) const {
  if (f_ == 1) return {(p_ - a.code) % p_};
  if (p_ == 2) return a;
  std::uint32_t r = 0, w = 1, x = a.code;
  for (std::uint32_t i = 0; i < f_; ++i) {
    r += ((p_ - x % p_) % p_) * w;
    x /= p_;
    w *= p_;
  }
  return {r};
}

FqElem FieldSpec::sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

FqElem FieldSpec::mul(FqElem a, FqElem b) const {
  if (a.code == 0 || b.code == 0) return {0};
  const std::uint32_t s = static_cast<std::uint32_t>(log_[a.code]) + static_cast<std::uint32_t>(log_[b.code]);
  return {exp_[s % order()]};
}

FqElem FieldSpec::inv(FqElem a) const {
  if (a.code == 0) throw DomainError("inverse of zero in F_" + std::to_string(q_));
  return {exp_[(order() - static_cast<std::uint32_t>(log_[a.code])) % order()]};
}

FqElem FieldSpec::pow(FqElem a, std::int64_t e) const {
  if (a.code == 0) {
    if (e == 0) return one();
    if (e < 0) throw DomainError("negative power of zero");
    return zero();
  }
  return exp(static_cast<std::int64_t>(log_[a.code]) * (e % static_cast<std::int64_t>(order())));
}

FqElem FieldSpec::exp(std::int64_t k) const {
  const std::int64_t M = order();
  const std::int64_t r = k % M;
  return {exp_[static_cast<std::size_t>(r < 0 ? r + M : r)]};
}

std::uint32_t FieldSpec::dlog(FqElem x) const {
  if (x.code >= q_) throw DomainError("element out of range");
  if (x.code == 0) throw DomainError("discrete log of zero");
  return static_cast<std::uint32_t>(log_[x.code]);
}

std::shared_ptr<const FieldSpec> build_field(std::uint32_t p, std::uint32_t f, std::uint32_t bound) {
  static std::mutex mu;
  static std::map<std::pair<std::uint32_t, std::uint32_t>, std::shared_ptr<const FieldSpec>> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({p, f});
    if (it != cache.end()) {
      if (it->second->q() > bound) throw ResourceError("field order exceeds bound");
      return it->second;
    }
  }
  auto F = std::make_shared<const FieldSpec>(p, f, bound);
  std::lock_guard<std::mutex> lock(mu);
  auto [it, inserted] = cache.emplace(std::make_pair(p, f), F);
  return it->second;
}

std::shared_ptr<const FieldSpec> field_of_order(std::uint32_t q, std::uint32_t bound) {
  if (q < 2) throw DomainError("field order must be at least 2");
  std::uint32_t p = 2;
  while (q % p) ++p;
  std::uint32_t f = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++f;
  }
  if (r != 1) throw DomainError(std::to_string(q) + " is not a prime power");
  return build_field(p, f, bound);
}

// ---- characters -----------------------------------------------------------

MultCharacter::MultCharacter(const FieldSpec& F, std::int64_t exponent) : field(&F) {
  const std::int64_t M = F.order();
  const std::int64_t r = exponent % M;
  m = static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

std::uint32_t MultCharacter::order() const { return field->order() / static_cast<std::uint32_t>(gcd_u64(m, field->order())); }

std::int64_t MultCharacter::value_exp(FqElem x) const {
  const std::int64_t k = field->dlog_or_neg(x);
  if (k < 0) return -1;
  return static_cast<std::int64_t>((static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(k)) % field->order());
}

CycNum MultCharacter::operator()(FqElem x) const {
  const std::int64_t e = value_exp(x);
  if (e < 0) return CycNum(field->order());
  return CycNum::zeta(field->order(), e);
}

int MultCharacter::at_minus_one() const {
  const std::uint64_t e = static_cast<std::uint64_t>(m) * field->dlog_minus_one() % field->order();
  return e == 0 ? 1 : -1;
}

MultCharacter MultCharacter::operator*(const MultCharacter& o) const {
  if (field != o.field) throw DomainError("characters of different fields");
  return MultCharacter(*field, static_cast<std::int64_t>(m) + o.m);
}

MultCharacter MultCharacter::conj() const { return MultCharacter(*field, -static_cast<std::int64_t>(m)); }

MultCharacter MultCharacter::pow(std::int64_t k) const {
  return MultCharacter(*field, static_cast<std::int64_t>(m) * (k % static_cast<std::int64_t>(field->order())));
}

MultCharacter power_residue_character(const FieldSpec& F, std::uint32_t N) {
  if (N == 0 || F.order() % N) throw DomainError("N must divide q-1");
  return MultCharacter(F, F.order() / N);
}

AddCharacter::AddCharacter(const FieldSpec& F, FqElem c) : field(&F), twist(c) {
  if (c.code == 0 || c.code >= F.q()) throw DomainError("additive twist must be a nonzero field element");
}

CycNum AddCharacter::operator()(FqElem x) const { return CycNum::zeta(field->p(), value_exp(x)); }

}  // namespace hgf
