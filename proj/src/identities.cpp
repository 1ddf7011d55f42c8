#include "hgf/identities.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "hgf/charsum.hpp"
#include "hgf/errors.hpp"

namespace hgf {

namespace {

std::uint32_t mod_u(std::int64_t k, std::uint32_t M) {
  const std::int64_t r = k % static_cast<std::int64_t>(M);
  return static_cast<std::uint32_t>(r < 0 ? r + M : r);
}

const char* kCharacterPrecondition = "character precondition";
const char* kArgument = "argument in {0,1}";
const char* kDenominator = "denominator zero";

CaseResult skip(const char* reason) {
  CaseResult r;
  r.status = CaseStatus::Skipped;
  r.reason = reason;
  return r;
}

CaseResult compare(const CycNum& lhs, const CycNum& rhs) {
  CaseResult r;
  r.status = lhs == rhs ? CaseStatus::Verified : CaseStatus::Exceptional;
  r.lhs = lhs;
  r.rhs = rhs;
  return r;
}

CaseResult compare(const FastCyc& lhs, const FastCyc& rhs) {
  CaseResult r;
  r.status = lhs == rhs ? CaseStatus::Verified : CaseStatus::Exceptional;
  r.lhs = lhs.to_cycnum();
  r.rhs = rhs.to_cycnum();
  return r;
}

Mismatch make_mismatch(const CaseResult& r, std::uint32_t q, const std::string& inputs) {
  return {q, inputs, r.lhs.str(), r.rhs.str()};
}

struct TransformInfo {
  std::uint32_t divisor;  // required divisor of q-1
  bool parametric;        // ranges over s
  bool boundary_at_2s;    // boundary when 2s = 0 (else when s = 0)
};

const std::map<std::string, TransformInfo>& transforms() {
  static const std::map<std::string, TransformInfo> t = {
      {"quad-double-param", {2, true, true}}, {"quad-square-arg", {2, true, true}},
      {"quad-opposite", {2, true, true}},     {"quad-neg-arg", {2, true, true}},
      {"quad-equal-square", {2, true, false}}, {"quad-quarter", {4, false, false}},
      {"quartic-half", {2, false, false}},    {"quartic-quarter", {4, false, false}},
      {"cubic", {3, false, false}},
  };
  return t;
}

}  // namespace

// ---- DictionaryContext ----------------------------------------------------

DictionaryContext::DictionaryContext(std::shared_ptr<const FieldSpec> field, std::uint32_t N)
    : field_(std::move(field)), N_(N) {
  if (!field_) throw DomainError("dictionary has no field");
  if (N_ == 0 || field_->order() % N_) throw DomainError("N must divide q-1");
}

bool DictionaryContext::defined(const Rational& s) const {
  Rational t = s * Rational(N_);
  t.canonicalize();
  return t.get_den() == 1;
}

std::uint32_t DictionaryContext::exponent(const Rational& s) const {
  if (!defined(s)) throw DomainError("chi_s undefined: s is not in (1/N)Z");
  Rational t = s * Rational(field_->order());
  t.canonicalize();
  const BigInt M = field_->order();
  BigInt e = t.get_num() % M;
  if (e < 0) e += M;
  return static_cast<std::uint32_t>(e.get_ui());
}

// ---- VerificationReport ---------------------------------------------------

void VerificationReport::add(const CaseResult& r, std::uint32_t q, const std::string& inputs) {
  ++grid_size;
  switch (r.status) {
    case CaseStatus::Verified:
      ++verified;
      break;
    case CaseStatus::Skipped:
      ++skipped;
      ++skip_reasons[r.reason];
      break;
    case CaseStatus::Exceptional:
      ++exceptional;
      if (mismatches.size() < kMaxStored) mismatches.push_back(make_mismatch(r, q, inputs));
      break;
  }
}

void VerificationReport::add_boundary(const CaseResult& r, std::uint32_t q, const std::string& inputs) {
  if (r.status == CaseStatus::Skipped) return;
  ++boundary_checked;
  if (r.status == CaseStatus::Exceptional) {
    ++boundary_exceptional;
    if (boundary_mismatches.size() < kMaxStored) boundary_mismatches.push_back(make_mismatch(r, q, inputs));
  }
}

void VerificationReport::merge(const VerificationReport& o) {
  grid_size += o.grid_size;
  verified += o.verified;
  skipped += o.skipped;
  exceptional += o.exceptional;
  for (const auto& [k, v] : o.skip_reasons) skip_reasons[k] += v;
  for (const auto& m : o.mismatches)
    if (mismatches.size() < kMaxStored) mismatches.push_back(m);
  boundary_checked += o.boundary_checked;
  boundary_exceptional += o.boundary_exceptional;
  for (const auto& m : o.boundary_mismatches)
    if (boundary_mismatches.size() < kMaxStored) boundary_mismatches.push_back(m);
  fields.insert(fields.end(), o.fields.begin(), o.fields.end());
  for (const auto& [k, v] : o.fields_skipped) fields_skipped[k] = v;
}

// ---- IdentityChecker ------------------------------------------------------

IdentityChecker::IdentityChecker(std::shared_ptr<const FieldSpec> field)
    : field_(field), engine_(field), M_(field->order()), zero_(FastCyc::zero(field->order())) {}

const FastCyc& IdentityChecker::F(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda) {
  if (lambda.code == 0) return zero_;
  const std::uint64_t key = (static_cast<std::uint64_t>(mod_u(a, M_)) * M_ + mod_u(b, M_)) * M_ + mod_u(c, M_);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, engine_.row(a, b, c)).first;
  return it->second[field_->dlog(lambda)];
}

CaseResult IdentityChecker::euler(std::int64_t a_in, std::int64_t b_in, std::int64_t c_in, FqElem lambda) {
  const std::uint32_t a = mod_u(a_in, M_), b = mod_u(b_in, M_), c = mod_u(c_in, M_);
  if (a == 0 || a == c || b == 0 || b == c) return skip(kCharacterPrecondition);
  if (lambda == field_->one()) return skip(kArgument);
  const FqElem w = field_->sub(field_->one(), lambda);
  const FastCyc& lhs = F(a, b, c, lambda);
  const FastCyc rhs = F(std::int64_t(c) - a, std::int64_t(c) - b, c, lambda)
                          .times_zeta((std::int64_t(c) - a - b) * std::int64_t(field_->dlog(w)));
  return compare(lhs, rhs);
}

CaseResult IdentityChecker::pfaff(std::int64_t a_in, std::int64_t b_in, std::int64_t c_in, FqElem lambda) {
  const std::uint32_t a = mod_u(a_in, M_), b = mod_u(b_in, M_), c = mod_u(c_in, M_);
  if (a == 0 || a == c || b == 0 || b == c) return skip(kCharacterPrecondition);
  if (lambda == field_->one()) return skip(kArgument);
  const FieldSpec& K = *field_;
  const FqElem w = K.sub(K.one(), lambda);
  const FqElem arg = K.div(lambda, K.sub(lambda, K.one()));
  const FastCyc& lhs = F(a, b, c, lambda);
  const FastCyc rhs = F(a, std::int64_t(c) - b, c, arg).times_zeta(-std::int64_t(a) * K.dlog(w));
  return compare(lhs, rhs);
}

CaseResult IdentityChecker::transformation(const std::string& id, std::int64_t m_in, FqElem l) {
  const auto it = transforms().find(id);
  if (it == transforms().end()) throw DomainError("unknown transformation id: " + id);
  if (M_ % it->second.divisor) return skip("q-1 not divisible by required order");
  const FieldSpec& K = *field_;
  const std::int64_t M = M_, m = mod_u(m_in, M_), half = M / 2, quarter = M / 4, third = M / 3;
  const FqElem one = K.one();
  auto bad = [&](FqElem x) { return x.code == 0 || x == one; };
  auto Fz = [&](std::int64_t a, std::int64_t b, FqElem x) -> const FastCyc& { return F(a, b, 0, x); };
  // chi_e(x) times v, for x != 0.
  auto K_times = [&](std::int64_t e, FqElem x, const FastCyc& v) { return v.times_zeta(e * std::int64_t(K.dlog(x))); };
  auto sq = [&](FqElem x) { return K.mul(x, x); };

  const FqElem onepl = K.add(one, l);
  if (id == "quad-double-param" || id == "quad-neg-arg" || id == "quad-equal-square" || id == "quad-square-arg" ||
      id == "quartic-half" || id == "quartic-quarter") {
    if (onepl.code == 0) return skip(kDenominator);
    const FqElem r = K.div(K.sub(one, l), onepl);
    const FqElem r2 = sq(r), r4 = sq(r2);
    const FqElem t2 = K.sub(one, r2), t1 = K.sub(one, r), t4 = K.sub(one, r4);
    if (id == "quad-double-param") {
      if (bad(l) || bad(t2)) return skip(kArgument);
      return compare(K_times(2 * m, onepl, Fz(2 * m, 2 * m, l)), Fz(m, m + half, t2));
    }
    if (id == "quad-neg-arg") {
      const FqElem nl = K.neg(l);
      if (bad(nl) || bad(t2)) return skip(kArgument);
      return compare(K_times(2 * m, onepl, Fz(2 * m, 2 * m, nl)), Fz(m, half - m, t2));
    }
    if (id == "quad-equal-square") {
      const FqElem l2 = sq(l);
      if (bad(l2) || bad(t2)) return skip(kArgument);
      return compare(K_times(2 * m, onepl, Fz(m, m, l2)), Fz(m, half, t2));
    }
    if (id == "quad-square-arg") {
      const FqElem l2 = sq(l);
      if (bad(l2) || bad(t1)) return skip(kArgument);
      return compare(K_times(2 * m, onepl, Fz(m, m + half, l2)), Fz(2 * m, half, t1));
    }
    if (id == "quartic-half") {
      const FqElem l4 = sq(sq(l));
      if (bad(l4) || bad(t4)) return skip(kArgument);
      return compare(Fz(half, half, l4), Fz(half, half, t4));
    }
    // quartic-quarter
    const FqElem nl2 = K.neg(sq(l));
    if (bad(nl2) || bad(t4)) return skip(kArgument);
    return compare(Fz(half, half, nl2), Fz(quarter, half, t4));
  }
  if (id == "quad-opposite") {
    const FqElem u = K.sub(one, K.add(l, l));
    const FqElem t = K.sub(one, sq(u));
    if (bad(l) || bad(t)) return skip(kArgument);
    return compare(Fz(2 * m, -2 * m, l), Fz(m, half - m, t));
  }
  if (id == "quad-quarter") {
    const FqElem den = K.add(one, K.mul(K.from_int(3), l));
    if (den.code == 0) return skip(kDenominator);
    const FqElem t = K.sub(one, sq(K.div(K.sub(one, l), den)));
    const FqElem l2 = sq(l);
    if (bad(l2) || bad(t)) return skip(kArgument);
    return compare(K_times(half, den, Fz(quarter, 3 * quarter, l2)), Fz(quarter, 3 * quarter, t));
  }
  // cubic
  const FqElem den = K.add(one, K.add(l, l));
  if (den.code == 0) return skip(kDenominator);
  const FqElem r = K.div(K.sub(one, l), den);
  const FqElem t = K.sub(one, K.mul(r, sq(r)));
  const FqElem l3 = K.mul(l, sq(l));
  if (bad(l3) || bad(t)) return skip(kArgument);
  return compare(Fz(third, 2 * third, l3), Fz(third, 2 * third, t));
}

CaseResult IdentityChecker::kummer(std::int64_t a_in, std::int64_t b_in) {
  if (field_->p() == 2) return skip("even characteristic");
  const std::int64_t M = M_, a = mod_u(a_in, M_), b = mod_u(b_in, M_);
  const FqElem minus_one = field_->neg(field_->one());
  const CycNum lhs = F(2 * a, b, 2 * a - b, minus_one).to_cycnum();
  // g°(a2 - b) g(a') / (g(a2) g°(a' - b)) = J'(a', -b) / J'(a2, -b), with J'(x,y) = g(x)g(y)/g°(x+y).
  auto jac = [&](std::int64_t x, std::int64_t y) {
    return CycNum::from_int_poly(M_, engine_.scaled_jacobi(mod_u(x, M_), mod_u(y, M_)));
  };
  const CycNum den = jac(2 * a, -b);
  CycNum rhs(M_);
  for (std::int64_t root : {a, a + M / 2}) rhs += jac(root, -b) / den;
  return compare(lhs, rhs);
}

CaseResult IdentityChecker::kummer_special(std::int64_t a_in, bool boundary_values) {
  if (field_->p() == 2) return skip("even characteristic");
  const std::int64_t M = M_, a = mod_u(a_in, M_);
  const FieldSpec& K = *field_;
  const FqElem minus_one = K.neg(K.one());
  const CycNum lhs = F(2 * a, 2 * a, 0, minus_one).to_cycnum();
  CycNum rhs(M_);
  for (std::int64_t root : {a, (a + M / 2) % M}) {
    const MultCharacter al(K, root);
    const Rational sign(al.at_minus_one());
    if (boundary_values && root == 0) {
      rhs += CycNum(M_, 1);
    } else if (boundary_values && root == M / 2) {
      rhs += CycNum(M_, sign * sign * Rational(K.q()));
    } else {
      rhs += jacobi_sum(al, al) * sign;
    }
  }
  return compare(lhs, rhs);
}

// ---- grids ----------------------------------------------------------------

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = {"euler",           "pfaff",           "quad-double-param",
                                               "quad-square-arg", "quad-opposite",   "quad-neg-arg",
                                               "quad-equal-square", "quad-quarter",  "quartic-half",
                                               "quartic-quarter", "cubic",           "kummer",
                                               "kummer-special"};
  return ids;
}

bool is_identity_id(const std::string& id) {
  const auto& ids = identity_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

std::vector<std::uint32_t> field_orders_up_to(std::uint32_t q_max) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t q = 3; q <= q_max; ++q) {
    std::uint32_t p = 2;
    while (q % p) ++p;
    std::uint32_t r = q;
    while (r % p == 0) r /= p;
    if (r == 1) out.push_back(q);
  }
  return out;
}

namespace {

std::string params(std::initializer_list<std::pair<const char*, std::int64_t>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << "=" << v;
    first = false;
  }
  return os.str();
}

VerificationReport verify_field(const std::string& id, std::uint32_t q) {
  VerificationReport rep;
  rep.id = id;
  const auto F = field_of_order(q);
  const std::uint32_t M = F->order();
  const auto tr = transforms().find(id);
  if ((id == "kummer" || id == "kummer-special") && F->p() == 2) {
    rep.fields_skipped[q] = "even characteristic";
    return rep;
  }
  if (tr != transforms().end() && M % tr->second.divisor) {
    rep.fields_skipped[q] = "q-1 not divisible by " + std::to_string(tr->second.divisor);
    return rep;
  }
  rep.fields.push_back(q);
  IdentityChecker chk(F);
  if (id == "euler" || id == "pfaff") {
    const bool euler = id == "euler";
    for (std::uint32_t c = 0; c < M; ++c) {
      chk.clear_cache();
      for (std::uint32_t a = 0; a < M; ++a)
        for (std::uint32_t b = 0; b < M; ++b)
          for (std::uint32_t l = 0; l < q; ++l) {
            const CaseResult r = euler ? chk.euler(a, b, c, {l}) : chk.pfaff(a, b, c, {l});
            rep.add(r, q, params({{"q", q}, {"a", a}, {"b", b}, {"c", c}, {"lambda", l}}));
          }
    }
  } else if (tr != transforms().end()) {
    const TransformInfo& info = tr->second;
    const std::uint32_t ms = info.parametric ? M : 1;
    for (std::uint32_t m = 0; m < ms; ++m) {
      const bool boundary = info.parametric && (info.boundary_at_2s ? (2 * m) % M == 0 : m == 0);
      for (std::uint32_t l = 0; l < q; ++l) {
        const CaseResult r = chk.transformation(id, m, {l});
        const std::string in = params({{"q", q}, {"s_exp", m}, {"lambda", l}});
        if (boundary)
          rep.add_boundary(r, q, in);
        else
          rep.add(r, q, in);
      }
    }
  } else if (id == "kummer") {
    for (std::uint32_t a = 0; a < M; ++a) {
      chk.clear_cache();
      for (std::uint32_t b = 0; b < M; ++b) rep.add(chk.kummer(a, b), q, params({{"q", q}, {"a", a}, {"b", b}}));
    }
  } else if (id == "kummer-special") {
    for (std::uint32_t a = 0; a < M; ++a) {
      const std::string in = params({{"q", q}, {"a", a}});
      if ((2 * a) % M == 0)
        rep.add_boundary(chk.kummer_special(a, true), q, in);
      else
        rep.add(chk.kummer_special(a), q, in);
    }
  } else {
    throw DomainError("unknown identity id: " + id);
  }
  return rep;
}

}  // namespace

VerificationReport verify_identity(const std::string& id, const std::vector<std::uint32_t>& field_orders) {
  if (!is_identity_id(id)) throw DomainError("unknown identity id: " + id);
  VerificationReport rep;
  rep.id = id;
  for (std::uint32_t q : field_orders) rep.merge(verify_field(id, q));
  return rep;
}

}  // namespace hgf
