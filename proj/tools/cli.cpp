#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <numeric>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgf/analytic.hpp"
#include "hgf/charsum.hpp"
#include "hgf/curves.hpp"
#include "hgf/errors.hpp"
#include "hgf/hgf_finite.hpp"
#include "hgf/homology.hpp"
#include "hgf/identities.hpp"

namespace hgf::cli {

using nlohmann::json;

namespace {

// ---- serialization ----

json big_json(const BigInt& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json cyc_json(const CycNum& x) {
  json coeffs = json::array();
  for (const Rational& c : x.coeffs()) coeffs.push_back(json::array({big_json(c.get_num()), big_json(c.get_den())}));
  return {{"level", x.level()}, {"coeffs", coeffs}};
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string fixed(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15e", x);
  return buf;
}

const char* status_name(bool ok) { return ok ? "verified" : "exceptional"; }

// ---- parsing ----

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::int64_t parse_int(const std::string& s) {
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("not an integer: '" + s + "'");
  return v;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + s + "'");
  }
  if (pos != s.size()) throw DomainError("not a number: '" + s + "'");
  return v;
}

// "re" or "re,im".
Complex parse_complex(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() == 1) return parse_double(parts[0]);
  if (parts.size() == 2) return {parse_double(parts[0]), parse_double(parts[1])};
  throw DomainError("complex numbers are written re or re,im: '" + s + "'");
}

// Integers, fractions n/d and finite decimals, all exact.
Rational parse_rational(const std::string& s0) {
  const std::string s = trim(s0);
  if (s.empty()) throw DomainError("empty rational");
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    const std::size_t scale = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits.find_first_not_of("-0123456789") != std::string::npos ||
        digits.find('-', 1) != std::string::npos)
      throw DomainError("not a rational: '" + s + "'");
    Rational r(BigInt(digits), BigInt("1" + std::string(scale, '0')));
    r.canonicalize();
    return r;
  }
  Rational r;
  if (r.set_str(s, 10) != 0) throw DomainError("not a rational: '" + s + "'");
  if (r.get_den() == 0) throw DomainError("zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

std::vector<std::int64_t> parse_int_list(const std::string& s) {
  std::vector<std::int64_t> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_int(t));
  return out;
}

// ---- parallel helper: results in index order, first exception by index rethrown ----

template <class R>
std::vector<R> parallel_collect(std::size_t n, unsigned threads, const std::function<R(std::size_t)>& task) {
  std::vector<std::optional<R>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned t = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < t; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

// ---- options ----

struct Options {
  // global
  std::string config, format = "json", output;
  bool reproducible = false;
  unsigned threads = 1;
  // field
  std::optional<std::uint32_t> p, q;
  std::uint32_t f = 1;
  std::optional<std::string> lambda;
  std::string lambda_coeffs;
  // characters
  std::optional<std::int64_t> m, m1, m2;
  std::int64_t a = 1, b = 1, gamma = 0;
  std::optional<std::int64_t> ta, tb;
  bool with_float = false;
  // curves
  std::uint32_t N = 2, d = 1;
  bool projective = false, hypersurface = false;
  std::uint32_t p_min = 2, p_max = 0;
  // identities
  std::vector<std::string> identities;
  std::uint32_t q_max = 49;
  std::vector<std::uint32_t> q_list;
  // homology
  std::vector<std::uint32_t> N_list;
  std::uint32_t N_max = 6, bound = 8;
  // analytic
  std::uint32_t ua = 1, ub = 1;
  double epsilon = 0.01, tol = 1e-8, mono_tol = 1e-6, base = 0.5;
  std::uint32_t samples = 4096;
  std::string pa, pb, pc, from = "0.5", to, via, loop_center;
  double loop_radius = 0.0;
  int turns = 1;
  bool clockwise = false;
};

struct Report {
  json params = json::object();
  json results = json::array();
  std::uint64_t verified = 0, skipped = 0, exceptional = 0;
  std::optional<std::string> csv;
  void count(bool ok) { ok ? ++verified : ++exceptional; }
};

std::shared_ptr<const FieldSpec> resolve_field(const Options& o, Report& r) {
  std::shared_ptr<const FieldSpec> F;
  if (o.q) {
    if (o.p) throw DomainError("give either --q or --p/--f, not both");
    F = field_of_order(*o.q);
  } else if (o.p) {
    F = build_field(*o.p, o.f);
  } else {
    throw DomainError("a field is required: --p [--f] or --q");
  }
  r.params["p"] = F->p();
  r.params["f"] = F->f();
  r.params["q"] = F->q();
  return F;
}

FqElem resolve_lambda(const Options& o, const FieldSpec& F, Report& r) {
  if (!o.lambda_coeffs.empty()) {
    if (o.lambda) throw DomainError("give either --lambda or --lambda-coeffs, not both");
    const auto c = parse_int_list(o.lambda_coeffs);
    if (c.size() > F.f()) throw DomainError("too many lambda coefficients for the field degree");
    r.params["lambda_coeffs"] = c;
    return F.from_coeffs(c);
  }
  if (!o.lambda) throw DomainError("--lambda is required");
  const std::int64_t v = parse_int(*o.lambda);
  r.params["lambda"] = v;
  return F.from_int(v);
}

// ---- commands ----

Report cmd_gauss(const Options& o) {
  Report r;
  const auto F = resolve_field(o, r);
  std::vector<std::int64_t> ms;
  if (o.m) {
    ms.push_back(*o.m);
    r.params["m"] = *o.m;
  } else {
    for (std::uint32_t m = 0; m < F->order(); ++m) ms.push_back(m);
  }
  for (std::int64_t m : ms) {
    const MultCharacter chi(*F, m);
    const CycNum g = gauss_sum(chi);
    const CycNum lhs = g * gauss_sum_variant(chi.conj());
    const bool ok = lhs == CycNum(1, Rational(static_cast<long>(F->q()) * chi.at_minus_one()));
    r.count(ok);
    r.results.push_back({{"m", chi.m}, {"gauss", cyc_json(g)}, {"approx", complex_json(embed_complex(g))},
                         {"reflection", status_name(ok)}});
  }
  return r;
}

Report cmd_jacobi(const Options& o) {
  Report r;
  const auto F = resolve_field(o, r);
  if (o.m1.has_value() != o.m2.has_value()) throw DomainError("give both --m1 and --m2, or neither");
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  if (o.m1) {
    pairs.emplace_back(*o.m1, *o.m2);
    r.params["m1"] = *o.m1;
    r.params["m2"] = *o.m2;
  } else {
    for (std::uint32_t x = 0; x < F->order(); ++x)
      for (std::uint32_t y = 0; y < F->order(); ++y) pairs.emplace_back(x, y);
  }
  for (auto [x, y] : pairs) {
    const MultCharacter c1(*F, x), c2(*F, y);
    const CycNum j = jacobi_sum(c1, c2);
    json row = {{"m1", c1.m}, {"m2", c2.m}, {"jacobi", cyc_json(j)}, {"approx", complex_json(embed_complex(j))}};
    if (c1.is_trivial() && c2.is_trivial()) {
      ++r.skipped;
      row["relation"] = "skipped";
    } else {
      const std::int64_t s = static_cast<std::int64_t>(c1.m) + c2.m;
      const bool ok = j == gauss_product(*F, {{c1.m, false, false}, {c2.m, false, false}, {s, true, true}});
      r.count(ok);
      row["relation"] = status_name(ok);
    }
    r.results.push_back(row);
  }
  return r;
}

Report cmd_hgf(const Options& o) {
  Report r;
  const auto F = resolve_field(o, r);
  const FqElem lam = resolve_lambda(o, *F, r);
  r.params["a"] = o.a;
  r.params["b"] = o.b;
  r.params["gamma"] = o.gamma;
  const CycNum v = hgf2f1(MultCharacter(*F, o.a), MultCharacter(*F, o.b), MultCharacter(*F, o.gamma), lam);
  const CycNum fast = HgfEngine(F).value(o.a, o.b, o.gamma, lam).to_cycnum();
  const bool ok = coerce_level(fast, v.level()) == v;
  r.count(ok);
  json row = {{"value", cyc_json(v)}, {"engine_agrees", ok}};
  if (o.with_float) row["approx"] = complex_json(embed_complex(v));
  r.results.push_back(row);
  return r;
}

Report cmd_count(const Options& o) {
  Report r;
  const auto F = resolve_field(o, r);
  const FqElem lam = resolve_lambda(o, *F, r);
  r.params["N"] = o.N;
  if (o.hypersurface) {
    r.params["hypersurface"] = true;
    r.params["d"] = o.d;
    HypersurfaceSpec spec{o.d, o.N, F, lam};
    spec.validate();
    const std::uint64_t n = count_hypersurface_points(spec);
    CycNum sum(1);
    std::vector<std::int64_t> idx(o.d + 1, 0);
    while (true) {
      sum += eigencount_hypersurface(spec, idx);
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == static_cast<std::int64_t>(o.N)) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    const bool ok = sum.is_rational() && sum.coeff(0) == Rational(static_cast<unsigned long>(n));
    r.count(ok);
    r.results.push_back({{"count", n}, {"eigencount_sum", cyc_json(sum)}, {"decomposition", status_name(ok)}});
    return r;
  }
  r.params["projective"] = o.projective;
  CurveSpec spec{o.N, F, lam};
  spec.validate();
  const std::uint64_t n = count_points(spec, o.projective);
  const std::uint64_t proj = o.projective ? n : count_points(spec, true);
  CycNum sum(1);
  for (std::uint32_t a = 0; a < o.N; ++a)
    for (std::uint32_t b = 0; b < o.N; ++b) sum += eigencount(spec, a, b);
  const bool ok = sum.is_rational() && sum.coeff(0) == Rational(static_cast<unsigned long>(proj));
  r.count(ok);
  r.results.push_back({{"count", n}, {"projective_count", proj}, {"eigencount_sum", cyc_json(sum)},
                       {"decomposition", status_name(ok)}});
  return r;
}

// Independent check of one interpolation row over F_p.
bool check_trace_row(const InterpolationTable& t, const InterpolationRow& row) {
  const auto F = build_field(row.p, 1);
  const FqElem lam = reduce_rational(*F, t.lambda);
  const std::uint32_t N = t.N;
  const std::int64_t a = t.a % N, b = t.b % N;
  if (a == 0 && b == 0) return row.value == CycNum(N, Rational(static_cast<long>(row.p) + 1));
  if (a == 0 || b == 0) {
    // F(alpha, eps; eps; l) = 1 + p conj(alpha)(1 - l)
    const std::int64_t e = -(a + b) * static_cast<std::int64_t>((row.p - 1) / N);
    CycNum expect = MultCharacter(*F, e)(F->sub(F->one(), lam)) * Rational(static_cast<long>(row.p));
    expect += CycNum(F->order(), Rational(1));
    return coerce_level(expect, N) == row.value;
  }
  const CurveSpec spec{N, F, lam};
  return -eigencount(spec, a, b) == row.value;
}

Report cmd_trace_table(const Options& o) {
  Report r;
  if (!o.lambda) throw DomainError("--lambda is required (a rational such as -1 or 3/2)");
  if (o.p_max == 0) throw DomainError("--p-max is required");
  const Rational lam = parse_rational(*o.lambda);
  const std::int64_t a = o.ta.value_or(o.N == 1 ? 0 : 1), b = o.tb.value_or(o.N == 1 ? 0 : 1);
  const InterpolationTable t = interpolation_table(o.N, lam, o.p_min, o.p_max, a, b);
  r.params = {{"N", o.N}, {"lambda", lam.get_str()}, {"p_min", o.p_min}, {"p_max", o.p_max}, {"a", t.a}, {"b", t.b}};
  std::ostringstream csv;
  csv << "p,a,b,value_exact,value_float_re,value_float_im\n";
  for (const auto& row : t.rows) {
    const bool ok = check_trace_row(t, row);
    r.count(ok);
    r.results.push_back({{"p", row.p}, {"a", t.a}, {"b", t.b}, {"value", cyc_json(row.value)},
                         {"value_exact", row.value.str()}, {"approx", complex_json(row.approx)},
                         {"check", status_name(ok)}});
    csv << row.p << ',' << t.a << ',' << t.b << ",\"" << row.value.str() << "\"," << fixed(row.approx.real()) << ','
        << fixed(row.approx.imag()) << '\n';
  }
  json skipped = json::array();
  for (const auto& s : t.skipped) skipped.push_back({{"p", s.p}, {"reason", s.reason}});
  r.params["skipped_primes"] = skipped;
  r.skipped = t.skipped.size();
  r.csv = csv.str();
  return r;
}

json mismatches_json(const std::vector<Mismatch>& ms) {
  json out = json::array();
  for (const auto& m : ms) out.push_back({{"q", m.q}, {"inputs", m.inputs}, {"lhs", m.lhs}, {"rhs", m.rhs}});
  return out;
}

json report_json(const VerificationReport& v) {
  json fs = json::object();
  for (const auto& [q, why] : v.fields_skipped) fs[std::to_string(q)] = why;
  return {{"id", v.id},
          {"grid_size", v.grid_size},
          {"verified", v.verified},
          {"skipped", v.skipped},
          {"exceptional", v.exceptional},
          {"skip_reasons", v.skip_reasons},
          {"mismatches", mismatches_json(v.mismatches)},
          {"boundary_checked", v.boundary_checked},
          {"boundary_exceptional", v.boundary_exceptional},
          {"boundary_mismatches", mismatches_json(v.boundary_mismatches)},
          {"fields", v.fields},
          {"fields_skipped", fs}};
}

Report cmd_verify(const Options& o) {
  Report r;
  std::vector<std::string> ids = o.identities;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = identity_ids();
  for (const auto& id : ids)
    if (!is_identity_id(id)) throw DomainError("unknown identity '" + id + "'");
  const std::vector<std::uint32_t> qs = o.q_list.empty() ? field_orders_up_to(o.q_max) : o.q_list;
  r.params = {{"identities", ids}, {"fields", qs}};
  if (o.q_list.empty()) r.params["q_max"] = o.q_max;
  const auto reports = parallel_collect<VerificationReport>(
      ids.size(), o.threads, [&](std::size_t i) { return verify_identity(ids[i], qs); });
  for (const auto& v : reports) {
    r.verified += v.verified;
    r.skipped += v.skipped;
    r.exceptional += v.exceptional + v.boundary_exceptional;
    r.results.push_back(report_json(v));
  }
  return r;
}

json homology_for(std::uint32_t N, std::uint32_t bound, std::uint64_t& ver, std::uint64_t& exc) {
  json out = {{"N", N}};
  const IntersectionBlock ib = intersection_block(N);
  const bool det_ok = abs(ib.det) == 1;
  det_ok ? ++ver : ++exc;
  out["intersection_det"] = big_json(ib.det);
  out["intersection_unimodular"] = det_ok;
  const MonodromyReport m = verify_monodromy_relations(N, bound);
  json rel = json::array();
  for (const auto& c : m.checks) {
    c.holds ? ++ver : ++exc;
    rel.push_back({{"relation", c.relation}, {"modulo_ideal", c.modulo_ideal}, {"status", status_name(c.holds)}});
  }
  out["relations"] = rel;
  out["recorded"] = {{"unipotent_T0_unquotiented", m.unipotent_T0_unquotiented},
                     {"unipotent_T1_unquotiented", m.unipotent_T1_unquotiented},
                     {"tinf_quasi_unipotent", m.tinf_quasi_unipotent}};
  json units = json::array();
  for (std::int64_t c = 1; c < static_cast<std::int64_t>(N); ++c) {
    if (std::gcd(c, static_cast<std::int64_t>(N)) != 1) continue;
    std::int64_t cbar = 1;
    while ((cbar * c) % N != 1 % static_cast<std::int64_t>(N)) ++cbar;
    for (auto [x, name] : {std::pair{UnitVariable::Xi, "xi"}, std::pair{UnitVariable::Eta, "eta"}}) {
      const bool ok = (cyclotomic_unit(cbar, x, N, c) * cyclotomic_unit(c, x, N)).is_one();
      ok ? ++ver : ++exc;
      units.push_back({{"c", c}, {"c_inverse", cbar}, {"variable", name}, {"status", status_name(ok)}});
    }
  }
  out["cyclotomic_unit_inverse"] = units;
  return out;
}

Report cmd_homology(const Options& o) {
  Report r;
  std::vector<std::uint32_t> Ns = o.N_list;
  if (Ns.empty())
    for (std::uint32_t N = 2; N <= o.N_max; ++N) Ns.push_back(N);
  for (std::uint32_t N : Ns)
    if (N < 1) throw DomainError("N must be positive");
  r.params = {{"N", Ns}, {"bound", o.bound}};
  struct Part {
    json j;
    std::uint64_t ver = 0, exc = 0;
  };
  const auto parts = parallel_collect<Part>(Ns.size(), o.threads, [&](std::size_t i) {
    Part p;
    p.j = homology_for(Ns[i], o.bound, p.ver, p.exc);
    return p;
  });
  for (const auto& p : parts) {
    r.verified += p.ver;
    r.exceptional += p.exc;
    r.results.push_back(p.j);
  }
  return r;
}

json matrix_json(const Eigen::Matrix2cd& m) {
  return json::array({json::array({complex_json(m(0, 0)), complex_json(m(0, 1))}),
                      json::array({complex_json(m(1, 0)), complex_json(m(1, 1))})});
}

double rel_error(Complex x, Complex ref) { return std::abs(x - ref) / std::max(std::abs(ref), 1e-300); }

Report cmd_periods(const Options& o) {
  Report r;
  if (!o.lambda) throw DomainError("--lambda is required (re or re,im)");
  const Complex lam = parse_complex(*o.lambda);
  r.params = {{"N", o.N}, {"a", o.ua}, {"b", o.ub}, {"lambda", complex_json(lam)}, {"epsilon", o.epsilon},
              {"samples", o.samples}, {"tol", o.tol}};
  json row = json::object();
  const bool f_ok = std::abs(lam) <= 0.95, g_ok = std::abs(1.0 - lam) <= 0.95;
  if (f_ok && g_ok) {
    const Eigen::Matrix2cd pm = period_matrix(o.N, o.ua, o.ub, lam);
    row["period_matrix"] = matrix_json(pm);
    row["determinant"] = complex_json(pm.determinant());
  } else {
    row["period_matrix"] = nullptr;
  }
  if (f_ok) {
    ContourSpec cs;
    cs.N = o.N;
    cs.a = o.ua;
    cs.b = o.ub;
    cs.lambda = lam;
    cs.epsilon = o.epsilon;
    cs.samples = o.samples;
    const ContourResult c = contour_period_alpha(cs);
    const Complex f = period_f(o.N, o.ua, o.ub, lam).value;
    const double e = rel_error(c.value, f);
    r.count(e <= o.tol);
    row["contour_alpha"] = complex_json(c.value);
    row["f"] = complex_json(f);
    row["contour_rel_error"] = e;
    row["contour_refinements"] = c.refinements;
  } else {
    ++r.skipped;
    row["contour_alpha"] = nullptr;
  }
  if (std::abs(1.0 - lam) < 1.0 && g_ok) {
    const Complex d = path_period_delta(o.N, o.ua, o.ub, lam);
    const Complex g = period_g(o.N, o.ua, o.ub, lam).value;
    const double e = rel_error(d, g);
    r.count(e <= o.tol);
    row["delta"] = complex_json(d);
    row["g"] = complex_json(g);
    row["delta_rel_error"] = e;
  } else {
    ++r.skipped;
    row["delta"] = nullptr;
  }
  r.results.push_back(row);
  return r;
}

Report cmd_monodromy_num(const Options& o) {
  Report r;
  r.params = {{"N", o.N}, {"a", o.ua}, {"b", o.ub}, {"base", o.base}, {"tol", o.mono_tol}};
  const NumericalMonodromy m = numerical_monodromy(o.N, o.ua, o.ub, o.base, o.mono_tol);
  r.count(m.err_f_at_0 <= o.mono_tol);
  r.count(m.err_g_at_0 <= o.mono_tol);
  r.count(m.err_at_1 <= o.mono_tol);
  r.results.push_back({{"f", complex_json(m.f)},
                       {"g", complex_json(m.g)},
                       {"f_around_0", complex_json(m.f_around_0)},
                       {"g_around_0", complex_json(m.g_around_0)},
                       {"f_around_1", complex_json(m.f_around_1)},
                       {"err_f_fixed_at_0", m.err_f_at_0},
                       {"err_g_gains_f_at_0", m.err_g_at_0},
                       {"lhs_at_1", complex_json(m.lhs_at_1)},
                       {"rhs_at_1", complex_json(m.rhs_at_1)},
                       {"err_at_1", m.err_at_1}});
  return r;
}

// True if the segment meets the real ray [1, inf).
bool crosses_cut(Complex A, Complex B) {
  if (A.imag() == 0.0 && A.real() >= 1.0) return true;
  if (B.imag() == 0.0 && B.real() >= 1.0) return true;
  if ((A.imag() > 0) == (B.imag() > 0) || A.imag() == B.imag()) return false;
  const double t = A.imag() / (A.imag() - B.imag());
  return A.real() + t * (B.real() - A.real()) >= 1.0;
}

Report cmd_continue(const Options& o) {
  Report r;
  if (o.pa.empty() || o.pb.empty() || o.pc.empty()) throw DomainError("--a, --b and --c are required");
  const HGFParams hp{parse_rational(o.pa), parse_rational(o.pb), parse_rational(o.pc)};
  hp.validate();
  const ComplexParams p = hp.embed();
  const Complex start = parse_complex(o.from);
  PathSpec path;
  if (!o.loop_center.empty()) {
    if (!o.to.empty() || !o.via.empty()) throw DomainError("a loop takes no --to or --via");
    const Complex c = parse_complex(o.loop_center);
    if (!(o.loop_radius > 0)) throw DomainError("--loop-radius must be positive");
    path = PathSpec::loop(c, o.loop_radius, 0.0, o.clockwise ? -1 : 1, o.turns);
    // Start the circle at the given base point when it lies on it.
    if (std::abs(std::abs(start - c) - o.loop_radius) > 1e-12)
      throw DomainError("--from must lie on the loop circle");
    path.circle->start_angle = std::arg(start - c);
  } else {
    if (o.to.empty()) throw DomainError("--to or --loop-center is required");
    std::vector<Complex> pts = {start};
    if (!o.via.empty())
      for (const auto& w : split(o.via, ';')) pts.push_back(parse_complex(w));
    pts.push_back(parse_complex(o.to));
    path = PathSpec::polyline(pts);
  }
  path.rel_tol = path.abs_tol = std::min(1e-13, o.tol * 1e-3);
  r.params = {{"a", hp.a.get_str()}, {"b", hp.b.get_str()}, {"c", hp.c.get_str()}, {"from", complex_json(start)},
              {"tol", o.tol}};
  if (path.circle)
    r.params["loop"] = {{"center", complex_json(path.circle->center)}, {"radius", path.circle->radius},
                        {"orientation", path.circle->orientation}, {"turns", path.circle->turns}};
  else {
    json w = json::array();
    for (Complex z : path.waypoints) w.push_back(complex_json(z));
    r.params["waypoints"] = w;
  }
  const ValueAndDerivative init = hgf_initial(p, start);
  const ValueAndDerivative end = hgf_continue(p, path, init);
  json row = {{"start", {{"value", complex_json(init.value)}, {"derivative", complex_json(init.derivative)}}},
              {"end_point", complex_json(path.end())},
              {"end", {{"value", complex_json(end.value)}, {"derivative", complex_json(end.derivative)}}}};
  // Reference when the principal branch is known: loops not enclosing 1 return the start value,
  // cut-free polylines ending in the series disk give the series value.
  std::optional<ValueAndDerivative> expect;
  if (path.circle) {
    if (std::abs(path.circle->center - 1.0) > path.circle->radius) expect = init;
  } else {
    bool cut = false;
    for (std::size_t i = 0; i + 1 < path.waypoints.size(); ++i) cut |= crosses_cut(path.waypoints[i], path.waypoints[i + 1]);
    if (!cut && std::abs(path.end()) <= 0.95) expect = hgf_initial(p, path.end());
  }
  if (expect) {
    const double e = std::max(rel_error(end.value, expect->value), rel_error(end.derivative, expect->derivative));
    r.count(e <= o.tol);
    row["reference_rel_error"] = e;
  } else {
    ++r.skipped;
    row["reference_rel_error"] = nullptr;
  }
  r.results.push_back(row);
  return r;
}

// ---- app assembly ----

struct Command {
  std::string name, help;
  std::function<Report(const Options&)> run;
  CLI::App* app = nullptr;
};

void add_field_options(CLI::App* s, Options& o, bool with_lambda) {
  s->add_option("--p", o.p, "characteristic");
  s->add_option("--f", o.f, "extension degree")->capture_default_str();
  s->add_option("--q", o.q, "field order (prime power)");
  if (with_lambda) {
    s->add_option("--lambda", o.lambda, "lambda as an integer representative");
    s->add_option("--lambda-coeffs", o.lambda_coeffs, "lambda as coefficients c0,c1,... of the field basis");
  }
}

std::vector<Command> build(CLI::App& app, Options& o) {
  app.add_option("--config", o.config, "key=value file; command-line flags take precedence");
  app.add_option("--format", o.format, "json | pretty | csv")->check(CLI::IsMember({"json", "pretty", "csv"}));
  app.add_option("--output", o.output, "write the report to this path");
  app.add_flag("--reproducible", o.reproducible, "report runtime_ms as 0");
  app.add_option("--threads", o.threads, "worker threads; results do not depend on it")->check(CLI::Range(1u, 256u));

  std::vector<Command> cmds = {
      {"gauss", "Gauss sums and the reflection check", cmd_gauss},
      {"jacobi", "Jacobi sums and the Gauss-sum relation", cmd_jacobi},
      {"hgf", "finite hypergeometric value F(a,b;gamma;lambda)", cmd_hgf},
      {"count", "point counts with the eigencount decomposition", cmd_count},
      {"trace-table", "interpolation table over a prime range", cmd_trace_table},
      {"verify", "identity verification reports", cmd_verify},
      {"homology", "intersection block, monodromy relations, cyclotomic units", cmd_homology},
      {"periods", "period matrix, alpha contour and delta path", cmd_periods},
      {"monodromy-num", "numerical local monodromy at 0 and 1", cmd_monodromy_num},
      {"continue", "analytic continuation of F along a path", cmd_continue},
  };
  for (auto& c : cmds) c.app = app.add_subcommand(c.name, c.help)->fallthrough();
  auto sub = [&](const std::string& n) {
    for (auto& c : cmds)
      if (c.name == n) return c.app;
    return static_cast<CLI::App*>(nullptr);
  };

  CLI::App* s = sub("gauss");
  add_field_options(s, o, false);
  s->add_option("--m", o.m, "character exponent (default: all)");

  s = sub("jacobi");
  add_field_options(s, o, false);
  s->add_option("--m1", o.m1, "first character exponent");
  s->add_option("--m2", o.m2, "second character exponent");

  s = sub("hgf");
  add_field_options(s, o, true);
  s->add_option("--a", o.a, "exponent of alpha")->capture_default_str();
  s->add_option("--b", o.b, "exponent of beta")->capture_default_str();
  s->add_option("--gamma", o.gamma, "exponent of gamma")->capture_default_str();
  s->add_flag("--float", o.with_float, "add the complex embedding");

  s = sub("count");
  add_field_options(s, o, true);
  s->add_option("--N", o.N, "level")->capture_default_str();
  s->add_flag("--projective", o.projective, "count the smooth projective curve");
  s->add_flag("--hypersurface", o.hypersurface, "count prod (1 - x_i^N) = lambda instead");
  s->add_option("--d", o.d, "hypersurface dimension")->capture_default_str();

  s = sub("trace-table");
  s->add_option("--N", o.N, "level")->capture_default_str();
  s->add_option("--lambda", o.lambda, "rational lambda");
  s->add_option("--p-min", o.p_min, "smallest prime")->capture_default_str();
  s->add_option("--p-max", o.p_max, "largest prime");
  s->add_option("--a", o.ta, "index a mod N (default 1, or 0 for N = 1)");
  s->add_option("--b", o.tb, "index b mod N (default 1, or 0 for N = 1)");

  s = sub("verify");
  s->add_option("--identity", o.identities, "identity id, repeatable, or all");
  s->add_option("--q-max", o.q_max, "largest field order")->capture_default_str();
  s->add_option("--q", o.q_list, "explicit field orders")->delimiter(',');

  s = sub("homology");
  s->add_option("--N", o.N_list, "levels")->delimiter(',');
  s->add_option("--N-max", o.N_max, "levels 2..N-max when --N is absent")->capture_default_str();
  s->add_option("--bound", o.bound, "largest level accepted")->capture_default_str();

  s = sub("periods");
  s->add_option("--N", o.N, "level")->capture_default_str();
  s->add_option("--a", o.ua, "form index a")->capture_default_str();
  s->add_option("--b", o.ub, "form index b")->capture_default_str();
  s->add_option("--lambda", o.lambda, "lambda as re or re,im");
  s->add_option("--epsilon", o.epsilon, "squared radius of the alpha circle")->capture_default_str();
  s->add_option("--samples", o.samples, "trapezoid samples")->capture_default_str();
  s->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();

  s = sub("monodromy-num");
  s->add_option("--N", o.N, "level")->capture_default_str();
  s->add_option("--a", o.ua, "form index a")->capture_default_str();
  s->add_option("--b", o.ub, "form index b")->capture_default_str();
  s->add_option("--base", o.base, "real base point")->capture_default_str();
  s->add_option("--tol", o.mono_tol, "relative tolerance")->capture_default_str();

  s = sub("continue");
  s->add_option("--a", o.pa, "parameter a (rational)");
  s->add_option("--b", o.pb, "parameter b (rational)");
  s->add_option("--c", o.pc, "parameter c (rational)");
  s->add_option("--from", o.from, "start point re[,im]")->capture_default_str();
  s->add_option("--to", o.to, "end point re[,im]");
  s->add_option("--via", o.via, "waypoints separated by ';'");
  s->add_option("--loop-center", o.loop_center, "center of a closed loop through --from");
  s->add_option("--loop-radius", o.loop_radius, "radius of the loop");
  s->add_option("--turns", o.turns, "number of turns")->capture_default_str();
  s->add_flag("--clockwise", o.clockwise, "loop clockwise");
  s->add_option("--tol", o.tol, "relative tolerance of the reference check")->capture_default_str();

  app.require_subcommand(1);
  return cmds;
}

void set_take_last(CLI::App& app) {
  for (CLI::Option* opt : app.get_options()) opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  for (CLI::App* s : app.get_subcommands({})) set_take_last(*s);
}

// --config value from the raw arguments.
std::optional<std::string> find_config(const std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  return path;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw DomainError("config line " + std::to_string(lineno) + " is not key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  Options o;
  CLI::App app("Finite and complex hypergeometric verification tool", "hgf");
  std::vector<Command> cmds;
  try {
    cmds = build(app, o);
    set_take_last(app);
    std::vector<std::string> args = args_in;
    if (const auto cfg = find_config(args)) {
      // Config entries go right after the subcommand name, so later command-line flags win.
      auto it = std::find_if(args.begin(), args.end(), [&](const std::string& a) {
        return std::any_of(cmds.begin(), cmds.end(), [&](const Command& c) { return c.name == a; });
      });
      if (it != args.end()) {
        CLI::App* sub = app.get_subcommand(*it);
        std::vector<std::string> extra;
        for (const auto& [k, v] : read_config_file(*cfg)) {
          if (k == "config") throw DomainError("config files cannot include other config files");
          const std::string flag = "--" + k;
          if (!sub->get_option_no_throw(flag) && !app.get_option_no_throw(flag)) {
            err << "hgf: config key '" << k << "' does not apply to " << *it << ", ignored\n";
            continue;
          }
          extra.push_back(flag + "=" + v);
        }
        args.insert(it + 1, extra.begin(), extra.end());
      }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "hgf: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "hgf: " << e.what() << "\n";
    return kInvalid;
  }

  const Command* chosen = nullptr;
  for (const auto& c : cmds)
    if (c.app->parsed()) chosen = &c;
  if (!chosen) {
    err << "hgf: a subcommand is required\n";
    return kInvalid;
  }

  Report rep;
  try {
    rep = chosen->run(o);
  } catch (const DomainError& e) {
    err << "hgf " << chosen->name << ": invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const ResourceError& e) {
    err << "hgf " << chosen->name << ": resource bound: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "hgf " << chosen->name << ": " << e.what() << "\n";
    return kInvalid;
  }

  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  std::string text;
  if (o.format == "csv") {
    if (!rep.csv) {
      err << "hgf " << chosen->name << ": csv output is only available for trace-table\n";
      return kInvalid;
    }
    text = *rep.csv;
    for (const auto& s : rep.params.value("skipped_primes", json::array()))
      err << "skipped p=" << s["p"].get<std::uint32_t>() << ": " << s["reason"].get<std::string>() << "\n";
  } else {
    const json doc = {{"command", chosen->name},
                      {"params", rep.params},
                      {"results", rep.results},
                      {"verified", rep.verified},
                      {"skipped", rep.skipped},
                      {"exceptional", rep.exceptional},
                      {"runtime_ms", o.reproducible ? 0 : ms}};
    text = (o.format == "pretty" ? doc.dump(2) : doc.dump()) + "\n";
  }
  if (!o.output.empty()) {
    std::ofstream f(o.output);
    if (!f) {
      err << "hgf: cannot write '" << o.output << "'\n";
      return kInvalid;
    }
    f << text;
  } else {
    out << text;
  }
  if (rep.exceptional > 0) {
    err << "hgf " << chosen->name << ": " << rep.exceptional << " exceptional case(s)\n";
    return kMismatch;
  }
  return kOk;
}

}  // namespace hgf::cli
