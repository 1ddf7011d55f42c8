#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "hgf/cyclotomic.hpp"
#include "hgf/finfield.hpp"
#include "hgf/hgf_finite.hpp"

namespace hgf {

// s in (1/N)Z/Z  ->  chi_s, the character with exponent s(q-1) mod q-1.
class DictionaryContext {
 public:
  DictionaryContext(std::shared_ptr<const FieldSpec> field, std::uint32_t N);

  const FieldSpec& field() const { return *field_; }
  std::uint32_t N() const { return N_; }
  // chi_s exists iff (q-1)s is an integer.
  bool defined(const Rational& s) const;
  // Exponent s(q-1) mod q-1; DomainError when undefined.
  std::uint32_t exponent(const Rational& s) const;
  MultCharacter chi(const Rational& s) const { return MultCharacter(*field_, exponent(s)); }

 private:
  std::shared_ptr<const FieldSpec> field_;
  std::uint32_t N_;
};

enum class CaseStatus { Verified, Skipped, Exceptional };

struct CaseResult {
  CaseStatus status = CaseStatus::Skipped;
  std::string reason;  // skip reason
  CycNum lhs, rhs;     // set unless skipped
};

struct Mismatch {
  std::uint32_t q = 0;
  std::string inputs;
  std::string lhs, rhs;
};

struct VerificationReport {
  std::string id;
  std::uint64_t grid_size = 0, verified = 0, skipped = 0, exceptional = 0;
  std::map<std::string, std::uint64_t> skip_reasons;
  std::vector<Mismatch> mismatches;  // first kMaxStored only
  // Boundary parameters (2s = 0, s = 0, alpha^2 = eps): checked and reported, outside the grid.
  std::uint64_t boundary_checked = 0, boundary_exceptional = 0;
  std::vector<Mismatch> boundary_mismatches;
  std::vector<std::uint32_t> fields;
  std::map<std::uint32_t, std::string> fields_skipped;

  static constexpr std::size_t kMaxStored = 50;

  void add(const CaseResult& r, std::uint32_t q, const std::string& inputs);
  void add_boundary(const CaseResult& r, std::uint32_t q, const std::string& inputs);
  void merge(const VerificationReport& o);
  bool ok() const { return exceptional == 0; }
  bool consistent() const { return verified + skipped + exceptional == grid_size; }
};

// Per-field checker with a cache of hypergeometric rows.
class IdentityChecker {
 public:
  explicit IdentityChecker(std::shared_ptr<const FieldSpec> field);

  const FieldSpec& field() const { return *field_; }
  const HgfEngine& engine() const { return engine_; }

  // F(chi_a, chi_b; chi_c; lambda), all exponents mod q-1.
  const FastCyc& F(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda);
  void clear_cache() { cache_.clear(); }

  // F(a,b;c;l) = chi_{c-a-b}(1-l) F(c-a, c-b; c; l).
  CaseResult euler(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda);
  // F(a,b;c;l) = chi_{-a}(1-l) F(a, c-b; c; l/(l-1)).
  CaseResult pfaff(std::int64_t a, std::int64_t b, std::int64_t c, FqElem lambda);
  // Quadratic, quartic and cubic transformations; m is the exponent of chi_s (ignored for
  // the fixed-parameter ids).
  CaseResult transformation(const std::string& id, std::int64_t m, FqElem lambda);
  // F(alpha^2, beta; alpha^2 conj(beta); -1) = sum_{alpha'^2 = alpha^2} g°(alpha^2 conj beta) g(alpha') / (g(alpha^2) g°(alpha' conj beta)).
  CaseResult kummer(std::int64_t a, std::int64_t b);
  // F(alpha^2, alpha^2; eps; -1) = sum_{alpha'^2 = alpha^2} alpha'(-1) B(alpha', alpha'), where B is the
  // Jacobi sum j; with boundary_values, B(eps, eps) = 1 and B(phi_2, phi_2) = phi_2(-1) q.
  CaseResult kummer_special(std::int64_t a, bool boundary_values = false);

 private:
  std::shared_ptr<const FieldSpec> field_;
  HgfEngine engine_;
  std::uint32_t M_;
  std::unordered_map<std::uint64_t, std::vector<FastCyc>> cache_;
  FastCyc zero_;
};

// Ids: euler, pfaff, quad-double-param, quad-square-arg, quad-opposite, quad-neg-arg,
// quad-equal-square, quad-quarter, quartic-half, quartic-quarter, cubic, kummer, kummer-special.
const std::vector<std::string>& identity_ids();
bool is_identity_id(const std::string& id);

// Prime powers 2 < q <= q_max.
std::vector<std::uint32_t> field_orders_up_to(std::uint32_t q_max);

// Runs the generic grid of id over every listed field, in a fixed order. Fields lacking the needed
// characters are listed in fields_skipped.
VerificationReport verify_identity(const std::string& id, const std::vector<std::uint32_t>& field_orders);

}  // namespace hgf
