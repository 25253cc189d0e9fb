#pragma once

// Certification of eta-quotients as modular forms on Gamma_0(N): weight,
// the two mod-24 conditions, Nebentypus character, orders at the cusps c/d,
// and the family B_{ell,p,k} whose expansion is congruent to the pod_ell
// generating function.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "podlab/qseries.hpp"

namespace podlab {

struct CuspOrder {
  std::int64_t d;  // cusp representative c/d, d | level
  Rational order;
};

struct CertificationReport {
  EtaQuotient quotient;
  Rational weight;
  bool weight_integral = false;
  bool condition24_up = false;    // sum delta r_delta = 0 (mod 24)
  bool condition24_down = false;  // sum (N/delta) r_delta = 0 (mod 24)
  /// Squarefree kernel of (-1)^k prod delta^{r_delta}; only for integral weight.
  std::optional<std::int64_t> character_discriminant;
  std::vector<CuspOrder> cusp_orders;
  /// Unset until the cusp orders have been evaluated.
  std::optional<bool> holomorphic;

  std::int64_t level() const { return quotient.level(); }
  bool is_modular_form() const {
    return weight_integral && condition24_up && condition24_down && holomorphic.value_or(false);
  }
};

Rational weight(const EtaQuotient& e);

CertificationReport check_conditions(const EtaQuotient& e);

/// Smallest u*L0 (1 <= u <= 24, L0 = e0.level()) that every delta divides and
/// at which both mod-24 conditions hold. Both conditions are linear in u
/// modulo 24, so the search is exhaustive.
std::optional<std::int64_t> minimal_level(const EtaQuotient& e0);

/// chi(d) for d coprime to the level, from the factored discriminant.
int character_value(const EtaQuotient& e, std::int64_t d);

Rational cusp_order(const EtaQuotient& e, std::int64_t d);

/// Conditions plus the order at one cusp per divisor d of the level.
CertificationReport holomorphy_report(const EtaQuotient& e);

nlohmann::json to_json(const CertificationReport& report);
std::string render_text(const CertificationReport& report);

// ---------------------------------------------------------------------------

struct BFamily {
  std::int64_t ell;
  std::int64_t p;
  int a;  // p^a || ell
  int k;
  /// The seven factors as written, before merging 24ell with 24p^a when ell = p^a.
  std::vector<EtaFactor> raw_factors;
  EtaQuotient quotient;  // at minimal_level

  /// 384 ell, the level at which the family is certified.
  std::int64_t standard_level() const { return 384 * ell; }
  Rational expected_weight() const;
};

/// eta(24z)^{p^{a+k}-1} eta(48z) eta(24 ell z) eta(96 ell z)
///   / (eta(96z) eta(48 ell z) eta(24 p^a z)^{p^k})
BFamily build_B(std::int64_t ell, std::int64_t p, int k);

/// eta(48z) eta(24 ell z) eta(96 ell z) / (eta(24z) eta(96z) eta(48 ell z)),
/// which is q^{3(ell-1)} psi(-q^{24 ell}) / psi(-q^{24}).
EtaQuotient pod_eta_quotient(std::int64_t ell);

struct Lemma2Result {
  bool passed = false;
  std::optional<std::int64_t> first_failing_exponent;
  std::string detail;
};

/// Expands B_{ell,p,k} mod p^k to `order` terms and compares it with
/// sum pod_ell(n) q^{24n + 3(ell-1)}.
Lemma2Result verify_lemma2(std::int64_t ell, std::int64_t p, int k, std::size_t order);

}  // namespace podlab
