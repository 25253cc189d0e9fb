#include "podlab/etaquot.hpp"

#include <map>
#include <sstream>

#include "podlab/partitions.hpp"

namespace podlab {

namespace {

Integer big(std::int64_t v) { return Integer(static_cast<long>(v)); }

std::int64_t weighted_sum(const EtaQuotient& e, std::int64_t level, bool down) {
  Integer total = 0;
  for (const auto& f : e.factors()) {
    const std::int64_t w = down ? level / f.delta : f.delta;
    total += big(w) * big(f.exponent);
  }
  return static_cast<std::int64_t>(mpz_fdiv_ui(total.get_mpz_t(), 24));
}

// "3" rather than "3/1"; JSON keeps the num/den form
std::string display(const Rational& r) {
  return r.get_den() == 1 ? r.get_num().get_str() : to_string(r);
}

bool divides_all(const EtaQuotient& e, std::int64_t level) {
  for (const auto& f : e.factors()) {
    if (level % f.delta != 0) return false;
  }
  return true;
}

}  // namespace

Rational weight(const EtaQuotient& e) {
  Integer total = 0;
  for (const auto& f : e.factors()) total += big(f.exponent);
  Rational w(total, 2);
  w.canonicalize();
  return w;
}

CertificationReport check_conditions(const EtaQuotient& e) {
  CertificationReport report{e, weight(e)};
  report.weight_integral = report.weight.get_den() == 1;
  report.condition24_up = weighted_sum(e, e.level(), false) == 0;
  report.condition24_down = weighted_sum(e, e.level(), true) == 0;

  if (report.weight_integral) {
    std::map<std::int64_t, Integer> parity;
    for (const auto& f : e.factors()) {
      for (const auto& [q, v] : factorize(f.delta)) parity[q] += big(f.exponent) * v;
    }
    std::int64_t kernel = mpz_odd_p(report.weight.get_num().get_mpz_t()) ? -1 : 1;
    for (const auto& [q, total] : parity) {
      if (mpz_odd_p(total.get_mpz_t())) kernel *= q;
    }
    report.character_discriminant = kernel;
  }
  return report;
}

std::optional<std::int64_t> minimal_level(const EtaQuotient& e0) {
  const std::int64_t base = e0.level();
  if (weighted_sum(e0, base, false) != 0) return std::nullopt;
  for (std::int64_t u = 1; u <= 24; ++u) {
    const std::int64_t level = u * base;
    if (!divides_all(e0, level)) continue;
    if (weighted_sum(e0, level, true) == 0) return level;
  }
  return std::nullopt;
}

int character_value(const EtaQuotient& e, std::int64_t d) {
  if (gcd(d, e.level()) != 1) {
    throw std::domain_error("character_value: d = " + std::to_string(d) +
                            " is not coprime to the level");
  }
  const Rational w = weight(e);
  if (w.get_den() != 1) throw std::domain_error("character_value: half-integral weight is unsupported");

  int value = mpz_odd_p(w.get_num().get_mpz_t()) ? kronecker(-1, d) : 1;
  for (const auto& f : e.factors()) {
    if (f.exponent % 2 != 0) value *= kronecker(f.delta, d);
  }
  return value;
}

Rational cusp_order(const EtaQuotient& e, std::int64_t d) {
  const std::int64_t level = e.level();
  if (d < 1 || level % d != 0) {
    throw std::domain_error("cusp_order: " + std::to_string(d) + " does not divide the level");
  }
  const std::int64_t g = gcd(d, level / d);
  Rational sum = 0;
  for (const auto& f : e.factors()) {
    const std::int64_t c = gcd(d, f.delta);
    Rational term(big(c) * big(c) * big(f.exponent), big(g) * big(d) * big(f.delta));
    term.canonicalize();
    sum += term;
  }
  Rational order = sum * Rational(big(level), 24);
  order.canonicalize();
  return order;
}

CertificationReport holomorphy_report(const EtaQuotient& e) {
  CertificationReport report = check_conditions(e);
  bool all_nonnegative = true;
  for (auto d : divisors(e.level())) {
    Rational order = cusp_order(e, d);
    if (sgn(order) < 0) all_nonnegative = false;
    report.cusp_orders.push_back({d, std::move(order)});
  }
  report.holomorphic = all_nonnegative;
  return report;
}

nlohmann::json to_json(const CertificationReport& report) {
  nlohmann::json j;
  j["schema"] = 1;
  j["quotient"] = report.quotient.to_string();
  j["level"] = report.level();
  j["weight"] = to_string(report.weight);
  j["weight_integral"] = report.weight_integral;
  j["condition24_up"] = report.condition24_up;
  j["condition24_down"] = report.condition24_down;
  j["character_discriminant"] =
      report.character_discriminant ? nlohmann::json(*report.character_discriminant) : nlohmann::json();
  auto cusps = nlohmann::json::array();
  for (const auto& c : report.cusp_orders) {
    cusps.push_back({{"d", c.d}, {"order", to_string(c.order)}});
  }
  j["cusp_orders"] = std::move(cusps);
  j["holomorphic"] = report.holomorphic ? nlohmann::json(*report.holomorphic) : nlohmann::json();
  j["modular_form"] = report.is_modular_form();
  return j;
}

std::string render_text(const CertificationReport& report) {
  std::ostringstream out;
  out << "quotient        " << report.quotient.to_string() << '\n'
      << "level           " << report.level() << '\n'
      << "weight          " << display(report.weight) << (report.weight_integral ? "" : " (non-integral)")
      << '\n'
      << "sum delta r     " << (report.condition24_up ? "= 0 mod 24" : "!= 0 mod 24") << '\n'
      << "sum N/delta r   " << (report.condition24_down ? "= 0 mod 24" : "!= 0 mod 24") << '\n';
  if (report.character_discriminant) {
    out << "character       (" << *report.character_discriminant << " / d)\n";
  }
  if (report.holomorphic) {
    Rational lowest = report.cusp_orders.empty() ? Rational(0) : report.cusp_orders.front().order;
    std::int64_t at = report.cusp_orders.empty() ? 0 : report.cusp_orders.front().d;
    for (const auto& c : report.cusp_orders) {
      if (c.order < lowest) {
        lowest = c.order;
        at = c.d;
      }
    }
    out << "cusps           " << report.cusp_orders.size() << " checked, minimum order "
        << display(lowest) << " at d=" << at << '\n'
        << "holomorphic     " << (*report.holomorphic ? "yes" : "no") << '\n';
  }
  out << "modular form    " << (report.is_modular_form() ? "yes" : "no") << '\n';
  return out.str();
}

// ---------------------------------------------------------------------------

Rational BFamily::expected_weight() const {
  Integer pk = checked_pow(p, static_cast<unsigned>(k));
  Integer pa = checked_pow(p, static_cast<unsigned>(a));
  Rational w(pk * (pa - 1), 2);
  w.canonicalize();
  return w;
}

BFamily build_B(std::int64_t ell, std::int64_t p, int k) {
  if (ell < 3 || ell % 2 == 0) throw std::domain_error("B family needs an odd ell > 1");
  if (!is_prime(p) || ell % p != 0) throw std::domain_error("B family needs a prime p dividing ell");
  if (k < 1) throw std::domain_error("B family needs k >= 1");

  const int a = valuation(ell, p);
  const std::int64_t pa = checked_pow(p, static_cast<unsigned>(a));
  const std::int64_t pk = checked_pow(p, static_cast<unsigned>(k));
  const std::int64_t pak = checked_pow(p, static_cast<unsigned>(a + k));

  std::vector<EtaFactor> raw = {
      {24, pak - 1}, {48, 1}, {24 * ell, 1}, {96 * ell, 1}, {96, -1}, {48 * ell, -1}, {24 * pa, -pk},
  };
  auto provisional = EtaQuotient::merged(96 * ell, raw);
  auto level = minimal_level(provisional);
  if (!level) throw std::logic_error("B family: no level satisfies the mod-24 conditions");
  return BFamily{ell, p, a, k, std::move(raw), provisional.with_level(*level)};
}

EtaQuotient pod_eta_quotient(std::int64_t ell) {
  if (ell < 2) throw std::domain_error("pod_eta_quotient needs ell >= 2");
  std::vector<EtaFactor> f = {{48, 1}, {24 * ell, 1}, {96 * ell, 1}, {24, -1}, {96, -1}, {48 * ell, -1}};
  return EtaQuotient::merged(96 * ell, f);
}

Lemma2Result verify_lemma2(std::int64_t ell, std::int64_t p, int k, std::size_t order) {
  if (order < 24) throw std::domain_error("verify_lemma2 needs order >= 24");
  const BFamily fam = build_B(ell, p, k);
  const auto m = static_cast<std::uint64_t>(checked_pow(p, static_cast<unsigned>(k)));

  auto expansion = eta_expansion(fam.quotient, order, m);
  if (expansion.offset.get_den() != 1) {
    return {false, std::nullopt, "q-offset " + to_string(expansion.offset) + " is not integral"};
  }
  const std::int64_t offset = expansion.offset.get_num().get_si();
  const std::int64_t shift = 3 * (ell - 1);
  const auto pod = pod_series(static_cast<int>(ell), order / 24 + 2, m);

  for (std::size_t i = 0; i < order; ++i) {
    const std::int64_t exponent = offset + static_cast<std::int64_t>(i);
    Residue expected = 0;
    if (exponent >= shift && (exponent - shift) % 24 == 0) {
      expected = pod[static_cast<std::size_t>((exponent - shift) / 24)];
    }
    if (expansion.series[i] != expected) {
      std::ostringstream why;
      why << "coefficient of q^" << exponent << " is " << expansion.series[i] << ", expected "
          << expected << " (mod " << m << ")";
      return {false, exponent, why.str()};
    }
  }
  return {true, std::nullopt, "all " + std::to_string(order) + " coefficients agree mod " + std::to_string(m)};
}

}  // namespace podlab
