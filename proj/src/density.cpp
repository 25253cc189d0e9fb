#include "podlab/density.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "podlab/partitions.hpp"

namespace podlab {

namespace {

void check_arguments(int ell, std::uint64_t modulus, std::uint64_t residue) {
  if (ell < 2) throw std::domain_error("density needs ell >= 2");
  if (modulus < 1) throw std::domain_error("density needs a modulus >= 1");
  if (residue >= modulus) {
    throw std::domain_error("residue " + std::to_string(residue) + " is not below the modulus " +
                            std::to_string(modulus));
  }
}

void check_cutoffs(const std::vector<std::uint64_t>& cutoffs) {
  if (cutoffs.empty()) throw std::domain_error("density needs at least one cutoff");
  if (cutoffs.front() < 1) throw std::domain_error("cutoffs must be >= 1");
  if (!std::is_sorted(cutoffs.begin(), cutoffs.end())) throw std::domain_error("cutoffs must be ascending");
  if (cutoffs.back() > kMaxDensityCutoff) {
    throw std::domain_error("cutoff " + std::to_string(cutoffs.back()) + " exceeds the supported maximum " +
                            std::to_string(kMaxDensityCutoff));
  }
}

}  // namespace

std::vector<Rational> DensityReport::ratios() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    Rational r(Integer(static_cast<unsigned long>(counts[i])), Integer(static_cast<unsigned long>(cutoffs[i])));
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

std::vector<std::string> DensityReport::decimal_ratios() const {
  std::vector<std::string> out;
  for (const auto& r : ratios()) out.push_back(format_decimal(r, 6));
  return out;
}

std::string format_decimal(const Rational& r, int places) {
  if (sgn(r) < 0) return "-" + format_decimal(-r, places);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
  // round half up: floor((2 num scale + den) / (2 den))
  Integer scaled = (2 * r.get_num() * scale + r.get_den()) / (2 * r.get_den());
  Integer whole = scaled / scale;
  Integer frac = scaled % scale;
  std::string digits = frac.get_str();
  if (places == 0) return whole.get_str();
  return whole.get_str() + "." + std::string(static_cast<std::size_t>(places) - digits.size(), '0') + digits;
}

DensityReport density(int ell, std::uint64_t modulus, std::uint64_t residue, std::uint64_t cutoff) {
  return density_curve(ell, modulus, residue, {cutoff});
}

DensityReport density_curve(int ell, std::uint64_t modulus, std::uint64_t residue,
                            const std::vector<std::uint64_t>& cutoffs) {
  check_arguments(ell, modulus, residue);
  check_cutoffs(cutoffs);
  DensityReport report{ell, modulus, residue, cutoffs, {}};
  if (modulus == 1) {
    report.counts = cutoffs;  // every integer is 0 mod 1
    return report;
  }
  const auto table = pod_series(ell, cutoffs.back(), modulus);
  std::uint64_t count = 0;
  std::size_t next = 0;
  for (std::uint64_t n = 0; n < cutoffs.back(); ++n) {
    if (table[n] == residue) ++count;
    while (next < cutoffs.size() && cutoffs[next] == n + 1) {
      report.counts.push_back(count);
      ++next;
    }
  }
  return report;
}

std::vector<std::uint64_t> residue_histogram(int ell, std::uint64_t modulus, std::uint64_t cutoff) {
  check_arguments(ell, modulus, 0);
  check_cutoffs({cutoff});
  std::vector<std::uint64_t> counts(modulus, 0);
  if (modulus == 1) {
    counts[0] = cutoff;
    return counts;
  }
  const auto table = pod_series(ell, cutoff, modulus);
  for (std::uint64_t n = 0; n < cutoff; ++n) ++counts[table[n]];
  return counts;
}

nlohmann::json to_json(const DensityReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  const auto exact = report.ratios();
  const auto decimals = report.decimal_ratios();
  for (std::size_t i = 0; i < report.cutoffs.size(); ++i) {
    rows.push_back({{"X", report.cutoffs[i]},
                    {"count", report.counts[i]},
                    {"ratio", to_string(exact[i])},
                    {"ratio_decimal", decimals[i]}});
  }
  return {{"schema", 1},
          {"ell", report.ell},
          {"modulus", report.modulus},
          {"residue", report.residue},
          {"range", "0 <= n < X"},
          {"rows", std::move(rows)}};
}

std::string render_table(const DensityReport& report) {
  std::ostringstream out;
  out << "pod_" << report.ell << "(n) = " << report.residue << " (mod " << report.modulus << "), 0 <= n < X\n";
  out << std::setw(12) << "X" << std::setw(12) << "count" << std::setw(12) << "ratio" << '\n';
  const auto decimals = report.decimal_ratios();
  for (std::size_t i = 0; i < report.cutoffs.size(); ++i) {
    out << std::setw(12) << report.cutoffs[i] << std::setw(12) << report.counts[i] << std::setw(12)
        << decimals[i] << '\n';
  }
  return out.str();
}

}  // namespace podlab
