#pragma once

// Empirical densities #{0 <= n < X : pod_ell(n) = r (mod M)} / X.
// The count runs over the half-open range [0, X), so the ratio is a proper
// fraction of the X values examined.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "podlab/modring.hpp"

namespace podlab {

inline constexpr std::uint64_t kMaxDensityCutoff = 10'000'000;

struct DensityReport {
  int ell;
  std::uint64_t modulus;
  std::uint64_t residue;
  std::vector<std::uint64_t> cutoffs;
  std::vector<std::uint64_t> counts;

  std::vector<Rational> ratios() const;
  /// Ratios rounded half-up to 6 decimal places.
  std::vector<std::string> decimal_ratios() const;
};

DensityReport density(int ell, std::uint64_t modulus, std::uint64_t residue, std::uint64_t cutoff);

/// One scan to the largest cutoff, with counts snapshotted at each cutoff.
DensityReport density_curve(int ell, std::uint64_t modulus, std::uint64_t residue,
                            const std::vector<std::uint64_t>& cutoffs);

/// Counts of every residue class r in [0, M) over n in [0, X).
std::vector<std::uint64_t> residue_histogram(int ell, std::uint64_t modulus, std::uint64_t cutoff);

std::string format_decimal(const Rational& r, int places);

nlohmann::json to_json(const DensityReport& report);
std::string render_table(const DensityReport& report);

}  // namespace podlab
