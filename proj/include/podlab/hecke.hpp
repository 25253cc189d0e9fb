#pragma once

// Hecke operators T_m acting on truncated q-expansions of forms in
// M_k(Gamma_0(N), chi).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>

#include "podlab/qseries.hpp"

namespace podlab {

/// Dirichlet character evaluator d -> {-1, 0, 1}.
using Character = std::function<int(std::int64_t)>;

struct ModularFormExpansion {
  IntSeries series;  // index n is the exponent of q^n
  int weight;
  std::int64_t level;
  Character character;
};

/// Shortest overlap eigen_ratio will certify.
inline constexpr std::size_t kMinEigenOverlap = 40;

/// f | T_m, valid to order floor(N/m) where N is the order of f.
ModularFormExpansion hecke_apply(const ModularFormExpansion& f, std::int64_t m);

/// lambda with f | T_m = lambda f on the first min(N, order)/m coefficients,
/// or nothing when no integer lambda fits (or the overlap is too short).
std::optional<Integer> eigen_ratio(const ModularFormExpansion& f, std::int64_t m, std::size_t order);

/// eta(4z)^2 eta(16z)^2 / eta(8z)^2 in M_1(Gamma_0(64), (-1/.)).
ModularFormExpansion eigenform_eta(std::size_t order);

/// a(pn) + (-1/p) a(n/p) = 0 for all pn < order, with a(n/p) = 0 when p does
/// not divide n. p must be a prime congruent to 3 mod 4.
bool verify_recurrence(std::int64_t p, std::size_t order);

}  // namespace podlab
