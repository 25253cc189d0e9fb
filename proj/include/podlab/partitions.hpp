#pragma once

// pod_ell(n): partitions of n with no part divisible by ell and distinct odd
// parts (even parts unrestricted), and t_k(n): representations of n as an
// ordered sum of k triangular numbers.

#include <cstddef>
#include <cstdint>

#include "podlab/qseries.hpp"

namespace podlab {

template <typename Scalar>
class PodTable {
 public:
  PodTable(int ell, Series<Scalar> values) : ell_(ell), values_(std::move(values)) {}

  int ell() const { return ell_; }
  const Modulus& modulus() const { return values_.modulus(); }
  std::size_t size() const { return values_.order(); }
  const Scalar& operator[](std::size_t n) const { return values_[n]; }
  const Series<Scalar>& series() const { return values_; }

 private:
  int ell_;
  Series<Scalar> values_;
};

using IntPodTable = PodTable<Integer>;
using ModPodTable = PodTable<Residue>;

/// pod_ell(n) for n < order over the integers: psi(-q^ell) / psi(-q) for odd
/// ell, (q^ell; q^ell)_inf / psi(-q) for even ell.
IntPodTable pod_series(int ell, std::size_t order);

/// Same generating function reduced mod m throughout.
ModPodTable pod_series(int ell, std::size_t order, std::uint64_t m);

inline constexpr int kBruteForceLimit = 80;

/// Direct enumeration of the partitions counted by pod_ell(n); n <= 80.
std::uint64_t pod_bruteforce(int ell, int n);

/// psi(q)^k to the given order.
IntSeries t_k(int k, std::size_t order);

}  // namespace podlab
