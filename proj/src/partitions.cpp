#include "podlab/partitions.hpp"

#include <stdexcept>
#include <string>

namespace podlab {

namespace {

void check_ell(int ell) {
  if (ell < 2) throw std::domain_error("pod_ell needs ell >= 2, got " + std::to_string(ell));
}

// Number of partitions of `remaining` into parts <= `largest`, listed in
// non-increasing order, where `previous` is the part placed just before.
std::uint64_t count_pod(int ell, int remaining, int largest, int previous) {
  if (remaining == 0) return 1;
  std::uint64_t total = 0;
  for (int part = std::min(remaining, largest); part >= 1; --part) {
    if (part % ell == 0) continue;
    if (part % 2 == 1 && part == previous) continue;  // odd parts are distinct
    total += count_pod(ell, remaining - part, part, part);
  }
  return total;
}

// The numerator removing parts divisible by ell. For odd ell it is
// psi(-q^ell); for even ell every multiple of ell is an unrestricted even
// part, so it is (q^ell; q^ell)_inf instead.
template <typename Scalar>
Series<Scalar> regular_numerator(int ell, std::size_t order, const Modulus& modulus) {
  if (ell % 2 == 1) return psi_series<Scalar>(-1, ell, order, modulus);
  return euler_product<Scalar>(ell, 1, order, modulus);
}

}  // namespace

IntPodTable pod_series(int ell, std::size_t order) {
  check_ell(ell);
  if (order < 1) throw std::domain_error("pod_series needs order >= 1");
  const auto Z = Modulus::integers();
  auto den = psi_series(-1, 1, order);
  return IntPodTable(ell, mul(regular_numerator<Integer>(ell, order, Z), invert(den)));
}

ModPodTable pod_series(int ell, std::size_t order, std::uint64_t m) {
  check_ell(ell);
  if (order < 1) throw std::domain_error("pod_series needs order >= 1");
  const Modulus modulus(m);
  if (ell == 3 && m == 3) {
    // psi(-q^3) = psi(-q)^3 (mod 3), so pod_3 = psi(-q)^2 (mod 3): a product
    // of two lacunary series instead of a dense inversion.
    auto psi = psi_series<Residue>(-1, 1, order, modulus);
    return ModPodTable(ell, mul(psi, psi));
  }
  auto den = psi_series<Residue>(-1, 1, order, modulus);
  return ModPodTable(ell, mul(regular_numerator<Residue>(ell, order, modulus), invert(den)));
}

std::uint64_t pod_bruteforce(int ell, int n) {
  check_ell(ell);
  if (n < 0) throw std::domain_error("pod_bruteforce needs n >= 0");
  if (n > kBruteForceLimit) {
    throw std::out_of_range("pod_bruteforce refuses n > " + std::to_string(kBruteForceLimit) +
                            "; use pod_series");
  }
  return count_pod(ell, n, n, 0);
}

IntSeries t_k(int k, std::size_t order) {
  if (k < 1) throw std::domain_error("t_k needs k >= 1");
  const auto psi = psi_series(1, 1, order);
  // repeated multiplication keeps the lacunary factor on the sparse side
  IntSeries out = psi;
  for (int i = 1; i < k; ++i) out = mul(out, psi);
  return out;
}

}  // namespace podlab
