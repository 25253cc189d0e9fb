#include "podlab/hecke.hpp"

#include <stdexcept>
#include <string>

namespace podlab {

ModularFormExpansion hecke_apply(const ModularFormExpansion& f, std::int64_t m) {
  if (m < 1) throw std::domain_error("hecke_apply needs m >= 1");
  if (f.weight < 1) throw std::domain_error("hecke_apply needs a positive weight");
  const std::size_t n_in = f.series.order();
  const auto um = static_cast<std::size_t>(m);
  if (n_in < um) {
    throw std::domain_error("hecke_apply: series order " + std::to_string(n_in) + " is below m = " +
                            std::to_string(m));
  }
  const std::size_t n_out = n_in / um;

  // chi(d) d^{k-1} for every d | m
  std::vector<std::pair<std::int64_t, Integer>> twists;
  for (auto d : divisors(m)) {
    const int chi = f.character(d);
    if (chi == 0) continue;
    Integer w;
    mpz_ui_pow_ui(w.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(f.weight - 1));
    twists.emplace_back(d, chi * w);
  }

  std::vector<Integer> out(n_out);
  for (std::size_t n = 0; n < n_out; ++n) {
    Integer acc = 0;
    const auto sn = static_cast<std::int64_t>(n);
    for (const auto& [d, w] : twists) {
      if (sn % d != 0) continue;  // d | gcd(n, m); every d divides 0
      const std::int64_t index = sn * m / (d * d);
      mpz_addmul(acc.get_mpz_t(), w.get_mpz_t(), f.series[static_cast<std::size_t>(index)].get_mpz_t());
    }
    out[n] = std::move(acc);
  }
  return {IntSeries(Modulus::integers(), std::move(out)), f.weight, f.level, f.character};
}

std::optional<Integer> eigen_ratio(const ModularFormExpansion& f, std::int64_t m, std::size_t order) {
  if (m < 1) throw std::domain_error("eigen_ratio needs m >= 1");
  const std::size_t n = std::min(order, f.series.order());
  if (n < 2) return std::nullopt;
  const Integer& a1 = f.series[1];
  if (a1 != 1 && a1 != -1) throw std::domain_error("eigen_ratio needs a(1) = +-1");

  ModularFormExpansion head{f.series.truncated(n), f.weight, f.level, f.character};
  if (n / static_cast<std::size_t>(m) < kMinEigenOverlap) return std::nullopt;
  const auto image = hecke_apply(head, m);

  const Integer lambda = image.series[1] * a1;
  for (std::size_t i = 0; i < image.series.order(); ++i) {
    if (image.series[i] != lambda * f.series[i]) return std::nullopt;
  }
  return lambda;
}

ModularFormExpansion eigenform_eta(std::size_t order) {
  if (order < 2) throw std::domain_error("eigenform_eta needs order >= 2");
  const EtaQuotient e(64, {{4, 2}, {8, -2}, {16, 2}});
  auto expansion = eta_expansion(e, order);
  // offset (8 + 32 - 16) / 24 = 1
  const auto offset = static_cast<std::size_t>(expansion.offset.get_num().get_ui());
  // (-4/d): the odd character mod 4, zero on even d
  return {shift(expansion.series, offset), 1, 64, [](std::int64_t d) { return kronecker(-4, d); }};
}

bool verify_recurrence(std::int64_t p, std::size_t order) {
  if (!is_prime(p) || p % 4 != 3) {
    throw std::domain_error("verify_recurrence needs a prime p = 3 (mod 4), got " + std::to_string(p));
  }
  const auto f = eigenform_eta(order);
  const int sign = kronecker(-1, p);
  const auto up = static_cast<std::size_t>(p);
  for (std::size_t n = 1; n * up < order; ++n) {
    Integer lhs = f.series[n * up];
    if (n % up == 0) lhs += sign * f.series[n / up];
    if (lhs != 0) return false;
  }
  return true;
}

}  // namespace podlab
