#pragma once

// Exact arithmetic substrate: big integers, residue-ring moduli, rationals,
// Kronecker symbols and the small divisor sums the congruences are stated in.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace podlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown when an element has no inverse in the requested ring.
class NotInvertible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Coefficient ring selector: either the integers or Z/mZ with m >= 2.
class Modulus {
 public:
  Modulus() = default;  // the integers
  explicit Modulus(std::uint64_t m);

  static Modulus integers() { return Modulus(); }

  bool is_integers() const { return m_ == 0; }
  std::uint64_t value() const;

  /// True when reduction by `coarser` is well defined from this ring.
  bool reducible_to(std::uint64_t coarser) const;

  std::string to_string() const;  // "Z" or the decimal modulus

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  std::uint64_t m_ = 0;
};

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "num/den" with den >= 1, always including the denominator.
std::string to_string(const Rational& r);
Rational parse_rational(const std::string& text);

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t lcm(std::int64_t a, std::int64_t b);

/// Least nonnegative residue of a mod m (m > 0).
std::int64_t floor_mod(std::int64_t a, std::int64_t m);

/// b^e with overflow detection (throws std::overflow_error).
std::int64_t checked_pow(std::int64_t base, unsigned exponent);

bool is_prime(std::int64_t n);

/// Prime factorization by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n);

/// Positive divisors of n >= 1 in ascending order.
std::vector<std::int64_t> divisors(std::int64_t n);

/// p-adic valuation of n != 0.
int valuation(std::int64_t n, std::int64_t p);

/// Kronecker symbol (a|n), the full extension to every integer n.
int kronecker(std::int64_t a, std::int64_t n);

/// The nontrivial Dirichlet character modulo 4.
int chi4(std::int64_t d);

std::int64_t sigma1(std::int64_t n);

/// Sum over d | n of chi4(d) d^2.
std::int64_t sigma2_chi(std::int64_t n);

/// b in [0, m) with a b = 1 (mod m); throws NotInvertible.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

}  // namespace podlab
