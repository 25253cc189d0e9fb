#include "podlab/modring.hpp"

#include <cstdlib>
#include <limits>
#include <numeric>
#include <tuple>

namespace podlab {

Modulus::Modulus(std::uint64_t m) : m_(m) {
  if (m < 2) throw std::domain_error("modulus must be at least 2");
}

std::uint64_t Modulus::value() const {
  if (is_integers()) throw std::logic_error("the integers have no finite modulus");
  return m_;
}

bool Modulus::reducible_to(std::uint64_t coarser) const {
  if (coarser < 2) return false;
  return is_integers() || m_ % coarser == 0;
}

std::string Modulus::to_string() const {
  return is_integers() ? std::string("Z") : std::to_string(m_);
}

Rational make_rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  Rational r;
  try {
    if (slash == std::string::npos) {
      r = Rational(Integer(text));
    } else {
      Integer num(text.substr(0, slash));
      Integer den(text.substr(slash + 1));
      if (den == 0) throw std::domain_error("zero denominator in '" + text + "'");
      r = Rational(num, den);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational '" + text + "'");
  }
  r.canonicalize();
  return r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t checked_pow(std::int64_t base, unsigned exponent) {
  std::int64_t result = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(result, base, &result)) {
      throw std::overflow_error("integer power overflows 64 bits");
    }
  }
  return result;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  if (n < 1) throw std::domain_error("factorize expects a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  if (n < 1) throw std::domain_error("divisors expects a positive integer");
  std::vector<std::int64_t> small, large;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    small.push_back(d);
    if (d != n / d) large.push_back(n / d);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

int valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

// Jacobi symbol for odd positive n.
int jacobi(std::int64_t a, std::int64_t n) {
  a = floor_mod(a, n);
  int result = 1;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      std::int64_t r = n % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

}  // namespace

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    if (n == std::numeric_limits<std::int64_t>::min()) {
      throw std::domain_error("kronecker: bottom argument out of range");
    }
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++twos;
  }
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    // (a|2) = +1 for a = +-1 (mod 8), -1 for a = +-3 (mod 8)
    std::int64_t r = floor_mod(a, 8);
    if ((r == 3 || r == 5) && twos % 2 == 1) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

int chi4(std::int64_t d) {
  switch (floor_mod(d, 4)) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

std::int64_t sigma1(std::int64_t n) {
  if (n < 1) throw std::domain_error("sigma1 expects n >= 1");
  std::int64_t total = 0;
  for (auto d : divisors(n)) total += d;
  return total;
}

std::int64_t sigma2_chi(std::int64_t n) {
  if (n < 1) throw std::domain_error("sigma2_chi expects n >= 1");
  std::int64_t total = 0;
  for (auto d : divisors(n)) total += chi4(d) * d * d;
  return total;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  if (m < 1) throw std::domain_error("mod_inverse expects a positive modulus");
  // extended Euclid on (a mod m, m)
  std::int64_t old_r = floor_mod(a, m), r = m;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) {
    throw NotInvertible(std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return floor_mod(old_s, m);
}

}  // namespace podlab
