#pragma once

// Truncated power series in q with exact coefficients, plus expanders for
// Euler products, the theta series psi(q) and eta-quotients.
//
// A Series<Scalar> holds the coefficients a(0..order-1). Two coefficient
// rings are supported:
//   Series<Integer>  exact integers (modulus() is Modulus::integers())
//   Series<Residue>  Z/mZ with m < 2^32, coefficients kept in [0, m)

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "podlab/modring.hpp"

namespace podlab {

using Residue = std::uint32_t;

namespace detail {

template <typename Scalar>
struct Arith;

template <>
struct Arith<Integer> {
  explicit Arith(const Modulus& m) {
    if (!m.is_integers()) throw std::invalid_argument("integer series carry the integer modulus");
  }
  static bool is_zero(const Integer& v) { return sgn(v) == 0; }
  static Integer zero() { return Integer(0); }
  Integer from_int(std::int64_t v) const { return Integer(static_cast<long>(v)); }
  Integer normalize(const Integer& v) const { return v; }
  void add(Integer& acc, const Integer& v) const { acc += v; }
  void sub(Integer& acc, const Integer& v) const { acc -= v; }
  void addmul(Integer& acc, const Integer& a, const Integer& b) const {
    mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  Integer mul(const Integer& a, const Integer& b) const { return a * b; }
  Integer neg(const Integer& a) const { return -a; }
  std::optional<Integer> inverse(const Integer& a) const {
    if (a == 1 || a == -1) return a;
    return std::nullopt;
  }
};

template <>
struct Arith<Residue> {
  std::uint64_t m;
  explicit Arith(const Modulus& mod) : m(mod.is_integers() ? 0 : mod.value()) {
    if (mod.is_integers()) throw std::invalid_argument("residue series need a finite modulus");
    if (m > 0xffffffffULL) throw std::domain_error("residue modulus must fit in 32 bits");
  }
  static bool is_zero(Residue v) { return v == 0; }
  static Residue zero() { return 0; }
  Residue from_int(std::int64_t v) const {
    return static_cast<Residue>(floor_mod(v, static_cast<std::int64_t>(m)));
  }
  Residue from_integer(const Integer& v) const {
    return static_cast<Residue>(mpz_fdiv_ui(v.get_mpz_t(), m));
  }
  Residue normalize(Residue v) const { return static_cast<Residue>(v % m); }
  void add(Residue& acc, Residue v) const {
    std::uint64_t s = std::uint64_t{acc} + v;
    acc = static_cast<Residue>(s >= m ? s - m : s);
  }
  void sub(Residue& acc, Residue v) const {
    acc = static_cast<Residue>(acc >= v ? acc - v : acc + m - v);
  }
  void addmul(Residue& acc, Residue a, Residue b) const {
    acc = static_cast<Residue>((acc + std::uint64_t{a} * b % m) % m);
  }
  Residue mul(Residue a, Residue b) const { return static_cast<Residue>(std::uint64_t{a} * b % m); }
  Residue neg(Residue a) const { return static_cast<Residue>(a == 0 ? 0 : m - a); }
  std::optional<Residue> inverse(Residue a) const {
    try {
      return static_cast<Residue>(mod_inverse(a, static_cast<std::int64_t>(m)));
    } catch (const NotInvertible&) {
      return std::nullopt;
    }
  }
};

}  // namespace detail

template <typename Scalar>
class Series {
 public:
  using scalar_type = Scalar;

  /// The zero series of the given order.
  Series(Modulus modulus, std::size_t order)
      : modulus_(modulus), coeffs_(order, detail::Arith<Scalar>::zero()) {
    detail::Arith<Scalar> check(modulus_);
  }

  Series(Modulus modulus, std::vector<Scalar> coeffs) : modulus_(modulus), coeffs_(std::move(coeffs)) {
    detail::Arith<Scalar> ar(modulus_);
    for (auto& c : coeffs_) c = ar.normalize(c);
  }

  /// Series from small integer coefficients, reduced into the ring.
  static Series from_ints(Modulus modulus, std::span<const std::int64_t> values) {
    detail::Arith<Scalar> ar(modulus);
    std::vector<Scalar> coeffs;
    coeffs.reserve(values.size());
    for (auto v : values) coeffs.push_back(ar.from_int(v));
    return Series(modulus, std::move(coeffs));
  }
  static Series from_ints(Modulus modulus, std::initializer_list<std::int64_t> values) {
    return from_ints(modulus, std::span<const std::int64_t>(values.begin(), values.size()));
  }

  static Series one(Modulus modulus, std::size_t order) {
    Series s(modulus, order);
    if (order > 0) s.coeffs_[0] = detail::Arith<Scalar>(modulus).from_int(1);
    return s;
  }

  const Modulus& modulus() const { return modulus_; }
  std::size_t order() const { return coeffs_.size(); }

  const Scalar& operator[](std::size_t n) const { return coeffs_[n]; }
  const Scalar& at(std::size_t n) const {
    if (n >= coeffs_.size()) {
      throw std::out_of_range("coefficient " + std::to_string(n) + " beyond truncation order " +
                              std::to_string(coeffs_.size()));
    }
    return coeffs_[n];
  }
  void set(std::size_t n, const Scalar& value) {
    coeffs_.at(n) = detail::Arith<Scalar>(modulus_).normalize(value);
  }

  std::span<const Scalar> coefficients() const { return coeffs_; }

  Series truncated(std::size_t order) const {
    if (order > coeffs_.size()) throw std::invalid_argument("cannot extend a truncated series");
    return Series(modulus_, std::vector<Scalar>(coeffs_.begin(), coeffs_.begin() + order));
  }

  /// Indices of nonzero coefficients below `limit` (default: all).
  std::vector<std::size_t> support(std::size_t limit = SIZE_MAX) const {
    std::vector<std::size_t> out;
    const std::size_t n = std::min(limit, coeffs_.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!detail::Arith<Scalar>::is_zero(coeffs_[i])) out.push_back(i);
    }
    return out;
  }

  friend bool operator==(const Series& a, const Series& b) {
    return a.modulus_ == b.modulus_ && a.coeffs_ == b.coeffs_;
  }

 private:
  Modulus modulus_;
  std::vector<Scalar> coeffs_;
};

using IntSeries = Series<Integer>;
using ModSeries = Series<Residue>;

template <typename Scalar>
Series<Scalar> add(const Series<Scalar>& f, const Series<Scalar>& g);
template <typename Scalar>
Series<Scalar> sub(const Series<Scalar>& f, const Series<Scalar>& g);
template <typename Scalar>
Series<Scalar> negate(const Series<Scalar>& f);
template <typename Scalar>
Series<Scalar> scale(const Series<Scalar>& f, const Scalar& c);

/// Cauchy product truncated to min(order f, order g).
template <typename Scalar>
Series<Scalar> mul(const Series<Scalar>& f, const Series<Scalar>& g);

/// Multiplicative inverse; the constant term must be a unit of the ring.
template <typename Scalar>
Series<Scalar> invert(const Series<Scalar>& f);

/// f^e; negative e inverts the positive power.
template <typename Scalar>
Series<Scalar> pow(const Series<Scalar>& f, std::int64_t e);

/// q^k f, truncated to the order of f.
template <typename Scalar>
Series<Scalar> shift(const Series<Scalar>& f, std::size_t k);

template <typename Scalar>
Series<Scalar> operator+(const Series<Scalar>& f, const Series<Scalar>& g) { return add(f, g); }
template <typename Scalar>
Series<Scalar> operator-(const Series<Scalar>& f, const Series<Scalar>& g) { return sub(f, g); }
template <typename Scalar>
Series<Scalar> operator-(const Series<Scalar>& f) { return negate(f); }
template <typename Scalar>
Series<Scalar> operator*(const Series<Scalar>& f, const Series<Scalar>& g) { return mul(f, g); }

ModSeries reduce_mod(const IntSeries& f, std::uint64_t m);
ModSeries reduce_mod(const ModSeries& f, std::uint64_t m);

/// prod_{n>=1} (1 - q^{delta n})^r, from the pentagonal number expansion.
template <typename Scalar>
Series<Scalar> euler_product(std::int64_t delta, std::int64_t r, std::size_t order,
                             const Modulus& modulus);

/// psi(sign * q^scale) = sum_n sign^{T_n} q^{scale T_n}, T_n = n(n+1)/2.
template <typename Scalar>
Series<Scalar> psi_series(int sign, std::int64_t scale, std::size_t order, const Modulus& modulus);

inline IntSeries euler_product(std::int64_t delta, std::int64_t r, std::size_t order) {
  return euler_product<Integer>(delta, r, order, Modulus::integers());
}
inline IntSeries psi_series(int sign, std::int64_t scale, std::size_t order) {
  return psi_series<Integer>(sign, scale, order, Modulus::integers());
}

// ---------------------------------------------------------------------------
// Eta-quotients

struct EtaFactor {
  std::int64_t delta;
  std::int64_t exponent;
  friend bool operator==(const EtaFactor&, const EtaFactor&) = default;
};

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// prod over delta | level of eta(delta z)^{r_delta}. Factors are kept sorted
/// by delta, deltas are distinct and exponents nonzero.
class EtaQuotient {
 public:
  EtaQuotient(std::int64_t level, std::vector<EtaFactor> factors);

  /// Combines repeated deltas and drops factors whose exponents cancel.
  static EtaQuotient merged(std::int64_t level, std::span<const EtaFactor> factors);

  /// Parses "delta:exp,delta:exp@level"; without "@level" the level is the
  /// lcm of the deltas.
  static EtaQuotient parse(std::string_view text);

  std::int64_t level() const { return level_; }
  const std::vector<EtaFactor>& factors() const { return factors_; }
  std::int64_t exponent_of(std::int64_t delta) const;

  EtaQuotient with_level(std::int64_t level) const { return EtaQuotient(level, factors_); }

  std::string to_string() const;

  friend bool operator==(const EtaQuotient&, const EtaQuotient&) = default;

 private:
  std::int64_t level_;
  std::vector<EtaFactor> factors_;
};

/// q^offset * series, with offset = sum(delta r_delta)/24 carried exactly.
template <typename Scalar>
struct EtaExpansion {
  Rational offset;
  Series<Scalar> series;
};

EtaExpansion<Integer> eta_expansion(const EtaQuotient& e, std::size_t order);
EtaExpansion<Residue> eta_expansion(const EtaQuotient& e, std::size_t order, std::uint64_t m);

// ---------------------------------------------------------------------------
// Text format:
//   # modulus=<m|Z> order=<N>
//   0 a(0)
//   1 a(1)
//   ...

void write_text(std::ostream& out, const IntSeries& f);
void write_text(std::ostream& out, const ModSeries& f);

using AnySeries = std::variant<IntSeries, ModSeries>;
AnySeries read_text(std::istream& in);

}  // namespace podlab
