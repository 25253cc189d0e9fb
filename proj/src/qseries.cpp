#include "podlab/qseries.hpp"

#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace podlab {

namespace {

template <typename Scalar>
void require_same_ring(const Series<Scalar>& f, const Series<Scalar>& g) {
  if (!(f.modulus() == g.modulus())) {
    throw std::invalid_argument("modulus mismatch: " + f.modulus().to_string() + " vs " +
                                g.modulus().to_string());
  }
}

}  // namespace

template <typename Scalar>
Series<Scalar> add(const Series<Scalar>& f, const Series<Scalar>& g) {
  require_same_ring(f, g);
  detail::Arith<Scalar> ar(f.modulus());
  const std::size_t n = std::min(f.order(), g.order());
  std::vector<Scalar> out(f.coefficients().begin(), f.coefficients().begin() + n);
  for (std::size_t i = 0; i < n; ++i) ar.add(out[i], g[i]);
  return Series<Scalar>(f.modulus(), std::move(out));
}

template <typename Scalar>
Series<Scalar> sub(const Series<Scalar>& f, const Series<Scalar>& g) {
  require_same_ring(f, g);
  detail::Arith<Scalar> ar(f.modulus());
  const std::size_t n = std::min(f.order(), g.order());
  std::vector<Scalar> out(f.coefficients().begin(), f.coefficients().begin() + n);
  for (std::size_t i = 0; i < n; ++i) ar.sub(out[i], g[i]);
  return Series<Scalar>(f.modulus(), std::move(out));
}

template <typename Scalar>
Series<Scalar> negate(const Series<Scalar>& f) {
  detail::Arith<Scalar> ar(f.modulus());
  std::vector<Scalar> out;
  out.reserve(f.order());
  for (const auto& c : f.coefficients()) out.push_back(ar.neg(c));
  return Series<Scalar>(f.modulus(), std::move(out));
}

template <typename Scalar>
Series<Scalar> scale(const Series<Scalar>& f, const Scalar& c) {
  detail::Arith<Scalar> ar(f.modulus());
  const Scalar k = ar.normalize(c);
  std::vector<Scalar> out;
  out.reserve(f.order());
  for (const auto& a : f.coefficients()) out.push_back(ar.mul(a, k));
  return Series<Scalar>(f.modulus(), std::move(out));
}

template <typename Scalar>
Series<Scalar> mul(const Series<Scalar>& f, const Series<Scalar>& g) {
  require_same_ring(f, g);
  detail::Arith<Scalar> ar(f.modulus());
  const std::size_t n = std::min(f.order(), g.order());

  // Iterate over the sparser operand; the series here are often lacunary
  // (theta series, pentagonal products) even though storage is dense.
  auto fs = f.support(n);
  auto gs = g.support(n);
  const bool f_outer = fs.size() <= gs.size();
  const Series<Scalar>& a = f_outer ? f : g;
  const Series<Scalar>& b = f_outer ? g : f;
  const auto& as = f_outer ? fs : gs;
  const auto& bs = f_outer ? gs : fs;

  std::vector<Scalar> out(n, detail::Arith<Scalar>::zero());
  if (bs.size() * 4 < n) {
    for (auto i : as) {
      for (auto j : bs) {
        if (i + j >= n) break;
        ar.addmul(out[i + j], a[i], b[j]);
      }
    }
  } else {
    for (auto i : as) {
      const Scalar& ai = a[i];
      for (std::size_t j = 0; i + j < n; ++j) {
        if (!detail::Arith<Scalar>::is_zero(b[j])) ar.addmul(out[i + j], ai, b[j]);
      }
    }
  }
  return Series<Scalar>(f.modulus(), std::move(out));
}

template <typename Scalar>
Series<Scalar> invert(const Series<Scalar>& f) {
  detail::Arith<Scalar> ar(f.modulus());
  const std::size_t n = f.order();
  if (n == 0) return f;
  auto unit = ar.inverse(f[0]);
  if (!unit) throw NotInvertible("constant term is not a unit in the coefficient ring");

  std::vector<std::size_t> tail;
  for (auto k : f.support()) {
    if (k > 0) tail.push_back(k);
  }
  // b(0) = u, b(n) = -u * sum_{k>=1} a(k) b(n-k)
  std::vector<Scalar> b(n, detail::Arith<Scalar>::zero());
  b[0] = *unit;
  for (std::size_t i = 1; i < n; ++i) {
    Scalar acc = detail::Arith<Scalar>::zero();
    for (auto k : tail) {
      if (k > i) break;
      ar.addmul(acc, f[k], b[i - k]);
    }
    b[i] = ar.neg(ar.mul(*unit, acc));
  }
  return Series<Scalar>(f.modulus(), std::move(b));
}

template <typename Scalar>
Series<Scalar> pow(const Series<Scalar>& f, std::int64_t e) {
  if (e < 0) return invert(pow(f, -e));
  Series<Scalar> result = Series<Scalar>::one(f.modulus(), f.order());
  if (e == 0) return result;
  Series<Scalar> base = f;
  bool first = true;
  while (e > 0) {
    if (e & 1) {
      result = first ? base : mul(result, base);
      first = false;
    }
    e >>= 1;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

template <typename Scalar>
Series<Scalar> shift(const Series<Scalar>& f, std::size_t k) {
  std::vector<Scalar> coeffs(f.order(), detail::Arith<Scalar>::zero());
  for (std::size_t i = 0; i + k < f.order(); ++i) coeffs[i + k] = f[i];
  return Series<Scalar>(f.modulus(), std::move(coeffs));
}

ModSeries reduce_mod(const IntSeries& f, std::uint64_t m) {
  Modulus target(m);
  detail::Arith<Residue> ar(target);
  std::vector<Residue> out;
  out.reserve(f.order());
  for (const auto& c : f.coefficients()) out.push_back(ar.from_integer(c));
  return ModSeries(target, std::move(out));
}

ModSeries reduce_mod(const ModSeries& f, std::uint64_t m) {
  if (!f.modulus().reducible_to(m)) {
    throw std::invalid_argument("cannot reduce a series mod " + f.modulus().to_string() +
                                " to mod " + std::to_string(m));
  }
  Modulus target(m);
  std::vector<Residue> out;
  out.reserve(f.order());
  for (auto c : f.coefficients()) out.push_back(static_cast<Residue>(c % m));
  return ModSeries(target, std::move(out));
}

template <typename Scalar>
Series<Scalar> euler_product(std::int64_t delta, std::int64_t r, std::size_t order,
                             const Modulus& modulus) {
  if (delta < 1) throw std::domain_error("euler_product needs delta >= 1");
  if (order < 1) throw std::domain_error("euler_product needs order >= 1");
  detail::Arith<Scalar> ar(modulus);
  if (r == 0) return Series<Scalar>::one(modulus, order);

  // (q;q)_inf = sum_{j in Z} (-1)^j q^{j(3j-1)/2}
  std::vector<Scalar> coeffs(order, detail::Arith<Scalar>::zero());
  const auto n = static_cast<std::int64_t>(order);
  coeffs[0] = ar.from_int(1);
  for (std::int64_t j = 1;; ++j) {
    const std::int64_t e1 = delta * (j * (3 * j - 1) / 2);
    const std::int64_t e2 = delta * (j * (3 * j + 1) / 2);
    if (e1 >= n) break;
    const Scalar sign = ar.from_int(j % 2 == 0 ? 1 : -1);
    coeffs[e1] = sign;
    if (e2 < n) coeffs[e2] = sign;
  }
  Series<Scalar> base(modulus, std::move(coeffs));
  return pow(base, r);
}

template <typename Scalar>
Series<Scalar> psi_series(int sign, std::int64_t scale, std::size_t order, const Modulus& modulus) {
  if (sign != 1 && sign != -1) throw std::domain_error("psi_series sign must be +1 or -1");
  if (scale < 1) throw std::domain_error("psi_series scale must be positive");
  if (order < 1) throw std::domain_error("psi_series needs order >= 1");
  detail::Arith<Scalar> ar(modulus);
  std::vector<Scalar> coeffs(order, detail::Arith<Scalar>::zero());
  const auto n = static_cast<std::int64_t>(order);
  for (std::int64_t k = 0;; ++k) {
    const std::int64_t t = k * (k + 1) / 2;
    if (scale * t >= n) break;
    coeffs[scale * t] = ar.from_int((sign == -1 && t % 2 == 1) ? -1 : 1);
  }
  return Series<Scalar>(modulus, std::move(coeffs));
}

// ---------------------------------------------------------------------------

EtaQuotient::EtaQuotient(std::int64_t level, std::vector<EtaFactor> factors)
    : level_(level), factors_(std::move(factors)) {
  if (level_ < 1) throw std::domain_error("eta-quotient level must be positive");
  std::sort(factors_.begin(), factors_.end(),
            [](const EtaFactor& a, const EtaFactor& b) { return a.delta < b.delta; });
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.delta < 1) throw std::domain_error("eta factor delta must be positive");
    if (level_ % f.delta != 0) {
      throw std::domain_error("delta " + std::to_string(f.delta) + " does not divide level " +
                              std::to_string(level_));
    }
    if (f.exponent == 0) throw std::domain_error("eta factor exponents must be nonzero");
    if (i > 0 && factors_[i - 1].delta == f.delta) {
      throw std::domain_error("repeated delta " + std::to_string(f.delta));
    }
  }
}

EtaQuotient EtaQuotient::merged(std::int64_t level, std::span<const EtaFactor> factors) {
  std::map<std::int64_t, std::int64_t> total;
  for (const auto& f : factors) total[f.delta] += f.exponent;
  std::vector<EtaFactor> out;
  for (const auto& [delta, r] : total) {
    if (r != 0) out.push_back({delta, r});
  }
  return EtaQuotient(level, std::move(out));
}

namespace {

class SpecReader {
 public:
  explicit SpecReader(std::string_view text) : text_(text) {}

  bool done() const { return pos_ >= text_.size(); }
  std::size_t position() const { return pos_; }
  char peek() const { return done() ? '\0' : text_[pos_]; }

  void skip_spaces() {
    while (!done() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }

  void expect(char c) {
    skip_spaces();
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  std::int64_t integer() {
    skip_spaces();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (begin != end && *begin == '+') ++begin;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) throw ParseError("expected an integer", pos_);
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

EtaQuotient EtaQuotient::parse(std::string_view text) {
  SpecReader in(text);
  std::vector<EtaFactor> factors;
  std::vector<std::size_t> starts;
  std::optional<std::int64_t> level;
  in.skip_spaces();
  if (in.done()) throw ParseError("empty eta-quotient spec", 0);
  if (in.peek() != '@') {
    while (true) {
      const std::size_t at = in.position();
      const auto delta = in.integer();
      if (delta < 1) throw ParseError("delta must be positive", at);
      in.expect(':');
      const auto r = in.integer();
      factors.push_back({delta, r});
      starts.push_back(at);
      in.skip_spaces();
      if (in.peek() == ',') {
        in.expect(',');
        continue;
      }
      break;
    }
  }
  in.skip_spaces();
  if (in.peek() == '@') {
    in.expect('@');
    const std::size_t at = in.position();
    level = in.integer();
    if (*level < 1) throw ParseError("level must be positive", at);
  }
  in.skip_spaces();
  if (!in.done()) throw ParseError("unexpected trailing input", in.position());

  std::int64_t n = 1;
  for (const auto& f : factors) n = lcm(n, f.delta);
  const std::int64_t chosen = level.value_or(n);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    if (chosen % f.delta != 0) {
      throw ParseError("delta " + std::to_string(f.delta) + " does not divide level " +
                           std::to_string(chosen),
                       starts[i]);
    }
    if (f.exponent == 0) throw ParseError("zero exponent", starts[i]);
    for (std::size_t j = 0; j < i; ++j) {
      if (factors[j].delta == f.delta) throw ParseError("repeated delta", starts[i]);
    }
  }
  return EtaQuotient(chosen, std::move(factors));
}

std::int64_t EtaQuotient::exponent_of(std::int64_t delta) const {
  for (const auto& f : factors_) {
    if (f.delta == delta) return f.exponent;
  }
  return 0;
}

std::string EtaQuotient::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i > 0) out << ',';
    out << factors_[i].delta << ':' << factors_[i].exponent;
  }
  out << '@' << level_;
  return out.str();
}

namespace {

template <typename Scalar>
EtaExpansion<Scalar> expand(const EtaQuotient& e, std::size_t order, const Modulus& modulus) {
  if (order < 1) throw std::domain_error("eta_expansion needs order >= 1");
  Integer weighted = 0;
  for (const auto& f : e.factors()) weighted += Integer(static_cast<long>(f.delta)) * static_cast<long>(f.exponent);
  Rational offset(weighted, 24);
  offset.canonicalize();

  // positive factors first, one inversion for the negative part
  Series<Scalar> num = Series<Scalar>::one(modulus, order);
  Series<Scalar> den = Series<Scalar>::one(modulus, order);
  for (const auto& f : e.factors()) {
    if (f.exponent > 0) {
      num = mul(num, euler_product<Scalar>(f.delta, f.exponent, order, modulus));
    } else {
      den = mul(den, euler_product<Scalar>(f.delta, -f.exponent, order, modulus));
    }
  }
  return {offset, mul(num, invert(den))};
}

}  // namespace

EtaExpansion<Integer> eta_expansion(const EtaQuotient& e, std::size_t order) {
  return expand<Integer>(e, order, Modulus::integers());
}

EtaExpansion<Residue> eta_expansion(const EtaQuotient& e, std::size_t order, std::uint64_t m) {
  return expand<Residue>(e, order, Modulus(m));
}

// ---------------------------------------------------------------------------

namespace {

void write_header(std::ostream& out, const Modulus& m, std::size_t order) {
  out << "# modulus=" << m.to_string() << " order=" << order << '\n';
}

}  // namespace

void write_text(std::ostream& out, const IntSeries& f) {
  write_header(out, f.modulus(), f.order());
  for (std::size_t n = 0; n < f.order(); ++n) out << n << ' ' << f[n].get_str() << '\n';
}

void write_text(std::ostream& out, const ModSeries& f) {
  write_header(out, f.modulus(), f.order());
  for (std::size_t n = 0; n < f.order(); ++n) out << n << ' ' << f[n] << '\n';
}

AnySeries read_text(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("series text: missing header");
  const std::string prefix = "# modulus=";
  if (line.rfind(prefix, 0) != 0) throw std::invalid_argument("series text: malformed header");
  std::istringstream header(line.substr(prefix.size()));
  std::string mod_text, order_field;
  header >> mod_text >> order_field;
  if (order_field.rfind("order=", 0) != 0) throw std::invalid_argument("series text: missing order");
  std::size_t order = 0;
  {
    auto digits = order_field.substr(6);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), order);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw std::invalid_argument("series text: bad order");
    }
  }

  std::vector<std::string> values;
  values.reserve(order);
  std::size_t expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::size_t n = 0;
    std::string value;
    if (!(row >> n >> value) || n != expected) {
      throw std::invalid_argument("series text: expected index " + std::to_string(expected));
    }
    values.push_back(value);
    ++expected;
  }
  if (values.size() != order) throw std::invalid_argument("series text: coefficient count mismatch");

  if (mod_text == "Z") {
    std::vector<Integer> coeffs;
    coeffs.reserve(order);
    for (const auto& v : values) {
      try {
        coeffs.emplace_back(v);
      } catch (const std::invalid_argument&) {
        throw std::invalid_argument("series text: bad integer '" + v + "'");
      }
    }
    return IntSeries(Modulus::integers(), std::move(coeffs));
  }

  std::uint64_t m = 0;
  auto [ptr, ec] = std::from_chars(mod_text.data(), mod_text.data() + mod_text.size(), m);
  if (ec != std::errc() || ptr != mod_text.data() + mod_text.size()) {
    throw std::invalid_argument("series text: bad modulus '" + mod_text + "'");
  }
  Modulus modulus(m);
  std::vector<Residue> coeffs;
  coeffs.reserve(order);
  for (const auto& v : values) {
    std::uint64_t c = 0;
    auto [p, e] = std::from_chars(v.data(), v.data() + v.size(), c);
    if (e != std::errc() || p != v.data() + v.size() || c >= m) {
      throw std::invalid_argument("series text: residue '" + v + "' outside [0, m)");
    }
    coeffs.push_back(static_cast<Residue>(c));
  }
  return ModSeries(modulus, std::move(coeffs));
}

#define PODLAB_INSTANTIATE(S)                                                                  \
  template Series<S> add(const Series<S>&, const Series<S>&);                                 \
  template Series<S> sub(const Series<S>&, const Series<S>&);                                 \
  template Series<S> negate(const Series<S>&);                                                \
  template Series<S> scale(const Series<S>&, const S&);                                       \
  template Series<S> mul(const Series<S>&, const Series<S>&);                                 \
  template Series<S> invert(const Series<S>&);                                                \
  template Series<S> pow(const Series<S>&, std::int64_t);                                     \
  template Series<S> shift(const Series<S>&, std::size_t);                                    \
  template Series<S> euler_product<S>(std::int64_t, std::int64_t, std::size_t, const Modulus&); \
  template Series<S> psi_series<S>(int, std::int64_t, std::size_t, const Modulus&);

PODLAB_INSTANTIATE(Integer)
PODLAB_INSTANTIATE(Residue)

#undef PODLAB_INSTANTIATE

}  // namespace podlab
