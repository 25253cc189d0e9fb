#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "podlab/qseries.hpp"

using namespace podlab;

namespace {

const Modulus Z = Modulus::integers();

IntSeries random_series(std::mt19937_64& rng, std::size_t order, bool unit_constant) {
  std::uniform_int_distribution<std::int64_t> coeff(-9, 9);
  std::vector<std::int64_t> c(order);
  for (auto& v : c) v = coeff(rng);
  if (unit_constant) c[0] = (rng() & 1) ? 1 : -1;
  return IntSeries::from_ints(Z, c);
}

ModSeries random_mod_series(std::mt19937_64& rng, std::uint64_t m, std::size_t order) {
  std::uniform_int_distribution<std::int64_t> coeff(0, static_cast<std::int64_t>(m) - 1);
  std::vector<std::int64_t> c(order);
  for (auto& v : c) v = coeff(rng);
  c[0] = 1;
  return ModSeries::from_ints(Modulus(m), c);
}

IntSeries from_poly(const oracle::Poly& p) { return IntSeries(Z, std::vector<Integer>(p.begin(), p.end())); }

}  // namespace

TEST_CASE("mul examples") {
  auto a = IntSeries::from_ints(Z, {1, 1, 0});
  auto b = IntSeries::from_ints(Z, {1, -1, 0});
  CHECK(mul(a, b) == IntSeries::from_ints(Z, {1, 0, -1}));
  auto f = IntSeries::from_ints(Z, {3, -1, 4, 1});
  CHECK(f * IntSeries::one(Z, 4) == f);
  auto geometric = IntSeries::from_ints(Z, {1, 1, 1, 1, 1});
  CHECK(geometric * IntSeries::from_ints(Z, {1, -1, 0, 0, 0}) == IntSeries::one(Z, 5));
}

TEST_CASE("mul truncates to the shorter order and rejects mixed rings") {
  auto a = IntSeries::from_ints(Z, {1, 2, 3, 4});
  auto b = IntSeries::from_ints(Z, {1, 1});
  CHECK((a * b).order() == 2);
  auto m3 = ModSeries::from_ints(Modulus(3), {1, 2});
  auto m5 = ModSeries::from_ints(Modulus(5), {1, 2});
  CHECK_THROWS_AS(m3 * m5, std::invalid_argument);
  CHECK_THROWS_AS(m3 + m5, std::invalid_argument);
}

TEST_CASE("coefficients mod m stay in range") {
  auto f = ModSeries::from_ints(Modulus(7), {-1, 15, 7, -8});
  for (std::size_t i = 0; i < f.order(); ++i) CHECK(f[i] < 7);
  CHECK(f == ModSeries::from_ints(Modulus(7), {6, 1, 0, 6}));
}

TEST_CASE("ring laws on random series") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_series(rng, 64, false);
    auto g = random_series(rng, 64, false);
    auto h = random_series(rng, 64, false);
    REQUIRE((f * g) * h == f * (g * h));
    REQUIRE(f * g == g * f);
    REQUIRE(f * (g + h) == f * g + f * h);
    REQUIRE((f - g) + g == f);
  }
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_mod_series(rng, 81, 64);
    auto g = random_mod_series(rng, 81, 64);
    auto h = random_mod_series(rng, 81, 64);
    REQUIRE((f * g) * h == f * (g * h));
    REQUIRE(f * (g + h) == f * g + f * h);
  }
}

TEST_CASE("mul matches the schoolbook oracle") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_series(rng, 50, false);
    auto g = random_series(rng, 50, false);
    oracle::Poly pf(f.coefficients().begin(), f.coefficients().end());
    oracle::Poly pg(g.coefficients().begin(), g.coefficients().end());
    REQUIRE(f * g == from_poly(oracle::multiply(pf, pg, 50)));
  }
}

TEST_CASE("invert") {
  CHECK(invert(IntSeries::from_ints(Z, {1, -1, 0, 0})) == IntSeries::from_ints(Z, {1, 1, 1, 1}));
  CHECK_THROWS_AS(invert(IntSeries::from_ints(Z, {2, 1})), NotInvertible);
  CHECK_THROWS_AS(invert(ModSeries::from_ints(Modulus(9), {3, 1})), NotInvertible);
  CHECK(invert(ModSeries::from_ints(Modulus(9), {2, 1})) * ModSeries::from_ints(Modulus(9), {2, 1}) ==
        ModSeries::one(Modulus(9), 2));

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_series(rng, 64, true);
    auto inv = invert(f);
    REQUIRE(f * inv == IntSeries::one(Z, 64));
    REQUIRE(inv * f == IntSeries::one(Z, 64));
    REQUIRE(invert(inv) == f);
    auto g = random_mod_series(rng, 27, 64);
    REQUIRE(g * invert(g) == ModSeries::one(Modulus(27), 64));
  }
}

TEST_CASE("pow and shift") {
  auto f = IntSeries::from_ints(Z, {1, 1, 0, 0, 0});
  CHECK(pow(f, 3) == IntSeries::from_ints(Z, {1, 3, 3, 1, 0}));
  CHECK(pow(f, 0) == IntSeries::one(Z, 5));
  CHECK(pow(f, -1) == invert(f));
  CHECK(shift(IntSeries::from_ints(Z, {1, 2, 3}), 1) == IntSeries::from_ints(Z, {0, 1, 2}));
}

TEST_CASE("euler_product examples") {
  CHECK(euler_product(1, 1, 8) == IntSeries::from_ints(Z, {1, -1, -1, 0, 0, 1, 0, 1}));
  CHECK(euler_product(7, 0, 5) == IntSeries::one(Z, 5));
  CHECK(euler_product(2, 1, 3) == IntSeries::from_ints(Z, {1, 0, -1}));
}

TEST_CASE("euler_product is supported on generalized pentagonal numbers") {
  const std::size_t order = 1000;
  const auto f = euler_product(1, 1, order);
  std::map<std::int64_t, int> expected;
  for (std::int64_t k = -40; k <= 40; ++k) {
    const std::int64_t g = k * (3 * k - 1) / 2;
    if (g < static_cast<std::int64_t>(order)) expected[g] = (k % 2 == 0) ? 1 : -1;
  }
  for (std::size_t n = 0; n < order; ++n) {
    const auto it = expected.find(static_cast<std::int64_t>(n));
    REQUIRE(f[n] == (it == expected.end() ? 0 : it->second));
  }
  REQUIRE(f == from_poly(oracle::euler_product(1, 1, order)));
}

TEST_CASE("euler_product with scaled and negative exponents matches the oracle") {
  for (std::int64_t delta : {1, 2, 3, 8}) {
    for (int r : {1, 2, 5}) {
      REQUIRE(euler_product(delta, r, 120) == from_poly(oracle::euler_product(delta, r, 120)));
      REQUIRE(euler_product(delta, -r, 120) == from_poly(oracle::inverse_euler_product(delta, r, 120)));
    }
  }
  auto mod = euler_product<Residue>(3, -4, 200, Modulus(9));
  REQUIRE(mod == reduce_mod(from_poly(oracle::inverse_euler_product(3, 4, 200)), 9));
}

TEST_CASE("psi_series examples") {
  CHECK(psi_series(1, 1, 12) == IntSeries::from_ints(Z, {1, 1, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0}));
  CHECK(psi_series(-1, 1, 12) == IntSeries::from_ints(Z, {1, -1, 0, -1, 0, 0, 1, 0, 0, 0, 1, 0}));
  CHECK(psi_series(1, 3, 12) == IntSeries::from_ints(Z, {1, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0}));
}

TEST_CASE("psi_series is the indicator of triangular numbers") {
  const std::size_t order = 5000;
  std::set<std::int64_t> tri;
  for (std::int64_t j = 0; j * (j + 1) / 2 < static_cast<std::int64_t>(order); ++j) tri.insert(j * (j + 1) / 2);
  const auto f = psi_series(1, 1, order);
  for (std::size_t n = 0; n < order; ++n) REQUIRE(f[n] == (tri.count(static_cast<std::int64_t>(n)) ? 1 : 0));
}

TEST_CASE("binomial congruence for Euler products") {
  struct Case {
    std::int64_t p;
    int k;
  };
  for (auto [p, k] : {Case{3, 1}, Case{3, 2}, Case{5, 1}, Case{7, 1}}) {
    const auto m = static_cast<std::uint64_t>(checked_pow(p, static_cast<unsigned>(k)));
    for (std::int64_t r : {1, 24}) {
      auto lhs = pow(euler_product<Residue>(r, 1, 500, Modulus(m)), checked_pow(p, static_cast<unsigned>(k)));
      auto rhs = pow(euler_product<Residue>(p * r, 1, 500, Modulus(m)), checked_pow(p, static_cast<unsigned>(k - 1)));
      INFO("p=" << p << " k=" << k << " r=" << r);
      REQUIRE(lhs == rhs);
    }
  }
}

TEST_CASE("reduce_mod") {
  CHECK(reduce_mod(IntSeries::from_ints(Z, {1, -2}), 3) == ModSeries::from_ints(Modulus(3), {1, 1}));
  auto f = IntSeries::from_ints(Z, {10, -20, 33, 7});
  auto once = reduce_mod(f, 9);
  CHECK(reduce_mod(once, 9) == once);
  CHECK(reduce_mod(once, 3) == reduce_mod(f, 3));
  CHECK_THROWS(reduce_mod(once, 2));
}

TEST_CASE("EtaQuotient parsing and validation") {
  auto e = EtaQuotient::parse("4:2,16:2,8:-2@64");
  CHECK(e.level() == 64);
  CHECK(e.exponent_of(8) == -2);
  CHECK(e.exponent_of(2) == 0);
  CHECK(e.to_string() == "4:2,8:-2,16:2@64");
  CHECK(EtaQuotient::parse("2:1,3:1").level() == 6);
  CHECK(EtaQuotient::parse(e.to_string()).to_string() == e.to_string());

  CHECK_THROWS_AS(EtaQuotient::parse("4:2,16:x@64"), ParseError);
  CHECK_THROWS_AS(EtaQuotient::parse("4:2@"), ParseError);
  CHECK_THROWS_AS(EtaQuotient::parse(""), ParseError);
  try {
    EtaQuotient::parse("4:2,16:x@64");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.position() == 7);
  }
  CHECK_THROWS(EtaQuotient(64, {{5, 1}}));          // 5 does not divide 64
  CHECK_THROWS(EtaQuotient(64, {{4, 1}, {4, 2}}));  // repeated delta
  CHECK_THROWS(EtaQuotient(64, {{4, 0}}));          // zero exponent
  auto merged = EtaQuotient::merged(72, std::vector<EtaFactor>{{24, 1}, {72, 1}, {72, -1}, {24, 2}});
  CHECK(merged.to_string() == "24:3@72");
}

TEST_CASE("eta_expansion") {
  auto trivial = eta_expansion(EtaQuotient(24, {{24, 1}, {12, 1}}).with_level(24), 10);
  CHECK(trivial.offset == make_rational(36, 24));

  auto cancel = eta_expansion(EtaQuotient::merged(24, std::vector<EtaFactor>{{24, 1}, {24, -1}}), 10);
  CHECK(cancel.offset == 0);
  CHECK(cancel.series == IntSeries::one(Z, 10));

  // eta(4z)^2 eta(16z)^2 / eta(8z)^2, checked against the naive product
  const std::size_t order = 200;
  auto x = eta_expansion(EtaQuotient::parse("4:2,16:2,8:-2@64"), order);
  CHECK(x.offset == 1);
  auto naive = oracle::multiply(oracle::multiply(oracle::euler_product(4, 2, order), oracle::euler_product(16, 2, order),
                                                 order),
                                oracle::inverse_euler_product(8, 2, order), order);
  CHECK(x.series == from_poly(naive));
  CHECK(eta_expansion(EtaQuotient::parse("4:2,16:2,8:-2@64"), order, 3).series == reduce_mod(from_poly(naive), 3));

  auto half = eta_expansion(EtaQuotient::parse("1:1@1"), 5);
  CHECK(half.offset == make_rational(1, 24));
}

TEST_CASE("text format round trip") {
  std::mt19937_64 rng(9);
  auto f = random_series(rng, 40, false);
  f.set(3, Integer("123456789012345678901234567890"));
  std::stringstream s;
  write_text(s, f);
  auto back = read_text(s);
  REQUIRE(std::holds_alternative<IntSeries>(back));
  CHECK(std::get<IntSeries>(back) == f);

  auto g = random_mod_series(rng, 81, 30);
  std::stringstream t;
  write_text(t, g);
  CHECK(t.str().rfind("# modulus=81 order=30\n0 1\n", 0) == 0);
  auto back2 = read_text(t);
  REQUIRE(std::holds_alternative<ModSeries>(back2));
  CHECK(std::get<ModSeries>(back2) == g);

  std::stringstream bad1("# modulus=Z order=2\n0 1\n");
  CHECK_THROWS(read_text(bad1));
  std::stringstream bad2("# modulus=5 order=2\n0 1\n1 7\n");
  CHECK_THROWS(read_text(bad2));
  std::stringstream bad3("0 1\n");
  CHECK_THROWS(read_text(bad3));
  std::stringstream bad4("# modulus=Z order=2\n1 1\n0 1\n");
  CHECK_THROWS(read_text(bad4));
}
