#include "podlab/congr.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "podlab/parallel.hpp"

namespace podlab {

namespace {

std::string progression_text(const Progression& p) {
  std::ostringstream out;
  if (p.a != 1) out << p.a;
  out << 'n';
  if (p.b != 0) out << '+' << p.b;
  return out.str();
}

void require_p3mod4(std::int64_t p) {
  if (!is_prime(p) || p % 4 != 3) {
    throw std::domain_error("expected a prime p = 3 (mod 4), got " + std::to_string(p));
  }
}

std::int64_t exact_div(std::int64_t num, std::int64_t den, const char* what) {
  if (num % den != 0) throw std::logic_error(std::string(what) + " is not an integer");
  return num / den;
}

}  // namespace

std::size_t CongruenceFamily::required_order(std::int64_t n_test) const {
  const std::int64_t top = std::max(lhs.at(n_test), rhs.at(n_test));
  return static_cast<std::size_t>(std::max(top, std::max(lhs.b, rhs.b))) + 1;
}

CongruenceFamily CongruenceFamily::specialized(std::int64_t scale) const {
  CongruenceFamily out = *this;
  out.lhs.a *= scale;
  out.rhs.a *= scale;
  return out;
}

std::string CongruenceFamily::describe() const {
  std::ostringstream out;
  out << "pod_" << ell << '(' << progression_text(lhs) << ") = " << (sign < 0 ? "-" : "") << "pod_" << ell
      << '(' << progression_text(rhs) << ") (mod " << modulus << ')';
  return out.str();
}

VerifyResult verify_family(const CongruenceFamily& fam, const ModPodTable& table, std::int64_t n_test) {
  if (n_test < 0) throw std::domain_error("n_test must be nonnegative");
  if (fam.sign != 1 && fam.sign != -1) throw std::domain_error("family sign must be +1 or -1");
  if (table.ell() != fam.ell) throw std::invalid_argument("pod table is for a different ell");
  if (!table.modulus().reducible_to(fam.modulus)) {
    throw std::invalid_argument("pod table modulus " + table.modulus().to_string() +
                                " cannot be reduced mod " + std::to_string(fam.modulus));
  }
  const std::size_t needed = fam.required_order(n_test);
  if (table.size() < needed) {
    throw std::out_of_range("pod table of order " + std::to_string(table.size()) + " is too short; " +
                            fam.tag + " needs order " + std::to_string(needed));
  }
  const std::uint64_t m = fam.modulus;
  VerifyResult result{fam.tag};
  for (std::int64_t n = 0; n <= n_test; ++n) {
    const std::uint64_t l = table[static_cast<std::size_t>(fam.lhs.at(n))] % m;
    const std::uint64_t r = table[static_cast<std::size_t>(fam.rhs.at(n))] % m;
    const bool ok = fam.sign > 0 ? l == r : (l + r) % m == 0;
    ++result.checked;
    if (!ok) {
      result.counterexample = n;
      std::ostringstream why;
      why << "n=" << n << ": pod_" << fam.ell << '(' << fam.lhs.at(n) << ") = " << l << ", pod_" << fam.ell
          << '(' << fam.rhs.at(n) << ") = " << r << " (mod " << m << ')';
      result.detail = why.str();
      return result;
    }
  }
  result.passed = true;
  result.detail = fam.describe() + " for 0 <= n <= " + std::to_string(n_test);
  return result;
}

VerifyResult verify_family(const CongruenceFamily& fam, std::int64_t n_test) {
  const auto table = pod_series(fam.ell, fam.required_order(n_test), fam.modulus);
  return verify_family(fam, table, n_test);
}

std::vector<VerifyResult> verify_families(std::span<const CongruenceFamily> families, std::int64_t n_test) {
  using Key = std::pair<int, std::uint32_t>;
  std::map<Key, std::size_t> orders;
  for (const auto& fam : families) {
    auto& o = orders[{fam.ell, fam.modulus}];
    o = std::max(o, fam.required_order(n_test));
  }
  std::vector<Key> keys;
  for (const auto& [key, order] : orders) keys.push_back(key);
  std::vector<std::unique_ptr<ModPodTable>> tables(keys.size());
  parallel_for(keys.size(), [&](std::size_t i) {
    tables[i] = std::make_unique<ModPodTable>(pod_series(keys[i].first, orders.at(keys[i]), keys[i].second));
  });
  std::map<Key, const ModPodTable*> by_key;
  for (std::size_t i = 0; i < keys.size(); ++i) by_key[keys[i]] = tables[i].get();

  std::vector<VerifyResult> results(families.size());
  parallel_for(families.size(), [&](std::size_t i) {
    const auto& fam = families[i];
    results[i] = verify_family(fam, *by_key.at({fam.ell, fam.modulus}), n_test);
  });
  return results;
}

CongruenceFamily theorem2_family(std::int64_t p, int k, std::int64_t delta) {
  require_p3mod4(p);
  if (k < 1) throw std::domain_error("theorem2_family needs k >= 1");
  if (delta < 0) throw std::domain_error("theorem2_family needs delta >= 0");
  if ((4 * delta + 3) % p != 0) {
    throw std::domain_error(std::to_string(p) + " does not divide 4*delta+3 = " + std::to_string(4 * delta + 3));
  }
  const std::int64_t lhs_b = p * delta + exact_div(3 * p - 1, 4, "(3p-1)/4");
  const std::int64_t rhs_b = exact_div(4 * delta + 3 - p, 4 * p, "(4delta+3-p)/(4p)");
  std::ostringstream tag;
  tag << "thm2 p=" << p << " k=" << k << " delta=" << delta;
  return {3,
          {checked_pow(p, static_cast<unsigned>(k + 1)), lhs_b},
          {checked_pow(p, static_cast<unsigned>(k - 1)), rhs_b},
          1,
          3,
          tag.str()};
}

CongruenceFamily corollary2_family(std::int64_t p, int k) {
  require_p3mod4(p);
  if (k < 1) throw std::domain_error("corollary2_family needs k >= 1");
  const std::int64_t p2k = checked_pow(p, static_cast<unsigned>(2 * k));
  std::ostringstream tag;
  tag << "cor2 p=" << p << " k=" << k;
  return {3, {p2k, exact_div(p2k - 1, 4, "(p^2k-1)/4")}, {1, 0}, 1, 3, tag.str()};
}

CongruenceFamily corollary3_family(std::int64_t p, int k) {
  require_p3mod4(p);
  if (k < 1) throw std::domain_error("corollary3_family needs k >= 1");
  const std::int64_t p2k = checked_pow(p, static_cast<unsigned>(2 * k));
  std::ostringstream tag;
  tag << "cor3 p=" << p << " k=" << k;
  return {3, {p2k * p, exact_div(p2k - 1, 4, "(p^2k-1)/4")}, {p, 0}, 1, 3, tag.str()};
}

CongruenceFamily veena_family(int k) {
  if (k < 1) throw std::domain_error("veena_family needs k >= 1");
  const std::int64_t a = checked_pow(9, static_cast<unsigned>(k));
  return {3, {a, (a - 1) / 4}, {1, 0}, 1, 3, "veena k=" + std::to_string(k)};
}

std::vector<CongruenceFamily> gireesh_families() {
  return {
      {3, {9, 2}, {1, 0}, 1, 9, "gireesh mod 9"},
      {3, {27, 20}, {3, 2}, 1, 27, "gireesh mod 27"},
      {3, {243, 182}, {27, 20}, 1, 81, "gireesh mod 81"},
  };
}

std::vector<std::int64_t> admissible_deltas(std::int64_t p, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t delta = 0; out.size() < count; ++delta) {
    if ((4 * delta + 3) % p == 0) out.push_back(delta);
  }
  return out;
}

VerifyResult verify_corollary2_chain(std::int64_t p, int k, std::int64_t n_test) {
  require_p3mod4(p);
  std::vector<CongruenceFamily> links;
  for (int j = 1; j <= k; ++j) {
    // 4 delta + 3 = p^{2j-1}
    const std::int64_t delta = (checked_pow(p, static_cast<unsigned>(2 * j - 1)) - 3) / 4;
    links.push_back(theorem2_family(p, j, delta).specialized(checked_pow(p, static_cast<unsigned>(j - 1))));
  }
  VerifyResult chained{"cor2-chain p=" + std::to_string(p) + " k=" + std::to_string(k)};
  chained.passed = true;
  for (const auto& result : verify_families(links, n_test)) {
    chained.checked += result.checked;
    if (!result.passed) {
      chained.passed = false;
      if (!chained.counterexample || *result.counterexample < *chained.counterexample) {
        chained.counterexample = result.counterexample;
        chained.detail = result.tag + ": " + result.detail;
      }
    }
  }
  if (chained.passed) chained.detail = std::to_string(k) + " links verified for 0 <= n <= " + std::to_string(n_test);
  return chained;
}

namespace {

template <typename Expected>
VerifyResult scan_identity(const std::string& tag, const ModPodTable& table, std::int64_t n_test,
                           std::uint64_t m, Expected&& expected) {
  VerifyResult result{tag};
  for (std::int64_t n = 0; n <= n_test; ++n) {
    const std::uint64_t lhs = table[static_cast<std::size_t>(n)];
    const std::uint64_t rhs = expected(n);
    ++result.checked;
    if (lhs != rhs) {
      result.counterexample = n;
      result.detail = "n=" + std::to_string(n) + ": pod = " + std::to_string(lhs) + ", expected " +
                      std::to_string(rhs) + " (mod " + std::to_string(m) + ")";
      return result;
    }
  }
  result.passed = true;
  result.detail = "0 <= n <= " + std::to_string(n_test);
  return result;
}

}  // namespace

VerifyResult verify_pod5(std::int64_t n_test) {
  if (n_test < 0) throw std::domain_error("n_test must be nonnegative");
  const auto table = pod_series(5, static_cast<std::size_t>(n_test) + 1, 5);
  return scan_identity("pod5", table, n_test, 5, [](std::int64_t n) {
    const std::int64_t s = sigma1(2 * n + 1);
    return static_cast<std::uint64_t>(floor_mod(n % 2 == 0 ? s : -s, 5));
  });
}

VerifyResult verify_pod7(std::int64_t n_test) {
  if (n_test < 0) throw std::domain_error("n_test must be nonnegative");
  const auto table = pod_series(7, static_cast<std::size_t>(n_test) + 1, 7);
  const std::int64_t eighth = mod_inverse(8, 7);
  return scan_identity("pod7", table, n_test, 7, [eighth](std::int64_t n) {
    const std::int64_t s = floor_mod(sigma2_chi(4 * n + 3), 7) * eighth;
    return static_cast<std::uint64_t>(floor_mod(n % 2 == 0 ? -s : s, 7));
  });
}

VerifyResult verify_podp(std::int64_t p, std::int64_t n_test) {
  if (p == 2 || !is_prime(p)) throw std::domain_error("verify_podp needs an odd prime, got " + std::to_string(p));
  if (n_test < 0) throw std::domain_error("n_test must be nonnegative");
  const auto order = static_cast<std::size_t>(n_test) + 1;
  const auto table = pod_series(static_cast<int>(p), order, static_cast<std::uint64_t>(p));
  const auto t = reduce_mod(t_k(static_cast<int>(p - 1), order), static_cast<std::uint64_t>(p));
  return scan_identity("podp p=" + std::to_string(p), table, n_test, static_cast<std::uint64_t>(p),
                       [&](std::int64_t n) {
                         const std::int64_t v = t[static_cast<std::size_t>(n)];
                         return static_cast<std::uint64_t>(floor_mod(n % 2 == 0 ? v : -v, p));
                       });
}

std::vector<CongruenceFamily> corollary3_example_families() {
  return {
      {3, {343, 12}, {7, 0}, 1, 3, "cor3 example 343n+12"},
      {3, {343, 24}, {7, 0}, 1, 3, "cor3 example 343n+24 (as printed)"},
  };
}

const std::vector<std::string>& builtin_tags() {
  static const std::vector<std::string> tags = {"gireesh", "veena", "thm2", "cor2", "cor3",
                                                "cor3-example", "pod5", "pod7", "podp", "all"};
  return tags;
}

std::vector<VerifyResult> run_builtin(const std::string& tag, std::int64_t n_test) {
  std::vector<CongruenceFamily> families;
  std::vector<VerifyResult> extra;
  if (tag == "gireesh") {
    families = gireesh_families();
  } else if (tag == "veena") {
    for (int k = 1; k <= 3; ++k) families.push_back(veena_family(k));
  } else if (tag == "thm2") {
    for (std::int64_t p : {3, 7, 11, 19}) {
      for (int k = 1; k <= 2; ++k) {
        for (auto delta : admissible_deltas(p, 3)) families.push_back(theorem2_family(p, k, delta));
      }
    }
  } else if (tag == "cor2") {
    for (std::int64_t p : {3, 7, 11}) {
      for (int k = 1; k <= 2; ++k) {
        families.push_back(corollary2_family(p, k));
        extra.push_back(verify_corollary2_chain(p, k, n_test));
      }
    }
  } else if (tag == "cor3") {
    for (std::int64_t p : {3, 7, 11}) {
      for (int k = 1; k <= 2; ++k) families.push_back(corollary3_family(p, k));
    }
  } else if (tag == "cor3-example") {
    families = corollary3_example_families();
  } else if (tag == "pod5") {
    extra.push_back(verify_pod5(n_test));
  } else if (tag == "pod7") {
    extra.push_back(verify_pod7(n_test));
  } else if (tag == "podp") {
    for (std::int64_t p : {3, 5, 7, 11}) extra.push_back(verify_podp(p, n_test));
  } else if (tag == "all") {
    std::vector<VerifyResult> all;
    for (const auto& t : builtin_tags()) {
      if (t == "all" || t == "cor3-example") continue;
      auto part = run_builtin(t, n_test);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  } else {
    throw std::invalid_argument("unknown builtin family tag '" + tag + "'");
  }
  auto results = verify_families(families, n_test);
  results.insert(results.end(), extra.begin(), extra.end());
  return results;
}

nlohmann::json to_json(const CongruenceFamily& fam) {
  return {{"ell", fam.ell},   {"lhsA", fam.lhs.a},     {"lhsB", fam.lhs.b}, {"rhsA", fam.rhs.a},
          {"rhsB", fam.rhs.b}, {"sign", fam.sign},     {"modulus", fam.modulus}, {"tag", fam.tag}};
}

CongruenceFamily family_from_json(const nlohmann::json& j) {
  CongruenceFamily fam{};
  try {
    fam.ell = j.at("ell").get<int>();
    fam.lhs = {j.at("lhsA").get<std::int64_t>(), j.at("lhsB").get<std::int64_t>()};
    fam.rhs = {j.at("rhsA").get<std::int64_t>(), j.at("rhsB").get<std::int64_t>()};
    fam.sign = j.value("sign", 1);
    fam.modulus = j.at("modulus").get<std::uint32_t>();
    fam.tag = j.value("tag", std::string("family"));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed congruence family: ") + e.what());
  }
  if (fam.ell < 2) throw std::invalid_argument("family ell must be >= 2");
  if (fam.lhs.a < 1 || fam.rhs.a < 1 || fam.lhs.b < 0 || fam.rhs.b < 0) {
    throw std::invalid_argument("family progressions need A >= 1 and B >= 0");
  }
  if (fam.sign != 1 && fam.sign != -1) throw std::invalid_argument("family sign must be +1 or -1");
  if (fam.modulus < 2) throw std::invalid_argument("family modulus must be >= 2");
  return fam;
}

nlohmann::json to_json(const VerifyResult& result) {
  nlohmann::json j = {{"tag", result.tag}, {"passed", result.passed}, {"checked", result.checked},
                      {"detail", result.detail}};
  j["counterexample"] = result.counterexample ? nlohmann::json(*result.counterexample) : nlohmann::json();
  return j;
}

}  // namespace podlab
