#pragma once

// Congruence families pod_ell(A n + B) = sign * pod_ell(A' n + B') (mod M),
// declared as data and checked by one generic scanner over n in [0, N].

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "podlab/partitions.hpp"

namespace podlab {

/// The arithmetic progression n -> a n + b.
struct Progression {
  std::int64_t a;
  std::int64_t b;
  std::int64_t at(std::int64_t n) const { return a * n + b; }
  friend bool operator==(const Progression&, const Progression&) = default;
};

struct CongruenceFamily {
  int ell;
  Progression lhs;
  Progression rhs;
  int sign;  // +1 or -1
  std::uint32_t modulus;
  std::string tag;

  /// Table order needed to scan n in [0, n_test].
  std::size_t required_order(std::int64_t n_test) const;

  /// The same family with n replaced by scale * n.
  CongruenceFamily specialized(std::int64_t scale) const;

  std::string describe() const;
};

struct VerifyResult {
  std::string tag;
  bool passed = false;
  std::optional<std::int64_t> counterexample;
  std::int64_t checked = 0;  // number of n values examined
  std::string detail;
};

VerifyResult verify_family(const CongruenceFamily& fam, const ModPodTable& table, std::int64_t n_test);
VerifyResult verify_family(const CongruenceFamily& fam, std::int64_t n_test);

/// Verifies many families, building one pod table per (ell, modulus) and
/// scanning families concurrently. Results follow the input order.
std::vector<VerifyResult> verify_families(std::span<const CongruenceFamily> families, std::int64_t n_test);

CongruenceFamily theorem2_family(std::int64_t p, int k, std::int64_t delta);
CongruenceFamily corollary2_family(std::int64_t p, int k);
CongruenceFamily corollary3_family(std::int64_t p, int k);
CongruenceFamily veena_family(int k);
std::vector<CongruenceFamily> gireesh_families();

/// The `count` smallest delta >= 0 with p | 4 delta + 3.
std::vector<std::int64_t> admissible_deltas(std::int64_t p, std::size_t count);

/// Corollary 2 obtained by chaining k Theorem 2 links, each specialized by
/// n -> p^{j-1} n; passes iff every link passes on [0, n_test].
VerifyResult verify_corollary2_chain(std::int64_t p, int k, std::int64_t n_test);

VerifyResult verify_pod5(std::int64_t n_test);
VerifyResult verify_pod7(std::int64_t n_test);
VerifyResult verify_podp(std::int64_t p, std::int64_t n_test);

/// Named collections of checks exposed by `verify --builtin`.
/// "all" runs every tag except "cor3-example", whose printed variant is known not to hold.
const std::vector<std::string>& builtin_tags();
std::vector<VerifyResult> run_builtin(const std::string& tag, std::int64_t n_test);

/// The 343n+b example with the offset from the general formula (b = 12) and
/// as printed in the source statement (b = 24).
std::vector<CongruenceFamily> corollary3_example_families();

nlohmann::json to_json(const CongruenceFamily& fam);
CongruenceFamily family_from_json(const nlohmann::json& j);
nlohmann::json to_json(const VerifyResult& result);

}  // namespace podlab
