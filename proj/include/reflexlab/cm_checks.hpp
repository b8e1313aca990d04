#pragma once

// Structural checks on a CM group: orbit degrees and the cocycle suite.

#include <algorithm>
#include <bit>
#include <random>
#include <string>
#include <vector>

#include "reflexlab/cm_structure.hpp"
#include "reflexlab/report.hpp"

namespace reflexlab {

inline constexpr std::size_t kExhaustiveCocycleOrder = 200;
inline constexpr std::size_t kCocycleSamples = 20000;

/// Orbit sizes of the star action sum to 2^N, and the J_odd orbits cover the
/// 2^(N-1) odd subsets.
inline VerificationReport verify_orbit_degrees(const CMGroup& cm) {
  VerificationReport rep;
  rep.check = "orbit-degrees";
  const std::size_t n = cm.degree();
  std::size_t total = 0;
  Json orbits = Json::array();
  for (const auto& o : cm_orbits(cm)) {
    total += o.orbit_size;
    rep.require(o.stabilizer == reflex_subgroup(cm, o.representative),
                "stabilizer differs from H*(Phi) for f=" + bits_to_string(o.representative.bits, n));
    orbits.push_back(orbit_json(cm, o));
  }
  std::size_t odd_total = 0;
  for (Bits subset : jodd_representatives(cm)) odd_total += subset_orbit_size(cm, subset);
  rep.require(total == (std::size_t{1} << n), "orbit sizes sum to " + std::to_string(total));
  rep.require(odd_total == (std::size_t{1} << (n - 1)), "J_odd orbit sizes sum to " + std::to_string(odd_total));
  rep.parameters["degree"] = n;
  rep.parameters["group_order"] = cm.order();
  rep.details["orbit_size_sum"] = total;
  rep.details["jodd_size_sum"] = odd_total;
  rep.details["orbits"] = orbits;
  return rep;
}

/// Cocycle law, r_f = r_f' iff f' in {f, f + 1}, star as a left action,
/// C n H*(Phi_f) = {id}, r on C independent of f and injective, and H(I)
/// independent of f. Exhaustive for |G| <= 200, seeded samples of element
/// pairs otherwise.
inline VerificationReport verify_cocycle_suite(const CMGroup& cm, std::uint64_t seed = 1) {
  VerificationReport rep;
  rep.check = "cocycle-suite";
  const Group& g = cm.group();
  const std::size_t n = cm.degree();
  const std::size_t count = std::size_t{1} << n;
  const Bits ones = cm.ones();
  const bool exhaustive = g.order() <= kExhaustiveCocycleOrder;
  if (count * g.order() > (std::size_t{1} << 24)) throw ResourceError("cocycle table of 2^N x |G| entries exceeds the cap");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  if (exhaustive) {
    for (std::size_t a = 0; a < g.order(); ++a)
      for (std::size_t b = 0; b < g.order(); ++b) pairs.emplace_back(a, b);
  } else {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < kCocycleSamples; ++k) pairs.emplace_back(rng() % g.order(), rng() % g.order());
  }

  // r[f][tau]
  std::vector<std::vector<Bits>> r(count, std::vector<Bits>(g.order()));
  for (std::size_t f = 0; f < count; ++f)
    for (std::size_t t = 0; t < g.order(); ++t) r[f][t] = cocycle(cm, {static_cast<Bits>(f)}, g.element(t));

  std::size_t law_failures = 0, action_failures = 0;
  for (std::size_t f = 0; f < count; ++f)
    for (const auto& [a, b] : pairs) {
      const auto& ta = g.element(a);
      if (r[f][g.multiply(a, b)] != (r[f][a] ^ ta.act(r[f][b]))) ++law_failures;
      const CMType fb{static_cast<Bits>(f)};
      if (star(cm, g.element(g.multiply(a, b)), fb) != star(cm, ta, star(cm, g.element(b), fb))) ++action_failures;
    }
  rep.require(law_failures == 0, std::to_string(law_failures) + " cocycle law violations");
  rep.require(action_failures == 0, std::to_string(action_failures) + " star action violations");

  // Group CM-types by their cocycle; each class must be exactly {f, f + 1}.
  std::vector<std::size_t> order(count);
  for (std::size_t f = 0; f < count; ++f) order[f] = f;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return r[x] < r[y]; });
  std::size_t equivalence_failures = 0;
  for (std::size_t k = 0; k < count;) {
    std::size_t end = k + 1;
    while (end < count && r[order[end]] == r[order[k]]) ++end;
    const bool pair_ok = end - k == 2 && (order[k] ^ order[k + 1]) == ones;
    if (!pair_ok) ++equivalence_failures;
    k = end;
  }
  rep.require(equivalence_failures == 0, std::to_string(equivalence_failures) + " cocycle classes differ from {f, f + 1}");

  for (std::size_t f = 0; f < count; ++f) {
    const auto hstar = reflex_subgroup(cm, {static_cast<Bits>(f)});
    for (std::size_t x : hstar)
      if (x != g.identity() && g.element(x).perm_is_identity())
        rep.fail("C meets H*(Phi_f) nontrivially for f=" + bits_to_string(static_cast<Bits>(f), n));
  }

  std::vector<Bits> seen;
  for (std::size_t c : cm.c_kernel()) {
    for (std::size_t f = 1; f < count; ++f)
      if (r[f][c] != r[0][c]) rep.fail("r on C depends on f at " + to_string(g.element(c)));
    if (c != g.identity() && r[0][c] == 0) rep.fail("r vanishes at " + to_string(g.element(c)));
    seen.push_back(r[0][c]);
  }
  std::sort(seen.begin(), seen.end());
  rep.require(std::adjacent_find(seen.begin(), seen.end()) == seen.end(), "r is not injective on C");

  std::size_t independence_checked = 0;
  for (std::size_t subset = 1; subset < count; ++subset) {
    const auto base = h_of_subset(cm, static_cast<Bits>(subset));
    for (std::size_t f = 1; f < count; f = f * 2 + 1) {
      ++independence_checked;
      if (h_of_subset(cm, static_cast<Bits>(subset), {static_cast<Bits>(f)}) != base)
        rep.fail("H(I) depends on f for I=" + bits_to_string(static_cast<Bits>(subset), n));
    }
    if (std::popcount(static_cast<Bits>(subset)) % 2 == 1 && std::binary_search(base.begin(), base.end(), cm.iota()))
      rep.fail("iota lies in H(I) for odd I=" + bits_to_string(static_cast<Bits>(subset), n));
  }

  rep.parameters["degree"] = n;
  rep.parameters["group_order"] = g.order();
  rep.parameters["seed"] = seed;
  rep.details["exhaustive"] = exhaustive;
  rep.details["element_pairs"] = pairs.size();
  rep.details["cm_types"] = count;
  rep.details["h_independence_checks"] = independence_checked;
  return rep;
}

}  // namespace reflexlab
