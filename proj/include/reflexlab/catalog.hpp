#pragma once

// Group families: hyperoctahedral B_N, <iota> x G_0, and the dihedral model
// built from explicit images of alpha^i and alpha^i beta.

#include <algorithm>
#include <bit>
#include <sstream>
#include <string>
#include <vector>

#include "reflexlab/characters.hpp"
#include "reflexlab/cm_structure.hpp"
#include "reflexlab/errors.hpp"
#include "reflexlab/report.hpp"
#include "reflexlab/signed_perm.hpp"

namespace reflexlab {

inline constexpr int kMaxDihedral = 16;

inline SignedPerm cycle_perm(std::size_t n) {
  std::vector<int> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<int>((k + 1) % n) + 1;
  return SignedPerm::from_one_line(0, images);
}

inline SignedPerm transposition(std::size_t n, std::size_t a, std::size_t b) {
  std::vector<int> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<int>(k) + 1;
  std::swap(images[a], images[b]);
  return SignedPerm::from_one_line(0, images);
}

inline CMGroup build_hyperoctahedral(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n == 0 || n > kMaxDegree) throw ResourceError("hyperoctahedral degree must lie in 1.." + std::to_string(kMaxDegree));
  std::size_t predicted = std::size_t{1} << n;
  for (std::size_t k = 2; k <= n; ++k) {
    predicted *= k;
    if (predicted > max_order) break;
  }
  if (predicted > max_order) throw ResourceError("B_" + std::to_string(n) + " exceeds the group order cap of " + std::to_string(max_order));
  std::vector<SignedPerm> gens{SignedPerm(n).with_signs(1)};
  if (n >= 2) {
    gens.push_back(transposition(n, 0, 1));
    if (n >= 3) gens.push_back(cycle_perm(n));
  }
  return validate_cm_group(close(n, gens, max_order));
}

/// G = { (0, sigma), (1, sigma) : sigma in G_0 } from permutation generators of G_0.
inline CMGroup build_iota_times_g0(std::size_t n, const std::vector<SignedPerm>& g0_generators, std::size_t max_order = kDefaultMaxOrder) {
  std::vector<SignedPerm> gens{SignedPerm::iota(n)};
  for (const auto& p : g0_generators) {
    if (p.degree() != n) throw InputError("G_0 generator has the wrong degree");
    if (p.signs() != 0) throw InputError("G_0 generators must be plain permutations");
    gens.push_back(p);
  }
  return validate_cm_group(close(n, gens, max_order));
}

/// Parses permutations written as 1-based one-line images separated by spaces,
/// several generators separated by ';' (for example "2 3 1; 2 1 3").
inline std::vector<SignedPerm> parse_permutation_list(std::size_t n, const std::string& text) {
  std::vector<SignedPerm> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = std::min(text.find(';', start), text.size());
    std::istringstream in(text.substr(start, end - start));
    std::vector<int> images;
    std::string tok;
    while (in >> tok) {
      try {
        std::size_t used = 0;
        images.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw InputError("");
      } catch (const std::exception&) {
        throw InputError("bad permutation image '" + tok + "'");
      }
    }
    if (!images.empty()) {
      if (images.size() != n) throw InputError("permutation needs " + std::to_string(n) + " images");
      out.push_back(SignedPerm::from_one_line(0, images));
    }
    start = end + 1;
  }
  return out;
}

// ---- dihedral ----------------------------------------------------------------

/// r_{Phi_0}(alpha^i) = 1^i 0^(n-i).
inline Bits dihedral_alpha_signs(std::size_t n, std::size_t i) {
  Bits b = 0;
  for (std::size_t k = 0; k < i && k < n; ++k) b |= Bits{1} << k;
  return b;
}

/// r_{Phi_0}(alpha^i beta) = 0^(i+1) 1^(n-i-1).
inline Bits dihedral_alpha_beta_signs(std::size_t n, std::size_t i) {
  Bits b = 0;
  for (std::size_t k = i + 1; k < n; ++k) b |= Bits{1} << k;
  return b;
}

/// rho(alpha^i) = (1 2 ... n)^i.
inline std::vector<int> dihedral_alpha_perm(std::size_t n, std::size_t i) {
  std::vector<int> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<int>((k + i) % n) + 1;
  return images;
}

/// rho(alpha^i beta) = (floor((n+i+1)/2) ceil((n+i+3)/2)) ... (i+3 n-1)(i+2 n)
///                     (1 i+1)(2 i) ... (floor((i+1)/2) ceil((i+3)/2)).
inline std::vector<int> dihedral_alpha_beta_perm(std::size_t n, std::size_t i) {
  std::vector<int> images(n);
  for (std::size_t k = 0; k < n; ++k) images[k] = static_cast<int>(k) + 1;
  auto swap_points = [&](long a, long b) {
    std::swap(images[static_cast<std::size_t>(a - 1)], images[static_cast<std::size_t>(b - 1)]);
  };
  const long nn = static_cast<long>(n);
  const long ii = static_cast<long>(i);
  for (long a = ii + 2, b = nn; a < b; ++a, --b) swap_points(a, b);
  for (long a = 1, b = ii + 1; a < b; ++a, --b) swap_points(a, b);
  return images;
}

inline SignedPerm dihedral_alpha_power(std::size_t n, std::size_t i) {
  return SignedPerm::from_one_line(dihedral_alpha_signs(n, i), dihedral_alpha_perm(n, i));
}

inline SignedPerm dihedral_alpha_power_beta(std::size_t n, std::size_t i) {
  return SignedPerm::from_one_line(dihedral_alpha_beta_signs(n, i), dihedral_alpha_beta_perm(n, i));
}

inline SignedPerm power(const SignedPerm& x, std::size_t k) {
  SignedPerm out(x.degree());
  for (std::size_t j = 0; j < k; ++j) out = compose(out, x);
  return out;
}

/// Result of building the dihedral model, with the generator images.
struct DihedralModel {
  std::size_t n = 0;
  SignedPerm alpha;
  SignedPerm beta;
  CMGroup cm;
};

/// Builds the model from alpha and beta, checks the defining relations and
/// that every alpha^i and alpha^i beta (0 <= i < n) given by the explicit
/// formulas matches the corresponding product of generators.
inline DihedralModel build_dihedral_model(std::size_t n, std::size_t max_order = kDefaultMaxOrder) {
  if (n < 2 || n > static_cast<std::size_t>(kMaxDihedral))
    throw ResourceError("dihedral n must lie in 2.." + std::to_string(kMaxDihedral));
  const SignedPerm alpha = dihedral_alpha_power(n, 1);
  const SignedPerm beta = dihedral_alpha_power_beta(n, 0);
  const SignedPerm id(n);
  if (!power(alpha, 2 * n).is_identity()) throw ModelError("alpha^(2n) != id");
  if (!compose(beta, beta).is_identity()) throw ModelError("beta^2 != id");
  if (compose(compose(beta, alpha), inverse(beta)) != inverse(alpha)) throw ModelError("beta alpha beta^-1 != alpha^-1");
  if (power(alpha, n) != SignedPerm::iota(n)) throw ModelError("alpha^n is not iota");
  for (std::size_t i = 0; i < n; ++i) {
    const auto a = power(alpha, i);
    if (a != dihedral_alpha_power(n, i)) throw ModelError("formula for alpha^" + std::to_string(i) + " disagrees");
    if (compose(a, beta) != dihedral_alpha_power_beta(n, i))
      throw ModelError("formula for alpha^" + std::to_string(i) + " beta disagrees");
  }
  Group g = close(n, {alpha, beta}, max_order);
  if (g.order() != 4 * n) throw ModelError("dihedral model does not have order 4n");
  return {n, alpha, beta, validate_cm_group(std::move(g))};
}

inline CMGroup build_dihedral(std::size_t n, std::size_t max_order = kDefaultMaxOrder) { return build_dihedral_model(n, max_order).cm; }

/// Largest k with 2^k | n.
inline std::size_t two_adic_valuation(std::size_t n) {
  std::size_t k = 0;
  while (n % 2 == 0 && n > 0) {
    n /= 2;
    ++k;
  }
  return k;
}

inline Bits rotate_subset(Bits subset, std::size_t n, std::size_t shift) {
  Bits out = 0;
  for (std::size_t k = 0; k < n; ++k)
    if (test_bit(subset, k)) out |= Bits{1} << ((k + shift) % n);
  return out;
}

/// H*(Phi_0) = {id, alpha^(n-1) beta}, and the classification of which
/// alpha^i, alpha^i beta lie in some H*(Phi).
inline VerificationReport verify_dihedral_structure(const DihedralModel& model) {
  VerificationReport rep;
  rep.check = "dihedral-structure";
  const auto& cm = model.cm;
  const Group& g = cm.group();
  const std::size_t n = model.n;
  const std::size_t k0 = two_adic_valuation(n);
  rep.parameters["n"] = n;
  rep.details["k0"] = k0;

  ElementSet expected{g.identity(), g.index_of(compose(power(model.alpha, n - 1), model.beta))};
  std::sort(expected.begin(), expected.end());
  rep.require(reflex_subgroup(cm, {0}) == expected, "H*(Phi_0) is not {id, alpha^(n-1) beta}");
  ElementSet h{g.identity(), g.index_of(model.beta)};
  std::sort(h.begin(), h.end());
  rep.require(cm.h() == h, "H is not {id, beta}");

  // Which elements lie in some reflex subgroup.
  std::vector<char> in_some(g.order(), 0);
  const std::size_t count = std::size_t{1} << n;
  for (std::size_t f = 0; f < count; ++f)
    for (std::size_t x : reflex_subgroup(cm, {static_cast<Bits>(f)})) in_some[x] = 1;
  const std::size_t modulus = std::size_t{1} << (k0 + 1);
  Json classification = Json::array();
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const auto a = power(model.alpha, i);
    const bool rotation_in = in_some[g.index_of(a)] != 0;
    const bool reflection_in = in_some[g.index_of(compose(a, model.beta))] != 0;
    const bool rotation_expected = i % modulus == 0;
    const bool reflection_expected = i % 2 == 1;
    if (n % 2 == 0) {
      rep.require(rotation_in == rotation_expected, "alpha^" + std::to_string(i) + " classification differs");
      rep.require(reflection_in == reflection_expected, "alpha^" + std::to_string(i) + " beta classification differs");
    }
    Json row;
    row["i"] = i;
    row["alpha_i_in_some_reflex"] = rotation_in;
    row["alpha_i_beta_in_some_reflex"] = reflection_in;
    classification.push_back(row);
  }
  rep.details["classification"] = classification;
  return rep;
}

/// Ind_{H_0}(chi_{H_0/H}) == Ind_{H*_0(Phi_0)}(chi_{H*_0/H*}) and H, H*(Phi_0)
/// are not conjugate; n must be even.
inline VerificationReport dihedral_shimura_check(const DihedralModel& model) {
  if (model.n % 2 != 0) throw InputError("the Shimura identity check needs even n (odd n is the <iota> x G_0 case)");
  VerificationReport rep;
  rep.check = "dihedral-shimura";
  const auto& cm = model.cm;
  const Group& g = cm.group();
  auto table = make_class_table(cm.shared_group());
  const auto h_star = reflex_subgroup(cm, {0});
  const auto lhs = induce(table, index_two_character(g, {cm.h0(), cm.h()}));
  const auto rhs = induce(table, index_two_character(g, {reflex_overgroup(cm, {0}), h_star}));
  rep.require(lhs == rhs, "induced characters differ");

  bool conjugate = false;
  for (std::size_t x = 0; x < g.order() && !conjugate; ++x) {
    ElementSet image;
    for (std::size_t y : cm.h()) image.push_back(g.conjugate(x, y));
    std::sort(image.begin(), image.end());
    conjugate = image == h_star;
  }
  rep.require(!conjugate, "H and H*(Phi_0) are conjugate");
  rep.parameters["n"] = model.n;
  rep.details["lhs"] = class_function_json(lhs);
  rep.details["rhs"] = class_function_json(rhs);
  rep.details["conjugate"] = conjugate;
  return rep;
}

inline VerificationReport dihedral_shimura_check(std::size_t n) {
  if (n % 2 != 0) throw InputError("the Shimura identity check needs even n (odd n is the <iota> x G_0 case)");
  return dihedral_shimura_check(build_dihedral_model(n));
}

struct DihedralCount {
  std::size_t j = 0;
  std::size_t s = 0, s_tilde = 0, t = 0, t_tilde = 0;
};

/// Counts S_j, S~_j, T_j, T~_j by brute force over all subsets of {1..n}, both
/// from the defining conditions and from the restated forms; checks
/// s_j = 2 t_j and s~_j = t~_j.
inline VerificationReport dihedral_counts(std::size_t n) {
  if (n % 2 != 0) throw InputError("dihedral counts need even n");
  if (n < 2 || n > static_cast<std::size_t>(kMaxDihedral)) throw ResourceError("dihedral n must lie in 2.." + std::to_string(kMaxDihedral));
  VerificationReport rep;
  rep.check = "dihedral-counts";
  const std::size_t k0 = two_adic_valuation(n);
  const std::size_t base = std::size_t{1} << k0;
  const std::size_t odd_part = n / base;
  const std::size_t count = std::size_t{1} << n;

  // alpha^(n-1) beta : k -> n + 1 - k, beta : k -> 2 - k (mod n), 1-based.
  auto reflect = [&](Bits subset, std::size_t offset) {
    Bits out = 0;
    for (std::size_t k = 0; k < n; ++k)
      if (test_bit(subset, k)) out |= Bits{1} << ((offset + 2 * n - k) % n);
    return out;
  };
  auto in_s = [&](Bits subset, std::size_t j) {
    if (rotate_subset(subset, n, base * j) != subset) return false;
    for (std::size_t j0 = 1; j0 < j; ++j0)
      if (j % j0 == 0 && rotate_subset(subset, n, base * j0) == subset) return false;
    return true;
  };
  auto min_period = [&](Bits subset) {
    for (std::size_t p = 1; p <= n; ++p)
      if (n % p == 0 && rotate_subset(subset, n, p) == subset) return p;
    return n;
  };

  std::vector<DihedralCount> counts;
  std::size_t total = 0;
  for (std::size_t j = 1; j <= odd_part; ++j) {
    if (odd_part % j != 0) continue;
    DihedralCount c{j};
    std::size_t restated_s = 0, restated_s_tilde = 0, restated_t = 0, restated_t_tilde = 0;
    for (std::size_t m = 0; m < count; ++m) {
      const Bits subset = static_cast<Bits>(m);
      const bool odd = std::popcount(subset) % 2 == 1;
      if (in_s(subset, j)) {
        ++c.s;
        if (reflect(subset, n - 1) == subset) ++c.s_tilde;  // index n+1-k, 0-based n-1-k
        if (odd) ++c.t;
        if (odd && reflect(subset, 0) == subset) ++c.t_tilde;  // index 2-k, 0-based -k
      }
      // Restated: 2^k0 j is the least period of the form 2^k0 j'.
      const std::size_t p = min_period(subset);
      const std::size_t p_odd = p >> two_adic_valuation(p);
      if (p_odd != j) continue;
      ++restated_s;
      bool sym = true;
      for (std::size_t i = 1; i <= n; ++i)
        if (test_bit(subset, i - 1) != test_bit(subset, n - i)) sym = false;
      if (sym) ++restated_s_tilde;
      std::size_t head = 0;
      for (std::size_t i = 1; i <= base * j; ++i) head += test_bit(subset, i - 1);
      if (head % 2 == 1) ++restated_t;
      bool t_tilde = test_bit(subset, 0) != test_bit(subset, n / 2);
      for (std::size_t i = 2; i <= n / 2; ++i)
        if (test_bit(subset, i - 1) != test_bit(subset, n - i + 1)) t_tilde = false;
      if (t_tilde) ++restated_t_tilde;
    }
    const std::string tag = "j=" + std::to_string(j);
    rep.require(c.s == restated_s, tag + ": s_j differs from the restated count");
    rep.require(c.s_tilde == restated_s_tilde, tag + ": s~_j differs from the restated count");
    rep.require(c.t == restated_t, tag + ": t_j differs from the restated count");
    rep.require(c.t_tilde == restated_t_tilde, tag + ": t~_j differs from the restated count");
    rep.require(c.s == 2 * c.t, tag + ": s_j != 2 t_j");
    rep.require(c.s_tilde == c.t_tilde, tag + ": s~_j != t~_j");
    total += c.s;
    counts.push_back(c);
  }
  rep.require(total == count, "the S_j do not partition all subsets");

  Json rows = Json::array();
  for (const auto& c : counts) {
    Json row;
    row["j"] = c.j;
    row["s"] = c.s;
    row["s_tilde"] = c.s_tilde;
    row["t"] = c.t;
    row["t_tilde"] = c.t_tilde;
    rows.push_back(row);
  }
  rep.parameters["n"] = n;
  rep.details["k0"] = k0;
  rep.details["counts"] = rows;
  return rep;
}

// ---- standard catalog ----------------------------------------------------------

struct CatalogEntry {
  std::string name;
  std::string family;
  std::size_t parameter = 0;
  CMGroup cm;
};

inline std::vector<CatalogEntry> standard_catalog() {
  std::vector<CatalogEntry> out;
  out.push_back({"B_1", "hyperoctahedral", 1, build_hyperoctahedral(1)});
  out.push_back({"B_2", "hyperoctahedral", 2, build_hyperoctahedral(2)});
  out.push_back({"B_3", "hyperoctahedral", 3, build_hyperoctahedral(3)});
  out.push_back({"B_4", "hyperoctahedral", 4, build_hyperoctahedral(4)});
  out.push_back({"iota x C_3", "iota-times-g0", 3, build_iota_times_g0(3, {cycle_perm(3)})});
  out.push_back({"iota x S_3", "iota-times-g0", 3, build_iota_times_g0(3, {cycle_perm(3), transposition(3, 0, 1)})});
  out.push_back({"dihedral 4", "dihedral", 4, build_dihedral(4)});
  out.push_back({"dihedral 6", "dihedral", 6, build_dihedral(6)});
  out.push_back({"dihedral 8", "dihedral", 8, build_dihedral(8)});
  return out;
}

}  // namespace reflexlab
