#pragma once

// CM-type combinatorics inside a signed-permutation model of Gal(K^c/Q).
//
// The model: G is a subgroup of (Z/2)^N x| S_N containing iota = (1, id).
// Position j stands for the coset phi_{j+1} H_0, the base CM-type is
// Phi_0 = Phi_{f=0}, and the sign part of tau is r_{Phi_0}(tau).  An embedding
// iota^s phi_j of K is the pair (j, s); tau acts on it by
//
//     (f, sigma) . (j, s) = (sigma(j), s + f(sigma(j))).
//
// H is the stabilizer of the embedding (0, 0).

#include <algorithm>
#include <memory>
#include <vector>

#include "reflexlab/errors.hpp"
#include "reflexlab/signed_perm.hpp"

namespace reflexlab {

/// A CM-type Phi_f, stored as the bit vector f.
struct CMType {
  Bits bits = 0;
  friend auto operator<=>(const CMType&, const CMType&) = default;
};

struct Embedding {
  std::size_t position = 0;
  bool conjugated = false;
  friend auto operator<=>(const Embedding&, const Embedding&) = default;
};

inline Embedding act_on_embedding(const SignedPerm& tau, Embedding e) {
  const std::size_t j = tau.image(e.position);
  return {j, e.conjugated != test_bit(tau.signs(), j)};
}

/// Phi_f contains (j, f(j)) for every position j.
inline bool in_cm_type(CMType f, Embedding e) { return test_bit(f.bits, e.position) == e.conjugated; }

class CMGroup {
 public:
  const Group& group() const { return *group_; }
  std::shared_ptr<const Group> shared_group() const { return group_; }
  std::size_t degree() const { return group_->degree(); }
  std::size_t order() const { return group_->order(); }
  std::size_t iota() const { return iota_; }
  Bits ones() const { return all_ones(degree()); }

  const ElementSet& h0() const { return h0_; }
  const ElementSet& h() const { return h_; }
  const ElementSet& c_kernel() const { return c_kernel_; }

  /// G_0 as the sorted list of distinct permutation parts (0, sigma).
  const std::vector<SignedPerm>& g0() const { return g0_; }
  /// Position in g0() of the permutation part of element `tau`.
  std::size_t g0_index(std::size_t tau) const { return g0_of_element_[tau]; }

  const SignedPerm& element(std::size_t i) const { return group_->element(i); }

 private:
  friend CMGroup validate_cm_group(Group g);
  explicit CMGroup(std::shared_ptr<const Group> g) : group_(std::move(g)) {}

  std::shared_ptr<const Group> group_;
  std::size_t iota_ = 0;
  ElementSet h0_, h_, c_kernel_;
  std::vector<SignedPerm> g0_;
  std::vector<std::size_t> g0_of_element_;
};

/// Checks iota = (1, id) is present and central, that the projection to S_N is
/// transitive, and that C = ker(projection) is the core of H_0.
inline CMGroup validate_cm_group(Group g) {
  const std::size_t n = g.degree();
  if (n == 0) throw InputError("a CM group needs degree N >= 1");
  CMGroup cm(std::make_shared<const Group>(std::move(g)));
  const Group& G = *cm.group_;

  auto iota = G.find(SignedPerm::iota(n));
  if (!iota) throw InputError("group does not contain iota = (1, id)");
  cm.iota_ = *iota;
  for (std::size_t x = 0; x < G.order(); ++x)
    if (G.multiply(x, cm.iota_) != G.multiply(cm.iota_, x)) throw InputError("iota is not central");

  Bits reached = 1;
  for (bool grew = true; grew;) {
    grew = false;
    for (const auto& gen : G.generators()) {
      Bits next = reached | gen.act(reached);
      if (next != reached) {
        reached = next;
        grew = true;
      }
    }
  }
  if (reached != all_ones(n)) throw InputError("projection to S_N is not transitive");

  cm.h0_ = G.select([](const SignedPerm& t) { return t.image(0) == 0; });
  cm.h_ = G.select([](const SignedPerm& t) { return t.image(0) == 0 && !test_bit(t.signs(), 0); });
  cm.c_kernel_ = G.select([](const SignedPerm& t) { return t.perm_is_identity(); });

  // Core of H_0: elements lying in every conjugate tau H_0 tau^{-1}; the
  // conjugate depends only on tau H_0, so one tau per coset suffices.
  const auto h0_cosets = left_cosets(G, cm.h0_);
  std::vector<char> in_h0(G.order(), 0);
  for (std::size_t x : cm.h0_) in_h0[x] = 1;
  ElementSet core;
  for (std::size_t x = 0; x < G.order(); ++x) {
    bool all = true;
    for (std::size_t rep : h0_cosets.reps)
      if (!in_h0[G.conjugate(G.inverse(rep), x)]) {
        all = false;
        break;
      }
    if (all) core.push_back(x);
  }
  if (core != cm.c_kernel_) throw ModelError("C differs from the core of H_0");
  if (cm.h_.size() * 2 != cm.h0_.size()) throw ModelError("H does not have index 2 in H_0");

  std::vector<SignedPerm> parts;
  parts.reserve(G.order());
  for (const auto& t : G.elements()) parts.push_back(t.perm_part());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  cm.g0_ = std::move(parts);
  cm.g0_of_element_.resize(G.order());
  for (std::size_t x = 0; x < G.order(); ++x) {
    auto it = std::lower_bound(cm.g0_.begin(), cm.g0_.end(), G.element(x).perm_part());
    cm.g0_of_element_[x] = static_cast<std::size_t>(it - cm.g0_.begin());
  }
  return cm;
}

/// r_{Phi_f}(tau) = r_{Phi_0}(tau) + tau.f - f, with r_{Phi_0}(tau) the sign part.
inline Bits cocycle(const CMGroup& cm, CMType f, const SignedPerm& tau) {
  (void)cm;
  return tau.signs() ^ tau.act(f.bits) ^ f.bits;
}

/// tau * f = r_{Phi_0}(tau) + tau.f, the action transported from tau Phi_f = Phi_{tau*f}.
inline CMType star(const CMGroup& cm, const SignedPerm& tau, CMType f) {
  (void)cm;
  return {tau.signs() ^ tau.act(f.bits)};
}

/// H*(Phi_f): elements whose cocycle vanishes.
inline ElementSet reflex_subgroup(const CMGroup& cm, CMType f) {
  return cm.group().select([&](const SignedPerm& t) { return cocycle(cm, f, t) == 0; });
}

/// H*_0(Phi_f) = H*(Phi_f) u iota H*(Phi_f): elements with tau*f in {f, f + 1}.
inline ElementSet reflex_overgroup(const CMGroup& cm, CMType f) {
  const Bits ones = cm.ones();
  return cm.group().select([&](const SignedPerm& t) {
    Bits r = cocycle(cm, f, t);
    return r == 0 || r == ones;
  });
}

/// S_Phi = union of phi H over phi in Phi_f = { tau : tau phi_1 in Phi_f }.
inline ElementSet s_phi(const CMGroup& cm, CMType f) {
  return cm.group().select([&](const SignedPerm& t) { return in_cm_type(f, act_on_embedding(t, {0, false})); });
}

struct OrbitReport {
  CMType representative;
  ElementSet stabilizer;
  std::size_t orbit_size = 0;
  std::vector<CMType> members;  // increasing
};

/// Orbits of the star action on all 2^N CM-types, ordered by representative
/// (the numerically least member).
inline std::vector<OrbitReport> cm_orbits(const CMGroup& cm) {
  const std::size_t n = cm.degree();
  if (n > kMaxDegree) throw ResourceError("degree exceeds the cap");
  const std::size_t count = std::size_t{1} << n;
  constexpr std::uint32_t kUnset = 0xffffffffu;
  std::vector<std::uint32_t> orbit_id(count, kUnset);
  std::vector<OrbitReport> out;
  const auto& gens = cm.group().generators();
  for (std::size_t start = 0; start < count; ++start) {
    if (orbit_id[start] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(out.size());
    OrbitReport rep;
    rep.representative = {static_cast<Bits>(start)};
    std::vector<Bits> members{static_cast<Bits>(start)};
    orbit_id[start] = id;
    for (std::size_t k = 0; k < members.size(); ++k)
      for (const auto& g : gens) {
        Bits y = star(cm, g, {members[k]}).bits;
        if (orbit_id[y] == kUnset) {
          orbit_id[y] = id;
          members.push_back(y);
        }
      }
    std::sort(members.begin(), members.end());
    rep.members.reserve(members.size());
    for (Bits m : members) rep.members.push_back({m});
    rep.orbit_size = members.size();
    rep.stabilizer = cm.group().select([&](const SignedPerm& t) { return star(cm, t, rep.representative) == rep.representative; });
    if (rep.orbit_size * rep.stabilizer.size() != cm.order()) throw ModelError("orbit-stabilizer mismatch");
    out.push_back(std::move(rep));
  }
  return out;
}

/// The dual CM-type Phi*: S_Phi = H*(Phi) psi_1 u ... u H*(Phi) psi_M, and
/// Phi* consists of the psi_k^{-1} restricted to the reflex field.
struct DualType {
  ElementSet s_phi;
  ElementSet reflex;
  std::vector<std::size_t> reps;  // canonical psi_k, least in their right coset
  std::size_t m() const { return reps.size(); }
};

inline DualType dual_type(const CMGroup& cm, CMType f) {
  DualType d;
  d.s_phi = s_phi(cm, f);
  d.reflex = reflex_subgroup(cm, f);
  const auto cosets = right_cosets(cm.group(), d.reflex);
  std::vector<char> in_s(cm.order(), 0);
  for (std::size_t x : d.s_phi) in_s[x] = 1;
  for (std::size_t k = 0; k < cosets.count(); ++k) {
    const auto& block = cosets.cosets[k];
    const auto inside = std::count_if(block.begin(), block.end(), [&](std::size_t x) { return in_s[x] != 0; });
    if (inside == 0) continue;
    if (static_cast<std::size_t>(inside) != block.size()) throw ModelError("H*(Phi) S_Phi != S_Phi");
    d.reps.push_back(cosets.reps[k]);
  }
  return d;
}

/// Subgroups attached to a subset I of positions (given as a bit mask).
struct SubsetData {
  Bits subset = 0;
  ElementSet h_I;       // H(I)
  ElementSet h0_I;      // H_0(I)
  ElementSet s_phi_I;   // S_{Phi(I)}
  std::vector<std::size_t> phi_I;       // reps of S_{Phi(I)} / H(I)
  std::vector<std::size_t> phi_I_star;  // reps of H*(Phi) \ S_{Phi(I)}
};

inline ElementSet subset_stabilizer(const CMGroup& cm, Bits subset) {
  return cm.group().select([&](const SignedPerm& t) { return t.act(subset) == subset; });
}

/// H(I): parity of r_Phi(sigma) over I vanishes and sigma I = I.  Independent of f.
inline ElementSet h_of_subset(const CMGroup& cm, Bits subset, CMType f = {}) {
  return cm.group().select([&](const SignedPerm& t) {
    return t.act(subset) == subset && parity(cocycle(cm, f, t) & subset) == 0;
  });
}

inline SubsetData subset_subgroups(const CMGroup& cm, Bits subset, CMType f = {}) {
  if ((subset & ~cm.ones()) != 0) throw InputError("subset has positions beyond the degree");
  const Group& G = cm.group();
  SubsetData d;
  d.subset = subset;
  d.h_I = h_of_subset(cm, subset, f);
  d.h0_I = subset_stabilizer(cm, subset);
  d.s_phi_I = G.select([&](const SignedPerm& t) { return parity(cocycle(cm, f, inverse(t)) & subset) == 0; });

  std::vector<char> in_s(G.order(), 0);
  for (std::size_t x : d.s_phi_I) in_s[x] = 1;
  const auto left = left_cosets(G, d.h_I);
  for (std::size_t k = 0; k < left.count(); ++k)
    if (in_s[left.reps[k]]) d.phi_I.push_back(left.reps[k]);
  const auto right = right_cosets(G, reflex_subgroup(cm, f));
  for (std::size_t k = 0; k < right.count(); ++k)
    if (in_s[right.reps[k]]) d.phi_I_star.push_back(right.reps[k]);
  return d;
}

/// Orbit representatives (least mask) of G_0 acting on subsets with the
/// given parity of cardinality; `odd = true` gives J_odd.
inline std::vector<Bits> subset_orbit_representatives(const CMGroup& cm, bool odd) {
  const std::size_t n = cm.degree();
  const std::size_t count = std::size_t{1} << n;
  std::vector<char> seen(count, 0);
  std::vector<Bits> reps;
  const auto& gens = cm.group().generators();
  for (std::size_t start = 0; start < count; ++start) {
    if (seen[start] || (std::popcount(static_cast<Bits>(start)) % 2 == 1) != odd) continue;
    reps.push_back(static_cast<Bits>(start));
    std::vector<Bits> orbit{static_cast<Bits>(start)};
    seen[start] = 1;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (const auto& g : gens) {
        Bits y = g.act(orbit[k]);
        if (!seen[y]) {
          seen[y] = 1;
          orbit.push_back(y);
        }
      }
  }
  return reps;
}

inline std::vector<Bits> jodd_representatives(const CMGroup& cm) { return subset_orbit_representatives(cm, true); }

/// Size of the G-orbit of a subset, i.e. [G : H_0(I)].
inline std::size_t subset_orbit_size(const CMGroup& cm, Bits subset) {
  return cm.order() / subset_stabilizer(cm, subset).size();
}

}  // namespace reflexlab
