#pragma once

// The rational group algebra Q[G], half norm elements, and the
// multiplication-by-2^(N-1) identities.
//
// Operators on M^S are compared after right multiplication by e_S, which
// makes them independent of the coset representatives used to write them.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reflexlab/cm_structure.hpp"
#include "reflexlab/function_algebra.hpp"
#include "reflexlab/linear_algebra.hpp"
#include "reflexlab/rational.hpp"
#include "reflexlab/report.hpp"

namespace reflexlab {

class AlgebraElement {
 public:
  using Coeffs = std::map<std::size_t, Rational>;

  explicit AlgebraElement(std::shared_ptr<const Group> g) : group_(std::move(g)) {}

  static AlgebraElement basis(std::shared_ptr<const Group> g, std::size_t x, Rational c = 1) {
    AlgebraElement e(std::move(g));
    e.add_term(x, c);
    return e;
  }
  static AlgebraElement identity(std::shared_ptr<const Group> g) {
    const std::size_t id = g->identity();
    return basis(std::move(g), id);
  }
  /// sum of the elements of s, each with coefficient c.
  static AlgebraElement sum_of(std::shared_ptr<const Group> g, const ElementSet& s, const Rational& c = 1) {
    AlgebraElement e(std::move(g));
    for (std::size_t x : s) e.add_term(x, c);
    return e;
  }

  const Group& group() const { return *group_; }
  const std::shared_ptr<const Group>& group_ptr() const { return group_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }

  Rational coefficient(std::size_t x) const {
    auto it = coeffs_.find(x);
    return it == coeffs_.end() ? Rational(0) : it->second;
  }

  void add_term(std::size_t x, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = coeffs_.emplace(x, c);
    if (inserted) return;
    it->second += c;
    if (sgn(it->second) == 0) coeffs_.erase(it);
  }

  AlgebraElement& operator+=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [x, c] : o.coeffs_) add_term(x, c);
    return *this;
  }
  AlgebraElement& operator-=(const AlgebraElement& o) {
    check_same(o);
    for (const auto& [x, c] : o.coeffs_) add_term(x, -c);
    return *this;
  }
  AlgebraElement& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& [x, c] : coeffs_) c *= s;
    return *this;
  }

  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const Rational& s, AlgebraElement a) { return a *= s; }
  friend AlgebraElement operator-(AlgebraElement a) { return a *= Rational(-1); }

  /// Convolution.
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    a.check_same(b);
    AlgebraElement out(a.group_);
    for (const auto& [x, cx] : a.coeffs_)
      for (const auto& [y, cy] : b.coeffs_) out.add_term(a.group_->multiply(x, y), cx * cy);
    return out;
  }

  friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) {
    return a.group_ == b.group_ && a.coeffs_ == b.coeffs_;
  }

  void check_same(const AlgebraElement& o) const {
    if (group_ != o.group_) throw InputError("algebra elements live in different group algebras");
  }

 private:
  std::shared_ptr<const Group> group_;
  Coeffs coeffs_;
};

inline Json algebra_json(const AlgebraElement& a) {
  Json j = Json::array();
  for (const auto& [x, c] : a.coeffs()) {
    Json t;
    t["element"] = to_string(a.group().element(x));
    t["coefficient"] = to_string(c);
    j.push_back(t);
  }
  return j;
}

/// e_S = |S|^-1 sum_{s in S} s.
inline AlgebraElement idempotent(std::shared_ptr<const Group> g, const ElementSet& s) {
  return AlgebraElement::sum_of(std::move(g), s, Rational(1, static_cast<long>(s.size())));
}

/// N_{G/S}: sum over canonical left coset representatives.
inline AlgebraElement norm_element(std::shared_ptr<const Group> g, const ElementSet& s) {
  auto reps = left_cosets(*g, s).reps;
  return AlgebraElement::sum_of(std::move(g), reps);
}

/// Reduction modulo iota = -1: every element is replaced by the smaller of
/// {x, iota x}, with a sign when x was the larger one.
inline AlgebraElement reduce_signed(const AlgebraElement& a, std::size_t iota) {
  AlgebraElement out(a.group_ptr());
  for (const auto& [x, c] : a.coeffs()) {
    const std::size_t partner = a.group().multiply(iota, x);
    if (x <= partner)
      out.add_term(x, c);
    else
      out.add_term(partner, -c);
  }
  return out;
}

/// An element of Q[G] / (iota + 1), kept in reduced form.
class SignedQuotientElement {
 public:
  SignedQuotientElement(const AlgebraElement& a, std::size_t iota) : value_(reduce_signed(a, iota)), iota_(iota) {}

  const AlgebraElement& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }

  friend SignedQuotientElement operator*(const SignedQuotientElement& a, const SignedQuotientElement& b) {
    return {a.value_ * b.value_, a.iota_};
  }
  friend SignedQuotientElement operator+(const SignedQuotientElement& a, const SignedQuotientElement& b) {
    return {a.value_ + b.value_, a.iota_};
  }
  friend SignedQuotientElement operator-(const SignedQuotientElement& a, const SignedQuotientElement& b) {
    return {a.value_ - b.value_, a.iota_};
  }
  friend bool operator==(const SignedQuotientElement& a, const SignedQuotientElement& b) { return a.value_ == b.value_; }

 private:
  AlgebraElement value_;
  std::size_t iota_;
};

inline SignedQuotientElement in_quotient(const CMGroup& cm, const AlgebraElement& a) { return {a, cm.iota()}; }

// ---- half norms ------------------------------------------------------------

/// n_Phi = sum of the canonical representatives of the cosets tau H making up Phi_f.
inline AlgebraElement half_norm_element(const CMGroup& cm, CMType f) {
  const auto left = left_cosets(cm.group(), cm.h());
  ElementSet reps;
  for (std::size_t rep : left.reps)
    if (in_cm_type(f, act_on_embedding(cm.element(rep), {0, false}))) reps.push_back(rep);
  return AlgebraElement::sum_of(cm.shared_group(), reps);
}

/// n_{Phi*} = sum of psi^-1 over the right coset reps H*(Phi) psi of S_Phi.
inline AlgebraElement dual_half_norm_element(const CMGroup& cm, CMType f) {
  const auto d = dual_type(cm, f);
  AlgebraElement out(cm.shared_group());
  for (std::size_t psi : d.reps) out.add_term(cm.group().inverse(psi), 1);
  return out;
}

inline int subset_parity(Bits v, Bits subset) { return parity(v & subset); }

/// N_{Phi_f(I)} = 1/2 sum_{psi in H(I)\G} (-1)^{sum_I r_f(psi)} psi^-1.
inline AlgebraElement half_norm_I(const CMGroup& cm, CMType f, Bits subset) {
  const Group& g = cm.group();
  AlgebraElement out(cm.shared_group());
  const Rational half(1, 2);
  for (std::size_t psi : right_cosets(g, h_of_subset(cm, subset, f)).reps) {
    const int s = subset_parity(cocycle(cm, f, g.element(psi)), subset);
    out.add_term(g.inverse(psi), s ? -half : half);
  }
  return out;
}

/// N_{Phi_f(I)*} = 1/2 sum_{psi in G/H*(Phi_f)} (-1)^{sum_I r_f(psi)} psi.
inline AlgebraElement half_norm_I_star(const CMGroup& cm, CMType f, Bits subset) {
  const Group& g = cm.group();
  AlgebraElement out(cm.shared_group());
  const Rational half(1, 2);
  for (std::size_t psi : left_cosets(g, reflex_subgroup(cm, f)).reps) {
    const int s = subset_parity(cocycle(cm, f, g.element(psi)), subset);
    out.add_term(psi, s ? -half : half);
  }
  return out;
}

/// sum_{psi in H_0(I)\G} iota^{sum_I r_f(psi)} psi^-1: the form of N_{Phi_f(I)}
/// valid without assuming iota = -1 (odd |I|).
inline AlgebraElement half_norm_I_twisted(const CMGroup& cm, CMType f, Bits subset) {
  const Group& g = cm.group();
  AlgebraElement out(cm.shared_group());
  for (std::size_t psi : right_cosets(g, subset_stabilizer(cm, subset)).reps) {
    std::size_t x = g.inverse(psi);
    if (subset_parity(cocycle(cm, f, g.element(psi)), subset)) x = g.multiply(cm.iota(), x);
    out.add_term(x, 1);
  }
  return out;
}

/// sum_{psi in G/H*_0(Phi_f)} iota^{sum_I r_f(psi)} psi.
inline AlgebraElement half_norm_I_star_twisted(const CMGroup& cm, CMType f, Bits subset) {
  const Group& g = cm.group();
  AlgebraElement out(cm.shared_group());
  for (std::size_t psi : left_cosets(g, reflex_overgroup(cm, f)).reps) {
    std::size_t x = psi;
    if (subset_parity(cocycle(cm, f, g.element(psi)), subset)) x = g.multiply(cm.iota(), x);
    out.add_term(x, 1);
  }
  return out;
}

inline AlgebraElement iota_power(const CMGroup& cm, int exponent) {
  return AlgebraElement::basis(cm.shared_group(), (exponent & 1) ? cm.iota() : cm.group().identity());
}

inline std::vector<CMType> lambda_representatives(const CMGroup& cm) {
  std::vector<CMType> out;
  for (const auto& o : cm_orbits(cm)) out.push_back(o.representative);
  return out;
}

// ---- propositions and lemmas ------------------------------------------------

/// (sum over Lambda of n_{Phi*} n_Phi) e_H == 2^(N-1) e_H modulo iota = -1,
/// and n_Phi + iota n_Phi == N_{G/H} on M^H.
inline VerificationReport verify_prop_2N1(const CMGroup& cm) {
  VerificationReport rep;
  rep.check = "prop-2N1";
  const auto g = cm.shared_group();
  const auto e_h = idempotent(g, cm.h());
  const auto norm_h = norm_element(g, cm.h()) * e_h;
  AlgebraElement total(g);
  Json per_type = Json::array();
  for (CMType f : lambda_representatives(cm)) {
    const auto n_phi = half_norm_element(cm, f);
    const auto n_star = dual_half_norm_element(cm, f);
    rep.require(n_phi.support_size() == cm.degree(), "|Phi| != N for f=" + bits_to_string(f.bits, cm.degree()));
    rep.require((n_phi + iota_power(cm, 1) * n_phi) * e_h == norm_h,
                "n_Phi + iota n_Phi != N_{G/H} for f=" + bits_to_string(f.bits, cm.degree()));
    Json t;
    t["cm_type"] = bits_to_string(f.bits, cm.degree());
    t["phi_size"] = n_phi.support_size();
    t["dual_size"] = n_star.support_size();
    per_type.push_back(t);
    total += n_star * n_phi;
  }
  const Rational factor = pow2(static_cast<int>(cm.degree()) - 1);
  const auto lhs = in_quotient(cm, total * e_h);
  const auto rhs = in_quotient(cm, factor * e_h);
  const auto residual = lhs - rhs;
  rep.require(residual.is_zero(), "composition differs from 2^(N-1) on M^H");
  rep.parameters["degree"] = cm.degree();
  rep.details["factor"] = to_string(factor);
  rep.details["types"] = per_type;
  rep.details["residual"] = algebra_json(residual.value());
  return rep;
}

inline AlgebraElement lemma_eq1_lhs(const CMGroup& cm, Bits subset, Bits subset_prime) {
  const auto g = cm.shared_group();
  const auto e = idempotent(g, h_of_subset(cm, subset));
  AlgebraElement lhs(g);
  for (CMType f : lambda_representatives(cm)) {
    const int twist = subset_parity(f.bits, subset_prime) + subset_parity(f.bits, subset);
    lhs += iota_power(cm, twist) * (half_norm_I_star_twisted(cm, f, subset_prime) * (half_norm_I_twisted(cm, f, subset) * e));
  }
  return lhs;
}

inline AlgebraElement lemma_eq2_lhs(const CMGroup& cm, CMType f, CMType f_prime) {
  const auto g = cm.shared_group();
  const auto e = idempotent(g, reflex_subgroup(cm, f));
  AlgebraElement lhs(g);
  for (Bits subset : jodd_representatives(cm)) {
    const int twist = subset_parity(f.bits ^ f_prime.bits, subset);
    lhs += iota_power(cm, twist) * (half_norm_I_twisted(cm, f_prime, subset) * (half_norm_I_star_twisted(cm, f, subset) * e));
  }
  return lhs;
}

/// 2^(N-2) (id - iota) + 2^(N-2) N_{G/S}, on M^S.
inline AlgebraElement lemma_diagonal_rhs(const CMGroup& cm, const ElementSet& s) {
  const auto g = cm.shared_group();
  const Rational c = pow2(static_cast<int>(cm.degree()) - 2);
  auto rhs = c * (AlgebraElement::identity(g) - iota_power(cm, 1)) + c * norm_element(g, s);
  return rhs * idempotent(g, s);
}

/// Off-diagonal blocks in Q[G] are 2^(N-2) N_{G/S} on M^S, which is zero once
/// iota acts as -1.
inline AlgebraElement lemma_off_diagonal_rhs(const CMGroup& cm, const ElementSet& s) {
  const auto g = cm.shared_group();
  return pow2(static_cast<int>(cm.degree()) - 2) * (norm_element(g, s) * idempotent(g, s));
}

inline VerificationReport verify_lemma_eq1(const CMGroup& cm, Bits subset, Bits subset_prime) {
  VerificationReport rep;
  rep.check = "lemma-eq1";
  rep.parameters["I"] = bits_to_string(subset, cm.degree());
  rep.parameters["I_prime"] = bits_to_string(subset_prime, cm.degree());
  const auto lhs = lemma_eq1_lhs(cm, subset, subset_prime);
  const auto rhs = subset == subset_prime ? lemma_diagonal_rhs(cm, h_of_subset(cm, subset)) : lemma_off_diagonal_rhs(cm, h_of_subset(cm, subset));
  const auto residual = lhs - rhs;
  rep.require(residual.is_zero(), "block (" + bits_to_string(subset, cm.degree()) + ", " + bits_to_string(subset_prime, cm.degree()) + ") differs");
  if (!residual.is_zero()) rep.details["residual"] = algebra_json(residual);
  if (subset != subset_prime) rep.require(in_quotient(cm, lhs).is_zero(), "off-diagonal block is nonzero modulo iota + 1");
  rep.details["lhs_support"] = lhs.support_size();
  return rep;
}

inline VerificationReport verify_lemma_eq2(const CMGroup& cm, CMType f, CMType f_prime) {
  VerificationReport rep;
  rep.check = "lemma-eq2";
  rep.parameters["f"] = bits_to_string(f.bits, cm.degree());
  rep.parameters["f_prime"] = bits_to_string(f_prime.bits, cm.degree());
  const auto lhs = lemma_eq2_lhs(cm, f, f_prime);
  const auto rhs = f == f_prime ? lemma_diagonal_rhs(cm, reflex_subgroup(cm, f)) : lemma_off_diagonal_rhs(cm, reflex_subgroup(cm, f));
  const auto residual = lhs - rhs;
  rep.require(residual.is_zero(), "block (" + bits_to_string(f.bits, cm.degree()) + ", " + bits_to_string(f_prime.bits, cm.degree()) + ") differs");
  if (!residual.is_zero()) rep.details["residual"] = algebra_json(residual);
  if (!(f == f_prime)) rep.require(in_quotient(cm, lhs).is_zero(), "off-diagonal block is nonzero modulo iota + 1");
  rep.details["lhs_support"] = lhs.support_size();
  return rep;
}

/// Both compositions of N_{J->Lambda} and N_{Lambda->J} are 2^(N-1) blockwise.
/// Checked twice: from the lemma identities in Q[G], and directly in
/// Q[G]/(iota + 1) from the half-sum forms of the half norms.
inline VerificationReport verify_prop_2N1_general(const CMGroup& cm) {
  VerificationReport rep;
  rep.check = "prop-2N1-general";
  const auto g = cm.shared_group();
  const std::size_t n = cm.degree();
  const Rational factor = pow2(static_cast<int>(n) - 1);
  const auto jodd = jodd_representatives(cm);
  const auto lambda = lambda_representatives(cm);
  const auto zero = in_quotient(cm, AlgebraElement(g));

  Json blocks = Json::array();
  for (Bits src : jodd)
    for (Bits dst : jodd) {
      auto lemma = verify_lemma_eq1(cm, src, dst);
      rep.absorb(lemma);
      const auto e = idempotent(g, h_of_subset(cm, src));
      const auto expected = src == dst ? in_quotient(cm, factor * e) : zero;
      rep.require(in_quotient(cm, lemma_eq1_lhs(cm, src, dst)) == expected,
                  "J block (" + bits_to_string(dst, n) + " <- " + bits_to_string(src, n) + ") is not 2^(N-1) delta");
      AlgebraElement direct(g);
      for (CMType f : lambda) {
        Rational sign = subset_parity(f.bits, src) + subset_parity(f.bits, dst) == 1 ? -1 : 1;
        direct += sign * (half_norm_I_star(cm, f, dst) * (half_norm_I(cm, f, src) * e));
      }
      rep.require(in_quotient(cm, direct) == expected,
                  "half-sum route: J block (" + bits_to_string(dst, n) + " <- " + bits_to_string(src, n) + ") differs");
      Json b;
      b["kind"] = "J";
      b["source"] = bits_to_string(src, n);
      b["target"] = bits_to_string(dst, n);
      b["lemma_passed"] = lemma.passed;
      blocks.push_back(b);
    }
  for (CMType src : lambda)
    for (CMType dst : lambda) {
      auto lemma = verify_lemma_eq2(cm, src, dst);
      rep.absorb(lemma);
      const auto e = idempotent(g, reflex_subgroup(cm, src));
      const auto expected = src == dst ? in_quotient(cm, factor * e) : zero;
      rep.require(in_quotient(cm, lemma_eq2_lhs(cm, src, dst)) == expected,
                  "Lambda block (" + bits_to_string(dst.bits, n) + " <- " + bits_to_string(src.bits, n) + ") is not 2^(N-1) delta");
      AlgebraElement direct(g);
      for (Bits subset : jodd) {
        Rational sign = subset_parity(src.bits ^ dst.bits, subset) ? -1 : 1;
        direct += sign * (half_norm_I(cm, dst, subset) * (half_norm_I_star(cm, src, subset) * e));
      }
      rep.require(in_quotient(cm, direct) == expected,
                  "half-sum route: Lambda block (" + bits_to_string(dst.bits, n) + " <- " + bits_to_string(src.bits, n) + ") differs");
      Json b;
      b["kind"] = "Lambda";
      b["source"] = bits_to_string(src.bits, n);
      b["target"] = bits_to_string(dst.bits, n);
      b["lemma_passed"] = lemma.passed;
      blocks.push_back(b);
    }
  rep.parameters["degree"] = n;
  rep.details["factor"] = to_string(factor);
  rep.details["jodd"] = jodd.size();
  rep.details["lambda"] = lambda.size();
  rep.details["blocks"] = blocks;
  return rep;
}

// ---- Lemma eq3 in Map(G, Q) -------------------------------------------------

/// All N_{Phi_f(I)*}(a), indexed by the subset I.
///
/// With R_k = r_f(psi_k) over the coset reps psi_k of G/H*(Phi_f), the value at
/// tau is 1/2 sum_k (-1)^{|R_k n I|} a_{tau psi_k}: a Walsh-Hadamard transform
/// in I of the bucketed values.
inline std::vector<RationalFunction> star_half_norms_all_subsets(const CMGroup& cm, CMType f, const RationalFunction& a) {
  const Group& g = cm.group();
  const std::size_t count = std::size_t{1} << cm.degree();
  const auto reps = left_cosets(g, reflex_subgroup(cm, f)).reps;
  std::vector<Bits> r;
  for (std::size_t psi : reps) r.push_back(cocycle(cm, f, g.element(psi)));
  std::vector<RationalFunction> out(count, RationalFunction(g.order()));
  std::vector<Rational> bucket(count);
  const Rational half(1, 2);
  for (std::size_t tau = 0; tau < g.order(); ++tau) {
    std::fill(bucket.begin(), bucket.end(), Rational(0));
    for (std::size_t k = 0; k < reps.size(); ++k) bucket[r[k]] += a.values[g.multiply(tau, reps[k])];
    walsh_hadamard(bucket);
    for (std::size_t subset = 0; subset < count; ++subset) out[subset].values[tau] = half * bucket[subset];
  }
  return out;
}

/// Direct single-subset evaluation of N_{Phi_f(I)*}(a) as an operator sum.
inline RationalFunction apply_element(const AlgebraElement& x, const RationalFunction& a) {
  RationalFunction out(a.size());
  for (const auto& [sigma, c] : x.coeffs()) {
    auto moved = act(x.group(), sigma, a);
    moved.scale(c);
    out += moved;
  }
  return out;
}

/// Left side of Lemma eq3 for every I' at once:
/// sum_I (-1)^{f.I + f'.(I xor I')} A_I B_{I xor I'} is an XOR correlation in I.
inline std::vector<RationalFunction> lemma_eq3_lhs(const CMGroup& cm, CMType f, CMType f_prime,
                                                   const std::vector<RationalFunction>& na,
                                                   const std::vector<RationalFunction>& nb) {
  const std::size_t count = na.size();
  const std::size_t order = cm.order();
  std::vector<RationalFunction> out(count, RationalFunction(order));
  std::vector<Rational> x(count), y(count);
  const Rational scale(1, static_cast<long>(count));
  for (std::size_t tau = 0; tau < order; ++tau) {
    for (std::size_t s = 0; s < count; ++s) {
      x[s] = subset_parity(f.bits, static_cast<Bits>(s)) ? -na[s].values[tau] : na[s].values[tau];
      y[s] = subset_parity(f_prime.bits, static_cast<Bits>(s)) ? -nb[s].values[tau] : nb[s].values[tau];
    }
    walsh_hadamard(x);
    walsh_hadamard(y);
    for (std::size_t s = 0; s < count; ++s) x[s] *= y[s];
    walsh_hadamard(x);
    for (std::size_t s = 0; s < count; ++s) out[s].values[tau] = x[s] * scale;
  }
  return out;
}

/// sigma with sigma * f' = f, if any.
inline std::optional<std::size_t> star_transporter(const CMGroup& cm, CMType f, CMType f_prime) {
  for (std::size_t x = 0; x < cm.order(); ++x)
    if (star(cm, cm.element(x), f_prime) == f) return x;
  return std::nullopt;
}

/// Pairs (f, f') exercised by Lemma eq3: all of Lambda x Lambda, plus (f, g*f)
/// for each representative f and generator g, which brings in a nontrivial sigma.
inline std::vector<std::pair<CMType, CMType>> lemma_eq3_pairs(const CMGroup& cm) {
  const auto lambda = lambda_representatives(cm);
  std::vector<std::pair<CMType, CMType>> pairs;
  for (CMType f : lambda)
    for (CMType fp : lambda) pairs.emplace_back(f, fp);
  for (CMType f : lambda)
    for (const auto& gen : cm.group().generators()) {
      std::pair<CMType, CMType> p{f, star(cm, gen, f)};
      if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(p);
    }
  return pairs;
}

/// Checks Lemma eq3 for every I' on max(trials, #pairs) draws, cycling through
/// lemma_eq3_pairs; each draw takes fresh random a in M^{H*(Phi_f)} and
/// b in M^{H*(Phi_f')} from mt19937_64(seed).
inline VerificationReport verify_lemma_eq3(const CMGroup& cm, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw InputError("lemma eq3 needs at least one trial");
  VerificationReport rep;
  rep.check = "lemma-eq3";
  rep.parameters["trials"] = trials;
  rep.parameters["seed"] = seed;
  const Group& g = cm.group();
  const std::size_t n = cm.degree();
  const std::size_t count = std::size_t{1} << n;
  const Rational factor = pow2(static_cast<int>(n) - 1);
  const auto pairs = lemma_eq3_pairs(cm);
  const std::size_t draws = std::max(trials, pairs.size());
  std::mt19937_64 rng(seed);
  std::size_t nonzero_cases = 0;
  for (std::size_t d = 0; d < draws; ++d) {
    const auto [f, fp] = pairs[d % pairs.size()];
    const auto a = random_invariant_function(g, left_cosets(g, reflex_subgroup(cm, f)), rng);
    const auto b = random_invariant_function(g, left_cosets(g, reflex_subgroup(cm, fp)), rng);
    const auto lhs = lemma_eq3_lhs(cm, f, fp, star_half_norms_all_subsets(cm, f, a), star_half_norms_all_subsets(cm, fp, b));
    const auto sigma = star_transporter(cm, f, fp);
    std::vector<RationalFunction> rhs(count, RationalFunction(g.order()));
    if (sigma) {
      ++nonzero_cases;
      auto ab = a * act(g, *sigma, b);
      auto nab = star_half_norms_all_subsets(cm, f, ab);
      for (std::size_t s = 0; s < count; ++s) {
        nab[s].scale(subset_parity(f.bits, static_cast<Bits>(s)) ? -factor : factor);
        rhs[s] = std::move(nab[s]);
      }
    }
    for (std::size_t s = 0; s < count; ++s)
      if (!(lhs[s] == rhs[s])) {
        rep.fail("draw " + std::to_string(d) + ": f=" + bits_to_string(f.bits, n) + " f'=" + bits_to_string(fp.bits, n) +
                 " I'=" + bits_to_string(static_cast<Bits>(s), n) + " seed=" + std::to_string(seed));
        break;
      }
  }
  rep.parameters["degree"] = n;
  rep.details["draws"] = draws;
  rep.details["pairs"] = pairs.size();
  rep.details["same_orbit_draws"] = nonzero_cases;
  return rep;
}

// ---- eq3 isomorphism ---------------------------------------------------------

/// Matrix of N_{Lambda->J} from the iota-odd parts of the M^{H*(Phi)} to the
/// iota-odd parts of the M^{H(I)}, M = Map(G, Q).
inline VerificationReport verify_eq3_isomorphism(const CMGroup& cm) {
  VerificationReport rep;
  rep.check = "eq3-isomorphism";
  const Group& g = cm.group();
  const std::size_t n = cm.degree();
  const auto lambda = lambda_representatives(cm);
  const auto jodd = jodd_representatives(cm);

  // Row coordinates: for each I, one value per {d, iota d} pair of cosets of H(I).
  struct Target {
    Bits subset;
    ElementSet h;
    std::vector<std::size_t> rows;  // a canonical element of each coset pair
  };
  std::vector<Target> targets;
  std::size_t row_count = 0;
  for (Bits subset : jodd) {
    Target t{subset, h_of_subset(cm, subset), {}};
    const auto left = left_cosets(g, t.h);
    for (std::size_t k = 0; k < left.count(); ++k) {
      const std::size_t partner = left.block_of(g.multiply(cm.iota(), left.reps[k]));
      if (partner == k) throw ModelError("iota lies in H(I) for odd I");
      if (k < partner) t.rows.push_back(left.reps[k]);
    }
    row_count += t.rows.size();
    targets.push_back(std::move(t));
  }

  std::vector<std::vector<Rational>> columns;
  for (CMType f : lambda) {
    const auto left = left_cosets(g, reflex_subgroup(cm, f));
    std::vector<AlgebraElement> norms;
    for (const auto& t : targets) norms.push_back(half_norm_I_star(cm, f, t.subset));
    for (std::size_t k = 0; k < left.count(); ++k) {
      const std::size_t partner = left.block_of(g.multiply(cm.iota(), left.reps[k]));
      if (partner == k) throw ModelError("iota lies in H*(Phi)");
      if (k > partner) continue;
      RationalFunction b(g.order());
      for (std::size_t x : left.cosets[k]) b.values[x] = 1;
      for (std::size_t x : left.cosets[partner]) b.values[x] = -1;
      std::vector<Rational> column;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        auto y = apply_element(norms[t], b);
        if (subset_parity(f.bits, targets[t].subset)) y.scale(Rational(-1));
        if (!is_invariant(g, targets[t].h, y)) throw ModelError("image is not H(I)-invariant");
        if (!(act(g, cm.iota(), y) == RationalFunction(std::vector<Rational>(y.values.size())) - y))
          throw ModelError("image is not iota-odd");
        for (std::size_t row : targets[t].rows) column.push_back(y.values[row]);
      }
      columns.push_back(std::move(column));
    }
  }
  const Rational half_dim = pow2(static_cast<int>(n) - 1);
  rep.require(Rational(static_cast<long>(columns.size())) == half_dim, "source dimension is not 2^(N-1)");
  rep.require(Rational(static_cast<long>(row_count)) == half_dim, "target dimension is not 2^(N-1)");
  Matrix m = zero_matrix(row_count, columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (std::size_t r = 0; r < row_count; ++r) m[r][c] = columns[c][r];
  const std::size_t r = rank(m);
  rep.require(Rational(static_cast<long>(r)) == half_dim, "rank " + std::to_string(r) + " is not 2^(N-1)");
  rep.parameters["degree"] = n;
  rep.details["source_dimension"] = columns.size();
  rep.details["target_dimension"] = row_count;
  rep.details["rank"] = r;
  return rep;
}

}  // namespace reflexlab
