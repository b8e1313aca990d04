#pragma once

// Rational class functions, induction of index-2 sign characters, and the
// character identities between a CM-field, its reflexes and the fields K(I).

#include <memory>
#include <string>
#include <vector>

#include "reflexlab/cm_structure.hpp"
#include "reflexlab/errors.hpp"
#include "reflexlab/rational.hpp"
#include "reflexlab/report.hpp"
#include "reflexlab/signed_perm.hpp"

namespace reflexlab {

/// Conjugacy classes of a group plus the bookkeeping class functions need.
class ClassTable {
 public:
  explicit ClassTable(std::shared_ptr<const Group> g) : group_(std::move(g)), classes_(conjugacy_classes(*group_)) {
    inverse_class_.resize(classes_.classes.size());
    for (std::size_t c = 0; c < classes_.classes.size(); ++c)
      inverse_class_[c] = classes_.class_of[group_->inverse(classes_.classes[c].front())];
  }

  const Group& group() const { return *group_; }
  std::size_t size() const { return classes_.classes.size(); }
  const ElementSet& members(std::size_t c) const { return classes_.classes[c]; }
  std::size_t representative(std::size_t c) const { return classes_.classes[c].front(); }
  std::size_t class_size(std::size_t c) const { return classes_.classes[c].size(); }
  std::size_t class_of(std::size_t element) const { return classes_.class_of[element]; }
  std::size_t inverse_class(std::size_t c) const { return inverse_class_[c]; }

 private:
  std::shared_ptr<const Group> group_;
  ClassPartition classes_;
  std::vector<std::size_t> inverse_class_;
};

using ClassTablePtr = std::shared_ptr<const ClassTable>;

inline ClassTablePtr make_class_table(std::shared_ptr<const Group> g) { return std::make_shared<const ClassTable>(std::move(g)); }

class ClassFunction {
 public:
  explicit ClassFunction(ClassTablePtr table) : table_(std::move(table)), values_(table_->size(), Rational(0)) {}
  ClassFunction(ClassTablePtr table, std::vector<Rational> values) : table_(std::move(table)), values_(std::move(values)) {
    if (values_.size() != table_->size()) throw InputError("class function has the wrong number of values");
  }

  const ClassTable& table() const { return *table_; }
  const ClassTablePtr& table_ptr() const { return table_; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& at_class(std::size_t c) const { return values_[c]; }
  Rational& at_class(std::size_t c) { return values_[c]; }
  const Rational& operator()(std::size_t element) const { return values_[table_->class_of(element)]; }
  /// Value at the identity.
  const Rational& degree() const { return values_[table_->class_of(table_->group().identity())]; }

  bool has_integer_values() const {
    for (const auto& v : values_)
      if (v.get_den() != 1) return false;
    return true;
  }

  ClassFunction& operator+=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] += o.values_[c];
    return *this;
  }
  ClassFunction& operator-=(const ClassFunction& o) {
    check_same(o);
    for (std::size_t c = 0; c < values_.size(); ++c) values_[c] -= o.values_[c];
    return *this;
  }
  ClassFunction& operator*=(const Rational& s) {
    for (auto& v : values_) v *= s;
    return *this;
  }
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(const Rational& s, ClassFunction a) { return a *= s; }
  friend bool operator==(const ClassFunction& a, const ClassFunction& b) {
    return a.table_ == b.table_ && a.values_ == b.values_;
  }

  void check_same(const ClassFunction& o) const {
    if (table_ != o.table_) throw InputError("class functions live on different groups");
  }

 private:
  ClassTablePtr table_;
  std::vector<Rational> values_;
};

/// <a, b> = |G|^-1 sum_g a(g) b(g^-1).
inline Rational inner_product(const ClassFunction& a, const ClassFunction& b) {
  a.check_same(b);
  const auto& t = a.table();
  Rational sum = 0;
  for (std::size_t c = 0; c < t.size(); ++c)
    sum += Rational(static_cast<long>(t.class_size(c))) * a.at_class(c) * b.at_class(t.inverse_class(c));
  return sum / static_cast<long>(t.group().order());
}

inline ClassFunction trivial_character(ClassTablePtr t) {
  return ClassFunction(t, std::vector<Rational>(t->size(), Rational(1)));
}

/// A function on a subgroup S of G, stored densely over G (zero off S).
struct SubgroupFunction {
  ElementSet domain;
  std::vector<Rational> values;
};

/// <chi, psi>_S computed element by element.
inline Rational inner_product_on(const Group& g, const SubgroupFunction& a, const SubgroupFunction& b) {
  Rational sum = 0;
  for (std::size_t x : a.domain) sum += a.values[x] * b.values[g.inverse(x)];
  return sum / static_cast<long>(a.domain.size());
}

struct SignCharacterSpec {
  ElementSet overgroup;
  ElementSet kernel;
};

/// +1 on the kernel, -1 on the rest of the overgroup.
inline SubgroupFunction index_two_character(const Group& g, const SignCharacterSpec& spec) {
  require_subgroup(g, spec.overgroup, "sign character overgroup");
  require_subgroup(g, spec.kernel, "sign character kernel");
  if (!is_subset(spec.kernel, spec.overgroup)) throw InputError("kernel is not contained in the overgroup");
  if (spec.kernel.size() * 2 != spec.overgroup.size()) throw InputError("kernel does not have index 2 in the overgroup");
  SubgroupFunction chi{spec.overgroup, std::vector<Rational>(g.order(), Rational(0))};
  for (std::size_t x : spec.overgroup) chi.values[x] = -1;
  for (std::size_t x : spec.kernel) chi.values[x] = 1;
  return chi;
}

/// Ind_S^G chi at g equals |G| / (|S| |cl(g)|) times the sum of chi over S n cl(g).
inline ClassFunction induce(ClassTablePtr table, const SubgroupFunction& chi) {
  const auto& t = *table;
  std::vector<Rational> sums(t.size(), Rational(0));
  for (std::size_t x : chi.domain) sums[t.class_of(x)] += chi.values[x];
  const long order = static_cast<long>(t.group().order());
  const long sub = static_cast<long>(chi.domain.size());
  for (std::size_t c = 0; c < t.size(); ++c)
    if (sgn(sums[c]) != 0) sums[c] *= make_rational(order, sub * static_cast<long>(t.class_size(c)));
  return ClassFunction(std::move(table), std::move(sums));
}

/// Restriction along an embedding of the elements of `target` into the group
/// of `chi`: embedding[x] is the ambient position of target element x.
inline ClassFunction restrict(const ClassFunction& chi, ClassTablePtr target, const std::vector<std::size_t>& embedding) {
  if (embedding.size() != target->group().order()) throw InputError("embedding size does not match the target group");
  std::vector<Rational> values(target->size());
  for (std::size_t c = 0; c < target->size(); ++c) values[c] = chi(embedding[target->representative(c)]);
  return ClassFunction(std::move(target), std::move(values));
}

/// Positions in `ambient` of the elements of `sub` (which must be contained in it).
inline std::vector<std::size_t> embed_elements(const Group& sub, const Group& ambient) {
  std::vector<std::size_t> out;
  out.reserve(sub.order());
  for (const auto& e : sub.elements()) {
    auto pos = ambient.find(e);
    if (!pos) throw InputError("group element " + to_string(e) + " is missing from the ambient group");
    out.push_back(*pos);
  }
  return out;
}

/// Restriction to G of Ind_S^A chi via double cosets G \ A / S:
/// sum over reps s of Ind_{G n sSs^-1}^G (x -> chi(s^-1 x s)).
inline ClassFunction mackey_restriction(ClassTablePtr ambient, ClassTablePtr target, const std::vector<std::size_t>& embedding,
                                        const SubgroupFunction& chi) {
  const Group& a = ambient->group();
  const Group& g = target->group();
  ElementSet image(embedding.begin(), embedding.end());
  std::sort(image.begin(), image.end());
  std::vector<std::size_t> back(a.order(), static_cast<std::size_t>(-1));
  for (std::size_t x = 0; x < embedding.size(); ++x) back[embedding[x]] = x;
  std::vector<char> in_s(a.order(), 0);
  for (std::size_t x : chi.domain) in_s[x] = 1;

  const auto dc = double_cosets(a, image, chi.domain);
  ClassFunction total(target);
  for (std::size_t s : dc.reps) {
    const std::size_t s_inv = a.inverse(s);
    SubgroupFunction term{{}, std::vector<Rational>(g.order(), Rational(0))};
    for (std::size_t x : image) {
      const std::size_t y = a.multiply(a.multiply(s_inv, x), s);
      if (!in_s[y]) continue;
      term.domain.push_back(back[x]);
      term.values[back[x]] = chi.values[y];
    }
    std::sort(term.domain.begin(), term.domain.end());
    total += induce(target, term);
  }
  return total;
}

inline Json class_function_json(const ClassFunction& chi) {
  Json rows = Json::array();
  const auto& t = chi.table();
  for (std::size_t c = 0; c < t.size(); ++c) {
    Json row;
    row["representative"] = to_string(t.group().element(t.representative(c)));
    row["class_size"] = t.class_size(c);
    row["value"] = to_string(chi.at_class(c));
    rows.push_back(row);
  }
  return rows;
}

/// Frobenius reciprocity <Ind chi, psi>_G = <chi, Res psi>_S for a subgroup function chi.
inline bool frobenius_reciprocity_holds(ClassTablePtr table, const SubgroupFunction& chi, const ClassFunction& psi) {
  const Group& g = table->group();
  SubgroupFunction res{chi.domain, std::vector<Rational>(g.order(), Rational(0))};
  for (std::size_t x : chi.domain) res.values[x] = psi(x);
  return inner_product(induce(table, chi), psi) == inner_product_on(g, chi, res);
}

struct CharacterIdentity {
  ClassTablePtr table;
  ClassFunction lhs;
  ClassFunction rhs;
  VerificationReport report;
};

/// Sum over CM-type orbits of Ind from H*_0(Phi) of the sign character with
/// kernel H*(Phi), against the sum over J_odd of Ind from H_0(I) of the sign
/// character with kernel H(I).
inline CharacterIdentity character_identity(const CMGroup& cm) {
  auto table = make_class_table(cm.shared_group());
  const Group& g = cm.group();
  const std::size_t n = cm.degree();
  CharacterIdentity out{table, ClassFunction(table), ClassFunction(table), {}};
  auto& rep = out.report;
  rep.check = "character-identity";

  Json lhs_terms = Json::array();
  std::vector<SubgroupFunction> lhs_chars, rhs_chars;
  std::size_t lhs_index_sum = 0;
  for (const auto& orbit : cm_orbits(cm)) {
    SignCharacterSpec spec{reflex_overgroup(cm, orbit.representative), orbit.stabilizer};
    auto chi = index_two_character(g, spec);
    auto ind = induce(table, chi);
    lhs_chars.push_back(chi);
    lhs_index_sum += g.order() / spec.overgroup.size();
    Json term;
    term["cm_type"] = bits_to_string(orbit.representative.bits, n);
    term["overgroup_order"] = spec.overgroup.size();
    term["kernel_order"] = spec.kernel.size();
    lhs_terms.push_back(term);
    out.lhs += ind;
  }
  Json rhs_terms = Json::array();
  std::size_t rhs_index_sum = 0;
  for (Bits subset : jodd_representatives(cm)) {
    SignCharacterSpec spec{subset_stabilizer(cm, subset), h_of_subset(cm, subset)};
    auto chi = index_two_character(g, spec);
    rhs_index_sum += g.order() / spec.overgroup.size();
    Json term;
    term["subset"] = bits_to_string(subset, n);
    term["overgroup_order"] = spec.overgroup.size();
    term["kernel_order"] = spec.kernel.size();
    rhs_terms.push_back(term);
    out.rhs += induce(table, chi);
    rhs_chars.push_back(std::move(chi));
  }

  const Rational expected = pow2(static_cast<int>(n) - 1);
  rep.require(Rational(static_cast<long>(lhs_index_sum)) == expected, "sum of [G : H*_0] is not 2^(N-1)");
  rep.require(Rational(static_cast<long>(rhs_index_sum)) == expected, "sum of [G : H_0(I)] is not 2^(N-1)");
  rep.require(out.lhs.degree() == expected, "left side degree is " + to_string(out.lhs.degree()));
  rep.require(out.rhs.degree() == expected, "right side degree is " + to_string(out.rhs.degree()));
  rep.require(out.lhs.has_integer_values() && out.rhs.has_integer_values(), "non-integer induced character value");
  if (rep.passed) rep.require(out.lhs == out.rhs, "class functions differ");
  for (const auto& chi : lhs_chars) rep.require(frobenius_reciprocity_holds(table, chi, out.rhs), "Frobenius reciprocity fails");
  for (const auto& chi : rhs_chars) rep.require(frobenius_reciprocity_holds(table, chi, out.lhs), "Frobenius reciprocity fails");

  rep.parameters["degree"] = n;
  rep.parameters["group_order"] = g.order();
  rep.details["lhs_degree"] = to_string(out.lhs.degree());
  rep.details["rhs_degree"] = to_string(out.rhs.degree());
  rep.details["lhs_terms"] = lhs_terms;
  rep.details["rhs_terms"] = rhs_terms;
  rep.details["lhs"] = class_function_json(out.lhs);
  rep.details["rhs"] = class_function_json(out.rhs);
  rep.details["lhs_rhs_inner_product"] = to_string(inner_product(out.lhs, out.rhs));
  rep.details["lhs_norm"] = to_string(inner_product(out.lhs, out.lhs));
  return out;
}

inline VerificationReport verify_character_identity(const CMGroup& cm) { return character_identity(cm).report; }

/// The ambient (Z/2)^N x| G_0 of a CM group, where G_0 is the projection image.
inline Group ambient_group(const CMGroup& cm, std::size_t max_order = kDefaultMaxOrder) {
  const std::size_t n = cm.degree();
  const std::size_t predicted = (std::size_t{1} << n) * cm.g0().size();
  if (predicted > max_order)
    throw ResourceError("ambient group order " + std::to_string(predicted) + " exceeds the cap of " + std::to_string(max_order));
  std::vector<SignedPerm> gens;
  for (std::size_t i = 0; i < n; ++i) gens.push_back(SignedPerm(n).with_signs(Bits{1} << i));
  for (const auto& g : cm.group().generators()) {
    auto p = g.perm_part();
    if (!p.is_identity() && std::find(gens.begin(), gens.end(), p) == gens.end()) gens.push_back(p);
  }
  Group a = close(n, gens, max_order);
  if (a.order() != predicted) throw ModelError("ambient group has unexpected order");
  return a;
}

/// Ind from <1> x G_0 of its sign character equals the sum over J_odd of the
/// characters chi_{I,id} induced from (Z/2)^N x| H_0(I); each summand is
/// irreducible, and restricting to G recovers the character identity terms.
inline VerificationReport verify_decomposition_lemma(const CMGroup& cm, std::size_t max_order = kDefaultMaxOrder) {
  VerificationReport rep;
  rep.check = "decomposition-lemma";
  const std::size_t n = cm.degree();
  auto ambient = std::make_shared<const Group>(ambient_group(cm, max_order));
  const Group& a = *ambient;
  auto at = make_class_table(ambient);
  auto gt = make_class_table(cm.shared_group());
  const auto embedding = embed_elements(cm.group(), a);
  const Bits ones = cm.ones();

  SignCharacterSpec top{a.select([&](const SignedPerm& x) { return x.signs() == 0 || x.signs() == ones; }),
                        a.select([](const SignedPerm& x) { return x.signs() == 0; })};
  auto top_chi = index_two_character(a, top);
  auto lhs = induce(at, top_chi);

  ClassFunction rhs(at);
  ClassFunction res_sum(gt);
  Json terms = Json::array();
  for (Bits subset : jodd_representatives(cm)) {
    SubgroupFunction chi{a.select([&](const SignedPerm& x) { return x.act(subset) == subset; }), std::vector<Rational>(a.order(), Rational(0))};
    for (std::size_t x : chi.domain) chi.values[x] = parity(a.element(x).signs() & subset) ? -1 : 1;
    auto term = induce(at, chi);
    const Rational norm = inner_product(term, term);
    rep.require(norm == 1, "chi_{I,id} for I=" + bits_to_string(subset, n) + " has norm " + to_string(norm));

    auto res = restrict(term, gt, embedding);
    auto direct = induce(gt, index_two_character(cm.group(), {subset_stabilizer(cm, subset), h_of_subset(cm, subset)}));
    rep.require(res == direct, "Res chi_{I,id} differs from Ind_{H_0(I)} for I=" + bits_to_string(subset, n));
    rep.require(mackey_restriction(at, gt, embedding, chi) == res, "Mackey expansion mismatch for I=" + bits_to_string(subset, n));
    res_sum += res;

    Json t;
    t["subset"] = bits_to_string(subset, n);
    t["degree"] = to_string(term.degree());
    t["norm"] = to_string(norm);
    terms.push_back(t);
    rhs += term;
  }
  rep.require(lhs == rhs, "Ind from <1> x G_0 differs from the sum of chi_{I,id}");

  auto res_lhs = restrict(lhs, gt, embedding);
  rep.require(mackey_restriction(at, gt, embedding, top_chi) == res_lhs, "Mackey expansion mismatch for the sign character of <1> x G_0");
  rep.require(res_lhs.values() == character_identity(cm).lhs.values(), "restriction to G differs from the reflex side of the character identity");
  rep.require(res_lhs == res_sum, "restricted sides differ");

  rep.parameters["degree"] = n;
  rep.parameters["group_order"] = cm.order();
  rep.details["ambient_order"] = a.order();
  rep.details["ambient_classes"] = at->size();
  rep.details["lhs_degree"] = to_string(lhs.degree());
  rep.details["terms"] = terms;
  return rep;
}

}  // namespace reflexlab
