#pragma once

// Split model of K^c (x) Q(i) as Map(G, Q(i)), the Pfister form
// q = <1, D_1> (x) ... (x) <1, D_N> on V, and the map phi_Lambda.
//
// K^c itself is the rational form A = { x : x_{tau iota} = conj(x_tau) }:
// it is G-stable, iota acts on it as pointwise conjugation, and its trace
// form Tr(conj(a) a) is positive definite. The fixed field of S is A^S, and
// the fixed field of C (the model of K_0^c) is identified with Map(G_0, Q).

#include <bit>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reflexlab/cm_structure.hpp"
#include "reflexlab/errors.hpp"
#include "reflexlab/function_algebra.hpp"
#include "reflexlab/linear_algebra.hpp"
#include "reflexlab/rational.hpp"
#include "reflexlab/report.hpp"

namespace reflexlab {

inline constexpr std::size_t kMaxPfisterDegree = 6;

/// d_i = e_i^2 stands for phi_i(d); sqrt(-d_i) = i e_i.
struct SplitParams {
  std::vector<Rational> e;
};

inline void validate_split_params(const CMGroup& cm, const SplitParams& p) {
  if (p.e.size() != cm.degree()) throw InputError("split parameters need one entry per position");
  for (const auto& v : p.e)
    if (sgn(v) <= 0) throw InputError("split parameters must be positive");
}

inline SplitParams random_split_params(std::size_t n, std::mt19937_64& rng) {
  SplitParams p;
  for (std::size_t i = 0; i < n; ++i) p.e.push_back(make_rational(static_cast<long>(rng() % 9) + 1, static_cast<long>(rng() % 4) + 1));
  return p;
}

/// Elements of R = Map(G_0, Q), indexed like cm.g0().
using RElement = std::vector<Rational>;

/// s_i at tau = (f, sigma) is (-1)^{f(sigma(i))} i e_{sigma(i)}.
inline GaussianFunction s_element(const CMGroup& cm, const SplitParams& p, std::size_t i) {
  validate_split_params(cm, p);
  if (i >= cm.degree()) throw InputError("position out of range");
  GaussianFunction s(cm.order());
  for (std::size_t tau = 0; tau < cm.order(); ++tau) {
    const auto& t = cm.element(tau);
    const std::size_t j = t.image(i);
    Rational im = test_bit(t.signs(), j) ? Rational(-p.e[j]) : p.e[j];
    s.values[tau] = Gaussian(Rational(0), im);
  }
  return s;
}

/// D_i(sigma) = d_{sigma(i)}.
inline RElement d_element(const CMGroup& cm, const SplitParams& p, std::size_t i) {
  RElement d;
  for (const auto& sigma : cm.g0()) {
    const auto& e = p.e[sigma.image(i)];
    d.push_back(e * e);
  }
  return d;
}

/// Q-basis of A^S. A pair of cosets {c, iota c} gives 1 on both and
/// (i on c, -i on iota c); a coset with iota c = c gives its indicator.
inline std::vector<GaussianFunction> fixed_subalgebra_basis(const CMGroup& cm, const ElementSet& s) {
  const Group& g = cm.group();
  const auto left = left_cosets(g, s);
  std::vector<GaussianFunction> basis;
  for (std::size_t k = 0; k < left.count(); ++k) {
    const std::size_t partner = left.block_of(g.multiply(cm.iota(), left.reps[k]));
    if (partner < k) continue;
    GaussianFunction real(g.order());
    for (std::size_t x : left.cosets[k]) real.values[x] = 1;
    if (partner == k) {
      basis.push_back(std::move(real));
      continue;
    }
    for (std::size_t x : left.cosets[partner]) real.values[x] = 1;
    GaussianFunction imag(g.order());
    for (std::size_t x : left.cosets[k]) imag.values[x] = Gaussian::i();
    for (std::size_t x : left.cosets[partner]) imag.values[x] = -Gaussian::i();
    basis.push_back(std::move(real));
    basis.push_back(std::move(imag));
  }
  return basis;
}

/// Coordinates of x in A^S with respect to fixed_subalgebra_basis(cm, s).
inline std::vector<Rational> fixed_subalgebra_coordinates(const CMGroup& cm, const ElementSet& s, const GaussianFunction& x) {
  const Group& g = cm.group();
  const auto left = left_cosets(g, s);
  std::vector<Rational> coords;
  for (std::size_t k = 0; k < left.count(); ++k) {
    const std::size_t partner = left.block_of(g.multiply(cm.iota(), left.reps[k]));
    if (partner < k) continue;
    const auto& z = x.values[left.reps[k]];
    coords.push_back(z.re());
    if (partner != k) coords.push_back(z.im());
  }
  return coords;
}

/// Tr_{A^S/Q}: the sum of x over canonical left coset representatives of G/S.
inline Gaussian trace_to_Q(const CMGroup& cm, const GaussianFunction& x, const ElementSet& s) {
  if (!is_invariant(cm.group(), s, x)) throw InputError("trace_to_Q: element is not fixed by the subgroup");
  Gaussian sum;
  for (std::size_t rep : left_cosets(cm.group(), s).reps) sum += x.values[rep];
  return sum;
}

/// Element of V: coefficient of v_I (I a bit mask) in R.
struct VElement {
  std::vector<RElement> coeffs;

  VElement() = default;
  VElement(std::size_t degree, std::size_t g0_order)
      : coeffs(std::size_t{1} << degree, RElement(g0_order, Rational(0))) {}

  bool is_zero() const {
    for (const auto& c : coeffs)
      for (const auto& v : c)
        if (sgn(v) != 0) return false;
    return true;
  }
  friend bool operator==(const VElement& a, const VElement& b) { return a.coeffs == b.coeffs; }
};

/// Multiplication and the form q on V for fixed split parameters.
class PfisterSpace {
 public:
  PfisterSpace(const CMGroup& cm, const SplitParams& p) : degree_(cm.degree()), g0_order_(cm.g0().size()) {
    validate_split_params(cm, p);
    const std::size_t count = std::size_t{1} << degree_;
    std::vector<RElement> d;
    for (std::size_t i = 0; i < degree_; ++i) d.push_back(d_element(cm, p, i));
    prod_d_.assign(count, RElement(g0_order_, Rational(1)));
    prod_neg_d_.assign(count, RElement(g0_order_, Rational(1)));
    for (std::size_t mask = 1; mask < count; ++mask) {
      const std::size_t low = static_cast<std::size_t>(std::countr_zero(static_cast<Bits>(mask)));
      const std::size_t rest = mask & (mask - 1);
      for (std::size_t s = 0; s < g0_order_; ++s) {
        prod_d_[mask][s] = prod_d_[rest][s] * d[low][s];
        prod_neg_d_[mask][s] = -prod_neg_d_[rest][s] * d[low][s];
      }
    }
  }

  std::size_t degree() const { return degree_; }
  std::size_t g0_order() const { return g0_order_; }
  /// prod_{i in I} D_i
  const RElement& norm_of_basis(Bits subset) const { return prod_d_[subset]; }

  VElement basis(Bits subset) const {
    VElement v(degree_, g0_order_);
    std::fill(v.coeffs[subset].begin(), v.coeffs[subset].end(), Rational(1));
    return v;
  }

  /// v_I v_J = prod_{i in I n J} (-D_i) v_{I xor J}.
  VElement multiply(const VElement& a, const VElement& b) const {
    VElement out(degree_, g0_order_);
    const std::size_t count = a.coeffs.size();
    for (std::size_t i = 0; i < count; ++i) {
      if (all_zero(a.coeffs[i])) continue;
      for (std::size_t j = 0; j < count; ++j) {
        if (all_zero(b.coeffs[j])) continue;
        auto& target = out.coeffs[i ^ j];
        const auto& factor = prod_neg_d_[i & j];
        for (std::size_t s = 0; s < g0_order_; ++s) target[s] += a.coeffs[i][s] * b.coeffs[j][s] * factor[s];
      }
    }
    return out;
  }

  /// q(sum x_I v_I) = sum x_I^2 prod_{i in I} D_i.
  RElement q(const VElement& v) const { return polar(v, v); }

  /// The symmetric bilinear form with b(v, v) = q(v).
  RElement polar(const VElement& a, const VElement& b) const {
    RElement out(g0_order_, Rational(0));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      for (std::size_t s = 0; s < g0_order_; ++s) out[s] += a.coeffs[i][s] * b.coeffs[i][s] * prod_d_[i][s];
    return out;
  }

 private:
  static bool all_zero(const RElement& r) {
    for (const auto& v : r)
      if (sgn(v) != 0) return false;
    return true;
  }

  std::size_t degree_;
  std::size_t g0_order_;
  std::vector<RElement> prod_d_;
  std::vector<RElement> prod_neg_d_;
};

/// One block of the source: the CM-type f in Lambda with an element of A^{H*(Phi_f)}.
struct LambdaComponent {
  CMType type;
  GaussianFunction value;
};

/// The e-independent part of phi_Lambda: for each I,
/// sum over the components of (-1)^{f.I} N_{Phi_f(I)*}(a_f), as functions on G.
inline std::vector<GaussianFunction> phi_lambda_numerators(const CMGroup& cm, const std::vector<LambdaComponent>& a) {
  const Group& g = cm.group();
  const std::size_t count = std::size_t{1} << cm.degree();
  std::vector<GaussianFunction> out(count, GaussianFunction(g.order()));
  std::vector<Gaussian> bucket(count);
  const Rational half(1, 2);
  for (const auto& comp : a) {
    const auto h_star = reflex_subgroup(cm, comp.type);
    if (!is_invariant(g, h_star, comp.value)) throw InputError("phi_Lambda: component is not fixed by H*(Phi_f)");
    const auto reps = left_cosets(g, h_star).reps;
    std::vector<Bits> r;
    for (std::size_t psi : reps) r.push_back(cocycle(cm, comp.type, g.element(psi)));
    for (std::size_t tau = 0; tau < g.order(); ++tau) {
      std::fill(bucket.begin(), bucket.end(), Gaussian());
      for (std::size_t k = 0; k < reps.size(); ++k) bucket[r[k]] += comp.value.values[g.multiply(tau, reps[k])];
      walsh_hadamard(bucket);
      for (std::size_t subset = 0; subset < count; ++subset) {
        Gaussian v = bucket[subset] * Gaussian(half);
        if (parity(comp.type.bits & static_cast<Bits>(subset))) v = -v;
        out[subset].values[tau] += v;
      }
    }
  }
  return out;
}

/// 2^-(N-1) / prod_{i in I} s_i at every tau, indexed [I][tau].
inline std::vector<std::vector<Gaussian>> phi_lambda_scales(const CMGroup& cm, const SplitParams& p) {
  validate_split_params(cm, p);
  const std::size_t n = cm.degree();
  const std::size_t count = std::size_t{1} << n;
  std::vector<GaussianFunction> s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(s_element(cm, p, i));
  const Gaussian scale(pow2(-static_cast<int>(n) + 1));
  std::vector<std::vector<Gaussian>> out(count, std::vector<Gaussian>(cm.order()));
  for (std::size_t subset = 0; subset < count; ++subset)
    for (std::size_t tau = 0; tau < cm.order(); ++tau) {
      Gaussian denom(1);
      for (std::size_t i = 0; i < n; ++i)
        if (test_bit(static_cast<Bits>(subset), i)) denom *= s[i].values[tau];
      out[subset][tau] = scale / denom;
    }
  return out;
}

/// Divides by 2^(N-1) prod_{i in I} s_i, checks each coefficient is constant on
/// the fibres over G_0 and real, and folds it into R.
inline VElement phi_lambda_finish(const CMGroup& cm, const std::vector<std::vector<Gaussian>>& scales,
                                  const std::vector<GaussianFunction>& numerators) {
  const std::size_t n = cm.degree();
  const std::size_t count = std::size_t{1} << n;
  VElement out(n, cm.g0().size());
  std::vector<char> seen(cm.g0().size());
  for (std::size_t subset = 0; subset < count; ++subset) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t tau = 0; tau < cm.order(); ++tau) {
      const Gaussian u = numerators[subset].values[tau] * scales[subset][tau];
      if (!u.is_real())
        throw ModelError("phi_Lambda coefficient of v_" + bits_to_string(static_cast<Bits>(subset), n) + " is not real");
      const std::size_t sigma = cm.g0_index(tau);
      if (!seen[sigma]) {
        out.coeffs[subset][sigma] = u.re();
        seen[sigma] = 1;
      } else if (out.coeffs[subset][sigma] != u.re()) {
        throw ModelError("phi_Lambda coefficient of v_" + bits_to_string(static_cast<Bits>(subset), n) + " is not C-invariant");
      }
    }
  }
  return out;
}

inline VElement phi_lambda_finish(const CMGroup& cm, const SplitParams& p, const std::vector<GaussianFunction>& numerators) {
  return phi_lambda_finish(cm, phi_lambda_scales(cm, p), numerators);
}

inline VElement phi_lambda(const CMGroup& cm, const SplitParams& p, const std::vector<LambdaComponent>& a) {
  return phi_lambda_finish(cm, p, phi_lambda_numerators(cm, a));
}

/// Q-basis of the direct sum over Lambda (or over J_odd) of the fixed algebras.
struct BlockBasis {
  std::vector<std::size_t> block;  // block index of each basis vector
  std::vector<ElementSet> subgroups;
  std::vector<CMType> types;  // Lambda only
  std::vector<GaussianFunction> vectors;
  std::size_t size() const { return vectors.size(); }
};

enum class BasisKind { lambda, jodd };

inline BlockBasis block_basis(const CMGroup& cm, BasisKind kind) {
  BlockBasis b;
  if (kind == BasisKind::lambda) {
    for (const auto& o : cm_orbits(cm)) {
      b.types.push_back(o.representative);
      b.subgroups.push_back(o.stabilizer);
    }
  } else {
    for (Bits subset : jodd_representatives(cm)) b.subgroups.push_back(h_of_subset(cm, subset));
  }
  for (std::size_t k = 0; k < b.subgroups.size(); ++k)
    for (auto& v : fixed_subalgebra_basis(cm, b.subgroups[k])) {
      b.block.push_back(k);
      b.vectors.push_back(std::move(v));
    }
  return b;
}

/// Gram matrix of the orthogonal sum of the forms a -> Tr(conj(a) a).
inline Matrix trace_gram(const CMGroup& cm, const BlockBasis& b) {
  Matrix m = zero_matrix(b.size(), b.size());
  for (std::size_t k = 0; k < b.size(); ++k)
    for (std::size_t l = 0; l < b.size(); ++l) {
      if (b.block[k] != b.block[l]) continue;
      const auto t = trace_to_Q(cm, conjugate(b.vectors[k]) * b.vectors[l], b.subgroups[b.block[k]]);
      if (!t.is_real()) throw ModelError("trace form is not real");
      m[k][l] = t.re();
    }
  return m;
}

inline Matrix trace_gram(const CMGroup& cm, BasisKind kind) { return trace_gram(cm, block_basis(cm, kind)); }

inline Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(to_string(v));
    rows.push_back(r);
  }
  return rows;
}

/// The three exact checks of the Pfister decomposition for each parameter set:
/// phi_Lambda is multiplicative on all basis pairs, the polar form of
/// q o phi_Lambda is 2^-N times the trace Gram matrix with constant entries,
/// and the coefficient matrix is invertible over every point of G_0.
inline VerificationReport verify_pfister(const CMGroup& cm, const std::vector<SplitParams>& params) {
  const std::size_t n = cm.degree();
  if (n > kMaxPfisterDegree) throw ResourceError("Pfister verification is capped at degree " + std::to_string(kMaxPfisterDegree));
  VerificationReport rep;
  rep.check = "pfister";
  const auto basis = block_basis(cm, BasisKind::lambda);
  const std::size_t dim = basis.size();
  const std::size_t count = std::size_t{1} << n;
  rep.require(dim == count, "basis dimension is not 2^N");

  const Matrix gram_q = trace_gram(cm, basis);
  rep.require(is_positive_definite(gram_q), "trace Gram matrix is not positive definite");

  auto single = [&](std::size_t k, const GaussianFunction& value) {
    return std::vector<LambdaComponent>{{basis.types[basis.block[k]], value}};
  };
  std::vector<std::vector<GaussianFunction>> numerators;
  for (std::size_t k = 0; k < dim; ++k) numerators.push_back(phi_lambda_numerators(cm, single(k, basis.vectors[k])));
  std::vector<std::vector<std::vector<GaussianFunction>>> product_numerators(dim);
  for (std::size_t k = 0; k < dim; ++k)
    for (std::size_t l = k; l < dim; ++l) {
      if (basis.block[k] == basis.block[l])
        product_numerators[k].push_back(phi_lambda_numerators(cm, single(k, basis.vectors[k] * basis.vectors[l])));
      else
        product_numerators[k].emplace_back();
    }

  Json runs = Json::array();
  const Rational expected_scale = pow2(-static_cast<int>(n));
  for (const auto& p : params) {
    validate_split_params(cm, p);
    PfisterSpace space(cm, p);
    const auto scales = phi_lambda_scales(cm, p);
    Json run;
    Json e = Json::array();
    for (const auto& v : p.e) e.push_back(to_string(v));
    run["e"] = e;

    std::vector<VElement> images;
    for (std::size_t k = 0; k < dim; ++k) images.push_back(phi_lambda_finish(cm, scales, numerators[k]));

    bool hom_ok = true;
    std::string hom_failure;
    for (std::size_t k = 0; k < dim && hom_ok; ++k)
      for (std::size_t l = k; l < dim; ++l) {
        const auto prod = space.multiply(images[k], images[l]);
        const auto& num = product_numerators[k][l - k];
        const bool ok = num.empty() ? prod.is_zero() : prod == phi_lambda_finish(cm, scales, num);
        if (!ok) {
          hom_ok = false;
          hom_failure = "basis pair (" + std::to_string(k) + ", " + std::to_string(l) + ")";
          break;
        }
      }
    rep.require(hom_ok, "homomorphism fails at " + hom_failure);

    // Polar form of q o phi against the trace Gram matrix.
    Matrix gram_phi = zero_matrix(dim, dim);
    bool constant = true;
    std::string constant_failure;
    for (std::size_t k = 0; k < dim; ++k)
      for (std::size_t l = 0; l < dim; ++l) {
        const auto b = space.polar(images[k], images[l]);
        for (const auto& v : b)
          if (v != b.front() && constant) {
            constant = false;
            constant_failure = "entry (" + std::to_string(k) + ", " + std::to_string(l) + ") is not constant on G_0";
          }
        gram_phi[k][l] = b.front();
      }
    rep.require(constant, constant_failure);
    bool form_ok = constant;
    for (std::size_t k = 0; k < dim && form_ok; ++k)
      for (std::size_t l = 0; l < dim; ++l)
        if (gram_phi[k][l] != expected_scale * gram_q[k][l]) {
          form_ok = false;
          rep.fail("q(phi) Gram entry (" + std::to_string(k) + ", " + std::to_string(l) + ") is " + to_string(gram_phi[k][l]) +
                   ", expected " + to_string(expected_scale * gram_q[k][l]));
          break;
        }
    if (!form_ok && constant) {
      // Report whether a single global constant would have matched.
      std::optional<Rational> ratio;
      bool proportional = true;
      for (std::size_t k = 0; k < dim && proportional; ++k)
        for (std::size_t l = 0; l < dim; ++l) {
          if (sgn(gram_q[k][l]) == 0) {
            if (sgn(gram_phi[k][l]) != 0) proportional = false;
            continue;
          }
          Rational r = gram_phi[k][l] / gram_q[k][l];
          if (!ratio) ratio = r;
          else if (*ratio != r) proportional = false;
        }
      run["global_rescale"] = proportional && ratio ? Json(to_string(*ratio)) : Json(nullptr);
    }

    bool bijective = true;
    for (std::size_t sigma = 0; sigma < cm.g0().size(); ++sigma) {
      Matrix m = zero_matrix(dim, count);
      for (std::size_t k = 0; k < dim; ++k)
        for (std::size_t subset = 0; subset < count; ++subset) m[k][subset] = images[k].coeffs[subset][sigma];
      if (sgn(determinant(m)) == 0) {
        bijective = false;
        rep.fail("coefficient matrix is singular over G_0 element " + to_string(cm.g0()[sigma]));
        break;
      }
    }

    run["homomorphism"] = hom_ok;
    run["form_identity"] = form_ok;
    run["constant_entries"] = constant;
    run["bijective"] = bijective;
    run["gram_q_phi"] = matrix_json(gram_phi);
    runs.push_back(run);
  }
  rep.parameters["degree"] = n;
  rep.details["dimension"] = dim;
  rep.details["scale"] = to_string(expected_scale);
  rep.details["gram_trace"] = matrix_json(gram_q);
  rep.details["gram_trace_det"] = to_string(determinant(gram_q));
  rep.details["runs"] = runs;
  return rep;
}

inline VerificationReport verify_pfister(const CMGroup& cm, std::size_t vectors, std::uint64_t seed) {
  if (vectors == 0) throw InputError("Pfister verification needs at least one parameter vector");
  std::mt19937_64 rng(seed);
  std::vector<SplitParams> params;
  for (std::size_t attempt = 0; params.size() < vectors; ++attempt) {
    if (attempt == 100 * vectors) throw InputError("cannot draw " + std::to_string(vectors) + " distinct parameter vectors");
    auto p = random_split_params(cm.degree(), rng);
    bool repeated = false;
    for (const auto& q : params) repeated = repeated || q.e == p.e;
    if (!repeated) params.push_back(std::move(p));
  }
  auto rep = verify_pfister(cm, params);
  rep.parameters["vectors"] = vectors;
  rep.parameters["seed"] = seed;
  return rep;
}

}  // namespace reflexlab
