#pragma once

// Map(G, F): functions on a group with componentwise product and the action
// (sigma . x)_tau = x_{tau sigma}. An element x models a field element through
// x_tau = tau(x).

#include <random>
#include <vector>

#include "reflexlab/errors.hpp"
#include "reflexlab/rational.hpp"
#include "reflexlab/signed_perm.hpp"

namespace reflexlab {

template <class Scalar>
struct FunctionElement {
  std::vector<Scalar> values;

  FunctionElement() = default;
  explicit FunctionElement(std::size_t order) : values(order, Scalar(0)) {}
  explicit FunctionElement(std::vector<Scalar> v) : values(std::move(v)) {}

  static FunctionElement constant(std::size_t order, const Scalar& c) {
    FunctionElement x;
    x.values.assign(order, c);
    return x;
  }

  std::size_t size() const { return values.size(); }
  const Scalar& operator[](std::size_t tau) const { return values[tau]; }
  Scalar& operator[](std::size_t tau) { return values[tau]; }

  bool is_zero() const {
    for (const auto& v : values)
      if (!reflexlab::is_zero(v)) return false;
    return true;
  }

  FunctionElement& operator+=(const FunctionElement& o) {
    for (std::size_t k = 0; k < values.size(); ++k) values[k] += o.values[k];
    return *this;
  }
  FunctionElement& operator-=(const FunctionElement& o) {
    for (std::size_t k = 0; k < values.size(); ++k) values[k] -= o.values[k];
    return *this;
  }
  FunctionElement& operator*=(const FunctionElement& o) {
    for (std::size_t k = 0; k < values.size(); ++k) values[k] *= o.values[k];
    return *this;
  }
  FunctionElement& scale(const Scalar& s) {
    for (auto& v : values) v *= s;
    return *this;
  }
  friend FunctionElement operator+(FunctionElement a, const FunctionElement& b) { return a += b; }
  friend FunctionElement operator-(FunctionElement a, const FunctionElement& b) { return a -= b; }
  friend FunctionElement operator*(FunctionElement a, const FunctionElement& b) { return a *= b; }
  friend bool operator==(const FunctionElement& a, const FunctionElement& b) { return a.values == b.values; }
};

using RationalFunction = FunctionElement<Rational>;
using GaussianFunction = FunctionElement<Gaussian>;

/// (sigma . x)_tau = x_{tau sigma}.
template <class Scalar>
FunctionElement<Scalar> act(const Group& g, std::size_t sigma, const FunctionElement<Scalar>& x) {
  FunctionElement<Scalar> out(x.size());
  for (std::size_t tau = 0; tau < g.order(); ++tau) out.values[tau] = x.values[g.multiply(tau, sigma)];
  return out;
}

/// Pointwise complex conjugation, which in this model is the action of iota on
/// elements of the conjugation-compatible rational form.
template <class Scalar>
FunctionElement<Scalar> conjugate(const FunctionElement<Scalar>& x) {
  FunctionElement<Scalar> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.values[k] = conj(x.values[k]);
  return out;
}

/// x is fixed by every element of S, i.e. constant on each left coset tau S.
template <class Scalar>
bool is_invariant(const Group& g, const ElementSet& s, const FunctionElement<Scalar>& x) {
  for (std::size_t tau = 0; tau < g.order(); ++tau)
    for (std::size_t h : s)
      if (!(x.values[g.multiply(tau, h)] == x.values[tau])) return false;
  return true;
}

/// Small random rationals: numerator in [-5, 5], denominator in [1, 4].
inline Rational random_small_rational(std::mt19937_64& rng) {
  const long num = static_cast<long>(rng() % 11) - 5;
  const long den = static_cast<long>(rng() % 4) + 1;
  return make_rational(num, den);
}

/// A random element of Map(G, Q) fixed by S (constant on left cosets of S).
inline RationalFunction random_invariant_function(const Group& g, const CosetDecomposition& left, std::mt19937_64& rng) {
  std::vector<Rational> per_coset(left.count());
  for (auto& v : per_coset) v = random_small_rational(rng);
  RationalFunction x(g.order());
  for (std::size_t tau = 0; tau < g.order(); ++tau) x.values[tau] = per_coset[left.block_of(tau)];
  return x;
}

/// In-place Walsh-Hadamard transform over subsets: v[I] <- sum_J (-1)^{|I n J|} v[J].
template <class Scalar>
void walsh_hadamard(std::vector<Scalar>& v) {
  for (std::size_t len = 1; len < v.size(); len <<= 1)
    for (std::size_t base = 0; base < v.size(); base += len << 1)
      for (std::size_t k = base; k < base + len; ++k) {
        Scalar lo = v[k];
        Scalar hi = v[k + len];
        v[k] = lo + hi;
        v[k + len] = lo - hi;
      }
}

}  // namespace reflexlab
