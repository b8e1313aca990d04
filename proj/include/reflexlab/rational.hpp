#pragma once

#include <gmpxx.h>

#include <string>
#include <utility>

namespace reflexlab {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// 2^k as an exact rational; k may be negative.
inline Rational pow2(int k) {
  Rational r = 1;
  if (k >= 0) {
    mpz_class num;
    mpz_ui_pow_ui(num.get_mpz_t(), 2, static_cast<unsigned long>(k));
    r = num;
  } else {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, static_cast<unsigned long>(-k));
    r = Rational(1, den);
  }
  return r;
}

/// Exact element of Q(i).
class Gaussian {
 public:
  Gaussian() = default;
  Gaussian(Rational re) : re_(std::move(re)) {}  // NOLINT(google-explicit-constructor)
  Gaussian(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}
  Gaussian(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)

  static Gaussian i() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  Gaussian conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  Gaussian inverse() const {
    Rational n = norm();
    return {re_ / n, -im_ / n};
  }

  Gaussian& operator+=(const Gaussian& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  Gaussian& operator-=(const Gaussian& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  Gaussian& operator*=(const Gaussian& o) {
    Rational re = re_ * o.re_ - im_ * o.im_;
    Rational im = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(re);
    im_ = std::move(im);
    return *this;
  }
  Gaussian& operator/=(const Gaussian& o) { return *this *= o.inverse(); }

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::string to_string(const Gaussian& z) {
  if (z.is_real()) return to_string(z.re());
  return to_string(z.re()) + (sgn(z.im()) < 0 ? "-" : "+") +
         to_string(abs(z.im())) + "i";
}

/// Scalar traits shared by the rational and Gaussian function models.
inline Rational conj(const Rational& q) { return q; }
inline Gaussian conj(const Gaussian& z) { return z.conj(); }
inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Gaussian& z) { return z.is_zero(); }

}  // namespace reflexlab
