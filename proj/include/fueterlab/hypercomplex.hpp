#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <concepts>
#include <ostream>

#include <Eigen/Core>

#include "fueterlab/errors.hpp"

namespace fueterlab {

using Complex = std::complex<double>;
using Point = Eigen::Vector4d;
using ComplexVec4 = Eigen::Matrix<Complex, 4, 1>;

// q = c0 + c1 i + c2 j + c3 k with coefficients in Scalar. For Scalar = Complex
// the complex unit commutes with i, j, k.
template <typename Scalar_>
class Quaternion {
 public:
  using Scalar = Scalar_;
  using Coefficients = Eigen::Matrix<Scalar, 4, 1>;

  Quaternion() : c_(Coefficients::Zero()) {}
  Quaternion(const Scalar& w, const Scalar& x, const Scalar& y, const Scalar& z) : c_(w, x, y, z) {}
  explicit Quaternion(const Coefficients& c) : c_(c) {}

  template <typename Other>
    requires(!std::same_as<Other, Scalar> && std::convertible_to<Other, Scalar>)
  Quaternion(const Quaternion<Other>& other) : c_(other.coeffs().template cast<Scalar>()) {}

  static Quaternion real(const Scalar& s) { return Quaternion(s, Scalar(0), Scalar(0), Scalar(0)); }
  static Quaternion Zero() { return Quaternion(); }
  static Quaternion Identity() { return real(Scalar(1)); }
  static Quaternion unit(int k) {
    Quaternion q;
    q.c_[k] = Scalar(1);
    return q;
  }

  const Coefficients& coeffs() const { return c_; }
  Coefficients& coeffs() { return c_; }
  const Scalar& operator[](int k) const { return c_[k]; }
  Scalar& operator[](int k) { return c_[k]; }

  const Scalar& w() const { return c_[0]; }
  Quaternion vec() const { return Quaternion(Scalar(0), c_[1], c_[2], c_[3]); }

  Quaternion conjugate() const { return Quaternion(c_[0], -c_[1], -c_[2], -c_[3]); }

  // q * conj(q), always a scalar (complex for complex quaternions).
  Scalar normScalar() const { return (c_.array() * c_.array()).sum(); }

  // sqrt of sum |c_k|^2; the size used for residuals and reports.
  double magnitude() const { return c_.norm(); }

  Quaternion inverse() const;

  Quaternion& operator+=(const Quaternion& o) { c_ += o.c_; return *this; }
  Quaternion& operator-=(const Quaternion& o) { c_ -= o.c_; return *this; }
  Quaternion& operator*=(const Quaternion& o) { return *this = *this * o; }
  Quaternion& operator*=(const Scalar& s) { c_ *= s; return *this; }
  Quaternion& operator/=(const Scalar& s) { c_ /= s; return *this; }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator-(const Quaternion& a) { return Quaternion(Coefficients(-a.c_)); }
  friend Quaternion operator*(const Scalar& s, const Quaternion& q) { return Quaternion(Coefficients(s * q.c_)); }
  friend Quaternion operator*(const Quaternion& q, const Scalar& s) { return Quaternion(Coefficients(q.c_ * s)); }
  friend Quaternion operator/(const Quaternion& q, const Scalar& s) { return Quaternion(Coefficients(q.c_ / s)); }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    const auto& p = a.c_;
    const auto& q = b.c_;
    return Quaternion(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
                      p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
                      p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
                      p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
  }

  friend bool operator==(const Quaternion& a, const Quaternion& b) { return a.c_ == b.c_; }

  friend std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
    return os << "(" << q.c_[0] << ", " << q.c_[1] << ", " << q.c_[2] << ", " << q.c_[3] << ")";
  }

 private:
  Coefficients c_;
};

using Quat = Quaternion<double>;
using CQuat = Quaternion<Complex>;

// real times complex quaternion without promoting the real factor
inline CQuat operator*(const Quat& a, const CQuat& b) {
  const auto& p = a.coeffs();
  const auto& q = b.coeffs();
  return CQuat(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
               p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
               p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
               p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
}
inline CQuat operator*(const CQuat& a, const Quat& b) {
  const auto& p = a.coeffs();
  const auto& q = b.coeffs();
  return CQuat(p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
               p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
               p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
               p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]);
}

template <typename Scalar>
Quaternion<Scalar> Quaternion<Scalar>::inverse() const {
  const Scalar n = normScalar();
  const double size = c_.squaredNorm();
  if (size == 0.0 || std::abs(n) <= 1e-14 * size) throw ZeroDivisor("q * conj(q) vanishes");
  return conjugate() / n;
}

// Real and imaginary quaternion parts of q = q1 + i q2.
inline Quat q1(const CQuat& q) { return Quat(q.coeffs().real()); }
inline Quat q2(const CQuat& q) { return Quat(q.coeffs().imag()); }
inline CQuat fromParts(const Quat& a, const Quat& b) {
  return CQuat(ComplexVec4(a.coeffs().cast<Complex>() + Complex(0, 1) * b.coeffs().cast<Complex>()));
}

template <typename Scalar>
Quaternion<Scalar> conj(const Quaternion<Scalar>& q) { return q.conjugate(); }

template <typename Scalar>
Quaternion<Scalar> qinverse(const Quaternion<Scalar>& q) { return q.inverse(); }

template <typename Scalar>
Quaternion<Scalar> qmul(const Quaternion<Scalar>& a, const Quaternion<Scalar>& b) { return a * b; }

// <q, x> = (conj(q) x + conj(x) q) / 2, bilinear over the scalars.
template <typename Scalar>
Scalar scalarProduct(const Quaternion<Scalar>& q, const Quaternion<Scalar>& x) {
  return ((q.conjugate() * x + x.conjugate() * q) / Scalar(2)).w();
}

class StructuralSet {
 public:
  static StructuralSet standard();

  const Quat& operator[](int k) const { return psi_[k]; }
  int sign() const { return sgn_; }
  const Eigen::Matrix4d& coordinateMatrix() const { return m_; }

  // {conj(psi_0), ..., conj(psi_3)}
  StructuralSet conjugate() const;

  template <typename Scalar>
  Eigen::Matrix<Scalar, 4, 1> coordinates(const Quaternion<Scalar>& x) const {
    return m_.transpose().cast<Scalar>() * x.coeffs();
  }

  template <typename Derived>
  Quaternion<typename Derived::Scalar> synthesize(const Eigen::MatrixBase<Derived>& c) const {
    using S = typename Derived::Scalar;
    return Quaternion<S>(Eigen::Matrix<S, 4, 1>(m_.cast<S>() * c));
  }

  friend StructuralSet validateStructuralSet(const std::array<Quat, 4>& candidate);

 private:
  std::array<Quat, 4> psi_;
  Eigen::Matrix4d m_;
  int sgn_ = 1;
};

StructuralSet validateStructuralSet(const std::array<Quat, 4>& candidate);

inline ComplexVec4 psiCoords(const StructuralSet& psi, const CQuat& x) { return psi.coordinates(x); }
inline CQuat psiSynth(const StructuralSet& psi, const ComplexVec4& c) { return psi.synthesize(c); }

// <q, x>_psi = sum_k q_k x_k over psi-coordinates.
inline Complex psiScalarProduct(const StructuralSet& psi, const CQuat& q, const CQuat& x) {
  return (psi.coordinates(q).array() * psi.coordinates(x).array()).sum();
}

// Point with coordinates x_k in the frame psi: sum_k x_k psi_k.
inline Quat psiPoint(const StructuralSet& psi, const Point& x) { return psi.synthesize(x); }

}  // namespace fueterlab
