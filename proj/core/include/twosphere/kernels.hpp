#pragma once

#include <complex>

#include <Eigen/Core>

#include "twosphere/config.hpp"

namespace twosphere {

using cdouble = std::complex<double>;
using CVec3 = Eigen::Matrix<cdouble, 3, 1>;

// Order of the low-frequency expansion of the Helmholtz kernel
//   Gamma^k(x) = -exp(ik|x|)/(4 pi |x|) = sum_j Gamma_j(x) k^j.
class KernelOrder {
 public:
  enum class Kind { Static0, Linear1, Quadratic2, Cubic3, Quartic4, FullK };

  static KernelOrder static0() { return KernelOrder(Kind::Static0, 0.0); }
  static KernelOrder linear1() { return KernelOrder(Kind::Linear1, 0.0); }
  static KernelOrder quadratic2() { return KernelOrder(Kind::Quadratic2, 0.0); }
  static KernelOrder cubic3() { return KernelOrder(Kind::Cubic3, 0.0); }
  static KernelOrder quartic4() { return KernelOrder(Kind::Quartic4, 0.0); }
  static KernelOrder full(double k);
  static KernelOrder taylor(int j);

  Kind kind() const { return kind_; }
  double k() const { return k_; }
  bool operator==(const KernelOrder&) const = default;

 private:
  KernelOrder(Kind kind, double k) : kind_(kind), k_(k) {}
  Kind kind_;
  double k_;
};

// Cross product without the conjugation Eigen applies to complex operands.
template <typename A, typename B>
auto cross(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using S = typename Eigen::ScalarBinaryOpTraits<typename A::Scalar, typename B::Scalar>::ReturnType;
  return Eigen::Matrix<S, 3, 1>(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

cdouble gamma(KernelOrder order, const Vec3& x);
CVec3 grad_gamma(KernelOrder order, const Vec3& x);

// Smooth part Gamma^k - Gamma_0 = -(exp(ikR) - 1)/(4 pi R), evaluated without
// cancellation; finite at R = 0 (value -ik/(4 pi)).
cdouble gamma_full_minus_static(double k, double R);
// d/dR of the same function.
cdouble dgamma_full_minus_static(double k, double R);

}  // namespace twosphere
