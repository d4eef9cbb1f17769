#include "twosphere/kernels.hpp"

#include <cmath>
#include <numbers>

#include "twosphere/error.hpp"

namespace twosphere {
namespace {
constexpr double kPi = std::numbers::pi;
const cdouble kI(0.0, 1.0);
}  // namespace

KernelOrder KernelOrder::full(double k) {
  if (!(k >= 0.0)) throw Error(ErrorCode::InvalidValue, "FullK requires k >= 0");
  return KernelOrder(Kind::FullK, k);
}

KernelOrder KernelOrder::taylor(int j) {
  switch (j) {
    case 0: return static0();
    case 1: return linear1();
    case 2: return quadratic2();
    case 3: return cubic3();
    case 4: return quartic4();
    default: throw Error(ErrorCode::UnsupportedCombination, "Taylor order must be 0..4");
  }
}

cdouble gamma_full_minus_static(double k, double R) {
  // exp(i t) - 1 = 2i sin(t/2) exp(i t/2)
  const double t = k * R;
  if (R == 0.0) return -kI * k / (4.0 * kPi);
  const cdouble em1 = 2.0 * kI * std::sin(0.5 * t) * std::exp(0.5 * kI * t);
  return -em1 / (4.0 * kPi * R);
}

cdouble dgamma_full_minus_static(double k, double R) {
  // f(R) = -(e^{ikR} - 1)/(4 pi R);  f' = -[ik e^{ikR} R - (e^{ikR} - 1)]/(4 pi R^2)
  // numerator = (e^{ikR} - 1)(ikR - 1) + ikR, expanded as a series for small kR.
  const double t = k * R;
  if (std::abs(t) < 1e-3) {
    // f' = k^2 (1/2 + i t/3 - t^2/8 - i t^3/30 + ...)/(4 pi)
    const cdouble s = 0.5 + kI * t / 3.0 - t * t / 8.0 - kI * t * t * t / 30.0;
    return (k * k) * s / (4.0 * kPi);
  }
  const cdouble em1 = 2.0 * kI * std::sin(0.5 * t) * std::exp(0.5 * kI * t);
  const cdouble num = em1 * (kI * t - 1.0) + kI * t;
  return -num / (4.0 * kPi * R * R);
}

cdouble gamma(KernelOrder order, const Vec3& x) {
  const double R = x.norm();
  if (R == 0.0) throw Error(ErrorCode::ZeroArgument, "kernel evaluated at |x| = 0");
  switch (order.kind()) {
    case KernelOrder::Kind::Static0: return -1.0 / (4.0 * kPi * R);
    case KernelOrder::Kind::Linear1: return -kI / (4.0 * kPi);
    case KernelOrder::Kind::Quadratic2: return R / (8.0 * kPi);
    case KernelOrder::Kind::Cubic3: return kI * R * R / (24.0 * kPi);
    case KernelOrder::Kind::Quartic4: return -R * R * R / (96.0 * kPi);
    case KernelOrder::Kind::FullK:
      return -std::exp(kI * (order.k() * R)) / (4.0 * kPi * R);
  }
  return 0.0;
}

CVec3 grad_gamma(KernelOrder order, const Vec3& x) {
  const double R = x.norm();
  if (R == 0.0) throw Error(ErrorCode::ZeroArgument, "kernel gradient evaluated at |x| = 0");
  const CVec3 xc = x.cast<cdouble>();
  switch (order.kind()) {
    case KernelOrder::Kind::Static0: return xc / (4.0 * kPi * R * R * R);
    case KernelOrder::Kind::Linear1: return CVec3::Zero();
    case KernelOrder::Kind::Quadratic2: return xc / (8.0 * kPi * R);
    case KernelOrder::Kind::Cubic3: return kI * xc / (12.0 * kPi);
    case KernelOrder::Kind::Quartic4: return -R * xc / (32.0 * kPi);
    case KernelOrder::Kind::FullK: {
      const double k = order.k();
      const cdouble e = std::exp(kI * (k * R));
      // d/dR [-e^{ikR}/(4 pi R)] = -e^{ikR}(ikR - 1)/(4 pi R^2)
      const cdouble dR = -e * (kI * (k * R) - 1.0) / (4.0 * kPi * R * R);
      return dR * xc / R;
    }
  }
  return CVec3::Zero();
}

}  // namespace twosphere
