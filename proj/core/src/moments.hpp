#pragma once

// Kernel moments over one source panel, shared by matrix assembly and point
// evaluation. Not part of the installed interface.

#include <numbers>

#include "twosphere/kernels.hpp"
#include "twosphere/operators.hpp"
#include "twosphere/triangle_integrals.hpp"

namespace twosphere::detail {

constexpr double kPi = std::numbers::pi;
constexpr double k4Pi = 4.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Kernels as functions of R: K(R) and g(R) with grad_x K = g(R) (x - y).

struct StaticKernel {
  using T = double;
  static constexpr bool has_static = true;
  static constexpr bool has_smooth = false;
};

// Taylor coefficient j with the factor i^(j odd) removed: the matrix built
// from it is stored in the imaginary part when `imaginary` is set.
struct PolyKernel {
  using T = double;
  static constexpr bool has_static = false;
  static constexpr bool has_smooth = true;
  int j;
  bool imaginary() const { return j == 1 || j == 3; }
  double K(double R) const {
    switch (j) {
      case 1: return -1.0 / k4Pi;
      case 2: return R / (8.0 * kPi);
      case 3: return R * R / (24.0 * kPi);
      case 4: return -R * R * R / (96.0 * kPi);
    }
    return 0.0;
  }
  double g(double R) const {
    switch (j) {
      case 2: return R > 0.0 ? 1.0 / (8.0 * kPi * R) : 0.0;
      case 3: return 1.0 / (12.0 * kPi);
      case 4: return -R / (32.0 * kPi);
    }
    return 0.0;
  }
};

// Full Helmholtz kernel: analytic static part plus the smooth remainder.
struct FullKernel {
  using T = cdouble;
  static constexpr bool has_static = true;
  static constexpr bool has_smooth = true;
  double k;
  cdouble K(double R) const { return gamma_full_minus_static(k, R); }
  cdouble g(double R) const { return R > 0.0 ? dgamma_full_minus_static(k, R) / R : cdouble(0.0); }
};

template <typename T>
using V3 = Eigen::Matrix<T, 3, 1>;

template <typename T>
struct Moments {
  T I{};                       // int K
  V3<T> Y = V3<T>::Zero();     // int K y
  V3<T> Gk = V3<T>::Zero();    // int grad_x K
};

enum Rule { kCoarse = 0, kMedium = 1, kNearTest = 2, kNearSource = 3, kSelfSource = 4 };

template <typename Kern>
Moments<typename Kern::T> source_moments(const BoundaryModel& m, const Kern& kern, const Vec3& x,
                                         int j, int prox, bool want_value) {
  using T = typename Kern::T;
  Moments<T> mo;
  const Panel& P = m.mesh().panels[j];
  if constexpr (Kern::has_static) {
    if (prox == 2) {
      const StaticPotentials sp = static_potentials(P, x, want_value);
      mo.I = T(-sp.I0 / k4Pi);
      mo.Y = (-(sp.J + x * sp.I0) / k4Pi).template cast<T>();
      mo.Gk = (sp.G / k4Pi).template cast<T>();
    } else {
      for (const auto& q : m.points(j, prox == 1 ? kMedium : kCoarse)) {
        const Vec3 r = x - q.x;
        const double R = r.norm();
        const double K = -q.w / (k4Pi * R);
        mo.I += T(K);
        if (want_value) mo.Y += (K * q.x).template cast<T>();
        mo.Gk += (q.w / (k4Pi * R * R * R) * r).template cast<T>();
      }
    }
  }
  if constexpr (Kern::has_smooth) {
    // the smooth kernels have a cone point at x, so collocation at the own
    // centroid gets a finer rule
    const bool self = prox == 2 && (x - P.centroid).squaredNorm() < 1e-24 * P.diameter * P.diameter;
    const int rule = self ? kSelfSource : (prox == 2 ? kNearSource : (prox == 1 ? kMedium : kCoarse));
    for (const auto& q : m.points(j, rule)) {
      const Vec3 r = x - q.x;
      const double R = r.norm();
      const auto K = kern.K(R) * q.w;
      mo.I += K;
      if (want_value) mo.Y += K * q.x.template cast<T>();
      mo.Gk += (kern.g(R) * q.w) * r.template cast<T>();
    }
  }
  return mo;
}


}  // namespace twosphere::detail
