#include "twosphere/oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "twosphere/error.hpp"
#include "twosphere/quadrature.hpp"

namespace twosphere {
namespace {

constexpr int kMinTerms = 10;
constexpr int kMaxTerms = 2000;

struct Bispherical {
  double mu, eta, rho;
};

Bispherical to_bispherical(double a, const Vec3& x) {
  const double rho = std::hypot(x.y(), x.z());
  const double d1 = std::hypot(x.x() + a, rho);
  const double d2 = std::hypot(x.x() - a, rho);
  return {std::log(d1 / d2), std::atan2(2.0 * a * rho, x.x() * x.x() + rho * rho - a * a), rho};
}

}  // namespace

double BisphericalSolution::potential(const Vec3& x) const {
  const Bispherical b = to_bispherical(a, x);
  const double w = std::sqrt(std::cosh(b.mu) - std::cos(b.eta));
  const double t = std::cos(b.eta), s = std::sin(b.eta);
  double u = p_axial * x.x() + p_transverse * x.dot(transverse_dir);

  if (p_axial != 0.0) {
    double acc = 0.0, Pm = 1.0, Pc = t;
    for (int n = 0; n < n_terms; ++n) {
      double P;
      if (n == 0) {
        P = 1.0;
      } else if (n == 1) {
        P = t;
      } else {
        P = ((2 * n - 1) * t * Pc - (n - 1) * Pm) / n;
        Pm = Pc;
        Pc = P;
      }
      acc += B[n] * std::sinh((n + 0.5) * b.mu) * P;
    }
    u += w * acc;
  }
  if (p_transverse != 0.0 && b.rho > 0.0) {
    const double cphi = x.dot(transverse_dir) / b.rho;
    double acc = 0.0, Pm = 1.0, Pc = t, dPm = 0.0, dPc = 1.0;
    for (int n = 1; n < n_terms; ++n) {
      if (n >= 2) {
        const double P = ((2 * n - 1) * t * Pc - (n - 1) * Pm) / n;
        const double dP = dPm + (2 * n - 1) * Pc;
        Pm = Pc;
        Pc = P;
        dPm = dPc;
        dPc = dP;
      }
      acc += A[n] * std::cosh((n + 0.5) * b.mu) * s * dPc;
    }
    u += w * acc * cphi;
  }
  return u;
}

Vec3 BisphericalSolution::gradient(const Vec3& x) const {
  const double c = r + 0.5 * epsilon;
  const double dist = std::min(std::abs((x - Vec3(c, 0, 0)).norm() - r), std::abs((x - Vec3(-c, 0, 0)).norm() - r));
  const double h = 1e-3 * std::max(std::min(r, dist), 1e-6 * r);
  auto central = [&](double step) {
    Vec3 g;
    for (int j = 0; j < 3; ++j) {
      Vec3 xp = x, xm = x;
      xp[j] += step;
      xm[j] -= step;
      g[j] = (potential(xp) - potential(xm)) / (2.0 * step);
    }
    return g;
  };
  const Vec3 g1 = central(h), g2 = central(0.5 * h);
  return (4.0 * g2 - g1) / 3.0;
}

double BisphericalSolution::sphere_potential(SphereId s) const {
  const double c = r + 0.5 * epsilon;
  const double x = s == SphereId::Two ? c + r : -(c + r);
  return potential(Vec3(x, 0.0, 0.0));
}

BisphericalSolution solve_bispherical(double r, double epsilon, const Vec3& p, std::optional<int> n_terms) {
  if (!(r > 0.0) || !(epsilon > 0.0)) throw Error(ErrorCode::NonPositive, "r and epsilon must be positive");
  if (n_terms && *n_terms < kMinTerms)
    throw Error(ErrorCode::InvalidValue, "n_terms must be at least " + std::to_string(kMinTerms));

  BisphericalSolution S;
  S.r = r;
  S.epsilon = epsilon;
  S.p = p;
  const double c = r + 0.5 * epsilon;
  S.mu0 = std::acosh(c / r);
  S.a = r * std::sinh(S.mu0);
  S.p_axial = p.x();
  const Vec3 pt(0.0, p.y(), p.z());
  S.p_transverse = pt.norm();
  if (S.p_transverse > 0.0) S.transverse_dir = pt / S.p_transverse;

  const int cap = n_terms ? *n_terms : kMaxTerms;
  const double a = S.a, mu0 = S.mu0;

  // Axial: zero flux fixes the sphere potential U.
  std::vector<double> g(static_cast<std::size_t>(std::max(cap, kMaxTerms)));
  double sg = 0.0, sng = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    g[n] = 2.0 / std::expm1((2.0 * n + 1.0) * mu0);
    sg += g[n];
    sng += (2.0 * n + 1.0) * g[n];
  }
  S.U = S.p_axial * a * sng / sg;
  S.B.resize(static_cast<std::size_t>(cap));
  S.A.assign(static_cast<std::size_t>(cap), 0.0);
  for (int n = 0; n < cap; ++n) {
    S.B[n] = std::numbers::sqrt2 * g[n] * (S.U - (2.0 * n + 1.0) * S.p_axial * a);
    if (n >= 1)
      S.A[n] = -2.0 * std::numbers::sqrt2 * a * S.p_transverse * std::exp(-(n + 0.5) * mu0) /
               std::cosh((n + 0.5) * mu0);
  }

  // Size of term n in the midpoint field and on the sphere surfaces (where
  // the series converges at half the rate of the midpoint).
  const double wmax = std::sqrt(std::cosh(mu0) + 1.0);
  auto midpoint_term = [&](int n) {
    return std::abs(S.B[n]) * (2.0 * n + 1.0) + std::abs(S.A[n]) * n * (n + 1.0);
  };
  auto surface_term = [&](int n) {
    return wmax * (std::abs(S.B[n]) * std::sinh((n + 0.5) * mu0) +
                   std::abs(S.A[n]) * std::cosh((n + 0.5) * mu0) * (n + 1.0));
  };
  const double scale = std::abs(S.p_axial) * a + S.p_transverse * a;
  double total = 0.0;
  int N = cap;
  for (int n = 0; n < cap; ++n) {
    total += midpoint_term(n);
    if (!n_terms && n + 1 >= kMinTerms && midpoint_term(n) <= 1e-12 * total && surface_term(n) <= 1e-14 * scale) {
      N = n + 1;
      break;
    }
  }
  const double last = midpoint_term(N - 1), prev = midpoint_term(N - 2);
  const double q = prev > 0.0 ? last / prev : 0.0;
  S.tail_estimate = total > 0.0 ? (q < 1.0 ? last * q / (1.0 - q) : std::numeric_limits<double>::infinity()) / total : 0.0;
  if (S.tail_estimate > 1e-8)
    throw Error(ErrorCode::TruncationInsufficient,
                "series tail " + std::to_string(S.tail_estimate) + " after " + std::to_string(N) + " terms");
  S.n_terms = N;
  S.B.resize(static_cast<std::size_t>(N));
  S.A.resize(static_cast<std::size_t>(N));
  return S;
}

double boundary_residual(const BisphericalSolution& s, int n_lat, int n_lon) {
  double worst = 0.0;
  for (SphereId id : {SphereId::One, SphereId::Two}) {
    const double C = s.sphere_potential(id);
    const double cx = (id == SphereId::Two ? 1.0 : -1.0) * (s.r + 0.5 * s.epsilon);
    for (int i = 0; i <= n_lat; ++i) {
      const double th = std::numbers::pi * i / n_lat;
      for (int j = 0; j < n_lon; ++j) {
        const double ph = 2.0 * std::numbers::pi * j / n_lon;
        const Vec3 x(cx + s.r * std::cos(th), s.r * std::sin(th) * std::cos(ph), s.r * std::sin(th) * std::sin(ph));
        worst = std::max(worst, std::abs(s.potential(x) - C));
      }
    }
  }
  return worst;
}

double sphere_flux(const BisphericalSolution& s, SphereId sphere, int n_lat, int n_lon) {
  // Flux through a concentric sphere of radius r + epsilon/4, which encloses
  // only this sphere; the exterior field is harmonic in between.
  const double R = s.r + 0.25 * s.epsilon;
  const Vec3 c((sphere == SphereId::Two ? 1.0 : -1.0) * (s.r + 0.5 * s.epsilon), 0.0, 0.0);
  const auto gl = gauss_legendre01(n_lat);
  double flux = 0.0;
  for (const auto& [node, weight] : gl) {
    const double ct = 2.0 * node - 1.0, st = std::sqrt(1.0 - ct * ct);
    for (int j = 0; j < n_lon; ++j) {
      const double ph = 2.0 * std::numbers::pi * (j + 0.5) / n_lon;
      const Vec3 nu(ct, st * std::cos(ph), st * std::sin(ph));
      const double w = 2.0 * weight * (2.0 * std::numbers::pi / n_lon) * R * R;
      flux += w * s.gradient(c + R * nu).dot(nu);
    }
  }
  return flux;
}

}  // namespace twosphere
