#include "twosphere/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "twosphere/error.hpp"

namespace twosphere {

std::vector<std::pair<double, double>> gauss_legendre01(int n) {
  if (n < 1) throw Error(ErrorCode::InvalidValue, "Gauss order must be >= 1");
  std::vector<std::pair<double, double>> out(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    out[n - 1 - i] = {0.5 * (x + 1.0), 0.5 * w};
  }
  return out;
}

const TriRule& symmetric_rule(int npoints) {
  static const TriRule one{{Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3)}, {1.0}};
  static const TriRule three{
      {Vec3(2.0 / 3, 1.0 / 6, 1.0 / 6), Vec3(1.0 / 6, 2.0 / 3, 1.0 / 6), Vec3(1.0 / 6, 1.0 / 6, 2.0 / 3)},
      {1.0 / 3, 1.0 / 3, 1.0 / 3}};
  static const TriRule seven = [] {
    TriRule r;
    const double a1 = 0.059715871789769820, b1 = 0.470142064105115090, w1 = 0.132394152788506136;
    const double a2 = 0.797426985353087322, b2 = 0.101286507323456339, w2 = 0.125939180544827153;
    r.bary = {Vec3(1.0 / 3, 1.0 / 3, 1.0 / 3), Vec3(a1, b1, b1), Vec3(b1, a1, b1), Vec3(b1, b1, a1),
              Vec3(a2, b2, b2), Vec3(b2, a2, b2), Vec3(b2, b2, a2)};
    r.w = {0.225, w1, w1, w1, w2, w2, w2};
    return r;
  }();
  switch (npoints) {
    case 1: return one;
    case 3: return three;
    case 7: return seven;
    default: throw Error(ErrorCode::InvalidValue, "symmetric rule must have 1, 3 or 7 points");
  }
}

TriRule gauss_product_rule(int q) {
  const auto g = gauss_legendre01(q);
  TriRule r;
  for (const auto& [u, wu] : g)
    for (const auto& [v, wv] : g) {
      r.bary.emplace_back(u, (1.0 - u) * v, (1.0 - u) * (1.0 - v));
      r.w.push_back(2.0 * wu * wv * (1.0 - u));
    }
  return r;
}

TriRule subdivide(const TriRule& base, int levels) {
  std::vector<std::array<Vec3, 3>> tris{{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)}};
  for (int l = 0; l < levels; ++l) {
    std::vector<std::array<Vec3, 3>> next;
    for (const auto& t : tris) {
      const Vec3 m01 = 0.5 * (t[0] + t[1]), m12 = 0.5 * (t[1] + t[2]), m20 = 0.5 * (t[2] + t[0]);
      next.push_back({t[0], m01, m20});
      next.push_back({m01, t[1], m12});
      next.push_back({m20, m12, t[2]});
      next.push_back({m01, m12, m20});
    }
    tris = std::move(next);
  }
  TriRule r;
  const double scale = 1.0 / static_cast<double>(tris.size());
  for (const auto& t : tris)
    for (std::size_t q = 0; q < base.size(); ++q) {
      const Vec3& b = base.bary[q];
      r.bary.push_back(b.x() * t[0] + b.y() * t[1] + b.z() * t[2]);
      r.w.push_back(base.w[q] * scale);
    }
  return r;
}

}  // namespace twosphere
