#pragma once

#include <utility>
#include <vector>

#include <Eigen/Core>

#include "twosphere/config.hpp"

namespace twosphere {

// Triangle rule in barycentric coordinates; weights sum to 1 (multiply by area).
struct TriRule {
  std::vector<Vec3> bary;
  std::vector<double> w;
  std::size_t size() const { return w.size(); }
};

// Gauss-Legendre nodes/weights on [0, 1].
std::vector<std::pair<double, double>> gauss_legendre01(int n);

// Symmetric rules with 1, 3 or 7 points (degrees 1, 2, 5).
const TriRule& symmetric_rule(int npoints);

// Collapsed (Duffy) product of order-q Gauss rules; exact to degree 2q-1.
TriRule gauss_product_rule(int q);

// Composite rule on the 4^levels congruent sub-triangles.
TriRule subdivide(const TriRule& base, int levels);

template <typename F>
auto integrate(const TriRule& rule, const Vec3& a, const Vec3& b, const Vec3& c, double area, F&& f) {
  using R = decltype(f(Vec3()));
  R acc = f(rule.bary[0].x() * a + rule.bary[0].y() * b + rule.bary[0].z() * c) * rule.w[0];
  for (std::size_t q = 1; q < rule.size(); ++q)
    acc += f(rule.bary[q].x() * a + rule.bary[q].y() * b + rule.bary[q].z() * c) * rule.w[q];
  return acc * area;
}

}  // namespace twosphere
