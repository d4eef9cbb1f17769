#pragma once

#include "twosphere/geometry.hpp"

namespace twosphere {

// Closed-form integrals over a flat triangle T for an observation point x:
//   I0 = int_T 1/|x-y|,  G = int_T (x-y)/|x-y|^3,  J = int_T (y-x)/|x-y|.
// When x lies in the plane of T the normal part of G is the principal value 0.
struct StaticPotentials {
  double I0 = 0.0;
  Vec3 G = Vec3::Zero();
  Vec3 J = Vec3::Zero();
};

StaticPotentials static_potentials(const Panel& T, const Vec3& x, bool with_J = true);

}  // namespace twosphere
