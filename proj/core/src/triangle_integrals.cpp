#include "twosphere/triangle_integrals.hpp"

#include <cmath>

namespace twosphere {

StaticPotentials static_potentials(const Panel& T, const Vec3& x, bool with_J) {
  // Orientation taken from the vertex order so the edge normals point outward
  // regardless of the stored panel normal.
  Vec3 n = (T.v[1] - T.v[0]).cross(T.v[2] - T.v[0]);
  n /= n.norm();
  const double tiny = 1e-13 * T.diameter;

  double d = n.dot(x - T.v[0]);
  if (std::abs(d) < tiny) d = 0.0;
  const double ad = std::abs(d);
  const Vec3 rho = x - d * n;

  StaticPotentials out;
  double beta_sum = 0.0;
  Vec3 gt = Vec3::Zero();
  Vec3 jt = Vec3::Zero();
  for (int i = 0; i < 3; ++i) {
    const Vec3& pm = T.v[i];
    const Vec3& pp = T.v[(i + 1) % 3];
    Vec3 l = pp - pm;
    l /= l.norm();
    const Vec3 m = l.cross(n);
    const double lp = (pp - rho).dot(l);
    const double lm = (pm - rho).dot(l);
    const double t0 = (pm - rho).dot(m);
    const double R02 = t0 * t0 + d * d;
    const double R0 = std::sqrt(R02);
    const double Rp = std::sqrt(lp * lp + R02);
    const double Rm = std::sqrt(lm * lm + R02);

    double f = 0.0, beta = 0.0;
    if (R0 > tiny) {
      f = std::asinh(lp / R0) - std::asinh(lm / R0);
      beta = std::atan(t0 * lp / (R02 + ad * Rp)) - std::atan(t0 * lm / (R02 + ad * Rm));
    } else if (lm > 0.0 && lp > 0.0) {
      f = std::log(lp / lm);
    } else if (lm < 0.0 && lp < 0.0) {
      f = std::log(lm / lp);
    }
    out.I0 += t0 * f;
    beta_sum += beta;
    gt += f * m;
    if (with_J) jt += (0.5 * (R02 * f + lp * Rp - lm * Rm)) * m;
  }
  out.I0 -= ad * beta_sum;
  const double sgn = d > 0.0 ? 1.0 : (d < 0.0 ? -1.0 : 0.0);
  out.G = gt + (sgn * beta_sum) * n;
  if (with_J) out.J = jt - d * out.I0 * n;
  return out;
}

}  // namespace twosphere
