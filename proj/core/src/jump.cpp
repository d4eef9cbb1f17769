#include <algorithm>

#include "twosphere/operators.hpp"
#include "twosphere/parallel.hpp"
#include "moments.hpp"

namespace twosphere {
namespace {

using namespace detail;

int point_proximity(const Vec3& x, const Panel& P) {
  const double d = (x - P.centroid).norm();
  if (d < 2.0 * P.diameter) return 2;
  if (d < 6.0 * P.diameter) return 1;
  return 0;
}

// nu_i . grad S0[sigma](x) or nu_i x curl A0[phi](x); on-surface when prox is
// taken panel-to-panel (principal value).
Vec3 trace_at(const BoundaryModel& m, const Eigen::VectorXd& density, JumpKind kind, const Vec3& x,
              const Panel& Pi, bool on_surface) {
  const auto& mesh = m.mesh();
  Vec3 out = Vec3::Zero();
  for (int j = 0; j < static_cast<int>(mesh.panels.size()); ++j) {
    const Panel& Pj = mesh.panels[j];
    const int prox = on_surface ? proximity(Pi, Pj) : point_proximity(x, Pj);
    const auto mo = source_moments(m, StaticKernel{}, x, j, prox, false);
    if (kind == JumpKind::ScalarNormalDerivative) {
      out[0] += density[j] * Pi.normal.dot(mo.Gk);
    } else {
      for (int b = 0; b < 3; ++b) {
        const LocalBasis& lb = m.basis().local[j][b];
        out += (density[lb.edge] * lb.coeff) * Pi.normal.cross(mo.Gk.cross(x - Pj.v[b]));
      }
    }
  }
  return out;
}

}  // namespace

JumpReport verify_jump(const BoundaryModel& m, const Eigen::VectorXd& density, JumpKind kind, int sample_stride) {
  const auto& mesh = m.mesh();
  const double t1 = 1e-2 * mesh.radius, t2 = 1e-3 * mesh.radius;
  std::vector<int> samples;
  for (int i = 0; i < static_cast<int>(mesh.panels.size()); i += std::max(1, sample_stride)) samples.push_back(i);

  struct Row {
    double err = 0, ref = 0, mismatch = 0;
  };
  std::vector<Row> rows(samples.size());
  parallel_for(samples.size(), [&](std::size_t s) {
    const int i = samples[s];
    const Panel& Pi = mesh.panels[i];
    auto one_sided = [&](double sign) {
      const Vec3 v1 = trace_at(m, density, kind, Pi.centroid + sign * t1 * Pi.normal, Pi, false);
      const Vec3 v2 = trace_at(m, density, kind, Pi.centroid + sign * t2 * Pi.normal, Pi, false);
      return Vec3(v2 + (v2 - v1) * (t2 / (t1 - t2)));
    };
    const Vec3 plus = one_sided(1.0), minus = one_sided(-1.0);
    const Vec3 pv = trace_at(m, density, kind, Pi.centroid, Pi, true);
    Vec3 expected;
    if (kind == JumpKind::ScalarNormalDerivative) {
      expected = Vec3(density[i], 0.0, 0.0);
    } else {
      expected = -density_on_panel(mesh, m.basis(), density, i, Pi.centroid);
    }
    // Scalar: (+-1/2 + K*) sigma; vector: (-+1/2 + M) phi.
    const Vec3 half = 0.5 * expected;
    rows[s] = {(plus - minus - expected).norm(), expected.norm(),
               std::max((plus - (pv + half)).norm(), (minus - (pv - half)).norm())};
  });

  JumpReport rep{kind};
  for (const Row& r : rows) {
    rep.max_error = std::max(rep.max_error, r.err);
    rep.reference_norm = std::max(rep.reference_norm, r.ref);
    rep.max_operator_mismatch = std::max(rep.max_operator_mismatch, r.mismatch);
  }
  return rep;
}

}  // namespace twosphere
