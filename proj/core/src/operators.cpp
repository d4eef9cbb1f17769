#include "twosphere/operators.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "twosphere/error.hpp"
#include "twosphere/parallel.hpp"
#include "twosphere/triangle_integrals.hpp"
#include "moments.hpp"

namespace twosphere {
namespace {

using namespace detail;

template <typename T>
Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic> zeros(Eigen::Index r, Eigen::Index c) {
  return Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>::Zero(r, c);
}

// The potential of a near source panel is smooth over the test panel unless
// the two touch or face each other across the gap.
bool needs_fine_test(const Panel& a, const Panel& b) {
  if (a.sphere != b.sphere) return true;
  for (int u : a.vid)
    for (int w : b.vid)
      if (u == w) return true;
  return false;
}

// Galerkin assembly over test panels grouped by colour: panels of one colour
// share no edge, so their rows are disjoint and the loop is write-safe.
// Local(L, x, w, mo, Pi, Pj) accumulates a 3 x Ncol local block.
template <typename Kern, int Ncol, typename Local>
Eigen::Matrix<typename Kern::T, Eigen::Dynamic, Eigen::Dynamic> galerkin_assemble(
    const BoundaryModel& m, const Kern& kern, bool want_value, Local&& local, bool edge_columns) {
  using T = typename Kern::T;
  const auto& mesh = m.mesh();
  const auto& basis = m.basis();
  const Eigen::Index ncols = edge_columns ? static_cast<Eigen::Index>(m.edges())
                                          : static_cast<Eigen::Index>(m.panels());
  auto A = zeros<T>(static_cast<Eigen::Index>(m.edges()), ncols);
  for (const auto& color : m.colors()) {
    parallel_for(color.size(), [&](std::size_t ci) {
      const int i = color[ci];
      const Panel& Pi = mesh.panels[i];
      for (int j = 0; j < static_cast<int>(mesh.panels.size()); ++j) {
        const Panel& Pj = mesh.panels[j];
        const int prox = proximity(Pi, Pj);
        Eigen::Matrix<T, 3, Ncol> L = Eigen::Matrix<T, 3, Ncol>::Zero();
        const int rule = prox == 2 ? (needs_fine_test(Pi, Pj) ? kNearTest : kMedium)
                                   : (prox == 1 ? kMedium : kCoarse);
        for (const auto& q : m.points(i, rule)) {
          const auto mo = source_moments(m, kern, q.x, j, prox, want_value);
          local(L, q.x, q.w, mo, Pi, Pj);
        }
        for (int a = 0; a < 3; ++a) {
          const LocalBasis& ta = basis.local[i][a];
          if constexpr (Ncol == 3) {
            for (int b = 0; b < 3; ++b) {
              const LocalBasis& sb = basis.local[j][b];
              A(ta.edge, sb.edge) += (ta.coeff * sb.coeff) * L(a, b);
            }
          } else {
            A(ta.edge, j) += ta.coeff * L(a, 0);
          }
        }
      }
    });
  }
  return A;
}

template <typename Kern>
auto galerkin_nu_cross_value(const BoundaryModel& m, const Kern& kern) {
  using T = typename Kern::T;
  return galerkin_assemble<Kern, 3>(
      m, kern, true,
      [](Eigen::Matrix<T, 3, 3>& L, const Vec3& x, double w, const Moments<T>& mo, const Panel& Pi,
         const Panel& Pj) {
        const V3<T> nu = Pi.normal.template cast<T>();
        for (int b = 0; b < 3; ++b) {
          const V3<T> U = mo.Y - Pj.v[b].template cast<T>() * mo.I;
          const V3<T> nxU = cross(nu, U);
          for (int a = 0; a < 3; ++a) L(a, b) += w * (x - Pi.v[a]).template cast<T>().dot(nxU);
        }
      },
      true);
}

template <typename Kern>
auto galerkin_nu_cross_curl(const BoundaryModel& m, const Kern& kern) {
  using T = typename Kern::T;
  return galerkin_assemble<Kern, 3>(
      m, kern, false,
      [](Eigen::Matrix<T, 3, 3>& L, const Vec3& x, double w, const Moments<T>& mo, const Panel& Pi,
         const Panel& Pj) {
        const V3<T> nu = Pi.normal.template cast<T>();
        for (int b = 0; b < 3; ++b) {
          const V3<T> C = cross(mo.Gk, (x - Pj.v[b]).template cast<T>());
          const V3<T> nxC = cross(nu, C);
          for (int a = 0; a < 3; ++a) L(a, b) += w * (x - Pi.v[a]).template cast<T>().dot(nxC);
        }
      },
      true);
}

template <typename Kern>
auto galerkin_nu_cross_grad(const BoundaryModel& m, const Kern& kern) {
  using T = typename Kern::T;
  return galerkin_assemble<Kern, 1>(
      m, kern, false,
      [](Eigen::Matrix<T, 3, 1>& L, const Vec3& x, double w, const Moments<T>& mo, const Panel& Pi,
         const Panel&) {
        const V3<T> nxG = cross(Pi.normal.template cast<T>(), mo.Gk);
        for (int a = 0; a < 3; ++a) L(a, 0) += w * (x - Pi.v[a]).template cast<T>().dot(nxG);
      },
      false);
}

// Collocation at panel centroids; parallel over target rows.
template <typename Kern, typename Local>
Eigen::Matrix<typename Kern::T, Eigen::Dynamic, Eigen::Dynamic> collocate(
    const BoundaryModel& m, const Kern& kern, Eigen::Index rows_per_panel, Eigen::Index ncols,
    bool want_value, Local&& local) {
  using T = typename Kern::T;
  const auto& mesh = m.mesh();
  auto A = zeros<T>(rows_per_panel * static_cast<Eigen::Index>(m.panels()), ncols);
  parallel_for(mesh.panels.size(), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const Panel& Pi = mesh.panels[i];
    for (int j = 0; j < static_cast<int>(mesh.panels.size()); ++j) {
      const Panel& Pj = mesh.panels[j];
      const int prox = proximity(Pi, Pj);
      const auto mo = source_moments(m, kern, Pi.centroid, j, prox, want_value);
      local(A, i, j, mo, Pi, Pj);
    }
  });
  return A;
}

template <typename Kern>
auto collocate_scalar(const BoundaryModel& m, const Kern& kern, bool normal_derivative) {
  using T = typename Kern::T;
  using M = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  return collocate(m, kern, 1, static_cast<Eigen::Index>(m.panels()), !normal_derivative,
                   [normal_derivative](M& A, int i, int j, const Moments<T>& mo, const Panel& Pi,
                                       const Panel&) {
                     A(i, j) = normal_derivative ? Pi.normal.template cast<T>().dot(mo.Gk) : mo.I;
                   });
}

template <typename Kern>
auto collocate_vector_potential(const BoundaryModel& m, const Kern& kern, VectorPotentialOutput out) {
  using T = typename Kern::T;
  using M = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
  const bool value = out == VectorPotentialOutput::Value || out == VectorPotentialOutput::NuDotValue;
  const bool vec = out == VectorPotentialOutput::Value || out == VectorPotentialOutput::Curl;
  const auto& basis = m.basis();
  return collocate(m, kern, vec ? 3 : 1, static_cast<Eigen::Index>(m.edges()), value,
                   [&](M& A, int i, int j, const Moments<T>& mo, const Panel& Pi, const Panel& Pj) {
                     const V3<T> x = Pi.centroid.template cast<T>();
                     for (int b = 0; b < 3; ++b) {
                       const LocalBasis& sb = basis.local[j][b];
                       const V3<T> vb = Pj.v[b].template cast<T>();
                       const V3<T> f = value ? V3<T>(mo.Y - vb * mo.I) : V3<T>(cross(mo.Gk, (x - vb).template cast<T>()));
                       if (vec) {
                         for (int c = 0; c < 3; ++c) A(3 * i + c, sb.edge) += sb.coeff * f[c];
                       } else {
                         A(i, sb.edge) += sb.coeff * Pi.normal.template cast<T>().dot(f);
                       }
                     }
                   });
}

// Store a matrix computed from a real kernel into the right part.
void store_real_kernel(DiscreteOperator& op, Eigen::MatrixXd&& A, bool imaginary) {
  if (imaginary)
    op.im = std::move(A);
  else
    op.re = std::move(A);
}

void store_complex(DiscreteOperator& op, const Eigen::MatrixXcd& A) {
  op.re = A.real();
  op.im = A.imag();
}

// Runs `fn(kernel)` with the kernel matching `order` and stores the result.
template <typename Fn>
void dispatch(DiscreteOperator& op, KernelOrder order, Fn&& fn) {
  switch (order.kind()) {
    case KernelOrder::Kind::Static0:
      op.re = fn(StaticKernel{});
      return;
    case KernelOrder::Kind::FullK:
      store_complex(op, fn(FullKernel{order.k()}));
      return;
    default: {
      const int j = order.kind() == KernelOrder::Kind::Linear1      ? 1
                    : order.kind() == KernelOrder::Kind::Quadratic2 ? 2
                    : order.kind() == KernelOrder::Kind::Cubic3     ? 3
                                                                    : 4;
      PolyKernel pk{j};
      store_real_kernel(op, fn(pk), pk.imaginary());
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Eigen::MatrixXcd DiscreteOperator::to_complex() const {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(rows(), cols());
  if (has_real()) A.real() = re;
  if (has_imag()) A.imag() = im;
  return A;
}

Eigen::VectorXcd DiscreteOperator::apply(const Eigen::VectorXcd& x) const {
  Eigen::VectorXcd y = Eigen::VectorXcd::Zero(rows());
  const cdouble I(0.0, 1.0);
  if (has_real()) {
    y.real() += re * x.real();
    y.imag() += re * x.imag();
  }
  if (has_imag()) {
    y.real() -= im * x.imag();
    y.imag() += im * x.real();
  }
  return y;
}

int proximity(const Panel& a, const Panel& b) {
  const double h = std::max(a.diameter, b.diameter);
  const double d = (a.centroid - b.centroid).norm();
  if (d < 2.0 * h) return 2;
  if (d < 6.0 * h) return 1;
  return 0;
}

BoundaryModel::BoundaryModel(SurfaceMesh mesh, int near_quad_order)
    : mesh_(std::move(mesh)), basis_(build_edge_basis(mesh_)), near_order_(near_quad_order) {
  const TriRule* rules[5];
  const TriRule near_test = subdivide(gauss_product_rule(near_order_), 1);
  const TriRule near_source = subdivide(symmetric_rule(7), 1);
  rules[kCoarse] = &symmetric_rule(3);
  rules[kMedium] = &symmetric_rule(7);
  rules[kNearTest] = &near_test;
  rules[kNearSource] = &near_source;
  const TriRule self_source = subdivide(symmetric_rule(7), 3);
  rules[kSelfSource] = &self_source;
  for (int r = 0; r < 5; ++r) {
    pts_[r].resize(mesh_.panels.size());
    for (std::size_t t = 0; t < mesh_.panels.size(); ++t) {
      const Panel& P = mesh_.panels[t];
      auto& out = pts_[r][t];
      out.reserve(rules[r]->size());
      for (std::size_t q = 0; q < rules[r]->size(); ++q) {
        const Vec3& b = rules[r]->bary[q];
        out.push_back({b.x() * P.v[0] + b.y() * P.v[1] + b.z() * P.v[2], rules[r]->w[q] * P.area});
      }
    }
  }

  // Greedy colouring of the panel adjacency graph (panels sharing an edge).
  const int np = static_cast<int>(mesh_.panels.size());
  std::vector<std::vector<int>> nbr(np);
  for (const auto& e : basis_.edges) {
    nbr[e.plus].push_back(e.minus);
    nbr[e.minus].push_back(e.plus);
  }
  std::vector<int> color(np, -1);
  int ncolors = 0;
  for (int t = 0; t < np; ++t) {
    std::set<int> used;
    for (int u : nbr[t])
      if (color[u] >= 0) used.insert(color[u]);
    int c = 0;
    while (used.count(c)) ++c;
    color[t] = c;
    ncolors = std::max(ncolors, c + 1);
  }
  colors_.assign(ncolors, {});
  for (int t = 0; t < np; ++t) colors_[color[t]].push_back(t);

  std::vector<Eigen::Triplet<double>> dt, gt;
  const TriRule& r7 = symmetric_rule(7);
  for (int t = 0; t < np; ++t) {
    const Panel& P = mesh_.panels[t];
    for (int a = 0; a < 3; ++a) {
      const LocalBasis& la = basis_.local[t][a];
      dt.emplace_back(t, la.edge, 2.0 * la.coeff);
      for (int b = 0; b < 3; ++b) {
        const LocalBasis& lb = basis_.local[t][b];
        const double v = integrate(r7, P.v[0], P.v[1], P.v[2], P.area, [&](const Vec3& x) {
          return (x - P.v[a]).dot(x - P.v[b]);
        });
        gt.emplace_back(la.edge, lb.edge, la.coeff * lb.coeff * v);
      }
    }
  }
  div_.resize(np, static_cast<Eigen::Index>(basis_.size()));
  div_.setFromTriplets(dt.begin(), dt.end());
  gram_.resize(static_cast<Eigen::Index>(basis_.size()), static_cast<Eigen::Index>(basis_.size()));
  gram_.setFromTriplets(gt.begin(), gt.end());
}

const std::vector<BoundaryModel::QPoint>& BoundaryModel::points(int panel, int rule) const {
  return pts_[rule][panel];
}

std::string_view to_string(VectorPotentialOutput out) {
  switch (out) {
    case VectorPotentialOutput::Value: return "value";
    case VectorPotentialOutput::Curl: return "curl";
    case VectorPotentialOutput::NuCrossValue: return "nu_cross_value";
    case VectorPotentialOutput::NuCrossCurl: return "nu_cross_curl";
    case VectorPotentialOutput::NuDotCurl: return "nu_dot_curl";
    case VectorPotentialOutput::NuDotValue: return "nu_dot_value";
  }
  return "?";
}

DiscreteOperator assemble_scalar_single_layer(const BoundaryModel& m, KernelOrder order) {
  if (order.kind() != KernelOrder::Kind::Static0 && order.kind() != KernelOrder::Kind::Quadratic2 &&
      order.kind() != KernelOrder::Kind::Quartic4 && order.kind() != KernelOrder::Kind::FullK)
    throw Error(ErrorCode::UnsupportedCombination, "single layer supports Static0, Quadratic2, Quartic4, FullK");
  DiscreteOperator op;
  op.order = order;
  op.domain = op.range = Space::ScalarPanel;
  dispatch(op, order, [&](const auto& kern) { return collocate_scalar(m, kern, false); });
  return op;
}

DiscreteOperator assemble_adjoint_np(const BoundaryModel& m) {
  DiscreteOperator op;
  op.domain = op.range = Space::ScalarPanel;
  // On one sphere nu_x . (x - y) = |x - y|^2 / (2r), so the same-sphere block
  // is the single layer scaled by -1/(2r). Flat panels get the curvature of the
  // near field wrong and the weakly singular single layer avoids that.
  const double scale = -0.5 / m.mesh().radius;
  op.re = collocate(m, StaticKernel{}, 1, static_cast<Eigen::Index>(m.panels()), true,
                    [scale](Eigen::MatrixXd& A, int i, int j, const Moments<double>& mo, const Panel& Pi,
                            const Panel& Pj) {
                      A(i, j) = Pi.sphere == Pj.sphere ? scale * mo.I : Pi.normal.dot(mo.Gk);
                    });
  return op;
}

DiscreteOperator assemble_vector_potential(const BoundaryModel& m, KernelOrder order,
                                           VectorPotentialOutput out) {
  const bool curl_type = out == VectorPotentialOutput::Curl || out == VectorPotentialOutput::NuCrossCurl ||
                         out == VectorPotentialOutput::NuDotCurl;
  const auto kind = order.kind();
  if ((kind == KernelOrder::Kind::Linear1 && curl_type) || kind == KernelOrder::Kind::Quartic4 ||
      (kind == KernelOrder::Kind::Cubic3 && curl_type))
    throw Error(ErrorCode::UnsupportedCombination,
                std::string("vector potential output ") + std::string(to_string(out)) +
                    " is not provided for this kernel order");
  DiscreteOperator op;
  op.order = order;
  op.domain = Space::TangentEdge;
  switch (out) {
    case VectorPotentialOutput::NuCrossValue:
      op.range = Space::TangentEdge;
      dispatch(op, order, [&](const auto& kern) { return galerkin_nu_cross_value(m, kern); });
      break;
    case VectorPotentialOutput::NuCrossCurl:
      op.range = Space::TangentEdge;
      dispatch(op, order, [&](const auto& kern) { return galerkin_nu_cross_curl(m, kern); });
      break;
    case VectorPotentialOutput::Value:
    case VectorPotentialOutput::Curl:
      op.range = Space::Vector3Panel;
      dispatch(op, order, [&](const auto& kern) { return collocate_vector_potential(m, kern, out); });
      break;
    case VectorPotentialOutput::NuDotCurl:
    case VectorPotentialOutput::NuDotValue:
      op.range = Space::ScalarPanel;
      dispatch(op, order, [&](const auto& kern) { return collocate_vector_potential(m, kern, out); });
      break;
  }
  return op;
}

DiscreteOperator assemble_magnetic(const BoundaryModel& m, KernelOrder order) {
  return assemble_vector_potential(m, order, VectorPotentialOutput::NuCrossCurl);
}

DiscreteOperator assemble_nu_cross_grad_single_layer(const BoundaryModel& m, KernelOrder order) {
  DiscreteOperator op;
  op.order = order;
  op.domain = Space::ScalarPanel;
  op.range = Space::TangentEdge;
  if (order.kind() == KernelOrder::Kind::Linear1) {
    op.im = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m.edges()), static_cast<Eigen::Index>(m.panels()));
    return op;
  }
  dispatch(op, order, [&](const auto& kern) { return galerkin_nu_cross_grad(m, kern); });
  return op;
}

DiscreteOperator assemble_surface_divergence(const BoundaryModel& m) {
  DiscreteOperator op;
  op.domain = Space::TangentEdge;
  op.range = Space::ScalarPanel;
  op.re = Eigen::MatrixXd(m.divergence());
  return op;
}

Eigen::VectorXcd galerkin_project(const BoundaryModel& m,
                                  const std::function<CVec3(const Vec3&, const Vec3&)>& field) {
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m.edges()));
  const auto& mesh = m.mesh();
  for (std::size_t t = 0; t < mesh.panels.size(); ++t) {
    const Panel& P = mesh.panels[t];
    for (const auto& q : m.points(static_cast<int>(t), kMedium)) {
      const CVec3 F = field(q.x, P.normal);
      for (int a = 0; a < 3; ++a) {
        const LocalBasis& la = m.basis().local[t][a];
        rhs[la.edge] += (la.coeff * q.w) * (q.x - P.v[a]).cast<cdouble>().dot(F);
      }
    }
  }
  return rhs;
}

}  // namespace twosphere
