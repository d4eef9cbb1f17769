#include "twosphere/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>

#include "twosphere/error.hpp"
#include "twosphere/io.hpp"

namespace twosphere {
namespace {

void finish_panel(Panel& P) {
  const Vec3 n = (P.v[1] - P.v[0]).cross(P.v[2] - P.v[0]);
  const double len = n.norm();
  P.area = 0.5 * len;
  P.normal = n / len;
  P.centroid = (P.v[0] + P.v[1] + P.v[2]) / 3.0;
  P.diameter = std::max({(P.v[1] - P.v[0]).norm(), (P.v[2] - P.v[1]).norm(),
                         (P.v[0] - P.v[2]).norm()});
}

}  // namespace

double SurfaceMesh::max_diameter() const {
  double h = 0.0;
  for (const auto& P : panels) h = std::max(h, P.diameter);
  return h;
}

std::vector<double> graded_latitudes(int n_theta, double g) {
  std::vector<double> th(n_theta + 1);
  for (int j = 0; j <= n_theta; ++j)
    th[j] = std::numbers::pi * std::pow(static_cast<double>(j) / n_theta, g);
  th[n_theta] = std::numbers::pi;
  return th;
}

int bands_in_gap_cap(const MeshControls& mc, double epsilon, double r) {
  const double cap = std::sqrt(epsilon / r);
  const auto th = graded_latitudes(mc.n_theta, mc.grading_exponent);
  int bands = 0;
  for (int j = 1; j <= mc.n_theta; ++j)
    if (th[j] <= cap) bands = j;
  return bands;
}

SurfaceMesh build_sphere_mesh(const Vec3& center, double r, const MeshControls& mc) {
  mc.validate();
  const int nt = mc.n_theta, np = mc.n_phi;
  const auto th = graded_latitudes(nt, mc.grading_exponent);

  SurfaceMesh mesh;
  mesh.radius = r;
  mesh.centers = {center};
  mesh.vertices.push_back(center + Vec3(r, 0.0, 0.0));
  for (int j = 1; j < nt; ++j) {
    const double ct = std::cos(th[j]), st = std::sin(th[j]);
    for (int k = 0; k < np; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / np;
      mesh.vertices.push_back(center + r * Vec3(ct, st * std::cos(ph), st * std::sin(ph)));
    }
  }
  mesh.vertices.push_back(center + Vec3(-r, 0.0, 0.0));
  const int south = static_cast<int>(mesh.vertices.size()) - 1;
  auto ring = [np](int j, int k) { return 1 + (j - 1) * np + ((k % np) + np) % np; };

  std::vector<std::array<int, 3>> tris;
  for (int k = 0; k < np; ++k) tris.push_back({0, ring(1, k), ring(1, k + 1)});
  for (int j = 1; j < nt - 1; ++j)
    for (int k = 0; k < np; ++k) {
      const int a = ring(j, k), b = ring(j, k + 1), c = ring(j + 1, k + 1), d = ring(j + 1, k);
      tris.push_back({a, d, c});
      tris.push_back({a, c, b});
    }
  for (int k = 0; k < np; ++k) tris.push_back({south, ring(nt - 1, k + 1), ring(nt - 1, k)});

  for (auto t : tris) {
    Panel P;
    for (int a = 0; a < 3; ++a) P.v[a] = mesh.vertices[t[a]];
    const Vec3 n = (P.v[1] - P.v[0]).cross(P.v[2] - P.v[0]);
    if (n.dot((P.v[0] + P.v[1] + P.v[2]) / 3.0 - center) < 0.0) {
      std::swap(t[1], t[2]);
      std::swap(P.v[1], P.v[2]);
    }
    P.vid = t;
    P.sphere = SphereId::One;
    finish_panel(P);
    mesh.panels.push_back(P);
  }
  mesh.panels_per_sphere = static_cast<int>(mesh.panels.size());
  mesh.vertices_per_sphere = static_cast<int>(mesh.vertices.size());
  return mesh;
}

SurfaceMesh build_mesh(const TwoSphereConfig& cfg) {
  cfg.validate();
  const int bands = bands_in_gap_cap(cfg.mesh, cfg.epsilon, cfg.r);
  if (bands < 3)
    throw Error(ErrorCode::ResolutionTooCoarse,
                "only " + std::to_string(bands) +
                    " latitude bands inside the gap cap of angular radius sqrt(epsilon/r); need 3");

  SurfaceMesh mesh = build_sphere_mesh(cfg.center(SphereId::One), cfg.r, cfg.mesh);
  const int V1 = mesh.vertices_per_sphere, F1 = mesh.panels_per_sphere;
  mesh.centers.push_back(-mesh.centers[0]);
  for (int i = 0; i < V1; ++i) mesh.vertices.push_back(-mesh.vertices[i]);
  for (int i = 0; i < F1; ++i) {
    const Panel& A = mesh.panels[i];
    Panel B;
    for (int a = 0; a < 3; ++a) {
      B.v[a] = -A.v[a];
      B.vid[a] = A.vid[a] + V1;
    }
    // Derived data is negated rather than recomputed so the mirror is bitwise exact.
    B.centroid = -A.centroid;
    B.normal = -A.normal;
    B.area = A.area;
    B.diameter = A.diameter;
    B.sphere = SphereId::Two;
    mesh.panels.push_back(B);
  }
  mesh.antipodal.resize(2 * F1);
  for (int i = 0; i < F1; ++i) {
    mesh.antipodal[i] = i + F1;
    mesh.antipodal[i + F1] = i;
  }
  return mesh;
}

SurfaceMesh remove_panel(const SurfaceMesh& mesh, int panel) {
  SurfaceMesh out = mesh;
  out.panels.erase(out.panels.begin() + panel);
  out.antipodal.clear();
  return out;
}

void write_off(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.panels.size() << " 0\n";
  for (const auto& v : mesh.vertices)
    out << format_number(v.x()) << ' ' << format_number(v.y()) << ' ' << format_number(v.z()) << '\n';
  for (const auto& P : mesh.panels) {
    // OFF expects counter-clockwise order seen from outside.
    const Vec3 n = (P.v[1] - P.v[0]).cross(P.v[2] - P.v[0]);
    if (n.dot(P.normal) >= 0.0)
      out << "3 " << P.vid[0] << ' ' << P.vid[1] << ' ' << P.vid[2] << '\n';
    else
      out << "3 " << P.vid[0] << ' ' << P.vid[2] << ' ' << P.vid[1] << '\n';
  }
}

EdgeBasis build_edge_basis(const SurfaceMesh& mesh) {
  EdgeBasis basis;
  std::map<std::pair<int, int>, int> index;
  std::vector<int> count;
  for (int t = 0; t < static_cast<int>(mesh.panels.size()); ++t) {
    const Panel& P = mesh.panels[t];
    for (int a = 0; a < 3; ++a) {
      const int u = P.vid[(a + 1) % 3], w = P.vid[(a + 2) % 3];
      const auto key = std::minmax(u, w);
      auto it = index.find(key);
      if (it == index.end()) {
        Edge e;
        e.va = key.first;
        e.vb = key.second;
        e.plus = t;
        e.free_plus = a;
        e.length = (mesh.vertices[u] - mesh.vertices[w]).norm();
        index.emplace(key, static_cast<int>(basis.edges.size()));
        basis.edges.push_back(e);
        count.push_back(1);
      } else {
        if (++count[it->second] > 2)
          throw Error(ErrorCode::NonManifoldEdge, "edge shared by more than two panels");
        basis.edges[it->second].minus = t;
        basis.edges[it->second].free_minus = a;
      }
    }
  }
  for (int c : count)
    if (c != 2) throw Error(ErrorCode::NonManifoldEdge, "boundary edge found; mesh is not closed");

  basis.local.resize(mesh.panels.size());
  for (int e = 0; e < static_cast<int>(basis.edges.size()); ++e) {
    const Edge& E = basis.edges[e];
    basis.local[E.plus][E.free_plus] = {e, E.length / (2.0 * mesh.panels[E.plus].area)};
    basis.local[E.minus][E.free_minus] = {e, -E.length / (2.0 * mesh.panels[E.minus].area)};
  }
  if (mesh.sphere_count() == 2 && !mesh.antipodal.empty()) {
    const int E1 = static_cast<int>(basis.edges.size()) / 2;
    basis.edges_per_sphere = E1;
    basis.antipodal.resize(basis.edges.size());
    for (int e = 0; e < E1; ++e) {
      basis.antipodal[e] = e + E1;
      basis.antipodal[e + E1] = e;
    }
  } else {
    basis.edges_per_sphere = static_cast<int>(basis.edges.size());
  }
  return basis;
}

template <typename V>
static V divergence_impl(const SurfaceMesh& mesh, const EdgeBasis& basis, const V& c) {
  V out = V::Zero(static_cast<Eigen::Index>(mesh.panels.size()));
  for (std::size_t t = 0; t < mesh.panels.size(); ++t)
    for (int a = 0; a < 3; ++a) {
      const LocalBasis& lb = basis.local[t][a];
      out[t] += 2.0 * lb.coeff * c[lb.edge];
    }
  return out;
}

Eigen::VectorXd surface_divergence(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                   const Eigen::VectorXd& c) {
  return divergence_impl(mesh, basis, c);
}
Eigen::VectorXcd surface_divergence(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                    const Eigen::VectorXcd& c) {
  return divergence_impl(mesh, basis, c);
}

Vec3 edge_crossing_normal(const SurfaceMesh& mesh, const Edge& e, bool plus_side) {
  const Panel& P = mesh.panels[plus_side ? e.plus : e.minus];
  const Vec3& va = mesh.vertices[e.va];
  const Vec3& vb = mesh.vertices[e.vb];
  const Vec3 t = vb - va;
  const Vec3 mid = 0.5 * (va + vb);
  const Vec3 w = mid - P.v[plus_side ? e.free_plus : e.free_minus];
  Vec3 n = w - (w.dot(t) / t.dot(t)) * t;
  n /= n.norm();
  return plus_side ? n : Vec3(-n);
}

Eigen::VectorXd interpolate_tangential(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                       const TangentField& field) {
  Eigen::VectorXd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Edge& e = basis.edges[i];
    const Vec3 mid = 0.5 * (mesh.vertices[e.va] + mesh.vertices[e.vb]);
    const double fp = field(mid, mesh.panels[e.plus].normal).dot(edge_crossing_normal(mesh, e, true));
    const double fm = field(mid, mesh.panels[e.minus].normal).dot(edge_crossing_normal(mesh, e, false));
    c[static_cast<Eigen::Index>(i)] = 0.5 * (fp + fm);
  }
  return c;
}

Eigen::SparseMatrix<double> loop_basis(const SurfaceMesh& mesh, const EdgeBasis& basis) {
  const int nv = static_cast<int>(mesh.vertices.size());
  const int per = mesh.vertices_per_sphere > 0 ? mesh.vertices_per_sphere : nv;
  // column index of each kept vertex; the last vertex of every sphere is dropped
  std::vector<int> col(static_cast<std::size_t>(nv), -1);
  int ncols = 0;
  for (int v = 0; v < nv; ++v)
    if ((v + 1) % per != 0) col[static_cast<std::size_t>(v)] = ncols++;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(2 * basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const Edge& e = basis.edges[i];
    const Panel& P = mesh.panels[e.plus];
    // tangent of the edge as seen from T+, rotated from the crossing normal
    const Vec3 tang = edge_crossing_normal(mesh, e, true).cross(P.normal);
    const Vec3 ab = mesh.vertices[e.vb] - mesh.vertices[e.va];
    const double s = (tang.dot(ab) > 0.0 ? 1.0 : -1.0) / e.length;
    // d(lambda_v)/dt along tang: +1/l at the head vertex, -1/l at the tail
    if (col[e.vb] >= 0) trip.emplace_back(static_cast<int>(i), col[e.vb], s);
    if (col[e.va] >= 0) trip.emplace_back(static_cast<int>(i), col[e.va], -s);
  }
  Eigen::SparseMatrix<double> L(static_cast<Eigen::Index>(basis.size()), ncols);
  L.setFromTriplets(trip.begin(), trip.end());
  return L;
}

}  // namespace twosphere
