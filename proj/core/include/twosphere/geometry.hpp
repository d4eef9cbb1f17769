#pragma once

#include <array>
#include <filesystem>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "twosphere/config.hpp"

namespace twosphere {

struct Panel {
  std::array<Vec3, 3> v;
  std::array<int, 3> vid{};
  Vec3 centroid;
  Vec3 normal;  // outward, flat-panel normal
  double area = 0.0;
  double diameter = 0.0;  // longest edge
  SphereId sphere = SphereId::One;
};

struct SurfaceMesh {
  std::vector<Vec3> vertices;
  std::vector<Panel> panels;
  // antipodal[i] is the panel x -> -x image of panel i; empty for one sphere.
  std::vector<int> antipodal;
  std::vector<Vec3> centers;  // one per sphere
  double radius = 1.0;
  int panels_per_sphere = 0;
  int vertices_per_sphere = 0;

  std::size_t size() const { return panels.size(); }
  int sphere_count() const { return static_cast<int>(centers.size()); }
  double max_diameter() const;
};

// Latitude nodes theta_j = pi (j/n)^g, j = 0..n, measured from the pole.
std::vector<double> graded_latitudes(int n_theta, double grading_exponent);

// Number of latitude bands lying inside the cap of angular radius sqrt(eps/r).
int bands_in_gap_cap(const MeshControls& mc, double epsilon, double r);

// One UV sphere, pole along +x (the graded end), outward normals.
SurfaceMesh build_sphere_mesh(const Vec3& center, double r, const MeshControls& mc);

// Two mirror-symmetric spheres; sphere 2 is the exact negation of sphere 1.
SurfaceMesh build_mesh(const TwoSphereConfig& cfg);

// Removes one panel (used to exercise NonManifoldEdge checks).
SurfaceMesh remove_panel(const SurfaceMesh& mesh, int panel);

void write_off(const SurfaceMesh& mesh, const std::filesystem::path& path);

// Rooftop (RWG) edge basis: f_e = +l/(2A+) (x - v+) on T+, -l/(2A-) (x - v-) on T-.
struct Edge {
  int va = 0, vb = 0;        // mesh vertex ids of the edge
  int plus = 0, minus = 0;   // adjacent panels
  int free_plus = 0, free_minus = 0;  // local index (0..2) of the opposite vertex
  double length = 0.0;
};

struct LocalBasis {
  int edge = 0;
  double coeff = 0.0;  // +-l/(2A); the basis on the panel is coeff * (x - v[a])
};

struct EdgeBasis {
  std::vector<Edge> edges;
  // local[t][a]: basis function on panel t whose free vertex is local vertex a.
  std::vector<std::array<LocalBasis, 3>> local;
  std::vector<int> antipodal;  // edge pairing under x -> -x; empty for one sphere
  int edges_per_sphere = 0;

  std::size_t size() const { return edges.size(); }
};

EdgeBasis build_edge_basis(const SurfaceMesh& mesh);

// Sparse-free divergence: value of div f_e on panel t is local coeff * 2.
// Returns the P x E map as dense triplets applied on demand.
Eigen::VectorXd surface_divergence(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                   const Eigen::VectorXd& coeffs);
Eigen::VectorXcd surface_divergence(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                    const Eigen::VectorXcd& coeffs);

// Unit in-plane normal of edge e inside panel t, pointing from T+ towards T-.
Vec3 edge_crossing_normal(const SurfaceMesh& mesh, const Edge& e, bool plus_side);

// Interpolates a tangential field by normal flux at edge midpoints. The field
// receives the point and the normal of the panel on which it is evaluated.
using TangentField = std::function<Vec3(const Vec3& x, const Vec3& normal)>;
Eigen::VectorXd interpolate_tangential(const SurfaceMesh& mesh, const EdgeBasis& basis,
                                       const TangentField& field);

// Solenoidal (loop) basis: column v is the rotated gradient of the hat function
// of vertex v, written in edge coefficients. Its surface divergence vanishes
// exactly. One vertex per sphere is dropped, so the columns are independent.
Eigen::SparseMatrix<double> loop_basis(const SurfaceMesh& mesh, const EdgeBasis& basis);

// Value of the expansion sum_e c_e f_e at a point x of panel t.
template <typename Vec>
auto density_on_panel(const SurfaceMesh& mesh, const EdgeBasis& basis, const Vec& c, int t,
                      const Vec3& x) {
  using S = typename Vec::Scalar;
  Eigen::Matrix<S, 3, 1> out = Eigen::Matrix<S, 3, 1>::Zero();
  const Panel& P = mesh.panels[t];
  for (int a = 0; a < 3; ++a) {
    const LocalBasis& lb = basis.local[t][a];
    out += (c[lb.edge] * lb.coeff) * (x - P.v[a]).template cast<S>();
  }
  return out;
}

}  // namespace twosphere
