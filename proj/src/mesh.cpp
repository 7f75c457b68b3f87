#include "mems/mesh.hpp"

#include <cmath>
#include <stdexcept>

namespace mems {

ReferenceMesh::ReferenceMesh(double L_, double H_, double d_, int nx_, int nz1_,
                             int nz2_)
    : L(L_), H(H_), d(d_), nx(nx_), nz1(nz1_), nz2(nz2_) {
  if (L <= 0.0 || H <= 0.0 || d <= 0.0)
    throw std::invalid_argument("build_mesh: extents must be positive");
  if (nx < 1 || nz1 < 1 || nz2 < 1)
    throw std::invalid_argument("build_mesh: cell counts must be >= 1");

  dx_ = 2.0 * L / nx;
  dz1_ = H / nz1;
  dz2_ = d / nz2;

  x_.resize(nx + 1);
  for (int i = 0; i <= nx; ++i) x_[i] = -L + i * dx_;
  x_[nx] = L;

  z_.resize(nz() + 1);
  for (int j = 0; j <= nz1; ++j) z_[j] = -H + j * dz1_;
  z_[nz1] = 0.0;
  for (int j = nz1 + 1; j <= nz(); ++j) z_[j] = (j - nz1) * dz2_;
  z_[nz()] = d;

  boundary_mask_.assign(num_nodes(), 0);
  for (int j = 0; j <= nz(); ++j)
    for (int i = 0; i <= nx; ++i)
      if (i == 0 || i == nx || j == 0 || j == nz())
        boundary_mask_[node_id(i, j)] = 1;

  interface_nodes_.reserve(nx + 1);
  for (int i = 0; i <= nx; ++i) interface_nodes_.push_back(node_id(i, nz1));
}

std::array<int, 4> ReferenceMesh::cell_nodes(int ci, int cj) const {
  return {node_id(ci, cj), node_id(ci + 1, cj), node_id(ci, cj + 1),
          node_id(ci + 1, cj + 1)};
}

double ReferenceMesh::total_area() const {
  double area = 0.0;
  for (int cj = 0; cj < nz(); ++cj) area += nx * cell_area(cj);
  return area;
}

MeshPtr build_mesh(double L, double H, double d, int nx, int nz1, int nz2) {
  return std::make_shared<const ReferenceMesh>(L, H, d, nx, nz1, nz2);
}

std::vector<QuadPoint> cell_gauss_points(const ReferenceMesh& mesh) {
  const double p0 = 0.5 - 0.5 / std::sqrt(3.0);
  const double p1 = 0.5 + 0.5 / std::sqrt(3.0);
  const double pts[2] = {p0, p1};

  std::vector<QuadPoint> q;
  q.reserve(4 * mesh.num_cells());
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double z0 = mesh.z_coord(cj);
    const double dz = mesh.dz_row(cj);
    const double w = 0.25 * mesh.dx() * dz;
    for (int ci = 0; ci < mesh.nx; ++ci) {
      const double x0 = mesh.x_coord(ci);
      for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
          q.push_back({x0 + pts[a] * mesh.dx(), z0 + pts[b] * dz, w});
    }
  }
  return q;
}

}  // namespace mems
