#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "mems/transform.hpp"

namespace mems {

// Structured tensor-product mesh of the reference rectangle
// (-L,L) x (-H,d) with the interface z = 0 resolved as a mesh line:
// nz1 cell rows below it, nz2 above, nx columns. Cells are axis-aligned
// rectangles; nodes are numbered row-major, bottom row first.
class ReferenceMesh {
 public:
  ReferenceMesh(double L, double H, double d, int nx, int nz1, int nz2);

  double L, H, d;
  int nx, nz1, nz2;

  int nz() const { return nz1 + nz2; }
  int num_nodes() const { return (nx + 1) * (nz() + 1); }
  int num_cells() const { return nx * nz(); }

  int node_id(int i, int j) const { return j * (nx + 1) + i; }
  double x_coord(int i) const { return x_[i]; }
  double z_coord(int j) const { return z_[j]; }

  double dx() const { return dx_; }
  double dz_row(int j) const { return j < nz1 ? dz1_ : dz2_; }

  // Cell (ci, cj) spans [x_i, x_{i+1}] x [z_j, z_{j+1}]; corner nodes in
  // the order SW, SE, NW, NE.
  std::array<int, 4> cell_nodes(int ci, int cj) const;
  Region cell_region(int cj) const {
    return cj < nz1 ? Region::lower : Region::upper;
  }

  bool is_boundary(int node) const { return boundary_mask_[node] != 0; }
  const std::vector<int>& interface_nodes() const { return interface_nodes_; }

  double cell_area(int cj) const { return dx_ * dz_row(cj); }
  double total_area() const;

 private:
  std::vector<double> x_, z_;
  std::vector<std::uint8_t> boundary_mask_;
  std::vector<int> interface_nodes_;
  double dx_, dz1_, dz2_;
};

using MeshPtr = std::shared_ptr<const ReferenceMesh>;

MeshPtr build_mesh(double L, double H, double d, int nx, int nz1, int nz2);

// 2x2 Gauss points per cell, cell-major (cell c occupies slots
// 4c .. 4c+3); weights carry the cell-area factor.
std::vector<QuadPoint> cell_gauss_points(const ReferenceMesh& mesh);

}  // namespace mems
