#include "mems/assemble.hpp"

#include <algorithm>
#include <cmath>

namespace mems {

namespace {

// Q1 basis gradients w.r.t. the unit-square coordinates (xi, eta) at a
// single point, corner order SW, SE, NW, NE.
struct LocalGrads {
  double dxi[4];
  double deta[4];
};

LocalGrads q1_local_grads(double xi, double eta) {
  LocalGrads g;
  g.dxi[0] = -(1.0 - eta);
  g.dxi[1] = (1.0 - eta);
  g.dxi[2] = -eta;
  g.dxi[3] = eta;
  g.deta[0] = -(1.0 - xi);
  g.deta[1] = -xi;
  g.deta[2] = (1.0 - xi);
  g.deta[3] = xi;
  return g;
}

// The 2x2 Gauss points on [0,1] used by cell_gauss_points, in the same
// (a inner, b outer) order.
struct GaussTable {
  LocalGrads grads[4];
};

GaussTable make_gauss_table() {
  const double p0 = 0.5 - 0.5 / std::sqrt(3.0);
  const double p1 = 0.5 + 0.5 / std::sqrt(3.0);
  const double pts[2] = {p0, p1};
  GaussTable t;
  for (int b = 0; b < 2; ++b)
    for (int a = 0; a < 2; ++a) t.grads[2 * b + a] = q1_local_grads(pts[a], pts[b]);
  return t;
}

}  // namespace

CsrMatrix build_q1_pattern(const ReferenceMesh& mesh) {
  CsrMatrix K;
  K.n = mesh.num_nodes();
  K.row_ptr.assign(K.n + 1, 0);

  const int nx = mesh.nx;
  const int nz = mesh.nz();
  for (int j = 0; j <= nz; ++j) {
    for (int i = 0; i <= nx; ++i) {
      int count = 0;
      for (int dj = -1; dj <= 1; ++dj) {
        const int jj = j + dj;
        if (jj < 0 || jj > nz) continue;
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          if (ii < 0 || ii > nx) continue;
          ++count;
        }
      }
      K.row_ptr[mesh.node_id(i, j) + 1] = count;
    }
  }
  for (int r = 0; r < K.n; ++r) K.row_ptr[r + 1] += K.row_ptr[r];

  K.cols.resize(K.row_ptr[K.n]);
  // Rows are visited in node order; dj-then-di iteration emits columns
  // already sorted because node ids grow with j, then i.
  int pos = 0;
  for (int j = 0; j <= nz; ++j) {
    for (int i = 0; i <= nx; ++i) {
      for (int dj = -1; dj <= 1; ++dj) {
        const int jj = j + dj;
        if (jj < 0 || jj > nz) continue;
        for (int di = -1; di <= 1; ++di) {
          const int ii = i + di;
          if (ii < 0 || ii > nx) continue;
          K.cols[pos++] = mesh.node_id(ii, jj);
        }
      }
    }
  }
  K.vals.assign(K.cols.size(), 0.0);
  return K;
}

void assemble_stiffness(const ReferenceMesh& mesh,
                        const CoefficientField& field, CsrMatrix& K) {
  static const GaussTable gauss = make_gauss_table();
  std::fill(K.vals.begin(), K.vals.end(), 0.0);

  const int nx = mesh.nx;
  const double dx = mesh.dx();
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double dz = mesh.dz_row(cj);
    for (int ci = 0; ci < nx; ++ci) {
      const int cell = cj * nx + ci;
      const auto nodes = mesh.cell_nodes(ci, cj);

      double ke[4][4] = {};
      for (int q = 0; q < 4; ++q) {
        const CoefficientSample& A = field[4 * cell + q];
        const double w = 0.25 * dx * dz;
        const LocalGrads& lg = gauss.grads[q];
        double gx[4], gz[4];
        for (int a = 0; a < 4; ++a) {
          gx[a] = lg.dxi[a] / dx;
          gz[a] = lg.deta[a] / dz;
        }
        for (int a = 0; a < 4; ++a) {
          for (int b = a; b < 4; ++b) {
            ke[a][b] += w * (A.a11 * gx[a] * gx[b] +
                             A.a12 * (gx[a] * gz[b] + gz[a] * gx[b]) +
                             A.a22 * gz[a] * gz[b]);
          }
        }
      }
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < a; ++b) ke[a][b] = ke[b][a];

      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          K.coeff_ref(nodes[a], nodes[b]) += ke[a][b];
    }
  }
}

double stiffness_energy(const ReferenceMesh& mesh,
                        const CoefficientField& field,
                        const std::vector<double>& psi) {
  static const GaussTable gauss = make_gauss_table();

  double total = 0.0;
  const int nx = mesh.nx;
  const double dx = mesh.dx();
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double dz = mesh.dz_row(cj);
    for (int ci = 0; ci < nx; ++ci) {
      const int cell = cj * nx + ci;
      const auto nodes = mesh.cell_nodes(ci, cj);
      for (int q = 0; q < 4; ++q) {
        const CoefficientSample& A = field[4 * cell + q];
        const double w = 0.25 * dx * dz;
        const LocalGrads& lg = gauss.grads[q];
        double gx = 0.0, gz = 0.0;
        for (int a = 0; a < 4; ++a) {
          gx += psi[nodes[a]] * lg.dxi[a] / dx;
          gz += psi[nodes[a]] * lg.deta[a] / dz;
        }
        total += w * (A.a11 * gx * gx + 2.0 * A.a12 * gx * gz + A.a22 * gz * gz);
      }
    }
  }
  return total;
}

std::vector<Vec2> gauss_point_gradients(const ReferenceMesh& mesh,
                                        const std::vector<double>& psi) {
  static const GaussTable gauss = make_gauss_table();

  std::vector<Vec2> grads(4 * static_cast<size_t>(mesh.num_cells()));
  const int nx = mesh.nx;
  const double dx = mesh.dx();
  for (int cj = 0; cj < mesh.nz(); ++cj) {
    const double dz = mesh.dz_row(cj);
    for (int ci = 0; ci < nx; ++ci) {
      const int cell = cj * nx + ci;
      const auto nodes = mesh.cell_nodes(ci, cj);
      for (int q = 0; q < 4; ++q) {
        const LocalGrads& lg = gauss.grads[q];
        Vec2 g;
        for (int a = 0; a < 4; ++a) {
          g.x += psi[nodes[a]] * lg.dxi[a] / dx;
          g.z += psi[nodes[a]] * lg.deta[a] / dz;
        }
        grads[4 * cell + q] = g;
      }
    }
  }
  return grads;
}

std::vector<double> dirichlet_values(const ReferenceMesh& mesh,
                                     const BoundaryData& bdata,
                                     const DeflectionProfile& u) {
  std::vector<double> values(mesh.num_nodes(), 0.0);
  for (int j = 0; j <= mesh.nz(); ++j) {
    for (int i = 0; i <= mesh.nx; ++i) {
      const int node = mesh.node_id(i, j);
      if (!mesh.is_boundary(node)) continue;
      values[node] =
          bdata.value_reference(u, mesh.x_coord(i), mesh.z_coord(j));
    }
  }
  return values;
}

SparseSystem assemble_system(const ReferenceMesh& mesh,
                             const CoefficientField& field,
                             const BoundaryData& bdata,
                             const DeflectionProfile& u) {
  SparseSystem sys;
  sys.matrix = build_q1_pattern(mesh);
  assemble_stiffness(mesh, field, sys.matrix);
  sys.rhs.assign(sys.matrix.n, 0.0);

  const std::vector<double> values = dirichlet_values(mesh, bdata, u);
  std::vector<char> fixed(sys.matrix.n, 0);
  for (int node = 0; node < sys.matrix.n; ++node) {
    if (mesh.is_boundary(node)) {
      fixed[node] = 1;
      sys.constrained.push_back(node);
      sys.constrained_values.push_back(values[node]);
    }
  }

  // Symmetric elimination: move couplings to constrained dofs into the
  // rhs, then collapse constrained rows/columns to the identity.
  CsrMatrix& K = sys.matrix;
  for (int i = 0; i < K.n; ++i) {
    if (fixed[i]) {
      for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) {
        K.vals[k] = (K.cols[k] == i) ? 1.0 : 0.0;
      }
      sys.rhs[i] = values[i];
      continue;
    }
    for (int k = K.row_ptr[i]; k < K.row_ptr[i + 1]; ++k) {
      const int j = K.cols[k];
      if (fixed[j]) {
        sys.rhs[i] -= K.vals[k] * values[j];
        K.vals[k] = 0.0;
      }
    }
  }
  return sys;
}

}  // namespace mems
