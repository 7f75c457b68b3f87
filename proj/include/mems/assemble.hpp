#pragma once

#include <vector>

#include "mems/boundary.hpp"
#include "mems/mesh.hpp"
#include "mems/sparse.hpp"
#include "mems/transform.hpp"

namespace mems {

// Sparsity pattern of the bilinear (Q1) stiffness matrix: each node
// couples to its <= 8 grid neighbours and itself.
CsrMatrix build_q1_pattern(const ReferenceMesh& mesh);

// Accumulate the stiffness matrix int A grad(phi_i) . grad(phi_j) into
// K (values reset first). `field` must hold coefficient samples in the
// cell-major order produced by cell_gauss_points.
void assemble_stiffness(const ReferenceMesh& mesh,
                        const CoefficientField& field, CsrMatrix& K);

// int A grad(psi) . grad(psi) over the reference rectangle with the
// assembly quadrature, i.e. exactly psi^T K psi.
double stiffness_energy(const ReferenceMesh& mesh,
                        const CoefficientField& field,
                        const std::vector<double>& psi);

// Reference gradient of the bilinear field at every assembly Gauss
// point, in the cell-major order of cell_gauss_points.
std::vector<Vec2> gauss_point_gradients(const ReferenceMesh& mesh,
                                        const std::vector<double>& psi);

// Nodal Dirichlet values on the outer boundary (full-length vector;
// entries at interior nodes are zero and unused).
std::vector<double> dirichlet_values(const ReferenceMesh& mesh,
                                     const BoundaryData& bdata,
                                     const DeflectionProfile& u);

// Full pipeline: stiffness assembly plus symmetric elimination of the
// boundary rows/columns (identity rows, couplings moved to the rhs).
SparseSystem assemble_system(const ReferenceMesh& mesh,
                             const CoefficientField& field,
                             const BoundaryData& bdata,
                             const DeflectionProfile& u);

}  // namespace mems
