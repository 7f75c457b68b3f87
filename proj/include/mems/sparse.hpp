#pragma once

#include <exception>
#include <string>
#include <vector>

namespace mems {

// Compressed-row symmetric sparse matrix (full pattern stored).
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> cols;
  std::vector<double> vals;

  void multiply(const std::vector<double>& x, std::vector<double>& y) const;
  double& coeff_ref(int i, int j);
  double coeff(int i, int j) const;
};

struct SolveInfo {
  bool converged = false;
  int iterations = 0;
  double rel_residual = 0.0;
  std::string method;
};

class SolverError : public std::exception {
 public:
  explicit SolverError(std::string what) : what_(std::move(what)) {}
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  std::string what_;
};

// Jacobi-preconditioned conjugate gradients; x doubles as the initial
// guess. Convergence is ||b - Ax|| <= tol * ||b|| (absolute fallback
// for ||b|| = 0). max_iter <= 0 selects 10 n. Throws SolverError when
// a non-SPD direction is encountered.
SolveInfo cg_solve(const CsrMatrix& A, const std::vector<double>& b,
                   std::vector<double>& x, double tol, int max_iter = 0);

// Symmetric banded matrix, lower storage: entry (i, i-k) at data[i*(kd+1)+k].
struct BandMatrix {
  int n = 0;
  int kd = 0;
  std::vector<double> data;

  static BandMatrix from_csr(const CsrMatrix& A);
  double& at(int i, int j);
  double get(int i, int j) const;

  // y = A x using the symmetric band data (valid before factorisation).
  void symmetric_multiply(const std::vector<double>& x,
                          std::vector<double>& y) const;

  // In-place Cholesky; throws SolverError if not positive definite.
  void cholesky_factor();
  void cholesky_solve(std::vector<double>& x) const;  // x: rhs in, solution out
};

// Linear system with symmetric Dirichlet elimination already applied:
// constrained rows/columns reduced to the identity, their couplings
// moved to the right-hand side.
struct SparseSystem {
  CsrMatrix matrix;
  std::vector<double> rhs;
  std::vector<int> constrained;
  std::vector<double> constrained_values;
};

struct SolverOptions {
  enum class Kind { automatic, cg, cholesky };
  Kind kind = Kind::automatic;
  double cg_tol = 1e-10;
  int cg_max_iter = 0;
  // Systems up to this many unknowns go to the banded direct solver in
  // automatic mode.
  int direct_limit = 70000;
  const std::vector<double>* warm_start = nullptr;
};

std::vector<double> solve_system(const SparseSystem& sys,
                                 const SolverOptions& opts, SolveInfo* info);

}  // namespace mems
