#include "mems/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mems {

void CsrMatrix::multiply(const std::vector<double>& x,
                         std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
      acc += vals[k] * x[cols[k]];
    }
    y[i] = acc;
  }
}

double& CsrMatrix::coeff_ref(int i, int j) {
  auto first = cols.begin() + row_ptr[i];
  auto last = cols.begin() + row_ptr[i + 1];
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) {
    throw SolverError("CsrMatrix: entry outside sparsity pattern");
  }
  return vals[it - cols.begin()];
}

double CsrMatrix::coeff(int i, int j) const {
  auto first = cols.begin() + row_ptr[i];
  auto last = cols.begin() + row_ptr[i + 1];
  auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) return 0.0;
  return vals[it - cols.begin()];
}

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

SolveInfo cg_solve(const CsrMatrix& A, const std::vector<double>& b,
                   std::vector<double>& x, double tol, int max_iter) {
  const int n = A.n;
  if (max_iter <= 0) max_iter = 10 * n;
  if (static_cast<int>(x.size()) != n) x.assign(n, 0.0);

  std::vector<double> inv_diag(n);
  for (int i = 0; i < n; ++i) {
    const double d = A.coeff(i, i);
    if (d <= 0.0) throw SolverError("cg_solve: nonpositive diagonal entry");
    inv_diag[i] = 1.0 / d;
  }

  std::vector<double> r(n), z(n), p(n), Ap(n);
  A.multiply(x, Ap);
  for (int i = 0; i < n; ++i) r[i] = b[i] - Ap[i];

  const double norm_b = std::sqrt(dot(b, b));
  const double target = (norm_b > 0.0) ? tol * norm_b : tol;

  SolveInfo info;
  info.method = "cg";
  double norm_r = std::sqrt(dot(r, r));
  if (norm_r <= target) {
    info.converged = true;
    info.rel_residual = (norm_b > 0.0) ? norm_r / norm_b : norm_r;
    return info;
  }

  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = dot(r, z);

  for (int it = 1; it <= max_iter; ++it) {
    A.multiply(p, Ap);
    const double pAp = dot(p, Ap);
    if (pAp <= 0.0) throw SolverError("cg_solve: matrix is not positive definite");
    const double alpha = rz / pAp;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * Ap[i];
    }
    norm_r = std::sqrt(dot(r, r));
    info.iterations = it;
    if (norm_r <= target) {
      info.converged = true;
      break;
    }
    for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
    const double rz_next = dot(r, z);
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
  }
  info.rel_residual = (norm_b > 0.0) ? norm_r / norm_b : norm_r;
  return info;
}

BandMatrix BandMatrix::from_csr(const CsrMatrix& A) {
  BandMatrix B;
  B.n = A.n;
  int kd = 0;
  for (int i = 0; i < A.n; ++i) {
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      kd = std::max(kd, i - A.cols[k]);
    }
  }
  B.kd = kd;
  B.data.assign(static_cast<size_t>(B.n) * (kd + 1), 0.0);
  for (int i = 0; i < A.n; ++i) {
    for (int k = A.row_ptr[i]; k < A.row_ptr[i + 1]; ++k) {
      const int j = A.cols[k];
      if (j <= i) B.data[static_cast<size_t>(i) * (kd + 1) + (i - j)] = A.vals[k];
    }
  }
  return B;
}

double& BandMatrix::at(int i, int j) {
  return data[static_cast<size_t>(i) * (kd + 1) + (i - j)];
}

double BandMatrix::get(int i, int j) const {
  if (j > i) std::swap(i, j);
  if (i - j > kd) return 0.0;
  return data[static_cast<size_t>(i) * (kd + 1) + (i - j)];
}

void BandMatrix::symmetric_multiply(const std::vector<double>& x,
                                    std::vector<double>& y) const {
  y.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - kd);
    y[i] += data[static_cast<size_t>(i) * (kd + 1)] * x[i];
    for (int j = j0; j < i; ++j) {
      const double v = data[static_cast<size_t>(i) * (kd + 1) + (i - j)];
      y[i] += v * x[j];
      y[j] += v * x[i];
    }
  }
}

void BandMatrix::cholesky_factor() {
  // Lower-triangular banded Cholesky, row variant: for each row i,
  // L(i,j) = (A(i,j) - sum_k L(i,k) L(j,k)) / L(j,j).
  const int w = kd + 1;
  for (int i = 0; i < n; ++i) {
    const int j0 = std::max(0, i - kd);
    for (int j = j0; j < i; ++j) {
      double s = data[static_cast<size_t>(i) * w + (i - j)];
      const int k0 = std::max(j0, j - kd);
      for (int k = k0; k < j; ++k) {
        s -= data[static_cast<size_t>(i) * w + (i - k)] *
             data[static_cast<size_t>(j) * w + (j - k)];
      }
      data[static_cast<size_t>(i) * w + (i - j)] =
          s / data[static_cast<size_t>(j) * w];
    }
    double s = data[static_cast<size_t>(i) * w];
    for (int k = j0; k < i; ++k) {
      const double lik = data[static_cast<size_t>(i) * w + (i - k)];
      s -= lik * lik;
    }
    if (s <= 0.0) throw SolverError("cholesky_factor: matrix is not positive definite");
    data[static_cast<size_t>(i) * w] = std::sqrt(s);
  }
}

void BandMatrix::cholesky_solve(std::vector<double>& x) const {
  const int w = kd + 1;
  // Forward: L y = b.
  for (int i = 0; i < n; ++i) {
    double s = x[i];
    const int j0 = std::max(0, i - kd);
    for (int j = j0; j < i; ++j) {
      s -= data[static_cast<size_t>(i) * w + (i - j)] * x[j];
    }
    x[i] = s / data[static_cast<size_t>(i) * w];
  }
  // Backward: L^T x = y.
  for (int i = n - 1; i >= 0; --i) {
    double s = x[i];
    const int j1 = std::min(n - 1, i + kd);
    for (int j = i + 1; j <= j1; ++j) {
      s -= data[static_cast<size_t>(j) * w + (j - i)] * x[j];
    }
    x[i] = s / data[static_cast<size_t>(i) * w];
  }
}

std::vector<double> solve_system(const SparseSystem& sys,
                                 const SolverOptions& opts, SolveInfo* info) {
  const int n = sys.matrix.n;
  SolveInfo local;
  std::vector<double> x;

  SolverOptions::Kind kind = opts.kind;
  if (kind == SolverOptions::Kind::automatic) {
    kind = (n <= opts.direct_limit) ? SolverOptions::Kind::cholesky
                                    : SolverOptions::Kind::cg;
  }

  if (kind == SolverOptions::Kind::cholesky) {
    BandMatrix B = BandMatrix::from_csr(sys.matrix);
    B.cholesky_factor();
    x = sys.rhs;
    B.cholesky_solve(x);
    local.converged = true;
    local.method = "cholesky";
    // Report the achieved relative residual for diagnostics.
    std::vector<double> Ax;
    sys.matrix.multiply(x, Ax);
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = sys.rhs[i] - Ax[i];
      num += r * r;
      den += sys.rhs[i] * sys.rhs[i];
    }
    local.rel_residual = (den > 0.0) ? std::sqrt(num / den) : std::sqrt(num);
  } else {
    if (opts.warm_start != nullptr &&
        static_cast<int>(opts.warm_start->size()) == n) {
      x = *opts.warm_start;
      // Constrained entries must match their prescribed values exactly or
      // the identity rows would stall at the warm-start value.
      for (size_t k = 0; k < sys.constrained.size(); ++k) {
        x[sys.constrained[k]] = sys.constrained_values[k];
      }
    } else {
      x.assign(n, 0.0);
      for (size_t k = 0; k < sys.constrained.size(); ++k) {
        x[sys.constrained[k]] = sys.constrained_values[k];
      }
    }
    local = cg_solve(sys.matrix, sys.rhs, x, opts.cg_tol, opts.cg_max_iter);
    if (!local.converged) {
      throw SolverError("solve_system: cg failed to converge (rel residual " +
                        std::to_string(local.rel_residual) + ")");
    }
  }

  if (info != nullptr) *info = local;
  return x;
}

}  // namespace mems
