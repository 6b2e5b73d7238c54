#pragma once

#include <Eigen/Core>

namespace bochner {

struct SymmetricEigen {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // column k belongs to values[k]
  int sweeps = 0;
};

/// Cyclic Jacobi eigensolver for small dense symmetric matrices. Sweeps run
/// row by row over the strict upper triangle until the off-diagonal Frobenius
/// norm drops below tol * ||A||_F. Output is deterministic: eigenvalues are
/// sorted ascending, ties keep their diagonal position.
SymmetricEigen jacobi_eigen(const Eigen::MatrixXd& a, double tol = 1e-12, int max_sweeps = 100);

/// Smallest eigenvalue via jacobi_eigen.
double min_eigenvalue(const Eigen::MatrixXd& a);

/// Basis of ker(A) as columns, from Gaussian elimination with partial
/// pivoting. A column is treated as dependent when its best pivot is below
/// rank_tol * max(1, max|A|).
Eigen::MatrixXd nullspace(const Eigen::MatrixXd& a, double rank_tol = 1e-10);

/// Modified Gram-Schmidt over the columns of `cols`; columns whose residual
/// norm falls below drop_tol are skipped.
Eigen::MatrixXd orthonormalize(const Eigen::MatrixXd& cols, double drop_tol = 1e-10);

double symmetry_defect(const Eigen::MatrixXd& a);
double skew_defect(const Eigen::MatrixXd& a);

}  // namespace bochner
