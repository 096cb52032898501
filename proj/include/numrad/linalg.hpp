#pragma once

#include <vector>

#include "numrad/lpspace.hpp"

namespace numrad::linalg {

struct SymmetricEigen {
  Vec values;   // ascending
  Mat vectors;  // columns, orthonormal
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
/// tol * max(1, ||A||_F). A must be symmetric.
SymmetricEigen jacobi_eigen(const Mat& a, double tol = 1e-12, int max_sweeps = 100);

/// Basis of {z : A z = 0} from Gauss-Jordan elimination with partial
/// pivoting. Pivots with magnitude <= tol * max|A_ij| are treated as zero.
std::vector<Vec> null_space(const Mat& a, double tol = 1e-10);

int rank(const Mat& a, double tol = 1e-10);

/// Solves A X = B for square nonsingular A by elimination with partial
/// pivoting. Throws std::domain_error if A is singular to working precision.
Mat solve(const Mat& a, const Mat& b);

/// Distance from w to span(basis) in the l^p norm.
double distance_to_span(const Vec& w, const std::vector<Vec>& basis, const Exponent& p);

/// Columns stacked into a matrix.
Mat columns(const std::vector<Vec>& cols, Eigen::Index rows);

}  // namespace numrad::linalg
