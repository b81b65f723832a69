// Copyright 2026 The commlift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMMLIFT_LINALG_HPP_
#define COMMLIFT_LINALG_HPP_

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace commlift
{

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
// A point of C^n.
using Point = Eigen::VectorXcd;

// Relative PSD tolerance: A is accepted as PSD when min eig >= -kPsdRel * (1 + ||A||).
inline constexpr double kPsdRel = 1e-9;

struct HermitianEig
{
  RealVector values;  // ascending
  Matrix vectors;
};

Matrix hermitian_part(const Matrix & a);
HermitianEig hermitian_eig(const Matrix & a);

// Smallest eigenvalue of the Hermitian part (+inf for an empty matrix).
double min_eigenvalue(const Matrix & a);
double op_norm(const Matrix & a);
double psd_tolerance(const Matrix & a, double rel = kPsdRel);
bool is_psd(const Matrix & a, double rel = kPsdRel);

// PSD square root; negative eigenvalues are clipped to zero.
Matrix psd_sqrt(const Matrix & a);

// Returns F (rank x dim) with F^* F equal to the clipped PSD part of `a`. Eigenvalues
// at or below `floor` (absolute) are dropped.
Matrix range_factor(const Matrix & a, double floor);
// Default floor: 1e-14 * max(1, ||a||).
Matrix range_factor(const Matrix & a);

// Solves Y - sum_j left[j] * Y * right[j] = rhs by vectorization.
Matrix solve_stein(
  const std::vector<Matrix> & left, const std::vector<Matrix> & right, const Matrix & rhs);

// Orthonormal basis of the orthogonal complement of the columns of `basis` (assumed
// orthonormal), obtained by Gram-Schmidt on standard basis vectors in index order.
Matrix complement_basis(const Matrix & basis, Eigen::Index dim);

Matrix block_diagonal(const std::vector<Matrix> & blocks);
Matrix vstack(const std::vector<Matrix> & blocks);
Matrix hstack(const std::vector<Matrix> & blocks);

}  // namespace commlift

#endif  // COMMLIFT_LINALG_HPP_
