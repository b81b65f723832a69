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

#include "commlift/linalg.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace commlift
{

Matrix hermitian_part(const Matrix & a)
{
  return (a + a.adjoint()) * 0.5;
}

HermitianEig hermitian_eig(const Matrix & a)
{
  HermitianEig out;
  if (a.rows() == 0) {
    out.values = RealVector(0);
    out.vectors = Matrix(0, 0);
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  return out;
}

double min_eigenvalue(const Matrix & a)
{
  if (a.rows() == 0) {
    return std::numeric_limits<double>::infinity();
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double op_norm(const Matrix & a)
{
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double psd_tolerance(const Matrix & a, double rel)
{
  return rel * (1.0 + op_norm(a));
}

bool is_psd(const Matrix & a, double rel)
{
  return min_eigenvalue(a) >= -psd_tolerance(a, rel);
}

Matrix psd_sqrt(const Matrix & a)
{
  const auto eig = hermitian_eig(a);
  RealVector s = eig.values.cwiseMax(0.0).cwiseSqrt();
  return eig.vectors * s.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

Matrix range_factor(const Matrix & a, double floor)
{
  const auto eig = hermitian_eig(a);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = eig.values.size() - 1; i >= 0; --i) {
    if (eig.values(i) > floor) {
      keep.push_back(i);
    }
  }
  Matrix f(static_cast<Eigen::Index>(keep.size()), a.cols());
  for (std::size_t r = 0; r < keep.size(); ++r) {
    const auto i = keep[r];
    f.row(static_cast<Eigen::Index>(r)) =
      std::sqrt(eig.values(i)) * eig.vectors.col(i).adjoint();
  }
  return f;
}

Matrix range_factor(const Matrix & a)
{
  return range_factor(a, 1e-14 * std::max(1.0, op_norm(a)));
}

Matrix solve_stein(
  const std::vector<Matrix> & left, const std::vector<Matrix> & right, const Matrix & rhs)
{
  if (left.size() != right.size()) {
    throw DimensionMismatch("solve_stein: operand lists differ in length");
  }
  const auto p = rhs.rows();
  const auto q = rhs.cols();
  const auto nn = p * q;
  if (nn == 0) {
    return rhs;
  }
  // vec(L Y R) = (R^T kron L) vec(Y), column-major vec.
  Matrix sys = Matrix::Identity(nn, nn);
  for (std::size_t j = 0; j < left.size(); ++j) {
    const Matrix & l = left[j];
    const Matrix & r = right[j];
    for (Eigen::Index b = 0; b < q; ++b) {
      for (Eigen::Index a = 0; a < q; ++a) {
        const cdouble rab = r(a, b);
        if (rab == cdouble(0.0)) {
          continue;
        }
        sys.block(b * p, a * p, p, p) -= rab * l;
      }
    }
  }
  Eigen::Map<const Vector> vec_rhs(rhs.data(), nn);
  Vector y = sys.partialPivLu().solve(Vector(vec_rhs));
  return Eigen::Map<Matrix>(y.data(), p, q);
}

Matrix complement_basis(const Matrix & basis, Eigen::Index dim)
{
  const Eigen::Index have = basis.cols();
  const Eigen::Index want = dim - have;
  Matrix out(dim, std::max<Eigen::Index>(want, 0));
  if (want <= 0) {
    return out;
  }
  Matrix current(dim, dim);
  current.leftCols(have) = basis;
  Eigen::Index count = have;
  const double accept = 0.5 / std::sqrt(static_cast<double>(dim));
  for (Eigen::Index i = 0; i < dim && count < dim; ++i) {
    Vector v = Vector::Unit(dim, i);
    for (int pass = 0; pass < 2; ++pass) {
      v -= current.leftCols(count) * (current.leftCols(count).adjoint() * v);
    }
    const double nv = v.norm();
    if (nv > accept) {
      current.col(count++) = v / nv;
    }
  }
  out = current.middleCols(have, count - have);
  return out;
}

Matrix block_diagonal(const std::vector<Matrix> & blocks)
{
  Eigen::Index rows = 0;
  Eigen::Index cols = 0;
  for (const auto & b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  Matrix out = Matrix::Zero(rows, cols);
  Eigen::Index r = 0;
  Eigen::Index c = 0;
  for (const auto & b : blocks) {
    out.block(r, c, b.rows(), b.cols()) = b;
    r += b.rows();
    c += b.cols();
  }
  return out;
}

Matrix vstack(const std::vector<Matrix> & blocks)
{
  Eigen::Index rows = 0;
  const Eigen::Index cols = blocks.empty() ? 0 : blocks.front().cols();
  for (const auto & b : blocks) {
    if (b.cols() != cols) {
      throw DimensionMismatch("vstack: column counts differ");
    }
    rows += b.rows();
  }
  Matrix out(rows, cols);
  Eigen::Index r = 0;
  for (const auto & b : blocks) {
    out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

Matrix hstack(const std::vector<Matrix> & blocks)
{
  Eigen::Index cols = 0;
  const Eigen::Index rows = blocks.empty() ? 0 : blocks.front().rows();
  for (const auto & b : blocks) {
    if (b.rows() != rows) {
      throw DimensionMismatch("hstack: row counts differ");
    }
    cols += b.cols();
  }
  Matrix out(rows, cols);
  Eigen::Index c = 0;
  for (const auto & b : blocks) {
    out.middleCols(c, b.cols()) = b;
    c += b.cols();
  }
  return out;
}

}  // namespace commlift
