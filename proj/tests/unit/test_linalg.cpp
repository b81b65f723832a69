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

#include "checks.hpp"
#include "generators.hpp"

using namespace commlift;
using namespace commlift::testing;

TEST_CASE("psd_sqrt squares back and clips tiny negatives") {
  Rng rng(1);
  const Matrix a = gauss_matrix(rng, 5, 3);
  const Matrix p = a * a.adjoint();
  const Matrix r = psd_sqrt(p);
  CHECK_MAT_NEAR(r * r, p, 1e-10);
  CHECK(min_eigenvalue(r) >= -1e-12);
  Matrix q = Matrix::Identity(2, 2);
  q(1, 1) = -1e-15;
  CHECK(min_eigenvalue(psd_sqrt(q)) >= 0.0);
}

TEST_CASE("range_factor reproduces the PSD part") {
  Rng rng(2);
  const Matrix a = gauss_matrix(rng, 6, 2);
  const Matrix p = a * a.adjoint();
  const Matrix f = range_factor(p);
  CHECK(f.rows() == 2);
  CHECK_MAT_NEAR(f.adjoint() * f, p, 1e-10);
}

TEST_CASE("solve_stein against the fixed-point series") {
  Rng rng(3);
  std::vector<Matrix> left;
  std::vector<Matrix> right;
  for (int j = 0; j < 2; ++j) {
    left.push_back(0.4 * gauss_matrix(rng, 3, 3) / 3.0);
    right.push_back(0.4 * gauss_matrix(rng, 4, 4) / 4.0);
  }
  const Matrix rhs = gauss_matrix(rng, 3, 4);
  const Matrix y = solve_stein(left, right, rhs);
  Matrix resid = y - rhs;
  Matrix iter = rhs;
  for (int k = 0; k < 200; ++k) {
    Matrix next = rhs;
    for (int j = 0; j < 2; ++j) {
      next += left[j] * iter * right[j];
    }
    iter = next;
  }
  CHECK_MAT_NEAR(y, iter, 1e-10);
  for (int j = 0; j < 2; ++j) {
    resid -= left[j] * y * right[j];
  }
  CHECK(op_norm(resid) <= 1e-12);
}

TEST_CASE("complement_basis completes to a unitary deterministically") {
  Rng rng(4);
  const Matrix q = gauss_matrix(rng, 5, 2).householderQr().householderQ() * Matrix::Identity(5, 2);
  const Matrix c = complement_basis(q, 5);
  REQUIRE(c.cols() == 3);
  Matrix full(5, 5);
  full << q, c;
  CHECK_MAT_NEAR(full.adjoint() * full, Matrix::Identity(5, 5), 1e-12);
  CHECK(complement_basis(q, 5) == c);
  CHECK(complement_basis(Matrix(3, 0), 3) == Matrix::Identity(3, 3));
}

TEST_CASE("block helpers") {
  const Matrix a = Matrix::Constant(1, 2, 1.0);
  const Matrix b = Matrix::Constant(2, 1, 2.0);
  const Matrix d = block_diagonal({a, b});
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 3);
  CHECK(d(0, 2) == cdouble(0.0));
  CHECK(d(2, 2) == cdouble(2.0));
  CHECK(vstack({a, a}).rows() == 2);
  CHECK(hstack({b, b}).cols() == 2);
  CHECK(min_eigenvalue(Matrix(0, 0)) == std::numeric_limits<double>::infinity());
}
