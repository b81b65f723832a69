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

#ifndef COMMLIFT_HYPERCONTRACTION_HPP_
#define COMMLIFT_HYPERCONTRACTION_HPP_

#include "commlift/kernel.hpp"
#include "commlift/linalg.hpp"
#include "commlift/model_space.hpp"

#include <map>
#include <optional>
#include <vector>

namespace commlift
{

struct DefectData
{
  Matrix defect_square;      // hereditary positivity operator
  Matrix defect;             // its PSD square root
  Eigen::Index range_dim = 0;
  // factor^* factor == defect_square; rows index the defect space coordinates.
  Matrix factor;
};

Matrix cp_map(const TupleOperator & t, const Matrix & a);

// (1 - sigma_T)^i(A); the one-argument form uses A = I.
Matrix hereditary_ball(const TupleOperator & t, int i);
Matrix hereditary_ball(const TupleOperator & t, int i, const Matrix & a);

// sum_{k <= gamma} c_k T^k T^{*k} with c_k from inverse_kernel_coeffs.
Matrix hereditary_polydisc(const TupleOperator & t, const std::vector<int> & gamma);
// prod_j (1 - C_{T_j})^{e_j}(A) for exponents e_j >= 0, with C_X(A) = X A X^*.
Matrix conjugacy_difference(
  const TupleOperator & t, const std::vector<int> & exponents, const Matrix & a);

// Hereditary positivity operator of the given geometry at the identity.
Matrix hereditary(const TupleOperator & t, const KernelSpec & spec);

// PSD square root and range factor of the hereditary operator. Throws
// NotHypercontraction with the offending minimum eigenvalue.
DefectData defect(const TupleOperator & t, const KernelSpec & spec);
// Defect data of a model tuple using the exact factor f -> f(0).
DefectData model_defect(const KernelSubspace & q);
DefectData defect_from_factor(const Matrix & factor, const Matrix & defect_square);

enum class PurityStatus { Pure, NotPure, Inconclusive };

struct PurityReport
{
  PurityStatus status = PurityStatus::Inconclusive;
  std::vector<double> decay;
  bool pure() const {return status == PurityStatus::Pure;}
};

PurityReport purity_check(
  const TupleOperator & t, const KernelSpec & spec, double tol = 1e-12, int cap = 200);

// Truncated sum prod_{j != skip} Sigma_{T_j}^N (A), Sigma_X^N(A) = sum_{k<N} X^k A X^{*k}.
Matrix sigma_sum(
  const TupleOperator & t, const Matrix & a, int terms, std::optional<int> skip = std::nullopt);
// Limit of the above as N grows; stops when increments fall below tol.
Matrix sigma_sum_limit(
  const TupleOperator & t, const Matrix & a, std::optional<int> skip = std::nullopt,
  double tol = 1e-12, int cap = 500);

// Coefficients rho(k) D T^{*k} h of the canonical dilation for |k| <= max_order.
std::map<MultiIndex, Vector> dilation_coefficients(
  const TupleOperator & t, const KernelSpec & spec, const Vector & h, int max_order);
std::map<MultiIndex, Vector> dilation_coefficients(
  const TupleOperator & t, const KernelSpec & spec, const DefectData & d, const Vector & h,
  int max_order);

// sum_k ||coef(k)||^2 / rho(k).
double dilation_norm_squared(
  const std::map<MultiIndex, Vector> & coeffs, const KernelSpec & spec);

// T^k for a multi-index k.
Matrix tuple_power(const TupleOperator & t, const MultiIndex & k);

}  // namespace commlift

#endif  // COMMLIFT_HYPERCONTRACTION_HPP_
