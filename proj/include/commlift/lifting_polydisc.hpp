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

#ifndef COMMLIFT_LIFTING_POLYDISC_HPP_
#define COMMLIFT_LIFTING_POLYDISC_HPP_

#include "commlift/colligation.hpp"
#include "commlift/hypercontraction.hpp"
#include "commlift/lifting_ball.hpp"
#include "commlift/model_space.hpp"
#include "commlift/transfer.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace commlift
{

struct AglerDecomposition
{
  std::vector<Matrix> g;
  double reconstruction_residual = 0.0;
  std::vector<double> g_min_eigs;
  std::vector<double> cone_min_eigs;
  int iterations = 0;
};

struct AglerOptions
{
  double tol = 1e-8;
  int max_iter = 10000;
  // Iterates are accepted once every transformed block has min eig >= -accept_rel * (1 + ||P||).
  double accept_rel = 1e-12;
  // Starting point; defaults to G_i = (I - XX^*) / n.
  std::optional<std::vector<Matrix>> initial;
};

struct AglerOutcome
{
  std::optional<AglerDecomposition> decomposition;
  // Best iterate when inconclusive.
  AglerDecomposition last;
  int iterations = 0;
  double affine_residual = 0.0;
  double worst_cone_eig = 0.0;

  bool feasible() const {return decomposition.has_value();}
};

// L_i(G) = prod_{j != i} (1 - C_{S_j})^{gamma_j} (1 - C_{S_i})^{gamma_i - 1} (G).
Matrix agler_transform(
  const TupleOperator & s, const std::vector<int> & gamma, int i, const Matrix & g);
// Inverse of agler_transform through Stein solves.
Matrix agler_transform_inverse(
  const TupleOperator & s, const std::vector<int> & gamma, int i, const Matrix & h);

// Alternating projections on H_i = L_i(G_i): the affine set sum_i L_i^{-1}(H_i) = I - XX^*
// and the PSD cones H_i >= 0. Since L_i^{-1} is a positive map, G_i >= 0 follows.
AglerOutcome agler_feasibility(
  const TupleOperator & s, const Matrix & x, const std::vector<int> & gamma,
  const AglerOptions & opts = {});

std::vector<Matrix> f_operators(
  const TupleOperator & s, const Matrix & x, const std::vector<int> & gamma,
  const AglerDecomposition & dec, double tol = 1e-8);

struct PolydiscLiftResult
{
  LiftResult lift;
  AglerDecomposition decomposition;
  std::vector<Matrix> f_ops;
  double hereditary_difference_residual = 0.0;
};

PolydiscLiftResult lift_polydisc(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x,
  const std::vector<int> & gamma, const AglerDecomposition & dec, const DefectData & defect_t,
  const DefectData & defect_s, const LiftOptions & opts = {});
PolydiscLiftResult lift_polydisc(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x,
  const std::vector<int> & gamma, const AglerDecomposition & dec, const LiftOptions & opts = {});
// Model-space lift with kernel-action verification.
PolydiscLiftResult lift_polydisc_model(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x,
  const AglerDecomposition & dec, const LiftOptions & opts = {});

struct PsiDiagnostics
{
  std::vector<double> gamma_norms;   // ||F_j^* - pi_S^* Psi_j||
  double embed_residual = 0.0;       // right recursion residual over all |alpha| <= N
  double psi_norm = 0.0;             // norm of the truncated (Psi_1, ..., Psi_n)
  double tail = 0.0;                 // last-degree contribution to pi_S^* Psi
  Matrix psi_zero;                   // degree-0 coefficient
};

PsiDiagnostics psi_gamma_diagnostics(
  const Colligation & coll, const TupleOperator & s, const std::vector<int> & gamma,
  const std::vector<Matrix> & f_ops, const Matrix & defect_s_factor, int degree,
  double tail_tol = 1e-6);

nlohmann::json to_json(const AglerDecomposition & dec);

}  // namespace commlift

#endif  // COMMLIFT_LIFTING_POLYDISC_HPP_
