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

#ifndef COMMLIFT_LIFTING_BALL_HPP_
#define COMMLIFT_LIFTING_BALL_HPP_

#include "commlift/colligation.hpp"
#include "commlift/hypercontraction.hpp"
#include "commlift/model_space.hpp"
#include "commlift/transfer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace commlift
{

struct LiftOptions
{
  double verify_tol = 1e-7;
  // Relative tolerance for X T_i = S_i X and ||X|| <= 1.
  double intertwine_tol = 1e-10;
  // Relative PSD tolerance for positivity decisions.
  double psd_rel = kPsdRel;
  bool want_unitary = true;
};

struct LiftCertificate
{
  double delta_min_eig = 0.0;
  double generating_residual = 0.0;
  double identity_residual = 0.0;
  // ||D_T X^* - (A D_S + sum_j B_j Y S_j^*)|| with Y the fixed point of the state recursion.
  double operator_residual = 0.0;
  // Kernel-action residual ||X^* - M_Phi^*|_Q2|| when model spaces are known, otherwise
  // equal to operator_residual.
  double verify_residual = 0.0;
};

struct LiftResult
{
  TransferFunction phi;
  LiftCertificate certificate;
  Colligation colligation;
  DefectData defect_t;
  DefectData defect_s;
};

struct PositivityResult
{
  double min_eig = 0.0;
  Matrix delta_sq;
};

PositivityResult check_positivity(const TupleOperator & s, const Matrix & x, int m);

// Checks ||X|| <= 1 and X T_i = S_i X; throws NotContraction / NotIntertwining.
void require_contractive_intertwiner(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, double tol);

// General form: defects are taken from the hereditary operators of T and S.
LiftResult lift_ball(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, int m,
  const LiftOptions & opts = {});
// Explicit defect factors (e.g. evaluation at the origin on model spaces).
LiftResult lift_ball(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, int m,
  const DefectData & defect_t, const DefectData & defect_s, const LiftOptions & opts = {});

// ||X^* - M_Phi^*|_{Q2}|| with M_Phi^* mapping Q2 into Q1.
double verify_lift(
  const Evaluator & phi, const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x);
double verify_lift(const TransferFunction & phi, const KernelSubspace & q2, const Matrix & x);

// Model-space lift: T, S and the defects come from Q1 and Q2.
LiftResult lift_ball_model(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x,
  const LiftOptions & opts = {});

struct Infeasible
{
  std::string violated;   // "positivity-1" or "positivity-2"
  double min_eig = 0.0;   // of the violated Pick matrix
  double delta_min_eig = 0.0;
};

struct NpResult
{
  std::optional<LiftResult> lift;
  std::optional<Infeasible> infeasible;
  double pick1_min_eig = 0.0;   // [K_m(z_i,z_j)(I - W_i W_j^*)]
  double pick2_min_eig = 0.0;   // [K_1(z_i,z_j)(I - W_i W_j^*)]
  double node_residual = 0.0;   // max_j ||Phi(z_j) - W_j||
  KernelSubspace q1;
  KernelSubspace q2;
  Matrix x;

  bool feasible() const {return lift.has_value();}
};

// Ball Nevanlinna-Pick problem Phi(z_j) = W_j with W_j : C^{d1} -> C^{d2}.
NpResult np_solve(
  const KernelSpec & spec, const std::vector<Point> & nodes, const std::vector<Matrix> & targets,
  const LiftOptions & opts = {});

struct DilationResult
{
  KernelSubspace f_space;   // span of K_{p-m}(., z_j) e_a
  KernelSubspace image;     // span of K_m(., z_j) xi_{j,a} in H_m(F)
  Matrix pi;                // Q2 -> image, orthonormal coordinates
  TupleOperator s_prime;
  double gram_residual = 0.0;
  double isometry_residual = 0.0;
  double intertwining_residual = 0.0;
};

DilationResult dilate_p_to_m(const KernelSubspace & q2, int m);

struct PmLiftResult
{
  LiftResult lift1;
  DilationResult dilation;
  Evaluator phi2;
  Evaluator composite;
  double delta_min_eig = 0.0;         // for X on Q2
  double delta_min_eig_tilde = 0.0;   // for pi X on the image
  double composite_residual = 0.0;
};

PmLiftResult lift_p_gt_m(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x,
  const LiftOptions & opts = {});

CertificateResult factorization_criterion(
  const Evaluator & phi, int m, int p, const std::vector<Point> & samples, double tol);

}  // namespace commlift

#endif  // COMMLIFT_LIFTING_BALL_HPP_
