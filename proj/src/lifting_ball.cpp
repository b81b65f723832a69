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

#include "commlift/lifting_ball.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>

namespace commlift
{

PositivityResult check_positivity(const TupleOperator & s, const Matrix & x, int m)
{
  if (x.rows() != s.dim()) {
    throw DimensionMismatch("check_positivity: X must map into the space of S");
  }
  if (m < 1) {
    throw ValidationError("check_positivity: m must be >= 1");
  }
  PositivityResult res;
  const Matrix id = Matrix::Identity(s.dim(), s.dim());
  res.delta_sq = hermitian_part(hereditary_ball(s, m - 1, id - x * x.adjoint()));
  res.min_eig = min_eigenvalue(res.delta_sq);
  return res;
}

void require_contractive_intertwiner(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, double tol)
{
  if (t.size() != s.size()) {
    throw DimensionMismatch("T and S have different numbers of entries");
  }
  if (x.rows() != s.dim() || x.cols() != t.dim()) {
    throw DimensionMismatch("X must map the space of T into the space of S");
  }
  const double nx = op_norm(x);
  if (nx > 1.0 + tol) {
    throw NotContraction("X is not a contraction", nx);
  }
  double worst = 0.0;
  double scale = 1.0;
  for (int i = 0; i < t.size(); ++i) {
    worst = std::max(worst, op_norm(x * t[i] - s[i] * x));
    scale = std::max({scale, op_norm(t[i]), op_norm(s[i])});
  }
  if (worst > tol * (1.0 + nx) * scale) {
    throw NotIntertwining("X T_i != S_i X", worst);
  }
}

namespace
{

// Residual of D_T X^* = A D_S + sum_j B_j Y S_j^*, Y = C D_S + sum_f D_f Y S_f^*.
double ball_operator_residual(
  const Colligation & c, const TupleOperator & s, const Matrix & x, const DefectData & dt,
  const DefectData & ds)
{
  const int n = s.size();
  const Matrix target = dt.factor * x.adjoint();
  Matrix approx = c.a() * ds.factor;
  if (c.state_out_dim() > 0) {
    std::vector<Matrix> left;
    std::vector<Matrix> right;
    for (int f = 0; f < n; ++f) {
      left.push_back(c.d_block(f));
      right.push_back(s[f].adjoint());
    }
    const Matrix y = solve_stein(left, right, c.c() * ds.factor);
    for (int j = 0; j < n; ++j) {
      approx += c.b_block(j) * y * s[j].adjoint();
    }
  }
  return op_norm(target - approx);
}

}  // namespace

LiftResult lift_ball(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, int m,
  const LiftOptions & opts)
{
  require_contractive_intertwiner(t, s, x, opts.intertwine_tol);
  const KernelSpec spec = KernelSpec::ball(s.size(), m);
  return lift_ball(t, s, x, m, defect(t, spec), defect(s, spec), opts);
}

LiftResult lift_ball(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x, int m,
  const DefectData & defect_t, const DefectData & defect_s, const LiftOptions & opts)
{
  require_contractive_intertwiner(t, s, x, opts.intertwine_tol);
  const PositivityResult pos = check_positivity(s, x, m);
  if (pos.min_eig < -psd_tolerance(pos.delta_sq, opts.psd_rel)) {
    throw NotPositive("(1 - sigma_S)^(m-1)(I - XX^*) is not positive", pos.min_eig);
  }
  LiftResult res;
  res.colligation = build_ball_colligation(s, x, defect_t, defect_s, m, opts.want_unitary, opts.psd_rel);
  res.phi = TransferFunction(res.colligation);
  res.defect_t = defect_t;
  res.defect_s = defect_s;
  res.certificate.delta_min_eig = pos.min_eig;
  res.certificate.generating_residual = res.colligation.generating_residual;
  res.certificate.identity_residual = res.colligation.identity_residual;
  res.certificate.operator_residual =
    ball_operator_residual(res.colligation, s, x, defect_t, defect_s);
  res.certificate.verify_residual = res.certificate.operator_residual;
  if (!(res.certificate.operator_residual <= opts.verify_tol)) {
    throw VerificationFailed(
            "lifted colligation does not reproduce D_T X^*", res.certificate.operator_residual);
  }
  return res;
}

double verify_lift(
  const Evaluator & phi, const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x)
{
  const Matrix action = multiplier_adjoint_action(q1, q2, phi);
  if (action.rows() != x.cols() || action.cols() != x.rows()) {
    throw DimensionMismatch("verify_lift: X does not match the kernel spans");
  }
  return op_norm(x.adjoint() - action);
}

double verify_lift(const TransferFunction & phi, const KernelSubspace & q2, const Matrix & x)
{
  return verify_lift(phi.evaluator(), q2, q2, x);
}

LiftResult lift_ball_model(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x,
  const LiftOptions & opts)
{
  if (q1.spec().geometry != Geometry::Ball || q2.spec().geometry != Geometry::Ball ||
    q1.spec().m != q2.spec().m || q1.spec().n != q2.spec().n)
  {
    throw ValidationError("lift_ball_model: both spans must live in the same ball space");
  }
  const TupleOperator t = model_tuple(q1);
  const TupleOperator s = model_tuple(q2);
  LiftResult res = lift_ball(t, s, x, q2.spec().m, model_defect(q1), model_defect(q2), opts);
  res.certificate.verify_residual = verify_lift(res.phi.evaluator(), q1, q2, x);
  if (!(res.certificate.verify_residual <= opts.verify_tol)) {
    throw VerificationFailed("M_Phi^* does not reproduce X^*", res.certificate.verify_residual);
  }
  return res;
}

NpResult np_solve(
  const KernelSpec & spec, const std::vector<Point> & nodes, const std::vector<Matrix> & targets,
  const LiftOptions & opts)
{
  if (spec.geometry != Geometry::Ball) {
    throw ValidationError("np_solve expects a ball kernel");
  }
  if (targets.size() != nodes.size() || targets.empty()) {
    throw DimensionMismatch("np_solve: one target per node required");
  }
  const auto d2 = targets.front().rows();
  const auto d1 = targets.front().cols();
  NpResult res;
  res.q1 = build_subspace(spec.with_coeff_dim(static_cast<int>(d1)), nodes);
  res.q2 = build_subspace(spec.with_coeff_dim(static_cast<int>(d2)), nodes);
  res.x = np_target_operator(res.q1, res.q2, targets);
  res.pick1_min_eig = min_eigenvalue(pick_matrix(spec, nodes, targets));
  res.pick2_min_eig = min_eigenvalue(pick_matrix(KernelSpec::ball(spec.n, 1), nodes, targets));

  const double nx = op_norm(res.x);
  const PositivityResult pos = check_positivity(model_tuple(res.q2), res.x, spec.m);
  if (nx > 1.0 + opts.intertwine_tol) {
    res.infeasible = Infeasible{"positivity-1", res.pick1_min_eig, pos.min_eig};
    return res;
  }
  if (pos.min_eig < -psd_tolerance(pos.delta_sq, opts.psd_rel)) {
    res.infeasible = Infeasible{"positivity-2", res.pick2_min_eig, pos.min_eig};
    return res;
  }
  res.lift = lift_ball_model(res.q1, res.q2, res.x, opts);
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    res.node_residual = std::max(
      res.node_residual, op_norm(res.lift->phi.eval(nodes[j]) - targets[j]));
  }
  return res;
}

DilationResult dilate_p_to_m(const KernelSubspace & q2, int m)
{
  const KernelSpec & sp = q2.spec();
  if (sp.geometry != Geometry::Ball) {
    throw ValidationError("dilate_p_to_m: expects a ball kernel span");
  }
  if (!(sp.m > m) || m < 1) {
    throw ValidationError("dilate_p_to_m: requires p > m >= 1");
  }
  if (!q2.is_standard()) {
    throw ValidationError("dilate_p_to_m: expects a standard kernel span");
  }
  DilationResult res;
  res.f_space = build_subspace(KernelSpec::ball(sp.n, sp.m - m, sp.d_e), q2.nodes());
  // xi_{j,a}: orthonormal coordinates of K_{p-m}(., z_j) e_a in the F span.
  const Matrix directions = res.f_space.ortho_factor_inverse();
  res.image = KernelSubspace::build_general(
    KernelSpec::ball(sp.n, m, static_cast<int>(res.f_space.dim())), q2.nodes(), q2.node_of(),
    directions);
  res.pi = res.image.ortho_factor_inverse() * q2.ortho_factor();
  res.s_prime = model_tuple(res.image);
  res.gram_residual = (res.image.gram() - q2.gram()).cwiseAbs().maxCoeff();
  res.isometry_residual =
    op_norm(res.pi.adjoint() * res.pi - Matrix::Identity(q2.dim(), q2.dim()));
  const TupleOperator s = model_tuple(q2);
  for (int i = 0; i < s.size(); ++i) {
    res.intertwining_residual = std::max(
      res.intertwining_residual,
      op_norm(res.pi * s[i].adjoint() - res.s_prime[i].adjoint() * res.pi));
  }
  return res;
}

PmLiftResult lift_p_gt_m(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x, const LiftOptions & opts)
{
  if (q1.spec().geometry != Geometry::Ball || q2.spec().geometry != Geometry::Ball ||
    q1.spec().n != q2.spec().n)
  {
    throw ValidationError("lift_p_gt_m: both spans must be ball kernel spans");
  }
  const int m = q1.spec().m;
  const TupleOperator t = model_tuple(q1);
  const TupleOperator s = model_tuple(q2);
  require_contractive_intertwiner(t, s, x, opts.intertwine_tol);

  PmLiftResult res;
  const PositivityResult pos = check_positivity(s, x, m);
  res.delta_min_eig = pos.min_eig;
  if (pos.min_eig < -psd_tolerance(pos.delta_sq, opts.psd_rel)) {
    throw NotPositive("(1 - sigma_S)^(m-1)(I - XX^*) is not positive", pos.min_eig);
  }
  res.dilation = dilate_p_to_m(q2, m);
  const Matrix x_tilde = res.dilation.pi * x;
  res.delta_min_eig_tilde = check_positivity(res.dilation.s_prime, x_tilde, m).min_eig;

  res.lift1 = lift_ball(
    t, res.dilation.s_prime, x_tilde, m, model_defect(q1), model_defect(res.dilation.image),
    opts);
  res.lift1.certificate.verify_residual =
    verify_lift(res.lift1.phi.evaluator(), q1, res.dilation.image, x_tilde);

  const KernelSubspace f_space = res.dilation.f_space;
  res.phi2 = [f_space](const Point & w) {return f_space.evaluation(w);};
  const TransferFunction phi1 = res.lift1.phi;
  const Evaluator phi2 = res.phi2;
  res.composite = [phi1, phi2](const Point & w) {return Matrix(phi2(w) * phi1.eval(w));};
  res.composite_residual = verify_lift(res.composite, q1, q2, x);
  if (!(res.composite_residual <= opts.verify_tol)) {
    throw VerificationFailed("composite multiplier does not reproduce X^*", res.composite_residual);
  }
  return res;
}

CertificateResult factorization_criterion(
  const Evaluator & phi, int m, int p, const std::vector<Point> & samples, double tol)
{
  if (!(p > m - 1) || m < 1) {
    throw ValidationError("factorization_criterion: requires p >= m >= 1");
  }
  CertificateResult res;
  if (samples.empty()) {
    res.pass = true;
    return res;
  }
  const int n = static_cast<int>(samples.front().size());
  const KernelSpec kq = KernelSpec::ball(n, p - m + 1);
  const KernelSpec k1 = KernelSpec::ball(n, 1);
  std::vector<Matrix> values;
  for (const auto & u : samples) {
    values.push_back(phi(u));
  }
  const auto d = values.front().rows();
  const auto r = static_cast<Eigen::Index>(samples.size());
  Matrix big(r * d, r * d);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      big.block(i * d, j * d, d, d) =
        kernel_eval(kq, samples[i], samples[j]) * Matrix::Identity(d, d) -
        kernel_eval(k1, samples[i], samples[j]) * values[i] * values[j].adjoint();
    }
  }
  res.min_eig = min_eigenvalue(big);
  res.pass = res.min_eig >= -tol;
  return res;
}

}  // namespace commlift
