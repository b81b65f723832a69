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

#include "commlift/errors.hpp"
#include "commlift/hypercontraction.hpp"
#include "commlift/lifting_ball.hpp"
#include "commlift/lifting_polydisc.hpp"

#include "checks.hpp"
#include "generators.hpp"

using namespace commlift;
using namespace commlift::testing;

namespace
{

struct Solved
{
  KernelSubspace q;
  TupleOperator s;
  Matrix x;
  AglerDecomposition dec;
  PolydiscLiftResult lift;
};

Solved solve(const std::vector<int> & gamma, const PolydiscInstance & inst)
{
  Solved out;
  out.q = build_subspace(KernelSpec::polydisc(gamma), inst.nodes);
  out.s = model_tuple(out.q);
  out.x = np_target_operator(out.q, out.q, inst.targets);
  const AglerOutcome o = agler_feasibility(out.s, out.x, gamma);
  REQUIRE(o.feasible());
  out.dec = *o.decomposition;
  out.lift = lift_polydisc_model(out.q, out.q, out.x, out.dec);
  return out;
}

}  // namespace

TEST_CASE("one variable is feasible at the first check") {
  Rng rng(1);
  const std::vector<Point> nodes{polydisc_point(rng, 1, 0.8), polydisc_point(rng, 1, 0.8)};
  const auto q = build_subspace(KernelSpec::polydisc({2}), nodes);
  // values of the Schur function 0.4 - 0.3i z
  const cdouble c(0.0, -0.3);
  const Matrix x = np_target_operator(
    q, q, {scalar(0.4 + c * nodes[0](0)), scalar(0.4 + c * nodes[1](0))});
  const AglerOutcome o = agler_feasibility(model_tuple(q), x, {2});
  REQUIRE(o.feasible());
  CHECK(o.iterations == 1);
  const Matrix id = Matrix::Identity(q.dim(), q.dim());
  CHECK_MAT_NEAR(o.decomposition->g[0], id - x * x.adjoint(), 1e-8);
}

TEST_CASE("X = 0 decomposes as I/n when the transformed identities are positive") {
  Rng rng(2);
  for (const std::vector<int> & gamma : std::vector<std::vector<int>>{{1, 1}, {2, 1}, {1, 1, 1}}) {
    const int n = static_cast<int>(gamma.size());
    std::vector<Point> nodes;
    for (int j = 0; j < 3; ++j) {
      nodes.push_back(polydisc_point(rng, n, 0.7));
    }
    const auto q = build_subspace(KernelSpec::polydisc(gamma), nodes);
    const TupleOperator s = model_tuple(q);
    const Matrix id = Matrix::Identity(q.dim(), q.dim());
    for (int i = 0; i < n; ++i) {
      std::vector<int> e(gamma);
      --e[static_cast<std::size_t>(i)];
      REQUIRE(is_psd(conjugacy_difference(s, e, id)));
    }
    const AglerOutcome o = agler_feasibility(s, Matrix::Zero(q.dim(), q.dim()), gamma);
    REQUIRE(o.feasible());
    for (int i = 0; i < n; ++i) {
      CHECK_MAT_NEAR(o.decomposition->g[i], id / n, 1e-8);
    }
  }
}

TEST_CASE("three-node bidisc instance from a Schur-Agler function is feasible") {
  Rng rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 3, 0.7);
    const Solved sol = solve({1, 1}, inst);
    CHECK(sol.dec.reconstruction_residual <= 1e-8);
    for (double e : sol.dec.cone_min_eigs) {
      CHECK(e >= -1e-8);
    }
    for (double e : sol.dec.g_min_eigs) {
      CHECK(e >= -1e-8);
    }
  }
}

TEST_CASE("F operators on the bidisc") {
  Rng rng(4);
  const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 3, 0.7);
  const Solved sol = solve({1, 1}, inst);
  const auto & f = sol.lift.f_ops;
  const auto & g = sol.dec.g;
  CHECK_MAT_NEAR(f[0] * f[0], g[0] - sol.s[1] * g[0] * sol.s[1].adjoint(), 1e-9);
  CHECK_MAT_NEAR(f[1] * f[1], g[1] - sol.s[0] * g[1] * sol.s[0].adjoint(), 1e-9);
  for (int i = 0; i < 2; ++i) {
    for (int terms : {1, 5, 20, 100}) {
      const Matrix partial = sigma_sum(sol.s, f[i] * f[i], terms, i);
      CHECK(min_eigenvalue(g[i] - partial) >= -1e-8);
    }
  }
}

TEST_CASE("Hardy disc single node agrees with the ball lift at the node") {
  for (const cdouble w : {cdouble(0.5, 0.0), cdouble(-0.2, 0.6)}) {
    const cdouble z{0.3, -0.1};
    const auto q = build_subspace(KernelSpec::polydisc({1}), {pt({z})});
    const Matrix x = np_target_operator(q, q, {scalar(w)});
    const AglerOutcome o = agler_feasibility(model_tuple(q), x, {1});
    REQUIRE(o.feasible());
    const PolydiscLiftResult poly = lift_polydisc_model(q, q, x, *o.decomposition);
    const NpResult ball = np_solve(KernelSpec::ball(1, 1), {pt({z})}, {scalar(w)});
    REQUIRE(ball.feasible());
    CHECK_NEAR(poly.lift.phi(pt({z}))(0, 0), ball.lift->phi(pt({z}))(0, 0), 1e-12);
    CHECK_NEAR(poly.lift.phi(pt({z}))(0, 0), w, 1e-12);
  }
}

TEST_CASE("identity intertwiner on the bidisc") {
  Rng rng(5);
  const auto q = build_subspace(
    KernelSpec::polydisc({1, 1}), {polydisc_point(rng, 2, 0.7), polydisc_point(rng, 2, 0.7)});
  const TupleOperator s = model_tuple(q);
  const Matrix id = Matrix::Identity(q.dim(), q.dim());
  AglerDecomposition dec;
  dec.g = {Matrix::Zero(q.dim(), q.dim()), Matrix::Zero(q.dim(), q.dim())};
  const PolydiscLiftResult res = lift_polydisc(s, s, id, {1, 1}, dec);
  CHECK(res.lift.certificate.operator_residual <= 1e-9);
  const Matrix at0 = res.lift.phi(Point::Zero(2));
  CHECK_MAT_NEAR(at0, Matrix::Identity(at0.rows(), at0.cols()), 1e-9);
}

TEST_CASE("gamma = (2,1) two-node instance") {
  Rng rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 2, 0.7);
    const Solved sol = solve({2, 1}, inst);
    double worst = 0.0;
    for (std::size_t j = 0; j < inst.nodes.size(); ++j) {
      worst = std::max(worst, op_norm(sol.lift.lift.phi(inst.nodes[j]) - inst.targets[j]));
    }
    CHECK(worst <= 1e-6);
    CHECK(sol.lift.hereditary_difference_residual <= 1e-9);
  }
}

TEST_CASE("psi diagnostics") {
  Rng rng(7);
  for (int trial = 0; trial < 4; ++trial) {
    const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 2, 0.45);
    const Solved sol = solve({1, 1}, inst);
    const Colligation & coll = sol.lift.lift.colligation;
    const PsiDiagnostics diag = psi_gamma_diagnostics(
      coll, sol.s, {1, 1}, sol.lift.f_ops, sol.lift.lift.defect_s.factor, 60);
    CHECK_MAT_NEAR(diag.psi_zero, coll.c().adjoint(), 0.0);
    for (double g : diag.gamma_norms) {
      CHECK(g <= 1e-6);
    }
    CHECK(diag.embed_residual <= 1e-9);
    CHECK(diag.psi_norm <= 1.0 + 1e-8);
  }
}

TEST_CASE("psi diagnostics report slow convergence") {
  Rng rng(8);
  const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 2, 0.7);
  const Solved sol = solve({1, 1}, inst);
  CHECK_THROWS_AS(
    psi_gamma_diagnostics(
      sol.lift.lift.colligation, sol.s, {1, 1}, sol.lift.f_ops, sol.lift.lift.defect_s.factor, 2,
      1e-12),
    NotConverged);
}

TEST_CASE("compressed decompositions restart feasible") {
  Rng rng(9);
  const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 3, 0.7);
  const Solved sol = solve({1, 1}, inst);
  const std::vector<Point> sub(inst.nodes.begin(), inst.nodes.begin() + 2);
  const auto q_sub = build_subspace(KernelSpec::polydisc({1, 1}), sub);
  // Inclusion of the smaller span in orthonormal coordinates.
  Matrix embed = Matrix::Zero(sol.q.dim(), q_sub.dim());
  embed.topRows(q_sub.dim()) = Matrix::Identity(q_sub.dim(), q_sub.dim());
  const Matrix pi = sol.q.ortho_factor_inverse() * embed * q_sub.ortho_factor();
  CHECK_MAT_NEAR(pi.adjoint() * pi, Matrix::Identity(q_sub.dim(), q_sub.dim()), 1e-10);

  const Matrix x_sub = pi.adjoint() * sol.x * pi;
  CHECK_MAT_NEAR(
    x_sub, np_target_operator(q_sub, q_sub, {inst.targets[0], inst.targets[1]}), 1e-9);
  AglerOptions opts;
  opts.initial = std::vector<Matrix>{pi.adjoint() * sol.dec.g[0] * pi, pi.adjoint() * sol.dec.g[1] * pi};
  const AglerOutcome o = agler_feasibility(model_tuple(q_sub), x_sub, {1, 1}, opts);
  CHECK(o.feasible());
  CHECK(o.iterations <= 1);
}

TEST_CASE("inconclusive runs keep the best iterate") {
  Rng rng(10);
  AglerOutcome o;
  int attempts = 0;
  do {
    const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 4, 0.7);
    const auto q = build_subspace(KernelSpec::polydisc({1, 1}), inst.nodes);
    AglerOptions opts;
    opts.max_iter = 1;
    o = agler_feasibility(model_tuple(q), np_target_operator(q, q, inst.targets), {1, 1}, opts);
  } while (o.feasible() && ++attempts < 20);
  REQUIRE_FALSE(o.feasible());
  CHECK(o.iterations == 1);
  CHECK(o.last.g.size() == 2);
  const auto j = to_json(o.last);
  CHECK(j.contains("g"));
}
