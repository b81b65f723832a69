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
#include "commlift/model_space.hpp"

#include "checks.hpp"
#include "generators.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>

using namespace commlift;
using namespace commlift::testing;

namespace
{

std::vector<double> sorted_parts(const Eigen::VectorXcd & v)
{
  std::vector<double> out;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    out.push_back(v(i).real() * 1000.0 + v(i).imag());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("Gram matrix of single-node spans") {
  const auto q0 = build_subspace(KernelSpec::ball(2, 1), {Point::Zero(2)});
  CHECK_MAT_NEAR(q0.gram(), Matrix::Identity(1, 1), 1e-15);
  const double c = std::sqrt(0.25);
  const auto q1 = build_subspace(KernelSpec::ball(2, 1), {pt({c, c})});
  CHECK_NEAR(q1.gram()(0, 0), cdouble(2.0), 1e-14);
  CHECK_MAT_NEAR(
    q1.ortho_factor().adjoint() * q1.gram() * q1.ortho_factor(), Matrix::Identity(1, 1), 1e-14);
}

TEST_CASE("coincident nodes are rejected as ill conditioned") {
  const Point z = pt({0.3, -0.1});
  CHECK_THROWS_AS(build_subspace(KernelSpec::ball(2, 1), {z, z}), IllConditioned);
}

TEST_CASE("model tuple of a single node is the node") {
  const cdouble z{0.4, -0.3};
  const auto q = build_subspace(KernelSpec::ball(1, 2), {pt({z})});
  const TupleOperator s = model_tuple(q);
  CHECK_NEAR(s[0](0, 0), z, 1e-14);
}

TEST_CASE("model tuple adjoints have the conjugate node coordinates as eigenvalues") {
  Rng rng(9);
  std::vector<Point> nodes;
  for (int j = 0; j < 4; ++j) {
    nodes.push_back(polydisc_point(rng, 2, 0.8));
  }
  const auto q = build_subspace(KernelSpec::polydisc({1, 2}), nodes);
  const TupleOperator s = model_tuple(q);
  for (int i = 0; i < 2; ++i) {
    Eigen::VectorXcd expected(4);
    for (int j = 0; j < 4; ++j) {
      expected(j) = std::conj(nodes[j](i));
    }
    const Eigen::VectorXcd got = Eigen::ComplexEigenSolver<Matrix>(s[i].adjoint()).eigenvalues();
    const auto a = sorted_parts(got);
    const auto b = sorted_parts(expected);
    for (std::size_t k = 0; k < a.size(); ++k) {
      CHECK(a[k] == doctest::Approx(b[k]).epsilon(1e-9));
    }
  }
  CHECK(s.commutator_defect() <= 1e-12 * static_cast<double>(s.dim()));
}

TEST_CASE("nodes on a coordinate axis give zero shifts in the other coordinates") {
  const auto q = build_subspace(
    KernelSpec::ball(3, 1), {pt({0.1, 0.0, 0.0}), pt({-0.5, 0.0, 0.0}), pt({{0.2, 0.3}, 0.0, 0.0})});
  const TupleOperator s = model_tuple(q);
  CHECK(op_norm(s[1]) == 0.0);
  CHECK(op_norm(s[2]) == 0.0);
}

TEST_CASE("np_target_operator trivial targets") {
  Rng rng(10);
  std::vector<Point> nodes{ball_point(rng, 2, 0.7), ball_point(rng, 2, 0.7)};
  const KernelSpec spec = KernelSpec::ball(2, 2, 2);
  const auto q = build_subspace(spec, nodes);
  const Matrix zero = np_target_operator(q, q, {Matrix::Zero(2, 2), Matrix::Zero(2, 2)});
  CHECK(op_norm(zero) <= 1e-14);
  const Matrix id = np_target_operator(q, q, {Matrix::Identity(2, 2), Matrix::Identity(2, 2)});
  CHECK_MAT_NEAR(id, Matrix::Identity(q.dim(), q.dim()), 1e-12);
}

TEST_CASE("contractivity of X matches the weighted Pick matrix") {
  Rng rng(12);
  int compared = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 3;
    const int r = 1 + trial % 3;
    std::vector<Point> nodes;
    std::vector<Matrix> w;
    for (int j = 0; j < r; ++j) {
      nodes.push_back(ball_point(rng, 2, 0.9));
      w.push_back(scalar(std::polar(unif(rng, 0.0, 1.2), unif(rng, 0.0, 6.3))));
    }
    const KernelSpec spec = KernelSpec::ball(2, m);
    const double eig = min_eigenvalue(brute_pick(spec, nodes, w));
    if (std::abs(eig) < 1e-6 || min_eigenvalue(brute_gram(spec, nodes, 1)) < 1e-6) {
      continue;
    }
    ++compared;
    const auto q = build_subspace(spec, nodes);
    const double nx = op_norm(np_target_operator(q, q, w));
    CHECK((nx <= 1.0) == (eig >= 0.0));
  }
  CHECK(compared > 100);
}

TEST_CASE("pick_matrix equals entrywise assembly") {
  Rng rng(13);
  std::vector<Point> nodes{ball_point(rng, 2, 0.8), ball_point(rng, 2, 0.8)};
  std::vector<Matrix> w{gauss_matrix(rng, 2, 3), gauss_matrix(rng, 2, 3)};
  const KernelSpec spec = KernelSpec::ball(2, 2);
  CHECK_MAT_NEAR(pick_matrix(spec, nodes, w), brute_pick(spec, nodes, w), 1e-12);
}

TEST_CASE("multiplier action of a constant is the blockwise adjoint") {
  Rng rng(14);
  std::vector<Point> nodes{ball_point(rng, 2, 0.8), ball_point(rng, 2, 0.8)};
  const KernelSpec spec = KernelSpec::ball(2, 1, 2);
  const auto q = build_subspace(spec, nodes);
  const Matrix c = 0.5 * gauss_matrix(rng, 2, 2);
  // <M_C^* k_q xi, k_p eta> = K(z_p, z_q) eta^* C^* xi
  Matrix form(4, 4);
  for (int p = 0; p < 2; ++p) {
    for (int s = 0; s < 2; ++s) {
      form.block(2 * p, 2 * s, 2, 2) = kernel_eval(spec, nodes[p], nodes[s]) * c.adjoint();
    }
  }
  const Matrix l = q.ortho_factor();
  const Matrix act = multiplier_adjoint_action(q, [&](const Point &) {return c;});
  CHECK_MAT_NEAR(act, l.adjoint() * form * l, 1e-12);
}

TEST_CASE("multiplication by a coordinate acts as the model shift") {
  Rng rng(15);
  std::vector<Point> nodes;
  for (int j = 0; j < 3; ++j) {
    nodes.push_back(polydisc_point(rng, 2, 0.7));
  }
  const auto q = build_subspace(KernelSpec::polydisc({1, 1}), nodes);
  const TupleOperator s = model_tuple(q);
  const Matrix act = multiplier_adjoint_action(q, [](const Point & z) {return scalar(z(0));});
  CHECK_MAT_NEAR(act, s[0].adjoint(), 1e-12);
}

TEST_CASE("multiplier action of a solved interpolant reproduces X adjoint") {
  Rng rng(16);
  const BallInstance inst = solvable_ball_instance(rng, 2, 2, 3, 1, 1);
  const NpResult res = np_solve(KernelSpec::ball(2, 2), inst.nodes, inst.targets);
  REQUIRE(res.feasible());
  const Matrix act = multiplier_adjoint_action(res.q1, res.q2, res.lift->phi.evaluator());
  CHECK_MAT_NEAR(act, res.x.adjoint(), 1e-8);
}

TEST_CASE("model tuples are hypercontractive") {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> nodes;
    for (int j = 0; j < 3; ++j) {
      nodes.push_back(ball_point(rng, 2, 0.95));
    }
    const auto q = build_subspace(KernelSpec::ball(2, 1), nodes);
    const TupleOperator s = model_tuple(q);
    // rank one on a 3-node span: PSD, not definite
    const Matrix h = hereditary_ball(s, 1);
    CHECK(is_psd(h));
    const Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
    CHECK((eig.eigenvalues().array() > 1e-10).count() == 1);
    const auto q1 = build_subspace(KernelSpec::ball(2, 1), {nodes[0]});
    CHECK(min_eigenvalue(hereditary_ball(model_tuple(q1), 1)) ==
      doctest::Approx(1.0 - nodes[0].squaredNorm()).epsilon(1e-10));

    std::vector<Point> pnodes;
    for (int j = 0; j < 3; ++j) {
      pnodes.push_back(polydisc_point(rng, 2, 0.9));
    }
    const std::vector<int> gamma{1 + trial % 2, 1};
    const auto qp = build_subspace(KernelSpec::polydisc(gamma), pnodes);
    CHECK(is_psd(hereditary_polydisc(model_tuple(qp), gamma)));
  }
}
