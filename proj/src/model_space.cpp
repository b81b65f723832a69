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

#include "commlift/model_space.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace commlift
{

TupleOperator::TupleOperator(std::vector<Matrix> t)
: ops(std::move(t))
{
  for (const auto & op : ops) {
    if (op.rows() != op.cols() || op.rows() != ops.front().rows()) {
      throw DimensionMismatch("tuple entries must be square of equal size");
    }
  }
}

double TupleOperator::commutator_defect() const
{
  double worst = 0.0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    for (std::size_t j = i + 1; j < ops.size(); ++j) {
      worst = std::max(worst, op_norm(ops[i] * ops[j] - ops[j] * ops[i]));
    }
  }
  return worst;
}

void TupleOperator::require_commuting(double tol) const
{
  double scale = 0.0;
  for (const auto & op : ops) {
    scale = std::max(scale, op_norm(op));
  }
  const double defect = commutator_defect();
  if (defect > tol * (1.0 + scale * scale)) {
    throw ValidationError("tuple does not commute (defect " + std::to_string(defect) + ")");
  }
}

KernelSubspace KernelSubspace::build(const KernelSpec & spec, std::vector<Point> nodes)
{
  const int de = spec.d_e;
  const int r = static_cast<int>(nodes.size());
  std::vector<int> node_of;
  Matrix dirs = Matrix::Zero(de, r * de);
  for (int j = 0; j < r; ++j) {
    for (int a = 0; a < de; ++a) {
      node_of.push_back(j);
      dirs(a, j * de + a) = 1.0;
    }
  }
  KernelSubspace q = build_general(spec, std::move(nodes), std::move(node_of), std::move(dirs));
  q.standard_ = true;
  return q;
}

KernelSubspace KernelSubspace::build_general(
  const KernelSpec & spec, std::vector<Point> nodes, std::vector<int> node_of,
  Matrix directions)
{
  spec.validate();
  if (nodes.empty()) {
    throw ValidationError("kernel subspace needs at least one node");
  }
  if (directions.rows() != spec.d_e ||
    directions.cols() != static_cast<Eigen::Index>(node_of.size()))
  {
    throw DimensionMismatch("kernel subspace: directions do not match node map");
  }
  for (const auto & z : nodes) {
    require_interior(spec, z);
  }
  for (int j : node_of) {
    if (j < 0 || j >= static_cast<int>(nodes.size())) {
      throw ValidationError("kernel subspace: node index out of range");
    }
  }
  KernelSubspace q;
  q.spec_ = spec;
  q.nodes_ = std::move(nodes);
  q.node_of_ = std::move(node_of);
  q.directions_ = std::move(directions);
  q.standard_ = false;
  q.finish();
  return q;
}

void KernelSubspace::finish()
{
  const auto dim = static_cast<Eigen::Index>(node_of_.size());
  const auto r = nodes_.size();
  Matrix kv(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      kv(i, j) = kernel_eval(spec_, nodes_[i], nodes_[j]);
    }
  }
  Matrix xi_gram = directions_.adjoint() * directions_;
  gram_.resize(dim, dim);
  for (Eigen::Index p = 0; p < dim; ++p) {
    for (Eigen::Index q = 0; q < dim; ++q) {
      gram_(p, q) = kv(node_of_[p], node_of_[q]) * xi_gram(p, q);
    }
  }
  gram_ = hermitian_part(gram_);
  const auto eig = hermitian_eig(gram_);
  const double lo = eig.values(0);
  const double hi = eig.values(dim - 1);
  if (!(hi > 0.0) || lo < 1e-10 * hi) {
    throw IllConditioned("Gram matrix of kernel basis is nearly singular", lo / hi);
  }
  condition_ = hi / lo;
  const RealVector s = eig.values.cwiseSqrt();
  ortho_ = eig.vectors * s.cwiseInverse().cast<cdouble>().asDiagonal();
  ortho_inv_ = s.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

Matrix KernelSubspace::from_kernel_action(const Matrix & m) const
{
  return ortho_inv_ * m * ortho_;
}

Matrix KernelSubspace::from_kernel_form(const Matrix & p) const
{
  return ortho_.adjoint() * p * ortho_;
}

Matrix KernelSubspace::evaluation(const Point & w) const
{
  Matrix ev(spec_.d_e, dim());
  for (Eigen::Index p = 0; p < dim(); ++p) {
    ev.col(p) = kernel_eval(spec_, w, nodes_[node_of_[p]]) * directions_.col(p);
  }
  return ev * ortho_;
}

Matrix KernelSubspace::evaluation_at_origin() const
{
  return directions_ * ortho_;
}

TupleOperator model_tuple(const KernelSubspace & q)
{
  std::vector<Matrix> ops;
  for (int i = 0; i < q.spec().n; ++i) {
    Vector d(q.dim());
    for (Eigen::Index p = 0; p < q.dim(); ++p) {
      d(p) = std::conj(q.nodes()[q.node_of()[p]](i));
    }
    const Matrix adj = q.from_kernel_action(Matrix(d.asDiagonal()));
    ops.push_back(adj.adjoint());
  }
  return TupleOperator(std::move(ops));
}

namespace
{

// Kernel-coordinate matrix of k_p -> K_1(., z_p) (phi(z_p)^* xi_p), expressed in q1's
// standard basis.
Matrix adjoint_action_kernel_coords(
  const KernelSubspace & q1, const KernelSubspace & q2,
  const std::function<Matrix(int)> & value_adjoint_at_node)
{
  if (!q1.is_standard()) {
    throw ValidationError("multiplier action requires a standard source span");
  }
  if (q1.nodes().size() != q2.nodes().size()) {
    throw DimensionMismatch("multiplier action: node counts differ");
  }
  for (std::size_t j = 0; j < q1.nodes().size(); ++j) {
    if ((q1.nodes()[j] - q2.nodes()[j]).norm() > 1e-14) {
      throw ValidationError("multiplier action: node lists differ");
    }
  }
  const int d1 = q1.spec().d_e;
  Matrix m = Matrix::Zero(q1.dim(), q2.dim());
  std::vector<Matrix> cache(q2.nodes().size());
  for (Eigen::Index p = 0; p < q2.dim(); ++p) {
    const int j = q2.node_of()[p];
    if (cache[j].size() == 0) {
      cache[j] = value_adjoint_at_node(j);
      if (cache[j].rows() != d1 || cache[j].cols() != q2.spec().d_e) {
        throw DimensionMismatch("multiplier value has the wrong shape");
      }
    }
    m.block(j * d1, p, d1, 1) = cache[j] * q2.directions().col(p);
  }
  return m;
}

}  // namespace

Matrix np_target_operator(
  const KernelSubspace & q1, const KernelSubspace & q2, const std::vector<Matrix> & targets)
{
  if (targets.size() != q2.nodes().size()) {
    throw DimensionMismatch("one target per node required");
  }
  for (const auto & w : targets) {
    if (w.rows() != q2.spec().d_e || w.cols() != q1.spec().d_e) {
      throw DimensionMismatch("target must be dE2 x dE1");
    }
  }
  const Matrix m = adjoint_action_kernel_coords(
    q1, q2, [&](int j) {return Matrix(targets[j].adjoint());});
  const Matrix x_adj = q1.ortho_factor_inverse() * m * q2.ortho_factor();
  return x_adj.adjoint();
}

Matrix multiplier_adjoint_action(
  const KernelSubspace & q1, const KernelSubspace & q2, const Evaluator & phi)
{
  const Matrix m = adjoint_action_kernel_coords(
    q1, q2, [&](int j) {
      Matrix v;
      try {
        v = phi(q2.nodes()[j]);
      } catch (const Error &) {
        throw;
      } catch (const std::exception & e) {
        throw EvaluationFailure(e.what());
      }
      return Matrix(v.adjoint());
    });
  return q1.ortho_factor_inverse() * m * q2.ortho_factor();
}

Matrix multiplier_adjoint_action(const KernelSubspace & q, const Evaluator & phi)
{
  return multiplier_adjoint_action(q, q, phi);
}

Matrix pick_matrix(
  const KernelSpec & spec, const std::vector<Point> & nodes, const std::vector<Matrix> & targets)
{
  if (nodes.size() != targets.size() || nodes.empty()) {
    throw DimensionMismatch("pick_matrix: one target per node required");
  }
  const auto d = targets.front().rows();
  const auto r = static_cast<Eigen::Index>(nodes.size());
  Matrix p(r * d, r * d);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < r; ++j) {
      const cdouble k = kernel_eval(spec, nodes[i], nodes[j]);
      p.block(i * d, j * d, d, d) =
        k * (Matrix::Identity(d, d) - targets[i] * targets[j].adjoint());
    }
  }
  return p;
}

}  // namespace commlift
