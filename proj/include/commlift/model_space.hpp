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

#ifndef COMMLIFT_MODEL_SPACE_HPP_
#define COMMLIFT_MODEL_SPACE_HPP_

#include "commlift/kernel.hpp"
#include "commlift/linalg.hpp"

#include <functional>
#include <vector>

namespace commlift
{

// Commuting tuple of square matrices in orthonormal coordinates.
struct TupleOperator
{
  std::vector<Matrix> ops;

  TupleOperator() = default;
  explicit TupleOperator(std::vector<Matrix> t);

  int size() const {return static_cast<int>(ops.size());}
  Eigen::Index dim() const {return ops.empty() ? 0 : ops.front().rows();}
  const Matrix & operator[](int i) const {return ops[static_cast<std::size_t>(i)];}

  // max_{i<j} ||T_i T_j - T_j T_i||
  double commutator_defect() const;
  // Throws ValidationError unless the commutator defect is within tol * (1 + max ||T_i||^2).
  void require_commuting(double tol = 1e-10) const;
};

// Pointwise evaluator z -> Phi(z).
using Evaluator = std::function<Matrix(const Point &)>;

// Span of kernel vectors K(., z_{node(p)}) xi_p. The usual model space uses every
// standard direction at every node; general directions are used for images of dilations.
class KernelSubspace
{
public:
  // Standard kernel span: basis K(., z_j) e_a, ordered node-major.
  static KernelSubspace build(const KernelSpec & spec, std::vector<Point> nodes);
  // General span; directions is d_E x N and node_of[p] indexes into nodes.
  static KernelSubspace build_general(
    const KernelSpec & spec, std::vector<Point> nodes, std::vector<int> node_of,
    Matrix directions);

  const KernelSpec & spec() const {return spec_;}
  const std::vector<Point> & nodes() const {return nodes_;}
  const std::vector<int> & node_of() const {return node_of_;}
  const Matrix & directions() const {return directions_;}
  const Matrix & gram() const {return gram_;}
  // L with L^* G L = I; orthonormal coordinates y relate to kernel coordinates c by c = L y.
  const Matrix & ortho_factor() const {return ortho_;}
  const Matrix & ortho_factor_inverse() const {return ortho_inv_;}
  double condition_number() const {return condition_;}
  Eigen::Index dim() const {return gram_.rows();}
  bool is_standard() const {return standard_;}

  // Kernel-coordinate matrix M (A K = K M) to orthonormal coordinates.
  Matrix from_kernel_action(const Matrix & m) const;
  // Kernel-form Gram matrix P (P_pq = <A k_q, k_p>) to orthonormal coordinates.
  Matrix from_kernel_form(const Matrix & p) const;

  // f -> f(w) as a d_E x dim matrix in orthonormal coordinates.
  Matrix evaluation(const Point & w) const;
  Matrix evaluation_at_origin() const;

private:
  void finish();

  KernelSpec spec_;
  std::vector<Point> nodes_;
  std::vector<int> node_of_;
  Matrix directions_;
  Matrix gram_;
  Matrix ortho_;
  Matrix ortho_inv_;
  double condition_ = 1.0;
  bool standard_ = true;
};

inline KernelSubspace build_subspace(const KernelSpec & spec, std::vector<Point> nodes)
{
  return KernelSubspace::build(spec, std::move(nodes));
}

// Compressed coordinate shifts: S_i^* k_p = conj(z_{p,i}) k_p.
TupleOperator model_tuple(const KernelSubspace & q);

// X : Q1 -> Q2 with X^* K_2(., z_j) eta = K_1(., z_j) W_j^* eta.
Matrix np_target_operator(
  const KernelSubspace & q1, const KernelSubspace & q2, const std::vector<Matrix> & targets);

// Compression of M_Phi^* : Q2 -> Q1 in orthonormal coordinates, where Phi(z) maps
// q1's coefficient space to q2's. q1 must be a standard span over q2's nodes.
Matrix multiplier_adjoint_action(
  const KernelSubspace & q1, const KernelSubspace & q2, const Evaluator & phi);
// Single-space form (square Phi).
Matrix multiplier_adjoint_action(const KernelSubspace & q, const Evaluator & phi);

// Block matrix [K(z_p, z_q) (I - W_p W_q^*)] for the kernel given by `spec`.
Matrix pick_matrix(
  const KernelSpec & spec, const std::vector<Point> & nodes,
  const std::vector<Matrix> & targets);

}  // namespace commlift

#endif  // COMMLIFT_MODEL_SPACE_HPP_
