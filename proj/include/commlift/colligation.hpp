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

#ifndef COMMLIFT_COLLIGATION_HPP_
#define COMMLIFT_COLLIGATION_HPP_

#include "commlift/hypercontraction.hpp"
#include "commlift/linalg.hpp"
#include "commlift/model_space.hpp"

#include <json.hpp>

#include <limits>
#include <vector>

namespace commlift
{

enum class ColligationGeometry { BallRow, PolydiscDiagonal };
enum class CompletionKind { Unitary, PartialIsometry };

inline constexpr double kGramTol = 1e-9;

// U = [[A, B], [C, D]] : defect_in (+) state_in -> defect_out (+) state_out.
struct Colligation
{
  Matrix u;
  ColligationGeometry geometry = ColligationGeometry::BallRow;
  CompletionKind completion = CompletionKind::PartialIsometry;
  Eigen::Index defect_in = 0;
  Eigen::Index defect_out = 0;
  std::vector<Eigen::Index> state_in_blocks;
  std::vector<Eigen::Index> state_out_blocks;
  // max over spanning vectors of ||U v - w|| for the generating pairs.
  double generating_residual = 0.0;
  // ||Gram(inputs) - Gram(outputs)|| seen when the pairs were completed.
  double gram_deviation = 0.0;
  // Ball: ||D_S^2 + sigma_S(Delta^2) - Delta^2 - X D_T^2 X^*||; polydisc: balance residual.
  double identity_residual = 0.0;

  Eigen::Index state_in_dim() const;
  Eigen::Index state_out_dim() const;

  Matrix a() const {return u.topLeftCorner(defect_out, defect_in);}
  Matrix b() const {return u.topRightCorner(defect_out, state_in_dim());}
  Matrix c() const {return u.bottomLeftCorner(state_out_dim(), defect_in);}
  Matrix d() const {return u.bottomRightCorner(state_out_dim(), state_in_dim());}
  // Column block i of B or D, following state_in_blocks.
  Matrix b_block(int i) const;
  Matrix d_block(int i) const;
  // Row block i of D (polydisc), following state_out_blocks.
  Matrix d_row_block(int i) const;

  double unitarity_defect() const;  // max(||U^*U - I||, ||UU^* - I||)
  double norm() const {return op_norm(u);}
};

struct PairCompletion
{
  Matrix u;
  CompletionKind kind = CompletionKind::PartialIsometry;
  double residual = 0.0;
  double gram_deviation = 0.0;
};

// Columns of `inputs` are mapped to the matching columns of `outputs`. The map is the
// polar part on the span of the inputs; a unitary completion pairs complements in a
// fixed Gram-Schmidt order when requested and the dimensions agree.
PairCompletion complete_pairs(
  const Matrix & inputs, const Matrix & outputs, bool want_unitary, double gram_tol = kGramTol);

// Ball colligation from the generating identity. X maps Q1 -> Q2; S acts on Q2.
Colligation build_ball_colligation(
  const TupleOperator & s, const Matrix & x, const DefectData & defect_t,
  const DefectData & defect_s, int m, bool want_unitary = true, double psd_rel = kPsdRel);

// Polydisc colligation; f_ops are the PSD operators F_i on Q2.
Colligation build_polydisc_colligation(
  const TupleOperator & s, const Matrix & x, const DefectData & defect_t,
  const DefectData & defect_s, const std::vector<int> & gamma, const std::vector<Matrix> & f_ops,
  bool want_unitary = true);

nlohmann::json to_json(const Colligation & c);
Colligation colligation_from_json(const nlohmann::json & j);

nlohmann::json matrix_to_json(const Matrix & m);
Matrix matrix_from_json(const nlohmann::json & j, Eigen::Index rows, Eigen::Index cols);

}  // namespace commlift

#endif  // COMMLIFT_COLLIGATION_HPP_
