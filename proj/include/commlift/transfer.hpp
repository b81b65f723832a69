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

#ifndef COMMLIFT_TRANSFER_HPP_
#define COMMLIFT_TRANSFER_HPP_

#include "commlift/colligation.hpp"
#include "commlift/linalg.hpp"
#include "commlift/model_space.hpp"

#include <iosfwd>
#include <vector>

namespace commlift
{

inline constexpr double kResolventRcond = 1e-12;

// z -> A^* + C^*(I - Z D^*)^{-1} Z B^* for the blocks of a colligation U.
class TransferFunction
{
public:
  TransferFunction() = default;
  explicit TransferFunction(Colligation c);

  Matrix eval(const Point & z) const;
  Matrix operator()(const Point & z) const {return eval(z);}
  Evaluator evaluator() const;

  const Colligation & colligation() const {return coll_;}
  ColligationGeometry geometry() const {return coll_.geometry;}
  // Phi(z) : C^{d_in} -> C^{d_out}.
  Eigen::Index d_in() const {return coll_.defect_out;}
  Eigen::Index d_out() const {return coll_.defect_in;}
  int n() const {return static_cast<int>(coll_.state_in_blocks.size());}

private:
  Colligation coll_;
  Matrix a_adj_;
  Matrix b_adj_;   // state_in x d_in
  Matrix c_adj_;   // d_out x state_out
  Matrix d_adj_;   // state_in x state_out
};

struct SeriesTerm
{
  int order = 0;      // r
  Matrix partial;     // sum through word length r - 1
  double bound = 0.0; // ||sigma_S^{r+1}(I)||^{1/2}
};

// Partial sums A D_S + sum_{i<r} sum_j sum_{|F|=i} B_j D_F C D_S S_F^* S_j^* for
// r = 1..max_order. Words of equal length are summed through the level recursion
// L_i = sum_f D_f L_{i-1} S_f^*, L_0 = C D_S.
std::vector<SeriesTerm> series_partial_lifts(
  const Colligation & coll, const TupleOperator & s, const Matrix & defect_s_factor,
  int max_order);
SeriesTerm series_partial_lift(
  const Colligation & coll, const TupleOperator & s, const Matrix & defect_s_factor, int order);

struct CertificateResult
{
  double min_eig = 0.0;
  bool pass = false;
};

// Min eigenvalue of [(I - Phi(u_i) Phi(u_j)^*) / (1 - <u_i, u_j>)].
CertificateResult schur_agler_certificate_ball(
  const Evaluator & phi, const std::vector<Point> & samples, double tol);

struct GridSpec
{
  double radius = 0.99;
  int rings = 10;
  int angles = 10;
};

struct ScanRow
{
  Point z;
  double opnorm = 0.0;
};

struct ScanResult
{
  double max_norm = 0.0;
  std::vector<ScanRow> rows;
};

// Product polar grid; for the ball each coordinate radius is scaled by 1/sqrt(n).
std::vector<Point> scan_grid(Geometry geometry, int n, const GridSpec & grid);
ScanResult sup_norm_scan(
  const Evaluator & phi, Geometry geometry, int n, const GridSpec & grid);
void write_scan_csv(std::ostream & os, const ScanResult & scan, int n);

}  // namespace commlift

#endif  // COMMLIFT_TRANSFER_HPP_
