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

#include "commlift/transfer.hpp"

#include "commlift/errors.hpp"
#include "commlift/hypercontraction.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

namespace commlift
{

TransferFunction::TransferFunction(Colligation c)
: coll_(std::move(c))
{
  if (coll_.state_out_dim() != (coll_.geometry == ColligationGeometry::BallRow ?
    (coll_.state_in_blocks.empty() ? 0 : coll_.state_in_blocks.front()) : coll_.state_in_dim()))
  {
    throw DimensionMismatch("colligation state blocks are inconsistent with its geometry");
  }
  a_adj_ = coll_.a().adjoint();
  b_adj_ = coll_.b().adjoint();
  c_adj_ = coll_.c().adjoint();
  d_adj_ = coll_.d().adjoint();
}

Matrix TransferFunction::eval(const Point & z) const
{
  const int nn = n();
  if (z.size() != nn) {
    throw DimensionMismatch("transfer function evaluated at a point of the wrong dimension");
  }
  if (coll_.geometry == ColligationGeometry::BallRow) {
    if (!(z.norm() < 1.0 - kDomainMargin)) {
      throw DomainViolation("transfer function evaluated outside the open ball");
    }
  } else {
    for (int i = 0; i < nn; ++i) {
      if (!(std::abs(z(i)) < 1.0 - kDomainMargin)) {
        throw DomainViolation("transfer function evaluated outside the open polydisc");
      }
    }
  }
  const Eigen::Index state = coll_.state_out_dim();
  if (state == 0) {
    return a_adj_;
  }
  Matrix zd;   // Z D^* (state_out x state_out)
  Matrix zb;   // Z B^* (state_out x d_in)
  if (coll_.geometry == ColligationGeometry::BallRow) {
    // Z = (z_1 I, ..., z_n I) on the n copies of the state space.
    zd = Matrix::Zero(state, state);
    zb = Matrix::Zero(state, b_adj_.cols());
    for (int i = 0; i < nn; ++i) {
      zd += z(i) * d_adj_.middleRows(i * state, state);
      zb += z(i) * b_adj_.middleRows(i * state, state);
    }
  } else {
    // E(z) multiplies block i by z_i.
    zd = d_adj_;
    zb = b_adj_;
    Eigen::Index off = 0;
    for (int i = 0; i < nn; ++i) {
      const auto k = coll_.state_in_blocks[i];
      zd.middleRows(off, k) *= z(i);
      zb.middleRows(off, k) *= z(i);
      off += k;
    }
  }
  const Matrix resolvent = Matrix::Identity(state, state) - zd;
  Eigen::PartialPivLU<Matrix> lu(resolvent);
  const double rc = lu.rcond();
  if (!(rc >= kResolventRcond)) {
    throw NearSingularResolvent("resolvent I - Z D^* is nearly singular", rc);
  }
  return a_adj_ + c_adj_ * lu.solve(zb);
}

Evaluator TransferFunction::evaluator() const
{
  return [self = *this](const Point & z) {return self.eval(z);};
}

std::vector<SeriesTerm> series_partial_lifts(
  const Colligation & coll, const TupleOperator & s, const Matrix & defect_s_factor,
  int max_order)
{
  if (coll.geometry != ColligationGeometry::BallRow) {
    throw ValidationError("series lift is defined for ball colligations");
  }
  const int nn = s.size();
  if (static_cast<int>(coll.state_in_blocks.size()) != nn) {
    throw DimensionMismatch("colligation and tuple sizes differ");
  }
  const auto dim = s.dim();
  std::vector<Matrix> b_blocks;
  std::vector<Matrix> d_blocks;
  for (int j = 0; j < nn; ++j) {
    b_blocks.push_back(coll.b_block(j));
    d_blocks.push_back(coll.d_block(j));
  }
  std::vector<SeriesTerm> out;
  Matrix partial = coll.a() * defect_s_factor;
  Matrix level = coll.c() * defect_s_factor;  // L_0
  Matrix sigma_power = cp_map(s, Matrix::Identity(dim, dim));
  for (int r = 1; r <= max_order; ++r) {
    for (int j = 0; j < nn; ++j) {
      partial += b_blocks[j] * level * s[j].adjoint();
    }
    sigma_power = cp_map(s, sigma_power);  // sigma^{r+1}(I)
    SeriesTerm term;
    term.order = r;
    term.partial = partial;
    term.bound = std::sqrt(std::max(0.0, op_norm(sigma_power)));
    out.push_back(std::move(term));
    Matrix next = Matrix::Zero(level.rows(), level.cols());
    for (int f = 0; f < nn; ++f) {
      next += d_blocks[f] * level * s[f].adjoint();
    }
    level = std::move(next);
  }
  return out;
}

SeriesTerm series_partial_lift(
  const Colligation & coll, const TupleOperator & s, const Matrix & defect_s_factor, int order)
{
  if (order < 1) {
    throw ValidationError("series order must be >= 1");
  }
  return series_partial_lifts(coll, s, defect_s_factor, order).back();
}

CertificateResult schur_agler_certificate_ball(
  const Evaluator & phi, const std::vector<Point> & samples, double tol)
{
  CertificateResult res;
  if (samples.empty()) {
    res.min_eig = 0.0;
    res.pass = true;
    return res;
  }
  std::vector<Matrix> values;
  for (const auto & u : samples) {
    if (!(u.norm() < 1.0 - kDomainMargin)) {
      throw DomainViolation("certificate sample outside the open ball");
    }
    values.push_back(phi(u));
  }
  const auto d = values.front().rows();
  const auto m = static_cast<Eigen::Index>(samples.size());
  Matrix big(m * d, m * d);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      const cdouble k = 1.0 / (1.0 - samples[j].dot(samples[i]));
      big.block(i * d, j * d, d, d) =
        k * (Matrix::Identity(d, d) - values[i] * values[j].adjoint());
    }
  }
  res.min_eig = min_eigenvalue(big);
  res.pass = res.min_eig >= -tol;
  return res;
}

std::vector<Point> scan_grid(Geometry geometry, int n, const GridSpec & grid)
{
  if (grid.rings < 1 || grid.angles < 1 || !(grid.radius > 0.0) || !(grid.radius < 1.0)) {
    throw ValidationError("grid needs rings, angles >= 1 and a radius in (0, 1)");
  }
  const double coord_radius =
    geometry == Geometry::Ball ? grid.radius / std::sqrt(static_cast<double>(n)) : grid.radius;
  std::vector<cdouble> axis;
  for (int a = 1; a <= grid.rings; ++a) {
    const double rho = coord_radius * static_cast<double>(a) / grid.rings;
    for (int b = 0; b < grid.angles; ++b) {
      const double theta = 2.0 * M_PI * static_cast<double>(b) / grid.angles;
      axis.push_back(std::polar(rho, theta));
    }
  }
  std::vector<Point> pts;
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    Point z(n);
    for (int i = 0; i < n; ++i) {
      z(i) = axis[idx[i]];
    }
    pts.push_back(z);
    int i = n - 1;
    while (i >= 0 && ++idx[i] == axis.size()) {
      idx[i] = 0;
      --i;
    }
    if (i < 0) {
      break;
    }
  }
  return pts;
}

ScanResult sup_norm_scan(const Evaluator & phi, Geometry geometry, int n, const GridSpec & grid)
{
  ScanResult res;
  for (const auto & z : scan_grid(geometry, n, grid)) {
    const double v = op_norm(phi(z));
    res.max_norm = std::max(res.max_norm, v);
    res.rows.push_back({z, v});
  }
  return res;
}

void write_scan_csv(std::ostream & os, const ScanResult & scan, int n)
{
  for (int i = 1; i <= n; ++i) {
    os << "re(z" << i << "),im(z" << i << "),";
  }
  os << "opnorm\n";
  os << std::setprecision(17);
  for (const auto & row : scan.rows) {
    for (int i = 0; i < n; ++i) {
      os << row.z(i).real() << ',' << row.z(i).imag() << ',';
    }
    os << row.opnorm << '\n';
  }
}

}  // namespace commlift
