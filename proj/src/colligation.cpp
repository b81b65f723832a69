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

#include "commlift/colligation.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace commlift
{

Eigen::Index Colligation::state_in_dim() const
{
  return std::accumulate(state_in_blocks.begin(), state_in_blocks.end(), Eigen::Index{0});
}

Eigen::Index Colligation::state_out_dim() const
{
  return std::accumulate(state_out_blocks.begin(), state_out_blocks.end(), Eigen::Index{0});
}

Matrix Colligation::b_block(int i) const
{
  Eigen::Index off = 0;
  for (int k = 0; k < i; ++k) {
    off += state_in_blocks[k];
  }
  return u.block(0, defect_in + off, defect_out, state_in_blocks[i]);
}

Matrix Colligation::d_block(int i) const
{
  Eigen::Index off = 0;
  for (int k = 0; k < i; ++k) {
    off += state_in_blocks[k];
  }
  return u.block(defect_out, defect_in + off, state_out_dim(), state_in_blocks[i]);
}

Matrix Colligation::d_row_block(int i) const
{
  Eigen::Index off = 0;
  for (int k = 0; k < i; ++k) {
    off += state_out_blocks[k];
  }
  return u.block(defect_out + off, defect_in, state_out_blocks[i], state_in_dim());
}

double Colligation::unitarity_defect() const
{
  if (u.rows() != u.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const auto d = u.rows();
  return std::max(
    op_norm(u.adjoint() * u - Matrix::Identity(d, d)),
    op_norm(u * u.adjoint() - Matrix::Identity(d, d)));
}

PairCompletion complete_pairs(
  const Matrix & inputs, const Matrix & outputs, bool want_unitary, double gram_tol)
{
  if (inputs.cols() != outputs.cols()) {
    throw DimensionMismatch("complete_pairs: input and output counts differ");
  }
  const Eigen::Index din = inputs.rows();
  const Eigen::Index dout = outputs.rows();
  PairCompletion out;

  const Matrix gin = inputs.adjoint() * inputs;
  const Matrix gout = outputs.adjoint() * outputs;
  if (inputs.cols() > 0) {
    const double scale = std::max(1.0, gin.diagonal().real().maxCoeff());
    out.gram_deviation = (gin - gout).cwiseAbs().maxCoeff() / scale;
    if (out.gram_deviation > gram_tol) {
      throw GramMismatch("generating pairs are not isometrically compatible", out.gram_deviation);
    }
  }

  Matrix in_basis(din, 0);
  Matrix out_basis(dout, 0);
  if (inputs.cols() > 0 && din > 0) {
    Eigen::JacobiSVD<Matrix> svd(inputs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto & sv = svd.singularValues();
    const double tau = 1e-10 * std::max(1.0, sv(0));
    const Eigen::Index r = (sv.array() > tau).count();
    if (r > 0) {
      in_basis = svd.matrixU().leftCols(r);
      const Matrix z = outputs * svd.matrixV().leftCols(r) *
        sv.head(r).cwiseInverse().cast<cdouble>().asDiagonal();
      Eigen::JacobiSVD<Matrix> zs(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
      out_basis = zs.matrixU() * zs.matrixV().adjoint();
    }
  }
  out.u = out_basis * in_basis.adjoint();
  if (out.u.rows() != dout || out.u.cols() != din) {
    out.u = Matrix::Zero(dout, din);
  }
  out.kind = CompletionKind::PartialIsometry;
  if (want_unitary && din == dout) {
    const Matrix cin = complement_basis(in_basis, din);
    const Matrix cout = complement_basis(out_basis, dout);
    if (cin.cols() == cout.cols()) {
      out.u += cout * cin.adjoint();
      out.kind = CompletionKind::Unitary;
    }
  }
  if (inputs.cols() > 0) {
    out.residual = (out.u * inputs - outputs).colwise().norm().maxCoeff();
  }
  return out;
}

namespace
{

void require_intertwiner_shape(const TupleOperator & s, const Matrix & x)
{
  if (x.rows() != s.dim()) {
    throw DimensionMismatch("X must map into the space of S");
  }
}

}  // namespace

Colligation build_ball_colligation(
  const TupleOperator & s, const Matrix & x, const DefectData & defect_t,
  const DefectData & defect_s, int m, bool want_unitary, double psd_rel)
{
  require_intertwiner_shape(s, x);
  const auto dim = s.dim();
  const int n = s.size();
  if (defect_t.factor.cols() != x.cols() || defect_s.factor.cols() != dim) {
    throw DimensionMismatch("defect factors do not match X");
  }
  const Matrix id = Matrix::Identity(dim, dim);
  const Matrix delta_sq = hermitian_part(hereditary_ball(s, m - 1, id - x * x.adjoint()));
  const double lo = min_eigenvalue(delta_sq);
  if (lo < -psd_tolerance(delta_sq, psd_rel)) {
    throw NotPositive("(1 - sigma_S)^(m-1)(I - XX^*) is not positive", lo);
  }
  const Matrix r = range_factor(delta_sq);
  const Eigen::Index rd = r.rows();
  const Matrix ds = defect_s.factor;
  const Matrix dt_x = defect_t.factor * x.adjoint();
  const Eigen::Index d_in = ds.rows();
  const Eigen::Index d_out = dt_x.rows();

  // Pad the state space when the dimension count allows a unitary.
  Eigen::Index pad = 0;
  bool unitary_possible = false;
  if (want_unitary) {
    if (n == 1) {
      unitary_possible = (d_in == d_out);
    } else {
      const Eigen::Index diff = d_out - d_in;
      if (diff >= 0 && diff % (n - 1) == 0 && diff / (n - 1) >= rd) {
        pad = diff / (n - 1) - rd;
        unitary_possible = true;
      }
    }
  }
  const Eigen::Index state = rd + pad;

  Matrix vin = Matrix::Zero(d_in + n * state, dim);
  vin.topRows(d_in) = ds;
  for (int i = 0; i < n; ++i) {
    vin.middleRows(d_in + i * state, rd) = r * s[i].adjoint();
  }
  Matrix vout = Matrix::Zero(d_out + state, dim);
  vout.topRows(d_out) = dt_x;
  vout.middleRows(d_out, rd) = r;

  Colligation c;
  c.geometry = ColligationGeometry::BallRow;
  c.defect_in = d_in;
  c.defect_out = d_out;
  c.state_in_blocks.assign(n, state);
  c.state_out_blocks.assign(1, state);
  c.identity_residual = op_norm(
    ds.adjoint() * ds + cp_map(s, delta_sq) - delta_sq -
    x * defect_t.factor.adjoint() * defect_t.factor * x.adjoint());

  const PairCompletion pc = complete_pairs(vin, vout, unitary_possible);
  c.u = pc.u;
  c.completion = pc.kind;
  c.generating_residual = pc.residual;
  c.gram_deviation = pc.gram_deviation;
  return c;
}

Colligation build_polydisc_colligation(
  const TupleOperator & s, const Matrix & x, const DefectData & defect_t,
  const DefectData & defect_s, const std::vector<int> & gamma, const std::vector<Matrix> & f_ops,
  bool want_unitary)
{
  require_intertwiner_shape(s, x);
  const auto dim = s.dim();
  const int n = s.size();
  if (static_cast<int>(gamma.size()) != n || static_cast<int>(f_ops.size()) != n) {
    throw DimensionMismatch("polydisc colligation: need one F_i per coordinate");
  }
  if (defect_t.factor.cols() != x.cols() || defect_s.factor.cols() != dim) {
    throw DimensionMismatch("defect factors do not match X");
  }
  const Matrix ds = defect_s.factor;
  const Matrix dt_x = defect_t.factor * x.adjoint();

  std::vector<Matrix> factors;
  Matrix lhs = ds.adjoint() * ds;
  Matrix rhs = dt_x.adjoint() * dt_x;
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    if (f_ops[i].rows() != dim || f_ops[i].cols() != dim) {
      throw DimensionMismatch("F_i must act on the space of S");
    }
    const Matrix fsq = f_ops[i].adjoint() * f_ops[i];
    factors.push_back(range_factor(fsq));
    lhs += s[i] * fsq * s[i].adjoint();
    rhs += fsq;
    scale = std::max(scale, op_norm(fsq));
  }
  const double balance = op_norm(lhs - rhs);
  if (balance > 1e-8 * scale) {
    throw BalanceViolation("balance identity for F_i does not hold", balance);
  }

  const Eigen::Index d_in = ds.rows();
  const Eigen::Index d_out = dt_x.rows();
  Eigen::Index state = 0;
  for (const auto & f : factors) {
    state += f.rows();
  }
  Matrix vin = Matrix::Zero(d_in + state, dim);
  Matrix vout = Matrix::Zero(d_out + state, dim);
  vin.topRows(d_in) = ds;
  vout.topRows(d_out) = dt_x;
  Eigen::Index off = 0;
  Colligation c;
  for (int i = 0; i < n; ++i) {
    const auto k = factors[i].rows();
    vin.middleRows(d_in + off, k) = factors[i] * s[i].adjoint();
    vout.middleRows(d_out + off, k) = factors[i];
    c.state_in_blocks.push_back(k);
    off += k;
  }
  c.state_out_blocks = c.state_in_blocks;
  c.geometry = ColligationGeometry::PolydiscDiagonal;
  c.defect_in = d_in;
  c.defect_out = d_out;
  c.identity_residual = balance;

  const PairCompletion pc = complete_pairs(vin, vout, want_unitary && d_in == d_out);
  c.u = pc.u;
  c.completion = pc.kind;
  c.generating_residual = pc.residual;
  c.gram_deviation = pc.gram_deviation;
  return c;
}

nlohmann::json matrix_to_json(const Matrix & m)
{
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      row.push_back({m(i, j).real(), m(i, j).imag()});
    }
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const nlohmann::json & j, Eigen::Index rows, Eigen::Index cols)
{
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != rows) {
    throw ValidationError("matrix has the wrong number of rows");
  }
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const auto & row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw ValidationError("matrix row has the wrong number of entries");
    }
    for (Eigen::Index k = 0; k < cols; ++k) {
      const auto & e = row[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ValidationError("complex entries must be [re, im] pairs");
      }
      m(i, k) = cdouble(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

nlohmann::json to_json(const Colligation & c)
{
  nlohmann::json j;
  j["geometry"] = c.geometry == ColligationGeometry::BallRow ? "ball-row" : "polydisc-diagonal";
  j["completion"] = c.completion == CompletionKind::Unitary ? "unitary" : "partial-isometry";
  j["defect_in"] = c.defect_in;
  j["defect_out"] = c.defect_out;
  j["state_in_blocks"] = c.state_in_blocks;
  j["state_out_blocks"] = c.state_out_blocks;
  j["rows"] = c.u.rows();
  j["cols"] = c.u.cols();
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < c.u.rows(); ++i) {
    for (Eigen::Index k = 0; k < c.u.cols(); ++k) {
      entries.push_back({c.u(i, k).real(), c.u(i, k).imag()});
    }
  }
  j["entries"] = entries;
  return j;
}

Colligation colligation_from_json(const nlohmann::json & j)
{
  Colligation c;
  try {
    const std::string geo = j.at("geometry").get<std::string>();
    if (geo == "ball-row") {
      c.geometry = ColligationGeometry::BallRow;
    } else if (geo == "polydisc-diagonal") {
      c.geometry = ColligationGeometry::PolydiscDiagonal;
    } else {
      throw ValidationError("unknown colligation geometry '" + geo + "'");
    }
    c.completion = j.at("completion").get<std::string>() == "unitary" ?
      CompletionKind::Unitary : CompletionKind::PartialIsometry;
    c.defect_in = j.at("defect_in").get<Eigen::Index>();
    c.defect_out = j.at("defect_out").get<Eigen::Index>();
    c.state_in_blocks = j.at("state_in_blocks").get<std::vector<Eigen::Index>>();
    c.state_out_blocks = j.at("state_out_blocks").get<std::vector<Eigen::Index>>();
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto & entries = j.at("entries");
    if (static_cast<Eigen::Index>(entries.size()) != rows * cols) {
      throw ValidationError("colligation entry count does not match its shape");
    }
    c.u.resize(rows, cols);
    std::size_t idx = 0;
    for (Eigen::Index i = 0; i < rows; ++i) {
      for (Eigen::Index k = 0; k < cols; ++k) {
        const auto & e = entries[idx++];
        c.u(i, k) = cdouble(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
  } catch (const nlohmann::json::exception & e) {
    throw ParseError(std::string("colligation document: ") + e.what());
  }
  if (c.defect_out + c.state_out_dim() != c.u.rows() ||
    c.defect_in + c.state_in_dim() != c.u.cols())
  {
    throw ValidationError("colligation block dims do not match its shape");
  }
  return c;
}

}  // namespace commlift
