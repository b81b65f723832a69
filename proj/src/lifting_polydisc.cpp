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

#include "commlift/lifting_polydisc.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace commlift
{

namespace
{

std::vector<int> transform_exponents(const std::vector<int> & gamma, int i)
{
  std::vector<int> e = gamma;
  e[i] -= 1;
  return e;
}

// Orthonormal real coordinates of a Hermitian matrix (Frobenius inner product).
Eigen::VectorXd to_coords(const Matrix & h)
{
  const auto d = h.rows();
  Eigen::VectorXd v(d * d);
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < d; ++a) {
    v(k++) = h(a, a).real();
  }
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      v(k++) = r2 * 0.5 * (h(a, b) + std::conj(h(b, a))).real();
      v(k++) = r2 * 0.5 * (h(a, b) + std::conj(h(b, a))).imag();
    }
  }
  return v;
}

Matrix from_coords(const Eigen::VectorXd & v, Eigen::Index d)
{
  Matrix h = Matrix::Zero(d, d);
  Eigen::Index k = 0;
  const double r2 = std::sqrt(2.0);
  for (Eigen::Index a = 0; a < d; ++a) {
    h(a, a) = v(k++);
  }
  for (Eigen::Index a = 0; a < d; ++a) {
    for (Eigen::Index b = a + 1; b < d; ++b) {
      const cdouble e(v(k) / r2, v(k + 1) / r2);
      k += 2;
      h(a, b) = e;
      h(b, a) = std::conj(e);
    }
  }
  return h;
}

Matrix psd_clip(const Matrix & a)
{
  const auto eig = hermitian_eig(a);
  const RealVector s = eig.values.cwiseMax(0.0);
  return eig.vectors * s.cast<cdouble>().asDiagonal() * eig.vectors.adjoint();
}

AglerDecomposition assemble_decomposition(
  const TupleOperator & s, const std::vector<int> & gamma, const Matrix & p,
  const std::vector<Matrix> & h_blocks)
{
  AglerDecomposition dec;
  Matrix total = Matrix::Zero(p.rows(), p.cols());
  for (int i = 0; i < s.size(); ++i) {
    const Matrix g = hermitian_part(agler_transform_inverse(s, gamma, i, psd_clip(h_blocks[i])));
    total += g;
    dec.g_min_eigs.push_back(min_eigenvalue(g));
    dec.cone_min_eigs.push_back(min_eigenvalue(agler_transform(s, gamma, i, g)));
    dec.g.push_back(g);
  }
  dec.reconstruction_residual = op_norm(total - p);
  return dec;
}

}  // namespace

Matrix agler_transform(
  const TupleOperator & s, const std::vector<int> & gamma, int i, const Matrix & g)
{
  return conjugacy_difference(s, transform_exponents(gamma, i), g);
}

Matrix agler_transform_inverse(
  const TupleOperator & s, const std::vector<int> & gamma, int i, const Matrix & h)
{
  const std::vector<int> e = transform_exponents(gamma, i);
  Matrix out = h;
  for (int j = 0; j < s.size(); ++j) {
    for (int k = 0; k < e[j]; ++k) {
      out = solve_stein({s[j]}, {Matrix(s[j].adjoint())}, out);
    }
  }
  return out;
}

AglerOutcome agler_feasibility(
  const TupleOperator & s, const Matrix & x, const std::vector<int> & gamma,
  const AglerOptions & opts)
{
  const int n = s.size();
  if (static_cast<int>(gamma.size()) != n) {
    throw DimensionMismatch("agler_feasibility: gamma length differs from tuple size");
  }
  if (x.rows() != s.dim()) {
    throw DimensionMismatch("agler_feasibility: X must map into the space of S");
  }
  const auto d = s.dim();
  const auto dd = d * d;
  const Matrix p = hermitian_part(Matrix::Identity(d, d) - x * x.adjoint());
  const Eigen::VectorXd p_coords = to_coords(p);

  // Linear map (H_1, ..., H_n) -> sum_i L_i^{-1}(H_i) in real coordinates.
  Eigen::MatrixXd lin(dd, n * dd);
  for (int i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < dd; ++k) {
      Eigen::VectorXd unit = Eigen::VectorXd::Unit(dd, k);
      lin.col(i * dd + k) = to_coords(agler_transform_inverse(s, gamma, i, from_coords(unit, d)));
    }
  }
  const Eigen::LDLT<Eigen::MatrixXd> normal(lin * lin.transpose());
  auto project_affine = [&](Eigen::VectorXd & h) {
      const Eigen::VectorXd r = lin * h - p_coords;
      h -= lin.transpose() * normal.solve(r);
    };

  Eigen::VectorXd h(n * dd);
  for (int i = 0; i < n; ++i) {
    Matrix g0 = p / static_cast<double>(n);
    if (opts.initial) {
      if (static_cast<int>(opts.initial->size()) != n) {
        throw DimensionMismatch("agler_feasibility: initial point needs n blocks");
      }
      g0 = (*opts.initial)[i];
    }
    h.segment(i * dd, dd) = to_coords(hermitian_part(agler_transform(s, gamma, i, g0)));
  }
  project_affine(h);

  const double accept = opts.accept_rel * (1.0 + op_norm(p));
  AglerOutcome out;
  std::vector<Matrix> blocks(n);
  for (int it = 1; it <= opts.max_iter; ++it) {
    for (int i = 0; i < n; ++i) {
      h.segment(i * dd, dd) = to_coords(psd_clip(from_coords(h.segment(i * dd, dd), d)));
    }
    project_affine(h);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      blocks[i] = from_coords(h.segment(i * dd, dd), d);
      worst = std::min(worst, min_eigenvalue(blocks[i]));
    }
    out.iterations = it;
    out.worst_cone_eig = worst;
    out.affine_residual = (lin * h - p_coords).norm();
    if (worst >= -accept) {
      AglerDecomposition dec = assemble_decomposition(s, gamma, p, blocks);
      dec.iterations = it;
      double g_worst = 0.0;
      for (double e : dec.g_min_eigs) {
        g_worst = std::min(g_worst, e);
      }
      if (dec.reconstruction_residual <= opts.tol && g_worst >= -opts.tol) {
        out.decomposition = dec;
        out.last = dec;
        return out;
      }
    }
  }
  out.last = assemble_decomposition(s, gamma, p, blocks);
  out.last.iterations = out.iterations;
  return out;
}

std::vector<Matrix> f_operators(
  const TupleOperator & s, const Matrix & x, const std::vector<int> & gamma,
  const AglerDecomposition & dec, double tol)
{
  const int n = s.size();
  if (static_cast<int>(dec.g.size()) != n) {
    throw DimensionMismatch("f_operators: decomposition has the wrong number of blocks");
  }
  std::vector<Matrix> f;
  Matrix sum = Matrix::Zero(s.dim(), s.dim());
  double scale = 1.0;
  for (int i = 0; i < n; ++i) {
    const Matrix fsq = hermitian_part(agler_transform(s, gamma, i, dec.g[i]));
    const double lo = min_eigenvalue(fsq);
    if (lo < -std::max(tol, psd_tolerance(fsq))) {
      throw NotPositive("transformed Agler block " + std::to_string(i) + " is not positive", lo);
    }
    sum += fsq - s[i] * fsq * s[i].adjoint();
    scale = std::max(scale, op_norm(fsq));
    f.push_back(psd_sqrt(fsq));
  }
  const Matrix p = Matrix::Identity(s.dim(), s.dim()) - x * x.adjoint();
  const double balance = op_norm(conjugacy_difference(s, gamma, p) - sum);
  if (balance > 1e-8 * scale) {
    throw BalanceViolation("F_i do not satisfy the balance identity", balance);
  }
  return f;
}

namespace
{

// Residual of D_T X^* = A D_S + B sum_j E_j Y S_j^*, Y = C D_S + D sum_j E_j Y S_j^*.
double polydisc_operator_residual(
  const Colligation & c, const TupleOperator & s, const Matrix & x, const DefectData & dt,
  const DefectData & ds)
{
  const int n = s.size();
  const Matrix target = dt.factor * x.adjoint();
  Matrix approx = c.a() * ds.factor;
  const auto state = c.state_in_dim();
  if (state > 0) {
    std::vector<Matrix> proj;
    Eigen::Index off = 0;
    for (int j = 0; j < n; ++j) {
      Matrix e = Matrix::Zero(state, state);
      e.block(off, off, c.state_in_blocks[j], c.state_in_blocks[j]).setIdentity();
      off += c.state_in_blocks[j];
      proj.push_back(e);
    }
    std::vector<Matrix> left;
    std::vector<Matrix> right;
    for (int j = 0; j < n; ++j) {
      left.push_back(c.d() * proj[j]);
      right.push_back(s[j].adjoint());
    }
    const Matrix y = solve_stein(left, right, c.c() * ds.factor);
    for (int j = 0; j < n; ++j) {
      approx += c.b() * proj[j] * y * s[j].adjoint();
    }
  }
  return op_norm(target - approx);
}

}  // namespace

PolydiscLiftResult lift_polydisc(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x,
  const std::vector<int> & gamma, const AglerDecomposition & dec, const DefectData & defect_t,
  const DefectData & defect_s, const LiftOptions & opts)
{
  require_contractive_intertwiner(t, s, x, opts.intertwine_tol);
  PolydiscLiftResult res;
  res.decomposition = dec;
  res.f_ops = f_operators(s, x, gamma, dec);
  const Matrix p = Matrix::Identity(s.dim(), s.dim()) - x * x.adjoint();
  res.hereditary_difference_residual = op_norm(
    (defect_s.defect_square - x * defect_t.defect_square * x.adjoint()) -
    conjugacy_difference(s, gamma, p));

  LiftResult & lift = res.lift;
  lift.colligation = build_polydisc_colligation(
    s, x, defect_t, defect_s, gamma, res.f_ops, opts.want_unitary);
  lift.phi = TransferFunction(lift.colligation);
  lift.defect_t = defect_t;
  lift.defect_s = defect_s;
  lift.certificate.delta_min_eig = min_eigenvalue(p);
  lift.certificate.generating_residual = lift.colligation.generating_residual;
  lift.certificate.identity_residual = lift.colligation.identity_residual;
  lift.certificate.operator_residual =
    polydisc_operator_residual(lift.colligation, s, x, defect_t, defect_s);
  lift.certificate.verify_residual = lift.certificate.operator_residual;
  if (!(lift.certificate.operator_residual <= opts.verify_tol)) {
    throw VerificationFailed(
            "lifted colligation does not reproduce D_T X^*", lift.certificate.operator_residual);
  }
  return res;
}

PolydiscLiftResult lift_polydisc(
  const TupleOperator & t, const TupleOperator & s, const Matrix & x,
  const std::vector<int> & gamma, const AglerDecomposition & dec, const LiftOptions & opts)
{
  const KernelSpec spec = KernelSpec::polydisc(gamma);
  return lift_polydisc(t, s, x, gamma, dec, defect(t, spec), defect(s, spec), opts);
}

PolydiscLiftResult lift_polydisc_model(
  const KernelSubspace & q1, const KernelSubspace & q2, const Matrix & x,
  const AglerDecomposition & dec, const LiftOptions & opts)
{
  if (q1.spec().geometry != Geometry::Polydisc || q2.spec().geometry != Geometry::Polydisc ||
    q1.spec().gamma != q2.spec().gamma)
  {
    throw ValidationError("lift_polydisc_model: both spans must live in the same polydisc space");
  }
  const TupleOperator t = model_tuple(q1);
  const TupleOperator s = model_tuple(q2);
  PolydiscLiftResult res = lift_polydisc(
    t, s, x, q2.spec().gamma, dec, model_defect(q1), model_defect(q2), opts);
  res.lift.certificate.verify_residual = verify_lift(res.lift.phi.evaluator(), q1, q2, x);
  if (!(res.lift.certificate.verify_residual <= opts.verify_tol)) {
    throw VerificationFailed(
            "M_Phi^* does not reproduce X^*", res.lift.certificate.verify_residual);
  }
  return res;
}

PsiDiagnostics psi_gamma_diagnostics(
  const Colligation & coll, const TupleOperator & s, const std::vector<int> & gamma,
  const std::vector<Matrix> & f_ops, const Matrix & defect_s_factor, int degree,
  double tail_tol)
{
  if (coll.geometry != ColligationGeometry::PolydiscDiagonal) {
    throw ValidationError("psi diagnostics need a polydisc colligation");
  }
  const int n = s.size();
  if (static_cast<int>(f_ops.size()) != n || static_cast<int>(gamma.size()) != n) {
    throw DimensionMismatch("psi diagnostics: one F_i per coordinate required");
  }
  const KernelSpec spec = KernelSpec::polydisc(gamma);
  const auto state = coll.state_in_dim();
  const Matrix c_adj = coll.c().adjoint();   // d_S x state
  const Matrix d_adj = coll.d().adjoint();
  std::vector<Matrix> ed;                      // E_j D^*
  std::vector<Eigen::Index> offsets;
  Eigen::Index off = 0;
  for (int j = 0; j < n; ++j) {
    Matrix e = Matrix::Zero(state, state);
    e.block(off, off, coll.state_in_blocks[j], coll.state_in_blocks[j]).setIdentity();
    offsets.push_back(off);
    off += coll.state_in_blocks[j];
    ed.push_back(e * d_adj);
  }

  PsiDiagnostics out;
  std::map<MultiIndex, Matrix> resolvent;   // R_alpha
  std::map<MultiIndex, Matrix> powers;      // S^alpha
  const MultiIndex zero(n, 0);
  resolvent[zero] = Matrix::Identity(state, state);
  powers[zero] = Matrix::Identity(s.dim(), s.dim());
  Matrix pairing = Matrix::Zero(s.dim(), state);   // sum_alpha S^alpha D_S^* Psi_alpha
  Matrix gram = Matrix::Zero(state, state);        // sum_alpha Psi^* Psi / rho
  for (int ord = 0; ord <= degree; ++ord) {
    Matrix level = Matrix::Zero(s.dim(), state);
    for (const auto & a : indices_of_order(n, ord)) {
      if (ord > 0) {
        Matrix r = Matrix::Zero(state, state);
        for (int j = 0; j < n; ++j) {
          if (a[j] == 0) {
            continue;
          }
          MultiIndex prev = a;
          --prev[j];
          r += ed[j] * resolvent.at(prev);
        }
        resolvent[a] = r;
        MultiIndex prev = a;
        int i = 0;
        while (prev[i] == 0) {
          ++i;
        }
        --prev[i];
        powers[a] = s[i] * powers.at(prev);
      }
      const Matrix psi = c_adj * resolvent.at(a);
      // Right recursion Psi_alpha = delta C^* + sum_j Psi_{alpha - e_j} E_j D^*.
      Matrix rhs = ord == 0 ? c_adj : Matrix::Zero(c_adj.rows(), state);
      for (int j = 0; j < n; ++j) {
        if (a[j] == 0) {
          continue;
        }
        MultiIndex prev = a;
        --prev[j];
        rhs += c_adj * resolvent.at(prev) * ed[j];
      }
      out.embed_residual = std::max(out.embed_residual, op_norm(psi - rhs));
      level += powers.at(a) * defect_s_factor.adjoint() * psi;
      gram += psi.adjoint() * psi / rho(spec, a);
      if (ord == 0) {
        out.psi_zero = psi;
      }
    }
    pairing += level;
    if (ord == degree) {
      out.tail = op_norm(level);
    }
    // Drop the previous level of resolvent coefficients once unused.
    if (ord >= 1) {
      for (const auto & a : indices_of_order(n, ord - 1)) {
        resolvent.erase(a);
        powers.erase(a);
      }
    }
  }
  out.psi_norm = std::sqrt(std::max(0.0, op_norm(gram)));
  for (int j = 0; j < n; ++j) {
    const Matrix fj = range_factor(f_ops[j].adjoint() * f_ops[j]);
    if (fj.rows() != coll.state_in_blocks[j]) {
      throw DimensionMismatch("psi diagnostics: F_i do not match the colligation blocks");
    }
    const Matrix block = pairing.middleCols(offsets[j], coll.state_in_blocks[j]);
    out.gamma_norms.push_back(op_norm(fj.adjoint() - block));
  }
  if (out.tail > tail_tol) {
    throw NotConverged("Psi expansion has not converged at the requested degree", out.tail);
  }
  return out;
}

nlohmann::json to_json(const AglerDecomposition & dec)
{
  nlohmann::json j;
  nlohmann::json blocks = nlohmann::json::array();
  for (const auto & g : dec.g) {
    blocks.push_back(matrix_to_json(g));
  }
  j["g"] = blocks;
  j["reconstruction_residual"] = dec.reconstruction_residual;
  j["g_min_eigs"] = dec.g_min_eigs;
  j["cone_min_eigs"] = dec.cone_min_eigs;
  j["iterations"] = dec.iterations;
  return j;
}

}  // namespace commlift
