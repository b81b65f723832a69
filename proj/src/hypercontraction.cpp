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

#include "commlift/hypercontraction.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>

namespace commlift
{

namespace
{

void require_square_match(const TupleOperator & t, const Matrix & a, const char * who)
{
  if (a.rows() != a.cols() || (t.size() > 0 && a.rows() != t.dim())) {
    throw DimensionMismatch(std::string(who) + ": operand size does not match tuple");
  }
}

double rank_floor(const Matrix & a)
{
  return 1e-14 * std::max(1.0, op_norm(a));
}

}  // namespace

Matrix cp_map(const TupleOperator & t, const Matrix & a)
{
  require_square_match(t, a, "cp_map");
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto & ti : t.ops) {
    out.noalias() += ti * a * ti.adjoint();
  }
  return out;
}

Matrix hereditary_ball(const TupleOperator & t, int i)
{
  return hereditary_ball(t, i, Matrix::Identity(t.dim(), t.dim()));
}

Matrix hereditary_ball(const TupleOperator & t, int i, const Matrix & a)
{
  require_square_match(t, a, "hereditary_ball");
  if (i < 0) {
    throw ValidationError("hereditary_ball: exponent must be nonnegative");
  }
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  Matrix power = a;  // sigma^j(A)
  for (int j = 0; j <= i; ++j) {
    const double c = binomial(i, j) * ((j % 2 == 0) ? 1.0 : -1.0);
    out += c * power;
    if (j < i) {
      power = cp_map(t, power);
    }
  }
  return out;
}

Matrix tuple_power(const TupleOperator & t, const MultiIndex & k)
{
  Matrix out = Matrix::Identity(t.dim(), t.dim());
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int j = 0; j < k[i]; ++j) {
      out = out * t.ops[i];
    }
  }
  return out;
}

Matrix hereditary_polydisc(const TupleOperator & t, const std::vector<int> & gamma)
{
  if (static_cast<int>(gamma.size()) != t.size()) {
    throw DimensionMismatch("hereditary_polydisc: gamma length differs from tuple size");
  }
  Matrix out = Matrix::Zero(t.dim(), t.dim());
  for (const auto & [k, c] : inverse_kernel_coeffs(gamma)) {
    const Matrix tk = tuple_power(t, k);
    out += c * (tk * tk.adjoint());
  }
  return out;
}

Matrix conjugacy_difference(
  const TupleOperator & t, const std::vector<int> & exponents, const Matrix & a)
{
  require_square_match(t, a, "conjugacy_difference");
  if (static_cast<int>(exponents.size()) != t.size()) {
    throw DimensionMismatch("conjugacy_difference: exponent count differs from tuple size");
  }
  Matrix out = a;
  for (int j = 0; j < t.size(); ++j) {
    for (int e = 0; e < exponents[j]; ++e) {
      out = out - t[j] * out * t[j].adjoint();
    }
  }
  return out;
}

Matrix hereditary(const TupleOperator & t, const KernelSpec & spec)
{
  if (spec.geometry == Geometry::Ball) {
    return hereditary_ball(t, spec.m);
  }
  return hereditary_polydisc(t, spec.gamma);
}

DefectData defect_from_factor(const Matrix & factor, const Matrix & defect_square)
{
  DefectData d;
  d.defect_square = defect_square;
  d.defect = psd_sqrt(defect_square);
  d.factor = factor;
  if (factor.size() == 0) {
    d.range_dim = 0;
  } else {
    Eigen::JacobiSVD<Matrix> svd(factor);
    const auto & s = svd.singularValues();
    d.range_dim = (s.array() > 1e-10 * std::max(1.0, s(0))).count();
  }
  return d;
}

DefectData defect(const TupleOperator & t, const KernelSpec & spec)
{
  if (spec.geometry == Geometry::Ball && spec.m >= 2) {
    const Matrix first = hereditary_ball(t, 1);
    const double lo = min_eigenvalue(first);
    if (lo < -psd_tolerance(first)) {
      throw NotHypercontraction("(1 - sigma_T)(I) is not positive", lo);
    }
  }
  const Matrix h = hermitian_part(hereditary(t, spec));
  const double lo = min_eigenvalue(h);
  if (lo < -psd_tolerance(h)) {
    throw NotHypercontraction("hereditary defect operator is not positive", lo);
  }
  DefectData d;
  d.defect_square = h;
  d.defect = psd_sqrt(h);
  d.factor = range_factor(h, rank_floor(h));
  d.range_dim = d.factor.rows();
  return d;
}

DefectData model_defect(const KernelSubspace & q)
{
  const TupleOperator s = model_tuple(q);
  return defect_from_factor(q.evaluation_at_origin(), hermitian_part(hereditary(s, q.spec())));
}

PurityReport purity_check(const TupleOperator & t, const KernelSpec & spec, double tol, int cap)
{
  PurityReport rep;
  const auto d = t.dim();
  if (spec.geometry == Geometry::Ball) {
    Matrix p = Matrix::Identity(d, d);
    for (int j = 1; j <= cap; ++j) {
      p = cp_map(t, p);
      const double nrm = op_norm(p);
      rep.decay.push_back(nrm);
      if (nrm < tol) {
        rep.status = PurityStatus::Pure;
        return rep;
      }
    }
  } else {
    std::vector<Matrix> powers(t.ops.begin(), t.ops.end());
    for (int j = 1; j <= cap; ++j) {
      double worst = 0.0;
      for (std::size_t i = 0; i < powers.size(); ++i) {
        if (j > 1) {
          powers[i] = powers[i] * t.ops[i];
        }
        worst = std::max(worst, op_norm(powers[i]));
      }
      rep.decay.push_back(worst);
      if (worst < tol) {
        rep.status = PurityStatus::Pure;
        return rep;
      }
    }
  }
  // No decay at all means a unimodular eigenvalue or a non-contraction.
  double radius = 0.0;
  for (const auto & ti : t.ops) {
    if (ti.rows() > 0) {
      radius = std::max(radius, ti.eigenvalues().cwiseAbs().maxCoeff());
    }
  }
  rep.status = (radius >= 1.0 - 1e-12 || rep.decay.back() >= 1.0 - 1e-12) ?
    PurityStatus::NotPure : PurityStatus::Inconclusive;
  return rep;
}

Matrix sigma_sum(const TupleOperator & t, const Matrix & a, int terms, std::optional<int> skip)
{
  require_square_match(t, a, "sigma_sum");
  if (terms < 1) {
    throw ValidationError("sigma_sum: need at least one term");
  }
  Matrix acc = a;
  for (int j = 0; j < t.size(); ++j) {
    if (skip && *skip == j) {
      continue;
    }
    Matrix term = acc;
    Matrix total = acc;
    for (int k = 1; k < terms; ++k) {
      term = t[j] * term * t[j].adjoint();
      total += term;
    }
    acc = total;
  }
  return acc;
}

Matrix sigma_sum_limit(
  const TupleOperator & t, const Matrix & a, std::optional<int> skip, double tol, int cap)
{
  require_square_match(t, a, "sigma_sum_limit");
  Matrix acc = a;
  for (int j = 0; j < t.size(); ++j) {
    if (skip && *skip == j) {
      continue;
    }
    Matrix term = acc;
    Matrix total = acc;
    bool done = false;
    double last = op_norm(term);
    for (int k = 1; k < cap; ++k) {
      term = t[j] * term * t[j].adjoint();
      total += term;
      last = op_norm(term);
      if (last < tol) {
        done = true;
        break;
      }
    }
    if (!done && last >= tol) {
      throw NotConverged("sigma_sum: increments did not fall below tolerance", last);
    }
    acc = total;
  }
  return acc;
}

std::map<MultiIndex, Vector> dilation_coefficients(
  const TupleOperator & t, const KernelSpec & spec, const Vector & h, int max_order)
{
  return dilation_coefficients(t, spec, defect(t, spec), h, max_order);
}

std::map<MultiIndex, Vector> dilation_coefficients(
  const TupleOperator & t, const KernelSpec & spec, const DefectData & d, const Vector & h,
  int max_order)
{
  if (h.size() != t.dim()) {
    throw DimensionMismatch("dilation_coefficients: vector size differs from tuple");
  }
  std::map<MultiIndex, Vector> out;
  // T^{*k} h built level by level from a predecessor index.
  std::map<MultiIndex, Vector> adj_powers;
  adj_powers[MultiIndex(t.size(), 0)] = h;
  for (int ord = 0; ord <= max_order; ++ord) {
    for (const auto & k : indices_of_order(t.size(), ord)) {
      if (ord > 0) {
        MultiIndex prev = k;
        int i = 0;
        while (prev[i] == 0) {
          ++i;
        }
        --prev[i];
        adj_powers[k] = t[i].adjoint() * adj_powers.at(prev);
      }
      out[k] = rho(spec, k) * (d.defect * adj_powers.at(k));
    }
  }
  return out;
}

double dilation_norm_squared(const std::map<MultiIndex, Vector> & coeffs, const KernelSpec & spec)
{
  double s = 0.0;
  for (const auto & [k, v] : coeffs) {
    s += v.squaredNorm() / rho(spec, k);
  }
  return s;
}

}  // namespace commlift
