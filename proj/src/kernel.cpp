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

#include "commlift/kernel.hpp"

#include "commlift/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace commlift
{

KernelSpec KernelSpec::ball(int n, int m, int d_e)
{
  KernelSpec s;
  s.geometry = Geometry::Ball;
  s.n = n;
  s.m = m;
  s.d_e = d_e;
  s.validate();
  return s;
}

KernelSpec KernelSpec::polydisc(std::vector<int> gamma, int d_e)
{
  KernelSpec s;
  s.geometry = Geometry::Polydisc;
  s.n = static_cast<int>(gamma.size());
  s.gamma = std::move(gamma);
  s.d_e = d_e;
  s.validate();
  return s;
}

KernelSpec KernelSpec::with_coeff_dim(int d) const
{
  KernelSpec s = *this;
  s.d_e = d;
  s.validate();
  return s;
}

void KernelSpec::validate() const
{
  if (n < 1) {
    throw ValidationError("kernel spec: n must be >= 1");
  }
  if (d_e < 1) {
    throw ValidationError("kernel spec: coefficient dimension must be >= 1");
  }
  if (geometry == Geometry::Ball) {
    if (m < 1) {
      throw ValidationError("kernel spec: ball weight m must be >= 1");
    }
  } else {
    if (static_cast<int>(gamma.size()) != n) {
      throw ValidationError("kernel spec: gamma must have n entries");
    }
    for (int g : gamma) {
      if (g < 1) {
        throw ValidationError("kernel spec: every gamma_i must be >= 1");
      }
    }
  }
}

std::string KernelSpec::describe() const
{
  std::ostringstream os;
  if (geometry == Geometry::Ball) {
    os << "Ball(n=" << n << ", m=" << m << ")";
  } else {
    os << "Polydisc(gamma=[";
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      os << (i ? "," : "") << gamma[i];
    }
    os << "])";
  }
  os << " dE=" << d_e;
  return os.str();
}

int order(const MultiIndex & k)
{
  return std::accumulate(k.begin(), k.end(), 0);
}

double binomial(int a, int b)
{
  if (b < 0 || b > a) {
    return 0.0;
  }
  b = std::min(b, a - b);
  double out = 1.0;
  for (int j = 1; j <= b; ++j) {
    out = out * static_cast<double>(a - b + j) / static_cast<double>(j);
  }
  return out < 9e15 ? std::round(out) : out;
}

double rho_ball(int m, const MultiIndex & k)
{
  // Build k one unit at a time: rho(k + e_i) = rho(k) (m + |k|) / (k_i + 1).
  double out = 1.0;
  int total = 0;
  for (int ki : k) {
    if (ki < 0) {
      throw ValidationError("multi-index entries must be nonnegative");
    }
    for (int j = 0; j < ki; ++j) {
      out *= static_cast<double>(m + total) / static_cast<double>(j + 1);
      ++total;
    }
  }
  return out;
}

double rho_polydisc(const std::vector<int> & gamma, const MultiIndex & k)
{
  if (gamma.size() != k.size()) {
    throw DimensionMismatch("rho_polydisc: gamma and k differ in length");
  }
  double out = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (k[i] < 0) {
      throw ValidationError("multi-index entries must be nonnegative");
    }
    for (int j = 0; j < k[i]; ++j) {
      out *= static_cast<double>(gamma[i] + j) / static_cast<double>(j + 1);
    }
  }
  return out;
}

double rho(const KernelSpec & spec, const MultiIndex & k)
{
  return spec.geometry == Geometry::Ball ? rho_ball(spec.m, k) : rho_polydisc(spec.gamma, k);
}

bool is_interior(const KernelSpec & spec, const Point & z)
{
  if (z.size() != spec.n) {
    return false;
  }
  if (spec.geometry == Geometry::Ball) {
    return z.norm() < 1.0 - kDomainMargin;
  }
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    if (!(std::abs(z(i)) < 1.0 - kDomainMargin)) {
      return false;
    }
  }
  return true;
}

void require_interior(const KernelSpec & spec, const Point & z)
{
  if (z.size() != spec.n) {
    throw DimensionMismatch(
            "point has " + std::to_string(z.size()) + " coordinates, expected " +
            std::to_string(spec.n));
  }
  if (!is_interior(spec, z)) {
    throw DomainViolation("point is not strictly inside the domain of " + spec.describe());
  }
}

cdouble kernel_eval(const KernelSpec & spec, const Point & z, const Point & w)
{
  require_interior(spec, z);
  require_interior(spec, w);
  if (spec.geometry == Geometry::Ball) {
    const cdouble inner = w.dot(z);  // sum z_i conj(w_i)
    return std::pow(1.0 - inner, -static_cast<double>(spec.m));
  }
  cdouble out = 1.0;
  for (int i = 0; i < spec.n; ++i) {
    const cdouble base = 1.0 - z(i) * std::conj(w(i));
    out *= std::pow(base, -static_cast<double>(spec.gamma[i]));
  }
  return out;
}

std::map<MultiIndex, double> inverse_kernel_coeffs(const std::vector<int> & gamma)
{
  for (int g : gamma) {
    if (g < 1) {
      throw ValidationError("inverse_kernel_coeffs: gamma_i must be >= 1");
    }
  }
  std::map<MultiIndex, double> out;
  MultiIndex k(gamma.size(), 0);
  while (true) {
    double c = 1.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
      c *= binomial(gamma[i], k[i]);
    }
    out[k] = (order(k) % 2 == 0) ? c : -c;
    std::size_t i = 0;
    while (i < k.size() && k[i] == gamma[i]) {
      k[i] = 0;
      ++i;
    }
    if (i == k.size()) {
      break;
    }
    ++k[i];
  }
  return out;
}

namespace
{

void fill_indices(int n, int pos, int left, MultiIndex & cur, std::vector<MultiIndex> & out)
{
  if (pos == n - 1) {
    cur[pos] = left;
    out.push_back(cur);
    return;
  }
  for (int v = left; v >= 0; --v) {
    cur[pos] = v;
    fill_indices(n, pos + 1, left - v, cur, out);
  }
}

}  // namespace

std::vector<MultiIndex> indices_of_order(int n, int ord)
{
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  fill_indices(n, 0, ord, cur, out);
  return out;
}

std::vector<MultiIndex> indices_up_to(int n, int max_order)
{
  std::vector<MultiIndex> out;
  for (int d = 0; d <= max_order; ++d) {
    auto level = indices_of_order(n, d);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

cdouble monomial(const Point & z, const MultiIndex & k)
{
  cdouble out = 1.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    for (int j = 0; j < k[i]; ++j) {
      out *= z(static_cast<Eigen::Index>(i));
    }
  }
  return out;
}

}  // namespace commlift
