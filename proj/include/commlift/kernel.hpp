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

#ifndef COMMLIFT_KERNEL_HPP_
#define COMMLIFT_KERNEL_HPP_

#include "commlift/linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace commlift
{

using MultiIndex = std::vector<int>;

inline constexpr double kDomainMargin = 1e-12;

enum class Geometry { Ball, Polydisc };

struct KernelSpec
{
  Geometry geometry = Geometry::Ball;
  int n = 1;
  int m = 1;                 // ball weight
  std::vector<int> gamma;    // polydisc weights, size n
  int d_e = 1;               // coefficient dimension

  static KernelSpec ball(int n, int m, int d_e = 1);
  static KernelSpec polydisc(std::vector<int> gamma, int d_e = 1);

  // Same geometry and weights, different coefficient dimension.
  KernelSpec with_coeff_dim(int d) const;
  void validate() const;
  std::string describe() const;
};

int order(const MultiIndex & k);
double binomial(int a, int b);

double rho_ball(int m, const MultiIndex & k);
double rho_polydisc(const std::vector<int> & gamma, const MultiIndex & k);
double rho(const KernelSpec & spec, const MultiIndex & k);

bool is_interior(const KernelSpec & spec, const Point & z);
// Throws DomainViolation (or DimensionMismatch for a wrong coordinate count).
void require_interior(const KernelSpec & spec, const Point & z);

cdouble kernel_eval(const KernelSpec & spec, const Point & z, const Point & w);

// Coefficients c_k of prod_i (1 - z_i w_i^*)^{gamma_i} = sum_k c_k z^k (w^*)^k.
std::map<MultiIndex, double> inverse_kernel_coeffs(const std::vector<int> & gamma);

// Multi-indices of exactly the given order, in lexicographically decreasing order of
// the leading entries (e.g. (2,0),(1,1),(0,2)).
std::vector<MultiIndex> indices_of_order(int n, int ord);
std::vector<MultiIndex> indices_up_to(int n, int max_order);

// z^k for a point z.
cdouble monomial(const Point & z, const MultiIndex & k);

}  // namespace commlift

#endif  // COMMLIFT_KERNEL_HPP_
