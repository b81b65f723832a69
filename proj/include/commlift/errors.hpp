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

#ifndef COMMLIFT_ERRORS_HPP_
#define COMMLIFT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace commlift
{

// Base of every library error. `kind()` is a stable machine-readable tag used by the
// CLI report.
class Error : public std::runtime_error
{
public:
  Error(std::string kind, const std::string & what)
  : std::runtime_error(what), kind_(std::move(kind))
  {
  }
  const std::string & kind() const noexcept {return kind_;}

private:
  std::string kind_;
};

// Error that carries one diagnostic number (eigenvalue, residual, norm).
class ValuedError : public Error
{
public:
  ValuedError(std::string kind, const std::string & what, double value)
  : Error(std::move(kind), what + " (" + std::to_string(value) + ")"), value_(value)
  {
  }
  double value() const noexcept {return value_;}

private:
  double value_;
};

struct DomainViolation : Error
{
  explicit DomainViolation(const std::string & what)
  : Error("DomainViolation", what) {}
};

struct DimensionMismatch : Error
{
  explicit DimensionMismatch(const std::string & what)
  : Error("DimensionMismatch", what) {}
};

struct IllConditioned : ValuedError
{
  IllConditioned(const std::string & what, double ratio)
  : ValuedError("IllConditioned", what, ratio) {}
};

struct NotHypercontraction : ValuedError
{
  NotHypercontraction(const std::string & what, double min_eig)
  : ValuedError("NotHypercontraction", what, min_eig) {}
};

struct NotPositive : ValuedError
{
  NotPositive(const std::string & what, double min_eig)
  : ValuedError("NotPositive", what, min_eig) {}
};

struct NotIntertwining : ValuedError
{
  NotIntertwining(const std::string & what, double residual)
  : ValuedError("NotIntertwining", what, residual) {}
};

struct NotContraction : ValuedError
{
  NotContraction(const std::string & what, double norm)
  : ValuedError("NotContraction", what, norm) {}
};

struct GramMismatch : ValuedError
{
  GramMismatch(const std::string & what, double deviation)
  : ValuedError("GramMismatch", what, deviation) {}
};

struct BalanceViolation : ValuedError
{
  BalanceViolation(const std::string & what, double residual)
  : ValuedError("BalanceViolation", what, residual) {}
};

struct NearSingularResolvent : ValuedError
{
  NearSingularResolvent(const std::string & what, double rcond)
  : ValuedError("NearSingularResolvent", what, rcond) {}
};

struct NotConverged : ValuedError
{
  NotConverged(const std::string & what, double increment)
  : ValuedError("NotConverged", what, increment) {}
};

struct VerificationFailed : ValuedError
{
  VerificationFailed(const std::string & what, double residual)
  : ValuedError("VerificationFailed", what, residual) {}
};

struct EvaluationFailure : Error
{
  explicit EvaluationFailure(const std::string & what)
  : Error("EvaluationFailure", what) {}
};

struct ParseError : Error
{
  explicit ParseError(const std::string & what)
  : Error("ParseError", what) {}
};

struct ValidationError : Error
{
  explicit ValidationError(const std::string & what)
  : Error("ValidationError", what) {}
};

}  // namespace commlift

#endif  // COMMLIFT_ERRORS_HPP_
