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

#ifndef COMMLIFT_INSTANCE_HPP_
#define COMMLIFT_INSTANCE_HPP_

#include "commlift/kernel.hpp"
#include "commlift/linalg.hpp"
#include "commlift/transfer.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace commlift
{

enum class Mode { NpBall, LiftBall, LiftPm, LiftPolydisc, Factorize, Certify };

std::string to_string(Mode mode);
Mode mode_from_string(const std::string & s);

struct RunOptions
{
  double psd_tol = 1e-9;       // relative PSD tolerance
  double verify_tol = 1e-7;
  double cert_tol = 1e-7;      // certificate / factorization pass threshold
  double agler_tol = 1e-8;
  int max_iter = 10000;
  int samples = 200;
  std::uint64_t seed = 1;
  GridSpec grid;
};

struct ProblemInstance
{
  KernelSpec spec;           // geometry and weights; d_e is the input dimension
  int d_e = 1;               // input coefficient dimension
  int d_estar = 1;           // output coefficient dimension
  std::optional<int> p;      // target weight for lift-pm / factorize
  std::vector<Point> nodes;
  std::vector<Matrix> targets;   // d_estar x d_e
  Mode mode = Mode::NpBall;
  RunOptions options;
};

ProblemInstance parse_instance(const std::string & document);
ProblemInstance instance_from_json(const nlohmann::json & j);
nlohmann::json to_json(const ProblemInstance & inst);

enum class Status { Solved, Infeasible, Inconclusive, Error };

std::string to_string(Status s);
int exit_code(Status s);

struct RunReport
{
  Status status = Status::Error;
  nlohmann::json document;
  std::optional<ScanResult> scan;
  int exit_code() const {return commlift::exit_code(status);}
};

// Runs the instance; library errors are mapped into the report.
RunReport run(const ProblemInstance & inst, bool want_scan = false);
// Parses then runs; parse errors become an error report.
RunReport run_document(const std::string & document, bool want_scan = false);

// Deterministic interior samples for certificates.
std::vector<Point> random_ball_samples(int n, int count, std::uint64_t seed, double radius = 0.95);

}  // namespace commlift

#endif  // COMMLIFT_INSTANCE_HPP_
