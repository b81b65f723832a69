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

#include "commlift/instance.hpp"

#include "commlift/errors.hpp"
#include "commlift/lifting_ball.hpp"
#include "commlift/lifting_polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace commlift
{

std::string to_string(Mode mode)
{
  switch (mode) {
    case Mode::NpBall: return "np-ball";
    case Mode::LiftBall: return "lift-ball";
    case Mode::LiftPm: return "lift-pm";
    case Mode::LiftPolydisc: return "lift-polydisc";
    case Mode::Factorize: return "factorize";
    case Mode::Certify: return "certify";
  }
  return "np-ball";
}

Mode mode_from_string(const std::string & s)
{
  for (Mode m : {Mode::NpBall, Mode::LiftBall, Mode::LiftPm, Mode::LiftPolydisc,
      Mode::Factorize, Mode::Certify})
  {
    if (to_string(m) == s) {
      return m;
    }
  }
  throw ValidationError("mode: unknown value '" + s + "'");
}

std::string to_string(Status s)
{
  switch (s) {
    case Status::Solved: return "solved";
    case Status::Infeasible: return "infeasible";
    case Status::Inconclusive: return "inconclusive";
    case Status::Error: return "error";
  }
  return "error";
}

int exit_code(Status s)
{
  switch (s) {
    case Status::Solved: return 0;
    case Status::Infeasible: return 2;
    case Status::Inconclusive: return 3;
    case Status::Error: return 1;
  }
  return 1;
}

namespace
{

using nlohmann::json;

const json & field(const json & obj, const std::string & key, const std::string & path)
{
  if (!obj.is_object()) {
    throw ParseError(path + ": expected an object");
  }
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + "." + key + ": missing field");
  }
  return *it;
}

int get_int(const json & v, const std::string & path)
{
  if (!v.is_number_integer()) {
    throw ParseError(path + ": expected an integer");
  }
  return v.get<int>();
}

double get_double(const json & v, const std::string & path)
{
  if (!v.is_number()) {
    throw ParseError(path + ": expected a number");
  }
  return v.get<double>();
}

cdouble get_complex(const json & v, const std::string & path)
{
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    throw ParseError(path + ": expected a complex number [re, im]");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

Matrix get_matrix(const json & v, int rows, int cols, const std::string & path)
{
  if (!v.is_array()) {
    throw ParseError(path + ": expected an array of rows");
  }
  if (static_cast<int>(v.size()) != rows) {
    throw ValidationError(
            path + ": expected " + std::to_string(rows) + " rows, got " +
            std::to_string(v.size()));
  }
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const std::string rp = path + "[" + std::to_string(i) + "]";
    const json & row = v[static_cast<std::size_t>(i)];
    if (!row.is_array()) {
      throw ParseError(rp + ": expected an array of entries");
    }
    if (static_cast<int>(row.size()) != cols) {
      throw ValidationError(
              rp + ": expected " + std::to_string(cols) + " entries, got " +
              std::to_string(row.size()));
    }
    for (int k = 0; k < cols; ++k) {
      m(i, k) = get_complex(row[static_cast<std::size_t>(k)], rp + "[" + std::to_string(k) + "]");
    }
  }
  return m;
}

json point_to_json(const Point & z)
{
  json out = json::array();
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    out.push_back({z(i).real(), z(i).imag()});
  }
  return out;
}

std::string line_col(const std::string & doc, std::size_t byte)
{
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < std::min(byte, doc.size()); ++i) {
    if (doc[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

void parse_options(const json & j, RunOptions & o)
{
  const std::string path = "$.options";
  if (!j.is_object()) {
    throw ParseError(path + ": expected an object");
  }
  for (const auto & [key, v] : j.items()) {
    const std::string kp = path + "." + key;
    if (key == "psd_tol") {
      o.psd_tol = get_double(v, kp);
    } else if (key == "verify_tol") {
      o.verify_tol = get_double(v, kp);
    } else if (key == "cert_tol") {
      o.cert_tol = get_double(v, kp);
    } else if (key == "agler_tol") {
      o.agler_tol = get_double(v, kp);
    } else if (key == "max_iter") {
      o.max_iter = get_int(v, kp);
    } else if (key == "samples") {
      o.samples = get_int(v, kp);
    } else if (key == "seed") {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw ParseError(kp + ": expected a nonnegative integer");
      }
      o.seed = v.get<std::uint64_t>();
    } else if (key == "grid") {
      if (!v.is_object()) {
        throw ParseError(kp + ": expected an object");
      }
      if (v.contains("radius")) {
        o.grid.radius = get_double(v["radius"], kp + ".radius");
      }
      if (v.contains("rings")) {
        o.grid.rings = get_int(v["rings"], kp + ".rings");
      }
      if (v.contains("angles")) {
        o.grid.angles = get_int(v["angles"], kp + ".angles");
      }
    } else {
      throw ParseError(kp + ": unknown option");
    }
  }
  if (o.max_iter < 1 || o.samples < 0 || !(o.psd_tol > 0) || !(o.verify_tol > 0)) {
    throw ValidationError("$.options: tolerances must be positive, max_iter >= 1, samples >= 0");
  }
}

// Shared by the parser and run(): the CLI may swap the mode after parsing.
void check_mode(const ProblemInstance & inst)
{
  const bool ball_mode = inst.mode != Mode::LiftPolydisc;
  if (ball_mode && inst.spec.geometry != Geometry::Ball) {
    throw ValidationError("$.mode: " + to_string(inst.mode) + " needs ball geometry");
  }
  if (!ball_mode && inst.spec.geometry != Geometry::Polydisc) {
    throw ValidationError("$.mode: lift-polydisc needs polydisc geometry");
  }
  if (inst.mode == Mode::LiftPm && (!inst.p || *inst.p <= inst.spec.m)) {
    throw ValidationError("$.p: lift-pm needs p > m");
  }
  if (inst.mode == Mode::Factorize && (!inst.p || *inst.p < inst.spec.m)) {
    throw ValidationError("$.p: factorize needs p >= m");
  }
}

}  // namespace

ProblemInstance instance_from_json(const json & j)
{
  ProblemInstance inst;
  const std::string geo = [&] {
      const json & g = field(j, "geometry", "$");
      if (!g.is_string()) {
        throw ParseError("$.geometry: expected a string");
      }
      return g.get<std::string>();
    }();
  const int n = get_int(field(j, "n", "$"), "$.n");
  inst.d_e = get_int(field(j, "dE", "$"), "$.dE");
  inst.d_estar = get_int(field(j, "dEstar", "$"), "$.dEstar");
  if (inst.d_e < 1 || inst.d_estar < 1 || n < 1) {
    throw ValidationError("$: n, dE and dEstar must be >= 1");
  }
  if (geo == "ball") {
    const json & m = field(j, "m", "$");
    inst.spec = KernelSpec::ball(n, get_int(m, "$.m"), inst.d_e);
  } else if (geo == "polydisc") {
    const json & g = field(j, "gamma", "$");
    if (!g.is_array()) {
      throw ParseError("$.gamma: expected an array");
    }
    std::vector<int> gamma;
    for (std::size_t i = 0; i < g.size(); ++i) {
      gamma.push_back(get_int(g[i], "$.gamma[" + std::to_string(i) + "]"));
    }
    if (static_cast<int>(gamma.size()) != n) {
      throw ValidationError("$.gamma: expected n entries");
    }
    inst.spec = KernelSpec::polydisc(gamma, inst.d_e);
  } else {
    throw ValidationError("$.geometry: expected \"ball\" or \"polydisc\"");
  }
  if (j.contains("p") && !j["p"].is_null()) {
    inst.p = get_int(j["p"], "$.p");
  }
  const json & mode = field(j, "mode", "$");
  if (!mode.is_string()) {
    throw ParseError("$.mode: expected a string");
  }
  inst.mode = mode_from_string(mode.get<std::string>());

  const json & nodes = field(j, "nodes", "$");
  if (!nodes.is_array() || nodes.empty()) {
    throw ParseError("$.nodes: expected a non-empty array");
  }
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string np = "$.nodes[" + std::to_string(k) + "]";
    const json & z = nodes[k];
    if (!z.is_array()) {
      throw ParseError(np + ": expected an array of coordinates");
    }
    if (static_cast<int>(z.size()) != n) {
      throw ValidationError(np + ": expected " + std::to_string(n) + " coordinates");
    }
    Point pt(n);
    for (int i = 0; i < n; ++i) {
      pt(i) = get_complex(z[static_cast<std::size_t>(i)], np + "[" + std::to_string(i) + "]");
    }
    if (!is_interior(inst.spec, pt)) {
      throw ValidationError(np + ": node is not strictly inside the domain");
    }
    inst.nodes.push_back(pt);
  }
  const json & targets = field(j, "targets", "$");
  if (!targets.is_array()) {
    throw ParseError("$.targets: expected an array");
  }
  if (targets.size() != nodes.size()) {
    throw ValidationError("$.targets: expected one target per node");
  }
  for (std::size_t k = 0; k < targets.size(); ++k) {
    inst.targets.push_back(
      get_matrix(targets[k], inst.d_estar, inst.d_e, "$.targets[" + std::to_string(k) + "]"));
  }
  if (j.contains("options")) {
    parse_options(j["options"], inst.options);
  }

  check_mode(inst);
  return inst;
}

ProblemInstance parse_instance(const std::string & document)
{
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error & e) {
    throw ParseError(
            "malformed JSON at " + line_col(document, e.byte > 0 ? e.byte - 1 : 0) + ": " +
            e.what());
  }
  try {
    return instance_from_json(j);
  } catch (const json::exception & e) {
    throw ParseError(std::string("instance document: ") + e.what());
  }
}

json to_json(const ProblemInstance & inst)
{
  json j;
  j["geometry"] = inst.spec.geometry == Geometry::Ball ? "ball" : "polydisc";
  if (inst.spec.geometry == Geometry::Ball) {
    j["m"] = inst.spec.m;
    j["gamma"] = nullptr;
  } else {
    j["m"] = nullptr;
    j["gamma"] = inst.spec.gamma;
  }
  j["n"] = inst.spec.n;
  j["dE"] = inst.d_e;
  j["dEstar"] = inst.d_estar;
  if (inst.p) {
    j["p"] = *inst.p;
  }
  json nodes = json::array();
  for (const auto & z : inst.nodes) {
    nodes.push_back(point_to_json(z));
  }
  j["nodes"] = nodes;
  json targets = json::array();
  for (const auto & w : inst.targets) {
    targets.push_back(matrix_to_json(w));
  }
  j["targets"] = targets;
  j["mode"] = to_string(inst.mode);
  const RunOptions & o = inst.options;
  j["options"] = {
    {"psd_tol", o.psd_tol}, {"verify_tol", o.verify_tol}, {"cert_tol", o.cert_tol},
    {"agler_tol", o.agler_tol}, {"max_iter", o.max_iter}, {"samples", o.samples},
    {"seed", o.seed},
    {"grid", {{"radius", o.grid.radius}, {"rings", o.grid.rings}, {"angles", o.grid.angles}}}};
  return j;
}

std::vector<Point> random_ball_samples(int n, int count, std::uint64_t seed, double radius)
{
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    Point z(n);
    for (int i = 0; i < n; ++i) {
      z(i) = cdouble(gauss(rng), gauss(rng));
    }
    // Uniform in the ball of C^n = R^{2n}.
    const double r = radius * std::pow(unif(rng), 1.0 / (2.0 * n));
    out.push_back(z * (r / z.norm()));
  }
  return out;
}

namespace
{

LiftOptions lift_options(const RunOptions & o)
{
  LiftOptions lo;
  lo.verify_tol = o.verify_tol;
  lo.psd_rel = o.psd_tol;
  return lo;
}

json node_table(
  const std::vector<Point> & nodes, const std::vector<Matrix> & targets, const Evaluator & phi,
  double & worst)
{
  json rows = json::array();
  worst = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const Matrix v = phi(nodes[j]);
    const double r = op_norm(v - targets[j]);
    worst = std::max(worst, r);
    rows.push_back(
      {{"z", point_to_json(nodes[j])}, {"target", matrix_to_json(targets[j])},
        {"phi", matrix_to_json(v)}, {"residual", r}});
  }
  return rows;
}

void add_lift_certificates(json & cert, const LiftResult & lift)
{
  cert["delta_min_eig"] = lift.certificate.delta_min_eig;
  cert["generating_residual"] = lift.certificate.generating_residual;
  cert["identity_residual"] = lift.certificate.identity_residual;
  cert["operator_residual"] = lift.certificate.operator_residual;
  cert["verify_residual"] = lift.certificate.verify_residual;
  cert["colligation_norm"] = lift.colligation.norm();
  if (lift.colligation.completion == CompletionKind::Unitary) {
    cert["unitarity_defect"] = lift.colligation.unitarity_defect();
  }
}

void finish_solved(
  RunReport & rep, const ProblemInstance & inst, const Evaluator & phi, const LiftResult & lift,
  bool want_scan)
{
  json & doc = rep.document;
  add_lift_certificates(doc["certificates"], lift);
  doc["colligation"] = to_json(lift.colligation);
  double worst = 0.0;
  doc["nodes"] = node_table(inst.nodes, inst.targets, phi, worst);
  doc["certificates"]["node_residual"] = worst;
  if (want_scan) {
    rep.scan = sup_norm_scan(phi, inst.spec.geometry, inst.spec.n, inst.options.grid);
    doc["certificates"]["scan_max"] = rep.scan->max_norm;
  }
  rep.status = Status::Solved;
}

void report_np(RunReport & rep, const ProblemInstance & inst, const NpResult & np)
{
  json & cert = rep.document["certificates"];
  cert["pick1_min_eig"] = np.pick1_min_eig;
  cert["pick2_min_eig"] = np.pick2_min_eig;
  if (!np.feasible()) {
    rep.status = Status::Infeasible;
    cert["violated"] = np.infeasible->violated;
    cert["min_eig"] = np.infeasible->min_eig;
    cert["delta_min_eig"] = np.infeasible->delta_min_eig;
  }
  (void)inst;
}

void run_ball_np(RunReport & rep, const ProblemInstance & inst, bool want_scan)
{
  const KernelSpec spec = KernelSpec::ball(inst.spec.n, inst.spec.m);
  const NpResult np = np_solve(spec, inst.nodes, inst.targets, lift_options(inst.options));
  report_np(rep, inst, np);
  if (!np.feasible()) {
    return;
  }
  const Evaluator phi = np.lift->phi.evaluator();
  finish_solved(rep, inst, phi, *np.lift, want_scan);
  json & cert = rep.document["certificates"];
  const auto samples =
    random_ball_samples(inst.spec.n, inst.options.samples, inst.options.seed);
  if (inst.mode == Mode::Certify) {
    const CertificateResult c =
      schur_agler_certificate_ball(phi, samples, inst.options.cert_tol);
    cert["schur_agler_min_eig"] = c.min_eig;
    cert["schur_agler_pass"] = c.pass;
    if (!c.pass) {
      rep.status = Status::Infeasible;
    }
  } else if (inst.mode == Mode::Factorize) {
    const CertificateResult c =
      factorization_criterion(phi, inst.spec.m, *inst.p, samples, inst.options.cert_tol);
    cert["factorization_min_eig"] = c.min_eig;
    cert["factorization_pass"] = c.pass;
    if (!c.pass) {
      rep.status = Status::Infeasible;
    }
  }
}

void run_lift_ball(RunReport & rep, const ProblemInstance & inst, bool want_scan)
{
  const KernelSubspace q1 = build_subspace(inst.spec.with_coeff_dim(inst.d_e), inst.nodes);
  const KernelSubspace q2 = build_subspace(inst.spec.with_coeff_dim(inst.d_estar), inst.nodes);
  const Matrix x = np_target_operator(q1, q2, inst.targets);
  try {
    const LiftResult lift = lift_ball_model(q1, q2, x, lift_options(inst.options));
    finish_solved(rep, inst, lift.phi.evaluator(), lift, want_scan);
  } catch (const NotPositive & e) {
    rep.status = Status::Infeasible;
    rep.document["certificates"]["violated"] = "positivity-2";
    rep.document["certificates"]["delta_min_eig"] = e.value();
  } catch (const NotContraction & e) {
    rep.status = Status::Infeasible;
    rep.document["certificates"]["violated"] = "positivity-1";
    rep.document["certificates"]["x_norm"] = e.value();
  }
}

void run_lift_pm(RunReport & rep, const ProblemInstance & inst, bool want_scan)
{
  const int m = inst.spec.m;
  const int p = *inst.p;
  const KernelSubspace q1 = build_subspace(KernelSpec::ball(inst.spec.n, m, inst.d_e), inst.nodes);
  const KernelSubspace q2 =
    build_subspace(KernelSpec::ball(inst.spec.n, p, inst.d_estar), inst.nodes);
  const Matrix x = np_target_operator(q1, q2, inst.targets);
  try {
    const PmLiftResult res = lift_p_gt_m(q1, q2, x, lift_options(inst.options));
    finish_solved(rep, inst, res.composite, res.lift1, want_scan);
    json & cert = rep.document["certificates"];
    cert["composite_residual"] = res.composite_residual;
    cert["delta_min_eig"] = res.delta_min_eig;
    cert["delta_min_eig_tilde"] = res.delta_min_eig_tilde;
    cert["dilation_gram_residual"] = res.dilation.gram_residual;
    cert["dilation_isometry_residual"] = res.dilation.isometry_residual;
  } catch (const NotPositive & e) {
    rep.status = Status::Infeasible;
    rep.document["certificates"]["violated"] = "positivity-2";
    rep.document["certificates"]["delta_min_eig"] = e.value();
  } catch (const NotContraction & e) {
    rep.status = Status::Infeasible;
    rep.document["certificates"]["violated"] = "positivity-1";
    rep.document["certificates"]["x_norm"] = e.value();
  }
}

void run_lift_polydisc(RunReport & rep, const ProblemInstance & inst, bool want_scan)
{
  const KernelSubspace q1 = build_subspace(inst.spec.with_coeff_dim(inst.d_e), inst.nodes);
  const KernelSubspace q2 = build_subspace(inst.spec.with_coeff_dim(inst.d_estar), inst.nodes);
  const Matrix x = np_target_operator(q1, q2, inst.targets);
  json & cert = rep.document["certificates"];
  const double nx = op_norm(x);
  cert["x_norm"] = nx;
  if (nx > 1.0 + 1e-10) {
    rep.status = Status::Infeasible;
    cert["violated"] = "contraction";
    return;
  }
  AglerOptions ao;
  ao.tol = inst.options.agler_tol;
  ao.max_iter = inst.options.max_iter;
  const AglerOutcome outcome = agler_feasibility(model_tuple(q2), x, inst.spec.gamma, ao);
  cert["agler_iterations"] = outcome.iterations;
  cert["agler_affine_residual"] = outcome.affine_residual;
  cert["agler_worst_cone_eig"] = outcome.worst_cone_eig;
  if (!outcome.feasible()) {
    rep.status = Status::Inconclusive;
    rep.document["decomposition"] = to_json(outcome.last);
    return;
  }
  const PolydiscLiftResult res =
    lift_polydisc_model(q1, q2, x, *outcome.decomposition, lift_options(inst.options));
  rep.document["decomposition"] = to_json(res.decomposition);
  finish_solved(rep, inst, res.lift.phi.evaluator(), res.lift, want_scan);
  rep.document["certificates"]["hereditary_difference_residual"] =
    res.hereditary_difference_residual;
}

}  // namespace

RunReport run(const ProblemInstance & inst, bool want_scan)
{
  RunReport rep;
  rep.document = json::object();
  rep.document["mode"] = to_string(inst.mode);
  rep.document["certificates"] = json::object();
  try {
    check_mode(inst);
    switch (inst.mode) {
      case Mode::NpBall:
      case Mode::Certify:
      case Mode::Factorize:
        run_ball_np(rep, inst, want_scan);
        break;
      case Mode::LiftBall:
        run_lift_ball(rep, inst, want_scan);
        break;
      case Mode::LiftPm:
        run_lift_pm(rep, inst, want_scan);
        break;
      case Mode::LiftPolydisc:
        run_lift_polydisc(rep, inst, want_scan);
        break;
    }
  } catch (const Error & e) {
    rep.status = Status::Error;
    rep.document["error"] = {{"kind", e.kind()}, {"message", e.what()}};
    rep.scan.reset();
  } catch (const std::exception & e) {
    rep.status = Status::Error;
    rep.document["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
    rep.scan.reset();
  }
  rep.document["status"] = to_string(rep.status);
  return rep;
}

RunReport run_document(const std::string & document, bool want_scan)
{
  try {
    return run(parse_instance(document), want_scan);
  } catch (const Error & e) {
    RunReport rep;
    rep.status = Status::Error;
    rep.document = {{"status", "error"}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
    return rep;
  }
}

}  // namespace commlift
