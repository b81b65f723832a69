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

#include "commlift/errors.hpp"
#include "commlift/instance.hpp"
#include "commlift/lifting_polydisc.hpp"

#include "checks.hpp"
#include "generators.hpp"

using namespace commlift;
using namespace commlift::testing;
using nlohmann::json;

namespace
{

const char * kDisc = R"({
  "geometry": "ball", "m": 1, "gamma": null, "n": 1, "dE": 1, "dEstar": 1,
  "nodes": [[[0.0, 0.0]]],
  "targets": [[[[0.5, 0.0]]]],
  "mode": "np-ball"
})";

json disc_doc()
{
  return json::parse(kDisc);
}

json complex_json(cdouble z)
{
  return json::array({z.real(), z.imag()});
}

json instance_doc(
  const std::string & geometry, const std::vector<Point> & nodes, const std::vector<Matrix> & w,
  const std::string & mode)
{
  json j;
  j["geometry"] = geometry;
  if (geometry == "ball") {
    j["m"] = 1;
  }
  j["n"] = nodes.front().size();
  j["dE"] = w.front().cols();
  j["dEstar"] = w.front().rows();
  json jn = json::array();
  for (const auto & z : nodes) {
    json p = json::array();
    for (Eigen::Index i = 0; i < z.size(); ++i) {
      p.push_back(complex_json(z(i)));
    }
    jn.push_back(p);
  }
  j["nodes"] = jn;
  json jt = json::array();
  for (const auto & a : w) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < a.cols(); ++c) {
        row.push_back(complex_json(a(r, c)));
      }
      rows.push_back(row);
    }
    jt.push_back(rows);
  }
  j["targets"] = jt;
  j["mode"] = mode;
  return j;
}

}  // namespace

TEST_CASE("minimal disc instance parses") {
  const ProblemInstance inst = parse_instance(kDisc);
  CHECK(inst.spec.geometry == Geometry::Ball);
  CHECK(inst.spec.n == 1);
  CHECK(inst.nodes.size() == 1);
  CHECK(inst.targets.front()(0, 0) == cdouble(0.5, 0.0));
  CHECK(inst.mode == Mode::NpBall);
  CHECK(inst.options.seed == 1);
}

TEST_CASE("boundary node is rejected") {
  json j = disc_doc();
  j["nodes"][0][0] = {1.0, 0.0};
  CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
}

TEST_CASE("target with the wrong row count is rejected") {
  json j = disc_doc();
  j["dEstar"] = 2;
  CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
}

TEST_CASE("parse errors carry a location") {
  try {
    parse_instance("{\n  \"geometry\": \"ball\",\n  \"n\": 1,,\n}");
    CHECK(false);
  } catch (const ParseError & e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  json j = disc_doc();
  j.erase("dE");
  try {
    parse_instance(j.dump());
    CHECK(false);
  } catch (const ParseError & e) {
    CHECK(std::string(e.what()).find("$.dE") != std::string::npos);
  }
  j = disc_doc();
  j["nodes"][0][0] = {0.1};
  try {
    parse_instance(j.dump());
    CHECK(false);
  } catch (const ParseError & e) {
    CHECK(std::string(e.what()).find("$.nodes[0][0]") != std::string::npos);
  }
  j = disc_doc();
  j["mode"] = "lift-pm";
  CHECK_THROWS_AS(parse_instance(j.dump()), ValidationError);
  j = disc_doc();
  j["options"] = {{"bogus", 1}};
  CHECK_THROWS_AS(parse_instance(j.dump()), ParseError);
}

TEST_CASE("serialization round trip is idempotent") {
  json j = disc_doc();
  j["options"] = {{"seed", 9}, {"grid", {{"rings", 3}}}};
  const json once = to_json(parse_instance(j.dump()));
  const json twice = to_json(parse_instance(once.dump()));
  CHECK(once.dump() == twice.dump());
  CHECK(once["options"]["seed"] == 9);
  CHECK(once["options"]["grid"]["rings"] == 3);
}

TEST_CASE("Mobius instance runs to a solved report") {
  const RunReport rep = run_document(kDisc);
  CHECK(rep.status == Status::Solved);
  CHECK(rep.exit_code() == 0);
  CHECK(rep.document["status"] == "solved");
  CHECK(rep.document["nodes"][0]["residual"].get<double>() <= 1e-10);
  CHECK(rep.document["colligation"]["rows"] == 2);
  CHECK(rep.document["certificates"]["node_residual"].get<double>() <= 1e-10);
}

TEST_CASE("infeasible two-node instance reports the Pick eigenvalue") {
  const std::vector<Point> nodes{pt({0.0}), pt({0.5})};
  const std::vector<Matrix> w{scalar(0.9), scalar(-0.9)};
  const RunReport rep = run_document(instance_doc("ball", nodes, w, "np-ball").dump());
  CHECK(rep.status == Status::Infeasible);
  CHECK(rep.exit_code() == 2);
  const double direct = min_eigenvalue(brute_pick(KernelSpec::ball(1, 1), nodes, w));
  CHECK(direct < 0.0);
  CHECK(rep.document["certificates"]["min_eig"].get<double>() == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("polydisc run stopped at one iteration is inconclusive") {
  Rng rng(21);
  for (;;) {
    const PolydiscInstance inst = schur_agler_bidisc_instance(rng, 4, 0.7);
    const auto q = build_subspace(KernelSpec::polydisc({1, 1}), inst.nodes);
    AglerOptions one;
    one.max_iter = 1;
    if (agler_feasibility(model_tuple(q), np_target_operator(q, q, inst.targets), {1, 1}, one)
      .feasible())
    {
      continue;
    }
    json j = instance_doc("polydisc", inst.nodes, inst.targets, "lift-polydisc");
    j["gamma"] = {1, 1};
    j["options"] = {{"max_iter", 1}};
    const RunReport stopped = run_document(j.dump());
    CHECK(stopped.status == Status::Inconclusive);
    CHECK(stopped.exit_code() == 3);
    CHECK(stopped.document.contains("decomposition"));
    j["options"] = {{"max_iter", 10000}};
    const RunReport full = run_document(j.dump());
    CHECK(full.status == Status::Solved);
    CHECK(full.document["certificates"]["node_residual"].get<double>() <= 1e-6);
    break;
  }
}

TEST_CASE("reports are deterministic") {
  Rng rng(22);
  const BallInstance inst = solvable_ball_instance(rng, 2, 2, 3, 1, 1);
  json j = instance_doc("ball", inst.nodes, inst.targets, "certify");
  j["m"] = 2;
  j["options"] = {{"samples", 50}, {"seed", 4}};
  const RunReport a = run_document(j.dump(), true);
  const RunReport b = run_document(j.dump(), true);
  CHECK(a.status == Status::Solved);
  CHECK(a.document.dump() == b.document.dump());
  CHECK(a.document["certificates"]["schur_agler_pass"] == true);
  REQUIRE(a.scan.has_value());
  CHECK(a.scan->rows.size() == b.scan->rows.size());
}

TEST_CASE("every mode runs") {
  Rng rng(23);
  const BallInstance ball = solvable_ball_instance(rng, 2, 1, 2, 1, 1);
  json lb = instance_doc("ball", ball.nodes, ball.targets, "lift-ball");
  lb["m"] = 1;
  CHECK(run_document(lb.dump()).status == Status::Solved);

  json fac = lb;
  fac["mode"] = "factorize";
  fac["p"] = 2;
  fac["options"] = {{"samples", 40}};
  const RunReport f = run_document(fac.dump());
  CHECK(f.status != Status::Error);
  CHECK(f.document["certificates"].contains("factorization_min_eig"));

  const BallInstance pm = pm_instance(rng, 2, 3, 2);
  json jpm = instance_doc("ball", pm.nodes, pm.targets, "lift-pm");
  jpm["m"] = 1;
  jpm["p"] = 3;
  const RunReport rpm = run_document(jpm.dump());
  CHECK(rpm.status == Status::Solved);
  CHECK(rpm.document["certificates"]["node_residual"].get<double>() <= 1e-6);
}

TEST_CASE("library errors become error reports") {
  json j = disc_doc();
  j["nodes"] = {{{0.2, 0.0}}, {{0.2, 0.0}}};
  j["targets"] = {{{{0.1, 0.0}}}, {{{0.1, 0.0}}}};
  const RunReport rep = run_document(j.dump());
  CHECK(rep.status == Status::Error);
  CHECK(rep.exit_code() == 1);
  CHECK(rep.document["error"]["kind"] == "IllConditioned");
  const RunReport bad = run_document("not json");
  CHECK(bad.document["error"]["kind"] == "ParseError");
}

TEST_CASE("sample generation is seeded") {
  const auto a = random_ball_samples(3, 10, 42);
  const auto b = random_ball_samples(3, 10, 42);
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k] == b[k]);
    CHECK(a[k].norm() < 0.95);
  }
  CHECK(random_ball_samples(3, 10, 43)[0] != a[0]);
}

TEST_CASE("run rejects a mode swapped onto the wrong geometry") {
  Rng rng(5);
  const PolydiscInstance src = schur_agler_bidisc_instance(rng, 2, 0.6);
  json j = instance_doc("polydisc", src.nodes, src.targets, "lift-polydisc");
  j["gamma"] = {1, 1};
  ProblemInstance inst = instance_from_json(j);
  inst.mode = Mode::Certify;
  const RunReport rep = run(inst);
  CHECK(rep.status == Status::Error);
  CHECK(rep.document["error"]["kind"] == "ValidationError");
}
