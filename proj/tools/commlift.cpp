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

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

namespace
{

struct Overrides
{
  std::optional<double> psd_tol;
  std::optional<double> verify_tol;
  std::optional<int> max_iter;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  std::string grid;
};

std::string read_input(const std::string & path)
{
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) {
    throw commlift::ParseError("cannot open input file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// "RxA" sets rings and angles, a bare N sets both.
commlift::GridSpec parse_grid(const std::string & text, commlift::GridSpec grid)
{
  const auto x = text.find('x');
  try {
    if (x == std::string::npos) {
      grid.rings = grid.angles = std::stoi(text);
    } else {
      grid.rings = std::stoi(text.substr(0, x));
      grid.angles = std::stoi(text.substr(x + 1));
    }
  } catch (const std::exception &) {
    throw commlift::ValidationError("--grid: expected RxA or N, got '" + text + "'");
  }
  if (grid.rings < 1 || grid.angles < 1) {
    throw commlift::ValidationError("--grid: sizes must be >= 1");
  }
  return grid;
}

void apply(const Overrides & ov, commlift::RunOptions & o)
{
  if (ov.psd_tol) {o.psd_tol = *ov.psd_tol;}
  if (ov.verify_tol) {o.verify_tol = *ov.verify_tol;}
  if (ov.max_iter) {o.max_iter = *ov.max_iter;}
  if (ov.samples) {o.samples = *ov.samples;}
  if (ov.seed) {o.seed = *ov.seed;}
  if (!ov.grid.empty()) {o.grid = parse_grid(ov.grid, o.grid);}
}

void emit(const nlohmann::json & doc, const std::string & out_path)
{
  const std::string text = doc.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    throw commlift::ValidationError("cannot write '" + out_path + "'");
  }
  out << text;
}

int execute(
  const std::string & input, const Overrides & ov, std::optional<commlift::Mode> force_mode,
  bool want_scan, const std::string & out_path, const std::string & csv_path)
{
  commlift::RunReport rep;
  int n = 0;
  try {
    commlift::ProblemInstance inst = commlift::parse_instance(read_input(input));
    apply(ov, inst.options);
    if (force_mode) {
      inst.mode = *force_mode;
    }
    n = inst.spec.n;
    rep = commlift::run(inst, want_scan);
  } catch (const commlift::Error & e) {
    rep.status = commlift::Status::Error;
    rep.document = {{"status", "error"}, {"error", {{"kind", e.kind()}, {"message", e.what()}}}};
  }
  if (rep.status == commlift::Status::Error) {
    std::cerr << "commlift: " << rep.document["error"]["kind"].get<std::string>() << ": "
              << rep.document["error"]["message"].get<std::string>() << "\n";
  }
  const bool csv_to_stdout = csv_path.empty() || csv_path == "-";
  // With the table on stdout the report is only written when -o names a file.
  if (!(rep.scan && csv_to_stdout && out_path.empty())) {
    emit(rep.document, out_path);
  }
  if (rep.scan) {
    if (csv_to_stdout) {
      commlift::write_scan_csv(std::cout, *rep.scan, n);
    } else {
      std::ofstream csv(csv_path);
      if (!csv) {
        std::cerr << "commlift: cannot write '" << csv_path << "'\n";
        return 1;
      }
      commlift::write_scan_csv(csv, *rep.scan, n);
    }
  }
  return rep.exit_code();
}

void add_common(CLI::App * sub, std::string & input, Overrides & ov, std::string & out_path)
{
  sub->add_option("input", input, "instance JSON file, or - for stdin")->required();
  sub->add_option("--psd-tol", ov.psd_tol, "relative PSD tolerance");
  sub->add_option("--verify-tol", ov.verify_tol, "operator verification tolerance");
  sub->add_option("--max-iter", ov.max_iter, "iteration cap for the polydisc feasibility search");
  sub->add_option("--samples", ov.samples, "number of certificate sample points");
  sub->add_option("--seed", ov.seed, "sampling seed");
  sub->add_option("-o,--output", out_path, "report path (default stdout)");
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Commutant lifting and interpolation solver"};
  app.require_subcommand(1);

  std::string input;
  std::string out_path;
  std::string csv_path;
  Overrides ov;

  auto * solve = app.add_subcommand("solve", "solve the instance in its declared mode");
  add_common(solve, input, ov, out_path);
  bool scan_too = false;
  solve->add_flag("--scan", scan_too, "also scan the transfer function on a grid");
  solve->add_option("--grid", ov.grid, "scan grid as RxA or N");
  solve->add_option("--csv", csv_path, "scan CSV path (default stdout)");

  auto * certify = app.add_subcommand("certify", "solve then check the sampled certificate");
  add_common(certify, input, ov, out_path);

  auto * scan = app.add_subcommand("scan", "solve then tabulate the operator norm on a grid");
  add_common(scan, input, ov, out_path);
  scan->add_option("--grid", ov.grid, "scan grid as RxA or N");
  scan->add_option("--csv", csv_path, "scan CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (solve->parsed()) {
      return execute(input, ov, std::nullopt, scan_too, out_path, csv_path);
    }
    if (certify->parsed()) {
      return execute(input, ov, commlift::Mode::Certify, false, out_path, csv_path);
    }
    return execute(input, ov, std::nullopt, true, out_path, csv_path);
  } catch (const std::exception & e) {
    std::cerr << "commlift: " << e.what() << "\n";
    return 1;
  }
}
