// bracketlab <check|cohomology|graded|search> <file> [options]

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <future>
#include <iostream>

#include "bracketlab/report.hpp"

using namespace bracketlab;

namespace {

struct Outcome {
  Report report;
  std::string parse_error;
  std::string file;
};

Outcome analyse(Command cmd, const std::string& file, const RunOptions& opts, int degree_bound) {
  Outcome o;
  o.file = file;
  try {
    StructureDef def = load_structure(file, degree_bound);
    o.report = run(cmd, def, opts);
  } catch (const std::exception& e) {
    o.parse_error = e.what();
  }
  return o;
}

// 0 on success; 1 when the analysis failed or check rejected the structure; 2 on input errors.
int exit_code(const Outcome& o, Command cmd) {
  if (!o.parse_error.empty()) return 2;
  if (!o.report.ok()) return 1;
  if (cmd == Command::check && !o.report.mc_verified) return 1;
  return 0;
}

nlohmann::ordered_json outcome_json(const Outcome& o) {
  if (o.parse_error.empty()) return report_json(o.report);
  nlohmann::ordered_json j;
  j["file"] = o.file;
  j["error"] = o.parse_error;
  return j;
}

std::string outcome_text(const Outcome& o) {
  if (o.parse_error.empty()) return report_text(o.report);
  return o.file + "\n  error          " + o.parse_error + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability criteria for fixed points of Lie algebroids and related structures"};
  std::string command, file, dir, perturb, format = "json";
  int degree_bound = -1;
  RunOptions opts;
  app.add_option("command", command, "check | cohomology | graded | search")
      ->required()
      ->check(CLI::IsMember({"check", "cohomology", "graded", "search"}));
  app.add_option("file", file, "structure definition (JSON)");
  app.add_option("--dir", dir, "run every *.json file of a directory");
  app.add_flag("--reduced", opts.reduced, "reduced first cohomology (b-Poisson)");
  app.add_flag("--filtration", opts.filtration, "add the associated graded table");
  app.add_option("--perturb", perturb, "perturbation file for search");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--degree-bound", degree_bound, "reject polynomial literals above this degree");
  app.add_option("--tol", opts.search.tol, "Newton tolerance on the projected equation");
  app.add_option("--max-iter", opts.search.max_iter, "Newton iteration limit");
  app.add_option("--radius", opts.search.radius, "search radius around the reference point");
  app.add_flag("--timing", opts.timing, "report wall time per analysis");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (file.empty() == dir.empty()) {
    std::cerr << "error: give exactly one of <file> and --dir\n";
    return 2;
  }
  Command cmd = parse_command(command);
  opts.perturb = perturb;

  std::vector<std::string> files;
  if (!dir.empty()) {
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec))
      if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path().string());
    if (ec) {
      std::cerr << "error: cannot list " << dir << ": " << ec.message() << "\n";
      return 2;
    }
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(file);
  }

  std::vector<std::future<Outcome>> jobs;
  for (const auto& f : files)
    jobs.push_back(std::async(files.size() > 1 ? std::launch::async : std::launch::deferred, analyse, cmd, f, opts,
                              degree_bound));
  std::vector<Outcome> outcomes;
  for (auto& j : jobs) outcomes.push_back(j.get());

  int code = 0;
  for (const auto& o : outcomes) code = std::max(code, exit_code(o, cmd));
  if (format == "json") {
    if (dir.empty()) {
      std::cout << outcome_json(outcomes[0]).dump(2) << "\n";
    } else {
      nlohmann::ordered_json all = nlohmann::ordered_json::array();
      for (const auto& o : outcomes) all.push_back(outcome_json(o));
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (const auto& o : outcomes) std::cout << outcome_text(o);
  }
  return code;
}
