#pragma once

// Dispatch of the command-line analyses on a parsed structure definition.

#include <optional>
#include <string>

#include "bracketlab/gauge.hpp"
#include "bracketlab/structure.hpp"

namespace bracketlab {

enum class Command { check, cohomology, graded, search };
Command parse_command(const std::string& s);
std::string command_str(Command c);

struct RunOptions {
  bool reduced = false;
  bool filtration = false;
  std::string perturb;  // overrides the file's options.perturb
  SearchConfig search;
  bool timing = false;
};

struct GradedRow {
  int t = 0;
  std::vector<int> dims;
  int h0 = 0;
  int h1 = 0;
};

struct SearchReport {
  SearchResult result;
  std::vector<std::string> w1_labels;
  bool membership_verified = false;
};

struct Report {
  Command command = Command::check;
  std::string kind, name;
  int base_dim = 0;
  RVec point;
  std::vector<int> order;

  bool mc_verified = false;
  std::string mc_defect;  // empty when verified
  std::optional<std::vector<int>> detected_order;

  bool has_complex = false;
  std::vector<int> dims;
  int h0 = 0;
  int h1 = 0;
  std::vector<LabeledVector> h1_representatives;
  std::optional<int> reduced_h1;
  std::vector<GradedRow> graded;
  std::string verdict;

  std::optional<SearchReport> search;
  std::string error;  // module precondition failure, surfaced verbatim
  std::optional<double> timing_ms;

  bool ok() const { return error.empty(); }
};

Report run(Command cmd, const StructureDef& def, const RunOptions& opts = {});

// Governing complex of a definition; throws the module's precondition errors.
QuotientComplex governing_complex(const StructureDef& def);
// Structure whose translates the search moves; nullopt for kinds without a gauge search.
std::optional<Structure> structure_of(const StructureDef& def);

nlohmann::ordered_json report_json(const Report& r);
std::string report_text(const Report& r);

}  // namespace bracketlab
