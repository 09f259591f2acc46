#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "annealbench/formulations.hpp"
#include "annealbench/metrics.hpp"
#include "annealbench/solvers.hpp"
#include "annealbench/warehouse.hpp"

namespace annealbench {

using Json = nlohmann::ordered_json;

/// Solver settings from a JSON object {"id": "sa", "sweeps": ..., ...}.
SolverSpec solver_from_json(const Json& j);
Json solver_to_json(const SolverSpec& s);

/// Loads and formulates the problem described by a manifest's "problem" and
/// "formulation" sections. Relative paths resolve against base_dir.
QuboProblem load_problem(const Json& manifest, const std::filesystem::path& base_dir);

struct ReferenceEnergy {
  std::optional<double> energy;
  std::string source = "none";  // file | oracle | approx | none
};

struct SolveOutputs {
  Json record;
  std::filesystem::path record_path;
  std::filesystem::path samples_path;
  std::filesystem::path trace_path;
};

/// Formulates, solves, summarises and writes the result record, samples CSV
/// and best-so-far trace. Outputs are a pure function of the manifest.
SolveOutputs run_manifest(const Json& manifest, const std::filesystem::path& base_dir);

/// "index,energy,feasible,violations,bits" with energies in the problem's sense.
std::string samples_csv(const QuboProblem& p, const SampleSet& s);

/// One CSV table over result records; rejects mixed senses.
std::string report_table(const std::vector<std::filesystem::path>& record_files);

/// Runs the five storage policies over seeded datasets and returns the table.
Json run_warehouse(const Json& manifest);
std::string warehouse_table_csv(const Json& result);

/// Generates dataset files; returns the written paths.
std::vector<std::filesystem::path> generate(const Json& spec, const std::filesystem::path& out_dir);

/// Exact optimum written as {"energy": ..., "source": "oracle", ...}.
Json oracle(const Json& manifest, const std::filesystem::path& base_dir);

}  // namespace annealbench
