#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "annealbench/bench.hpp"
#include "annealbench/errors.hpp"
#include "annealbench/io.hpp"

namespace fs = std::filesystem;
using annealbench::Json;

namespace {

// Flags fill a JSON object; a manifest file, if given, wins on every key it sets.
Json merge(Json flags, const std::string& manifest_path) {
  if (manifest_path.empty()) return flags;
  const auto m = Json::parse(annealbench::read_text_file(manifest_path));
  for (const auto& [k, v] : m.items()) flags[k] = v;
  return flags;
}

fs::path base_of(const std::string& manifest_path) {
  return manifest_path.empty() ? fs::current_path() : fs::absolute(manifest_path).parent_path();
}

void write_or_print(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    annealbench::write_text_file(path, text);
}

int fail(const std::string& kind, const std::string& message) {
  Json e;
  e["error"] = kind;
  e["message"] = message;
  std::cerr << e.dump() << '\n';
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO and QAP benchmarking harness"};
  app.require_subcommand(1);

  std::string manifest;
  std::string out;

  auto* gen = app.add_subcommand("gen", "generate dataset files");
  std::string family;
  std::vector<std::size_t> sizes;
  std::optional<std::size_t> n, m, degree, bits, distance;
  std::optional<std::uint64_t> seed;
  gen->add_option("--spec", manifest, "generator spec JSON");
  gen->add_option("--family", family, "tinyqap|gnm|gnm_sweep|chimera|hardware_subgraph|hamming|orders");
  gen->add_option("--sizes", sizes, "list of sizes")->delimiter(',');
  gen->add_option("-n,--n", n);
  gen->add_option("-m,--m", m);
  gen->add_option("--degree", degree);
  gen->add_option("--bits", bits);
  gen->add_option("--distance", distance);
  gen->add_option("--seed", seed);
  std::string gen_dir = ".";
  gen->add_option("-o,--out", gen_dir, "output directory");

  auto* solve = app.add_subcommand("solve", "run one manifest");
  std::string kind, path, solver_id, out_dir, name, ground_truth;
  std::optional<std::size_t> reps, threads;
  solve->add_option("--manifest", manifest, "run manifest JSON");
  solve->add_option("--kind", kind, "maxcut|mvc|qap|qubo");
  solve->add_option("--path", path, "problem file");
  solve->add_option("--solver", solver_id, "sa|pt|tabu|random|brute|exterior|decomposed|perm_anneal|random_perm");
  solve->add_option("--repetitions", reps);
  solve->add_option("--threads", threads);
  solve->add_option("--seed", seed);
  solve->add_option("--ground-truth", ground_truth);
  solve->add_option("--name", name);
  solve->add_option("--out-dir", out_dir);

  auto* report = app.add_subcommand("report", "tabulate result records");
  std::vector<std::string> records;
  report->add_option("records", records, "result JSON files")->required();
  report->add_option("-o,--out", out, "CSV output (stdout if omitted)");

  auto* wh = app.add_subcommand("warehouse", "compare storage policies");
  std::optional<std::size_t> rows, columns, orders, lines;
  std::string json_out;
  wh->add_option("--manifest", manifest, "warehouse manifest JSON");
  wh->add_option("--rows", rows);
  wh->add_option("--columns", columns);
  wh->add_option("--orders", orders);
  wh->add_option("--lines", lines);
  wh->add_option("--repetitions", reps);
  wh->add_option("--threads", threads);
  wh->add_option("--seed", seed);
  wh->add_option("-o,--out", out, "CSV table output (stdout if omitted)");
  wh->add_option("--json", json_out, "full result JSON");

  auto* orc = app.add_subcommand("oracle", "brute-force ground truth");
  orc->add_option("--manifest", manifest, "run manifest JSON");
  orc->add_option("--kind", kind);
  orc->add_option("--path", path);
  orc->add_option("-o,--out", out, "ground-truth JSON (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("usage", e.what());
  }

  try {
    auto problem_flags = [&] {
      Json j = Json::object();
      if (!kind.empty()) j["problem"]["kind"] = kind;
      if (!path.empty()) j["problem"]["path"] = path;
      return j;
    };
    if (*gen) {
      Json j;
      if (!family.empty()) j["family"] = family;
      if (!sizes.empty()) j["sizes"] = sizes;
      if (n) j["n"] = *n;
      if (m) j["m"] = *m;
      if (degree) j["degree"] = *degree;
      if (bits) j["bits"] = *bits;
      if (distance) j["distance"] = *distance;
      if (seed) j["seed"] = *seed;
      for (const auto& p : annealbench::generate(merge(j, manifest), gen_dir)) std::cout << p.string() << '\n';
    } else if (*solve) {
      Json j = problem_flags();
      if (!solver_id.empty()) j["solver"]["id"] = solver_id;
      if (reps) j["repetitions"] = *reps;
      if (threads) j["threads"] = *threads;
      if (seed) j["seed"] = *seed;
      if (!ground_truth.empty()) j["ground_truth"] = ground_truth;
      if (!name.empty()) j["name"] = name;
      if (!out_dir.empty()) j["output"]["dir"] = out_dir;
      const auto res = annealbench::run_manifest(merge(j, manifest), base_of(manifest));
      std::cout << res.record.dump(2) << '\n';
    } else if (*report) {
      std::vector<fs::path> files(records.begin(), records.end());
      write_or_print(out, annealbench::report_table(files));
    } else if (*wh) {
      Json j = Json::object();
      if (rows) j["layout"]["rows"] = *rows;
      if (columns) j["layout"]["columns"] = *columns;
      if (orders) j["orders"]["count"] = *orders;
      if (lines) j["orders"]["lines"] = *lines;
      if (reps) j["repetitions"] = *reps;
      if (threads) j["threads"] = *threads;
      if (seed) j["seed"] = *seed;
      const auto res = annealbench::run_warehouse(merge(j, manifest));
      if (!json_out.empty()) annealbench::write_text_file(json_out, res.dump(2) + "\n");
      write_or_print(out, annealbench::warehouse_table_csv(res));
    } else if (*orc) {
      const auto res = annealbench::oracle(merge(problem_flags(), manifest), base_of(manifest));
      write_or_print(out, res.dump(2) + "\n");
    }
  } catch (const annealbench::Error& e) {
    return fail(e.kind(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail("schema", e.what());
  } catch (const std::exception& e) {
    return fail("internal", e.what());
  }
  return 0;
}
