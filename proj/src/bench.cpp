#include "annealbench/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <sstream>

#include "annealbench/decomposition.hpp"
#include "annealbench/errors.hpp"
#include "annealbench/generators.hpp"
#include "annealbench/io.hpp"
#include "annealbench/rng.hpp"
#include "annealbench/thread_pool.hpp"

namespace annealbench {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("bad value for '") + key + "': " + e.what());
  }
}

std::optional<BetaRange> beta_range_from(const Json& j) {
  if (!j.contains("beta_range") || j.at("beta_range").is_string()) return std::nullopt;
  const auto& r = j.at("beta_range");
  if (!r.is_array() || r.size() != 2) throw ParameterError("beta_range must be \"auto\" or [hot, cold]");
  return BetaRange{r[0].get<double>(), r[1].get<double>()};
}

std::optional<double> auto_or_number(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) return std::nullopt;
  const auto& v = j.at(key);
  if (v.is_string()) {
    if (v.get<std::string>() != "auto") throw ParameterError(std::string(key) + " must be a number or \"auto\"");
    return std::nullopt;
  }
  return v.get<double>();
}

fs::path resolve(const fs::path& base, const std::string& p) {
  const fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

std::string bits_string(const Bits& b) {
  std::string s(b.size(), '0');
  for (std::size_t i = 0; i < b.size(); ++i) s[i] = b[i] ? '1' : '0';
  return s;
}

std::string fmt(double v) { return format_real(v); }

}  // namespace

SolverSpec solver_from_json(const Json& j) {
  SolverSpec s;
  s.kind = solver_kind_from_string(get_or<std::string>(j, "id", "sa"));
  s.sa.num_reads = get_or<std::size_t>(j, "num_reads", s.sa.num_reads);
  s.sa.sweeps = get_or<std::size_t>(j, "sweeps", s.sa.sweeps);
  s.sa.beta_range = beta_range_from(j);
  s.sa.beta_schedule = get_or<std::vector<double>>(j, "beta_schedule", {});
  s.pt.replicas = get_or<std::size_t>(j, "replicas", s.pt.replicas);
  s.pt.iterations = get_or<std::size_t>(j, "iterations", s.pt.iterations);
  s.pt.beta_range = s.sa.beta_range;
  s.pt.beta_ladder = get_or<std::vector<double>>(j, "beta_ladder", {});
  s.pt.swap_interval = get_or<std::size_t>(j, "swap_interval", s.pt.swap_interval);
  s.pt.offset_increase_rate = get_or<double>(j, "offset_increase_rate", 0.0);
  s.pt.trace_every = get_or<std::size_t>(j, "trace_every", s.pt.trace_every);
  s.tabu.tenure = get_or<std::size_t>(j, "tenure", s.tabu.tenure);
  s.tabu.max_iterations = get_or<std::size_t>(j, "max_iterations", s.tabu.max_iterations);
  s.tabu.restarts = get_or<std::size_t>(j, "restarts", s.tabu.restarts);
  s.random_reads = get_or<std::size_t>(j, "reads", s.random_reads);
  return s;
}

Json solver_to_json(const SolverSpec& s) {
  Json j;
  j["id"] = to_string(s.kind);
  switch (s.kind) {
    case SolverSpec::Kind::sa:
      j["num_reads"] = s.sa.num_reads;
      j["sweeps"] = s.sa.sweeps;
      break;
    case SolverSpec::Kind::pt:
      j["replicas"] = s.pt.replicas;
      j["iterations"] = s.pt.iterations;
      j["swap_interval"] = s.pt.swap_interval;
      j["offset_increase_rate"] = s.pt.offset_increase_rate;
      break;
    case SolverSpec::Kind::tabu:
      j["tenure"] = s.tabu.tenure;
      j["max_iterations"] = s.tabu.max_iterations;
      j["restarts"] = s.tabu.restarts;
      break;
    case SolverSpec::Kind::random: j["reads"] = s.random_reads; break;
  }
  return j;
}

namespace {

struct Source {
  ProblemKind kind = ProblemKind::generic;
  std::shared_ptr<const WeightedGraph> graph;
  std::shared_ptr<const QapInstance> qap;
  std::optional<QuboMatrix> qubo;
  std::string label;
};

WeightedGraph graph_from_generator(const Json& g) {
  const auto family = get_or<std::string>(g, "family", "");
  const auto seed = get_or<std::uint64_t>(g, "seed", 0);
  if (family == "chimera") return gen_chimera(get_or<std::size_t>(g, "m", 16), get_or<std::size_t>(g, "t", 4));
  if (family == "gnm") {
    const auto n = get_or<std::size_t>(g, "n", 145);
    const auto m = g.contains("degree") ? edges_for_degree(n, g.at("degree").get<std::size_t>())
                                        : get_or<std::size_t>(g, "m", 0);
    return gnm_random_graph(n, m, seed);
  }
  if (family == "hamming") return gen_hamming(get_or<std::size_t>(g, "bits", 8), get_or<std::size_t>(g, "distance", 4));
  throw ParameterError("unknown graph generator family '" + family + "'");
}

Source load_source(const Json& manifest, const fs::path& base) {
  if (!manifest.contains("problem")) throw ParameterError("manifest needs a 'problem' section");
  const auto& p = manifest.at("problem");
  Source src;
  src.kind = problem_kind_from_string(get_or<std::string>(p, "kind", "qubo"));
  if (p.contains("generator")) {
    const auto& g = p.at("generator");
    src.label = GeneratorSpec{get_or<std::string>(g, "family", ""), {}, get_or<std::uint64_t>(g, "seed", 0)}.describe();
    if (src.kind == ProblemKind::qap) {
      if (get_or<std::string>(g, "family", "") != "tinyqap") throw ParameterError("QAP generator must be tinyqap");
      src.qap = std::make_shared<QapInstance>(gen_tinyqap(get_or<std::size_t>(g, "n", 3), get_or<std::uint64_t>(g, "seed", 1234)));
      src.label = "tinyqap_n" + std::to_string(src.qap->size()) + "_s" + std::to_string(get_or<std::uint64_t>(g, "seed", 1234));
    } else if (src.kind == ProblemKind::generic) {
      throw ParameterError("generic QUBO problems must come from a file");
    } else {
      src.graph = std::make_shared<WeightedGraph>(graph_from_generator(g));
    }
    return src;
  }
  if (!p.contains("path")) throw ParameterError("problem needs 'path' or 'generator'");
  const auto path = resolve(base, p.at("path").get<std::string>());
  src.label = path.stem().string();
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  std::string format = get_or<std::string>(p, "format", "");
  if (format.empty()) {
    const auto ext = path.extension().string();
    format = ext == ".dat" ? "qaplib" : ext == ".qubo" ? "qubo" : (ext == ".clq" || ext == ".col") ? "dimacs" : "edgelist";
  }
  if (src.kind == ProblemKind::qap) {
    if (format != "qaplib") throw ParameterError("QAP problems need qaplib format");
    src.qap = std::make_shared<QapInstance>(read_qaplib(in));
  } else if (src.kind == ProblemKind::generic) {
    src.qubo = read_qubo(in);
  } else if (format == "dimacs") {
    src.graph = std::make_shared<WeightedGraph>(read_dimacs(in));
  } else if (format == "edgelist") {
    src.graph = std::make_shared<WeightedGraph>(read_edge_list(in));
  } else {
    throw ParameterError("unsupported graph format '" + format + "'");
  }
  return src;
}

QuboProblem formulate(const Source& src, const Json& manifest) {
  const Json form = manifest.contains("formulation") ? manifest.at("formulation") : Json::object();
  switch (src.kind) {
    case ProblemKind::maxcut: return maxcut_to_qubo(*src.graph);
    case ProblemKind::mvc: return mvc_to_qubo(*src.graph, auto_or_number(form, "alpha"));
    case ProblemKind::qap: return qap_to_qubo(*src.qap, auto_or_number(form, "penalty"));
    case ProblemKind::generic: return generic_problem(*src.qubo);
  }
  throw ParameterError("unknown problem kind");
}

ExteriorPenaltyOptions exterior_from_json(const Json& j) {
  ExteriorPenaltyOptions o;
  if (j.contains("alpha0")) o.alpha0 = auto_or_number(j, "alpha0");
  o.beta = get_or<double>(j, "beta", o.beta);
  o.max_rounds = get_or<std::size_t>(j, "max_rounds", o.max_rounds);
  o.solver = solver_from_json(j.contains("inner") ? j.at("inner") : Json{{"id", "sa"}});
  return o;
}

DecomposeOptions decompose_from_json(const Json& j) {
  DecomposeOptions o;
  o.k = get_or<std::size_t>(j, "k", 1);
  o.item_partition.method = partition_method_from_string(get_or<std::string>(j, "partition", "auto"));
  o.location_partition.method = o.item_partition.method;
  o.match = match_mode_from_string(get_or<std::string>(j, "match", "random"));
  o.sub_solver = exterior_from_json(j);
  return o;
}

struct RunOutput {
  QuboProblem problem;  // may hold an empty QUBO for permutation solvers
  SampleSet samples;
  std::vector<std::string> trace_rows;
  std::vector<double> reported;
};

bool is_permutation_solver(const std::string& id) {
  return id == "exterior" || id == "decomposed" || id == "perm_anneal" || id == "random_perm" || id == "brute";
}

BinarySample permutation_sample(const QapInstance& inst, const Permutation& perm) {
  return {permutation_to_bits(perm), qap_objective(inst, perm), true, 0};
}

}  // namespace

QuboProblem load_problem(const Json& manifest, const fs::path& base_dir) {
  return formulate(load_source(manifest, base_dir), manifest);
}

std::string samples_csv(const QuboProblem& p, const SampleSet& s) {
  std::ostringstream out;
  out << "index,energy,feasible,violations,bits\n";
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    const auto& x = s.samples[i];
    out << i << ',' << fmt(p.reported_energy(x.energy)) << ',' << (x.feasible ? 1 : 0) << ','
        << x.violations << ',' << bits_string(x.bits) << '\n';
  }
  return out.str();
}

namespace {

struct CsvSample {
  double energy;
  bool feasible;
  std::size_t violations;
};

std::vector<CsvSample> read_samples_csv(const fs::path& path) {
  std::istringstream in(read_text_file(path));
  std::string line;
  std::getline(in, line);
  if (line != "index,energy,feasible,violations,bits") throw ParseError("unexpected samples CSV header in " + path.string());
  std::vector<CsvSample> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto tok = split_ws(line);
    if (tok.size() != 5 && tok.size() != 4) throw ParseError("malformed samples CSV row");
    out.push_back({parse_real(tok[1]), tok[2] == "1", static_cast<std::size_t>(parse_int(tok[3]))});
  }
  return out;
}

Json summary_json(const MetricsSummary& m) {
  Json j;
  j["mean_energy"] = m.mean_energy;
  j["best_energy"] = m.best_energy;
  j["std_energy"] = m.std_energy;
  j["p_f"] = m.p_f;
  j["mean_violation_pct"] = m.mean_violation_pct;
  j["none_feasible"] = m.none_feasible;
  j["sample_count"] = m.sample_count;
  j["feasible_count"] = m.feasible_count;
  if (m.normalized_mean) j["normalized_mean"] = *m.normalized_mean;
  if (m.normalized_best) j["normalized_best"] = *m.normalized_best;
  return j;
}

SampleSet reported_set(const QuboProblem& p, const SampleSet& s) {
  SampleSet r;
  r.total_constraints = s.total_constraints;
  r.solve_seconds = s.solve_seconds;
  for (const auto& x : s.samples) r.samples.push_back({{}, p.reported_energy(x.energy), x.feasible, x.violations});
  return r;
}

}  // namespace

SolveOutputs run_manifest(const Json& manifest, const fs::path& base_dir) {
  const auto threads = get_or<std::size_t>(manifest, "threads", 0);
  if (manifest.contains("threads")) set_thread_count(threads);
  const auto seed = get_or<std::uint64_t>(manifest, "seed", 0);
  const auto reps = get_or<std::size_t>(manifest, "repetitions", 1);
  if (reps < 1) throw ParameterError("repetitions must be >= 1");
  const Json solver_json = manifest.contains("solver") ? manifest.at("solver") : Json{{"id", "sa"}};
  const auto solver_id = get_or<std::string>(solver_json, "id", "sa");
  const auto src = load_source(manifest, base_dir);

  RunOutput run;
  const bool perm_mode = src.kind == ProblemKind::qap && is_permutation_solver(solver_id);
  if (perm_mode) {
    run.problem.kind = ProblemKind::qap;
    run.problem.qap = src.qap;
    run.problem.total_constraints = 2 * src.qap->size();
  } else {
    if (is_permutation_solver(solver_id) && solver_id != "brute")
      throw ParameterError("solver '" + solver_id + "' needs a QAP problem");
    run.problem = formulate(src, manifest);
  }

  const auto t0 = Clock::now();
  for (std::size_t r = 0; r < reps; ++r) {
    const auto rep_seed = Rng::stream(seed, "manifest.rep", r).next();
    SampleSet part;
    if (perm_mode) {
      const auto& inst = *src.qap;
      if (solver_id == "exterior") {
        auto res = exterior_penalty_solve(inst, exterior_from_json(solver_json), rep_seed);
        part.samples.push_back(permutation_sample(inst, res.perm));
      } else if (solver_id == "decomposed") {
        auto opt = decompose_from_json(solver_json);
        opt.seed = rep_seed;
        part.samples.push_back(permutation_sample(inst, solve_decomposed(inst, opt).perm));
      } else if (solver_id == "perm_anneal") {
        PermAnnealConfig cfg;
        cfg.iterations = get_or<std::size_t>(solver_json, "iterations", cfg.iterations);
        cfg.seed = rep_seed;
        QapObjective obj(inst);
        part.samples.push_back(permutation_sample(inst, permutation_annealer(obj, cfg).perm));
      } else if (solver_id == "random_perm") {
        const auto reads = get_or<std::size_t>(solver_json, "reads", 100);
        for (std::size_t i = 0; i < reads; ++i) {
          Permutation perm(inst.size());
          std::iota(perm.begin(), perm.end(), 0u);
          auto rng = Rng::stream(rep_seed, "random.read", i);
          rng.shuffle(perm.begin(), perm.end());
          part.samples.push_back(permutation_sample(inst, perm));
        }
      } else {
        part.samples.push_back(permutation_sample(inst, brute_force_qap(inst).perm));
      }
    } else if (solver_id == "brute") {
      const auto o = brute_force_qubo(run.problem.qubo);
      part.samples.push_back({o.x, 0.0, true, 0});
      run.problem.annotate(part);
    } else {
      auto spec = solver_from_json(solver_json);
      const bool want_trace = manifest.contains("output") && get_or<bool>(manifest.at("output"), "trace", false);
      auto hook = [&](std::size_t idx, std::size_t it, double best) {
        run.trace_rows.push_back(std::to_string(r) + "," + std::to_string(idx) + "," + std::to_string(it) + "," +
                                 fmt(run.problem.reported_energy(best)));
      };
      if (want_trace) spec.sa.trace = spec.pt.trace = spec.tabu.trace = hook;
      part = spec.run(run.problem, rep_seed);
    }
    for (auto& s : part.samples) run.samples.samples.push_back(std::move(s));
  }
  run.samples.solve_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  run.samples.total_constraints = run.problem.total_constraints;
  run.samples.solver_label = solver_id;
  run.samples.validate();

  // Reference energy: explicit file, then exact oracle, then best seen here.
  const bool normalize = get_or<bool>(manifest, "normalize", true);
  ReferenceEnergy ref;
  if (manifest.contains("ground_truth")) {
    const auto gt = Json::parse(read_text_file(resolve(base_dir, manifest.at("ground_truth").get<std::string>())));
    ref = {gt.at("energy").get<double>(), "file"};
  } else if (normalize) {
    if (src.kind == ProblemKind::qap && src.qap->size() <= 9) {
      ref = {brute_force_qap(*src.qap).energy, "oracle"};
    } else if (!perm_mode && run.problem.size() <= 20) {
      ref = {run.problem.reported_energy(brute_force_qubo(run.problem.qubo).energy), "oracle"};
    } else {
      std::optional<double> best;
      for (const auto& s : run.samples.samples) {
        if (!s.feasible) continue;
        const double e = run.problem.reported_energy(s.energy);
        if (!best || (run.problem.sense == Sense::minimize ? e < *best : e > *best)) best = e;
      }
      ref = {best, best ? "approx" : "none"};
    }
  }
  if (ref.energy && *ref.energy == 0.0) ref = {std::nullopt, "none"};

  const auto sense = run.problem.sense;
  const auto summary = summarize(reported_set(run.problem, run.samples), sense, ref.energy);

  const auto name = get_or<std::string>(manifest, "name", src.label.empty() ? "run" : src.label);
  const Json out_json = manifest.contains("output") ? manifest.at("output") : Json::object();
  const auto dir = resolve(base_dir, get_or<std::string>(out_json, "dir", "."));
  SolveOutputs out;
  out.record_path = dir / (name + ".result.json");
  out.samples_path = dir / (name + ".samples.csv");
  const std::string csv = samples_csv(run.problem, run.samples);
  write_text_file(out.samples_path, csv);
  if (!run.trace_rows.empty()) {
    out.trace_path = dir / (name + ".trace.csv");
    std::string t = "rep,read,iteration,best_energy\n";
    for (const auto& row : run.trace_rows) t += row + "\n";
    write_text_file(out.trace_path, t);
  }

  Json rec;
  rec["name"] = name;
  rec["manifest_hash"] = hash_hex(manifest.dump());
  rec["instance"] = src.label;
  rec["problem_kind"] = to_string(src.kind);
  rec["sense"] = sense == Sense::minimize ? "min" : "max";
  rec["variables"] = perm_mode ? src.qap->size() * src.qap->size() : run.problem.size();
  rec["energy_convention"] = "qubo energies include the constant offset";
  rec["solver"] = solver_json;
  rec["seed"] = seed;
  rec["repetitions"] = reps;
  rec["wall_seconds"] = run.samples.solve_seconds;
  rec["reference"] = {{"energy", ref.energy ? Json(*ref.energy) : Json(nullptr)}, {"source", ref.source}};
  rec["normalized"] = ref.energy.has_value();
  rec["summary"] = summary_json(summary);
  rec["samples_file"] = out.samples_path.filename().string();
  rec["samples_hash"] = hash_hex(csv);
  if (!out.trace_path.empty()) rec["trace_file"] = out.trace_path.filename().string();
  out.record = rec;
  write_text_file(out.record_path, rec.dump(2) + "\n");
  return out;
}

std::string report_table(const std::vector<fs::path>& record_files) {
  if (record_files.empty()) throw EmptyInputError("report needs at least one result file");
  std::ostringstream out;
  out << "instance,solver,params,sense,samples,p_f,mean_energy,best_energy,normalized_mean,normalized_best,"
         "seconds,reference_source,triple\n";
  std::optional<std::string> sense;
  for (const auto& path : record_files) {
    Json rec;
    try {
      rec = Json::parse(read_text_file(path));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("cannot parse " + path.string() + ": " + e.what());
    }
    for (const char* key : {"instance", "sense", "solver", "summary", "samples_file", "wall_seconds", "reference"})
      if (!rec.contains(key)) throw ParseError(path.string() + " is missing '" + key + "'");
    const auto s = rec.at("sense").get<std::string>();
    if (sense && *sense != s) throw ParameterError("cannot mix minimisation and maximisation results in one table");
    sense = s;

    // Recompute the summary from the stored samples and insist on agreement.
    const auto rows = read_samples_csv(path.parent_path() / rec.at("samples_file").get<std::string>());
    SampleSet set;
    set.total_constraints = 0;
    for (const auto& r : rows) set.samples.push_back({{}, r.energy, r.feasible, r.violations});
    std::optional<double> ref;
    if (!rec.at("reference").at("energy").is_null()) ref = rec.at("reference").at("energy").get<double>();
    const auto m = summarize(set, s == "max" ? Sense::maximize : Sense::minimize, ref);
    const auto& stored = rec.at("summary");
    auto close = [](double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(1.0, std::abs(b)); };
    if (!close(m.mean_energy, stored.at("mean_energy").get<double>()) ||
        !close(m.best_energy, stored.at("best_energy").get<double>()) ||
        !close(m.p_f, stored.at("p_f").get<double>()))
      throw DomainError(path.string() + ": stored summary disagrees with its samples");

    Json params = rec.at("solver");
    params.erase("id");
    std::string pstr;
    for (const auto& [k, v] : params.items()) pstr += (pstr.empty() ? "" : ";") + k + "=" + v.dump();
    for (std::size_t q = pstr.find('"'); q != std::string::npos; q = pstr.find('"', q + 2)) pstr.insert(q, 1, '"');
    std::ostringstream secs;
    secs << std::fixed << std::setprecision(3) << rec.at("wall_seconds").get<double>();
    out << rec.at("instance").get<std::string>() << ',' << rec.at("solver").value("id", "sa") << ",\"" << pstr
        << "\"," << s << ',' << m.sample_count << ',' << fmt(m.p_f) << ',' << fmt(m.mean_energy) << ','
        << fmt(m.best_energy) << ',' << (m.normalized_mean ? fmt(*m.normalized_mean) : "") << ','
        << (m.normalized_best ? fmt(*m.normalized_best) : "") << ',' << secs.str() << ','
        << rec.at("reference").at("source").get<std::string>() << ',' << fmt(m.best_energy) << '/' << secs.str()
        << '/' << fmt(m.p_f / 100.0) << '\n';
  }
  return out.str();
}

Json run_warehouse(const Json& manifest) {
  if (manifest.contains("threads")) set_thread_count(get_or<std::size_t>(manifest, "threads", 0));
  const Json lj = manifest.contains("layout") ? manifest.at("layout") : Json::object();
  Layout layout;
  layout.rows = get_or<std::size_t>(lj, "rows", 45);
  layout.columns = get_or<std::size_t>(lj, "columns", 6);
  layout.row_spacing = get_or<double>(lj, "row_spacing", 1.0);
  layout.column_spacing = get_or<double>(lj, "column_spacing", 3.0);
  layout.validate();
  const Json oj = manifest.contains("orders") ? manifest.at("orders") : Json::object();
  const auto n = layout.locations();
  const auto n_orders = get_or<std::size_t>(oj, "count", 100);
  const auto lines = get_or<std::size_t>(oj, "lines", 4);
  const auto skew = skew_from_string(get_or<std::string>(oj, "skew", "pareto8020"));
  const auto reps = get_or<std::size_t>(manifest, "repetitions", 5);
  const auto seed = get_or<std::uint64_t>(manifest, "seed", 0);

  const Json oos = manifest.contains("oos") ? manifest.at("oos") : Json::object();
  PermAnnealConfig oos_cfg;
  oos_cfg.iterations = get_or<std::size_t>(oos, "iterations", 200000);
  oos_cfg.t0 = get_or<double>(oos, "t0", 0.0);
  oos_cfg.t_end = get_or<double>(oos, "t_end", 0.0);

  const Json dj = manifest.contains("decomp") ? manifest.at("decomp") : Json::object();
  QapPolicyOptions qopt;
  qopt.k = get_or<std::size_t>(dj, "k", 0);
  qopt.decompose = decompose_from_json(dj);
  qopt.decompose.match = match_mode_from_string(get_or<std::string>(dj, "match", "exhaustive"));
  if (get_or<std::string>(dj, "distance", "exact") == "block") {
    qopt.distance.mode = DistanceMode::block;
    qopt.distance.delta = get_or<double>(dj, "delta", 1.0);
    qopt.distance.big_m = get_or<double>(dj, "big_m", 8.0);
  }
  const auto shares = get_or<std::vector<double>>(manifest.contains("abc") ? manifest.at("abc") : Json::object(),
                                                  "shares", {0.2, 0.3, 0.5});

  const std::vector<std::string> names = {"ABC", "COI", "OOS", "Random", "decomp"};
  Json result;
  result["layout"] = {{"rows", layout.rows}, {"columns", layout.columns}, {"row_spacing", layout.row_spacing},
                      {"column_spacing", layout.column_spacing}, {"aisle_crossover", layout.crossover()}};
  result["policies"] = names;
  result["runs"] = Json::array();
  std::vector<double> sums(names.size(), 0.0);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto ds = Rng::stream(seed, "warehouse.dataset", r).next();
    const auto orders = gen_orders(n, n_orders, lines, skew, ds);
    const auto inv = identity_inventory(n);
    const auto pop = sku_popularity(orders);
    auto cfg = oos_cfg;
    cfg.seed = Rng::stream(seed, "warehouse.oos", r).next();
    const std::vector<Assignment> assigns = {
        policy_abc(inv, pop, layout, Rng::stream(seed, "warehouse.abc", r).next(), shares),
        policy_coi(inv, pop, layout),
        policy_oos(orders, inv, layout, cfg),
        policy_random(inv, layout, Rng::stream(seed, "warehouse.random", r).next()),
        policy_qap_decomp(orders, inv, layout, qopt, Rng::stream(seed, "warehouse.decomp", r).next()),
    };
    Json row;
    row["rep"] = r;
    row["dataset_seed"] = ds;
    for (std::size_t p = 0; p < names.size(); ++p) {
      assigns[p].validate(n);
      const double d = total_pick_distance(orders, assigns[p], layout);
      row["distance"][names[p]] = d;
      sums[p] += d;
    }
    result["runs"].push_back(row);
  }
  for (std::size_t p = 0; p < names.size(); ++p) result["mean"][names[p]] = sums[p] / static_cast<double>(reps);
  return result;
}

std::string warehouse_table_csv(const Json& result) {
  std::ostringstream out;
  const auto names = result.at("policies").get<std::vector<std::string>>();
  out << "run";
  for (const auto& n : names) out << ',' << n;
  out << '\n';
  for (const auto& row : result.at("runs")) {
    out << row.at("rep").get<std::size_t>();
    for (const auto& n : names) out << ',' << fmt(row.at("distance").at(n).get<double>());
    out << '\n';
  }
  out << "mean";
  for (const auto& n : names) out << ',' << fmt(result.at("mean").at(n).get<double>());
  out << '\n';
  return out.str();
}

std::vector<fs::path> generate(const Json& spec, const fs::path& out_dir) {
  const auto family = get_or<std::string>(spec, "family", "");
  const auto seed = get_or<std::uint64_t>(spec, "seed", 0);
  std::vector<fs::path> written;
  auto emit = [&](const std::string& file, const std::string& content) {
    write_text_file(out_dir / file, content);
    written.push_back(out_dir / file);
  };
  auto header = [&](GeneratorSpec g) {
    g.seed = seed;
    return "generated by annealbench gen\n" + g.describe();
  };
  if (family == "tinyqap") {
    std::vector<std::size_t> sizes = get_or<std::vector<std::size_t>>(spec, "sizes", {});
    if (sizes.empty()) sizes.push_back(get_or<std::size_t>(spec, "n", 3));
    const auto s = get_or<std::uint64_t>(spec, "seed", 1234);
    for (auto n : sizes) {
      std::ostringstream o;
      write_qaplib(o, gen_tinyqap(n, s), "generated by annealbench gen\n" +
                                             GeneratorSpec{"tinyqap", {{"n", std::to_string(n)}}, s}.describe());
      emit("tinyqap_n" + std::to_string(n) + "_s" + std::to_string(s) + ".dat", o.str());
    }
  } else if (family == "gnm" || family == "gnm_sweep") {
    const auto n = get_or<std::size_t>(spec, "n", 145);
    std::vector<std::size_t> ms;
    if (family == "gnm_sweep") {
      for (auto d : degree_sweep(get_or<std::size_t>(spec, "count", 32), get_or<std::size_t>(spec, "max_degree", 140)))
        ms.push_back(edges_for_degree(n, d));
    } else {
      ms.push_back(spec.contains("degree") ? edges_for_degree(n, spec.at("degree").get<std::size_t>())
                                           : get_or<std::size_t>(spec, "m", 0));
    }
    for (auto m : ms) {
      std::ostringstream o;
      write_edge_list(o, gnm_random_graph(n, m, seed),
                      header({"gnm", {{"n", std::to_string(n)}, {"m", std::to_string(m)}, {"weights", "unit"}}, 0}));
      emit("gnm_n" + std::to_string(n) + "_m" + std::to_string(m) + "_s" + std::to_string(seed) + ".txt", o.str());
    }
  } else if (family == "chimera") {
    const auto m = get_or<std::size_t>(spec, "m", 16), t = get_or<std::size_t>(spec, "t", 4);
    std::ostringstream o;
    write_edge_list(o, gen_chimera(m, t), header({"chimera", {{"m", std::to_string(m)}, {"t", std::to_string(t)}}, 0}));
    emit("chimera_m" + std::to_string(m) + "_t" + std::to_string(t) + ".txt", o.str());
  } else if (family == "hardware_subgraph") {
    const auto gpath = get_or<std::string>(spec, "graph", "");
    WeightedGraph g;
    if (gpath.empty()) {
      g = gen_chimera(get_or<std::size_t>(spec, "m", 16), get_or<std::size_t>(spec, "t", 4));
    } else {
      std::istringstream in(read_text_file(gpath));
      g = read_edge_list(in);
    }
    const auto weights = weight_mode_from_string(get_or<std::string>(spec, "weights", "unit"));
    std::vector<std::size_t> sizes = get_or<std::vector<std::size_t>>(spec, "sizes", {});
    if (sizes.empty()) sizes.push_back(get_or<std::size_t>(spec, "n", g.node_count()));
    for (auto n : sizes) {
      std::ostringstream o;
      write_edge_list(o, subgraph_sample(g, n, seed, weights),
                      header({"hardware_subgraph",
                              {{"n", std::to_string(n)}, {"weights", to_string(weights)},
                               {"source", gpath.empty() ? "chimera" : gpath}},
                              0}));
      emit("subgraph_n" + std::to_string(n) + "_s" + std::to_string(seed) + ".txt", o.str());
    }
  } else if (family == "hamming") {
    const auto bits = get_or<std::size_t>(spec, "bits", 8), d = get_or<std::size_t>(spec, "distance", 4);
    std::ostringstream o;
    write_dimacs(o, gen_hamming(bits, d), header({"hamming", {{"bits", std::to_string(bits)}, {"distance", std::to_string(d)}}, 0}));
    emit("hamming" + std::to_string(bits) + "-" + std::to_string(d) + ".clq", o.str());
  } else if (family == "orders") {
    const auto skus = get_or<std::size_t>(spec, "skus", 270);
    const auto count = get_or<std::size_t>(spec, "orders", 100);
    const auto lines = get_or<std::size_t>(spec, "lines", 4);
    const auto skew = skew_from_string(get_or<std::string>(spec, "skew", "pareto8020"));
    std::ostringstream o;
    write_orders_csv(o, gen_orders(skus, count, lines, skew, seed),
                     header({"orders",
                             {{"skus", std::to_string(skus)}, {"orders", std::to_string(count)},
                              {"lines", std::to_string(lines)}, {"skew", to_string(skew)}},
                             0}));
    emit("orders_k" + std::to_string(skus) + "_o" + std::to_string(count) + "_s" + std::to_string(seed) + ".csv", o.str());
  } else {
    throw ParameterError("unknown generator family '" + family + "'");
  }
  return written;
}

Json oracle(const Json& manifest, const fs::path& base_dir) {
  const auto src = load_source(manifest, base_dir);
  Json out;
  out["instance"] = src.label;
  out["source"] = "oracle";
  if (src.kind == ProblemKind::qap) {
    const auto o = brute_force_qap(*src.qap);
    out["energy"] = o.energy;
    out["perm"] = o.perm;
  } else {
    const auto p = formulate(src, manifest);
    const auto o = brute_force_qubo(p.qubo);
    out["energy"] = p.reported_energy(o.energy);
    out["bits"] = bits_string(o.x);
    out["feasible"] = p.feasible(o.x);
  }
  return out;
}

}  // namespace annealbench
