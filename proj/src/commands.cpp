#include "ppls/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppls/archive_io.hpp"
#include "ppls/metrics.hpp"
#include "ppls/runner.hpp"

namespace ppls {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

bool has_tsp_extension(const std::string& p) {
  auto ext = fs::path(p).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".tsp";
}

std::ofstream open_out(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  return out;
}

std::string rep_name(const std::string& label, int rep) {
  std::ostringstream s;
  s << label << "_rep" << std::setw(3) << std::setfill('0') << rep;
  return s.str();
}

std::string orientation_name(Orientation o) { return o == Orientation::maximize ? "maximize" : "minimize"; }

Orientation orientation_from(const std::string& s) {
  if (s == "maximize") return Orientation::maximize;
  if (s == "minimize") return Orientation::minimize;
  throw ParseError("unknown orientation '" + s + "'");
}

std::vector<double> as_vector(const ObjectiveVector& v) { return {v.begin(), v.end()}; }

template <typename Instance>
void run_instance(const Instance& inst, const ExperimentConfig& config, std::ostream& log) {
  using G = typename Instance::Genotype;
  const fs::path out_dir(config.out);
  fs::create_directories(out_dir);

  std::vector<Solution<G>> seeded;
  if (config.init != "random") seeded = load_archive(fs::path(config.init.substr(7)), inst);

  for (int rep = 0; rep < config.reps; ++rep) {
    const std::uint64_t rep_seed = derive_seed(config.seed, static_cast<std::uint64_t>(rep));
    const auto initial = config.init == "random" ? random_initial_archive(inst, rep_seed) : seeded;

    RunSpec spec;
    spec.algorithm = config.algorithm;
    spec.H = config.H;
    spec.L = config.L;
    spec.base_seed = rep_seed;
    spec.stopping = config.stopping();
    spec.threads = config.threads;

    const auto started = std::chrono::steady_clock::now();
    const auto result = run(inst, spec, initial);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    const std::string name = rep_name(config.label(), rep);
    {
      auto out = open_out(out_dir / (name + ".history.jsonl"));
      write_history(out, result.history.events);
    }
    {
      auto out = open_out(out_dir / (name + ".archive.json"));
      write_archive(out, inst, result.final_archive);
    }
    {
      ojson s;
      s["label"] = config.label();
      s["algorithm"] = to_string(config.algorithm);
      s["H"] = config.H;
      s["L"] = config.L;
      s["rep"] = rep;
      s["seed"] = rep_seed;
      s["problem"] = inst.kind();
      s["orientation"] = orientation_name(inst.orientation());
      s["objectives"] = inst.objectives();
      s["init"] = config.init;
      s["workers"] = result.history.workers();
      s["worker_evaluations"] = result.history.worker_evaluations;
      s["z_star"] = as_vector(to_reported(result.z_star, inst.orientation()));
      s["archive_size"] = result.final_archive.size();
      auto out = open_out(out_dir / (name + ".summary.json"));
      out << s.dump(1) << '\n';
    }
    {
      ojson meta;
      meta["wall_seconds"] = wall;
      auto out = open_out(out_dir / (name + ".meta.json"));
      out << meta.dump(1) << '\n';
    }
    log << name << ": " << result.history.workers() << " worker(s), final archive " << result.final_archive.size()
        << ", wall " << std::fixed << std::setprecision(2) << wall << "s\n";
    log.unsetf(std::ios::fixed);
  }
}

struct LoadedRun {
  std::string name;
  std::string label;
  RunHistory history;
};

std::vector<LoadedRun> load_runs(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<fs::path> summaries;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const auto name = entry.path().filename().string();
    if (name.size() > 13 && name.ends_with(".summary.json")) summaries.push_back(entry.path());
  }
  std::sort(summaries.begin(), summaries.end());

  std::vector<LoadedRun> runs;
  for (const auto& sp : summaries) {
    std::ifstream in(sp);
    ojson s;
    try {
      s = ojson::parse(in);
    } catch (const std::exception& e) {
      throw ParseError(sp.string() + ": " + e.what());
    }
    LoadedRun run;
    const auto fname = sp.filename().string();
    run.name = fname.substr(0, fname.size() - std::string(".summary.json").size());
    run.label = s.at("label").get<std::string>();
    run.history.orientation = orientation_from(s.at("orientation").get<std::string>());
    run.history.worker_evaluations = s.at("worker_evaluations").get<std::vector<std::uint64_t>>();
    run.history.events = read_history(dir / (run.name + ".history.jsonl"));
    runs.push_back(std::move(run));
  }
  if (runs.empty()) throw std::runtime_error("no *.summary.json files in " + dir.string());
  return runs;
}

std::vector<std::uint64_t> default_checkpoints(std::uint64_t horizon) {
  std::vector<std::uint64_t> cps{0};
  for (std::uint64_t d = 1; d <= horizon; d *= 10) {
    for (std::uint64_t f : {1, 2, 5}) {
      if (d * f <= horizon) cps.push_back(d * f);
    }
    if (d > horizon / 10) break;
  }
  cps.push_back(horizon);
  std::sort(cps.begin(), cps.end());
  cps.erase(std::unique(cps.begin(), cps.end()), cps.end());
  return cps;
}

}  // namespace

AnyInstance load_instance(const std::vector<std::string>& paths) {
  if (paths.empty()) throw ParameterError("no instance given");
  const bool all_tsp = std::all_of(paths.begin(), paths.end(), has_tsp_extension);
  if (all_tsp) {
    std::vector<fs::path> ps(paths.begin(), paths.end());
    return combine_mtsp(ps);
  }
  if (paths.size() != 1) throw ParameterError("expected one mUBQP file or several .tsp files");
  return load_mubqp(paths.front());
}

int cmd_gen_mubqp(const GenMubqpOptions& opt, std::ostream& log) {
  if (opt.out.empty()) throw ParameterError("gen-mubqp: --out is required");
  const auto inst = generate_mubqp(opt.n, opt.m, opt.density, opt.correlation, opt.seed);
  auto out = open_out(opt.out);
  write_mubqp(out, inst);
  log << "n=" << inst.size() << " m=" << inst.objectives() << " nonzeros=" << inst.nonzeros() << " -> "
      << opt.out.string() << "\n";
  return 0;
}

int cmd_run(const ExperimentConfig& config, std::ostream& log) {
  config.validate();
  const auto inst = load_instance(config.instance);
  std::visit([&](const auto& p) { run_instance(p, config, log); }, inst);
  return 0;
}

int cmd_metrics(const MetricsOptions& opt, std::ostream& log) {
  auto runs = load_runs(opt.history_dir);
  const fs::path out_dir = opt.out.empty() ? opt.history_dir / "metrics" : opt.out;
  fs::create_directories(out_dir / "trees");

  std::vector<const RunHistory*> hs;
  std::uint64_t horizon = 0;
  for (const auto& r : runs) {
    hs.push_back(&r.history);
    for (auto e : r.history.worker_evaluations) horizon = std::max(horizon, e);
  }
  const Normalization norm = Normalization::from_histories(hs);

  auto checkpoints = opt.checkpoints.empty() ? default_checkpoints(horizon) : opt.checkpoints;
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  const std::uint64_t window = opt.window > 0 ? opt.window : std::max<std::uint64_t>(1, horizon / 100);

  {
    ojson n;
    n["orientation"] = orientation_name(norm.orientation);
    n["f_max"] = as_vector(norm.f_max);
    n["f_min"] = as_vector(norm.f_min);
    auto out = open_out(out_dir / "normalization.json");
    out << n.dump(1) << '\n';
  }

  std::map<std::string, std::vector<std::vector<double>>> by_label;
  auto curves = open_out(out_dir / "curves.csv");
  curves << "label,run,checkpoint,normalized_hv\n";
  auto rates = open_out(out_dir / "rates.csv");
  rates << "label,run,window_start,window_end,accepted,evaluations,rate\n";
  for (const auto& r : runs) {
    const auto curve = anytime_curve(r.history, checkpoints, norm);
    std::vector<double> values;
    for (const auto& p : curve) {
      curves << r.label << ',' << r.name << ',' << p.checkpoint << ',' << format_number(p.value) << '\n';
      values.push_back(p.value);
    }
    by_label[r.label].push_back(std::move(values));

    for (const auto& p : acceptance_rate(r.history, window)) {
      rates << r.label << ',' << r.name << ',' << p.window_start << ',' << p.window_end << ',' << p.accepted << ','
            << p.evaluations << ',' << format_number(p.rate) << '\n';
    }

    auto tree = open_out(out_dir / "trees" / (r.name + ".tree.json"));
    tree << to_json(trajectory_tree(r.history.events)) << '\n';
  }

  auto mean = open_out(out_dir / "curves_mean.csv");
  mean << "label,checkpoint,mean,stddev,runs\n";
  for (const auto& [label, rows] : by_label) {
    for (std::size_t c = 0; c < checkpoints.size(); ++c) {
      double sum = 0.0, sq = 0.0;
      for (const auto& row : rows) sum += row[c];
      const double mu = sum / static_cast<double>(rows.size());
      for (const auto& row : rows) sq += (row[c] - mu) * (row[c] - mu);
      const double sd = rows.size() > 1 ? std::sqrt(sq / static_cast<double>(rows.size() - 1)) : 0.0;
      mean << label << ',' << checkpoints[c] << ',' << format_number(mu) << ',' << format_number(sd) << ','
           << rows.size() << '\n';
    }
  }
  log << runs.size() << " run(s), " << by_label.size() << " label(s), " << checkpoints.size()
      << " checkpoint(s) -> " << out_dir.string() << "\n";
  return 0;
}

int cmd_seed(const SeedOptions& opt, std::ostream& log) {
  if (opt.out.empty()) throw ParameterError("seed: --out is required");
  const auto inst = load_instance(opt.instance);
  std::visit(
      [&](const auto& p) {
        const auto sols = scalar_seed(p, opt.H, opt.seed);
        auto out = open_out(opt.out);
        write_archive(out, p, sols);
        log << sols.size() << " seed solution(s) -> " << opt.out.string() << "\n";
      },
      inst);
  return 0;
}

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Pareto local search (PLS, PLS-ABI, PPLS/D) for mUBQP and mTSP"};
  app.require_subcommand(1);

  GenMubqpOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen-mubqp", "Generate a random mUBQP instance");
  gen_cmd->add_option("--n", gen.n, "Number of variables")->required();
  gen_cmd->add_option("--m", gen.m, "Number of objectives")->required();
  gen_cmd->add_option("--density", gen.density, "Fraction of nonzero matrix entries")->default_val(0.8);
  gen_cmd->add_option("--correlation", gen.correlation, "Objective correlation (only 0)")->default_val(0.0);
  gen_cmd->add_option("--seed", gen.seed, "Random seed")->default_val(1);
  gen_cmd->add_option("--out", gen_out, "Output file")->required();

  ExperimentConfig cfg;
  std::string config_file, instance_arg, algorithm_arg;
  auto* run_cmd = app.add_subcommand("run", "Run an algorithm for a number of repetitions");
  run_cmd->add_option("--config", config_file, "Configuration file (flags override it)");
  auto* o_instance = run_cmd->add_option("--instance", instance_arg, "mUBQP file, or comma-separated .tsp files");
  auto* o_algorithm = run_cmd->add_option("--algorithm", algorithm_arg, "pls | pls-abi | pplsd | p-pls-abi");
  auto* o_H = run_cmd->add_option("--H", cfg.H, "Weight granularity (pplsd)");
  auto* o_L = run_cmd->add_option("--L", cfg.L, "Process count (p-pls-abi)");
  auto* o_seed = run_cmd->add_option("--seed", cfg.seed, "Base seed");
  auto* o_reps = run_cmd->add_option("--reps", cfg.reps, "Repetitions");
  std::uint64_t max_evals = 0;
  double max_seconds = 0.0;
  auto* o_evals = run_cmd->add_option("--max-evals", max_evals, "Evaluation budget per worker");
  auto* o_secs = run_cmd->add_option("--max-seconds", max_seconds, "Wall-clock budget per worker");
  auto* o_init = run_cmd->add_option("--init", cfg.init, "random | seeded:<archive file>");
  auto* o_out = run_cmd->add_option("--out", cfg.out, "Output directory");
  auto* o_threads = run_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all)");

  MetricsOptions met;
  std::string met_dir, met_out, met_cps;
  auto* met_cmd = app.add_subcommand("metrics", "Hypervolume curves, acceptance rates and trajectory trees");
  met_cmd->add_option("--history", met_dir, "Directory written by 'run'")->required();
  met_cmd->add_option("--checkpoints", met_cps, "Comma-separated evaluation counts");
  met_cmd->add_option("--window", met.window, "Acceptance-rate window in evaluations");
  met_cmd->add_option("--out", met_out, "Output directory (default <history>/metrics)");

  SeedOptions seed;
  std::string seed_instance, seed_out;
  auto* seed_cmd = app.add_subcommand("seed", "Build an initial archive by Tchebycheff local search");
  seed_cmd->add_option("--instance", seed_instance, "mUBQP file, or comma-separated .tsp files")->required();
  seed_cmd->add_option("--H", seed.H, "Weight granularity")->default_val(6);
  seed_cmd->add_option("--seed", seed.seed, "Random seed")->default_val(1);
  seed_cmd->add_option("--out", seed_out, "Output archive file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*gen_cmd) {
      gen.out = gen_out;
      return cmd_gen_mubqp(gen, std::cout);
    }
    if (*run_cmd) {
      ExperimentConfig merged = config_file.empty() ? ExperimentConfig{} : load_config(config_file);
      if (*o_instance) merged.instance = split_list(instance_arg);
      if (*o_algorithm) merged.algorithm = algorithm_from_string(algorithm_arg);
      if (*o_H) merged.H = cfg.H;
      if (*o_L) merged.L = cfg.L;
      if (*o_seed) merged.seed = cfg.seed;
      if (*o_reps) merged.reps = cfg.reps;
      if (*o_evals) merged.max_evals = max_evals;
      if (*o_secs) merged.max_seconds = max_seconds;
      if (*o_init) merged.init = cfg.init;
      if (*o_out) merged.out = cfg.out;
      if (*o_threads) merged.threads = cfg.threads;
      return cmd_run(merged, std::cout);
    }
    if (*met_cmd) {
      met.history_dir = met_dir;
      met.out = met_out;
      for (const auto& c : split_list(met_cps)) met.checkpoints.push_back(std::stoull(c));
      return cmd_metrics(met, std::cout);
    }
    if (*seed_cmd) {
      seed.instance = split_list(seed_instance);
      seed.out = seed_out;
      return cmd_seed(seed, std::cout);
    }
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace ppls
