#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "mianneal/anneal.hpp"
#include "mianneal/graph.hpp"
#include "mianneal/harness.hpp"
#include "mianneal/trace.hpp"

namespace mianneal::cli {

namespace fs = std::filesystem;

namespace {

class ConfigError : public std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raw flag values; an option only overrides the preset when it was given.
struct RunFlags {
  std::string graph;
  std::string preset;
  std::string replay;
  std::string algo = "mi";
  std::size_t trotter = 150;
  std::string temp_mode = "geometric";
  double temp_init = 1.0;
  double temp_floor = 1e-6;
  std::string gamma_mode = "geometric";
  double gamma_init = 1.0;
  double gamma_floor = 1e-6;
  double jperp_scale = 1.0;
  std::uint64_t mcs = 1000;
  std::uint64_t seed = 0;
  std::string sa_attempts = "one";
  std::size_t worker_count = 1;
  std::uint64_t trace_stride = 0;
  std::size_t trials = 0;
  std::size_t workers = 1;
  std::string out = "results";
  std::string bkc_file;
  bool no_traces = false;
  // compare only
  std::string algo_b;
  std::string sa_attempts_b;
};

struct Options {
  CLI::Option* algo = nullptr;
  CLI::Option* trotter = nullptr;
  CLI::Option* temp_mode = nullptr;
  CLI::Option* temp_init = nullptr;
  CLI::Option* temp_floor = nullptr;
  CLI::Option* gamma_mode = nullptr;
  CLI::Option* gamma_init = nullptr;
  CLI::Option* gamma_floor = nullptr;
  CLI::Option* jperp_scale = nullptr;
  CLI::Option* mcs = nullptr;
  CLI::Option* seed = nullptr;
  CLI::Option* sa_attempts = nullptr;
  CLI::Option* worker_count = nullptr;
  CLI::Option* trace_stride = nullptr;
  CLI::Option* trials = nullptr;
};

Options add_run_options(CLI::App& cmd, RunFlags& f, bool with_trials) {
  Options o;
  cmd.add_option("--graph", f.graph, "GSET graph file")->required();
  cmd.add_option("--preset", f.preset, "built-in parameter preset (see `presets`)");
  o.algo = cmd.add_option("--algo,--algorithm", f.algo, "sa | sqa | mi");
  o.trotter = cmd.add_option("--trotter", f.trotter, "trotter number P");
  o.temp_mode = cmd.add_option("--temp-mode", f.temp_mode, "geometric | inverse-mcs | constant");
  o.temp_init = cmd.add_option("--temp-init,--temperature", f.temp_init, "initial temperature");
  o.temp_floor = cmd.add_option("--temp-floor", f.temp_floor, "final/initial temperature ratio");
  o.gamma_mode = cmd.add_option("--gamma-mode", f.gamma_mode, "geometric | inverse-mcs | constant");
  o.gamma_init = cmd.add_option("--gamma-init,--gamma", f.gamma_init, "initial transverse field");
  o.gamma_floor = cmd.add_option("--gamma-floor", f.gamma_floor, "final/initial field ratio");
  o.jperp_scale = cmd.add_option("--jperp-scale", f.jperp_scale, "multiplier on J-perp");
  o.mcs = cmd.add_option("--mcs,--mcs-limit", f.mcs, "Monte Carlo step budget");
  o.seed = cmd.add_option("--seed", f.seed, "seed (base seed for multi-trial commands)");
  o.sa_attempts = cmd.add_option("--sa-attempts,--sa-attempts-per-mcs", f.sa_attempts,
                                 "SA flip attempts per MCS: one | P");
  o.worker_count = cmd.add_option("--worker-count", f.worker_count,
                                  "concurrent layer workers inside one MI run");
  o.trace_stride = cmd.add_option("--trace-stride", f.trace_stride, "trace sampling stride");
  cmd.add_option("--workers", f.workers, "concurrent trials");
  cmd.add_option("--out", f.out, "output directory");
  cmd.add_option("--bkc-file", f.bkc_file, "extra 'name cut' registry entries");
  if (with_trials) {
    o.trials = cmd.add_option("--trials", f.trials, "trial count");
    cmd.add_flag("--no-traces", f.no_traces, "skip per-trial trace files");
  }
  return o;
}

Schedule make_schedule(const std::string& mode, double initial, double floor, std::uint64_t mcs) {
  Schedule s{parse_schedule_mode(mode), initial, floor, mcs};
  return s;
}

// Preset (or defaults), then explicit flags on top.
AnnealRunConfig build_config(const RunFlags& f, const Options& o, std::optional<Preset>& preset) {
  AnnealRunConfig c;
  if (!f.preset.empty()) {
    preset = find_preset(f.preset);
    if (!preset) throw ConfigError("unknown preset '" + f.preset + "' (run `presets` to list)");
    c = preset->to_config(parse_algorithm(f.algo));
  } else {
    c.algorithm = parse_algorithm(f.algo);
    c.trotter = f.trotter;
    c.temperature = make_schedule(f.temp_mode, f.temp_init, f.temp_floor, f.mcs);
    c.gamma = make_schedule(f.gamma_mode, f.gamma_init, f.gamma_floor, f.mcs);
    c.jperp_scale = f.jperp_scale;
    c.set_mcs_limit(f.mcs);
  }
  if (o.algo->count()) c.algorithm = parse_algorithm(f.algo);
  if (o.trotter->count()) c.trotter = f.trotter;
  if (o.temp_mode->count()) c.temperature.mode = parse_schedule_mode(f.temp_mode);
  if (o.temp_init->count()) c.temperature.initial = f.temp_init;
  if (o.temp_floor->count()) c.temperature.floor_factor = f.temp_floor;
  if (o.gamma_mode->count()) c.gamma.mode = parse_schedule_mode(f.gamma_mode);
  if (o.gamma_init->count()) c.gamma.initial = f.gamma_init;
  if (o.gamma_floor->count()) c.gamma.floor_factor = f.gamma_floor;
  if (o.jperp_scale->count()) c.jperp_scale = f.jperp_scale;
  if (o.mcs->count()) c.set_mcs_limit(f.mcs);
  if (o.sa_attempts->count() || !preset) c.sa_attempts = parse_sa_attempts(f.sa_attempts);
  c.seed = f.seed;
  c.worker_count = f.worker_count;
  c.trace_stride = f.trace_stride;
  c.validate();
  return c;
}

BkcRegistry load_registry(const std::string& path) {
  auto reg = BkcRegistry::builtin();
  if (path.empty()) return reg;
  std::ifstream in(path);
  if (!in) throw IoError("cannot open registry file '" + path + "'");
  reg.merge(in);
  return reg;
}

ProblemGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open graph file '" + path + "'");
  return parse_gset(in, fs::path(path).stem().string());
}

fs::path prepare_out(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

template <class Writer>
void write_file(const fs::path& path, Writer&& writer) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + path.string() + "'");
  writer(file);
  if (!file) throw IoError("write failed for '" + path.string() + "'");
}

std::string stem(const ProblemGraph& g, Algorithm a, std::uint64_t seed) {
  return g.name() + "-" + std::string(to_string(a)) + "-" + std::to_string(seed);
}

std::string trial_suffix(std::size_t trial) {
  std::ostringstream s;
  s << "-trial" << std::setw(4) << std::setfill('0') << trial << ".csv";
  return s.str();
}

void print_summary(std::ostream& out, const SummaryStats& s) {
  out << s.graph << " " << to_string(s.algorithm) << ": trials=" << s.trials
      << " average=" << s.average_best_cut << " best=" << s.best_cut;
  if (s.times_reaching_bkc)
    out << " bkc=" << *s.bkc << " reached=" << *s.times_reaching_bkc << "/" << s.trials;
  else
    out << " bkc=unknown";
  out << '\n';
  if (s.bkc_exceeded)
    out << "note: a trial beat the registered best-known cut; consider updating the registry\n";
}

int emit_trials(const RunFlags& f, const AnnealRunConfig& config, std::size_t trials,
                std::uint64_t base_seed, std::ostream& out) {
  const auto graph = read_graph(f.graph);
  const auto registry = load_registry(f.bkc_file);
  const auto dir = prepare_out(f.out);
  const auto results = run_trials(graph, config, trials, base_seed, f.workers);
  const auto base = stem(graph, config.algorithm, base_seed);
  if (!f.no_traces)
    for (std::size_t i = 0; i < results.size(); ++i)
      write_file(dir / (base + trial_suffix(i)),
                 [&](std::ostream& s) { write_trace_csv(s, results[i].trace); });
  const auto stats = summarize(results, registry.lookup(graph.name()), graph.name(), config.algorithm);
  write_file(dir / (base + "-summary.json"),
             [&](std::ostream& s) { write_summary_json(s, stats, config, base_seed); });
  print_summary(out, stats);
  return kOk;
}

int cmd_validate(const std::string& path, const std::string& bkc_file, std::ostream& out) {
  const auto graph = read_graph(path);
  const auto registry = load_registry(bkc_file);
  std::size_t adjacency_total = 0;
  bool symmetric = true;
  for (NodeIndex u = 0; u < graph.n_nodes(); ++u) {
    adjacency_total += graph.neighbors(u).size();
    for (const auto& nb : graph.neighbors(u)) {
      const auto& back = graph.neighbors(nb.node);
      symmetric = symmetric && std::find(back.begin(), back.end(), Neighbor{u, nb.w}) != back.end();
    }
  }
  const bool ok = symmetric && adjacency_total == 2 * graph.n_edges();
  const auto bkc = registry.lookup(graph.name());
  out << graph.name() << ": nodes=" << graph.n_nodes() << " edges=" << graph.n_edges()
      << " total_weight=" << graph.total_weight() << " adjacency=" << adjacency_total
      << " symmetric=" << (symmetric ? "yes" : "no")
      << " bkc=" << (bkc ? std::to_string(*bkc) : "unknown") << '\n';
  return ok ? kOk : kParseError;
}

}  // namespace

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Min-imitation, path-integral and classical annealing for GSET Max-Cut"};
  app.require_subcommand(1);

  RunFlags run_f, bench_f, cmp_f;
  std::string validate_graph, validate_bkc;

  auto* run = app.add_subcommand("run", "one trial: trace + summary");
  const auto run_o = add_run_options(*run, run_f, false);
  auto* bench = app.add_subcommand("bench", "multiple trials via the harness");
  const auto bench_o = add_run_options(*bench, bench_f, true);
  bench->add_option("--replay", bench_f.replay, "re-run the config echoed in a summary file");
  auto* cmp = app.add_subcommand("compare", "seed-matched paired comparison of two algorithms");
  const auto cmp_o = add_run_options(*cmp, cmp_f, true);
  cmp->add_option("--algo-b", cmp_f.algo_b, "algorithm of the second arm")->required();
  cmp->add_option("--sa-attempts-b", cmp_f.sa_attempts_b, "SA attempts per MCS for the second arm");
  auto* presets = app.add_subcommand("presets", "list built-in parameter presets");
  auto* validate = app.add_subcommand("validate", "parse a graph and audit its invariants");
  validate->add_option("--graph", validate_graph, "GSET graph file")->required();
  validate->add_option("--bkc-file", validate_bkc, "extra registry entries");

  std::vector<std::string> argv_store{"mianneal"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (presets->parsed()) {
      out << "name,graph,case,trotter,initial_temperature,trials,mcs\n";
      for (const auto& p : builtin_presets())
        out << p.name << ',' << p.graph << ',' << p.experiment_case << ',' << p.trotter << ','
            << p.initial_temperature << ',' << p.trials << ',' << p.mcs << '\n';
      return kOk;
    }
    if (validate->parsed()) return cmd_validate(validate_graph, validate_bkc, out);

    if (run->parsed()) {
      std::optional<Preset> preset;
      const auto config = build_config(run_f, run_o, preset);
      return emit_trials(run_f, config, 1, config.seed, out);
    }
    if (bench->parsed()) {
      std::optional<Preset> preset;
      if (!bench_f.replay.empty()) {
        std::ifstream in(bench_f.replay);
        if (!in) throw IoError("cannot open summary file '" + bench_f.replay + "'");
        SummaryReplay replay;
        try {
          replay = read_summary_json(in);
        } catch (const std::invalid_argument& e) {
          throw GraphParseError(1, e.what());
        }
        replay.config.validate();
        return emit_trials(bench_f, replay.config, replay.trials, replay.base_seed, out);
      }
      const auto config = build_config(bench_f, bench_o, preset);
      std::size_t trials = bench_f.trials;
      if (!bench_o.trials->count()) trials = preset ? preset->trials : 1;
      if (trials < 1) throw ConfigError("--trials must be >= 1");
      return emit_trials(bench_f, config, trials, config.seed, out);
    }
    if (cmp->parsed()) {
      std::optional<Preset> preset;
      const auto config_a = build_config(cmp_f, cmp_o, preset);
      auto config_b = config_a;
      config_b.algorithm = parse_algorithm(cmp_f.algo_b);
      if (!cmp_f.sa_attempts_b.empty()) config_b.sa_attempts = parse_sa_attempts(cmp_f.sa_attempts_b);
      config_b.validate();
      std::size_t trials = cmp_f.trials;
      if (!cmp_o.trials->count()) trials = preset ? preset->trials : 1;
      if (trials < 1) throw ConfigError("--trials must be >= 1");
      const auto graph = read_graph(cmp_f.graph);
      const auto dir = prepare_out(cmp_f.out);
      const auto report = compare_paired(graph, config_a, config_b, trials, config_a.seed, cmp_f.workers);
      const auto name = graph.name() + "-" + std::string(to_string(config_a.algorithm)) + "-vs-" +
                        std::string(to_string(config_b.algorithm)) + "-" +
                        std::to_string(config_a.seed) + "-compare.json";
      write_file(dir / name, [&](std::ostream& s) { write_paired_json(s, report, config_a.seed); });
      out << graph.name() << " " << to_string(config_a.algorithm) << " vs "
          << to_string(config_b.algorithm) << ": pairs=" << report.rows.size()
          << " mean_a=" << report.mean_a << " mean_b=" << report.mean_b
          << " mean_diff=" << report.mean_difference << " wins=" << report.wins
          << " losses=" << report.losses << " ties=" << report.ties << '\n';
      return kOk;
    }
  } catch (const GraphParseError& e) {
    err << "error: parse: " << e.what() << '\n';
    return kParseError;
  } catch (const IoError& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  } catch (const std::ios_base::failure& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  } catch (const fs::filesystem_error& e) {
    err << "error: io: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    err << "error: config: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "error: config: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mianneal::cli
