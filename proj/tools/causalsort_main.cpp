// causalsort CLI: simulate linear ANMs, measure sortability, run the
// sort-and-regress baselines, evaluate recovered graphs, and drive the
// benchmark / chain / sweep / counterexample / audit experiments.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "causalsort/anm.hpp"
#include "causalsort/bench.hpp"
#include "causalsort/discovery.hpp"
#include "causalsort/evaluation.hpp"
#include "causalsort/io.hpp"
#include "causalsort/sortability.hpp"
#include "causalsort/svg.hpp"

namespace cs = causalsort;
using nlohmann::json;

namespace {

std::string fmt_val(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  json j;
  in >> j;
  return j;
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    out << j.dump(2) << "\n";
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
}

cs::ExperimentConfig bench_config(const std::string& config_path,
                                  std::optional<std::uint64_t> seed,
                                  std::optional<int> replicates,
                                  std::optional<int> threads) {
  cs::ExperimentConfig cfg;
  if (!config_path.empty()) cfg = cs::ExperimentConfig::from_json(load_json_file(config_path));
  if (seed) cfg.seed = *seed;
  if (replicates) cfg.replicates = *replicates;
  if (threads) cfg.threads = *threads;
  cfg.validate();
  return cfg;
}

struct SimulateArgs {
  std::string config_path;
  std::string out_prefix = "anm";
  std::optional<std::uint64_t> seed;
  std::optional<int> n;
};

void cmd_simulate(const SimulateArgs& args) {
  cs::ExperimentConfig cfg;
  if (!args.config_path.empty()) {
    cfg = cs::ExperimentConfig::from_json(load_json_file(args.config_path));
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.n) cfg.n = *args.n;
  cfg.validate();

  const cs::Rng root(cfg.seed);
  cs::Rng graph_rng = root.child(cs::substream::kGraph);
  cs::Rng inst_rng = root.child(cs::substream::kInstance);
  cs::Rng data_rng = root.child(cs::substream::kData);
  const cs::Dag g = cfg.sample_graph(graph_rng);
  const cs::NoiseSpec noise{cfg.noise_family, cfg.sigma_dist};
  const cs::AnmInstance inst = cs::sample_instance(g, cfg.weight_dist, noise, inst_rng);
  const cs::Dataset data = cs::sample_data(inst, cfg.n, data_rng);

  cs::write_graph_json(args.out_prefix + ".json", g, &inst.weights);
  cs::write_dataset_csv(args.out_prefix + ".csv", data);
  std::cerr << "wrote " << args.out_prefix << ".csv (" << data.n() << "x" << data.d()
            << ") and " << args.out_prefix << ".json (" << g.edge_count() << " edges)\n";
}

struct SortabilityArgs {
  std::string data_path, graph_path, out_path;
  std::string criterion = "r2";
  std::string weighting = "unique_length";
  double tie_tol = 0.0;
};

void cmd_sortability(const SortabilityArgs& args) {
  const cs::Dataset data = cs::read_dataset_csv(args.data_path);
  const cs::LoadedGraph graph = cs::read_graph_json(args.graph_path);
  if (graph.dag.node_count() != data.d()) {
    throw std::invalid_argument("graph/data dimension mismatch");
  }
  std::vector<double> tau;
  if (args.criterion == "var") {
    tau = cs::var_criterion(data);
  } else if (args.criterion == "r2") {
    tau = cs::r2_criterion(data);
  } else if (args.criterion == "cev") {
    tau = cs::cev_criterion(data, graph.dag);
  } else {
    throw std::invalid_argument("criterion must be var, r2, or cev");
  }
  const auto report = cs::sortability(tau, graph.dag,
                                      cs::weighting_from_name(args.weighting),
                                      args.tie_tol, args.criterion);
  emit(cs::sortability_report_to_json(report), args.out_path);
}

struct DiscoverArgs {
  std::string data_path, out_path;
  std::string algorithm = "r2_sortnregress";
  std::uint64_t seed = 1;
  bool standardize = false;
};

void cmd_discover(const DiscoverArgs& args) {
  cs::Dataset data = cs::read_dataset_csv(args.data_path);
  if (args.standardize) data = cs::standardize(data);
  cs::WeightEstimate est;
  if (args.algorithm == "r2_sortnregress") {
    est = cs::r2_sort_n_regress(data);
  } else if (args.algorithm == "var_sortnregress") {
    est = cs::var_sort_n_regress(data);
  } else if (args.algorithm == "random_regress") {
    cs::Rng rng(args.seed);
    est = cs::random_regress(data, rng);
  } else {
    throw std::invalid_argument("algorithm must be r2_sortnregress, var_sortnregress, "
                                "or random_regress");
  }
  emit(cs::estimate_to_json(est), args.out_path);
}

struct EvaluateArgs {
  std::string true_path, est_path, out_path;
  double threshold = 0.0;
};

void cmd_evaluate(const EvaluateArgs& args) {
  const cs::LoadedGraph g_true = cs::read_graph_json(args.true_path);
  const cs::LoadedGraph loaded = cs::read_graph_json(args.est_path);
  cs::Dag g_est = loaded.dag;
  if (loaded.weights && args.threshold > 0) {
    const int d = g_est.node_count();
    std::vector<std::pair<int, int>> edges;
    for (const auto& [s, t] : g_est.edges()) {
      if (std::abs((*loaded.weights)(s, t)) > args.threshold) edges.emplace_back(s, t);
    }
    g_est = cs::Dag(d, edges);
  }
  const cs::GraphDistances dist = cs::graph_distances(g_true.dag, g_est);
  emit(json{{"sid", dist.sid}, {"shd", dist.shd}}, args.out_path);
}

struct BenchArgs {
  std::string config_path, out_path = "bench.csv", curves_path, svg_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> threads;
};

void cmd_bench(const BenchArgs& args) {
  const cs::ExperimentConfig cfg =
      bench_config(args.config_path, args.seed, args.replicates, args.threads);
  const cs::BenchResult result = cs::run_benchmark(cfg);
  write_text(args.out_path, cs::bench_csv_string(result));
  std::cerr << "wrote " << args.out_path << " (" << result.records.size()
            << " replicates, " << result.skipped_count << " skipped)\n";

  if (!args.curves_path.empty() || !args.svg_path.empty()) {
    std::ostringstream curves;
    curves << "algorithm,center,mean_sid,ci_lo,ci_hi,count\n";
    std::vector<cs::SvgSeries> series;
    const std::vector<std::string> palette = {"#1f77b4", "#7f7f7f", "#2ca02c",
                                              "#d62728"};
    for (size_t a = 0; a < cfg.algorithms.size(); ++a) {
      const auto curve = cs::bench_sid_curve(result, cfg.algorithms[a]);
      cs::SvgSeries s;
      s.label = cfg.algorithms[a];
      s.color = palette[a % palette.size()];
      for (const auto& p : curve) {
        curves << cfg.algorithms[a] << "," << p.center << "," << p.mean << "," << p.ci_lo
               << "," << p.ci_hi << "," << p.count << "\n";
        s.x.push_back(p.center);
        s.y.push_back(p.mean);
        s.band_lo.push_back(p.ci_lo);
        s.band_hi.push_back(p.ci_hi);
      }
      series.push_back(std::move(s));
    }
    if (!args.curves_path.empty()) write_text(args.curves_path, curves.str());
    if (!args.svg_path.empty()) {
      cs::write_svg_line_plot(args.svg_path, "SID vs R2-sortability (window means)",
                              "R2-sortability", "SID", series);
    }
  }
}

struct ChainArgs {
  int length = 50;
  int replicates = 30;
  int n = 5000;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_path = "chain.csv", svg_path;
};

void cmd_chain(const ChainArgs& args) {
  cs::ChainConfig cfg;
  cfg.length = args.length;
  cfg.replicates = args.replicates;
  cfg.n = args.n;
  cfg.seed = args.seed;
  cfg.threads = args.threads;
  const auto records = cs::chain_experiment(cfg);
  std::ostringstream out;
  cs::write_chain_csv(out, records);
  write_text(args.out_path, out.str());
  std::cerr << "wrote " << args.out_path << " (" << records.size() << " rows)\n";

  if (!args.svg_path.empty()) {
    // position-wise means across replicates
    const int p = cfg.length;
    std::vector<double> mean_r2(p + 1, 0), mean_cev(p + 1, 0), mean_logvar(p + 1, 0);
    for (const auto& r : records) {
      mean_r2[r.position] += r.r2;
      mean_cev[r.position] += r.cev;
      mean_logvar[r.position] += std::log10(r.variance);
    }
    double logvar_max = 1.0;
    for (int pos = 0; pos <= p; ++pos) {
      logvar_max = std::max(logvar_max, mean_logvar[pos] / cfg.replicates);
    }
    cs::SvgSeries s_r2{"mean R2", "#1f77b4", {}, {}, {}, {}};
    cs::SvgSeries s_cev{"mean CEV", "#2ca02c", {}, {}, {}, {}};
    cs::SvgSeries s_var{"mean log10 Var (scaled)", "#d62728", {}, {}, {}, {}};
    for (int pos = 0; pos <= p; ++pos) {
      s_r2.x.push_back(pos);
      s_r2.y.push_back(mean_r2[pos] / cfg.replicates);
      s_cev.x.push_back(pos);
      s_cev.y.push_back(mean_cev[pos] / cfg.replicates);
      s_var.x.push_back(pos);
      s_var.y.push_back(mean_logvar[pos] / cfg.replicates / logvar_max);
    }
    cs::write_svg_line_plot(args.svg_path, "Causal chain convergence", "position",
                            "value", {s_r2, s_cev, s_var});
  }
}

struct SweepArgs {
  std::string config_path, out_path = "sweep.csv", svg_prefix;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

void cmd_sweep(const SweepArgs& args) {
  cs::SweepConfig cfg;
  if (!args.config_path.empty()) {
    cfg = cs::SweepConfig::from_json(load_json_file(args.config_path));
  } else {
    cfg.elogv_targets = {-1.0, -0.125, 0.75, 1.625, 2.5};
  }
  if (args.seed) cfg.seed = *args.seed;
  if (args.threads) cfg.threads = *args.threads;
  const auto cells = cs::sweep_heatmap(cfg);
  std::ostringstream out;
  cs::write_sweep_csv(out, cells);
  write_text(args.out_path, out.str());
  std::cerr << "wrote " << args.out_path << " (" << cells.size() << " cells)\n";

  if (!args.svg_prefix.empty()) {
    for (const auto& model : cfg.graph_models) {
      std::vector<std::string> x_ticks, y_ticks;
      for (const double t : cfg.elogv_targets) x_ticks.push_back(fmt_val(t));
      for (const double g : cfg.gammas) y_ticks.push_back(fmt_val(g));
      std::vector<std::vector<double>> grid(cfg.gammas.size(),
                                            std::vector<double>(cfg.elogv_targets.size(), 0));
      for (const auto& c : cells) {
        if (c.graph_model != model) continue;
        size_t gi = 0, ti = 0;
        for (size_t k = 0; k < cfg.gammas.size(); ++k)
          if (cfg.gammas[k] == c.gamma) gi = k;
        for (size_t k = 0; k < cfg.elogv_targets.size(); ++k)
          if (cfg.elogv_targets[k] == c.elogv_target) ti = k;
        grid[gi][ti] = c.mean_v_r2;
      }
      cs::write_svg_heatmap(args.svg_prefix + "_" + model + ".svg",
                            "mean R2-sortability (" + model + ")", "E[ln|V|] target",
                            "gamma", x_ticks, y_ticks, grid);
    }
  }
}

void cmd_counterexample(const std::string& out_path) {
  emit(cs::counterexample_to_json(cs::counterexample_report()), out_path);
}

struct AuditArgs {
  std::string data_path, graph_path, out_path;
  int bootstrap = 30;
  std::uint64_t seed = 1;
  std::string weighting = "unique_length";
};

void cmd_audit(const AuditArgs& args) {
  cs::AuditConfig cfg;
  cfg.data_path = args.data_path;
  if (!args.graph_path.empty()) cfg.graph_path = args.graph_path;
  cfg.bootstrap = args.bootstrap;
  cfg.seed = args.seed;
  cfg.weighting = cs::weighting_from_name(args.weighting);
  emit(cs::audit_to_json(cs::audit_dataset(cfg)), args.out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Linear ANM simulation, sortability, and sort-and-regress baselines"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "Sample an ANM and emit dataset + graph");
  c_sim->add_option("--config", sim.config_path, "experiment config JSON");
  c_sim->add_option("--out", sim.out_prefix, "output prefix (.csv and .json)");
  std::uint64_t sim_seed = 0;
  int sim_n = 0;
  c_sim->add_option("--seed", sim_seed, "seed override")
      ->each([&](const std::string&) { sim.seed = sim_seed; });
  c_sim->add_option("-n,--samples", sim_n, "observation count override")
      ->each([&](const std::string&) { sim.n = sim_n; });

  SortabilityArgs sort;
  auto* c_sort = app.add_subcommand("sortability", "Sortability of a dataset w.r.t. a graph");
  c_sort->add_option("--data", sort.data_path, "dataset CSV")->required();
  c_sort->add_option("--graph", sort.graph_path, "graph JSON")->required();
  c_sort->add_option("--criterion", sort.criterion, "var | r2 | cev");
  c_sort->add_option("--weighting", sort.weighting,
                     "unique_length | path_existence | path_count");
  c_sort->add_option("--tie-tol", sort.tie_tol, "tie tolerance");
  c_sort->add_option("--out", sort.out_path, "output JSON path (default stdout)");

  DiscoverArgs disc;
  auto* c_disc = app.add_subcommand("discover", "Run a sort-and-regress algorithm");
  c_disc->add_option("--data", disc.data_path, "dataset CSV")->required();
  c_disc->add_option("--algorithm", disc.algorithm,
                     "r2_sortnregress | var_sortnregress | random_regress");
  c_disc->add_option("--seed", disc.seed, "seed (random_regress)");
  c_disc->add_flag("--standardize", disc.standardize, "standardize before fitting");
  c_disc->add_option("--out", disc.out_path, "output JSON path (default stdout)");

  EvaluateArgs eval;
  auto* c_eval = app.add_subcommand("evaluate", "SID/SHD between true and estimated graphs");
  c_eval->add_option("--true", eval.true_path, "true graph JSON")->required();
  c_eval->add_option("--est", eval.est_path, "estimated graph JSON")->required();
  c_eval->add_option("--threshold", eval.threshold, "drop estimate edges with |w| <= eps");
  c_eval->add_option("--out", eval.out_path, "output JSON path (default stdout)");

  BenchArgs bench;
  std::uint64_t bench_seed = 0;
  int bench_reps = 0, bench_threads = 0;
  auto* c_bench = app.add_subcommand("bench", "Replicated benchmark with SID/SHD records");
  c_bench->add_option("--config", bench.config_path, "experiment config JSON");
  c_bench->add_option("--out", bench.out_path, "records CSV path");
  c_bench->add_option("--curves", bench.curves_path, "window-averaged curves CSV path");
  c_bench->add_option("--svg", bench.svg_path, "SID-vs-sortability SVG path");
  c_bench->add_option("--seed", bench_seed, "seed override")
      ->each([&](const std::string&) { bench.seed = bench_seed; });
  c_bench->add_option("--replicates", bench_reps, "replicate count override")
      ->each([&](const std::string&) { bench.replicates = bench_reps; });
  c_bench->add_option("--threads", bench_threads, "worker threads")
      ->each([&](const std::string&) { bench.threads = bench_threads; });

  ChainArgs chain;
  auto* c_chain = app.add_subcommand("chain", "Causal chain convergence experiment");
  c_chain->add_option("--length", chain.length, "chain length p");
  c_chain->add_option("--replicates", chain.replicates, "number of chains");
  c_chain->add_option("-n,--samples", chain.n, "observations per chain");
  c_chain->add_option("--seed", chain.seed, "seed");
  c_chain->add_option("--threads", chain.threads, "worker threads");
  c_chain->add_option("--out", chain.out_path, "per-position CSV path");
  c_chain->add_option("--svg", chain.svg_path, "convergence plot SVG path");

  SweepArgs sweep;
  std::uint64_t sweep_seed = 0;
  int sweep_threads = 0;
  auto* c_sweep = app.add_subcommand("sweep", "Sortability over gamma x E[ln|V|] grid");
  c_sweep->add_option("--config", sweep.config_path, "sweep config JSON");
  c_sweep->add_option("--out", sweep.out_path, "grid CSV path");
  c_sweep->add_option("--svg", sweep.svg_prefix, "heatmap SVG path prefix");
  c_sweep->add_option("--seed", sweep_seed, "seed override")
      ->each([&](const std::string&) { sweep.seed = sweep_seed; });
  c_sweep->add_option("--threads", sweep_threads, "worker threads")
      ->each([&](const std::string&) { sweep.threads = sweep_threads; });

  std::string counter_out;
  auto* c_counter = app.add_subcommand("counterexample",
                                       "Analytic equal-CEV counterexample report");
  c_counter->add_option("--out", counter_out, "output JSON path (default stdout)");

  AuditArgs audit;
  auto* c_audit = app.add_subcommand("audit", "Bootstrap sortability audit of a CSV dataset");
  c_audit->add_option("--data", audit.data_path, "dataset CSV")->required();
  c_audit->add_option("--graph", audit.graph_path, "reference graph JSON");
  c_audit->add_option("--bootstrap", audit.bootstrap, "bootstrap resamples");
  c_audit->add_option("--seed", audit.seed, "seed");
  c_audit->add_option("--weighting", audit.weighting,
                      "unique_length | path_existence | path_count");
  c_audit->add_option("--out", audit.out_path, "output JSON path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (c_sim->parsed()) cmd_simulate(sim);
    if (c_sort->parsed()) cmd_sortability(sort);
    if (c_disc->parsed()) cmd_discover(disc);
    if (c_eval->parsed()) cmd_evaluate(eval);
    if (c_bench->parsed()) cmd_bench(bench);
    if (c_chain->parsed()) cmd_chain(chain);
    if (c_sweep->parsed()) cmd_sweep(sweep);
    if (c_counter->parsed()) cmd_counterexample(counter_out);
    if (c_audit->parsed()) cmd_audit(audit);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "command_failed"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
