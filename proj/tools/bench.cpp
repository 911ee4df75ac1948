// bench: runs method x problem grids and turns the results into
// performance profiles.
//
//   bench run --suite quadratic --alpha 1e-5,1e-3,1e-1 --memory 0,3,5,10,inf \
//             --method rose-dg-full,scalar-taug --out results.csv
//   bench profile --in results.csv --metric runtime --out profile.csv
//
// Every `run` flag can also come from a flat key = value file given with
// --config; flags on the command line win.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rose/bench.hpp"

namespace {

using namespace rose;
using namespace rose::bench;

struct RunArgs {
  std::string suite = "quadratic";
  std::vector<double> alphas{1e-5, 1e-3, 1e-1};
  std::vector<std::string> memories{"0", "3", "5", "10", "inf"};
  std::vector<std::string> methods{"rose-dg-full", "rose-dg-upperz",
                                   "rose-dg-bbband", "scalar-taug"};
  std::string out = "results.csv";
  std::string trace_dir;
  double stencil_scale = 1.0;
  bool exact_seed = true;
  bool es = false;
  int inner_max_iter = 50;
  double inner_rel_tol = 1e-2;
  double eps = 1e-13;
  int max_outer = 5000;
  bool fair = false;
  std::string line_search = "armijo";
  long toy_n = 64;
  int repeats = 3;
  int jobs = 1;
};

struct ProfileArgs {
  std::string in = "results.csv";
  std::string metric = "runtime";
  std::string out = "profile.csv";
};

LineSearchMode parse_line_search(const std::string& s) {
  if (s == "armijo") return LineSearchMode::Armijo;
  if (s == "weak-wolfe") return LineSearchMode::WeakWolfe;
  if (s == "strong-wolfe") return LineSearchMode::StrongWolfe;
  throw std::invalid_argument("unknown line search: " + s);
}

// Config files are flat; every key belongs to the run subcommand.
class RunConfig : public CLI::ConfigTOML {
 public:
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    auto items = CLI::ConfigTOML::from_config(input);
    for (auto& item : items) {
      if (item.parents.empty()) item.parents = {"run"};
    }
    return items;
  }
};

int do_run(const RunArgs& a) {
  RoseConfig base;
  base.eps = a.eps;
  base.max_outer = a.max_outer;
  base.exact_seed_solve = a.exact_seed;
  base.inner.adaptive = a.es;
  base.inner.max_iter = a.inner_max_iter;
  base.inner.rel_tol = a.inner_rel_tol;
  base.fair_stopping = a.fair;
  base.line_search.mode = parse_line_search(a.line_search);

  ExperimentGrid grid;
  if (a.suite == "quadratic") {
    grid.problems = quadratic_suite(a.alphas, a.stencil_scale);
  } else if (a.suite == "toy") {
    grid.problems = toy_suite(a.toy_n, a.alphas);
  } else {
    throw std::invalid_argument("unknown suite: " + a.suite);
  }
  for (const auto& mem : a.memories) {
    for (const auto& name : a.methods) {
      RoseConfig cfg = base;
      cfg.memory = parse_memory(mem);
      auto method = method_from_name(name, cfg);
      method.config.validate();
      grid.methods.push_back(std::move(method));
    }
  }

  const auto cells = run_grid(grid, RunOptions{a.repeats, a.trace_dir, a.jobs});

  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot write " + a.out);
  write_results_csv(out, cells);
  out.close();

  int errors = 0;
  int solved = 0;
  for (const auto& c : cells) {
    errors += c.status == "Error";
    solved += c.solved();
  }
  std::cerr << cells.size() << " cells, " << solved << " solved, " << errors
            << " errors -> " << a.out << "\n";
  return errors == 0 ? 0 : 2;
}

int do_profile(const ProfileArgs& a) {
  std::ifstream in(a.in);
  if (!in) throw std::runtime_error("cannot read " + a.in);
  const auto cells = read_results_csv(in);
  const auto table = metric_table(cells, parse_metric(a.metric));
  const auto profile = performance_profile(table.t, table.methods);
  std::ofstream out(a.out);
  if (!out) throw std::runtime_error("cannot write " + a.out);
  write_profile_csv(out, profile);
  std::cerr << table.problems.size() << " problems x " << table.methods.size()
            << " methods (" << profile.dropped_problems << " dropped) -> "
            << a.out << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structured L-BFGS benchmark runner"};
  app.require_subcommand(1);

  RunArgs run;
  // Only the root app reads config files; run falls through to it.
  app.config_formatter(std::make_shared<RunConfig>());
  app.set_config("--config", "", "Flat key = value file with run flags");
  app.allow_config_extras(CLI::config_extras_mode::error);
  auto* run_cmd = app.add_subcommand("run", "Run a method x problem grid");
  run_cmd->fallthrough();
  run_cmd->add_option("--suite", run.suite, "quadratic or toy")
      ->check(CLI::IsMember({"quadratic", "toy"}))
      ->capture_default_str();
  run_cmd->add_option("--alpha", run.alphas, "Regularization weights")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--memory", run.memories, "Memory sizes, inf for unlimited")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--method", run.methods,
                      "rose-{ds,dg}-{full,upperz,bbband}, scalar-tau{s,g,z}[-bounds]")
      ->delimiter(',')
      ->capture_default_str();
  run_cmd->add_option("--out", run.out, "Results CSV")->capture_default_str();
  run_cmd->add_option("--trace-dir", run.trace_dir,
                      "Write one per-iteration CSV per cell here");
  run_cmd->add_option("--stencil-scale", run.stencil_scale,
                      "Laplacian stencil scale for the quadratic suite")
      ->capture_default_str();
  run_cmd->add_flag("--exact-seed,!--minres", run.exact_seed,
                    "Direct seed solves (default) or MINRES")
      ->capture_default_str();
  run_cmd->add_flag("--es", run.es, "Adaptive MINRES budget (implies --minres)");
  run_cmd->add_option("--inner-max-iter", run.inner_max_iter,
                      "Fixed MINRES budget without --es")
      ->capture_default_str();
  run_cmd->add_option("--inner-rel-tol", run.inner_rel_tol, "MINRES tolerance")
      ->capture_default_str();
  run_cmd->add_option("--eps", run.eps, "Gradient norm tolerance")->capture_default_str();
  run_cmd->add_option("--max-outer", run.max_outer, "Outer iteration cap")
      ->capture_default_str();
  run_cmd->add_flag("--fair", run.fair, "Also stop on the three-part FAIR test");
  run_cmd->add_option("--line-search", run.line_search,
                      "armijo, weak-wolfe or strong-wolfe")
      ->capture_default_str();
  run_cmd->add_option("--toy-n", run.toy_n, "Problem size of the toy suite")
      ->capture_default_str();
  run_cmd->add_option("--repeats", run.repeats, "Runs per cell, runtime is the median")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run_cmd->add_option("--jobs", run.jobs, "Cells run in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  ProfileArgs prof;
  auto* prof_cmd = app.add_subcommand("profile", "Performance profile of a results CSV");
  prof_cmd->add_option("--in", prof.in, "Results CSV")->capture_default_str();
  prof_cmd->add_option("--metric", prof.metric,
                       "runtime, iterations, f_evals or inner_iterations")
      ->capture_default_str();
  prof_cmd->add_option("--out", prof.out, "Profile CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      if (run.es) run.exact_seed = false;
      return do_run(run);
    }
    return do_profile(prof);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << "\n";
    return 1;
  }
}
