#include "rose/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace rose::bench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

std::string short_double(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number: " + s);
  return v;
}

int parse_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer: " + s);
  return v;
}

CellResult run_cell(const ProblemCase& p, const MethodCase& m,
                    const RunOptions& options) {
  CellResult cell;
  cell.problem = p.name;
  cell.method = m.name;
  cell.alpha = p.alpha;
  cell.memory = m.config.memory;
  try {
    const auto problem = p.make();
    std::vector<double> times;
    RoseResult first;
    const int repeats = std::max(1, options.repeats);
    for (int r = 0; r < repeats; ++r) {
      const auto start = std::chrono::steady_clock::now();
      RoseResult res = rose_minimize(*problem, p.x0, m.config);
      const auto stop = std::chrono::steady_clock::now();
      times.push_back(
          std::chrono::duration<double, std::milli>(stop - start).count());
      if (r == 0) first = std::move(res);
    }
    std::sort(times.begin(), times.end());
    cell.runtime_ms = times[times.size() / 2];
    cell.iterations = first.iterations();
    cell.f_evals = first.total_f_evals();
    cell.inner_iters_total = first.total_inner_iterations();
    cell.final_grad_norm = first.final_grad_norm;
    cell.status = to_string(first.status);

    if (!options.trace_dir.empty()) {
      std::filesystem::create_directories(options.trace_dir);
      const std::string file = p.name + "_" + m.name + "_a" +
                               short_double(p.alpha) + "_m" +
                               memory_label(m.config.memory) + ".csv";
      std::ofstream out(std::filesystem::path(options.trace_dir) / file);
      write_trace_csv(out, first);
    }
  } catch (const std::exception& e) {
    cell.status = "Error";
    cell.final_grad_norm = kInf;
    std::cerr << "cell " << p.name << "/" << m.name << " failed: " << e.what()
              << "\n";
  }
  return cell;
}

}  // namespace

Metric parse_metric(const std::string& name) {
  if (name == "runtime") return Metric::Runtime;
  if (name == "iterations") return Metric::Iterations;
  if (name == "f_evals") return Metric::FEvals;
  if (name == "inner_iterations") return Metric::InnerIterations;
  throw std::invalid_argument("unknown metric: " + name);
}

const char* to_string(Metric metric) {
  switch (metric) {
    case Metric::Runtime: return "runtime";
    case Metric::Iterations: return "iterations";
    case Metric::FEvals: return "f_evals";
    case Metric::InnerIterations: return "inner_iterations";
  }
  return "unknown";
}

double CellResult::metric_value(Metric metric) const {
  if (!solved()) return kInf;
  switch (metric) {
    case Metric::Runtime: return runtime_ms;
    case Metric::Iterations: return iterations;
    case Metric::FEvals: return f_evals;
    case Metric::InnerIterations: return inner_iters_total;
  }
  return kInf;
}

std::vector<CellResult> run_grid(const ExperimentGrid& grid,
                                 const RunOptions& options) {
  if (grid.problems.empty() || grid.methods.empty()) {
    throw std::invalid_argument("run_grid: grid needs problems and methods");
  }
  const std::size_t n_methods = grid.methods.size();
  const std::size_t total = grid.problems.size() * n_methods;
  std::vector<CellResult> cells(total);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < total; i = next++) {
      cells[i] = run_cell(grid.problems[i / n_methods],
                          grid.methods[i % n_methods], options);
    }
  };
  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  return cells;
}

MetricTable metric_table(const std::vector<CellResult>& cells, Metric metric) {
  MetricTable table;
  std::map<std::string, std::size_t> prow;
  std::map<std::string, std::size_t> mcol;
  auto key_of = [](const CellResult& c) {
    return c.problem + "/alpha=" + short_double(c.alpha) +
           "/memory=" + memory_label(c.memory);
  };
  for (const auto& c : cells) {
    const std::string key = key_of(c);
    if (prow.emplace(key, table.problems.size()).second) {
      table.problems.push_back(key);
    }
    if (mcol.emplace(c.method, table.methods.size()).second) {
      table.methods.push_back(c.method);
    }
  }
  table.t = Eigen::MatrixXd::Constant(
      static_cast<Index>(table.problems.size()),
      static_cast<Index>(table.methods.size()), kInf);
  for (const auto& c : cells) {
    table.t(static_cast<Index>(prow.at(key_of(c))),
            static_cast<Index>(mcol.at(c.method))) = c.metric_value(metric);
  }
  return table;
}

double ProfileCurve::rho_at(double tau) const {
  double rho = 0.0;
  for (const auto& [t, r] : points) {
    if (t > tau) break;
    rho = r;
  }
  return rho;
}

Profile performance_profile(const Eigen::MatrixXd& t,
                            const std::vector<std::string>& methods) {
  if (t.rows() == 0 || t.cols() == 0) {
    throw std::invalid_argument("performance_profile: empty input");
  }
  if (static_cast<Index>(methods.size()) != t.cols()) {
    throw std::invalid_argument("performance_profile: one name per column");
  }

  Profile profile;
  std::vector<Eigen::VectorXd> ratios;  // per kept problem
  for (Index p = 0; p < t.rows(); ++p) {
    double best = kInf;
    for (Index s = 0; s < t.cols(); ++s) {
      if (std::isfinite(t(p, s))) best = std::min(best, t(p, s));
    }
    if (!std::isfinite(best)) {
      ++profile.dropped_problems;
      continue;
    }
    Eigen::VectorXd r(t.cols());
    for (Index s = 0; s < t.cols(); ++s) {
      r[s] = std::isfinite(t(p, s)) ? t(p, s) / best : kInf;
    }
    ratios.push_back(std::move(r));
  }
  if (profile.dropped_problems > 0) {
    std::cerr << "performance_profile: dropped " << profile.dropped_problems
              << " problem(s) that no method solved\n";
  }
  if (ratios.empty()) {
    throw std::invalid_argument("performance_profile: no problem was solved");
  }

  std::vector<double> taus;
  for (const auto& r : ratios) {
    for (Index s = 0; s < r.size(); ++s) {
      if (std::isfinite(r[s])) taus.push_back(r[s]);
    }
  }
  std::sort(taus.begin(), taus.end());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());

  const double n_problems = static_cast<double>(ratios.size());
  for (Index s = 0; s < t.cols(); ++s) {
    ProfileCurve curve;
    curve.method = methods[static_cast<std::size_t>(s)];
    for (double tau : taus) {
      const auto count = std::count_if(
          ratios.begin(), ratios.end(),
          [&](const Eigen::VectorXd& r) { return r[s] <= tau; });
      curve.points.emplace_back(tau, static_cast<double>(count) / n_problems);
    }
    profile.curves.push_back(std::move(curve));
  }
  return profile;
}

void write_results_csv(std::ostream& out, const std::vector<CellResult>& cells) {
  out << kResultsHeader << "\n";
  for (const auto& c : cells) {
    out << c.problem << ',' << c.method << ',' << format_double(c.alpha) << ','
        << memory_label(c.memory) << ',' << c.iterations << ',' << c.f_evals
        << ',' << c.inner_iters_total << ',' << format_double(c.runtime_ms)
        << ',' << format_double(c.final_grad_norm) << ',' << c.status << "\n";
  }
}

std::vector<CellResult> read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kResultsHeader) {
    throw std::invalid_argument("results csv: missing or unexpected header");
  }
  std::vector<CellResult> cells;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 10) {
      throw std::invalid_argument("results csv: expected 10 fields: " + line);
    }
    CellResult c;
    c.problem = f[0];
    c.method = f[1];
    c.alpha = parse_double(f[2]);
    c.memory = parse_memory(f[3]);
    c.iterations = parse_int(f[4]);
    c.f_evals = parse_int(f[5]);
    c.inner_iters_total = parse_int(f[6]);
    c.runtime_ms = parse_double(f[7]);
    c.final_grad_norm = parse_double(f[8]);
    c.status = f[9];
    cells.push_back(std::move(c));
  }
  return cells;
}

void write_profile_csv(std::ostream& out, const Profile& profile) {
  out << kProfileHeader << "\n";
  for (const auto& curve : profile.curves) {
    for (const auto& [tau, rho] : curve.points) {
      out << curve.method << ',' << format_double(tau) << ','
          << format_double(rho) << "\n";
    }
  }
}

Profile read_profile_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kProfileHeader) {
    throw std::invalid_argument("profile csv: missing or unexpected header");
  }
  Profile profile;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 3) {
      throw std::invalid_argument("profile csv: expected 3 fields: " + line);
    }
    if (profile.curves.empty() || profile.curves.back().method != f[0]) {
      profile.curves.push_back(ProfileCurve{f[0], {}});
    }
    profile.curves.back().points.emplace_back(parse_double(f[1]),
                                              parse_double(f[2]));
  }
  return profile;
}

void write_trace_csv(std::ostream& out, const RoseResult& result) {
  out << "k,J,grad_norm,alpha,f_evals,inner_iterations,pair_accepted,"
         "seed_lower,seed_upper\n";
  for (const auto& r : result.records) {
    out << r.k << ',' << format_double(r.J) << ',' << format_double(r.grad_norm)
        << ',' << format_double(r.alpha) << ',' << r.f_evals << ','
        << r.inner_iterations << ',' << (r.pair_accepted ? 1 : 0) << ','
        << format_double(r.seed_lower) << ',' << format_double(r.seed_upper)
        << "\n";
  }
}

std::string memory_label(std::size_t memory) {
  return memory == kUnlimitedMemory ? "inf" : std::to_string(memory);
}

std::size_t parse_memory(const std::string& label) {
  if (label == "inf") return kUnlimitedMemory;
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(label, &pos);
  if (pos != label.size()) throw std::invalid_argument("bad memory: " + label);
  return static_cast<std::size_t>(v);
}

std::vector<ProblemCase> quadratic_suite(const std::vector<double>& alphas,
                                         double stencil_scale) {
  std::vector<ProblemCase> out;
  for (double alpha : alphas) {
    out.push_back(ProblemCase{
        "quadratic", alpha,
        [alpha, stencil_scale]() -> std::shared_ptr<const StructuredObjective> {
          return std::make_shared<QuadraticObjective>(
              make_quadratic_benchmark(alpha, stencil_scale));
        },
        Vector::Zero(16)});
  }
  return out;
}

Vector toy_start(Index n) {
  Vector x0(n);
  for (Index i = 0; i < n; ++i) x0[i] = 3.0 * std::sin(static_cast<double>(i + 1));
  return x0;
}

std::vector<ProblemCase> toy_suite(Index n, const std::vector<double>& alphas) {
  std::vector<ProblemCase> out;
  for (double alpha : alphas) {
    out.push_back(ProblemCase{
        "toy", alpha,
        [n, alpha]() -> std::shared_ptr<const StructuredObjective> {
          return std::make_shared<ToyNonconvexObjective>(n, alpha);
        },
        toy_start(n)});
  }
  return out;
}

MethodCase method_from_name(const std::string& name, const RoseConfig& base) {
  MethodCase m{name, base};
  const auto parts = split(name, '-');
  auto bounds_of = [&](const std::string& s) {
    if (s == "full") return BoundChoice::Full;
    if (s == "upperz") return BoundChoice::UpperZ;
    if (s == "bbband") return BoundChoice::BBBand;
    throw std::invalid_argument("unknown bound choice in method: " + name);
  };
  if (parts.size() == 3 && parts[0] == "rose") {
    if (parts[1] == "ds") {
      m.config.seed_mode = SeedMode::DiagonalDs;
    } else if (parts[1] == "dg") {
      m.config.seed_mode = SeedMode::DiagonalDg;
    } else {
      throw std::invalid_argument("unknown diagonal formula in method: " + name);
    }
    m.config.bound_choice = bounds_of(parts[2]);
    return m;
  }
  if ((parts.size() == 2 || parts.size() == 3) && parts[0] == "scalar") {
    if (parts[1] == "taus") {
      m.config.seed_mode = SeedMode::ScalarTauS;
    } else if (parts[1] == "taug") {
      m.config.seed_mode = SeedMode::ScalarTauG;
    } else if (parts[1] == "tauz") {
      m.config.seed_mode = SeedMode::ScalarTauZ;
    } else {
      throw std::invalid_argument("unknown scalar seed in method: " + name);
    }
    m.config.bound_choice =
        parts.size() == 3 ? bounds_of(parts[2]) : BoundChoice::Full;
    return m;
  }
  throw std::invalid_argument("unknown method: " + name);
}

}  // namespace rose::bench
