// hybridsched: run and compare single-coflow schedulers on a hybrid
// circuit/packet switch.
//
//   hybridsched schedule --algo ours --ports 5 --delta 2 --rc 1 --rp 0.1 --input data/five_port_example.csv
//   hybridsched compare --algo ours,bvn,reco-sin,solstice --density dense --seeds 200 --format csv
//   hybridsched generate --density normal --seeds 526 --out trace.csv
//
// Exit codes: 0 success, 1 a schedule failed validation, 2 usage or input error.

#include "hybridsched/experiment.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace hybridsched;

namespace {

constexpr int kValidationFailure = 1;
constexpr int kUsageError = 2;

struct Flags {
  std::vector<std::string> algos;
  std::size_t ports = 10;
  std::string delta = "20";
  std::string rc = "100";
  std::string rp = "10";
  std::vector<std::string> densities;
  std::size_t seeds = 1;
  std::uint64_t seed = 1;
  std::string input;
  std::vector<std::string> sweep;
  std::string out;
  std::string format = "json";
  std::string normalize;
  double skew = 100.0;
  std::uint64_t min_volume = 2000;
  double jitter = 0.1;
};

void add_common(CLI::App& cmd, Flags& f, bool with_algo) {
  if (with_algo)
    cmd.add_option("--algo", f.algos, "ours, bvn, reco-sin, solstice (comma separated or repeated)")
        ->delimiter(',');
  cmd.add_option("--ports", f.ports, "port count N")->check(CLI::PositiveNumber);
  cmd.add_option("--delta", f.delta, "reconfiguration delay (time units)");
  cmd.add_option("--rc", f.rc, "circuit rate (data units per time unit)");
  cmd.add_option("--rp", f.rp, "packet rate (data units per time unit)");
  cmd.add_option("--density", f.densities, "sparse, normal, dense")->delimiter(',');
  cmd.add_option("--seeds", f.seeds, "number of synthetic coflows per density class");
  cmd.add_option("--seed", f.seed, "RNG seed for generation and trace port mapping");
  cmd.add_option("--skew", f.skew, "max/min non-zero volume ratio of synthetic coflows");
  cmd.add_option("--min-volume", f.min_volume, "smallest synthetic per-sender volume (data units)");
  cmd.add_option("--jitter", f.jitter, "relative spread of the pseudo-uniform sender split");
  cmd.add_option("--out", f.out, "output file (default stdout)");
}

ExperimentConfig to_config(const Flags& f) {
  ExperimentConfig cfg;
  for (const auto& a : f.algos) {
    auto algo = parse_algorithm(a);
    if (!algo) throw UsageError("unknown --algo '" + a + "'");
    cfg.algorithms.push_back(*algo);
  }
  try {
    cfg.params.n = f.ports;
    cfg.params.delta = parse_rational(f.delta);
    cfg.params.rc = parse_rational(f.rc);
    cfg.params.rp = parse_rational(f.rp);
    for (const auto& s : f.sweep) cfg.delta_sweep.push_back(parse_rational(s));
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (const auto& d : f.densities) {
    auto c = parse_density(d);
    if (!c) throw UsageError("unknown --density '" + d + "'");
    cfg.classes.push_back(*c);
  }
  if (!f.input.empty()) {
    cfg.trace_path = f.input;
  } else if (!cfg.classes.empty()) {
    WorkloadSpec spec;
    spec.n = f.ports;
    spec.density_class = cfg.classes.front();
    spec.volume_skew = f.skew;
    spec.seed = f.seed;
    spec.count = f.seeds;
    spec.min_volume = f.min_volume;
    spec.jitter = f.jitter;
    cfg.workload = spec;
  }
  if (f.format == "csv") cfg.format = OutputFormat::csv;
  else if (f.format == "json") cfg.format = OutputFormat::json;
  else throw UsageError("--format must be csv or json");
  if (f.normalize == "ours") cfg.normalize = NormalizeMode::ours;
  else if (f.normalize == "bound") cfg.normalize = NormalizeMode::bound;
  else if (!f.normalize.empty()) throw UsageError("--normalize must be ours or bound");
  cfg.seed = f.seed;
  return cfg;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(f.out, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + f.out + "'");
  out << text;
}

int report_invalid(const std::vector<std::string>& violations) {
  std::cerr << "error: schedule failed validation:";
  for (const auto& v : violations) std::cerr << ' ' << v;
  std::cerr << '\n';
  return kValidationFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-coflow scheduling on a hybrid circuit/packet switch"};
  app.require_subcommand(1);
  Flags f;

  auto* schedule = app.add_subcommand("schedule", "schedule one coflow with one algorithm");
  add_common(*schedule, f, true);
  schedule->add_option("--input", f.input, "trace CSV (coflow_id,src,dst,bytes)");
  schedule->add_option("--format", f.format, "json or csv");

  auto* compare = app.add_subcommand("compare", "compare algorithms over many coflows and deltas");
  add_common(*compare, f, true);
  compare->add_option("--input", f.input, "trace CSV (coflow_id,src,dst,bytes)");
  compare->add_option("--sweep-delta", f.sweep, "delta values, e.g. 20,40,60,80,100")->delimiter(',');
  compare->add_option("--format", f.format, "csv or json");
  compare->add_option("--normalize", f.normalize, "ours or bound (default: ours when run)");

  auto* gen = app.add_subcommand("generate", "write synthetic coflows as a trace CSV");
  add_common(*gen, f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  try {
    ExperimentConfig cfg = to_config(f);
    if (schedule->parsed()) {
      if (cfg.format == OutputFormat::csv) {
        cfg.delta_sweep.clear();
        cfg.normalize = NormalizeMode::bound;
        CompareResult r = run_compare(cfg);
        std::ostringstream os;
        write_compare_csv(os, r);
        emit(f, os.str());
        if (!r.valid) return report_invalid(r.rows.front().violations);
        return 0;
      }
      ScheduleResult r = run_schedule(cfg);
      emit(f, r.doc.dump(2) + "\n");
      return r.valid ? 0 : report_invalid(r.violations);
    }
    if (compare->parsed()) {
      CompareResult r = run_compare(cfg);
      std::ostringstream os;
      if (cfg.format == OutputFormat::csv) write_compare_csv(os, r);
      else os << compare_json(r).dump(2) << '\n';
      emit(f, os.str());
      if (!r.valid) {
        for (const auto& row : r.rows)
          if (!row.valid) {
            std::cerr << row.matrix_id << " / " << name(row.algo) << ": ";
            return report_invalid(row.violations);
          }
      }
      return 0;
    }
    if (gen->parsed()) {
      auto matrices = resolve_matrices(cfg);
      std::vector<DemandMatrix> ms;
      for (auto& m : matrices) ms.push_back(std::move(m.matrix));
      std::ostringstream os;
      write_trace(os, ms);
      emit(f, os.str());
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
