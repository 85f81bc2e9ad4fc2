#pragma once

#include "hybridsched/analysis.hpp"
#include "hybridsched/schedulers.hpp"
#include "hybridsched/workload.hpp"

#include <nlohmann/json.hpp>

#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridsched {

/// Bad flag combination or unreadable input (CLI exit code 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };
enum class NormalizeMode { ours, bound };

struct ExperimentConfig {
  std::vector<Algorithm> algorithms;
  FabricParams params;
  std::optional<WorkloadSpec> workload;
  std::vector<DensityClass> classes;  // compare: classes to generate (empty = workload's own)
  std::optional<std::string> trace_path;
  std::vector<Rational> delta_sweep;
  OutputFormat format = OutputFormat::json;
  std::optional<NormalizeMode> normalize;
  std::uint64_t seed = 1;
};

struct NamedMatrix {
  std::string id;
  DemandMatrix matrix;
  DensityClass density_class;
};

inline DensityClass classify(double density) {
  if (density <= 0.2) return DensityClass::sparse;
  if (density <= 0.6) return DensityClass::normal;
  return DensityClass::dense;
}

inline std::vector<NamedMatrix> resolve_matrices(const ExperimentConfig& cfg) {
  std::vector<NamedMatrix> out;
  if (cfg.trace_path) {
    std::vector<DemandMatrix> ms;
    try {
      ms = ingest_trace(*cfg.trace_path, cfg.params.n, cfg.seed);
    } catch (const TraceError& e) {
      throw UsageError(e.what());
    }
    for (std::size_t k = 0; k < ms.size(); ++k)
      out.push_back({"coflow-" + std::to_string(k), ms[k], classify(stats(ms[k]).density)});
    return out;
  }
  if (!cfg.workload) throw UsageError("no workload: give --input or --density");
  std::vector<DensityClass> classes = cfg.classes;
  if (classes.empty()) classes.push_back(cfg.workload->density_class);
  for (DensityClass c : classes) {
    WorkloadSpec spec = *cfg.workload;
    spec.density_class = c;
    std::vector<DemandMatrix> ms;
    try {
      ms = generate(spec);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    for (std::size_t k = 0; k < ms.size(); ++k)
      out.push_back({std::string(name(c)) + "-" + std::to_string(k), std::move(ms[k]), c});
  }
  return out;
}

inline void check_algorithm_params(const ExperimentConfig& cfg, const FabricParams& p) {
  try {
    p.check();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  for (Algorithm a : cfg.algorithms) {
    if (is_hybrid(a) && p.rp <= 0)
      throw UsageError("--rp 0 with '" + std::string(name(a)) +
                       "': the slicing loop guard r_p*T' < rho(E') can never trip");
    if ((a == Algorithm::ours || a == Algorithm::reco_sin) && p.delta <= 0)
      throw UsageError("--delta must be > 0 for '" + std::string(name(a)) + "' (regularization)");
  }
}

inline nlohmann::json rational_json(const Rational& r) {
  return {{"exact", to_string(r)}, {"value", to_double(r)}};
}

inline nlohmann::json matrix_json(const DemandMatrix& m) {
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline nlohmann::json schedule_json(const HybridSchedule& s) {
  auto configs = nlohmann::json::array();
  for (const auto& c : s.configs)
    configs.push_back({{"ports", c.perm.ports()}, {"duration", rational_json(c.duration)}});
  return {{"configs", std::move(configs)},
          {"L", s.reconfigurations()},
          {"residual", matrix_json(s.residual)},
          {"rho_residual", rational_json(stats(s.residual).rho)},
          {"t_trans", rational_json(s.t_trans)},
          {"t_conf", rational_json(s.t_conf)},
          {"total", rational_json(s.total)}};
}

inline nlohmann::json validation_json(const Validation& v) {
  nlohmann::json checks = nlohmann::json::object();
  for (const auto& c : v.checks) checks[c.name] = c.ok;
  return {{"ok", v.ok()}, {"checks", std::move(checks)}, {"violations", v.violations()}};
}

struct ScheduleResult {
  nlohmann::json doc;
  bool valid = false;
  std::vector<std::string> violations;
};

/// One algorithm on one matrix: the schedule, its time decomposition and the
/// constraint checks.
inline ScheduleResult run_schedule(const ExperimentConfig& cfg) {
  if (cfg.algorithms.size() != 1) throw UsageError("schedule needs exactly one --algo");
  auto matrices = resolve_matrices(cfg);
  if (matrices.size() != 1)
    throw UsageError("schedule needs exactly one matrix, input resolves to " +
                     std::to_string(matrices.size()));
  const Algorithm algo = cfg.algorithms.front();
  FabricParams p = cfg.params;
  p.n = matrices.front().matrix.size();
  check_algorithm_params(cfg, p);

  const DemandMatrix& d = matrices.front().matrix;
  const MatrixStats st = stats(d);
  nlohmann::json doc;
  doc["algo"] = name(algo);
  doc["params"] = {{"n", p.n}, {"delta", rational_json(p.delta)}, {"rc", rational_json(p.rc)},
                   {"rp", rational_json(p.rp)}};
  doc["demand"] = matrix_json(d);
  doc["stats"] = {{"rho", rational_json(st.rho)}, {"tau", st.tau}, {"density", st.density}};

  HybridSchedule s;
  if (algo == Algorithm::ours) {
    HybridRun run = hybrid_schedule_run(d, p);
    s = run.migration.schedule;
    auto trace = nlohmann::json::array();
    for (const auto& step : run.slicing.trace)
      trace.push_back({{"gamma", rational_json(step.gamma)},
                       {"duration", rational_json(step.duration)},
                       {"elapsed", rational_json(step.elapsed)},
                       {"rho_residual", rational_json(step.residual_rho)}});
    doc["slicing"] = std::move(trace);
    doc["migration"] = {{"epsilon", rational_json(run.migration.epsilon)},
                        {"donors", run.migration.donor_indices},
                        {"degenerate", run.migration.degenerate},
                        {"donor_below_delta", run.migration.donor_below_delta}};
  } else {
    s = run_algorithm(algo, d, p);
  }
  doc["schedule"] = schedule_json(s);
  doc["packet_equals_circuit"] = p.rp * s.total == stats(s.residual).rho;
  Validation v = validate(s, d, p);
  doc["validation"] = validation_json(v);
  Bounds b = bounds(st, p);
  doc["bounds"] = {{"circuit_lb", rational_json(b.circuit_lb)}, {"hybrid_lb", rational_json(b.hybrid_lb)}};
  return {std::move(doc), v.ok(), v.violations()};
}

/// One (matrix, algorithm, delta) cell of a comparison.
struct CompareRow {
  std::string matrix_id;
  DensityClass density_class = DensityClass::normal;
  Algorithm algo = Algorithm::ours;
  Rational delta;
  HybridSchedule schedule;
  MatrixStats stats;
  Rational lb_hybrid;
  bool valid = false;
  std::vector<std::string> violations;
  std::optional<Rational> norm_rf_ours, norm_cct_ours;  // benchmark: ours on the same cell
  std::optional<Rational> norm_rf_bound, norm_cct_bound;  // benchmark: hybrid lower bound
};

struct CompareResult {
  std::vector<CompareRow> rows;
  NormalizeMode mode = NormalizeMode::ours;
  bool valid = true;
};

inline CompareResult run_compare(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty()) throw UsageError("compare needs at least one --algo");
  std::vector<Rational> deltas = cfg.delta_sweep;
  if (deltas.empty()) deltas.push_back(cfg.params.delta);
  for (const auto& d : deltas)
    if (d <= 0) throw UsageError("--sweep-delta values must be > 0");
  std::sort(deltas.begin(), deltas.end());

  bool has_ours = false;
  for (Algorithm a : cfg.algorithms) has_ours = has_ours || a == Algorithm::ours;
  CompareResult out;
  out.mode = cfg.normalize.value_or(has_ours ? NormalizeMode::ours : NormalizeMode::bound);
  if (out.mode == NormalizeMode::ours && !has_ours)
    throw UsageError("--normalize ours requires --algo ours");

  auto matrices = resolve_matrices(cfg);
  for (const auto& m : matrices) {
    for (const auto& delta : deltas) {
      FabricParams p = cfg.params;
      p.n = m.matrix.size();
      p.delta = delta;
      check_algorithm_params(cfg, p);
      const MatrixStats st = stats(m.matrix);
      const Rational lb = hybrid_lower_bound(st, p);
      std::vector<CompareRow> cell;
      std::optional<RunReport> ours_report;
      for (Algorithm a : cfg.algorithms) {
        CompareRow row;
        row.matrix_id = m.id;
        row.density_class = m.density_class;
        row.algo = a;
        row.delta = delta;
        row.schedule = run_algorithm(a, m.matrix, p);
        row.stats = st;
        row.lb_hybrid = lb;
        RunReport rep = make_report(std::string(name(a)), row.schedule, m.matrix, p);
        row.valid = rep.constraints_ok;
        row.violations = rep.violations;
        out.valid = out.valid && row.valid;
        if (a == Algorithm::ours) ours_report = rep;
        cell.push_back(std::move(row));
      }
      for (auto& row : cell) {
        RunReport rep{std::string(name(row.algo)), row.schedule.total, row.schedule.reconfigurations(),
                      0, 0, row.valid, {}};
        if (ours_report && ours_report->cct > 0 && ours_report->reconfig_count > 0) {
          auto r = normalized_metrics({rep}, *ours_report).front();
          row.norm_rf_ours = r.norm_rf;
          row.norm_cct_ours = r.norm_cct;
        }
        if (lb > 0) {
          auto r = normalized_metrics({rep}, Benchmark::hybrid_bound(st, p)).front();
          row.norm_rf_bound = r.norm_rf;
          row.norm_cct_bound = r.norm_cct;
        }
        out.rows.push_back(std::move(row));
      }
    }
  }
  return out;
}

namespace detail {

inline std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

inline std::string num(const Rational& r) { return num(to_double(r)); }

inline std::string num(const std::optional<Rational>& r) { return r ? num(*r) : std::string(); }

struct Mean {
  double sum = 0;
  std::size_t count = 0;
  void add(double v) {
    sum += v;
    ++count;
  }
  std::string str() const { return count ? num(sum / static_cast<double>(count)) : std::string(); }
};

struct Aggregate {
  Mean cct, t_trans, t_conf, L, rho, tau, density, norm_rf, norm_cct, lb, valid;
};

}  // namespace detail

inline constexpr const char* compare_csv_header =
    "matrix_id,algo,delta,cct,t_trans,t_conf,L,rho,tau,density,norm_rf,norm_cct,lb_hybrid,valid";

/// CSV with one row per cell followed by per-class means (matrix_id
/// "mean:<class>"; valid is then the fraction of valid schedules).
inline void write_compare_csv(std::ostream& os, const CompareResult& r) {
  using detail::num;
  os << compare_csv_header << '\n';
  const bool by_ours = r.mode == NormalizeMode::ours;
  std::map<std::tuple<int, std::size_t, Rational>, detail::Aggregate> agg;
  std::vector<Algorithm> algo_order;
  for (const auto& row : r.rows) {
    const auto& nrf = by_ours ? row.norm_rf_ours : row.norm_rf_bound;
    const auto& ncct = by_ours ? row.norm_cct_ours : row.norm_cct_bound;
    os << row.matrix_id << ',' << name(row.algo) << ',' << num(row.delta) << ',' << num(row.schedule.total)
       << ',' << num(row.schedule.t_trans) << ',' << num(row.schedule.t_conf) << ','
       << row.schedule.reconfigurations() << ',' << num(row.stats.rho) << ',' << row.stats.tau << ','
       << num(row.stats.density) << ',' << num(nrf) << ',' << num(ncct) << ',' << num(row.lb_hybrid) << ','
       << (row.valid ? 1 : 0) << '\n';

    auto& a = agg[{static_cast<int>(row.density_class), static_cast<std::size_t>(row.algo), row.delta}];
    a.cct.add(to_double(row.schedule.total));
    a.t_trans.add(to_double(row.schedule.t_trans));
    a.t_conf.add(to_double(row.schedule.t_conf));
    a.L.add(static_cast<double>(row.schedule.reconfigurations()));
    a.rho.add(to_double(row.stats.rho));
    a.tau.add(static_cast<double>(row.stats.tau));
    a.density.add(row.stats.density);
    if (nrf) a.norm_rf.add(to_double(*nrf));
    if (ncct) a.norm_cct.add(to_double(*ncct));
    a.lb.add(to_double(row.lb_hybrid));
    a.valid.add(row.valid ? 1.0 : 0.0);
  }
  for (const auto& [key, a] : agg) {
    auto [cls, algo, delta] = key;
    os << "mean:" << name(static_cast<DensityClass>(cls)) << ',' << name(static_cast<Algorithm>(algo)) << ','
       << num(delta) << ',' << a.cct.str() << ',' << a.t_trans.str() << ',' << a.t_conf.str() << ','
       << a.L.str() << ',' << a.rho.str() << ',' << a.tau.str() << ',' << a.density.str() << ','
       << a.norm_rf.str() << ',' << a.norm_cct.str() << ',' << a.lb.str() << ',' << a.valid.str() << '\n';
  }
}

inline nlohmann::json compare_json(const CompareResult& r) {
  auto opt = [](const std::optional<Rational>& v) -> nlohmann::json {
    return v ? rational_json(*v) : nlohmann::json(nullptr);
  };
  auto rows = nlohmann::json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"matrix_id", row.matrix_id},
                    {"density_class", name(row.density_class)},
                    {"algo", name(row.algo)},
                    {"delta", rational_json(row.delta)},
                    {"cct", rational_json(row.schedule.total)},
                    {"t_trans", rational_json(row.schedule.t_trans)},
                    {"t_conf", rational_json(row.schedule.t_conf)},
                    {"L", row.schedule.reconfigurations()},
                    {"rho", rational_json(row.stats.rho)},
                    {"tau", row.stats.tau},
                    {"density", row.stats.density},
                    {"lb_hybrid", rational_json(row.lb_hybrid)},
                    {"norm_vs_ours", {{"rf", opt(row.norm_rf_ours)}, {"cct", opt(row.norm_cct_ours)}}},
                    {"norm_vs_bound", {{"rf", opt(row.norm_rf_bound)}, {"cct", opt(row.norm_cct_bound)}}},
                    {"valid", row.valid},
                    {"violations", row.violations}});
  return {{"normalize", r.mode == NormalizeMode::ours ? "ours" : "bound"}, {"rows", std::move(rows)}};
}

}  // namespace hybridsched
