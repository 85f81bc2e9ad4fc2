#pragma once

#include "hybridsched/schedulers.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace hybridsched {

/// Pure circuit switching: rho / r_c + tau * delta.
inline Rational circuit_lower_bound(const MatrixStats& s, const FabricParams& p) {
  return s.rho / p.rc + Rational(static_cast<long>(s.tau)) * p.delta;
}

/// Hybrid switching: (r_c / (r_c + r_p)) * (rho / r_c + delta); 0 for zero demand.
inline Rational hybrid_lower_bound(const MatrixStats& s, const FabricParams& p) {
  if (s.rho == 0) return 0;
  return p.rc / (p.rc + p.rp) * (s.rho / p.rc + p.delta);
}

struct Bounds {
  Rational circuit_lb;
  Rational hybrid_lb;
};

inline Bounds bounds(const MatrixStats& s, const FabricParams& p) {
  return {circuit_lower_bound(s, p), hybrid_lower_bound(s, p)};
}

struct Check {
  std::string name;
  bool ok = true;
};

struct Validation {
  std::vector<Check> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (!c.ok) return false;
    return true;
  }

  std::vector<std::string> violations() const {
    std::vector<std::string> v;
    for (const auto& c : checks)
      if (!c.ok) v.push_back(c.name);
    return v;
  }
};

/// Checks a schedule against the formulation's constraints for `original`:
/// demand satisfaction, packet capacity, port constraint, positive
/// durations and T = sum t_l + L * delta. Failures are reported, not thrown.
inline Validation validate(const HybridSchedule& s, const DemandMatrix& original,
                           const FabricParams& params) {
  const std::size_t n = original.size();
  Validation v;

  bool shape = s.residual.size() == n;
  bool ports = true;
  bool positive = true;
  for (const auto& c : s.configs) {
    ports = ports && c.perm.size() == n && PermutationMatrix::is_bijection(c.perm.ports());
    positive = positive && c.duration > 0;
  }
  v.checks.push_back({"port_constraint", shape && ports});
  v.checks.push_back({"positive_durations", positive});

  bool demand = shape && ports;
  if (demand) {
    DemandMatrix served = s.circuit_volume(params.rc);
    for (std::size_t i = 0; i < n && demand; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (s.residual(i, j) + served(i, j) < original(i, j)) {
          demand = false;
          break;
        }
  }
  v.checks.push_back({"demand_satisfaction", demand});

  bool capacity = shape && params.rp * s.total >= stats(s.residual).rho;
  v.checks.push_back({"packet_capacity", capacity});

  Rational sum = 0;
  for (const auto& c : s.configs) sum += c.duration;
  Rational conf = params.delta * static_cast<long>(s.configs.size());
  bool accounting = s.t_trans == sum && s.t_conf == conf && s.total == s.t_trans + s.t_conf;
  v.checks.push_back({"time_accounting", accounting});
  return v;
}

struct RunReport {
  std::string algo;
  Rational cct;
  std::size_t reconfig_count = 0;
  Rational norm_rf;
  Rational norm_cct;
  bool constraints_ok = false;
  std::vector<std::string> violations;
};

inline RunReport make_report(std::string algo, const HybridSchedule& s, const DemandMatrix& original,
                             const FabricParams& params) {
  Validation v = validate(s, original, params);
  return {std::move(algo), s.total, s.reconfigurations(), 0, 0, v.ok(), v.violations()};
}

/// A normalization reference: the CCT and configuration count to divide by.
struct Benchmark {
  Rational cct;
  Rational rf;

  static Benchmark from(const RunReport& r) {
    return {r.cct, Rational(static_cast<long>(r.reconfig_count))};
  }

  /// Lower-bound benchmark. Hybrid mode: T_LB^H and one configuration.
  /// Circuit mode: T_LB^C and tau configurations.
  static Benchmark hybrid_bound(const MatrixStats& s, const FabricParams& p) {
    return {hybrid_lower_bound(s, p), 1};
  }
  static Benchmark circuit_bound(const MatrixStats& s, const FabricParams& p) {
    return {circuit_lower_bound(s, p), Rational(static_cast<long>(s.tau))};
  }
};

/// Fills norm_rf = L / L_bench and norm_cct = CCT / CCT_bench.
inline std::vector<RunReport> normalized_metrics(std::vector<RunReport> reports, const Benchmark& bench) {
  if (bench.cct <= 0 || bench.rf <= 0)
    throw std::invalid_argument("normalization benchmark must have CCT > 0 and RF > 0");
  for (auto& r : reports) {
    r.norm_rf = Rational(static_cast<long>(r.reconfig_count)) / bench.rf;
    r.norm_cct = r.cct / bench.cct;
  }
  return reports;
}

inline std::vector<RunReport> normalized_metrics(std::vector<RunReport> reports, const RunReport& bench) {
  return normalized_metrics(std::move(reports), Benchmark::from(bench));
}

}  // namespace hybridsched
