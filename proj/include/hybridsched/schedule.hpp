#pragma once

#include "hybridsched/matching.hpp"
#include "hybridsched/matrix.hpp"

#include <algorithm>
#include <vector>

namespace hybridsched {

struct CircuitConfig {
  PermutationMatrix perm;
  Rational duration;  // time units, > 0 for every emitted configuration

  friend bool operator==(const CircuitConfig&, const CircuitConfig&) = default;
};

/// Circuit configurations plus the residual E carried by the packet switch.
///
/// total = t_trans + t_conf with t_conf = L * delta. The residual may contain
/// artificial (stuffed) demand; `artificial_residual` is the part of it that
/// is artificial when real traffic is assumed to ride the circuits first.
struct HybridSchedule {
  std::vector<CircuitConfig> configs;
  DemandMatrix residual;
  DemandMatrix artificial_residual;
  Rational t_trans;
  Rational t_conf;
  Rational total;

  std::size_t reconfigurations() const { return configs.size(); }

  static HybridSchedule assemble(std::vector<CircuitConfig> configs, DemandMatrix residual,
                                 DemandMatrix artificial_residual, const Rational& delta) {
    HybridSchedule s{std::move(configs), std::move(residual), std::move(artificial_residual), 0, 0, 0};
    for (const auto& c : s.configs) s.t_trans += c.duration;
    s.t_conf = delta * static_cast<long>(s.configs.size());
    s.total = s.t_trans + s.t_conf;
    return s;
  }

  static HybridSchedule empty(std::size_t n) {
    return HybridSchedule{{}, DemandMatrix(n), DemandMatrix(n), 0, 0, 0};
  }

  /// Data each port pair receives over the circuit: sum of r_c * t_l * P_l.
  DemandMatrix circuit_volume(const Rational& rc) const {
    DemandMatrix v(residual.size());
    for (const auto& c : configs)
      for (std::size_t i = 0; i < c.perm.size(); ++i) v.add(i, c.perm[i], rc * c.duration);
    return v;
  }

  /// Residual with the artificial share removed.
  DemandMatrix real_residual() const {
    DemandMatrix r(residual.size());
    for (std::size_t i = 0; i < r.size(); ++i)
      for (std::size_t j = 0; j < r.size(); ++j)
        r.set(i, j, residual(i, j) - std::min(residual(i, j), artificial_residual(i, j)));
    return r;
  }
};

/// Artificial share of `residual` when circuits carry real traffic first.
inline DemandMatrix artificial_share(const DemandMatrix& residual, const DemandMatrix& artificial) {
  DemandMatrix a(residual.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      a.set(i, j, std::min(residual(i, j), artificial(i, j)));
  return a;
}

}  // namespace hybridsched
