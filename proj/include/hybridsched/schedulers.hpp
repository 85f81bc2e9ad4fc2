#pragma once

#include "hybridsched/matching.hpp"
#include "hybridsched/preprocess.hpp"
#include "hybridsched/schedule.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsched {

/// Full Birkhoff-von Neumann decomposition of a K-bistochastic matrix:
/// repeatedly match on the non-zero support and peel off the matching at its
/// smallest entry. Every step zeroes at least one entry, so L <= n^2.
inline HybridSchedule bvn_decompose(const StuffedDemand& d, const FabricParams& params) {
  params.check();
  if (!is_k_bistochastic(d.matrix, d.k))
    throw std::invalid_argument("bvn_decompose: input is not K-bistochastic");
  DemandMatrix rest = d.matrix;
  std::vector<CircuitConfig> configs;
  while (!rest.is_zero()) {
    auto p = perfect_matching(binary_support(rest));
    if (!p) throw std::logic_error("bvn_decompose: no perfect matching on bistochastic support");
    Rational volume = min_matched(rest, *p);
    for (std::size_t i = 0; i < p->size(); ++i) rest.set(i, (*p)[i], rest(i, (*p)[i]) - volume);
    configs.push_back({std::move(*p), volume / params.rc});
  }
  const std::size_t n = d.matrix.size();
  return HybridSchedule::assemble(std::move(configs), DemandMatrix(n), DemandMatrix(n), params.delta);
}

/// One accepted configuration of the slicing loop.
struct SliceStep {
  Rational gamma;         // threshold it was found at
  Rational duration;      // t_l
  Rational elapsed;       // T' after adding t_l + delta
  Rational residual_rho;  // rho of E' after subtracting it
};

struct SlicingState {
  DemandMatrix current;  // E': what the circuits have not carried
  Rational gamma;
  Rational elapsed;      // T' = sum t_l + L * delta
  std::vector<CircuitConfig> configs;
  std::vector<SliceStep> trace;
  DemandMatrix artificial;  // stuffed-in demand, for residual bookkeeping
};

/// Largest quantum * 2^k strictly below `max_entry`.
inline Rational initial_threshold(const Rational& max_entry, const Rational& quantum) {
  Rational g = quantum;
  if (g < max_entry) {
    while (g * 2 < max_entry) g *= 2;
  } else {
    while (g >= max_entry) g /= 2;
  }
  return g;
}

/// Greedy threshold slicing. Extracts perfect matchings whose entries all
/// reach gamma, retrying the same gamma until it fails and then halving it,
/// while the packet switch could not yet drain E' in T' (r_p * T' < rho(E')).
inline SlicingState slice(const StuffedDemand& d, const FabricParams& params, const Rational& quantum) {
  SlicingState st{d.matrix, 0, 0, {}, {}, d.artificial};
  if (d.matrix.is_zero()) return st;
  st.gamma = initial_threshold(d.matrix.max_entry(), quantum);
  Rational rho = d.k;
  while (params.rp * st.elapsed < rho) {
    auto p = perfect_matching_at_threshold(st.current, st.gamma);
    if (!p) {
      st.gamma /= 2;
      continue;
    }
    Rational volume = min_matched(st.current, *p);
    for (std::size_t i = 0; i < p->size(); ++i)
      st.current.set(i, (*p)[i], st.current(i, (*p)[i]) - volume);
    Rational duration = volume / params.rc;
    st.elapsed += duration + params.delta;
    rho = stats(st.current).rho;
    st.trace.push_back({st.gamma, duration, st.elapsed, rho});
    st.configs.push_back({std::move(*p), std::move(duration)});
  }
  return st;
}

struct MigrationResult {
  Rational epsilon;                    // volume moved per connected pair, summed over donors
  std::vector<std::size_t> donor_indices;
  std::vector<Rational> donor_shares;  // epsilon split; sums to epsilon
  HybridSchedule schedule;
  bool degenerate = false;             // circuit volume could not absorb epsilon; nothing moved
  bool donor_below_delta = false;      // some shortened donor now lasts less than delta
};

/// Moves volume from circuit configurations into the packet residual so both
/// switches finish together: r_p * T = rho(E).
///
/// epsilon solves r_p * (T' - epsilon / r_c) = rho(E') + epsilon. A full
/// permutation adds its share to every row and column of E, so rho grows by
/// exactly epsilon however it is split. Donors are the shortest longest-first
/// prefix whose circuit volume exceeds epsilon; inside it epsilon is split in
/// proportion to duration, leaving every donor a positive duration.
inline MigrationResult migrate(const SlicingState& state, const FabricParams& params) {
  const Rational rho_before = stats(state.current).rho;
  if (params.rp * state.elapsed < rho_before)
    throw std::invalid_argument("migrate: slicing has not reached r_p * T' >= rho(E')");

  MigrationResult out;
  out.epsilon = (params.rp * state.elapsed - rho_before) / (1 + params.rp / params.rc);

  std::vector<CircuitConfig> configs = state.configs;
  DemandMatrix residual = state.current;

  if (out.epsilon > 0) {
    std::vector<std::size_t> order(configs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return configs[a].duration > configs[b].duration;
    });

    Rational prefix_time = 0;
    std::size_t prefix = 0;
    while (prefix < order.size() && params.rc * prefix_time <= out.epsilon)
      prefix_time += configs[order[prefix++]].duration;

    if (params.rc * prefix_time <= out.epsilon) {
      out.degenerate = true;
    } else {
      for (std::size_t k = 0; k < prefix; ++k) {
        auto& donor = configs[order[k]];
        Rational share = prefix == 1 ? out.epsilon : out.epsilon * donor.duration / prefix_time;
        donor.duration -= share / params.rc;
        for (std::size_t i = 0; i < donor.perm.size(); ++i) residual.add(i, donor.perm[i], share);
        if (donor.duration < params.delta) out.donor_below_delta = true;
        out.donor_indices.push_back(order[k]);
        out.donor_shares.push_back(std::move(share));
      }
    }
  }
  if (out.degenerate) out.epsilon = 0;

  DemandMatrix art = artificial_share(residual, state.artificial);
  out.schedule = HybridSchedule::assemble(std::move(configs), std::move(residual), std::move(art),
                                          params.delta);
  return out;
}

/// Everything the main scheduler produced on the way to its schedule.
struct HybridRun {
  DemandMatrix regularized;
  StuffedDemand stuffed;
  SlicingState slicing;
  MigrationResult migration;
};

inline void require_packet_rate(const FabricParams& params) {
  if (params.rp <= 0)
    throw std::invalid_argument(
        "rp must be > 0: with no packet switch the slicing loop guard r_p*T' < rho(E') never trips "
        "(use reco-sin for circuit-only scheduling)");
}

/// regularize -> stuff -> slice -> migrate.
inline HybridRun hybrid_schedule_run(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  require_packet_rate(params);
  HybridRun run;
  run.regularized = regularize(d, params);
  run.stuffed = stuff(run.regularized);
  run.slicing = slice(run.stuffed, params, params.quantum());
  run.migration = migrate(run.slicing, params);
  return run;
}

inline HybridSchedule hybrid_schedule(const DemandMatrix& d, const FabricParams& params) {
  return hybrid_schedule_run(d, params).migration.schedule;
}

/// Circuit-only: regularize -> stuff -> full BvN.
inline HybridSchedule reco_sin(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  return bvn_decompose(stuff(regularize(d, params)), params);
}

/// Hybrid without regularization or migration. Thresholds are powers of two
/// of the raw data unit.
inline HybridSchedule solstice(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  require_packet_rate(params);
  SlicingState st = slice(stuff(d), params, Rational(1));
  DemandMatrix art = artificial_share(st.current, st.artificial);
  return HybridSchedule::assemble(std::move(st.configs), std::move(st.current), std::move(art),
                                  params.delta);
}

/// Circuit-only: stuff -> full BvN.
inline HybridSchedule basic_bvn(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  return bvn_decompose(stuff(d), params);
}

enum class Algorithm { ours, bvn, reco_sin, solstice };

inline constexpr Algorithm all_algorithms[] = {Algorithm::ours, Algorithm::bvn, Algorithm::reco_sin,
                                               Algorithm::solstice};

inline std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::ours: return "ours";
    case Algorithm::bvn: return "bvn";
    case Algorithm::reco_sin: return "reco-sin";
    case Algorithm::solstice: return "solstice";
  }
  return "?";
}

inline std::optional<Algorithm> parse_algorithm(std::string_view s) {
  for (Algorithm a : all_algorithms)
    if (name(a) == s) return a;
  return std::nullopt;
}

/// True for schedulers that use the packet switch.
inline bool is_hybrid(Algorithm a) { return a == Algorithm::ours || a == Algorithm::solstice; }

inline HybridSchedule run_algorithm(Algorithm a, const DemandMatrix& d, const FabricParams& params) {
  switch (a) {
    case Algorithm::ours: return hybrid_schedule(d, params);
    case Algorithm::bvn: return basic_bvn(d, params);
    case Algorithm::reco_sin: return reco_sin(d, params);
    case Algorithm::solstice: return solstice(d, params);
  }
  throw std::invalid_argument("unknown algorithm");
}

}  // namespace hybridsched
