#pragma once

// Hand-rolled random instance generators shared by the property tests.

#include "hybridsched/hybridsched.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testing_support {

using namespace hybridsched;

/// Heavy-tailed integer volume in [1, max].
inline long heavy_tail(std::mt19937_64& rng, long max) {
  std::uniform_real_distribution<double> u(0.0, std::log(static_cast<double>(max)));
  return std::max(1L, std::min(max, static_cast<long>(std::exp(u(rng)))));
}

/// n x n matrix with roughly `density` non-zeros, values heavy-tailed up to max.
/// Occasionally adds a fractional part so exactness is exercised too.
inline DemandMatrix random_matrix(std::mt19937_64& rng, std::size_t n, double density, long max,
                                  bool fractional = false) {
  std::bernoulli_distribution keep(density);
  std::uniform_int_distribution<long> third(0, 2);
  DemandMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (keep(rng)) {
        Rational v(heavy_tail(rng, max));
        if (fractional) v += Rational(third(rng), 3);
        d.set(i, j, v);
      }
  return d;
}

struct Instance {
  DemandMatrix d;
  FabricParams params;
};

/// A random (matrix, fabric) pair with n in [1, max_n], r_p in (0, r_c].
inline Instance random_instance(std::mt19937_64& rng, std::size_t max_n) {
  std::uniform_int_distribution<std::size_t> pick_n(1, max_n);
  std::uniform_real_distribution<double> pick_density(0.05, 1.0);
  const long maxes[] = {10, 1000, 100000};
  const long deltas[] = {1, 2, 5, 20};
  const long rcs[] = {1, 10, 100};
  const Rational rp_frac[] = {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(1)};
  std::uniform_int_distribution<int> pick3(0, 2), pick4(0, 3), coin(0, 1);

  const std::size_t n = pick_n(rng);
  const long max = maxes[pick3(rng)];
  DemandMatrix d = random_matrix(rng, n, pick_density(rng), max, coin(rng) == 1);
  FabricParams p;
  p.n = n;
  p.delta = deltas[pick4(rng)];
  p.rc = rcs[pick3(rng)];
  p.rp = p.rc * rp_frac[pick4(rng)];
  return {std::move(d), p};
}

/// The 5-port coflow used by the walkthrough: rho = 102, and after
/// regularization with r_c = 1, delta = 2 it is 104-bistochastic.
inline DemandMatrix five_port_fixture() {
  return DemandMatrix{{8, 3, 11, 12, 67},
                      {4, 7, 67, 12, 11},
                      {11, 79, 4, 3, 4},
                      {11, 12, 3, 71, 4},
                      {67, 0, 15, 3, 16}};
}

inline FabricParams five_port_params() { return FabricParams{5, 2, 1, Rational(1, 10)}; }

/// Sum over configurations of r_c * t_l * P_l.
inline DemandMatrix circuit_sum(const HybridSchedule& s, const Rational& rc, std::size_t n) {
  DemandMatrix v(n);
  for (const auto& c : s.configs)
    for (std::size_t i = 0; i < n; ++i) v.add(i, c.perm[i], rc * c.duration);
  return v;
}

}  // namespace testing_support
