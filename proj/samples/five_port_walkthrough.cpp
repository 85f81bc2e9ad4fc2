// Walks the main scheduler through a 5-port coflow (delta = 2, r_c = 1,
// r_p = 0.1) and prints each slicing step and the migration.

#include "hybridsched/hybridsched.hpp"

#include <iostream>

using namespace hybridsched;

int main() {
  const DemandMatrix d{{8, 3, 11, 12, 67},
                       {4, 7, 67, 12, 11},
                       {11, 79, 4, 3, 4},
                       {11, 12, 3, 71, 4},
                       {67, 0, 15, 3, 16}};
  const FabricParams params{5, 2, 1, Rational(1, 10)};

  HybridRun run = hybrid_schedule_run(d, params);
  std::cout << "rho(D) = " << stats(d).rho << ", rho(D*) = " << stats(run.regularized).rho
            << ", K = " << run.stuffed.k << '\n';
  for (const auto& step : run.slicing.trace)
    std::cout << "gamma " << step.gamma << ": t = " << step.duration << ", T' = " << step.elapsed
              << ", rho(E') = " << step.residual_rho << '\n';

  const auto& m = run.migration;
  std::cout << "epsilon = " << m.epsilon << " from config " << m.donor_indices.front() << '\n'
            << "T = " << m.schedule.total << " (" << to_double(m.schedule.total) << "), rho(E) = "
            << stats(m.schedule.residual).rho << '\n';

  Validation v = validate(m.schedule, d, params);
  std::cout << "valid: " << std::boolalpha << v.ok() << '\n';
  return v.ok() ? 0 : 1;
}
