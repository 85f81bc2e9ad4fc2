#pragma once

#include "hybridsched/matrix.hpp"

#include <stdexcept>
#include <vector>

namespace hybridsched {

/// Rounds every non-zero entry up to an integer multiple of the circuit
/// quantum r_c * delta. Zero entries stay zero.
inline DemandMatrix regularize(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  if (params.delta == 0)
    throw std::invalid_argument("regularize: delta must be > 0 (delta = 0 makes it the identity)");
  const Rational q = params.quantum();
  DemandMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j)
      if (d(i, j) != 0) out.set(i, j, Rational(ceil(d(i, j) / q)) * q);
  return out;
}

struct StuffedDemand {
  DemandMatrix matrix;      // K-bistochastic
  Rational k;               // common line sum; equals rho of the input
  DemandMatrix artificial;  // matrix - input, elementwise >= 0
  std::size_t tau_before = 0;
  std::size_t tau_after = 0;
  std::size_t new_nonzeros = 0;  // zero cells that had to be filled
};

/// QuickStuff: raise entries until every line sums to rho(d).
///
/// Existing non-zeros are raised first in row-major order, each as far as its
/// row and column slack allow. If lines are still short, the remaining
/// deficit goes to zero cells, each time at the (most deficient row, most
/// deficient column) pair with lowest indices on ties. Every step saturates
/// at least one line, so at most 2n zero cells are touched.
inline StuffedDemand stuff(const DemandMatrix& d) {
  const std::size_t n = d.size();
  const MatrixStats before = stats(d);
  const Rational& k = before.rho;

  std::vector<Rational> row_def(n), col_def(n);
  for (std::size_t a = 0; a < n; ++a) {
    row_def[a] = k - d.row_sum(a);
    col_def[a] = k - d.col_sum(a);
  }

  DemandMatrix out = d;
  DemandMatrix artificial(n);
  auto raise = [&](std::size_t i, std::size_t j) {
    Rational add = std::min(row_def[i], col_def[j]);
    if (add <= 0) return;
    out.add(i, j, add);
    artificial.add(i, j, add);
    row_def[i] -= add;
    col_def[j] -= add;
  };

  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) != 0) raise(i, j);

  std::size_t new_nonzeros = 0;
  auto most_deficient = [](const std::vector<Rational>& def) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < def.size(); ++a)
      if (def[a] > def[best]) best = a;
    return best;
  };
  while (true) {
    std::size_t i = most_deficient(row_def);
    if (row_def[i] == 0) break;
    std::size_t j = most_deficient(col_def);
    // Both lines are short, so neither was saturated by an earlier fill:
    // (i, j) is still a zero cell.
    if (out(i, j) == 0) ++new_nonzeros;
    raise(i, j);
  }

  StuffedDemand result{std::move(out), k, std::move(artificial), before.tau, 0, new_nonzeros};
  result.tau_after = stats(result.matrix).tau;
  return result;
}

}  // namespace hybridsched
