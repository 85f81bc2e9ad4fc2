#pragma once

#include "hybridsched/matching.hpp"
#include "hybridsched/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hybridsched {

namespace lp {

using Matrix = std::vector<std::vector<Rational>>;

/// max c.x  s.t.  A x <= b, x >= 0, with b >= 0 (the slack basis is feasible).
/// Dense tableau, Bland's rule. Returns nullopt when unbounded.
inline std::optional<Rational> maximize(const Matrix& a, const std::vector<Rational>& b,
                                        const std::vector<Rational>& c) {
  const std::size_t m = a.size();
  const std::size_t n = c.size();
  for (const auto& v : b)
    if (v < 0) throw std::invalid_argument("lp::maximize needs b >= 0");

  // Columns 0..n-1 structural, n..n+m-1 slack, last column rhs.
  Matrix t(m + 1, std::vector<Rational>(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k < n; ++k) t[r][k] = a[r][k];
    t[r][n + r] = 1;
    t[r][n + m] = b[r];
    basis[r] = n + r;
  }
  for (std::size_t k = 0; k < n; ++k) t[m][k] = -c[k];

  while (true) {
    std::size_t enter = n + m;
    for (std::size_t k = 0; k < n + m; ++k)
      if (t[m][k] < 0) {
        enter = k;
        break;
      }
    if (enter == n + m) return t[m][n + m];

    std::size_t leave = m;
    Rational best;
    for (std::size_t r = 0; r < m; ++r) {
      if (t[r][enter] <= 0) continue;
      Rational ratio = t[r][n + m] / t[r][enter];
      if (leave == m || ratio < best || (ratio == best && basis[r] < basis[leave])) {
        leave = r;
        best = ratio;
      }
    }
    if (leave == m) return std::nullopt;

    Rational pivot = t[leave][enter];
    for (auto& v : t[leave]) v /= pivot;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == leave || t[r][enter] == 0) continue;
      Rational f = t[r][enter];
      for (std::size_t k = 0; k <= n + m; ++k)
        if (t[leave][k] != 0) t[r][k] -= f * t[leave][k];
    }
    basis[leave] = enter;
  }
}

/// min c.x  s.t.  A x >= b, x >= 0, with c >= 0, solved through its dual
/// max b.y s.t. A^T y <= c, y >= 0. Returns nullopt when infeasible.
inline std::optional<Rational> minimize_covering(const Matrix& a, const std::vector<Rational>& b,
                                                 const std::vector<Rational>& c) {
  const std::size_t rows = a.size();
  const std::size_t cols = c.size();
  Matrix at(cols, std::vector<Rational>(rows));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t k = 0; k < cols; ++k) at[k][r] = a[r][k];
  return maximize(at, c, b);
}

}  // namespace lp

inline std::vector<PermutationMatrix> all_permutations(std::size_t n) {
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), std::size_t{0});
  std::vector<PermutationMatrix> out;
  do out.emplace_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Minimal T for a fixed set of configurations: durations and the packet
/// residual are chosen optimally by linear programming. nullopt when the
/// set cannot serve the demand at all (only possible with r_p = 0).
///
///   min T  s.t.  T - sum t_l >= L delta
///                E_ij + r_c sum_{l: P_l(i)=j} t_l >= D_ij
///                r_p T - (row or column sum of E) >= 0
inline std::optional<Rational> optimal_time_for(const DemandMatrix& d, const FabricParams& params,
                                 const std::vector<PermutationMatrix>& configs) {
  const std::size_t n = d.size();
  const std::size_t L = configs.size();
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (d(i, j) > 0) cells.emplace_back(i, j);

  // Variables: T, t_1..t_L, E over demand cells.
  const std::size_t vars = 1 + L + cells.size();
  lp::Matrix a;
  std::vector<Rational> b;
  auto row = [&] { return std::vector<Rational>(vars); };

  auto time = row();
  time[0] = 1;
  for (std::size_t l = 0; l < L; ++l) time[1 + l] = -1;
  a.push_back(std::move(time));
  b.push_back(params.delta * static_cast<long>(L));

  for (std::size_t c = 0; c < cells.size(); ++c) {
    auto [i, j] = cells[c];
    auto dem = row();
    dem[1 + L + c] = 1;
    for (std::size_t l = 0; l < L; ++l)
      if (configs[l].connects(i, j)) dem[1 + l] = params.rc;
    a.push_back(std::move(dem));
    b.push_back(d(i, j));
  }

  for (std::size_t port = 0; port < n; ++port) {
    auto out_row = row(), in_row = row();
    out_row[0] = params.rp;
    in_row[0] = params.rp;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c].first == port) out_row[1 + L + c] = -1;
      if (cells[c].second == port) in_row[1 + L + c] = -1;
    }
    a.push_back(std::move(out_row));
    b.push_back(0);
    a.push_back(std::move(in_row));
    b.push_back(0);
  }

  std::vector<Rational> cost(vars);
  cost[0] = 1;
  return lp::minimize_covering(a, b, cost);
}

inline constexpr std::size_t oracle_max_ports = 3;
inline const Rational oracle_max_entry = Rational(1'000'000);

/// Exact optimal hybrid CCT by enumerating every subset of the n!
/// permutations (the empty subset is pure packet switching). Using one
/// permutation twice never helps: merging the two saves a delta.
inline Rational brute_force_optimal(const DemandMatrix& d, const FabricParams& params) {
  params.check();
  if (d.size() > oracle_max_ports) throw std::invalid_argument("brute_force_optimal: n must be <= 3");
  if (d.max_entry() > oracle_max_entry)
    throw std::invalid_argument("brute_force_optimal: entries too large");
  if (d.is_zero()) return 0;

  const auto perms = all_permutations(d.size());
  std::optional<Rational> best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << perms.size()); ++mask) {
    std::vector<PermutationMatrix> chosen;
    for (std::size_t k = 0; k < perms.size(); ++k)
      if (mask & (std::size_t{1} << k)) chosen.push_back(perms[k]);
    // Every chosen configuration costs at least delta.
    if (best && params.delta * static_cast<long>(chosen.size()) >= *best) continue;
    auto t = optimal_time_for(d, params, chosen);
    if (t && (!best || *t < *best)) best = t;
  }
  return *best;
}

}  // namespace hybridsched
