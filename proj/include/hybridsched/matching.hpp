#pragma once

#include "hybridsched/matrix.hpp"

#include <concepts>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

namespace hybridsched {

/// A circuit configuration: ingress port i is connected to egress port perm[i].
class PermutationMatrix {
 public:
  PermutationMatrix() = default;

  explicit PermutationMatrix(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    if (!is_bijection(perm_)) throw std::invalid_argument("not a permutation");
  }

  static PermutationMatrix identity(std::size_t n) {
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    return PermutationMatrix(std::move(p));
  }

  static bool is_bijection(const std::vector<std::size_t>& p) {
    std::vector<bool> hit(p.size(), false);
    for (std::size_t j : p) {
      if (j >= p.size() || hit[j]) return false;
      hit[j] = true;
    }
    return true;
  }

  std::size_t size() const { return perm_.size(); }
  std::size_t operator[](std::size_t i) const { return perm_[i]; }
  bool connects(std::size_t i, std::size_t j) const { return perm_[i] == j; }
  const std::vector<std::size_t>& ports() const { return perm_; }

  friend bool operator==(const PermutationMatrix&, const PermutationMatrix&) = default;

 private:
  std::vector<std::size_t> perm_;
};

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix binary_support(const DemandMatrix& d) {
  BoolMatrix b(d.size(), std::vector<bool>(d.size(), false));
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = 0; j < d.size(); ++j) b[i][j] = d(i, j) > 0;
  return b;
}

namespace detail {

template <class Edge>
bool augment(std::size_t row, std::size_t n, Edge& edge, std::vector<std::size_t>& match_of_col,
             std::vector<bool>& visited) {
  for (std::size_t col = 0; col < n; ++col) {
    if (visited[col] || !edge(row, col)) continue;
    visited[col] = true;
    if (match_of_col[col] == std::numeric_limits<std::size_t>::max() ||
        augment(match_of_col[col], n, edge, match_of_col, visited)) {
      match_of_col[col] = row;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Perfect matching on the bipartite graph rows x cols with edges given by
/// `edge(i, j)`. Kuhn's augmenting paths, rows and columns scanned in
/// ascending order, so the result is a deterministic function of the graph.
template <class Edge>
  requires std::predicate<Edge&, std::size_t, std::size_t>
std::optional<PermutationMatrix> perfect_matching(std::size_t n, Edge&& edge) {
  constexpr auto unmatched = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> match_of_col(n, unmatched);
  std::vector<bool> visited(n);
  for (std::size_t row = 0; row < n; ++row) {
    visited.assign(n, false);
    if (!detail::augment(row, n, edge, match_of_col, visited)) return std::nullopt;
  }
  std::vector<std::size_t> perm(n);
  for (std::size_t col = 0; col < n; ++col) perm[match_of_col[col]] = col;
  return PermutationMatrix(std::move(perm));
}

inline std::optional<PermutationMatrix> perfect_matching(const BoolMatrix& support) {
  return perfect_matching(support.size(),
                          [&](std::size_t i, std::size_t j) { return bool(support[i][j]); });
}

/// Perfect matching using only entries >= gamma, so every matched entry
/// (and therefore the configuration's duration times r_c) is at least gamma.
inline std::optional<PermutationMatrix> perfect_matching_at_threshold(const DemandMatrix& d,
                                                                      const Rational& gamma) {
  if (gamma <= 0) throw std::invalid_argument("matching threshold must be > 0");
  return perfect_matching(d.size(), [&](std::size_t i, std::size_t j) { return d(i, j) >= gamma; });
}

/// Smallest entry of `d` under the connections of `p`.
inline Rational min_matched(const DemandMatrix& d, const PermutationMatrix& p) {
  Rational m = d(0, p[0]);
  for (std::size_t i = 1; i < p.size(); ++i) m = std::min(m, d(i, p[i]));
  return m;
}

}  // namespace hybridsched
