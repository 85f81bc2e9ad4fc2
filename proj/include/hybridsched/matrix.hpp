#pragma once

#include "hybridsched/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridsched {

/// Square matrix of non-negative data volumes; entry (i, j) is the volume
/// ingress port i must deliver to egress port j.
class DemandMatrix {
 public:
  DemandMatrix() = default;

  explicit DemandMatrix(std::size_t n) : n_(n), entries_(n * n) {
    if (n == 0) throw std::invalid_argument("demand matrix needs n >= 1");
  }

  DemandMatrix(std::initializer_list<std::initializer_list<Rational>> rows)
      : DemandMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("demand matrix must be square");
      std::size_t j = 0;
      for (const auto& v : row) set(i, j++, v);
      ++i;
    }
  }

  static DemandMatrix from_rows(const std::vector<std::vector<Rational>>& rows) {
    DemandMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.n_) throw std::invalid_argument("demand matrix must be square");
      for (std::size_t j = 0; j < m.n_; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t size() const { return n_; }

  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, Rational v) {
    if (v < 0)
      throw std::invalid_argument("negative demand at (" + std::to_string(i) + "," +
                                  std::to_string(j) + ")");
    entries_[i * n_ + j] = std::move(v);
  }

  void add(std::size_t i, std::size_t j, const Rational& v) { set(i, j, (*this)(i, j) + v); }

  Rational row_sum(std::size_t i) const {
    Rational s = 0;
    for (std::size_t j = 0; j < n_; ++j) s += (*this)(i, j);
    return s;
  }

  Rational col_sum(std::size_t j) const {
    Rational s = 0;
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, j);
    return s;
  }

  Rational total() const {
    Rational s = 0;
    for (const auto& v : entries_) s += v;
    return s;
  }

  Rational max_entry() const {
    Rational m = 0;
    for (const auto& v : entries_) m = std::max(m, v);
    return m;
  }

  bool is_zero() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const Rational& v) { return v == 0; });
  }

  /// Elementwise a >= b.
  friend bool dominates(const DemandMatrix& a, const DemandMatrix& b) {
    if (a.n_ != b.n_) return false;
    for (std::size_t k = 0; k < a.entries_.size(); ++k)
      if (a.entries_[k] < b.entries_[k]) return false;
    return true;
  }

  friend bool operator==(const DemandMatrix&, const DemandMatrix&) = default;

  friend std::ostream& operator<<(std::ostream& os, const DemandMatrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.n_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.n_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  std::size_t n_ = 0;
  std::vector<Rational> entries_;
};

struct MatrixStats {
  Rational rho;          // diameter: max row or column sum
  std::size_t tau = 0;   // max non-zeros in any row or column
  double density = 0.0;  // nnz / n^2
  std::size_t nnz = 0;
};

inline MatrixStats stats(const DemandMatrix& d) {
  const std::size_t n = d.size();
  MatrixStats s;
  for (std::size_t a = 0; a < n; ++a) {
    Rational row = 0, col = 0;
    std::size_t row_nz = 0, col_nz = 0;
    for (std::size_t b = 0; b < n; ++b) {
      row += d(a, b);
      col += d(b, a);
      if (d(a, b) != 0) ++row_nz;
      if (d(b, a) != 0) ++col_nz;
    }
    s.rho = std::max({s.rho, row, col});
    s.tau = std::max({s.tau, row_nz, col_nz});
    s.nnz += row_nz;
  }
  s.density = n == 0 ? 0.0 : static_cast<double>(s.nnz) / static_cast<double>(n * n);
  return s;
}

inline bool is_k_bistochastic(const DemandMatrix& d, const Rational& k) {
  for (std::size_t a = 0; a < d.size(); ++a)
    if (d.row_sum(a) != k || d.col_sum(a) != k) return false;
  return true;
}

/// Hybrid fabric: n ports, reconfiguration delay, circuit and packet line rates.
struct FabricParams {
  std::size_t n = 0;
  Rational delta = 0;
  Rational rc = 1;
  Rational rp = 0;

  /// Throws std::invalid_argument naming the violated constraint.
  void check() const {
    if (delta < 0) throw std::invalid_argument("delta must be >= 0");
    if (rc <= 0) throw std::invalid_argument("circuit rate rc must be > 0");
    if (rp < 0) throw std::invalid_argument("packet rate rp must be >= 0");
    if (rp > rc) throw std::invalid_argument("packet rate rp must not exceed circuit rate rc");
  }

  /// Circuit volume moved during one reconfiguration delay.
  Rational quantum() const { return rc * delta; }
};

}  // namespace hybridsched
