#pragma once

#include "hybridsched/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hybridsched {

enum class DensityClass { sparse, normal, dense };

inline std::string_view name(DensityClass c) {
  switch (c) {
    case DensityClass::sparse: return "sparse";
    case DensityClass::normal: return "normal";
    case DensityClass::dense: return "dense";
  }
  return "?";
}

inline std::optional<DensityClass> parse_density(std::string_view s) {
  for (DensityClass c : {DensityClass::sparse, DensityClass::normal, DensityClass::dense})
    if (name(c) == s) return c;
  return std::nullopt;
}

/// sparse: density <= 0.2, normal: 0.2 <= density <= 0.6, dense: density >= 0.6.
inline bool in_class(double density, DensityClass c) {
  switch (c) {
    case DensityClass::sparse: return density <= 0.2;
    case DensityClass::normal: return density >= 0.2 && density <= 0.6;
    case DensityClass::dense: return density >= 0.6;
  }
  return false;
}

struct WorkloadSpec {
  std::size_t n = 10;
  DensityClass density_class = DensityClass::normal;
  double volume_skew = 100.0;   // max / min per-sender volume
  std::uint64_t seed = 1;
  std::size_t count = 1;
  std::uint64_t min_volume = 2000;  // smallest per-sender volume, data units
  double jitter = 0.1;           // relative spread of the per-sender split
};

/// Inclusive range of non-zero counts that land in the class at n ports.
inline std::pair<std::size_t, std::size_t> nonzero_range(std::size_t n, DensityClass c) {
  const std::size_t cells = n * n;
  auto lo = [&](double f) { return static_cast<std::size_t>(std::ceil(f * cells - 1e-9)); };
  auto hi = [&](double f) { return static_cast<std::size_t>(std::floor(f * cells + 1e-9)); };
  switch (c) {
    case DensityClass::sparse: return {1, hi(0.2)};
    case DensityClass::normal: return {lo(0.2), hi(0.6)};
    case DensityClass::dense: return {lo(0.6), cells};
  }
  return {1, 0};
}

/// Synthetic coflows shaped like a MapReduce shuffle. Each coflow picks s
/// senders and r receivers (s * r non-zeros, uniformly among the pairs whose
/// density lands in the class), draws every receiver's per-sender volume
/// log-uniformly in [min_volume, min_volume * skew] and splits the
/// receiver's total pseudo-uniformly over its senders: each sender's weight
/// is 1 +/- jitter. The first two receivers are pinned to the two ends of the
/// volume range.
inline std::vector<DemandMatrix> generate(const WorkloadSpec& spec) {
  if (spec.n == 0) throw std::invalid_argument("workload: n must be >= 1");
  if (!(spec.volume_skew >= 1.0)) throw std::invalid_argument("workload: volume_skew must be >= 1");
  if (spec.min_volume == 0) throw std::invalid_argument("workload: min_volume must be >= 1");
  if (!(spec.jitter >= 0.0 && spec.jitter < 1.0))
    throw std::invalid_argument("workload: jitter must be in [0, 1)");
  auto [lo, hi] = nonzero_range(spec.n, spec.density_class);
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  for (std::size_t s = 1; s <= spec.n; ++s)
    for (std::size_t r = 1; r <= spec.n; ++r)
      if (s * r >= lo && s * r <= hi) shapes.emplace_back(s, r);
  if (shapes.empty())
    throw std::invalid_argument("workload: density class '" + std::string(name(spec.density_class)) +
                                "' unreachable at n=" + std::to_string(spec.n));

  std::mt19937_64 rng(spec.seed);
  const double base = static_cast<double>(spec.min_volume);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick_shape(0, shapes.size() - 1);

  std::vector<DemandMatrix> out;
  out.reserve(spec.count);
  std::vector<std::size_t> src(spec.n), dst(spec.n);
  for (std::size_t c = 0; c < spec.count; ++c) {
    auto [s, r] = shapes[pick_shape(rng)];
    std::iota(src.begin(), src.end(), std::size_t{0});
    std::iota(dst.begin(), dst.end(), std::size_t{0});
    std::shuffle(src.begin(), src.end(), rng);
    std::shuffle(dst.begin(), dst.end(), rng);

    DemandMatrix m(spec.n);
    std::vector<double> weight(s);
    for (std::size_t k = 0; k < r; ++k) {
      double per_sender = base * std::pow(spec.volume_skew, unit(rng));
      if (k == 0) per_sender = base;
      if (k == 1) per_sender = base * spec.volume_skew;
      double total_weight = 0;
      for (auto& w : weight) total_weight += (w = 1.0 + spec.jitter * (2.0 * unit(rng) - 1.0));
      for (std::size_t i = 0; i < s; ++i) {
        double v = per_sender * static_cast<double>(s) * weight[i] / total_weight;
        m.set(src[i], dst[k], Rational(static_cast<std::uint64_t>(std::max(1.0, std::round(v)))));
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

/// Malformed trace input; the message carries the line number.
class TraceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline std::string trim(std::string s) {
  auto ws = [](unsigned char ch) { return std::isspace(ch); };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t b = 0;
  while (b < s.size() && ws(s[b])) ++b;
  return s.substr(b);
}

}  // namespace detail

/// Reads a coflow trace in the schema
///
///     coflow_id,src,dst,bytes
///
/// one flow per row, bytes a non-negative integer. A row with an empty src is
/// a receiver-level total and is split over the coflow's senders as
/// floor(B / s), the remainder going one unit each to the lowest-port
/// senders. A row with an empty dst and 0 bytes only declares a sender.
///
/// Every machine id in the file is mapped to a port: ids are sorted, shuffled
/// with `seed`, and the k-th id lands on port k mod n. Coflows are returned in
/// order of first appearance.
inline std::vector<DemandMatrix> ingest_trace(std::istream& in, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("ingest_trace: n must be >= 1");

  struct Row {
    std::size_t line;
    std::string coflow, src, dst;
    Integer bytes;
  };
  std::vector<Row> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty()) continue;
    auto f = detail::split_csv(line);
    auto where = "line " + std::to_string(lineno) + ": ";
    if (!header_seen) {
      if (f.size() != 4 || detail::trim(f[0]) != "coflow_id" || detail::trim(f[1]) != "src" ||
          detail::trim(f[2]) != "dst" || detail::trim(f[3]) != "bytes")
        throw TraceError(where + "expected header 'coflow_id,src,dst,bytes'");
      header_seen = true;
      continue;
    }
    if (f.size() != 4) throw TraceError(where + "expected 4 fields, got " + std::to_string(f.size()));
    for (auto& s : f) s = detail::trim(s);
    if (f[0].empty()) throw TraceError(where + "empty coflow_id");
    if (f[1].empty() && f[2].empty()) throw TraceError(where + "src and dst both empty");
    if (f[3].empty() || !std::all_of(f[3].begin(), f[3].end(), [](unsigned char ch) { return std::isdigit(ch); }))
      throw TraceError(where + "bytes must be a non-negative integer, got '" + f[3] + "'");
    Integer bytes(f[3]);
    if (f[2].empty() && bytes != 0)
      throw TraceError(where + "a row with empty dst declares a sender and must carry 0 bytes");
    rows.push_back({lineno, f[0], f[1], f[2], std::move(bytes)});
  }

  std::set<std::string> machines;
  for (const auto& r : rows) {
    if (!r.src.empty()) machines.insert(r.src);
    if (!r.dst.empty()) machines.insert(r.dst);
  }
  std::vector<std::string> ids(machines.begin(), machines.end());
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  std::map<std::string, std::size_t> port;
  for (std::size_t k = 0; k < ids.size(); ++k) port[ids[k]] = k % n;

  std::vector<std::string> order;
  std::map<std::string, std::vector<const Row*>> by_coflow;
  for (const auto& r : rows) {
    auto& bucket = by_coflow[r.coflow];
    if (bucket.empty()) order.push_back(r.coflow);
    bucket.push_back(&r);
  }

  std::vector<DemandMatrix> out;
  for (const auto& id : order) {
    const auto& flows = by_coflow[id];
    std::vector<std::pair<std::size_t, std::string>> senders;
    for (const Row* r : flows)
      if (!r->src.empty()) senders.emplace_back(port[r->src], r->src);
    std::sort(senders.begin(), senders.end());
    senders.erase(std::unique(senders.begin(), senders.end()), senders.end());

    DemandMatrix m(n);
    for (const Row* r : flows) {
      if (r->dst.empty()) continue;
      std::size_t dst = port[r->dst];
      if (!r->src.empty()) {
        m.add(port[r->src], dst, Rational(r->bytes));
        continue;
      }
      if (senders.empty())
        throw TraceError("line " + std::to_string(r->line) + ": receiver total for coflow '" + id +
                         "' references no known sender");
      Integer s = senders.size();
      Integer share = r->bytes / s;
      Integer rem = r->bytes % s;
      for (std::size_t k = 0; k < senders.size(); ++k)
        m.add(senders[k].first, dst, Rational(share + (Integer(k) < rem ? 1 : 0)));
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<DemandMatrix> ingest_trace(const std::string& path, std::size_t n, std::uint64_t seed) {
  std::ifstream in(path);
  if (!in) throw TraceError("cannot open trace file '" + path + "'");
  return ingest_trace(in, n, seed);
}

/// Writes matrices back out in the trace schema, one row per non-zero cell,
/// using the port numbers as machine ids.
inline void write_trace(std::ostream& out, const std::vector<DemandMatrix>& coflows) {
  out << "coflow_id,src,dst,bytes\n";
  for (std::size_t c = 0; c < coflows.size(); ++c) {
    const auto& m = coflows[c];
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        if (m(i, j) != 0) {
          if (!is_integer(m(i, j))) throw std::invalid_argument("write_trace: bytes must be integral");
          out << c << ',' << i << ',' << j << ',' << m(i, j) << '\n';
        }
  }
}

}  // namespace hybridsched
