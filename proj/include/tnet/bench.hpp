#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tnet/engine.hpp"
#include "tnet/network.hpp"

namespace tnet {

/// k x k grid, every vertex a unit symmetric tensor [1,...,1]; the value is
/// 2^(2k(k-1)).
TensorNetwork grid_network(int k);

struct RandomPlanarOptions {
  int vertices = 8;
  int max_edges = 14;
  int max_degree = 5;
  int max_entry = 3;  // dense entries are drawn from 0..max_entry
  bool parallel_edges = true;
};

/// Closed network on a random subgraph of a triangulated grid, possibly with
/// doubled edges; planar by construction.
TensorNetwork random_planar_network(const RandomPlanarOptions& options, std::uint64_t seed);

enum class BenchFamily { Grid, RandomPlanar, Cnf };

BenchFamily parse_family(const std::string& name);
std::string to_string(BenchFamily family);

struct BenchRow {
  std::string family;
  int n = 0;
  int max_rank = 0;  // -1 when the pipeline failed before a plan existed
  long wall_ms = 0;
  std::string value_digest;
  bool overflow = false;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  double slope = 0.0;     // least squares of log2(max_rank) on log2(N)
  int fitted_points = 0;  // rows used by the fit

  std::string csv() const;
};

struct BenchOptions {
  BenchFamily family = BenchFamily::Grid;
  std::vector<int> sizes;  // N: vertices (grid: a perfect square), variables for cnf
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::Separator;
  int rank_cap = kDefaultRankCap;
  bool timing = true;  // false writes 0 for wall_ms, making the CSV byte-stable
};

BenchReport run_bench(const BenchOptions& options);

/// First 16 decimal digits, a colon, then the full digit count.
std::string value_digest(const Count& value);

/// Slope of the least-squares line through (log2 x, log2 y).
double loglog_slope(const std::vector<std::pair<double, double>>& points);

}  // namespace tnet
