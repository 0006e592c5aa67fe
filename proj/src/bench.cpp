#include "tnet/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "tnet/cnf.hpp"
#include "tnet/error.hpp"

namespace tnet {

TensorNetwork grid_network(int k) {
  if (k < 1) throw Error(ErrorKind::BadArity, "grid side must be positive");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (j + 1 < k) edges.emplace_back(i * k + j, i * k + j + 1);
      if (i + 1 < k) edges.emplace_back(i * k + j, (i + 1) * k + j);
    }
  }
  std::vector<int> degree(static_cast<std::size_t>(k * k), 0);
  for (auto [a, b] : edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  NetworkBuilder nb;
  for (int d : degree) nb.add(Tensor::symmetric(d, std::vector<Count>(static_cast<std::size_t>(d) + 1, Count(1))));
  std::vector<int> used(degree.size(), 0);
  for (auto [a, b] : edges) nb.add_edge(a, used[static_cast<std::size_t>(a)]++, b, used[static_cast<std::size_t>(b)]++);
  return nb.build();
}

TensorNetwork random_planar_network(const RandomPlanarOptions& options, std::uint64_t seed) {
  const int n = options.vertices;
  if (n < 0 || options.max_degree < 0 || options.max_edges < 0) {
    throw Error(ErrorKind::BadArity, "random network sizes must be nonnegative");
  }
  std::mt19937_64 rng(seed);
  auto below = [&](int bound) { return static_cast<int>(rng() % static_cast<std::uint64_t>(bound)); };

  // Grid with one diagonal per cell, truncated to n cells in row-major order.
  int w = 1;
  while (w * w < n) ++w;
  std::vector<std::pair<int, int>> pool;
  for (int v = 0; v < n; ++v) {
    const int c = v % w;
    if (c + 1 < w && v + 1 < n) pool.emplace_back(v, v + 1);
    if (v + w < n) pool.emplace_back(v, v + w);
    if (c + 1 < w && v + w + 1 < n) pool.emplace_back(v, v + w + 1);
  }
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[static_cast<std::size_t>(below(static_cast<int>(i)))]);

  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::vector<std::pair<int, int>> edges;
  auto try_add = [&](int a, int b) {
    if (static_cast<int>(edges.size()) >= options.max_edges) return;
    if (degree[static_cast<std::size_t>(a)] >= options.max_degree || degree[static_cast<std::size_t>(b)] >= options.max_degree) return;
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
    edges.emplace_back(a, b);
  };
  for (auto [a, b] : pool) {
    try_add(a, b);
    if (options.parallel_edges && below(5) == 0) try_add(a, b);
  }

  // Relabel so that vertex ids carry no geometry.
  std::vector<int> label(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) label[static_cast<std::size_t>(v)] = v;
  for (std::size_t i = label.size(); i > 1; --i) std::swap(label[i - 1], label[static_cast<std::size_t>(below(static_cast<int>(i)))]);

  NetworkBuilder nb;
  std::vector<int> new_degree(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) new_degree[static_cast<std::size_t>(label[static_cast<std::size_t>(v)])] = degree[static_cast<std::size_t>(v)];
  for (int v = 0; v < n; ++v) {
    const int d = new_degree[static_cast<std::size_t>(v)];
    std::vector<Count> table(std::size_t{1} << d);
    for (auto& x : table) x = below(options.max_entry + 1);
    nb.add(Tensor::dense(d, std::move(table)));
  }
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    const int la = label[static_cast<std::size_t>(a)];
    const int lb = label[static_cast<std::size_t>(b)];
    nb.add_edge(la, used[static_cast<std::size_t>(la)]++, lb, used[static_cast<std::size_t>(lb)]++);
  }
  return nb.build();
}

BenchFamily parse_family(const std::string& name) {
  if (name == "grid") return BenchFamily::Grid;
  if (name == "random-planar") return BenchFamily::RandomPlanar;
  if (name == "cnf") return BenchFamily::Cnf;
  throw Error(ErrorKind::SyntaxError, "unknown bench family '" + name + "'");
}

std::string to_string(BenchFamily family) {
  switch (family) {
    case BenchFamily::Grid: return "grid";
    case BenchFamily::RandomPlanar: return "random-planar";
    case BenchFamily::Cnf: return "cnf";
  }
  return "unknown";
}

std::string value_digest(const Count& value) {
  const std::string s = value.get_str();
  return s.substr(0, 16) + ":" + std::to_string(s.size());
}

double loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) return std::nan("");
  double sx = 0;
  double sy = 0;
  for (auto [x, y] : points) {
    sx += std::log2(x);
    sy += std::log2(y);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double num = 0;
  double den = 0;
  for (auto [x, y] : points) {
    num += (std::log2(x) - mx) * (std::log2(y) - my);
    den += (std::log2(x) - mx) * (std::log2(x) - mx);
  }
  return den == 0 ? std::nan("") : num / den;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "family,N,max_rank,wall_ms,value_digest\n";
  for (const BenchRow& r : rows) {
    out << r.family << ',' << r.n << ',' << r.max_rank << ',' << r.wall_ms << ',' << r.value_digest << '\n';
  }
  return out.str();
}

namespace {

int grid_side(int n) {
  int k = 0;
  while ((k + 1) * (k + 1) <= n) ++k;
  if (k * k != n || k == 0) throw Error(ErrorKind::BadArity, "grid size " + std::to_string(n) + " is not a perfect square");
  return k;
}

BenchRow contract_row(const TensorNetwork& net, const BenchOptions& options) {
  BenchRow row;
  ContractionPlan plan =
      options.strategy == Strategy::Greedy ? build_plan_greedy(net) : build_plan_separator(net);
  row.max_rank = plan.max_rank();
  try {
    row.value_digest = value_digest(execute_plan(net, plan, options.rank_cap).first);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::RankOverflow) throw;
    row.overflow = true;
    row.value_digest = "RankOverflow";
  }
  return row;
}

}  // namespace

BenchReport run_bench(const BenchOptions& options) {
  if (options.strategy == Strategy::Brute) throw Error(ErrorKind::SyntaxError, "bench runs plan-based strategies only");
  std::vector<int> sizes = options.sizes;
  std::sort(sizes.begin(), sizes.end());
  BenchReport report;
  std::vector<std::pair<double, double>> points;
  for (int n : sizes) {
    const auto start = std::chrono::steady_clock::now();
    BenchRow row;
    switch (options.family) {
      case BenchFamily::Grid:
        row = contract_row(grid_network(grid_side(n)), options);
        break;
      case BenchFamily::RandomPlanar: {
        RandomPlanarOptions ro;
        ro.vertices = n;
        ro.max_edges = 2 * n;
        ro.max_degree = 5;
        ro.max_entry = 1;
        row = contract_row(random_planar_network(ro, options.seed + static_cast<std::uint64_t>(n)), options);
        break;
      }
      case BenchFamily::Cnf: {
        CnfFormula f = random_cnf(n, 2 * n, std::min(3, n), options.seed + static_cast<std::uint64_t>(n));
        CountOptions co;
        co.strategy = options.strategy;
        co.seed = options.seed;
        co.contract.rank_cap = options.rank_cap;
        try {
          CountResult r = count_models(f, co);
          row.max_rank = r.report.stats.max_rank;
          row.value_digest = value_digest(r.count);
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::RankOverflow) throw;
          row.max_rank = -1;
          row.overflow = true;
          row.value_digest = "RankOverflow";
        }
        break;
      }
    }
    row.family = to_string(options.family);
    row.n = n;
    if (options.timing) {
      row.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    }
    if (row.max_rank > 0) points.emplace_back(n, row.max_rank);
    report.rows.push_back(std::move(row));
  }
  report.slope = loglog_slope(points);
  report.fitted_points = static_cast<int>(points.size());
  return report;
}

}  // namespace tnet
