#pragma once

#include <chrono>
#include <string>
#include <utility>
#include <vector>

#include "tnet/network.hpp"
#include "tnet/planarizer.hpp"

namespace tnet {

/// Undirected multigraph view of a network: parallel edges repeat in the
/// adjacency lists, self-loops and external edges are left out.
struct AdjacencyGraph {
  std::vector<std::vector<int>> adj;

  static AdjacencyGraph of(const TensorNetwork& net);
  int size() const { return static_cast<int>(adj.size()); }
  // Subgraph on `vertices`; local id i stands for vertices[i].
  AdjacencyGraph induced(const std::vector<int>& vertices) const;
};

struct SeparatorResult {
  std::vector<int> separator;
  std::vector<int> part1;
  std::vector<int> part2;
};

/// Smallest s with s * s >= 8n.
int separator_size_bound(int n);

/// S, P1, P2 partition the vertices, no edge joins P1 and P2, both parts have
/// at most 2n/3 vertices and |S| <= ceil(sqrt(8n)).
bool is_valid_separator(const AdjacencyGraph& g, const SeparatorResult& r);

/// Every valid separator found by the search, in generation order: the empty
/// set, BFS levels from a few far-apart roots, differences of two BFS
/// distances, then fundamental cycles of a triangulated level band when none
/// of the former is balanced. `hints` adds far-apart roots chosen among
/// these vertices.
std::vector<SeparatorResult> separator_candidates(const AdjacencyGraph& g, const std::vector<int>& hints = {});

/// Smallest candidate separator (ties: better balance, then generation order).
SeparatorResult planar_separator(const TensorNetwork& net, const PlanarEmbedding& embedding);

// ---------------------------------------------------------------------------
// Plans

/// Leaves carry a vertex; merges carry two children. `boundary` lists the
/// edges leaving the subtree (internal edge ids, then edge_count() + i for
/// external edge i), and `rank` is its size.
struct PlanNode {
  int vertex = -1;
  int left = -1;
  int right = -1;
  std::vector<int> boundary;
  int rank() const { return static_cast<int>(boundary.size()); }
  bool is_leaf() const { return vertex >= 0; }
};

struct ContractionPlan {
  std::vector<PlanNode> nodes;
  int root = -1;
  int separator_steps = 0;   // recursion levels split by a separator
  int largest_separator = 0;

  // Largest predicted rank over merge nodes (0 without merges).
  int max_rank() const;
  std::vector<int> leaves() const;
};

inline constexpr int kDefaultLeafCutoff = 4;

/// Recursive balanced separators; subsets of at most `leaf_cutoff` vertices
/// are linearised. Throws NotPlanarInput for non-planar networks.
ContractionPlan build_plan_separator(const TensorNetwork& net, int leaf_cutoff = kDefaultLeafCutoff);

/// Repeatedly merges the adjacent pair with the smallest result rank.
ContractionPlan build_plan_greedy(const TensorNetwork& net);

// ---------------------------------------------------------------------------
// Execution

struct ContractionStats {
  int max_rank = 0;
  std::size_t table_entries_peak = 0;
  int merges = 0;
  std::chrono::nanoseconds wall_time{0};
};

inline constexpr int kDefaultRankCap = 30;

std::pair<Count, ContractionStats> execute_plan(const TensorNetwork& net, const ContractionPlan& plan,
                                                int rank_cap = kDefaultRankCap);

enum class Strategy { Separator, Greedy, Brute };

Strategy parse_strategy(const std::string& name);
std::string to_string(Strategy s);

struct ContractOptions {
  int rank_cap = kDefaultRankCap;
  int brute_cap = kDefaultBruteCap;
  int leaf_cutoff = kDefaultLeafCutoff;
};

std::pair<Count, ContractionStats> contract_full(const TensorNetwork& net, Strategy strategy,
                                                 const ContractOptions& options = {});

}  // namespace tnet
