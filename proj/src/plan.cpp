#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tnet/engine.hpp"
#include "tnet/error.hpp"

namespace tnet {

int ContractionPlan::max_rank() const {
  int best = 0;
  for (const PlanNode& n : nodes) {
    if (!n.is_leaf()) best = std::max(best, n.rank());
  }
  return best;
}

std::vector<int> ContractionPlan::leaves() const {
  std::vector<int> out;
  for (const PlanNode& n : nodes) {
    if (n.is_leaf()) out.push_back(n.vertex);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Edge labels around each vertex: internal ids, then m + i for external i.
// Self-loops are dropped (they never leave a subtree).
std::vector<std::vector<int>> incident_labels(const TensorNetwork& net) {
  std::vector<std::vector<int>> out(static_cast<std::size_t>(net.vertex_count()));
  for (int e = 0; e < net.edge_count(); ++e) {
    const InternalEdge& ie = net.edge(e);
    if (ie.is_self_loop()) continue;
    out[static_cast<std::size_t>(ie.a.vertex)].push_back(e);
    out[static_cast<std::size_t>(ie.b.vertex)].push_back(e);
  }
  for (int x = 0; x < net.external_count(); ++x) {
    out[static_cast<std::size_t>(net.external()[static_cast<std::size_t>(x)].end.vertex)].push_back(net.edge_count() + x);
  }
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

// Symmetric difference of two sorted label sets.
std::vector<int> merge_boundary(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

class PlanBuilder {
 public:
  explicit PlanBuilder(const TensorNetwork& net) : labels_(incident_labels(net)) {}

  int leaf(int v) {
    PlanNode n;
    n.vertex = v;
    n.boundary = labels_[static_cast<std::size_t>(v)];
    return push(std::move(n));
  }

  int merge(int a, int b) {
    PlanNode n;
    n.left = a;
    n.right = b;
    n.boundary = merge_boundary(plan_.nodes[static_cast<std::size_t>(a)].boundary,
                                plan_.nodes[static_cast<std::size_t>(b)].boundary);
    return push(std::move(n));
  }

  const PlanNode& node(int i) const { return plan_.nodes[static_cast<std::size_t>(i)]; }
  ContractionPlan& plan() { return plan_; }

 private:
  int push(PlanNode n) {
    plan_.nodes.push_back(std::move(n));
    return static_cast<int>(plan_.nodes.size()) - 1;
  }

  std::vector<std::vector<int>> labels_;
  ContractionPlan plan_;
};

// Boundary size of a vertex set given per-vertex label lists.
int rank_of(const std::vector<int>& set, const std::vector<std::vector<int>>& labels) {
  std::map<int, int> count;
  for (int v : set) {
    for (int e : labels[static_cast<std::size_t>(v)]) ++count[e];
  }
  int r = 0;
  for (const auto& [e, c] : count) r += c == 1 ? 1 : 0;
  return r;
}

using SplitScore = std::tuple<int, int, std::size_t, std::size_t>;

// Two-way split of a connected subset with running ranks: side 0 is X.
struct Split {
  const AdjacencyGraph* g;
  const std::vector<int>* ext;
  std::vector<char> side;
  long ext_sum[2] = {0, 0};
  long cut = 0;
  std::size_t count[2] = {0, 0};

  Split(const AdjacencyGraph& graph, const std::vector<int>& e) : g(&graph), ext(&e), side(e.size(), 0) {
    for (int x : e) ext_sum[0] += x;
    count[0] = e.size();
  }

  // Neighbours on the other side minus neighbours on the own side.
  long pull(int v) const {
    long d = 0;
    for (int w : g->adj[static_cast<std::size_t>(v)]) d += side[static_cast<std::size_t>(w)] != side[static_cast<std::size_t>(v)] ? 1 : -1;
    return d;
  }

  void flip(int v) {
    const auto s = static_cast<std::size_t>(side[static_cast<std::size_t>(v)]);
    cut -= pull(v);
    ext_sum[s] -= (*ext)[static_cast<std::size_t>(v)];
    ext_sum[1 - s] += (*ext)[static_cast<std::size_t>(v)];
    count[s] -= 1;
    count[1 - s] += 1;
    side[static_cast<std::size_t>(v)] = static_cast<char>(1 - s);
  }

  bool proper() const { return count[0] > 0 && count[1] > 0; }

  SplitScore score(std::size_t sep) const {
    const int rx = static_cast<int>(ext_sum[0] + cut);
    const int ry = static_cast<int>(ext_sum[1] + cut);
    return SplitScore{std::max(rx, ry), rx + ry, sep, std::max(count[0], count[1])};
  }
};

// Fiduccia-Mattheyses passes over all vertices: moves the vertex with the
// largest cut reduction, locks it, and keeps the best prefix of each pass.
// Part sizes stay within `cap`.
void refine(Split& split, std::size_t cap, int passes) {
  const std::size_t n = split.side.size();
  for (int pass = 0; pass < passes; ++pass) {
    std::vector<char> locked(n, 0);
    std::set<std::pair<long, int>> queue;
    std::vector<long> gain(n);
    for (std::size_t v = 0; v < n; ++v) {
      gain[v] = split.pull(static_cast<int>(v));
      queue.emplace(-gain[v], static_cast<int>(v));
    }
    SplitScore best = split.score(0);
    std::vector<int> moves;
    std::size_t best_len = 0;
    while (!queue.empty()) {
      auto it = queue.begin();
      for (; it != queue.end(); ++it) {
        const auto s = static_cast<std::size_t>(split.side[static_cast<std::size_t>(it->second)]);
        if (split.count[s] > 1 && split.count[1 - s] + 1 <= cap) break;
      }
      if (it == queue.end()) break;
      const int v = it->second;
      queue.erase(it);
      locked[static_cast<std::size_t>(v)] = 1;
      split.flip(v);
      moves.push_back(v);
      for (int w : split.g->adj[static_cast<std::size_t>(v)]) {
        const auto wi = static_cast<std::size_t>(w);
        if (locked[wi]) continue;
        queue.erase({-gain[wi], w});
        gain[wi] = split.pull(w);
        queue.emplace(-gain[wi], w);
      }
      if (split.score(0) < best) {
        best = split.score(0);
        best_len = moves.size();
      }
    }
    for (std::size_t i = moves.size(); i > best_len; --i) split.flip(moves[i - 1]);
    if (best_len == 0) break;
  }
}

// Vertex separator read off a two-way split: the endpoints of cut edges on
// the side that has fewer of them.
SeparatorResult separator_of(const Split& split) {
  const auto& adj = split.g->adj;
  std::vector<char> touches[2] = {std::vector<char>(adj.size(), 0), std::vector<char>(adj.size(), 0)};
  std::size_t count[2] = {0, 0};
  for (std::size_t v = 0; v < adj.size(); ++v) {
    for (int w : adj[v]) {
      if (split.side[v] != split.side[static_cast<std::size_t>(w)]) {
        const auto s = static_cast<std::size_t>(split.side[v]);
        if (!touches[s][v]) ++count[s];
        touches[s][v] = 1;
        break;
      }
    }
  }
  const std::size_t pick = count[0] <= count[1] ? 0 : 1;
  SeparatorResult r;
  for (std::size_t v = 0; v < adj.size(); ++v) {
    const auto iv = static_cast<int>(v);
    if (touches[pick][v]) {
      r.separator.push_back(iv);
    } else if (static_cast<std::size_t>(split.side[v]) == pick) {
      r.part1.push_back(iv);
    } else {
      r.part2.push_back(iv);
    }
  }
  return r;
}

class SeparatorPlanner {
 public:
  SeparatorPlanner(const TensorNetwork& net, int cutoff)
      : graph_(AdjacencyGraph::of(net)), labels_(incident_labels(net)), builder_(net), cutoff_(std::max(cutoff, 1)) {}

  ContractionPlan run(int n) {
    if (n > 0) {
      std::vector<int> all(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
      builder_.plan().root = build(all);
    }
    return std::move(builder_.plan());
  }

 private:
  int build(const std::vector<int>& set) {
    if (set.size() == 1) return builder_.leaf(set.front());
    if (static_cast<int>(set.size()) <= cutoff_) return linearize(set);

    AdjacencyGraph local = graph_.induced(set);
    auto lift = [&](const std::vector<int>& ids) {
      std::vector<int> out;
      out.reserve(ids.size());
      for (int i : ids) out.push_back(set[static_cast<std::size_t>(i)]);
      return out;
    };

    // Disconnected subsets split between components at no cost.
    std::vector<std::vector<int>> comps = local_components(local);
    if (comps.size() > 1) {
      std::vector<int> side[2];
      for (const auto& c : comps) {
        auto& s = side[0].size() <= side[1].size() ? side[0] : side[1];
        s.insert(s.end(), c.begin(), c.end());
      }
      return join(lift(sorted(side[0])), lift(sorted(side[1])));
    }

    // Edges leaving the subset, per local vertex.
    std::vector<int> ext(set.size());
    std::vector<int> hints;
    for (std::size_t i = 0; i < set.size(); ++i) {
      ext[i] = static_cast<int>(labels_[static_cast<std::size_t>(set[i])].size() - local.adj[i].size());
      if (ext[i] > 0) hints.push_back(static_cast<int>(i));
    }
    auto candidates = separator_candidates(local, hints);
    if (candidates.empty()) throw std::logic_error("no balanced separator for a planar subgraph");

    std::optional<SplitScore> best;
    std::vector<char> best_side;
    const SeparatorResult* chosen = nullptr;
    for (const auto& c : candidates) {
      Split split(local, ext);
      for (int v : c.part2) split.flip(v);
      std::vector<Split> options;
      // The separator joins one side whole, or is spread over both by
      // single moves that lower the larger rank.
      options.push_back(split);
      for (int v : c.separator) split.flip(v);
      options.push_back(split);
      for (int v : c.separator) {
        if (split.pull(v) < 0) split.flip(v);
      }
      for (std::size_t pass = 0; pass < c.separator.size(); ++pass) {
        bool moved = false;
        for (int v : c.separator) {
          SplitScore before = split.score(0);
          bool proper_before = split.proper();
          split.flip(v);
          if (split.proper() && (!proper_before || split.score(0) < before)) {
            moved = true;
          } else {
            split.flip(v);
          }
        }
        if (!moved) break;
      }
      options.push_back(split);
      for (const auto& opt : options) {
        if (!opt.proper()) continue;
        SplitScore score = opt.score(c.separator.size());
        if (!best || score < *best) {
          best = score;
          best_side = opt.side;
          chosen = &c;
        }
      }
    }
    SeparatorResult refined;
    if (chosen) {
      // Local improvement of the best split; kept only when it still reads as
      // a valid separator.
      Split split(local, ext);
      for (std::size_t i = 0; i < set.size(); ++i) {
        if (best_side[i]) split.flip(static_cast<int>(i));
      }
      const std::size_t cap = std::max(2 * set.size() / 3, std::max(split.count[0], split.count[1]));
      refine(split, cap, kRefinePasses);
      refined = separator_of(split);
      SplitScore score = split.score(refined.separator.size());
      if (split.proper() && score < *best && is_valid_separator(local, refined)) {
        best = score;
        best_side = split.side;
        chosen = &refined;
      }
    }
    std::vector<int> best_x;
    std::vector<int> best_y;
    for (std::size_t i = 0; i < set.size(); ++i) (best_side[i] == 0 ? best_x : best_y).push_back(set[i]);
    if (!chosen) throw std::logic_error("separator search produced no split");
    if (!is_valid_separator(local, *chosen)) {
      throw std::logic_error("separator invariant violated on a subset of " + std::to_string(set.size()));
    }
    builder_.plan().separator_steps += 1;
    builder_.plan().largest_separator =
        std::max(builder_.plan().largest_separator, static_cast<int>(chosen->separator.size()));
    return join(sorted(best_x), sorted(best_y));
  }

  static constexpr int kRefinePasses = 4;

  int join(const std::vector<int>& x, const std::vector<int>& y) {
    int a = build(x);
    int b = build(y);
    return builder_.merge(a, b);
  }

  // Left-deep order of a small subset with the lowest running ranks.
  int linearize(std::vector<int> set) {
    std::sort(set.begin(), set.end());
    std::vector<int> best_order;
    std::pair<int, int> best_score{std::numeric_limits<int>::max(), 0};
    do {
      int worst = 0;
      int total = 0;
      std::vector<int> prefix{set.front()};
      for (std::size_t i = 1; i < set.size(); ++i) {
        prefix.push_back(set[i]);
        int r = rank_of(prefix, labels_);
        worst = std::max(worst, r);
        total += r;
      }
      std::pair<int, int> score{worst, total};
      if (score < best_score) {
        best_score = score;
        best_order = set;
      }
    } while (std::next_permutation(set.begin(), set.end()));
    int acc = builder_.leaf(best_order.front());
    for (std::size_t i = 1; i < best_order.size(); ++i) acc = builder_.merge(acc, builder_.leaf(best_order[i]));
    return acc;
  }

  static std::vector<int> sorted(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
  }

  static std::vector<std::vector<int>> local_components(const AdjacencyGraph& g) {
    std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < g.size(); ++s) {
      if (seen[static_cast<std::size_t>(s)]) continue;
      std::vector<int> comp{s};
      seen[static_cast<std::size_t>(s)] = 1;
      for (std::size_t i = 0; i < comp.size(); ++i) {
        for (int w : g.adj[static_cast<std::size_t>(comp[i])]) {
          if (!seen[static_cast<std::size_t>(w)]) {
            seen[static_cast<std::size_t>(w)] = 1;
            comp.push_back(w);
          }
        }
      }
      out.push_back(std::move(comp));
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return out;
  }

  AdjacencyGraph graph_;
  std::vector<std::vector<int>> labels_;
  PlanBuilder builder_;
  int cutoff_;
};

}  // namespace

ContractionPlan build_plan_separator(const TensorNetwork& net, int leaf_cutoff) {
  PlanarityResult p = check_planarity(net);
  if (!p.planar) throw Error(ErrorKind::NotPlanarInput, "separator plans need a planar network");
  return SeparatorPlanner(net, leaf_cutoff).run(net.vertex_count());
}

ContractionPlan build_plan_greedy(const TensorNetwork& net) {
  PlanBuilder builder(net);
  const int n = net.vertex_count();
  if (n == 0) return std::move(builder.plan());

  // Active nodes, their neighbours with shared-edge counts, and an ordered
  // set of candidate pairs keyed by (result rank, rank sum, ids).
  std::map<int, std::map<int, int>> nbr;
  for (int v = 0; v < n; ++v) {
    builder.leaf(v);
    nbr[v];
  }
  for (const InternalEdge& e : net.edges()) {
    if (e.is_self_loop()) continue;
    nbr[e.a.vertex][e.b.vertex] += 1;
    nbr[e.b.vertex][e.a.vertex] += 1;
  }
  using Key = std::tuple<int, int, int, int>;
  auto key = [&](int u, int v, int shared) {
    int ru = builder.node(u).rank();
    int rv = builder.node(v).rank();
    return Key{ru + rv - 2 * shared, ru + rv, std::min(u, v), std::max(u, v)};
  };
  std::set<Key> pairs;
  for (const auto& [u, m] : nbr) {
    for (const auto& [v, s] : m) {
      if (u < v) pairs.insert(key(u, v, s));
    }
  }

  while (!pairs.empty()) {
    auto [r, sum, u, v] = *pairs.begin();
    (void)r;
    (void)sum;
    for (const auto& [x, s] : nbr[u]) pairs.erase(key(u, x, s));
    for (const auto& [x, s] : nbr[v]) pairs.erase(key(v, x, s));
    int w = builder.merge(u, v);
    std::map<int, int> merged;
    for (int side : {u, v}) {
      for (const auto& [x, s] : nbr[side]) {
        if (x == u || x == v) continue;
        merged[x] += s;
        auto& back = nbr[x];
        back.erase(side);
      }
    }
    nbr.erase(u);
    nbr.erase(v);
    for (const auto& [x, s] : merged) nbr[x][w] = s;
    nbr[w] = merged;
    for (const auto& [x, s] : merged) pairs.insert(key(w, x, s));
  }

  // Disconnected pieces: smallest ranks first.
  std::vector<int> rest;
  for (const auto& [u, m] : nbr) rest.push_back(u);
  std::sort(rest.begin(), rest.end(), [&](int a, int b) {
    return std::make_pair(builder.node(a).rank(), a) < std::make_pair(builder.node(b).rank(), b);
  });
  int acc = rest.front();
  for (std::size_t i = 1; i < rest.size(); ++i) acc = builder.merge(acc, rest[i]);
  builder.plan().root = acc;
  return std::move(builder.plan());
}

}  // namespace tnet
