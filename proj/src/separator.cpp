#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/make_biconnected_planar.hpp>
#include <boost/graph/make_maximal_planar.hpp>

#include "tnet/engine.hpp"
#include "tnet/error.hpp"

namespace tnet {

AdjacencyGraph AdjacencyGraph::of(const TensorNetwork& net) {
  AdjacencyGraph g;
  g.adj.resize(static_cast<std::size_t>(net.vertex_count()));
  for (const InternalEdge& e : net.edges()) {
    if (e.is_self_loop()) continue;
    g.adj[static_cast<std::size_t>(e.a.vertex)].push_back(e.b.vertex);
    g.adj[static_cast<std::size_t>(e.b.vertex)].push_back(e.a.vertex);
  }
  return g;
}

AdjacencyGraph AdjacencyGraph::induced(const std::vector<int>& vertices) const {
  std::vector<int> local(adj.size(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  AdjacencyGraph h;
  h.adj.resize(vertices.size());
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (int w : adj[static_cast<std::size_t>(vertices[i])]) {
      int lw = local[static_cast<std::size_t>(w)];
      if (lw >= 0) h.adj[i].push_back(lw);
    }
  }
  return h;
}

int separator_size_bound(int n) {
  long target = 8L * n;
  long s = 0;
  while (s * s < target) ++s;
  return static_cast<int>(s);
}

namespace {

using Mask = std::vector<char>;

std::vector<int> bfs(const AdjacencyGraph& g, int root, const Mask* allowed = nullptr) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), -1);
  std::deque<int> queue{root};
  dist[static_cast<std::size_t>(root)] = 0;
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (dist[static_cast<std::size_t>(w)] >= 0) continue;
      if (allowed && !(*allowed)[static_cast<std::size_t>(w)]) continue;
      dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

// Components of g minus `removed`, each sorted, largest first (ties: lowest
// vertex).
std::vector<std::vector<int>> components(const AdjacencyGraph& g, const Mask& removed) {
  const int n = g.size();
  std::vector<char> seen(removed);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n; ++s) {
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
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return out;
}

// Groups the components of g - S into two sides, each to the lighter side.
std::optional<SeparatorResult> make_result(const AdjacencyGraph& g, std::vector<int> s) {
  const int n = g.size();
  if (static_cast<int>(s.size()) > separator_size_bound(n)) return std::nullopt;
  Mask removed(static_cast<std::size_t>(n), 0);
  for (int v : s) removed[static_cast<std::size_t>(v)] = 1;
  SeparatorResult r;
  for (auto& comp : components(g, removed)) {
    auto& side = r.part1.size() <= r.part2.size() ? r.part1 : r.part2;
    if (3 * static_cast<long>(comp.size()) > 2L * n) return std::nullopt;
    side.insert(side.end(), comp.begin(), comp.end());
  }
  if (3 * static_cast<long>(r.part1.size()) > 2L * n || 3 * static_cast<long>(r.part2.size()) > 2L * n) {
    return std::nullopt;
  }
  std::sort(s.begin(), s.end());
  std::sort(r.part1.begin(), r.part1.end());
  std::sort(r.part2.begin(), r.part2.end());
  r.separator = std::move(s);
  return r;
}

int farthest(const std::vector<int>& dist) {
  int best = -1;
  for (std::size_t v = 0; v < dist.size(); ++v) {
    if (dist[v] >= 0 && (best < 0 || dist[v] > dist[static_cast<std::size_t>(best)])) best = static_cast<int>(v);
  }
  return best;
}

// Vertex of the component maximising its smallest distance to the roots.
int spread_from(const std::vector<std::vector<int>>& dists) {
  int best = -1;
  int best_val = -1;
  for (std::size_t v = 0; v < dists.front().size(); ++v) {
    if (dists.front()[v] < 0) continue;
    int m = std::numeric_limits<int>::max();
    for (const auto& d : dists) m = std::min(m, d[v]);
    if (m > best_val) {
      best_val = m;
      best = static_cast<int>(v);
    }
  }
  return best;
}

class CandidateSet {
 public:
  explicit CandidateSet(const AdjacencyGraph& g) : g_(g), bound_(separator_size_bound(g.size())) {}

  void offer(std::vector<int> s) {
    if (static_cast<int>(s.size()) > bound_) return;
    std::sort(s.begin(), s.end());
    if (!tried_.insert(s).second) return;
    if (auto r = make_result(g_, std::move(s))) found_.push_back(std::move(*r));
  }

  // Held back until flush(); used for cuts unlikely to balance.
  void defer(std::vector<int> s) {
    if (static_cast<int>(s.size()) <= bound_) deferred_.push_back(std::move(s));
  }

  void flush() {
    for (auto& s : deferred_) offer(std::move(s));
    deferred_.clear();
  }

  bool empty() const { return found_.empty(); }
  std::vector<SeparatorResult> take() { return std::move(found_); }

 private:
  const AdjacencyGraph& g_;
  int bound_;
  std::set<std::vector<int>> tried_;
  std::vector<SeparatorResult> found_;
  std::vector<std::vector<int>> deferred_;
};

using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                     boost::property<boost::edge_index_t, int>>;
using BEdge = boost::graph_traits<BGraph>::edge_descriptor;

void renumber_edges(BGraph& g) {
  int k = 0;
  for (auto [it, end] = boost::edges(g); it != end; ++it) put(boost::edge_index, g, *it, k++);
}

// Edges of a triangulation of the connected planar simple graph `edges`.
std::optional<std::vector<std::pair<int, int>>> triangulate(int n, const std::vector<std::pair<int, int>>& edges) {
  BGraph g(static_cast<std::size_t>(n));
  for (auto [u, v] : edges) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g);
  renumber_edges(g);
  std::vector<std::vector<BEdge>> emb(static_cast<std::size_t>(n));
  auto emb_map = boost::make_iterator_property_map(emb.begin(), get(boost::vertex_index, g));
  if (!boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                           boost::boyer_myrvold_params::embedding = emb_map)) {
    return std::nullopt;
  }
  boost::make_biconnected_planar(g, emb_map);
  renumber_edges(g);
  for (auto& e : emb) e.clear();
  boost::boyer_myrvold_planarity_test(boost::boyer_myrvold_params::graph = g,
                                      boost::boyer_myrvold_params::embedding = emb_map);
  boost::make_maximal_planar(g, emb_map);
  std::vector<std::pair<int, int>> out;
  for (auto [it, end] = boost::edges(g); it != end; ++it) {
    out.emplace_back(static_cast<int>(boost::source(*it, g)), static_cast<int>(boost::target(*it, g)));
  }
  return out;
}

// Two-phase fallback on the component `comp` from `root`: two cheap levels
// l0 < l1 < l2 around the median level, and if the band between them is
// still too heavy, a fundamental cycle of the triangulated band with levels
// up to l0 shrunk into one root.
void fundamental_cycles(const AdjacencyGraph& g, const std::vector<int>& dist, CandidateSet& out) {
  const int n = g.size();
  int height = 0;
  for (int d : dist) height = std::max(height, d);
  std::vector<std::vector<int>> level(static_cast<std::size_t>(height) + 1);
  int reached = 0;
  for (int v = 0; v < n; ++v) {
    if (dist[static_cast<std::size_t>(v)] >= 0) {
      level[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])].push_back(v);
      ++reached;
    }
  }
  int l1 = 0;
  for (int acc = 0; l1 <= height; ++l1) {
    acc += static_cast<int>(level[static_cast<std::size_t>(l1)].size());
    if (2 * acc >= reached) break;
  }
  auto level_size = [&](int l) {
    return (l < 0 || l > height) ? 0 : static_cast<int>(level[static_cast<std::size_t>(l)].size());
  };
  int l0 = -1;
  int best0 = 2 * (l1 + 1);
  for (int l = 0; l <= l1; ++l) {
    int cost = level_size(l) + 2 * (l1 - l);
    if (cost < best0) {
      best0 = cost;
      l0 = l;
    }
  }
  int l2 = height + 1;
  int best2 = 2 * (height - l1);
  for (int l = l1 + 1; l <= height; ++l) {
    int cost = level_size(l) + 2 * (l - l1 - 1);
    if (cost < best2) {
      best2 = cost;
      l2 = l;
    }
  }
  std::vector<int> base;
  if (l0 >= 0) base = level[static_cast<std::size_t>(l0)];
  if (l2 <= height) base.insert(base.end(), level[static_cast<std::size_t>(l2)].begin(), level[static_cast<std::size_t>(l2)].end());
  out.offer(base);

  // Band graph: local 0 is the shrunk root (levels <= l0), or the BFS root
  // itself when l0 = -1.
  std::vector<int> local(static_cast<std::size_t>(n), -1);
  std::vector<int> global{-1};
  for (int l = l0 + 1; l < l2; ++l) {
    for (int v : level[static_cast<std::size_t>(l)]) {
      if (l == 0) {
        local[static_cast<std::size_t>(v)] = 0;
        global[0] = v;
      } else {
        local[static_cast<std::size_t>(v)] = static_cast<int>(global.size());
        global.push_back(v);
      }
    }
  }
  const int h = static_cast<int>(global.size());
  if (h < 3) return;
  std::set<std::pair<int, int>> simple;
  for (int v = 0; v < n; ++v) {
    const int dv = dist[static_cast<std::size_t>(v)];
    if (dv < 0 || dv >= l2 || dv <= l0) continue;
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      const int dw = dist[static_cast<std::size_t>(w)];
      int lw = -1;
      if (dw >= 0 && dw <= l0) lw = 0;
      else if (dw > l0 && dw < l2) lw = local[static_cast<std::size_t>(w)];
      int lv = local[static_cast<std::size_t>(v)];
      if (lw < 0 || lw == lv) continue;
      simple.insert(std::minmax(lv, lw));
    }
  }
  std::vector<std::pair<int, int>> band(simple.begin(), simple.end());
  auto tri = triangulate(h, band);
  if (!tri) return;

  // BFS tree of the band from local 0 over the original band edges.
  AdjacencyGraph bg;
  bg.adj.resize(static_cast<std::size_t>(h));
  for (auto [u, v] : band) {
    bg.adj[static_cast<std::size_t>(u)].push_back(v);
    bg.adj[static_cast<std::size_t>(v)].push_back(u);
  }
  std::vector<int> parent(static_cast<std::size_t>(h), -1);
  std::vector<int> depth = bfs(bg, 0);
  for (int v = 1; v < h; ++v) {
    for (int w : bg.adj[static_cast<std::size_t>(v)]) {
      if (depth[static_cast<std::size_t>(w)] == depth[static_cast<std::size_t>(v)] - 1 &&
          (parent[static_cast<std::size_t>(v)] < 0 || w < parent[static_cast<std::size_t>(v)])) {
        parent[static_cast<std::size_t>(v)] = w;
      }
    }
  }
  for (auto [u, v] : *tri) {
    if (parent[static_cast<std::size_t>(u)] == v || parent[static_cast<std::size_t>(v)] == u) continue;
    std::vector<int> cycle;
    int a = u;
    int b = v;
    while (a != b) {
      if (depth[static_cast<std::size_t>(a)] >= depth[static_cast<std::size_t>(b)]) {
        cycle.push_back(a);
        a = parent[static_cast<std::size_t>(a)];
      } else {
        cycle.push_back(b);
        b = parent[static_cast<std::size_t>(b)];
      }
    }
    cycle.push_back(a);
    std::vector<int> s = base;
    for (int c : cycle) {
      int gv = global[static_cast<std::size_t>(c)];
      if (gv >= 0) s.push_back(gv);
    }
    out.offer(std::move(s));
  }
}

}  // namespace

bool is_valid_separator(const AdjacencyGraph& g, const SeparatorResult& r) {
  const int n = g.size();
  std::vector<int> side(static_cast<std::size_t>(n), -1);
  auto mark = [&](const std::vector<int>& vs, int tag) {
    for (int v : vs) {
      if (v < 0 || v >= n || side[static_cast<std::size_t>(v)] != -1) return false;
      side[static_cast<std::size_t>(v)] = tag;
    }
    return true;
  };
  if (!mark(r.separator, 0) || !mark(r.part1, 1) || !mark(r.part2, 2)) return false;
  for (int v = 0; v < n; ++v) {
    if (side[static_cast<std::size_t>(v)] < 0) return false;
    for (int w : g.adj[static_cast<std::size_t>(v)]) {
      if (side[static_cast<std::size_t>(v)] + side[static_cast<std::size_t>(w)] == 3) return false;
    }
  }
  return static_cast<int>(r.separator.size()) <= separator_size_bound(n) &&
         3 * static_cast<long>(r.part1.size()) <= 2L * n && 3 * static_cast<long>(r.part2.size()) <= 2L * n;
}

namespace {

// Offers each layer as a cut, deferring those that leave more than 2n/3
// vertices on one side of the layer order.
void offer_layers(CandidateSet& out, std::vector<std::vector<int>>& layers, int n) {
  std::size_t total = 0;
  for (const auto& l : layers) total += l.size();
  std::size_t below = 0;
  for (auto& l : layers) {
    const std::size_t size = l.size();
    const std::size_t above = total - below - size;
    if (3 * below <= 2 * static_cast<std::size_t>(n) && 3 * above <= 2 * static_cast<std::size_t>(n)) {
      out.offer(std::move(l));
    } else {
      out.defer(std::move(l));
    }
    below += size;
  }
}

}  // namespace

std::vector<SeparatorResult> separator_candidates(const AdjacencyGraph& g, const std::vector<int>& hints) {
  const int n = g.size();
  CandidateSet out(g);
  if (n == 0) return {};
  out.offer({});

  auto comps = components(g, Mask(static_cast<std::size_t>(n), 0));
  const auto& big = comps.front();
  Mask in_big(static_cast<std::size_t>(n), 0);
  for (int v : big) in_big[static_cast<std::size_t>(v)] = 1;

  const int r0 = big.front();
  std::vector<std::vector<int>> dists{bfs(g, r0)};
  std::vector<int> roots{r0};
  const int a = farthest(dists[0]);
  dists.push_back(bfs(g, a));
  const int b = farthest(dists[1]);
  dists.push_back(bfs(g, b));
  std::vector<std::vector<int>> far_dists{dists[1], dists[2]};
  const int c = spread_from(far_dists);
  far_dists.push_back(bfs(g, c));
  const int d = spread_from(far_dists);
  far_dists.push_back(bfs(g, d));
  dists = {dists[0], far_dists[0], far_dists[1], far_dists[2], far_dists[3]};
  roots = {r0, a, b, c, d};

  // Far-apart hint vertices (the boundary of a region being split) give
  // cuts across that boundary.
  std::vector<int> hint_big;
  for (int h : hints) {
    if (in_big[static_cast<std::size_t>(h)]) hint_big.push_back(h);
  }
  if (!hint_big.empty()) {
    auto farthest_hint = [&](const std::vector<std::vector<int>>& from) {
      int best = hint_big.front();
      int best_val = -1;
      for (int h : hint_big) {
        int m = std::numeric_limits<int>::max();
        for (const auto& dd : from) m = std::min(m, dd[static_cast<std::size_t>(h)]);
        if (m > best_val) {
          best_val = m;
          best = h;
        }
      }
      return best;
    };
    std::vector<std::vector<int>> hint_dists;
    int h1 = farthest_hint({far_dists[0]});
    hint_dists.push_back(bfs(g, h1));
    int h2 = farthest_hint(hint_dists);
    hint_dists.push_back(bfs(g, h2));
    int h3 = farthest_hint(hint_dists);
    hint_dists.push_back(bfs(g, h3));
    const int hr[3] = {h1, h2, h3};
    for (int i = 0; i < 3; ++i) {
      if (std::find(roots.begin(), roots.end(), hr[i]) != roots.end()) continue;
      roots.push_back(hr[i]);
      dists.push_back(std::move(hint_dists[static_cast<std::size_t>(i)]));
    }
  }

  for (const auto& dist : dists) {
    int height = *std::max_element(dist.begin(), dist.end());
    std::vector<std::vector<int>> level(static_cast<std::size_t>(height) + 1);
    for (int v = 0; v < n; ++v) {
      if (dist[static_cast<std::size_t>(v)] >= 0) level[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])].push_back(v);
    }
    offer_layers(out, level, n);
  }

  // Difference of distances to two far roots: the set {t <= d1 - d2 <= t+1}
  // separates lower from higher values since each edge changes d1 - d2 by at
  // most two.
  for (std::size_t i = 1; i < dists.size(); ++i) {
    for (std::size_t j = i + 1; j < dists.size(); ++j) {
      if (roots[i] == roots[j]) continue;
      int lo = std::numeric_limits<int>::max();
      int hi = std::numeric_limits<int>::min();
      for (int v : big) {
        int diff = dists[i][static_cast<std::size_t>(v)] - dists[j][static_cast<std::size_t>(v)];
        lo = std::min(lo, diff);
        hi = std::max(hi, diff);
      }
      std::vector<std::vector<int>> by_diff(static_cast<std::size_t>(hi - lo + 1));
      for (int v : big) {
        by_diff[static_cast<std::size_t>(dists[i][static_cast<std::size_t>(v)] - dists[j][static_cast<std::size_t>(v)] - lo)].push_back(v);
      }
      std::vector<std::vector<int>> bands;
      for (std::size_t t = 0; t + 1 < by_diff.size(); ++t) {
        std::vector<int> band = by_diff[t];
        band.insert(band.end(), by_diff[t + 1].begin(), by_diff[t + 1].end());
        bands.push_back(std::move(band));
      }
      // Band t covers layers t and t+1; the layers strictly below it are < t.
      std::size_t below = 0;
      for (std::size_t t = 0; t < bands.size(); ++t) {
        const std::size_t above = big.size() - below - bands[t].size();
        if (3 * below <= 2 * static_cast<std::size_t>(n) && 3 * above <= 2 * static_cast<std::size_t>(n)) {
          out.offer(std::move(bands[t]));
        } else {
          out.defer(std::move(bands[t]));
        }
        below += by_diff[t].size();
      }
    }
  }

  if (out.empty()) out.flush();
  if (out.empty()) {
    for (const auto& dist : dists) {
      fundamental_cycles(g, dist, out);
      if (!out.empty()) break;
    }
  }
  return out.take();
}

SeparatorResult planar_separator(const TensorNetwork& net, const PlanarEmbedding& embedding) {
  if (static_cast<int>(embedding.rotation.size()) != net.vertex_count()) {
    throw Error(ErrorKind::NotPlanarInput, "embedding does not cover the network");
  }
  AdjacencyGraph g = AdjacencyGraph::of(net);
  auto all = separator_candidates(g, {});
  if (all.empty()) throw Error(ErrorKind::NotPlanarInput, "no balanced separator found");
  std::size_t best = 0;
  auto key = [&](const SeparatorResult& r) {
    return std::make_pair(r.separator.size(), std::max(r.part1.size(), r.part2.size()));
  };
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (key(all[i]) < key(all[best])) best = i;
  }
  return all[best];
}

}  // namespace tnet
