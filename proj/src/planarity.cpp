#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "tnet/error.hpp"
#include "tnet/planarizer.hpp"

namespace tnet {

namespace {

using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
                                    boost::property<boost::edge_index_t, int>>;
using GEdge = boost::graph_traits<Graph>::edge_descriptor;

// Boyer-Myrvold on a simple graph. On success `order[v]` lists the edge ids
// around v in rotation order; otherwise `kuratowski` receives the witness.
bool simple_planar(int n, const std::vector<std::pair<int, int>>& edges,
                   std::vector<std::vector<int>>& order,
                   std::vector<std::pair<int, int>>& kuratowski) {
  Graph g(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    boost::add_edge(static_cast<std::size_t>(edges[i].first), static_cast<std::size_t>(edges[i].second),
                    static_cast<int>(i), g);
  }
  std::vector<std::vector<GEdge>> emb(static_cast<std::size_t>(n));
  std::vector<GEdge> witness;
  bool planar = boost::boyer_myrvold_planarity_test(
      boost::boyer_myrvold_params::graph = g,
      boost::boyer_myrvold_params::embedding =
          boost::make_iterator_property_map(emb.begin(), get(boost::vertex_index, g)),
      boost::boyer_myrvold_params::kuratowski_subgraph = std::back_inserter(witness));
  if (!planar) {
    for (const GEdge& e : witness) {
      kuratowski.emplace_back(static_cast<int>(boost::source(e, g)), static_cast<int>(boost::target(e, g)));
    }
    return false;
  }
  order.assign(static_cast<std::size_t>(n), {});
  for (int v = 0; v < n; ++v) {
    for (const GEdge& e : emb[static_cast<std::size_t>(v)]) {
      order[static_cast<std::size_t>(v)].push_back(get(boost::edge_index, g, e));
    }
  }
  return true;
}

// Parallel internal edges grouped under one simple edge.
struct Collapsed {
  std::vector<std::pair<int, int>> simple;      // (low, high) vertex pairs
  std::vector<std::vector<int>> copies;         // internal edge ids, ascending
  std::vector<std::vector<int>> loops;          // per vertex: self-loop ids
  std::vector<std::vector<int>> pendants;       // per vertex: external ports
};

Collapsed collapse(const TensorNetwork& net) {
  Collapsed c;
  const auto n = static_cast<std::size_t>(net.vertex_count());
  c.loops.resize(n);
  c.pendants.resize(n);
  std::map<std::pair<int, int>, int> index;
  for (int e = 0; e < net.edge_count(); ++e) {
    const InternalEdge& ie = net.edge(e);
    if (ie.is_self_loop()) {
      c.loops[static_cast<std::size_t>(ie.a.vertex)].push_back(e);
      continue;
    }
    std::pair<int, int> key = std::minmax(ie.a.vertex, ie.b.vertex);
    auto [it, fresh] = index.emplace(key, static_cast<int>(c.simple.size()));
    if (fresh) {
      c.simple.push_back(key);
      c.copies.emplace_back();
    }
    c.copies[static_cast<std::size_t>(it->second)].push_back(e);
  }
  for (const ExternalEdge& x : net.external()) {
    c.pendants[static_cast<std::size_t>(x.end.vertex)].push_back(x.end.port);
  }
  return c;
}

int port_at(const InternalEdge& e, int v) { return e.a.vertex == v ? e.a.port : e.b.port; }

// Rotation of vertex v from the simple-edge order: parallel copies ascending
// at the lower endpoint and descending at the higher one so they nest.
void expand_simple(const TensorNetwork& net, const Collapsed& c, int v, int simple_id,
                   std::vector<int>& rot) {
  const auto& copies = c.copies[static_cast<std::size_t>(simple_id)];
  const bool low = c.simple[static_cast<std::size_t>(simple_id)].first == v;
  if (low) {
    for (int e : copies) rot.push_back(port_at(net.edge(e), v));
  } else {
    for (auto it = copies.rbegin(); it != copies.rend(); ++it) rot.push_back(port_at(net.edge(*it), v));
  }
}

void append_loops(const TensorNetwork& net, const Collapsed& c, int v, std::vector<int>& rot) {
  for (int e : c.loops[static_cast<std::size_t>(v)]) {
    rot.push_back(net.edge(e).a.port);
    rot.push_back(net.edge(e).b.port);
  }
}

}  // namespace

bool validate_embedding(const TensorNetwork& net, PlanarEmbedding& emb) {
  const int n = net.vertex_count();
  if (static_cast<int>(emb.rotation.size()) != n) return false;

  // Position of each port in its rotation, external ports skipped.
  std::vector<std::vector<int>> internal_rot(static_cast<std::size_t>(n));
  std::vector<std::vector<int>> pos(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    const auto& rot = emb.rotation[static_cast<std::size_t>(v)];
    if (static_cast<int>(rot.size()) != net.degree(v)) return false;
    std::vector<bool> seen(static_cast<std::size_t>(net.degree(v)), false);
    auto& ir = internal_rot[static_cast<std::size_t>(v)];
    auto& ps = pos[static_cast<std::size_t>(v)];
    ps.assign(static_cast<std::size_t>(net.degree(v)), -1);
    for (int p : rot) {
      if (p < 0 || p >= net.degree(v) || seen[static_cast<std::size_t>(p)]) return false;
      seen[static_cast<std::size_t>(p)] = true;
      if (net.port(v, p).external) continue;
      ps[static_cast<std::size_t>(p)] = static_cast<int>(ir.size());
      ir.push_back(p);
    }
  }

  std::vector<int> comp(static_cast<std::size_t>(n));
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[static_cast<std::size_t>(x)] != x) {
      comp[static_cast<std::size_t>(x)] = comp[static_cast<std::size_t>(comp[static_cast<std::size_t>(x)])];
      x = comp[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const InternalEdge& e : net.edges()) comp[static_cast<std::size_t>(find(e.a.vertex))] = find(e.b.vertex);

  std::map<int, std::array<long, 3>> count;  // root -> V, E, F
  for (int v = 0; v < n; ++v) count[find(v)][0] += 1;
  for (const InternalEdge& e : net.edges()) count[find(e.a.vertex)][1] += 1;

  // Dart (v, p) leaves v through port p; the next dart of its face leaves
  // the far vertex through the port following the arrival port.
  std::vector<std::vector<bool>> used(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) used[static_cast<std::size_t>(v)].assign(static_cast<std::size_t>(net.degree(v)), false);
  for (int v = 0; v < n; ++v) {
    for (int p : internal_rot[static_cast<std::size_t>(v)]) {
      if (used[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)]) continue;
      count[find(v)][2] += 1;
      int cv = v;
      int cp = p;
      while (!used[static_cast<std::size_t>(cv)][static_cast<std::size_t>(cp)]) {
        used[static_cast<std::size_t>(cv)][static_cast<std::size_t>(cp)] = true;
        Endpoint far = net.opposite(cv, cp);
        const auto& ir = internal_rot[static_cast<std::size_t>(far.vertex)];
        int at = pos[static_cast<std::size_t>(far.vertex)][static_cast<std::size_t>(far.port)];
        cv = far.vertex;
        cp = ir[static_cast<std::size_t>((at + 1) % static_cast<int>(ir.size()))];
      }
    }
  }

  int faces = 1;
  bool ok = true;
  for (const auto& [root, c] : count) {
    (void)root;
    if (c[1] == 0) continue;
    if (c[0] - c[1] + c[2] != 2) ok = false;
    faces += static_cast<int>(c[2]) - 1;
  }
  emb.face_count = faces;
  emb.components = static_cast<int>(count.size());
  return ok;
}

PlanarityResult check_planarity(const TensorNetwork& net) {
  PlanarityResult result;
  const int n = net.vertex_count();
  Collapsed c = collapse(net);

  if (n >= 3 && static_cast<long>(c.simple.size()) > 3L * n - 6) {
    result.rejected_by_edge_bound = true;
    return result;
  }
  std::vector<std::vector<int>> order;
  if (!simple_planar(n, c.simple, order, result.witness)) return result;

  result.embedding.rotation.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& rot = result.embedding.rotation[static_cast<std::size_t>(v)];
    for (int s : order[static_cast<std::size_t>(v)]) expand_simple(net, c, v, s, rot);
    append_loops(net, c, v, rot);
    for (int p : c.pendants[static_cast<std::size_t>(v)]) rot.push_back(p);
  }
  if (!validate_embedding(net, result.embedding)) {
    throw std::logic_error("planar embedding failed Euler validation");
  }
  result.planar = true;
  return result;
}

std::optional<std::vector<std::vector<int>>> outer_face_rotation(
    const TensorNetwork& body, const std::vector<std::string>& ports) {
  const int n = body.vertex_count();
  const int k = static_cast<int>(ports.size());
  Collapsed c = collapse(body);

  // Terminal n+i hangs off port i; a hub n+k sees every terminal and the
  // terminals form a cycle in port order. The wheel is rigid, so the body
  // must sit in its rim face with the ports in that cyclic order.
  std::vector<std::pair<int, int>> edges = c.simple;
  const int first_terminal_edge = static_cast<int>(edges.size());
  std::vector<Endpoint> port_end;
  for (int i = 0; i < k; ++i) {
    int x = body.find_external(ports[static_cast<std::size_t>(i)]);
    if (x < 0) throw Error(ErrorKind::DanglingEndpoint, "unknown port label " + ports[static_cast<std::size_t>(i)]);
    port_end.push_back(body.external()[static_cast<std::size_t>(x)].end);
    edges.emplace_back(port_end.back().vertex, n + i);
  }
  const int hub = n + k;
  for (int i = 0; i < k; ++i) edges.emplace_back(n + i, hub);
  if (k == 2) edges.emplace_back(n, n + 1);
  if (k >= 3) {
    for (int i = 0; i < k; ++i) edges.emplace_back(n + i, n + (i + 1) % k);
  }

  std::vector<std::vector<int>> order;
  std::vector<std::pair<int, int>> witness;
  if (!simple_planar(n + k + 1, edges, order, witness)) return std::nullopt;

  std::vector<bool> listed(static_cast<std::size_t>(body.external_count()), false);
  for (const auto& p : ports) listed[static_cast<std::size_t>(body.find_external(p))] = true;

  std::vector<std::vector<int>> rotation(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    auto& rot = rotation[static_cast<std::size_t>(v)];
    for (int s : order[static_cast<std::size_t>(v)]) {
      if (s < first_terminal_edge) {
        expand_simple(body, c, v, s, rot);
      } else {
        rot.push_back(port_end[static_cast<std::size_t>(s - first_terminal_edge)].port);
      }
    }
    append_loops(body, c, v, rot);
    for (int x = 0; x < body.external_count(); ++x) {
      const ExternalEdge& e = body.external()[static_cast<std::size_t>(x)];
      if (!listed[static_cast<std::size_t>(x)] && e.end.vertex == v) rot.push_back(e.end.port);
    }
  }
  return rotation;
}

bool ports_on_outer_face(const Gadget& g) { return outer_face_rotation(g.body, g.ports).has_value(); }

}  // namespace tnet
