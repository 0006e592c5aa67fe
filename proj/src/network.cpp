#include "tnet/network.hpp"

#include <algorithm>
#include <set>

#include "tnet/error.hpp"

namespace tnet {

namespace {

std::string where(Endpoint e) {
  return "(" + std::to_string(e.vertex) + "," + std::to_string(e.port) + ")";
}

}  // namespace

TensorNetwork::TensorNetwork(std::vector<Tensor> tensors, std::vector<InternalEdge> edges,
                             std::vector<ExternalEdge> external)
    : tensors_(std::move(tensors)), edges_(std::move(edges)), external_(std::move(external)) {
  ports_.resize(tensors_.size());
  for (std::size_t v = 0; v < tensors_.size(); ++v) {
    ports_[v].assign(static_cast<std::size_t>(tensors_[v].arity()), PortRef{});
  }

  auto claim = [&](Endpoint e, PortRef ref) {
    if (e.vertex < 0 || e.vertex >= vertex_count()) {
      throw Error(ErrorKind::DanglingEndpoint, "endpoint " + where(e) + " names no vertex");
    }
    auto& slots = ports_[static_cast<std::size_t>(e.vertex)];
    if (e.port < 0 || e.port >= static_cast<int>(slots.size())) {
      // A port beyond the tensor arity means the vertex has more incident
      // edges than its tensor has inputs.
      throw Error(ErrorKind::ArityMismatch,
                  "endpoint " + where(e) + " exceeds tensor arity " +
                      std::to_string(slots.size()));
    }
    PortRef& slot = slots[static_cast<std::size_t>(e.port)];
    if (slot.edge >= 0) throw Error(ErrorKind::PortConflict, "port " + where(e) + " used twice");
    slot = ref;
  };

  for (std::size_t i = 0; i < edges_.size(); ++i) {
    PortRef ref{false, static_cast<int>(i)};
    claim(edges_[i].a, ref);
    if (edges_[i].a == edges_[i].b) {
      throw Error(ErrorKind::PortConflict, "edge joins port " + where(edges_[i].a) + " to itself");
    }
    claim(edges_[i].b, ref);
  }
  std::set<std::string> labels;
  for (std::size_t i = 0; i < external_.size(); ++i) {
    if (!labels.insert(external_[i].label).second) {
      throw Error(ErrorKind::DuplicateLabel, "external label '" + external_[i].label + "' repeats");
    }
    claim(external_[i].end, PortRef{true, static_cast<int>(i)});
  }
  for (std::size_t v = 0; v < ports_.size(); ++v) {
    for (std::size_t p = 0; p < ports_[v].size(); ++p) {
      if (ports_[v][p].edge < 0) {
        throw Error(ErrorKind::PortConflict,
                    "port " + where(Endpoint{static_cast<int>(v), static_cast<int>(p)}) +
                        " has no edge (unused port)");
      }
    }
  }
}

Endpoint TensorNetwork::opposite(int v, int p) const {
  const PortRef& ref = port(v, p);
  const InternalEdge& e = edge(ref.edge);
  if (e.a.vertex == v && e.a.port == p) return e.b;
  return e.a;
}

int TensorNetwork::find_external(const std::string& label) const {
  for (std::size_t i = 0; i < external_.size(); ++i) {
    if (external_[i].label == label) return static_cast<int>(i);
  }
  return -1;
}

int NetworkBuilder::add(Tensor t) {
  tensors_.push_back(std::move(t));
  return static_cast<int>(tensors_.size()) - 1;
}

int NetworkBuilder::add_edge(int u, int pu, int v, int pv) {
  edges_.push_back(InternalEdge{Endpoint{u, pu}, Endpoint{v, pv}});
  return static_cast<int>(edges_.size()) - 1;
}

void NetworkBuilder::expose(int v, int p, std::string label) {
  external_.push_back(ExternalEdge{Endpoint{v, p}, std::move(label)});
}

TensorNetwork NetworkBuilder::build() const { return TensorNetwork(tensors_, edges_, external_); }

NetworkStats network_stats(const TensorNetwork& net) {
  NetworkStats s;
  s.vertices = net.vertex_count();
  for (const Tensor& t : net.tensors()) s.max_degree = std::max(s.max_degree, t.arity());
  s.edge_count = net.edge_count();
  s.is_closed = net.is_closed();
  return s;
}

namespace {

// Dense table of the merged vertex: free ports of u then v, shared edges summed.
struct MergeLayout {
  std::vector<int> u_free, v_free;        // port indices kept
  std::vector<std::pair<int, int>> shared;  // (port on u, port on v)
};

Tensor merge_tensors(const Tensor& tu, const Tensor& tv, const MergeLayout& m) {
  const int du = tu.arity();
  const int dv = tv.arity();
  const int fu = static_cast<int>(m.u_free.size());
  const int fv = static_cast<int>(m.v_free.size());
  const int s = static_cast<int>(m.shared.size());
  if (fu + fv > kMaxDenseArity) {
    throw Error(ErrorKind::TooLarge, "merged tensor arity " + std::to_string(fu + fv));
  }
  std::vector<Count> out(std::size_t{1} << (fu + fv));
  std::vector<std::uint8_t> bu(static_cast<std::size_t>(du)), bv(static_cast<std::size_t>(dv));
  for (std::uint64_t o = 0; o < out.size(); ++o) {
    for (int i = 0; i < fu; ++i) {
      bu[static_cast<std::size_t>(m.u_free[static_cast<std::size_t>(i)])] =
          (o >> (fu + fv - 1 - i)) & 1u;
    }
    for (int i = 0; i < fv; ++i) {
      bv[static_cast<std::size_t>(m.v_free[static_cast<std::size_t>(i)])] =
          (o >> (fv - 1 - i)) & 1u;
    }
    Count acc = 0;
    for (std::uint64_t sh = 0; sh < (std::uint64_t{1} << s); ++sh) {
      for (int i = 0; i < s; ++i) {
        std::uint8_t bit = (sh >> i) & 1u;
        bu[static_cast<std::size_t>(m.shared[static_cast<std::size_t>(i)].first)] = bit;
        bv[static_cast<std::size_t>(m.shared[static_cast<std::size_t>(i)].second)] = bit;
      }
      const Count& a = tu.at(bu);
      if (sgn(a) == 0) continue;
      mpz_addmul(acc.get_mpz_t(), a.get_mpz_t(), tv.at(bv).get_mpz_t());
    }
    out[o] = std::move(acc);
  }
  return Tensor::dense(fu + fv, std::move(out));
}

}  // namespace

TensorNetwork contract_pair(const TensorNetwork& net, int u, int v) {
  const int n = net.vertex_count();
  if (u < 0 || v < 0 || u >= n || v >= n) {
    throw Error(ErrorKind::IndexOutOfRange, "contract_pair vertex out of range");
  }
  if (u == v) throw Error(ErrorKind::IndexOutOfRange, "contract_pair needs two distinct vertices");

  MergeLayout layout;
  std::vector<bool> shared_edge(static_cast<std::size_t>(net.edge_count()), false);
  for (int p = 0; p < net.degree(u); ++p) {
    const PortRef& r = net.port(u, p);
    if (!r.external) {
      Endpoint o = net.opposite(u, p);
      if (o.vertex == v) {
        layout.shared.emplace_back(p, o.port);
        shared_edge[static_cast<std::size_t>(r.edge)] = true;
        continue;
      }
    }
    layout.u_free.push_back(p);
  }
  for (int p = 0; p < net.degree(v); ++p) {
    const PortRef& r = net.port(v, p);
    if (!r.external && shared_edge[static_cast<std::size_t>(r.edge)]) continue;
    layout.v_free.push_back(p);
  }

  Tensor merged = merge_tensors(net.tensor(u), net.tensor(v), layout);

  // New ids: merged vertex at lo, vertex hi removed.
  const int lo = std::min(u, v);
  const int hi = std::max(u, v);
  auto renumber = [&](int w) { return w > hi ? w - 1 : w; };

  // Old (vertex, port) -> new endpoint, for the ports that survive.
  auto remap = [&](Endpoint e) -> Endpoint {
    if (e.vertex == u || e.vertex == v) {
      const auto& list = e.vertex == u ? layout.u_free : layout.v_free;
      int offset = e.vertex == u ? 0 : static_cast<int>(layout.u_free.size());
      auto it = std::find(list.begin(), list.end(), e.port);
      return Endpoint{lo, offset + static_cast<int>(it - list.begin())};
    }
    return Endpoint{renumber(e.vertex), e.port};
  };

  std::vector<Tensor> tensors;
  tensors.reserve(static_cast<std::size_t>(n - 1));
  for (int w = 0; w < n; ++w) {
    if (w == lo) {
      tensors.push_back(merged);
    } else if (w != hi) {
      tensors.push_back(net.tensor(w));
    }
  }
  std::vector<InternalEdge> edges;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (shared_edge[static_cast<std::size_t>(e)]) continue;
    edges.push_back(InternalEdge{remap(net.edge(e).a), remap(net.edge(e).b)});
  }
  std::vector<ExternalEdge> external;
  for (const ExternalEdge& x : net.external()) external.push_back({remap(x.end), x.label});
  return TensorNetwork(std::move(tensors), std::move(edges), std::move(external));
}

TensorNetwork trace_self_loop(const TensorNetwork& net, int v, int a, int b) {
  if (v < 0 || v >= net.vertex_count() || a < 0 || b < 0 || a >= net.degree(v) ||
      b >= net.degree(v) || a == b) {
    throw Error(ErrorKind::NotALoop, "no such port pair");
  }
  const PortRef& ra = net.port(v, a);
  const PortRef& rb = net.port(v, b);
  if (ra.external || rb.external || ra.edge != rb.edge) {
    throw Error(ErrorKind::NotALoop, "ports " + std::to_string(a) + " and " + std::to_string(b) +
                                         " of vertex " + std::to_string(v) +
                                         " are not joined by a self-loop");
  }
  const Tensor& t = net.tensor(v);
  const int d = t.arity();
  std::vector<int> keep;
  for (int p = 0; p < d; ++p) {
    if (p != a && p != b) keep.push_back(p);
  }
  std::vector<Count> table(std::size_t{1} << (d - 2));
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(d));
  for (std::uint64_t o = 0; o < table.size(); ++o) {
    for (int i = 0; i < d - 2; ++i) {
      bits[static_cast<std::size_t>(keep[static_cast<std::size_t>(i)])] = (o >> (d - 3 - i)) & 1u;
    }
    Count acc = 0;
    for (std::uint8_t x = 0; x < 2; ++x) {
      bits[static_cast<std::size_t>(a)] = x;
      bits[static_cast<std::size_t>(b)] = x;
      acc += t.at(bits);
    }
    table[o] = std::move(acc);
  }

  auto remap = [&](Endpoint e) -> Endpoint {
    if (e.vertex != v) return e;
    auto it = std::find(keep.begin(), keep.end(), e.port);
    return Endpoint{v, static_cast<int>(it - keep.begin())};
  };
  std::vector<Tensor> tensors = net.tensors();
  tensors[static_cast<std::size_t>(v)] = Tensor::dense(d - 2, std::move(table));
  std::vector<InternalEdge> edges;
  for (int e = 0; e < net.edge_count(); ++e) {
    if (e == ra.edge) continue;
    edges.push_back(InternalEdge{remap(net.edge(e).a), remap(net.edge(e).b)});
  }
  std::vector<ExternalEdge> external;
  for (const ExternalEdge& x : net.external()) external.push_back({remap(x.end), x.label});
  return TensorNetwork(std::move(tensors), std::move(edges), std::move(external));
}

TensorNetwork expand_vertices(const TensorNetwork& net,
                              const std::function<std::optional<Expansion>(int)>& choose) {
  const int n = net.vertex_count();
  std::vector<std::optional<Expansion>> plan(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) plan[static_cast<std::size_t>(v)] = choose(v);

  // A chain of wires dissolves into one edge only if at least one of its two
  // ends is a real vertex port; rings and external-to-external chains stay.
  auto wire_planned = [&](int v) {
    const auto& x = plan[static_cast<std::size_t>(v)];
    return x && x->wire;
  };
  for (int v = 0; v < n; ++v) {
    if (!wire_planned(v)) continue;
    std::vector<int> chain{v};
    int real_ends = 0;
    bool ring = false;
    for (int side = 0; side < 2 && !ring; ++side) {
      int cur = v;
      int out_port = side;
      while (true) {
        const PortRef& r = net.port(cur, out_port);
        if (r.external) break;
        Endpoint next = net.opposite(cur, out_port);
        if (next.vertex == v) {
          ring = true;
          break;
        }
        if (!wire_planned(next.vertex)) {
          ++real_ends;
          break;
        }
        chain.push_back(next.vertex);
        cur = next.vertex;
        out_port = 1 - next.port;
      }
    }
    if (ring || real_ends == 0) {
      for (int w : chain) plan[static_cast<std::size_t>(w)].reset();
    }
  }

  std::vector<Tensor> tensors;
  std::vector<int> new_id(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v) {
    if (!plan[static_cast<std::size_t>(v)]) {
      new_id[static_cast<std::size_t>(v)] = static_cast<int>(tensors.size());
      tensors.push_back(net.tensor(v));
    }
  }

  // Where each old port now lives: either the kept vertex, or the body
  // endpoint that carried the matching body port.
  std::vector<std::vector<Endpoint>> moved(static_cast<std::size_t>(n));
  std::vector<InternalEdge> edges;
  std::vector<ExternalEdge> external;
  for (int v = 0; v < n; ++v) {
    auto& slots = moved[static_cast<std::size_t>(v)];
    slots.resize(static_cast<std::size_t>(net.degree(v)));
    const auto& x = plan[static_cast<std::size_t>(v)];
    if (!x) {
      for (int p = 0; p < net.degree(v); ++p) {
        slots[static_cast<std::size_t>(p)] = Endpoint{new_id[static_cast<std::size_t>(v)], p};
      }
      continue;
    }
    if (x->wire) continue;
    if (x->vertex_ports.size() != static_cast<std::size_t>(net.degree(v)) ||
        x->body_ports.size() != x->vertex_ports.size()) {
      throw Error(ErrorKind::ArityMismatch,
                  "expansion of vertex " + std::to_string(v) + " has the wrong port count");
    }
    const int base = static_cast<int>(tensors.size());
    for (const Tensor& t : x->body.tensors()) tensors.push_back(t);
    for (const InternalEdge& e : x->body.edges()) {
      edges.push_back(InternalEdge{Endpoint{e.a.vertex + base, e.a.port},
                                   Endpoint{e.b.vertex + base, e.b.port}});
    }
    for (std::size_t i = 0; i < x->body_ports.size(); ++i) {
      int idx = x->body.find_external(x->body_ports[i]);
      if (idx < 0) throw Error(ErrorKind::DanglingEndpoint, "unknown body port " + x->body_ports[i]);
      Endpoint end = x->body.external()[static_cast<std::size_t>(idx)].end;
      slots[static_cast<std::size_t>(x->vertex_ports[i])] = Endpoint{end.vertex + base, end.port};
    }
  }

  auto is_wire = [&](int v) {
    const auto& x = plan[static_cast<std::size_t>(v)];
    return x && x->wire;
  };

  // Follow a chain of dissolved wires starting at `from` (the endpoint on a
  // wire vertex) until reaching a real endpoint or an external edge.
  struct Far {
    bool external = false;
    Endpoint end;
    std::string label;
  };
  auto walk = [&](Endpoint from) -> Far {
    Endpoint cur = from;
    while (true) {
      int other = 1 - cur.port;
      const PortRef& r = net.port(cur.vertex, other);
      if (r.external) return Far{true, {}, net.external()[static_cast<std::size_t>(r.edge)].label};
      Endpoint next = net.opposite(cur.vertex, other);
      if (!is_wire(next.vertex)) {
        return Far{false, moved[static_cast<std::size_t>(next.vertex)][static_cast<std::size_t>(next.port)], {}};
      }
      cur = next;
    }
  };

  for (const InternalEdge& e : net.edges()) {
    bool wa = is_wire(e.a.vertex);
    bool wb = is_wire(e.b.vertex);
    if (!wa && !wb) {
      edges.push_back(InternalEdge{
          moved[static_cast<std::size_t>(e.a.vertex)][static_cast<std::size_t>(e.a.port)],
          moved[static_cast<std::size_t>(e.b.vertex)][static_cast<std::size_t>(e.b.port)]});
    } else if (!wa && wb) {
      Far far = walk(e.b);
      Endpoint near = moved[static_cast<std::size_t>(e.a.vertex)][static_cast<std::size_t>(e.a.port)];
      if (far.external) {
        external.push_back(ExternalEdge{near, far.label});
      } else if (near < far.end) {
        edges.push_back(InternalEdge{near, far.end});
      }
    } else if (wa && !wb) {
      Far far = walk(e.a);
      Endpoint near = moved[static_cast<std::size_t>(e.b.vertex)][static_cast<std::size_t>(e.b.port)];
      if (far.external) {
        external.push_back(ExternalEdge{near, far.label});
      } else if (near < far.end) {
        edges.push_back(InternalEdge{near, far.end});
      }
    }
    // wire-wire edges are interior to a chain and handled from its ends
  }
  for (const ExternalEdge& x : net.external()) {
    if (is_wire(x.end.vertex)) continue;
    external.push_back(ExternalEdge{
        moved[static_cast<std::size_t>(x.end.vertex)][static_cast<std::size_t>(x.end.port)],
        x.label});
  }
  return TensorNetwork(std::move(tensors), std::move(edges), std::move(external));
}

}  // namespace tnet
