#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tnet/tensor.hpp"

namespace tnet {

struct Endpoint {
  int vertex = 0;
  int port = 0;
  friend auto operator<=>(const Endpoint&, const Endpoint&) = default;
};

struct InternalEdge {
  Endpoint a;
  Endpoint b;
  bool is_self_loop() const { return a.vertex == b.vertex; }
};

struct ExternalEdge {
  Endpoint end;
  std::string label;
};

// What sits on a vertex port: an internal edge or an external (dangling) one.
struct PortRef {
  bool external = false;
  int edge = -1;
};

/// Boolean-domain tensor network: vertex i carries tensors()[i], every port of
/// every vertex is covered by exactly one internal or external edge.
///
/// Immutable once constructed; every transformation returns a new network.
class TensorNetwork {
 public:
  TensorNetwork() = default;
  TensorNetwork(std::vector<Tensor> tensors, std::vector<InternalEdge> edges,
                std::vector<ExternalEdge> external);

  int vertex_count() const { return static_cast<int>(tensors_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int external_count() const { return static_cast<int>(external_.size()); }
  bool is_closed() const { return external_.empty(); }

  const std::vector<Tensor>& tensors() const { return tensors_; }
  const Tensor& tensor(int v) const { return tensors_[static_cast<std::size_t>(v)]; }
  const std::vector<InternalEdge>& edges() const { return edges_; }
  const InternalEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<ExternalEdge>& external() const { return external_; }

  int degree(int v) const { return tensor(v).arity(); }
  const PortRef& port(int v, int p) const {
    return ports_[static_cast<std::size_t>(v)][static_cast<std::size_t>(p)];
  }
  const std::vector<PortRef>& ports(int v) const { return ports_[static_cast<std::size_t>(v)]; }

  // Endpoint at the far side of the internal edge on (v, p).
  Endpoint opposite(int v, int p) const;

  // Index of the external edge with this label, or -1.
  int find_external(const std::string& label) const;

 private:
  std::vector<Tensor> tensors_;
  std::vector<InternalEdge> edges_;
  std::vector<ExternalEdge> external_;
  std::vector<std::vector<PortRef>> ports_;
};

/// Incremental construction helper used by the gadget builders and passes.
class NetworkBuilder {
 public:
  int add(Tensor t);
  int add_edge(int u, int pu, int v, int pv);
  int add_edge(Endpoint a, Endpoint b) { return add_edge(a.vertex, a.port, b.vertex, b.port); }
  void expose(int v, int p, std::string label);
  void expose(Endpoint e, std::string label) { expose(e.vertex, e.port, std::move(label)); }

  int vertex_count() const { return static_cast<int>(tensors_.size()); }

  TensorNetwork build() const;

 private:
  std::vector<Tensor> tensors_;
  std::vector<InternalEdge> edges_;
  std::vector<ExternalEdge> external_;
};

struct NetworkStats {
  int vertices = 0;
  int max_degree = 0;
  int edge_count = 0;
  bool is_closed = true;
};

NetworkStats network_stats(const TensorNetwork& net);

// Assignment to the external edges, keyed by label.
using Assignment = std::map<std::string, std::uint8_t>;

inline constexpr int kDefaultBruteCap = 30;

/// Defining sum-product: sums over every assignment of the internal edges.
/// Throws TooLarge above `cap` internal edges.
Count evaluate_brute(const TensorNetwork& net, const Assignment& ext = {},
                     int cap = kDefaultBruteCap);

/// Same sum, enumerated depth-first with branches cut as soon as some vertex
/// has no nonzero entry compatible with the partial assignment. Exact for any
/// size; fast when the tensors are sparse relations (gadget bodies).
Count evaluate_exhaustive(const TensorNetwork& net, const Assignment& ext = {});

/// Merges u and v into one vertex placed at min(u, v); vertices above max(u, v)
/// shift down by one. Remaining ports of u come first, then those of v.
TensorNetwork contract_pair(const TensorNetwork& net, int u, int v);

/// Sums the diagonal of the self-loop joining ports a and b of vertex v.
TensorNetwork trace_self_loop(const TensorNetwork& net, int v, int a, int b);

/// Replacement of one vertex by a sub-network. Port i of `body` (listed in
/// `body_ports`, as external labels) takes over the edge on vertex port
/// `vertex_ports[i]`.
/// A `wire` expansion removes an arity-2 vertex and joins its two edges
/// directly (only valid for the equality [1,0,1]).
struct Expansion {
  TensorNetwork body;
  std::vector<std::string> body_ports;
  std::vector<int> vertex_ports;
  bool wire = false;
};

/// Applies expansions to every vertex for which `choose` returns one. Kept
/// vertices retain their relative order; expansion bodies are appended in
/// vertex order.
TensorNetwork expand_vertices(const TensorNetwork& net,
                              const std::function<std::optional<Expansion>(int)>& choose);

}  // namespace tnet
