#include <map>

#include "tnet/error.hpp"
#include "tnet/planarizer.hpp"

namespace tnet {

CrossingVariant parse_variant(const std::string& name) {
  if (name == "standard") return CrossingVariant::Standard;
  if (name == "restricted") return CrossingVariant::Restricted;
  throw Error(ErrorKind::SyntaxError, "unknown crossing variant '" + name + "'");
}

namespace {

const Gadget& crossing_gadget(CrossingVariant variant) {
  static const Gadget standard = gadgets::build_crossing_gadget();
  static const Gadget restricted = gadgets::build_restricted_crossing_gadget();
  return variant == CrossingVariant::Standard ? standard : restricted;
}

// Rotation of a planar network, or nothing (port order) otherwise.
std::vector<std::vector<int>> rotation_or_empty(const TensorNetwork& net) {
  PlanarityResult r = check_planarity(net);
  if (r.planar) return std::move(r.embedding.rotation);
  return {};
}

}  // namespace

TensorNetwork replace_crossings(const TensorNetwork& net, const Drawing& drawing, CrossingVariant variant) {
  if (drawing.along.size() != static_cast<std::size_t>(net.edge_count())) {
    throw Error(ErrorKind::IndexOutOfRange, "drawing does not belong to this network");
  }
  const Gadget& g = crossing_gadget(variant);
  auto port_end = [&](const char* name) {
    return g.body.external()[static_cast<std::size_t>(g.body.find_external(name))].end;
  };
  const Endpoint north = port_end("N");
  const Endpoint east = port_end("E");
  const Endpoint south = port_end("S");
  const Endpoint west = port_end("W");

  NetworkBuilder b;
  for (const Tensor& t : net.tensors()) b.add(t);
  std::map<std::pair<int, int>, int> base;
  for (const auto& c : drawing.crossings) {
    int first = b.vertex_count();
    for (const Tensor& t : g.body.tensors()) b.add(t);
    for (const InternalEdge& e : g.body.edges()) {
      b.add_edge(e.a.vertex + first, e.a.port, e.b.vertex + first, e.b.port);
    }
    base.emplace(c, first);
  }

  // Each edge threads its crossings in chord order: the lower edge id of a
  // crossing runs N to S, the other W to E.
  for (int e = 0; e < net.edge_count(); ++e) {
    const InternalEdge& ie = net.edge(e);
    Endpoint cur = ie.a;
    for (const CrossingPoint& cp : drawing.along[static_cast<std::size_t>(e)]) {
      auto key = std::minmax(e, cp.other_edge);
      auto it = base.find(key);
      if (it == base.end()) throw Error(ErrorKind::IndexOutOfRange, "crossing missing from drawing");
      const bool low = e == key.first;
      const Endpoint in = low ? north : west;
      const Endpoint out = low ? south : east;
      b.add_edge(cur, Endpoint{in.vertex + it->second, in.port});
      cur = Endpoint{out.vertex + it->second, out.port};
    }
    b.add_edge(cur, ie.b);
  }
  for (const ExternalEdge& x : net.external()) b.expose(x.end, x.label);
  return b.build();
}

TensorNetwork reduce_degree(const TensorNetwork& net, int threshold) {
  std::vector<std::vector<Count>> weights(static_cast<std::size_t>(net.vertex_count()));
  bool any = false;
  for (int v = 0; v < net.vertex_count(); ++v) {
    if (net.degree(v) < threshold) continue;
    if (!net.tensor(v).symmetric_weights(weights[static_cast<std::size_t>(v)])) {
      throw Error(ErrorKind::NonSymmetricHighDegree,
                  "vertex " + std::to_string(v) + " of degree " + std::to_string(net.degree(v)) +
                      " carries a non-symmetric tensor");
    }
    any = true;
  }
  if (!any) return net;
  return gadgets::splice_gadgets(net, rotation_or_empty(net), [&](int v) -> std::optional<Gadget> {
    if (net.degree(v) < threshold) return std::nullopt;
    return gadgets::build_symmetric_gadget(weights[static_cast<std::size_t>(v)]);
  });
}

TensorNetwork restrict_function_basis(const TensorNetwork& net) {
  const auto rotation = rotation_or_empty(net);

  // =1 as an =3 closed on itself.
  Gadget unit;
  {
    NetworkBuilder b;
    int v = b.add(functions::equality(3));
    b.add_edge(v, 1, v, 2);
    b.expose(v, 0, "p0");
    unit = Gadget{b.build(), {"p0"}};
  }

  return expand_vertices(net, [&](int v) -> std::optional<Expansion> {
    const int k = net.degree(v);
    std::vector<Count> w;
    if (!net.tensor(v).symmetric_weights(w)) return std::nullopt;
    std::optional<Gadget> g;
    bool equality = k >= 1 && w.front() == 1 && w.back() == 1;
    for (int i = 1; equality && i < k; ++i) equality = w[static_cast<std::size_t>(i)] == 0;
    if (equality && k == 2) {
      Expansion x;
      x.wire = true;
      return x;
    }
    if (equality && k == 1) g = unit;
    if (equality && k >= 4) g = gadgets::build_eq_chain(k);
    if (k == 2 && w == std::vector<Count>{0, 1, 0}) g = gadgets::build_neq2();
    if (!g) return std::nullopt;
    Expansion x;
    x.body = g->body;
    x.body_ports = g->ports;
    if (static_cast<std::size_t>(v) < rotation.size()) {
      x.vertex_ports = rotation[static_cast<std::size_t>(v)];
    } else {
      for (int p = 0; p < k; ++p) x.vertex_ports.push_back(p);
    }
    return x;
  });
}

}  // namespace tnet
