#include "tnet/gadgets.hpp"

#include <bit>

#include "tnet/error.hpp"
#include "tnet/planarizer.hpp"

namespace tnet::gadgets {

namespace {

// Dense 0/1 table of the given arity from a predicate over port bits.
template <class Pred>
Tensor relation(int arity, Pred pred) {
  std::vector<Count> table(std::size_t{1} << arity);
  for (std::uint64_t i = 0; i < table.size(); ++i) {
    auto bits = decode_assignment(i, arity);
    table[i] = pred(bits) ? 1 : 0;
  }
  return Tensor::dense(arity, std::move(table));
}

std::string label(const char* prefix, int i) { return prefix + std::to_string(i); }

}  // namespace

Tensor table_A() {
  return relation(4, [](const auto& b) { return 2 * b[0] + b[1] == b[2] + b[3]; });
}

Tensor table_B() {
  return relation(5, [](const auto& b) { return 2 * b[0] + b[2] == b[3] + b[4] + b[1]; });
}

Tensor table_C() {
  return relation(4, [](const auto& b) { return b[2] == b[0] + b[1] && b[3] == b[0]; });
}

Tensor table_D() {
  return relation(5, [](const auto& b) {
    if (b[0] == 1) return b[3] == 1 && b[4] == 1 && b[2] == b[1];
    return b[3] == b[1] && b[4] == 0 && b[2] == 0;
  });
}

Tensor table_chain(int i, const std::vector<Count>& f, int n) {
  if (n < 2 || i < 1 || i > n - 1) {
    throw Error(ErrorKind::IndexOutOfRange,
                "chain index " + std::to_string(i) + " outside 1.." + std::to_string(n - 1));
  }
  if (f.size() != static_cast<std::size_t>(n) + 1) {
    throw Error(ErrorKind::IndexOutOfRange, "chain weights need n+1 entries");
  }
  // Ports (o_i, o_{i+1}); 10 marks the weight boundary.
  std::vector<Count> t{1, 1, f[static_cast<std::size_t>(i)], 1};
  if (i == 1) t[0] = f[0];
  if (i == n - 1) t[3] = f[static_cast<std::size_t>(n)];
  return Tensor::dense(2, std::move(t));
}

Tensor named_table(NamedFunction fn, int arity) {
  switch (fn) {
    case NamedFunction::A: return table_A();
    case NamedFunction::B: return table_B();
    case NamedFunction::C: return table_C();
    case NamedFunction::D: return table_D();
    case NamedFunction::Eq: return functions::equality(arity);
    case NamedFunction::Neq2: return functions::disequality2();
    case NamedFunction::Neq3: return functions::not_all_equal3();
    case NamedFunction::Or: return functions::disjunction(arity);
    case NamedFunction::Xor3: return functions::parity3();
    case NamedFunction::TwoOfThree: return functions::two_of_three();
  }
  throw Error(ErrorKind::BadTensor, "unknown named function");
}

Gadget build_symmetric_gadget(const std::vector<Count>& f) {
  if (f.size() < 2) throw Error(ErrorKind::EmptyWeights, "symmetric gadget needs at least 2 weights");
  const int n = static_cast<int>(f.size()) - 1;
  NetworkBuilder b;
  Gadget g;
  for (int i = 0; i < n; ++i) g.ports.push_back(label("x", i));

  if (n == 1) {
    int v = b.add(Tensor::symmetric(1, std::vector<Count>(f)));
    b.expose(v, 0, g.ports[0]);
    g.body = b.build();
    return g;
  }

  int levels = 0;
  while ((1 << levels) < n) ++levels;
  const int padded = 1 << levels;

  // Open wire ends still waiting for a partner, one per input slot.
  std::vector<Endpoint> wires;
  for (int i = 0; i < padded; ++i) {
    if (i < n) {
      wires.push_back(Endpoint{-1, i});  // placeholder: exposed later
    } else {
      wires.push_back(Endpoint{b.add(Tensor::dense(1, {1, 0})), 0});
    }
  }
  auto connect = [&](Endpoint src, int v, int p) {
    if (src.vertex < 0) {
      b.expose(v, p, g.ports[static_cast<std::size_t>(src.port)]);
    } else {
      b.add_edge(src.vertex, src.port, v, p);
    }
  };

  // Counter: level t halves the wire count; carries run left to right and
  // the last carry of a level is that level's low bit.
  std::vector<Endpoint> parity(static_cast<std::size_t>(levels) + 1);
  int top = -1;
  for (int t = 1; t <= levels; ++t) {
    const int cells = static_cast<int>(wires.size()) / 2;
    std::vector<Endpoint> up;
    Endpoint carry{-1, -1};
    for (int j = 0; j < cells; ++j) {
      const bool first = j == 0;
      int v = b.add(first ? table_A() : table_B());
      const int in1 = first ? 2 : 3;
      connect(wires[static_cast<std::size_t>(2 * j)], v, in1);
      connect(wires[static_cast<std::size_t>(2 * j + 1)], v, in1 + 1);
      if (!first) b.add_edge(carry.vertex, carry.port, v, 1);
      carry = Endpoint{v, first ? 1 : 2};
      up.push_back(Endpoint{v, 0});
      if (t == levels) top = v;
    }
    parity[static_cast<std::size_t>(t)] = carry;
    wires = std::move(up);
  }

  // Decoder: thermometer of the value so far; each level doubles it and adds
  // the next lower bit through the carry chain.
  std::vector<Endpoint> thermo;
  {
    int c = b.add(table_C());
    b.add_edge(top, 0, c, 0);
    b.add_edge(top, 1, c, 1);
    thermo = {Endpoint{c, 2}, Endpoint{c, 3}};
  }
  for (int t = levels - 1; t >= 1; --t) {
    const int cells = static_cast<int>(thermo.size());
    std::vector<Endpoint> next;
    Endpoint carry = parity[static_cast<std::size_t>(t)];
    for (int j = 0; j < cells; ++j) {
      const bool last = j == cells - 1;
      int v = b.add(last ? table_C() : table_D());
      b.add_edge(thermo[static_cast<std::size_t>(j)].vertex, thermo[static_cast<std::size_t>(j)].port, v, 0);
      b.add_edge(carry.vertex, carry.port, v, 1);
      const int o = last ? 2 : 3;
      if (!last) carry = Endpoint{v, 2};
      next.push_back(Endpoint{v, o});
      next.push_back(Endpoint{v, o + 1});
    }
    thermo = std::move(next);
  }

  // Weighting chain over adjacent unary wires; interior wires are copied.
  for (int i = n; i < padded; ++i) {
    int pin = b.add(Tensor::dense(1, {1, 0}));
    b.add_edge(thermo[static_cast<std::size_t>(i)].vertex, thermo[static_cast<std::size_t>(i)].port, pin, 0);
  }
  Endpoint left = thermo[0];
  for (int i = 1; i <= n - 1; ++i) {
    int fv = b.add(table_chain(i, f, n));
    b.add_edge(left.vertex, left.port, fv, 0);
    Endpoint right = thermo[static_cast<std::size_t>(i)];
    if (i == n - 1) {
      b.add_edge(right.vertex, right.port, fv, 1);
    } else {
      int copy = b.add(functions::equality(3));
      b.add_edge(right.vertex, right.port, copy, 0);
      b.add_edge(copy, 1, fv, 1);
      left = Endpoint{copy, 2};
    }
  }

  g.body = b.build();
  return g;
}

Gadget build_crossing_gadget() {
  // 3x3 grid f1..f9, ring f1 f2 f3 f6 f9 f8 f7 f4, centre f5. The midpoints
  // already have their three ring/centre edges, so the ports sit on the
  // corners: N = f1, E = f3, S = f9, W = f7.
  NetworkBuilder b;
  int f[10];
  for (int i = 1; i <= 9; ++i) {
    if (i == 5) {
      f[i] = b.add(functions::equality(4));
    } else if (i % 2 == 1) {
      f[i] = b.add(functions::equality(3));
    } else {
      f[i] = b.add(functions::parity3());
    }
  }
  // Corner ports: 0 = external, 1 and 2 = ring. Midpoint ports: 0 and 1 =
  // ring, 2 = centre.
  b.add_edge(f[1], 2, f[2], 0);
  b.add_edge(f[2], 1, f[3], 1);
  b.add_edge(f[3], 2, f[6], 0);
  b.add_edge(f[6], 1, f[9], 1);
  b.add_edge(f[9], 2, f[8], 0);
  b.add_edge(f[8], 1, f[7], 1);
  b.add_edge(f[7], 2, f[4], 0);
  b.add_edge(f[4], 1, f[1], 1);
  b.add_edge(f[2], 2, f[5], 0);
  b.add_edge(f[6], 2, f[5], 1);
  b.add_edge(f[8], 2, f[5], 2);
  b.add_edge(f[4], 2, f[5], 3);
  b.expose(f[1], 0, "N");
  b.expose(f[3], 0, "E");
  b.expose(f[9], 0, "S");
  b.expose(f[7], 0, "W");
  return Gadget{b.build(), {"N", "E", "S", "W"}};
}

Tensor crossing_tensor() {
  return relation(4, [](const auto& x) { return x[0] == x[2] && x[1] == x[3]; });
}

Gadget build_two_of_three() {
  NetworkBuilder b;
  int hub = b.add(functions::not_all_equal3());
  int copy[3];
  // Copy ports: 0 = input, 1 = OR towards the next copy, 2 = hub, 3 = OR
  // towards the previous copy.
  for (int i = 0; i < 3; ++i) {
    copy[i] = b.add(functions::equality(4));
    b.add_edge(copy[i], 2, hub, i);
  }
  for (int i = 0; i < 3; ++i) {
    int check = b.add(functions::disjunction(2));
    b.add_edge(copy[i], 1, check, 0);
    b.add_edge(copy[(i + 1) % 3], 3, check, 1);
  }
  Gadget g;
  for (int i = 0; i < 3; ++i) {
    g.ports.push_back(label("x", i));
    b.expose(copy[i], 0, g.ports.back());
  }
  g.body = b.build();
  return g;
}

Gadget build_xor3_from_two_of_three() {
  // Triangle of 2-of-3 vertices: the three inputs then have even weight,
  // each solution once. Negating every input turns that into odd parity.
  NetworkBuilder b;
  int tri[3];
  for (int i = 0; i < 3; ++i) tri[i] = b.add(functions::two_of_three());
  // Triangle ports: 0 = input, 1 = next corner, 2 = previous corner.
  for (int i = 0; i < 3; ++i) b.add_edge(tri[i], 1, tri[(i + 1) % 3], 2);
  Gadget g;
  for (int i = 0; i < 3; ++i) {
    int neq = b.add(functions::disequality2());
    b.add_edge(neq, 1, tri[i], 0);
    g.ports.push_back(label("x", i));
    b.expose(neq, 0, g.ports.back());
  }
  g.body = b.build();
  return g;
}

Gadget build_eq_chain(int k) {
  if (k < 2) throw Error(ErrorKind::BadArity, "equality chain needs k >= 2, got " + std::to_string(k));
  NetworkBuilder b;
  Gadget g;
  for (int i = 0; i < k; ++i) g.ports.push_back(label("p", i));
  if (k == 2) {
    int v = b.add(Tensor::dense(2, {1, 0, 0, 1}));
    b.expose(v, 0, g.ports[0]);
    b.expose(v, 1, g.ports[1]);
    g.body = b.build();
    return g;
  }
  // Vertex j: port 0 towards the left, port 1 the top port, port 2 right.
  const int len = k - 2;
  std::vector<int> v(static_cast<std::size_t>(len));
  for (int j = 0; j < len; ++j) v[static_cast<std::size_t>(j)] = b.add(functions::equality(3));
  for (int j = 0; j + 1 < len; ++j) b.add_edge(v[static_cast<std::size_t>(j)], 2, v[static_cast<std::size_t>(j + 1)], 0);
  b.expose(v.front(), 0, g.ports[0]);
  for (int j = 0; j < len; ++j) b.expose(v[static_cast<std::size_t>(j)], 1, g.ports[static_cast<std::size_t>(j + 1)]);
  b.expose(v.back(), 2, g.ports[static_cast<std::size_t>(k - 1)]);
  g.body = b.build();
  return g;
}

Gadget build_neq2() {
  NetworkBuilder b;
  int nae = b.add(functions::not_all_equal3());
  int eq = b.add(functions::equality(3));
  b.add_edge(nae, 1, eq, 2);
  b.add_edge(nae, 2, eq, 1);
  b.expose(nae, 0, "p0");
  b.expose(eq, 0, "p1");
  return Gadget{b.build(), {"p0", "p1"}};
}

namespace {

bool same_tensor_value(const Tensor& t, const Tensor& target) {
  if (t.arity() != target.arity()) return false;
  return t.to_dense() == target.to_dense();
}

// One rewriting pass over a gadget body, keeping its port list.
Gadget rewrite(const Gadget& g, const std::function<std::optional<Gadget>(const Tensor&)>& rule) {
  auto rotation = outer_face_rotation(g.body, g.ports);
  if (!rotation) throw Error(ErrorKind::NotPlanarInput, "gadget body lost its outer-face ports");
  TensorNetwork out = splice_gadgets(g.body, *rotation,
                                     [&](int v) { return rule(g.body.tensor(v)); });
  return Gadget{std::move(out), g.ports};
}

}  // namespace

Gadget build_restricted_crossing_gadget() {
  const Tensor eq4 = functions::equality(4);
  const Tensor xor3 = functions::parity3();
  const Tensor two3 = functions::two_of_three();
  const Tensor neq2 = functions::disequality2();

  Gadget g = build_crossing_gadget();
  g = rewrite(g, [&](const Tensor& t) -> std::optional<Gadget> {
    if (same_tensor_value(t, eq4)) return build_eq_chain(4);
    if (same_tensor_value(t, xor3)) return build_xor3_from_two_of_three();
    return std::nullopt;
  });
  g = rewrite(g, [&](const Tensor& t) -> std::optional<Gadget> {
    if (same_tensor_value(t, two3)) return build_two_of_three();
    if (same_tensor_value(t, neq2)) return build_neq2();
    return std::nullopt;
  });
  g = rewrite(g, [&](const Tensor& t) -> std::optional<Gadget> {
    if (same_tensor_value(t, eq4)) return build_eq_chain(4);
    return std::nullopt;
  });
  return g;
}

bool verify_gadget(const Gadget& g, const Tensor& target, int brute_cap) {
  if (target.arity() != g.arity()) return false;
  const bool brute = g.body.edge_count() <= brute_cap;
  const std::uint64_t rows = std::uint64_t{1} << g.arity();
  for (std::uint64_t i = 0; i < rows; ++i) {
    auto bits = decode_assignment(i, g.arity());
    Assignment ext;
    for (int p = 0; p < g.arity(); ++p) ext[g.ports[static_cast<std::size_t>(p)]] = bits[static_cast<std::size_t>(p)];
    Count value = brute ? evaluate_brute(g.body, ext, brute_cap) : evaluate_exhaustive(g.body, ext);
    if (value != target.at(i)) return false;
  }
  return true;
}

TensorNetwork splice_gadgets(const TensorNetwork& net,
                             const std::vector<std::vector<int>>& rotation,
                             const std::function<std::optional<Gadget>(int)>& pick) {
  return expand_vertices(net, [&](int v) -> std::optional<Expansion> {
    auto g = pick(v);
    if (!g) return std::nullopt;
    if (g->arity() != net.degree(v)) {
      throw Error(ErrorKind::ArityMismatch, "gadget arity " + std::to_string(g->arity()) +
                                                " does not match vertex degree " +
                                                std::to_string(net.degree(v)));
    }
    Expansion x;
    x.body = g->body;
    x.body_ports = g->ports;
    const auto* rot = static_cast<std::size_t>(v) < rotation.size() ? &rotation[static_cast<std::size_t>(v)] : nullptr;
    if (rot && rot->size() == static_cast<std::size_t>(net.degree(v))) {
      x.vertex_ports = *rot;
    } else {
      for (int p = 0; p < net.degree(v); ++p) x.vertex_ports.push_back(p);
    }
    return x;
  });
}

}  // namespace tnet::gadgets
