#include <algorithm>
#include <bit>
#include <queue>

#include "tnet/error.hpp"
#include "tnet/network.hpp"

namespace tnet {

namespace {

std::vector<std::uint8_t> external_bits(const TensorNetwork& net, const Assignment& ext) {
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(net.external_count()));
  if (ext.size() != bits.size()) {
    throw Error(ErrorKind::IndexOutOfRange,
                "assignment covers " + std::to_string(ext.size()) + " labels, network has " +
                    std::to_string(bits.size()) + " external edges");
  }
  for (std::size_t i = 0; i < bits.size(); ++i) {
    auto it = ext.find(net.external()[i].label);
    if (it == ext.end()) {
      throw Error(ErrorKind::IndexOutOfRange,
                  "assignment misses external edge '" + net.external()[i].label + "'");
    }
    bits[i] = it->second & 1u;
  }
  return bits;
}

}  // namespace

Count evaluate_brute(const TensorNetwork& net, const Assignment& ext, int cap) {
  const int m = net.edge_count();
  if (m > cap) {
    throw Error(ErrorKind::TooLarge, std::to_string(m) + " internal edges exceed the brute-force cap of " +
                                         std::to_string(cap));
  }
  const auto xbits = external_bits(net, ext);

  // Each vertex reads its index from (mask, fixed external bits).
  struct Source {
    bool external;
    int index;
  };
  std::vector<std::vector<Source>> sources(static_cast<std::size_t>(net.vertex_count()));
  for (int v = 0; v < net.vertex_count(); ++v) {
    for (const PortRef& r : net.ports(v)) sources[static_cast<std::size_t>(v)].push_back({r.external, r.edge});
  }

  Count total = 0;
  Count product;
  std::vector<const Count*> factors(static_cast<std::size_t>(net.vertex_count()));
  const std::uint64_t limit = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < limit; ++mask) {
    bool zero = false;
    for (int v = 0; v < net.vertex_count() && !zero; ++v) {
      std::uint64_t idx = 0;
      for (const Source& s : sources[static_cast<std::size_t>(v)]) {
        std::uint64_t bit = s.external ? xbits[static_cast<std::size_t>(s.index)] : (mask >> s.index) & 1u;
        idx = (idx << 1) | bit;
      }
      const Count& f = net.tensor(v).at(idx);
      if (sgn(f) == 0) zero = true;
      factors[static_cast<std::size_t>(v)] = &f;
    }
    if (zero) continue;
    product = 1;
    for (const Count* f : factors) product *= *f;
    total += product;
  }
  return total;
}

namespace {

// Depth-first enumeration over internal edges with relational pruning.
class Exhaustive {
 public:
  Exhaustive(const TensorNetwork& net, const std::vector<std::uint8_t>& xbits) : net_(net) {
    const int n = net.vertex_count();
    assigned_.assign(static_cast<std::size_t>(n), 0);
    value_.assign(static_cast<std::size_t>(n), 0);
    remaining_.assign(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) {
      for (int p = 0; p < net.degree(v); ++p) {
        const PortRef& r = net.port(v, p);
        if (r.external) {
          set_bit(v, p, xbits[static_cast<std::size_t>(r.edge)]);
        } else {
          ++remaining_[static_cast<std::size_t>(v)];
        }
      }
    }
    order_edges();
  }

  Count run() {
    Count total = 0;
    for (int v = 0; v < net_.vertex_count(); ++v) {
      if (!feasible(v)) return total;
    }
    Count scalar = 1;
    for (int v = 0; v < net_.vertex_count(); ++v) {
      if (remaining_[static_cast<std::size_t>(v)] == 0) scalar *= net_.tensor(v).at(value_[static_cast<std::size_t>(v)]);
    }
    if (sgn(scalar) == 0) return total;
    descend(0, scalar, total);
    return total;
  }

 private:
  void set_bit(int v, int p, std::uint8_t b) {
    const int d = net_.degree(v);
    const std::uint64_t bit = std::uint64_t{1} << (d - 1 - p);
    assigned_[static_cast<std::size_t>(v)] |= bit;
    if (b) {
      value_[static_cast<std::size_t>(v)] |= bit;
    } else {
      value_[static_cast<std::size_t>(v)] &= ~bit;
    }
  }

  void clear_bit(int v, int p) {
    const int d = net_.degree(v);
    const std::uint64_t bit = std::uint64_t{1} << (d - 1 - p);
    assigned_[static_cast<std::size_t>(v)] &= ~bit;
    value_[static_cast<std::size_t>(v)] &= ~bit;
  }

  // Some nonzero entry agrees with the bits fixed so far.
  bool feasible(int v) const {
    const Tensor& t = net_.tensor(v);
    const std::uint64_t mask = assigned_[static_cast<std::size_t>(v)];
    const std::uint64_t val = value_[static_cast<std::size_t>(v)];
    if (t.is_symmetric()) {
      const int ones = std::popcount(val);
      const int free = t.arity() - std::popcount(mask);
      for (int w = ones; w <= ones + free; ++w) {
        if (sgn(t.values()[static_cast<std::size_t>(w)]) != 0) return true;
      }
      return false;
    }
    const auto& table = t.values();
    for (std::uint64_t i = 0; i < table.size(); ++i) {
      if ((i & mask) == val && sgn(table[i]) != 0) return true;
    }
    return false;
  }

  // Visit vertices so that each new one touches as many visited ones as
  // possible; edges are listed when their second endpoint is visited.
  void order_edges() {
    const int n = net_.vertex_count();
    std::vector<int> links(static_cast<std::size_t>(n), 0);
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::vector<bool> listed(static_cast<std::size_t>(net_.edge_count()), false);
    for (int step = 0; step < n; ++step) {
      int best = -1;
      for (int v = 0; v < n; ++v) {
        if (visited[static_cast<std::size_t>(v)]) continue;
        if (best < 0 || links[static_cast<std::size_t>(v)] > links[static_cast<std::size_t>(best)] ||
            (links[static_cast<std::size_t>(v)] == links[static_cast<std::size_t>(best)] &&
             external_degree(v) > external_degree(best))) {
          best = v;
        }
      }
      visited[static_cast<std::size_t>(best)] = true;
      for (int p = 0; p < net_.degree(best); ++p) {
        const PortRef& r = net_.port(best, p);
        if (r.external) continue;
        Endpoint o = net_.opposite(best, p);
        if (visited[static_cast<std::size_t>(o.vertex)] && !listed[static_cast<std::size_t>(r.edge)]) {
          listed[static_cast<std::size_t>(r.edge)] = true;
          order_.push_back(r.edge);
        }
        if (o.vertex != best) ++links[static_cast<std::size_t>(o.vertex)];
      }
    }
  }

  int external_degree(int v) const {
    int k = 0;
    for (const PortRef& r : net_.ports(v)) k += r.external ? 1 : 0;
    return k;
  }

  void descend(std::size_t pos, const Count& partial, Count& total) {
    if (pos == order_.size()) {
      total += partial;
      return;
    }
    const InternalEdge& e = net_.edge(order_[pos]);
    for (std::uint8_t b = 0; b < 2; ++b) {
      set_bit(e.a.vertex, e.a.port, b);
      set_bit(e.b.vertex, e.b.port, b);
      --remaining_[static_cast<std::size_t>(e.a.vertex)];
      --remaining_[static_cast<std::size_t>(e.b.vertex)];
      bool ok = feasible(e.a.vertex) && (e.a.vertex == e.b.vertex || feasible(e.b.vertex));
      if (ok) {
        Count next = partial;
        if (remaining_[static_cast<std::size_t>(e.a.vertex)] == 0) {
          next *= net_.tensor(e.a.vertex).at(value_[static_cast<std::size_t>(e.a.vertex)]);
        }
        if (e.b.vertex != e.a.vertex && remaining_[static_cast<std::size_t>(e.b.vertex)] == 0) {
          next *= net_.tensor(e.b.vertex).at(value_[static_cast<std::size_t>(e.b.vertex)]);
        }
        if (sgn(next) != 0) descend(pos + 1, next, total);
      }
      ++remaining_[static_cast<std::size_t>(e.a.vertex)];
      ++remaining_[static_cast<std::size_t>(e.b.vertex)];
      clear_bit(e.a.vertex, e.a.port);
      clear_bit(e.b.vertex, e.b.port);
    }
  }

  const TensorNetwork& net_;
  std::vector<std::uint64_t> assigned_;
  std::vector<std::uint64_t> value_;
  std::vector<int> remaining_;
  std::vector<int> order_;
};

}  // namespace

Count evaluate_exhaustive(const TensorNetwork& net, const Assignment& ext) {
  for (const Tensor& t : net.tensors()) {
    if (t.arity() > 63 || (!t.is_symmetric() && t.arity() > kMaxDenseArity)) {
      throw Error(ErrorKind::TooLarge, "vertex arity too large for exhaustive evaluation");
    }
  }
  return Exhaustive(net, external_bits(net, ext)).run();
}

}  // namespace tnet
