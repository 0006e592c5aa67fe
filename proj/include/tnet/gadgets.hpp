#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tnet/network.hpp"

namespace tnet {

/// A network fragment standing in for one tensor: `ports` lists the body's
/// external labels in the order of the target tensor's inputs (and, for every
/// builder here, in cyclic order around the outer face).
struct Gadget {
  TensorNetwork body;
  std::vector<std::string> ports;

  int arity() const { return static_cast<int>(ports.size()); }
};

namespace gadgets {

enum class NamedFunction { A, B, C, D, Eq, Neq2, Neq3, Or, Xor3, TwoOfThree };

// Half adder (u, h, I1, I2): 2u + h = I1 + I2.
Tensor table_A();
// Full adder (u, h1, h2, I1, I2): 2u + h2 = I1 + I2 + h1.
Tensor table_B();
// Last decoder cell (u, h, o1, o2): o1 = u + h, o2 = u.
Tensor table_C();
// Decoder cell (u, h1, h2, o1, o2).
Tensor table_D();
// Chain vertex i (1 <= i <= n-1) over unary wires (o_i, o_{i+1}); f has n+1
// weights.
Tensor table_chain(int i, const std::vector<Count>& f, int n);

// Tables with a free arity take it from `arity` (Eq, Or).
Tensor named_table(NamedFunction fn, int arity = 0);

/// Degree-5 planar realisation of the symmetric function f = [f_0..f_n]:
/// counter tree -> unary decoder -> weighting chain. Ports "x0".."x{n-1}".
Gadget build_symmetric_gadget(const std::vector<Count>& f);

/// Nine-vertex crossing: =3 corners carry the ports N, E, S, W; XOR3 on the
/// sides; =4 in the centre. Value 1 iff N = S and E = W.
Gadget build_crossing_gadget();

/// The 16-entry target of the crossing gadgets, ports (N, E, S, W).
Tensor crossing_tensor();

/// [0,0,1,0] from one not-all-equal hub, three =4 copies and three OR2 checks.
Gadget build_two_of_three();

/// [0,1,0,1] from a triangle of three [0,0,1,0] vertices whose inputs pass
/// through disequalities.
Gadget build_xor3_from_two_of_three();

/// =k as a path of k-2 copies of =3; k = 2 is the identity wire [1,0,0,1].
Gadget build_eq_chain(int k);

/// [0,1,0] from a not-all-equal vertex and an =3 sharing two edges.
Gadget build_neq2();

/// Crossing gadget over {=3, OR2, not-all-equal-3} only.
Gadget build_restricted_crossing_gadget();

/// Every port assignment contracts to the target entry. Uses plain
/// enumeration up to `brute_cap` internal edges and pruned exhaustive
/// enumeration above it.
bool verify_gadget(const Gadget& g, const Tensor& target, int brute_cap = kDefaultBruteCap);

/// Replaces every vertex accepted by `pick` by the returned gadget, splicing
/// the gadget ports in the vertex's rotation order so a planar body with
/// ports on its outer face stays planar. `rotation[v]` lists the ports of v
/// cyclically; vertices without a rotation fall back to port order.
TensorNetwork splice_gadgets(const TensorNetwork& net,
                             const std::vector<std::vector<int>>& rotation,
                             const std::function<std::optional<Gadget>(int)>& pick);

}  // namespace gadgets

}  // namespace tnet
