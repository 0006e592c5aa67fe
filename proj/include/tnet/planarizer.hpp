#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tnet/gadgets.hpp"
#include "tnet/network.hpp"

namespace tnet {

// ---------------------------------------------------------------------------
// Planarity

/// Rotation system: for every vertex, its ports in cyclic order. External
/// ports are listed too (as pendant ends) but do not take part in faces.
struct PlanarEmbedding {
  std::vector<std::vector<int>> rotation;
  int face_count = 0;   // with a single shared outer face: V - E + F = 1 + C
  int components = 0;   // connected components, isolated vertices included
};

struct PlanarityResult {
  bool planar = false;
  PlanarEmbedding embedding;
  // Edge list (vertex pairs) of a Kuratowski subdivision when not planar,
  // empty when rejected by the |E| <= 3|V| - 6 bound alone.
  std::vector<std::pair<int, int>> witness;
  bool rejected_by_edge_bound = false;
};

PlanarityResult check_planarity(const TensorNetwork& net);

/// Traces the faces of the rotation system and checks V - E + F = 2 on each
/// connected component with at least one edge. Fills face_count/components.
bool validate_embedding(const TensorNetwork& net, PlanarEmbedding& emb);

/// Rotation system in which the external edges listed in `ports` lie on one
/// face in that cyclic order; nullopt if no such planar embedding exists.
std::optional<std::vector<std::vector<int>>> outer_face_rotation(
    const TensorNetwork& body, const std::vector<std::string>& ports);

bool ports_on_outer_face(const Gadget& g);

// ---------------------------------------------------------------------------
// Circular drawings

struct CrossingPoint {
  int other_edge = -1;
  double t = 0.0;  // position along the chord, 0 at edge.a, 1 at edge.b
};

/// Vertices in convex position in the given cyclic order, edges as chords.
/// Two chords cross iff their endpoint positions interleave; parallel chords
/// nest and self-loops are drawn without crossings.
struct Drawing {
  std::vector<int> order;     // order[pos] = vertex
  std::vector<int> position;  // position[vertex]
  std::vector<std::vector<CrossingPoint>> along;  // per edge, in chord order
  std::vector<std::pair<int, int>> crossings;     // (e1 < e2), sorted
};

/// Crossings of the chord drawing for a fixed order, by interleaving alone.
std::size_t count_crossings(const TensorNetwork& net, const std::vector<int>& order);

Drawing circular_drawing(const TensorNetwork& net, const std::vector<int>& order);
/// Seeded random cyclic order.
Drawing circular_drawing(const TensorNetwork& net, std::uint64_t seed);

inline constexpr int kDefaultDrawingTrials = 8;

/// Local search on a cyclic order: each vertex in turn moves to the slot
/// where its chords cross the fewest others. Never increases crossings.
std::vector<int> improve_order(const TensorNetwork& net, std::vector<int> order, int max_passes = 20);

/// Fewest crossings among `trials` seeded random orders and the depth-first
/// order of the network, each first improved by improve_order when
/// `improve` is set; ties go to the earliest candidate.
Drawing best_circular_drawing(const TensorNetwork& net, std::uint64_t seed,
                              int trials = kDefaultDrawingTrials, bool improve = true);

// ---------------------------------------------------------------------------
// Passes

enum class CrossingVariant { Standard, Restricted };

CrossingVariant parse_variant(const std::string& name);

/// Substitutes a crossing gadget at every crossing of the drawing. Original
/// vertices keep their ids; gadget bodies follow in crossing order.
TensorNetwork replace_crossings(const TensorNetwork& net, const Drawing& drawing,
                                CrossingVariant variant);

inline constexpr int kDefaultDegreeThreshold = 6;

/// Replaces every vertex of degree >= threshold by the symmetric-function
/// gadget, ports spliced in rotation order when the network is planar.
TensorNetwork reduce_degree(const TensorNetwork& net, int threshold = kDefaultDegreeThreshold);

/// Rewrites equalities of every arity and the binary disequality over
/// {=3, not-all-equal-3}: =k becomes a chain of =3, =2 a plain edge, =1 an
/// =3 closed on itself, [0,1,0] the two-vertex disequality gadget.
TensorNetwork restrict_function_basis(const TensorNetwork& net);

}  // namespace tnet
