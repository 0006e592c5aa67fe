#include <algorithm>
#include <numeric>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tnet/bench.hpp"
#include "tnet/engine.hpp"
#include "tnet/error.hpp"
#include "tnet/planarizer.hpp"

using namespace tnet;

namespace {

TensorNetwork simple_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) {
    ++degree[static_cast<std::size_t>(a)];
    ++degree[static_cast<std::size_t>(b)];
  }
  NetworkBuilder nb;
  for (int d : degree) nb.add(Tensor::symmetric(d, std::vector<Count>(static_cast<std::size_t>(d) + 1, Count(1))));
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  for (auto [a, b] : edges) nb.add_edge(a, used[static_cast<std::size_t>(a)]++, b, used[static_cast<std::size_t>(b)]++);
  return nb.build();
}

TensorNetwork complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  }
  return simple_graph(n, e);
}

TensorNetwork k33() {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 3; ++i) {
    for (int j = 3; j < 6; ++j) e.emplace_back(i, j);
  }
  return simple_graph(6, e);
}

Count contract_value(const TensorNetwork& net) { return execute_plan(net, build_plan_greedy(net)).first; }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

}  // namespace

TEST_SUITE("planarizer") {
  TEST_CASE("K5 and K3,3 are not planar") {
    PlanarityResult k5 = check_planarity(complete(5));
    CHECK_FALSE(k5.planar);
    CHECK(k5.rejected_by_edge_bound);
    PlanarityResult k = check_planarity(k33());
    CHECK_FALSE(k.planar);
    CHECK_FALSE(k.rejected_by_edge_bound);
    // The witness is a Kuratowski subdivision: at least the nine edges of K3,3.
    CHECK(k.witness.size() >= 9);
  }

  TEST_CASE("K4 and grids are planar with Euler-consistent embeddings") {
    PlanarityResult k4 = check_planarity(complete(4));
    REQUIRE(k4.planar);
    CHECK(k4.embedding.face_count == 4);
    for (int k = 2; k <= 7; ++k) {
      TensorNetwork g = grid_network(k);
      PlanarityResult r = check_planarity(g);
      REQUIRE(r.planar);
      CHECK(validate_embedding(g, r.embedding));
      CHECK(r.embedding.components == 1);
      CHECK(r.embedding.face_count == (k - 1) * (k - 1) + 1);
    }
  }

  TEST_CASE("parallel edges and self-loops embed") {
    NetworkBuilder b;
    int u = b.add(Tensor::dense(5, std::vector<Count>(32, Count(1))));
    int v = b.add(Tensor::dense(3, std::vector<Count>(8, Count(1))));
    b.add_edge(u, 0, v, 0);
    b.add_edge(u, 1, v, 1);
    b.add_edge(u, 2, v, 2);
    b.add_edge(u, 3, u, 4);
    TensorNetwork net = b.build();
    PlanarityResult r = check_planarity(net);
    REQUIRE(r.planar);
    CHECK(validate_embedding(net, r.embedding));
    // V - E + F = 2 for one component: 2 - 4 + F = 2.
    CHECK(r.embedding.face_count == 4);
  }

  TEST_CASE("a tampered rotation fails validation") {
    TensorNetwork g = grid_network(3);
    PlanarityResult r = check_planarity(g);
    REQUIRE(r.planar);
    PlanarEmbedding bad = r.embedding;
    // Swap two ports of the centre vertex (degree 4) to create a twist.
    auto& rot = bad.rotation[4];
    std::swap(rot[0], rot[1]);
    CHECK_FALSE(validate_embedding(g, bad));
  }

  TEST_CASE("random planar networks are planar") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      RandomPlanarOptions o;
      o.vertices = 4 + static_cast<int>(seed % 20);
      o.max_edges = 3 * o.vertices;
      TensorNetwork net = random_planar_network(o, seed);
      PlanarityResult r = check_planarity(net);
      REQUIRE(r.planar);
      CHECK(validate_embedding(net, r.embedding));
      CHECK(r.embedding.components == oracle::component_count(net));
    }
  }

  TEST_CASE("crossing counts agree with pairwise interleaving") {
    std::mt19937_64 rng(9);
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      TensorNetwork net = oracle::random_network(seed, 3 + static_cast<int>(seed % 8), 4 + static_cast<int>(seed % 14), 0);
      std::vector<int> order(static_cast<std::size_t>(net.vertex_count()));
      std::iota(order.begin(), order.end(), 0);
      std::shuffle(order.begin(), order.end(), rng);
      const std::size_t expect = oracle::chord_crossings(net, order);
      CHECK(count_crossings(net, order) == expect);
      Drawing d = circular_drawing(net, order);
      CHECK(d.crossings.size() == expect);
      auto better = improve_order(net, order);
      CHECK(oracle::chord_crossings(net, better) <= expect);
    }
  }

  TEST_CASE("drawings are deterministic per seed") {
    TensorNetwork net = oracle::random_network(4, 9, 20, 0);
    Drawing a = best_circular_drawing(net, 42);
    Drawing b = best_circular_drawing(net, 42);
    CHECK(a.order == b.order);
    CHECK(a.crossings == b.crossings);
    CHECK(kind_of([] { circular_drawing(oracle::random_network(1, 3, 2, 1), std::uint64_t{0}); }) ==
          ErrorKind::HasExternalEdges);
  }

  TEST_CASE("standard crossing replacement adds nine vertices per crossing and keeps the value") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      TensorNetwork net = oracle::random_network(seed, 4 + static_cast<int>(seed % 4), 6 + static_cast<int>(seed % 7), 0);
      Drawing d = circular_drawing(net, seed);
      TensorNetwork out = replace_crossings(net, d, CrossingVariant::Standard);
      CHECK(out.vertex_count() == net.vertex_count() + 9 * static_cast<int>(d.crossings.size()));
      CHECK(check_planarity(out).planar);
      CHECK(contract_value(out) == oracle::network_value(net));
    }
  }

  TEST_CASE("restricted crossing replacement keeps the value") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      TensorNetwork net = oracle::random_network(seed + 50, 5, 8, 0);
      Drawing d = circular_drawing(net, seed);
      TensorNetwork out = replace_crossings(net, d, CrossingVariant::Restricted);
      CHECK(check_planarity(out).planar);
      CHECK(contract_value(out) == oracle::network_value(net));
    }
  }

  TEST_CASE("K5 and K3,3 become planar") {
    for (const TensorNetwork& net : {complete(5), k33(), complete(6)}) {
      Drawing d = best_circular_drawing(net, 1);
      TensorNetwork out = replace_crossings(net, d, CrossingVariant::Standard);
      PlanarityResult r = check_planarity(out);
      REQUIRE(r.planar);
      CHECK(validate_embedding(out, r.embedding));
      CHECK(contract_value(out) == oracle::network_value(net));
    }
    // Every four points on the circle give one crossing of K5's chords.
    CHECK(best_circular_drawing(complete(5), 0).crossings.size() == 5);
  }

  TEST_CASE("degree reduction keeps the value and bounds the degree") {
    std::mt19937_64 rng(31);
    for (int d = 6; d <= 9; ++d) {
      std::vector<Count> f;
      for (int i = 0; i <= d; ++i) f.emplace_back(static_cast<unsigned long>(rng() % 4));
      NetworkBuilder b;
      int c = b.add(Tensor::symmetric(d, f));
      for (int i = 0; i < d; ++i) {
        int leaf = b.add(Tensor::dense(1, std::vector<Count>{Count(static_cast<unsigned long>(1 + rng() % 3)), Count(static_cast<unsigned long>(rng() % 3))}));
        b.add_edge(c, i, leaf, 0);
      }
      TensorNetwork net = b.build();
      TensorNetwork out = reduce_degree(net);
      CHECK(network_stats(out).max_degree <= 5);
      CHECK(check_planarity(out).planar);
      CHECK(contract_value(out) == oracle::network_value(net));
    }
  }

  TEST_CASE("degree reduction needs symmetric tensors") {
    NetworkBuilder b;
    std::vector<Count> t(64, Count(1));
    t[3] = 2;
    int c = b.add(Tensor::dense(6, t));
    for (int i = 0; i < 6; ++i) b.add_edge(c, i, b.add(Tensor::dense(1, {1, 1})), 0);
    TensorNetwork net = b.build();
    CHECK(kind_of([&] { reduce_degree(net); }) == ErrorKind::NonSymmetricHighDegree);
  }

  TEST_CASE("basis restriction rewrites equalities and disequalities") {
    NetworkBuilder b;
    int e5 = b.add(functions::equality(5));
    int e1 = b.add(functions::equality(1));
    int ne = b.add(functions::disequality2());
    int o = b.add(functions::disjunction(4));
    int e2 = b.add(functions::equality(2));
    b.add_edge(e5, 0, o, 0);
    b.add_edge(e5, 1, o, 1);
    b.add_edge(e5, 2, ne, 0);
    b.add_edge(ne, 1, e2, 0);
    b.add_edge(e2, 1, e5, 3);
    b.add_edge(e5, 4, o, 2);
    b.add_edge(e1, 0, o, 3);
    TensorNetwork net = b.build();
    TensorNetwork out = restrict_function_basis(net);
    for (const Tensor& t : out.tensors()) {
      std::vector<Count> w;
      REQUIRE(t.symmetric_weights(w));
      const bool eq3 = w == std::vector<Count>{1, 0, 0, 1};
      const bool nae3 = w == std::vector<Count>{0, 1, 1, 0};
      const bool ok = eq3 || nae3 || (w.front() == 0 && std::all_of(w.begin() + 1, w.end(), [](const Count& x) { return x == 1; }));
      CHECK(ok);
    }
    CHECK(contract_value(out) == oracle::network_value(net));
  }

  TEST_CASE("outer face rotation") {
    Gadget g = gadgets::build_crossing_gadget();
    CHECK(outer_face_rotation(g.body, g.ports).has_value());
    // N, S, E, W is not a cyclic order of the outer face.
    CHECK_FALSE(outer_face_rotation(g.body, {g.ports[0], g.ports[2], g.ports[1], g.ports[3]}).has_value());
  }
}
