#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tnet/engine.hpp"
#include "tnet/error.hpp"
#include "tnet/gadgets.hpp"
#include "tnet/json_io.hpp"
#include "tnet/planarizer.hpp"

using namespace tnet;
using namespace tnet::gadgets;

namespace {

// Value table of a gadget: the reference sum when small enough, otherwise a
// greedy plan run on the body with every port pinned.
std::vector<Count> gadget_function(const Gadget& g) {
  if (g.body.edge_count() <= 20) return oracle::port_function(g.body, g.ports);
  std::vector<Count> out;
  const int k = g.arity();
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
    TensorNetwork closed = oracle::pin_ports(g.body, g.ports, oracle::bits_of(i, k));
    out.push_back(execute_plan(closed, build_plan_greedy(closed)).first);
  }
  return out;
}

std::vector<Count> dense_values(const Tensor& t) { return t.to_dense().values(); }

std::vector<Count> symmetric_values(int n, const std::vector<Count>& f) {
  std::vector<Count> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) out.push_back(f[static_cast<std::size_t>(oracle::weight(oracle::bits_of(i, n)))]);
  return out;
}

int max_degree(const TensorNetwork& net) {
  int d = 0;
  for (int v = 0; v < net.vertex_count(); ++v) d = std::max(d, net.degree(v));
  return d;
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

void check_relation(const Tensor& t, int arity, bool (*pred)(const std::vector<int>&)) {
  REQUIRE(t.arity() == arity);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << arity); ++i) {
    CHECK(t.at(i) == (pred(oracle::bits_of(i, arity)) ? 1 : 0));
  }
}

}  // namespace

TEST_SUITE("gadgets") {
  TEST_CASE("adder and decoder tables match their defining predicates") {
    check_relation(table_A(), 4, oracle::pred_A);
    check_relation(table_B(), 5, oracle::pred_B);
    check_relation(table_C(), 4, oracle::pred_C);
    check_relation(table_D(), 5, oracle::pred_D);
  }

  TEST_CASE("chain tables") {
    std::mt19937_64 rng(5);
    for (int n = 2; n <= 8; ++n) {
      std::vector<Count> f;
      for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(2 + rng() % 9));
      for (int i = 1; i <= n - 1; ++i) {
        Tensor t = table_chain(i, f, n);
        for (int a = 0; a < 2; ++a) {
          for (int b = 0; b < 2; ++b) CHECK(t.at(static_cast<std::uint64_t>(2 * a + b)) == oracle::chain_entry(i, n, f, a, b));
        }
      }
    }
    std::vector<Count> f(4, Count(1));
    CHECK(kind_of([&] { table_chain(0, f, 3); }) == ErrorKind::IndexOutOfRange);
    CHECK(kind_of([&] { table_chain(3, f, 3); }) == ErrorKind::IndexOutOfRange);
  }

  TEST_CASE("named symmetric tables") {
    CHECK(dense_values(named_table(NamedFunction::Xor3)) == symmetric_values(3, {0, 1, 0, 1}));
    CHECK(dense_values(named_table(NamedFunction::TwoOfThree)) == symmetric_values(3, {0, 0, 1, 0}));
    CHECK(dense_values(named_table(NamedFunction::Neq3)) == symmetric_values(3, {0, 1, 1, 0}));
    CHECK(dense_values(named_table(NamedFunction::Neq2)) == symmetric_values(2, {0, 1, 0}));
    CHECK(dense_values(named_table(NamedFunction::Eq, 4)) == symmetric_values(4, {1, 0, 0, 0, 1}));
    CHECK(dense_values(named_table(NamedFunction::Or, 3)) == symmetric_values(3, {0, 1, 1, 1}));
  }

  TEST_CASE("crossing gadget") {
    Gadget g = build_crossing_gadget();
    CHECK(g.body.vertex_count() == 9);
    CHECK(g.arity() == 4);
    // Ports (N, E, S, W): 1 iff N = S and E = W.
    std::vector<Count> expect;
    for (std::uint64_t i = 0; i < 16; ++i) {
      auto b = oracle::bits_of(i, 4);
      expect.emplace_back(b[0] == b[2] && b[1] == b[3] ? 1 : 0);
    }
    CHECK(dense_values(crossing_tensor()) == expect);
    CHECK(gadget_function(g) == expect);
    CHECK(verify_gadget(g, crossing_tensor()));
    CHECK(ports_on_outer_face(g));
  }

  TEST_CASE("two-of-three and xor3 gadgets") {
    Gadget t = build_two_of_three();
    CHECK(gadget_function(t) == symmetric_values(3, {0, 0, 1, 0}));
    CHECK(ports_on_outer_face(t));
    Gadget x = build_xor3_from_two_of_three();
    CHECK(gadget_function(x) == symmetric_values(3, {0, 1, 0, 1}));
    CHECK(ports_on_outer_face(x));
  }

  TEST_CASE("equality chains and the disequality gadget") {
    for (int k = 2; k <= 7; ++k) {
      Gadget g = build_eq_chain(k);
      std::vector<Count> w(static_cast<std::size_t>(k) + 1, Count(0));
      w.front() = 1;
      w.back() = 1;
      CHECK(gadget_function(g) == symmetric_values(k, w));
      CHECK(g.body.vertex_count() == std::max(k - 2, 1));
      CHECK(ports_on_outer_face(g));
    }
    CHECK(kind_of([] { build_eq_chain(1); }) == ErrorKind::BadArity);
    Gadget n = build_neq2();
    CHECK(gadget_function(n) == symmetric_values(2, {0, 1, 0}));
  }

  TEST_CASE("restricted crossing gadget") {
    Gadget g = build_restricted_crossing_gadget();
    CHECK(gadget_function(g) == dense_values(crossing_tensor()));
    CHECK(ports_on_outer_face(g));
    const Tensor eq3 = functions::equality(3);
    const Tensor or2 = functions::disjunction(2);
    const Tensor nae3 = functions::not_all_equal3();
    for (const Tensor& t : g.body.tensors()) {
      const bool allowed = t.to_dense() == eq3.to_dense() || t.to_dense() == or2.to_dense() || t.to_dense() == nae3.to_dense();
      CHECK(allowed);
    }
  }

  TEST_CASE("symmetric gadget realises its weight vector") {
    std::mt19937_64 rng(17);
    for (int n = 1; n <= 8; ++n) {
      for (int rep = 0; rep < 3; ++rep) {
        std::vector<Count> f;
        for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(rng() % 7));
        Gadget g = build_symmetric_gadget(f);
        CHECK(g.arity() == n);
        CHECK(gadget_function(g) == symmetric_values(n, f));
        CHECK(max_degree(g.body) <= 5);
        CHECK(g.body.vertex_count() <= 12 * n);
        CHECK(ports_on_outer_face(g));
      }
    }
    CHECK(kind_of([] { build_symmetric_gadget({Count(1)}); }) == ErrorKind::EmptyWeights);
  }

  TEST_CASE("symmetric gadget with large weights") {
    std::vector<Count> f{Count("98765432109876543210"), 0, Count("5"), Count("340282366920938463463374607431768211456")};
    CHECK(gadget_function(build_symmetric_gadget(f)) == symmetric_values(3, f));
  }

  TEST_CASE("verify_gadget rejects a wrong target") {
    Gadget g = build_crossing_gadget();
    std::vector<Count> t = dense_values(crossing_tensor());
    t[5] += 1;
    CHECK_FALSE(verify_gadget(g, Tensor::dense(4, t)));
    CHECK_FALSE(verify_gadget(build_two_of_three(), functions::parity3()));
  }

  TEST_CASE("gadget JSON round trip") {
    Gadget g = build_two_of_three();
    Gadget back = gadget_from_json(gadget_to_json(g));
    CHECK(back.ports == g.ports);
    CHECK(gadget_function(back) == gadget_function(g));
  }

  TEST_CASE("splicing a gadget in place of its vertex keeps the value") {
    std::mt19937_64 rng(23);
    for (int n = 2; n <= 6; ++n) {
      std::vector<Count> f;
      for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(rng() % 4));
      // A star: one symmetric centre, n leaves with random unary tables.
      NetworkBuilder b;
      int c = b.add(Tensor::symmetric(n, f));
      for (int i = 0; i < n; ++i) {
        int leaf = b.add(Tensor::dense(1, std::vector<Count>{Count(static_cast<unsigned long>(rng() % 5)), Count(static_cast<unsigned long>(rng() % 5))}));
        b.add_edge(c, i, leaf, 0);
      }
      TensorNetwork net = b.build();
      TensorNetwork out = splice_gadgets(net, {}, [&](int v) -> std::optional<Gadget> {
        if (v != c) return std::nullopt;
        return build_symmetric_gadget(f);
      });
      CHECK(execute_plan(out, build_plan_greedy(out)).first == oracle::network_value(net));
    }
  }
}
