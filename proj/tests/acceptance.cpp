// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <algorithm>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tnet/bench.hpp"
#include "tnet/cnf.hpp"
#include "tnet/engine.hpp"
#include "tnet/gadgets.hpp"
#include "tnet/planarizer.hpp"

using namespace tnet;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// First failure wins the detail slot.
void require(Outcome& o, bool ok, const std::string& what) {
  if (ok) return;
  if (o.pass) o.detail = what;
  o.pass = false;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Contracts the body of `g` with every port pinned, reusing one plan for all
// 2^k pinnings since they share the same structure.
std::vector<Count> pinned_function(const Gadget& g) {
  const int k = g.arity();
  TensorNetwork first = oracle::pin_ports(g.body, g.ports, std::vector<int>(static_cast<std::size_t>(k), 0));
  const ContractionPlan plan = build_plan_greedy(first);
  std::vector<Count> out;
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << k); ++i) {
    TensorNetwork closed = oracle::pin_ports(g.body, g.ports, oracle::bits_of(i, k));
    out.push_back(execute_plan(closed, plan).first);
  }
  return out;
}

int max_degree(const TensorNetwork& net) {
  int d = 0;
  for (int v = 0; v < net.vertex_count(); ++v) d = std::max(d, net.degree(v));
  return d;
}

Outcome gadget_equivalence() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(1);
  int built = 0;
  for (int n = 1; n <= 8; ++n) {
    for (int rep = 0; rep < 50; ++rep) {
      std::vector<Count> f;
      for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(rng() % 1000));
      Gadget g = gadgets::build_symmetric_gadget(f);
      const std::vector<Count> got = pinned_function(g);
      bool same = true;
      for (std::uint64_t x = 0; x < got.size(); ++x) {
        same = same && got[x] == f[static_cast<std::size_t>(oracle::weight(oracle::bits_of(x, n)))];
      }
      const std::string tag = "n=" + std::to_string(n) + " rep " + std::to_string(rep);
      require(o, same, tag + ": function differs");
      require(o, max_degree(g.body) <= 5, tag + ": degree above 5");
      require(o, g.body.vertex_count() <= 12 * n, tag + ": more than 12n vertices");
      require(o, ports_on_outer_face(g), tag + ": not planar with ports outside");
      ++built;
    }
  }
  const double s = seconds_since(t0);
  require(o, s < 120.0, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = std::to_string(built) + " gadgets, " + std::to_string(s).substr(0, 5) + " s";
  return o;
}

Outcome crossing_gadgets() {
  Outcome o;
  std::vector<Count> expect;
  for (std::uint64_t i = 0; i < 16; ++i) {
    auto b = oracle::bits_of(i, 4);
    expect.emplace_back(b[0] == b[2] && b[1] == b[3] ? 1 : 0);
  }
  Gadget std_g = gadgets::build_crossing_gadget();
  require(o, oracle::port_function(std_g.body, std_g.ports) == expect, "standard gadget table differs");
  require(o, std_g.body.vertex_count() == 9, "standard gadget is not 9 vertices");
  Gadget res = gadgets::build_restricted_crossing_gadget();
  require(o, pinned_function(res) == expect, "restricted gadget table differs");
  const Tensor eq3 = functions::equality(3).to_dense();
  const Tensor or2 = functions::disjunction(2).to_dense();
  const Tensor nae3 = functions::not_all_equal3().to_dense();
  for (const Tensor& t : res.body.tensors()) {
    const Tensor d = t.to_dense();
    require(o, d == eq3 || d == or2 || d == nae3, "restricted gadget uses a function outside its basis");
  }
  require(o, ports_on_outer_face(std_g) && ports_on_outer_face(res), "ports not on the outer face");
  if (o.pass) o.detail = "standard 9 vertices, restricted " + std::to_string(res.body.vertex_count()) + " vertices";
  return o;
}

void check_table(Outcome& o, const std::string& name, const Tensor& t, int arity,
                 const std::function<bool(const std::vector<int>&)>& pred) {
  require(o, t.arity() == arity, name + ": arity");
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << arity); ++i) {
    require(o, t.at(i) == (pred(oracle::bits_of(i, arity)) ? 1 : 0), name + ": row " + std::to_string(i));
  }
}

Outcome intermediate_tables() {
  Outcome o;
  check_table(o, "A", gadgets::table_A(), 4, oracle::pred_A);
  check_table(o, "B", gadgets::table_B(), 5, oracle::pred_B);
  check_table(o, "C", gadgets::table_C(), 4, oracle::pred_C);
  check_table(o, "D", gadgets::table_D(), 5, oracle::pred_D);
  auto weight_is = [](std::vector<int> ws) {
    return [ws](const std::vector<int>& b) { return std::find(ws.begin(), ws.end(), oracle::weight(b)) != ws.end(); };
  };
  check_table(o, "xor3", gadgets::named_table(gadgets::NamedFunction::Xor3), 3, weight_is({1, 3}));
  check_table(o, "two-of-three", gadgets::named_table(gadgets::NamedFunction::TwoOfThree), 3, weight_is({2}));
  check_table(o, "neq3", gadgets::named_table(gadgets::NamedFunction::Neq3), 3, weight_is({1, 2}));
  check_table(o, "neq2", gadgets::named_table(gadgets::NamedFunction::Neq2), 2, weight_is({1}));
  std::mt19937_64 rng(3);
  int chains = 0;
  for (int n = 2; n <= 8; ++n) {
    std::vector<Count> f;
    for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(2 + rng() % 50));
    for (int i = 1; i <= n - 1; ++i) {
      Tensor t = gadgets::table_chain(i, f, n);
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          require(o, t.at(static_cast<std::uint64_t>(2 * a + b)) == oracle::chain_entry(i, n, f, a, b),
                  "chain n=" + std::to_string(n) + " i=" + std::to_string(i));
        }
      }
      ++chains;
    }
  }
  if (o.pass) o.detail = "A B C D, 4 named functions, " + std::to_string(chains) + " chain tables";
  return o;
}

Outcome contraction_correctness() {
  Outcome o;
  int cases = 0;
  for (std::uint64_t seed = 0; cases < 200; ++seed) {
    RandomPlanarOptions opt;
    opt.vertices = 3 + static_cast<int>(seed % 8);
    opt.max_edges = std::min(14, 2 * opt.vertices + static_cast<int>(seed % 4));
    TensorNetwork net = random_planar_network(opt, seed);
    if (net.edge_count() > 14) continue;
    const Count expect = oracle::network_value(net);
    const std::string tag = "seed " + std::to_string(seed);
    for (Strategy s : {Strategy::Separator, Strategy::Greedy, Strategy::Brute}) {
      require(o, contract_full(net, s).first == expect, tag + ": " + to_string(s) + " differs");
    }
    ++cases;
  }
  if (o.pass) o.detail = std::to_string(cases) + " networks, three strategies and the reference agree";
  return o;
}

Outcome end_to_end_counting() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(5);
  int cases = 0;
  int max_n = 0;
  int peak = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    // n in 4..12, m in n..5n/4, d in 2..4. The greedy planner keeps these
    // under rank 22; separator plans of the planarized networks run higher.
    const int n = 4 + static_cast<int>(rng() % 9);
    const int m = n + static_cast<int>(rng() % static_cast<std::uint64_t>(n / 4 + 1));
    const int d = 2 + static_cast<int>(rng() % 3);
    CnfFormula f = random_cnf(n, m, std::min(d, n), seed);
    const Count expect = brute_count(f);
    const std::string tag = "seed " + std::to_string(seed) + " n=" + std::to_string(n);
    require(o, expect == oracle::count_models(f.num_vars, f.clauses), tag + ": brute count differs from reference");
    for (CrossingVariant v : {CrossingVariant::Standard, CrossingVariant::Restricted}) {
      CountOptions opt;
      opt.variant = v;
      opt.seed = seed;
      opt.strategy = Strategy::Greedy;
      try {
        CountResult r = count_models(f, opt);
        const std::string vt = tag + (v == CrossingVariant::Standard ? " standard" : " restricted");
        require(o, r.count == expect, vt + ": count differs");
        peak = std::max(peak, r.report.stats.max_rank);
        require(o, r.report.planarized_is_planar, vt + ": planarized network not planar");
        require(o, r.report.final_is_planar, vt + ": final network not planar");
        if (v == CrossingVariant::Restricted) require(o, r.report.basis_restricted, vt + ": basis not restricted");
      } catch (const std::exception& e) {
        require(o, false, tag + ": " + e.what());
      }
    }
    max_n = std::max(max_n, n);
    ++cases;
  }
  if (o.pass) {
    o.detail = std::to_string(cases) + " formulas up to n=" + std::to_string(max_n) + ", both variants, peak rank " +
               std::to_string(peak) + ", " +
               std::to_string(seconds_since(t0)).substr(0, 5) + " s";
  }
  return o;
}

Outcome scaling_law() {
  Outcome o;
  const auto t0 = Clock::now();
  std::vector<std::pair<double, double>> points;
  std::ostringstream ranks;
  for (int k : {4, 6, 8, 10, 12, 16}) {
    TensorNetwork net = grid_network(k);
    const int n = k * k;
    try {
      ContractionPlan plan = build_plan_separator(net);
      require(o, plan.largest_separator <= separator_size_bound(n), "N=" + std::to_string(n) + ": separator too large");
      PlanarityResult pr = check_planarity(net);
      SeparatorResult top = planar_separator(net, pr.embedding);
      AdjacencyGraph g = AdjacencyGraph::of(net);
      require(o, is_valid_separator(g, top), "N=" + std::to_string(n) + ": top separator invalid");
      points.emplace_back(n, plan.max_rank());
      ranks << (ranks.tellp() > 0 ? " " : "") << plan.max_rank();
    } catch (const std::exception& e) {
      require(o, false, "N=" + std::to_string(n) + ": " + e.what());
    }
  }
  const double slope = loglog_slope(points);
  require(o, slope >= 0.4 && slope <= 0.6, "slope " + std::to_string(slope));
  const double s = seconds_since(t0);
  require(o, s < 300.0, "took " + std::to_string(s) + " s");
  if (o.pass) o.detail = "ranks " + ranks.str() + ", slope " + std::to_string(slope).substr(0, 5);
  return o;
}

Outcome size_accounting() {
  Outcome o;
  int crossings = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    CnfFormula f = random_cnf(4 + static_cast<int>(seed % 10), 6 + static_cast<int>(seed % 12), 3, seed);
    CnfNetwork cn = cnf_to_network(f);
    const TensorNetwork& net = cn.net;
    Drawing d = best_circular_drawing(net, seed);
    TensorNetwork planar = replace_crossings(net, d, CrossingVariant::Standard);
    const long c = static_cast<long>(d.crossings.size());
    require(o, planar.vertex_count() == net.vertex_count() + 9 * c, "seed " + std::to_string(seed) + ": not 9 per crossing");
    TensorNetwork final_net = reduce_degree(planar);
    const long e = net.edge_count();
    const long bound = net.vertex_count() + 9 * (e * (e - 1) / 2);
    require(o, final_net.vertex_count() <= bound, "seed " + std::to_string(seed) + ": pipeline size above bound");
    crossings += static_cast<int>(c);
  }
  if (o.pass) o.detail = "60 incidence networks, " + std::to_string(crossings) + " crossings";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"1 symmetric gadget equivalence", gadget_equivalence},
      {"2 crossing gadgets", crossing_gadgets},
      {"3 intermediate tables", intermediate_tables},
      {"4 contraction strategies agree", contraction_correctness},
      {"5 end-to-end model counting", end_to_end_counting},
      {"6 grid scaling law", scaling_law},
      {"7 size accounting", size_accounting},
  };
  bool all = true;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << c.name << ": " << o.detail << std::endl;
  }
  return all ? 0 : 1;
}
