// Command-line front end: one subcommand per pipeline stage.
//
// Exit codes: 0 success, 1 usage or unreadable input, 2 computation error.

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tnet/bench.hpp"
#include "tnet/cnf.hpp"
#include "tnet/engine.hpp"
#include "tnet/error.hpp"
#include "tnet/gadgets.hpp"
#include "tnet/json_io.hpp"
#include "tnet/planarizer.hpp"

namespace {

using namespace tnet;

constexpr int kExitUsage = 1;
constexpr int kExitCompute = 2;

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

long millis(std::chrono::nanoseconds t) { return std::chrono::duration_cast<std::chrono::milliseconds>(t).count(); }

nlohmann::json stats_json(const Count& value, const ContractionStats& stats) {
  return {{"value", value.get_str()},
          {"max_rank", stats.max_rank},
          {"merges", stats.merges},
          {"wall_ms", millis(stats.wall_time)},
          {"table_entries_peak", stats.table_entries_peak}};
}

const std::vector<std::string> kStrategies{"separator", "greedy", "brute"};
const std::vector<std::string> kVariants{"standard", "restricted"};

// contract ------------------------------------------------------------------

struct ContractArgs {
  std::string file;
  std::string strategy = "separator";
  std::string stats_json;
  int rank_cap = kDefaultRankCap;
};

int run_contract(const ContractArgs& a) {
  TensorNetwork net = read_network_file(a.file);
  ContractOptions opt;
  opt.rank_cap = a.rank_cap;
  auto [value, stats] = contract_full(net, parse_strategy(a.strategy), opt);
  std::cout << value.get_str() << "\n";
  if (!a.stats_json.empty()) write_text_file(a.stats_json, stats_json(value, stats).dump(2) + "\n");
  return 0;
}

// count ---------------------------------------------------------------------

struct CountArgs {
  std::string file;
  std::string strategy = "separator";
  std::string variant = "standard";
  std::uint64_t seed = 0;
  int trials = kDefaultDrawingTrials;
  int rank_cap = kDefaultRankCap;
  bool oracle = false;
  bool strict = false;
  std::string stats_json;
};

int run_count(const CountArgs& a) {
  CnfFormula f = parse_dimacs(read_text(a.file), a.strict);
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << "\n";
  CountOptions opt;
  opt.strategy = parse_strategy(a.strategy);
  opt.variant = parse_variant(a.variant);
  opt.seed = a.seed;
  opt.trials = a.trials;
  opt.contract.rank_cap = a.rank_cap;
  CountResult r = count_models(f, opt);
  if (r.unused_vars > 0) {
    std::cerr << "note: " << r.unused_vars << " unused variable(s), network value " << r.network_value.get_str()
              << " multiplied by 2^" << r.unused_vars << "\n";
  }
  std::cerr << "pipeline: " << r.report.original_vertices << " vertices, " << r.report.crossings << " crossings, "
            << r.report.final_vertices << " vertices after planarization, max rank " << r.report.stats.max_rank
            << "\n";
  if (a.oracle) {
    Count expected = brute_count(f);
    if (expected != r.count) {
      std::cerr << "oracle mismatch: pipeline " << r.count.get_str() << ", enumeration " << expected.get_str() << "\n";
      return kExitCompute;
    }
  }
  std::cout << r.count.get_str() << "\n";
  if (!a.stats_json.empty()) {
    nlohmann::json j = stats_json(r.count, r.report.stats);
    j["crossings"] = r.report.crossings;
    j["final_vertices"] = r.report.final_vertices;
    j["unused_vars"] = r.unused_vars;
    write_text_file(a.stats_json, j.dump(2) + "\n");
  }
  return 0;
}

// planarize / reduce-degree -------------------------------------------------

struct PassArgs {
  std::string file;
  std::string output;
  std::string variant = "standard";
  std::uint64_t seed = 0;
  int trials = kDefaultDrawingTrials;
  int threshold = kDefaultDegreeThreshold;
};

int run_planarize(const PassArgs& a) {
  TensorNetwork net = read_network_file(a.file);
  Drawing d = best_circular_drawing(net, a.seed, a.trials);
  TensorNetwork out = replace_crossings(net, d, parse_variant(a.variant));
  std::cerr << d.crossings.size() << " crossings, " << out.vertex_count() << " vertices\n";
  emit(a.output, network_to_json(out, 2) + "\n");
  return 0;
}

int run_reduce_degree(const PassArgs& a) {
  TensorNetwork net = read_network_file(a.file);
  TensorNetwork out = parse_variant(a.variant) == CrossingVariant::Restricted ? restrict_function_basis(net)
                                                                             : reduce_degree(net, a.threshold);
  emit(a.output, network_to_json(out, 2) + "\n");
  return 0;
}

// verify-gadgets ------------------------------------------------------------

struct GadgetCase {
  std::string name;
  Gadget gadget;
  Tensor target;
};

std::vector<GadgetCase> gadget_suite(std::uint64_t seed) {
  using namespace gadgets;
  std::vector<GadgetCase> out;
  out.push_back({"crossing", build_crossing_gadget(), crossing_tensor()});
  out.push_back({"restricted-crossing", build_restricted_crossing_gadget(), crossing_tensor()});
  out.push_back({"xor3", build_xor3_from_two_of_three(), functions::parity3()});
  out.push_back({"two-of-three", build_two_of_three(), functions::two_of_three()});
  out.push_back({"neq2", build_neq2(), functions::disequality2()});
  for (int k = 2; k <= 6; ++k) out.push_back({"eq-chain k=" + std::to_string(k), build_eq_chain(k), functions::equality(k)});
  std::mt19937_64 rng(seed);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Count> f;
    for (int i = 0; i <= n; ++i) f.emplace_back(static_cast<unsigned long>(rng() % 5));
    out.push_back({"symmetric n=" + std::to_string(n), build_symmetric_gadget(f), Tensor::symmetric(n, f)});
  }
  return out;
}

// Test hook: the named row is checked against a target with one entry bumped.
Tensor corrupt(const Tensor& t) {
  Tensor d = t.to_dense();
  std::vector<Count> table = d.values();
  table.front() += 1;
  return Tensor::dense(d.arity(), std::move(table));
}

int run_verify_gadgets(std::uint64_t seed, const std::string& inject) {
  bool all = true;
  bool injected = inject.empty();
  std::cout << std::left << std::setw(22) << "gadget" << std::setw(10) << "vertices" << std::setw(10) << "max_deg"
            << std::setw(8) << "planar" << "result\n";
  for (auto& c : gadget_suite(seed)) {
    Tensor target = c.target;
    if (c.name == inject) {
      target = corrupt(target);
      injected = true;
    }
    const bool ok = gadgets::verify_gadget(c.gadget, target);
    const bool planar = ports_on_outer_face(c.gadget);
    all = all && ok && planar;
    std::cout << std::setw(22) << c.name << std::setw(10) << c.gadget.body.vertex_count() << std::setw(10)
              << network_stats(c.gadget.body).max_degree << std::setw(8) << (planar ? "yes" : "no")
              << (ok && planar ? "PASS" : "FAIL") << "\n";
  }
  if (!injected) {
    std::cerr << "no gadget named '" << inject << "'\n";
    return kExitUsage;
  }
  return all ? 0 : kExitCompute;
}

// bench ---------------------------------------------------------------------

struct BenchArgs {
  std::string family = "grid";
  std::vector<int> sizes;
  std::uint64_t seed = 0;
  std::string strategy = "separator";
  int rank_cap = kDefaultRankCap;
  bool no_timing = false;
  std::string output;
};

int run_bench_cmd(const BenchArgs& a) {
  BenchOptions opt;
  opt.family = parse_family(a.family);
  opt.sizes = a.sizes;
  if (opt.sizes.empty()) {
    switch (opt.family) {
      case BenchFamily::Grid: opt.sizes = {16, 36, 64, 100, 144, 256}; break;
      case BenchFamily::RandomPlanar: opt.sizes = {16, 32, 64, 128, 256}; break;
      case BenchFamily::Cnf: opt.sizes = {4, 6, 8, 10}; break;
    }
  }
  opt.seed = a.seed;
  opt.strategy = parse_strategy(a.strategy);
  opt.rank_cap = a.rank_cap;
  opt.timing = !a.no_timing;
  BenchReport r = run_bench(opt);
  emit(a.output, r.csv());
  std::cerr << "slope " << std::setprecision(4) << r.slope << " over " << r.fitted_points << " sizes\n";
  return 0;
}

int map_error(const Error& e) {
  std::cerr << "error: " << e.what() << "\n";
  return e.kind() == ErrorKind::Io ? kExitUsage : kExitCompute;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tensor network contraction and model counting over planar networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  ContractArgs ca;
  auto* contract = app.add_subcommand("contract", "Contract a closed network (JSON) to its value");
  contract->add_option("file", ca.file, "Network JSON")->required();
  contract->add_option("--strategy", ca.strategy, "separator|greedy|brute")->check(CLI::IsMember(kStrategies));
  contract->add_option("--stats-json", ca.stats_json, "Write contraction statistics here");
  contract->add_option("--rank-cap", ca.rank_cap, "Largest intermediate rank allowed")->check(CLI::Range(1, 62));

  CountArgs co;
  auto* count = app.add_subcommand("count", "Count the models of a DIMACS CNF formula");
  count->add_option("file", co.file, "DIMACS cnf file")->required();
  count->add_option("--strategy", co.strategy, "separator|greedy|brute")->check(CLI::IsMember(kStrategies));
  count->add_option("--variant", co.variant, "standard|restricted")->check(CLI::IsMember(kVariants));
  count->add_option("--seed", co.seed, "Drawing seed");
  count->add_option("--trials", co.trials, "Random drawings tried")->check(CLI::PositiveNumber);
  count->add_option("--rank-cap", co.rank_cap, "Largest intermediate rank allowed")->check(CLI::Range(1, 62));
  count->add_flag("--oracle", co.oracle, "Also enumerate assignments and require agreement");
  count->add_flag("--strict", co.strict, "Treat a wrong header clause count as an error");
  count->add_option("--stats-json", co.stats_json, "Write pipeline statistics here");

  PassArgs pa;
  auto* planarize = app.add_subcommand("planarize", "Replace the crossings of a circular drawing by gadgets");
  planarize->add_option("file", pa.file, "Network JSON")->required();
  planarize->add_option("-o,--output", pa.output, "Output JSON (default stdout)");
  planarize->add_option("--variant", pa.variant, "standard|restricted")->check(CLI::IsMember(kVariants));
  planarize->add_option("--seed", pa.seed, "Drawing seed");
  planarize->add_option("--trials", pa.trials, "Random drawings tried")->check(CLI::PositiveNumber);

  PassArgs ra;
  auto* reduce = app.add_subcommand("reduce-degree", "Expand high-degree symmetric vertices into gadgets");
  reduce->add_option("file", ra.file, "Network JSON")->required();
  reduce->add_option("-o,--output", ra.output, "Output JSON (default stdout)");
  reduce->add_option("--threshold", ra.threshold, "Smallest degree that is expanded")->check(CLI::Range(2, 64));
  reduce->add_option("--variant", ra.variant, "standard (symmetric gadgets) | restricted (basis rewrite)")
      ->check(CLI::IsMember(kVariants));

  std::uint64_t gadget_seed = 0;
  std::string inject;
  auto* verify = app.add_subcommand("verify-gadgets", "Check every gadget against its target tensor");
  verify->add_option("--seed", gadget_seed, "Seed for the symmetric weight vectors");
  verify->add_option("--inject-fault", inject, "Test mode: corrupt the target of the named gadget")
      ->group("");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Measure plan ranks over a family of networks");
  bench->add_option("--family", ba.family, "grid|random-planar|cnf")
      ->check(CLI::IsMember({"grid", "random-planar", "cnf"}));
  bench->add_option("--sizes", ba.sizes, "Sizes N (grid: perfect squares)")->delimiter(',');
  bench->add_option("--seed", ba.seed, "Instance seed");
  bench->add_option("--strategy", ba.strategy, "separator|greedy")->check(CLI::IsMember({"separator", "greedy"}));
  bench->add_option("--rank-cap", ba.rank_cap, "Rows above this rank are marked, not run")->check(CLI::Range(1, 62));
  bench->add_flag("--no-timing", ba.no_timing, "Write 0 for wall_ms so reruns are byte-identical");
  bench->add_option("-o,--output", ba.output, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*contract) return run_contract(ca);
    if (*count) return run_count(co);
    if (*planarize) return run_planarize(pa);
    if (*reduce) return run_reduce_degree(ra);
    if (*verify) return run_verify_gadgets(gadget_seed, inject);
    if (*bench) return run_bench_cmd(ba);
  } catch (const Error& e) {
    return map_error(e);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kExitCompute;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitUsage;
}
