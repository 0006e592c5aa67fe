#include <functional>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tnet/cnf.hpp"
#include "tnet/error.hpp"

using namespace tnet;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Io;
}

Count count_of(const std::string& text, Strategy s = Strategy::Separator, CrossingVariant v = CrossingVariant::Standard) {
  CountOptions o;
  o.strategy = s;
  o.variant = v;
  return count_models(parse_dimacs(text), o).count;
}

}  // namespace

TEST_SUITE("cnf") {
  TEST_CASE("DIMACS parsing") {
    CnfFormula f = parse_dimacs("c comment\np cnf 2 1\n1 2 0\n");
    CHECK(f.num_vars == 2);
    REQUIRE(f.clause_count() == 1);
    CHECK(f.clauses[0] == std::vector<int>{1, 2});
    CHECK(f.warnings.empty());

    CnfFormula u = parse_dimacs("p cnf 2 2\n1 0\n2 0\n");
    CHECK(u.positive[1] == 1);
    CHECK(u.positive[2] == 1);
    CHECK(brute_count(u) == 1);

    CnfFormula t = parse_dimacs("p cnf 1 1\n1 -1 0\n");
    CHECK(t.clauses[0] == std::vector<int>{1, -1});

    CnfFormula d = parse_dimacs("p cnf 2 1\n1 1 2 1 0\n");
    CHECK(d.clauses[0] == std::vector<int>{1, 2});
    CHECK(d.positive[1] == 1);

    CnfFormula multi = parse_dimacs("p cnf 3 2\n1 -2\n 3 0 -1 0\n");
    CHECK(multi.clauses == std::vector<std::vector<int>>{{1, -2, 3}, {-1}});
  }

  TEST_CASE("DIMACS syntax errors") {
    CHECK(kind_of([] { parse_dimacs("1 2 0\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\n1 3 0\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 1\n1 x 0\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs("p cnf 2 2\n1 0\n0\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs("p dnf 2 1\n1 0\n"); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs(""); }) == ErrorKind::SyntaxError);
    CHECK(kind_of([] { parse_dimacs("p cnf 1 1\np cnf 1 1\n1 0\n"); }) == ErrorKind::SyntaxError);
  }

  TEST_CASE("clause count mismatch is a warning unless strict") {
    const std::string text = "p cnf 2 3\n1 2 0\n";
    CnfFormula f = parse_dimacs(text);
    REQUIRE(f.warnings.size() == 1);
    CHECK(f.warnings[0].rfind("HeaderMismatch", 0) == 0);
    CHECK(kind_of([&] { parse_dimacs(text, true); }) == ErrorKind::HeaderMismatch);
    CnfFormula open = parse_dimacs("p cnf 2 1\n1 2\n");
    CHECK(open.clause_count() == 1);
    CHECK(open.warnings.size() == 1);
  }

  TEST_CASE("DIMACS round trip") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CnfFormula f = random_cnf(6, 9, 3, seed);
      CnfFormula back = parse_dimacs(to_dimacs(f), true);
      CHECK(back.clauses == f.clauses);
      CHECK(back.num_vars == f.num_vars);
    }
  }

  TEST_CASE("random formulas have the requested shape") {
    CnfFormula f = random_cnf(8, 12, 3, 4);
    CHECK(f.clause_count() == 12);
    CHECK(f.max_width() == 3);
    for (const auto& c : f.clauses) CHECK(c.size() == 3);
    CHECK(kind_of([] { random_cnf(2, 3, 3, 0); }) == ErrorKind::BadArity);
  }

  TEST_CASE("incidence network shape") {
    CnfFormula f = parse_dimacs("p cnf 4 2\n1 -2 0\n2 3 0\n");
    CnfNetwork cn = cnf_to_network(f);
    CHECK(cn.unused_vars == 1);
    // Three vertices per used variable plus one per clause.
    CHECK(cn.net.vertex_count() == 3 * 3 + 2);
    CHECK(cn.net.external_count() == 0);
  }

  TEST_CASE("small counts") {
    CHECK(count_of("p cnf 2 1\n1 2 0\n") == 3);
    CHECK(count_of("p cnf 1 1\n1 -1 0\n") == 2);
    CHECK(count_of("p cnf 2 2\n1 2 0\n-1 2 0\n") == 2);
    CHECK(count_of("p cnf 1 2\n1 0\n-1 0\n") == 0);
    CHECK(count_of("p cnf 3 0\n") == 8);
    CHECK(count_of("p cnf 2 1\n1 2 0\n", Strategy::Greedy, CrossingVariant::Restricted) == 3);
  }

  TEST_CASE("brute force counting") {
    CHECK(brute_count(CnfFormula::make(3, {})) == 8);
    CHECK(brute_count(CnfFormula::make(2, {{1}, {-1}})) == 0);
    CHECK(kind_of([] { brute_count(CnfFormula::make(kBruteCountMaxVars + 1, {{1}})); }) == ErrorKind::TooLarge);
  }

  TEST_CASE("sparsity") {
    CHECK(is_sparse(CnfFormula::make(0, {})));
    CHECK(is_sparse(CnfFormula::make(2, {{1}, {2}, {1, 2}})));
    CHECK_FALSE(is_sparse(CnfFormula::make(1, {{1}, {1}, {1}, {1}, {1}})));
    CHECK(is_sparse(CnfFormula::make(1, {{1}, {1}, {1}, {1}})));
  }

  TEST_CASE("pipeline counts agree with the reference on random formulas") {
    std::mt19937_64 rng(77);
    for (std::uint64_t seed = 0; seed < 24; ++seed) {
      const int n = 2 + static_cast<int>(rng() % 5);
      const int m = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(2 * n));
      const int width = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(3, n)));
      CnfFormula f = random_cnf(n, m, width, seed);
      const Count expect = oracle::count_models(f.num_vars, f.clauses);
      CHECK(brute_count(f) == expect);
      for (Strategy s : {Strategy::Separator, Strategy::Greedy}) {
        CountOptions o;
        o.strategy = s;
        o.seed = seed;
        CountResult r = count_models(f, o);
        CHECK(r.count == expect);
        CHECK(r.report.planarized_is_planar);
        CHECK(r.report.final_is_planar);
        CHECK(r.report.final_max_degree <= 5);
        CHECK(r.report.planarized_vertices == r.report.original_vertices + 9 * r.report.crossings);
      }
    }
  }

  TEST_CASE("restricted pipeline stays in its basis") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      CnfFormula f = random_cnf(3 + static_cast<int>(seed % 2), 4, 2, seed);
      CountOptions o;
      o.variant = CrossingVariant::Restricted;
      o.strategy = Strategy::Greedy;
      o.seed = seed;
      CountResult r = count_models(f, o);
      CHECK(r.count == oracle::count_models(f.num_vars, f.clauses));
      CHECK(r.report.basis_restricted);
      CHECK(r.report.final_is_planar);
      CHECK(in_restricted_basis(r.report.final_network));
    }
  }

  TEST_CASE("adding a clause never raises the count") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      CnfFormula f = random_cnf(5, 6, 2, seed);
      auto clauses = f.clauses;
      Count prev = count_models(f).count;
      clauses.push_back(random_cnf(5, 1, 3, seed + 100).clauses[0]);
      Count next = count_models(CnfFormula::make(5, clauses)).count;
      CHECK(next <= prev);
    }
  }

  TEST_CASE("unused variables double the count") {
    CnfFormula f = parse_dimacs("p cnf 5 1\n1 2 0\n");
    CountResult r = count_models(f);
    CHECK(r.unused_vars == 3);
    CHECK(r.network_value == 3);
    CHECK(r.count == 24);
  }
}
