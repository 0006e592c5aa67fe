#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tnet/engine.hpp"
#include "tnet/network.hpp"
#include "tnet/planarizer.hpp"

namespace tnet {

/// Clauses over variables 1..num_vars; literal +i is x_i, -i is its negation.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
  std::vector<int> positive;  // per variable (index 0 unused): occurrences of x_i
  std::vector<int> negative;  // occurrences of the negation
  std::vector<std::string> warnings;

  static CnfFormula make(int num_vars, std::vector<std::vector<int>> clauses);

  int clause_count() const { return static_cast<int>(clauses.size()); }
  int max_width() const;
  int unused_vars() const;
};

/// DIMACS cnf. Duplicate literals in a clause are merged, tautologies kept.
/// A clause count that disagrees with the header is a warning unless
/// `strict`, which makes it a HeaderMismatch error.
CnfFormula parse_dimacs(const std::string& text, bool strict = false);

std::string to_dimacs(const CnfFormula& f);

/// Random formula with `m` clauses of exactly `width` distinct variables.
CnfFormula random_cnf(int n, int m, int width, std::uint64_t seed);

/// Incidence network: per used variable an equality for x_i, one for its
/// negation and a binary disequality between them; per clause a disjunction.
struct CnfNetwork {
  TensorNetwork net;
  int unused_vars = 0;
};

CnfNetwork cnf_to_network(const CnfFormula& f);

struct CountOptions {
  Strategy strategy = Strategy::Separator;
  CrossingVariant variant = CrossingVariant::Standard;
  std::uint64_t seed = 0;
  int trials = kDefaultDrawingTrials;
  int degree_threshold = kDefaultDegreeThreshold;
  ContractOptions contract;
};

/// What the pipeline built on the way to the count.
struct PipelineReport {
  int original_vertices = 0;
  int original_edges = 0;
  int crossings = 0;
  int planarized_vertices = 0;
  int final_vertices = 0;
  int final_max_degree = 0;
  bool planarized_is_planar = false;
  bool final_is_planar = false;
  bool basis_restricted = false;  // every tensor is OR_d, =3 or not-all-equal-3
  ContractionStats stats;
  TensorNetwork final_network;
};

struct CountResult {
  Count count;          // model count, unused variables included
  Count network_value;  // value of the contracted network alone
  int unused_vars = 0;
  PipelineReport report;
};

CountResult count_models(const CnfFormula& f, const CountOptions& options = {});

inline constexpr int kBruteCountMaxVars = 26;

Count brute_count(const CnfFormula& f);

bool is_sparse(const CnfFormula& f, double ratio = 4.0);

/// Every tensor is a disjunction, the ternary equality or the ternary
/// not-all-equal function.
bool in_restricted_basis(const TensorNetwork& net);

}  // namespace tnet
