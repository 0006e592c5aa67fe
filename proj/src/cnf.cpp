#include "tnet/cnf.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "tnet/error.hpp"

namespace tnet {

CnfFormula CnfFormula::make(int num_vars, std::vector<std::vector<int>> clauses) {
  if (num_vars < 0) throw Error(ErrorKind::SyntaxError, "negative variable count");
  CnfFormula f;
  f.num_vars = num_vars;
  f.positive.assign(static_cast<std::size_t>(num_vars) + 1, 0);
  f.negative.assign(static_cast<std::size_t>(num_vars) + 1, 0);
  for (auto& clause : clauses) {
    if (clause.empty()) throw Error(ErrorKind::SyntaxError, "empty clause");
    std::vector<int> unique;
    for (int lit : clause) {
      if (lit == 0 || std::abs(lit) > num_vars) {
        throw Error(ErrorKind::SyntaxError, "literal " + std::to_string(lit) + " outside 1.." + std::to_string(num_vars));
      }
      if (std::find(unique.begin(), unique.end(), lit) == unique.end()) unique.push_back(lit);
    }
    for (int lit : unique) (lit > 0 ? f.positive : f.negative)[static_cast<std::size_t>(std::abs(lit))] += 1;
    f.clauses.push_back(std::move(unique));
  }
  return f;
}

int CnfFormula::max_width() const {
  std::size_t w = 0;
  for (const auto& c : clauses) w = std::max(w, c.size());
  return static_cast<int>(w);
}

int CnfFormula::unused_vars() const {
  int u = 0;
  for (int i = 1; i <= num_vars; ++i) {
    if (positive[static_cast<std::size_t>(i)] + negative[static_cast<std::size_t>(i)] == 0) ++u;
  }
  return u;
}

CnfFormula parse_dimacs(const std::string& text, bool strict) {
  std::istringstream in(text);
  std::string line;
  int n = -1;
  long declared = -1;
  std::vector<std::vector<int>> clauses;
  std::vector<int> current;
  int line_no = 0;
  bool done = false;
  while (!done && std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok[0] == 'c') continue;
    if (tok == "%") break;  // end marker used by some benchmark sets
    if (tok == "p") {
      std::string fmt;
      if (n >= 0) throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": second header");
      if (!(ls >> fmt >> n >> declared) || fmt != "cnf" || n < 0 || declared < 0) {
        throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": bad header '" + line + "'");
      }
      continue;
    }
    if (n < 0) throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": clause before header");
    do {
      if (tok == "%") {
        done = true;
        break;
      }
      std::size_t used = 0;
      long lit = 0;
      try {
        lit = std::stol(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) {
        throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": bad literal '" + tok + "'");
      }
      if (lit == 0) {
        if (current.empty()) throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line_no) + ": empty clause");
        clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::labs(lit) > n) {
          throw Error(ErrorKind::SyntaxError,
                      "line " + std::to_string(line_no) + ": literal " + tok + " outside 1.." + std::to_string(n));
        }
        current.push_back(static_cast<int>(lit));
      }
    } while (ls >> tok);
  }
  if (n < 0) throw Error(ErrorKind::SyntaxError, "missing 'p cnf' header");
  std::vector<std::string> warnings;
  if (!current.empty()) {
    clauses.push_back(std::move(current));
    warnings.push_back("last clause is not terminated by 0");
  }
  if (static_cast<long>(clauses.size()) != declared) {
    std::string msg = "header declares " + std::to_string(declared) + " clauses, found " + std::to_string(clauses.size());
    if (strict) throw Error(ErrorKind::HeaderMismatch, msg);
    warnings.push_back("HeaderMismatch: " + msg);
  }
  CnfFormula f = CnfFormula::make(n, std::move(clauses));
  f.warnings = std::move(warnings);
  return f;
}

std::string to_dimacs(const CnfFormula& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int lit : c) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

CnfFormula random_cnf(int n, int m, int width, std::uint64_t seed) {
  if (width < 1 || width > n) throw Error(ErrorKind::BadArity, "clause width must lie in 1..n");
  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> clauses;
  for (int j = 0; j < m; ++j) {
    std::vector<int> vars;
    while (static_cast<int>(vars.size()) < width) {
      int v = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(n));
      if (std::find(vars.begin(), vars.end(), v) == vars.end()) vars.push_back(v);
    }
    for (int& v : vars) v = (rng() & 1u) ? v : -v;
    clauses.push_back(std::move(vars));
  }
  return CnfFormula::make(n, std::move(clauses));
}

CnfNetwork cnf_to_network(const CnfFormula& f) {
  NetworkBuilder b;
  std::vector<int> pos_vertex(static_cast<std::size_t>(f.num_vars) + 1, -1);
  std::vector<int> neg_vertex(static_cast<std::size_t>(f.num_vars) + 1, -1);
  CnfNetwork out;
  for (int i = 1; i <= f.num_vars; ++i) {
    const int a = f.positive[static_cast<std::size_t>(i)];
    const int bn = f.negative[static_cast<std::size_t>(i)];
    if (a + bn == 0) {
      ++out.unused_vars;
      continue;
    }
    int vx = b.add(functions::equality(a + 1));
    int vn = b.add(functions::equality(bn + 1));
    int neq = b.add(functions::disequality2());
    b.add_edge(vx, 0, neq, 0);
    b.add_edge(neq, 1, vn, 0);
    pos_vertex[static_cast<std::size_t>(i)] = vx;
    neg_vertex[static_cast<std::size_t>(i)] = vn;
  }
  // Port 0 of a literal vertex is the disequality; clause edges follow in
  // clause order.
  std::vector<int> next_port(static_cast<std::size_t>(b.vertex_count()), 1);
  for (const auto& clause : f.clauses) {
    int c = b.add(functions::disjunction(static_cast<int>(clause.size())));
    for (std::size_t k = 0; k < clause.size(); ++k) {
      const int lit = clause[k];
      const auto var = static_cast<std::size_t>(std::abs(lit));
      int v = lit > 0 ? pos_vertex[var] : neg_vertex[var];
      b.add_edge(v, next_port[static_cast<std::size_t>(v)]++, c, static_cast<int>(k));
    }
  }
  out.net = b.build();
  return out;
}

bool in_restricted_basis(const TensorNetwork& net) {
  const Tensor eq3 = functions::equality(3).to_dense();
  const Tensor nae3 = functions::not_all_equal3().to_dense();
  for (const Tensor& t : net.tensors()) {
    if (t.arity() >= 1 && t.arity() <= kMaxDenseArity && t.to_dense() == functions::disjunction(t.arity()).to_dense()) continue;
    if (t.arity() == 3 && (t.to_dense() == eq3 || t.to_dense() == nae3)) continue;
    return false;
  }
  return true;
}

CountResult count_models(const CnfFormula& f, const CountOptions& options) {
  CountResult result;
  CnfNetwork base = cnf_to_network(f);
  result.unused_vars = base.unused_vars;
  PipelineReport& rep = result.report;
  rep.original_vertices = base.net.vertex_count();
  rep.original_edges = base.net.edge_count();

  Drawing drawing = best_circular_drawing(base.net, options.seed, options.trials);
  rep.crossings = static_cast<int>(drawing.crossings.size());
  TensorNetwork net = replace_crossings(base.net, drawing, options.variant);
  rep.planarized_vertices = net.vertex_count();
  rep.planarized_is_planar = check_planarity(net).planar;

  if (options.variant == CrossingVariant::Restricted) {
    // Equalities become =3 chains; clause disjunctions stay as they are.
    net = restrict_function_basis(net);
  } else {
    net = reduce_degree(net, options.degree_threshold);
  }
  rep.final_vertices = net.vertex_count();
  rep.final_max_degree = network_stats(net).max_degree;
  rep.final_is_planar = check_planarity(net).planar;
  rep.basis_restricted = in_restricted_basis(net);

  auto [value, stats] = contract_full(net, options.strategy, options.contract);
  rep.stats = stats;
  rep.final_network = std::move(net);
  result.network_value = value;
  Count scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(base.unused_vars));
  result.count = value * scale;
  return result;
}

Count brute_count(const CnfFormula& f) {
  if (f.num_vars > kBruteCountMaxVars) {
    throw Error(ErrorKind::TooLarge, std::to_string(f.num_vars) + " variables exceed the enumeration limit of " +
                                         std::to_string(kBruteCountMaxVars));
  }
  std::vector<std::pair<std::uint32_t, std::uint32_t>> masks;
  for (const auto& c : f.clauses) {
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
    for (int lit : c) (lit > 0 ? pos : neg) |= std::uint32_t{1} << (std::abs(lit) - 1);
    masks.emplace_back(pos, neg);
  }
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << f.num_vars;
  for (std::uint64_t x = 0; x < total; ++x) {
    const auto bits = static_cast<std::uint32_t>(x);
    bool ok = true;
    for (const auto& [pos, neg] : masks) {
      if (((bits & pos) | (~bits & neg)) == 0) {
        ok = false;
        break;
      }
    }
    count += ok ? 1 : 0;
  }
  Count out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(count), 0, 0, &count);
  return out;
}

bool is_sparse(const CnfFormula& f, double ratio) {
  if (f.num_vars == 0) return f.clauses.empty();
  return static_cast<double>(f.clauses.size()) <= ratio * static_cast<double>(f.num_vars);
}

}  // namespace tnet
