#include <algorithm>
#include <optional>
#include <stdexcept>

#include "tnet/engine.hpp"
#include "tnet/error.hpp"

namespace tnet {

namespace {

// Dense table over labelled axes, axis 0 the most significant bit.
struct Table {
  std::vector<int> axes;
  std::vector<Count> data;
};

void check_rank(std::size_t rank, int cap) {
  if (static_cast<int>(rank) > cap) {
    throw Error(ErrorKind::RankOverflow,
                "intermediate rank " + std::to_string(rank) + " exceeds the cap of " + std::to_string(cap));
  }
}

// Index offsets inside a table of `rank` axes for every assignment of the
// axes at `positions` (first listed = most significant bit of the counter).
std::vector<std::uint64_t> offsets(const std::vector<int>& positions, std::size_t rank) {
  std::vector<std::uint64_t> out(std::size_t{1} << positions.size(), 0);
  for (std::uint64_t a = 0; a < out.size(); ++a) {
    std::uint64_t off = 0;
    for (std::size_t k = 0; k < positions.size(); ++k) {
      if ((a >> (positions.size() - 1 - k)) & 1u) off |= std::uint64_t{1} << (rank - 1 - static_cast<std::size_t>(positions[k]));
    }
    out[a] = off;
  }
  return out;
}

// Vertex tensor over the labels of its ports. A self-loop puts one label on
// two ports; it is summed over its diagonal and does not become an axis.
Table leaf_table(const TensorNetwork& net, int v, int cap) {
  const int m = net.edge_count();
  const int d = net.degree(v);
  std::vector<int> port_label(static_cast<std::size_t>(d));
  for (int p = 0; p < d; ++p) {
    const PortRef& r = net.port(v, p);
    port_label[static_cast<std::size_t>(p)] = r.external ? m + r.edge : r.edge;
  }
  Table t;
  std::vector<int> loops;
  for (int l : port_label) {
    if (std::count(port_label.begin(), port_label.end(), l) == 2) {
      if (std::find(loops.begin(), loops.end(), l) == loops.end()) loops.push_back(l);
    } else {
      t.axes.push_back(l);
    }
  }
  check_rank(t.axes.size(), cap);
  const std::size_t rank = t.axes.size();
  // Bit of port p inside the combined counter (free axes, then loops).
  std::vector<std::size_t> shift(static_cast<std::size_t>(d));
  const std::size_t width = rank + loops.size();
  for (std::size_t p = 0; p < port_label.size(); ++p) {
    auto it = std::find(t.axes.begin(), t.axes.end(), port_label[p]);
    std::size_t slot = it != t.axes.end() ? static_cast<std::size_t>(it - t.axes.begin())
                                          : rank + static_cast<std::size_t>(std::find(loops.begin(), loops.end(), port_label[p]) - loops.begin());
    shift[p] = width - 1 - slot;
  }
  const Tensor& tensor = net.tensor(v);
  t.data.assign(std::size_t{1} << rank, Count(0));
  std::vector<std::uint8_t> bits(port_label.size());
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << width); ++i) {
    for (std::size_t p = 0; p < bits.size(); ++p) bits[p] = static_cast<std::uint8_t>((i >> shift[p]) & 1u);
    t.data[i >> loops.size()] += tensor.at(std::span<const std::uint8_t>(bits));
  }
  return t;
}

Table merge_tables(const Table& a, const Table& b, int cap) {
  std::vector<int> free_a, free_b, shared_a, shared_b;
  Table out;
  for (std::size_t i = 0; i < a.axes.size(); ++i) {
    auto it = std::find(b.axes.begin(), b.axes.end(), a.axes[i]);
    if (it == b.axes.end()) {
      free_a.push_back(static_cast<int>(i));
      out.axes.push_back(a.axes[i]);
    } else {
      shared_a.push_back(static_cast<int>(i));
      shared_b.push_back(static_cast<int>(it - b.axes.begin()));
    }
  }
  for (std::size_t j = 0; j < b.axes.size(); ++j) {
    if (std::find(a.axes.begin(), a.axes.end(), b.axes[j]) == a.axes.end()) {
      free_b.push_back(static_cast<int>(j));
      out.axes.push_back(b.axes[j]);
    }
  }
  check_rank(out.axes.size(), cap);

  const auto fa = offsets(free_a, a.axes.size());
  const auto sa = offsets(shared_a, a.axes.size());
  const auto sb = offsets(shared_b, b.axes.size());
  const auto fb = offsets(free_b, b.axes.size());
  out.data.assign(fa.size() * fb.size(), Count(0));
  // Rows of a and columns of b reordered so that the shared axes line up:
  // out[i][j] = sum_s a[i][s] * b[s][j].
  std::vector<const Count*> brow(fb.size());
  for (std::size_t s = 0; s < sa.size(); ++s) {
    bool any = false;
    for (std::size_t j = 0; j < fb.size(); ++j) {
      brow[j] = &b.data[sb[s] | fb[j]];
      any = any || sgn(*brow[j]) != 0;
    }
    if (!any) continue;
    for (std::size_t i = 0; i < fa.size(); ++i) {
      const Count& x = a.data[fa[i] | sa[s]];
      if (sgn(x) == 0) continue;
      Count* row = &out.data[i * fb.size()];
      for (std::size_t j = 0; j < fb.size(); ++j) {
        if (sgn(*brow[j]) != 0) mpz_addmul(row[j].get_mpz_t(), x.get_mpz_t(), brow[j]->get_mpz_t());
      }
    }
  }
  return out;
}

}  // namespace

std::pair<Count, ContractionStats> execute_plan(const TensorNetwork& net, const ContractionPlan& plan, int rank_cap) {
  auto start = std::chrono::steady_clock::now();
  if (!net.is_closed()) throw Error(ErrorKind::HasExternalEdges, "only closed networks contract to a number");
  ContractionStats stats;
  if (plan.root < 0) {
    if (net.vertex_count() != 0) throw Error(ErrorKind::IndexOutOfRange, "empty plan for a non-empty network");
    return {Count(1), stats};
  }
  if (plan.leaves().size() != static_cast<std::size_t>(net.vertex_count())) {
    throw Error(ErrorKind::IndexOutOfRange, "plan leaves do not match the network vertices");
  }
  // Predicted ranks are exact, so an oversized plan fails before any work.
  check_rank(static_cast<std::size_t>(plan.max_rank()), rank_cap);

  // Post-order walk without recursion; greedy plans can be deep.
  std::vector<std::optional<Table>> value(plan.nodes.size());
  std::vector<std::pair<int, bool>> stack{{plan.root, false}};
  while (!stack.empty()) {
    auto [id, expanded] = stack.back();
    stack.pop_back();
    const PlanNode& node = plan.nodes[static_cast<std::size_t>(id)];
    if (node.is_leaf()) {
      value[static_cast<std::size_t>(id)] = leaf_table(net, node.vertex, rank_cap);
      continue;
    }
    if (!expanded) {
      stack.emplace_back(id, true);
      stack.emplace_back(node.right, false);
      stack.emplace_back(node.left, false);
      continue;
    }
    auto& left = value[static_cast<std::size_t>(node.left)];
    auto& right = value[static_cast<std::size_t>(node.right)];
    Table merged = merge_tables(*left, *right, rank_cap);
    left.reset();
    right.reset();
    stats.merges += 1;
    stats.max_rank = std::max(stats.max_rank, static_cast<int>(merged.axes.size()));
    stats.table_entries_peak = std::max(stats.table_entries_peak, merged.data.size());
    value[static_cast<std::size_t>(id)] = std::move(merged);
  }
  const Table& root = *value[static_cast<std::size_t>(plan.root)];
  if (!root.axes.empty()) throw std::logic_error("root table still has free axes");
  stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
  return {root.data.front(), stats};
}

Strategy parse_strategy(const std::string& name) {
  if (name == "separator") return Strategy::Separator;
  if (name == "greedy") return Strategy::Greedy;
  if (name == "brute") return Strategy::Brute;
  throw Error(ErrorKind::SyntaxError, "unknown strategy '" + name + "'");
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::Separator: return "separator";
    case Strategy::Greedy: return "greedy";
    case Strategy::Brute: return "brute";
  }
  return "unknown";
}

std::pair<Count, ContractionStats> contract_full(const TensorNetwork& net, Strategy strategy,
                                                 const ContractOptions& options) {
  if (!net.is_closed()) throw Error(ErrorKind::HasExternalEdges, "only closed networks contract to a number");
  switch (strategy) {
    case Strategy::Separator:
      return execute_plan(net, build_plan_separator(net, options.leaf_cutoff), options.rank_cap);
    case Strategy::Greedy:
      return execute_plan(net, build_plan_greedy(net), options.rank_cap);
    case Strategy::Brute: {
      auto start = std::chrono::steady_clock::now();
      ContractionStats stats;
      Count value = evaluate_brute(net, {}, options.brute_cap);
      stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start);
      return {value, stats};
    }
  }
  throw std::logic_error("unknown strategy");
}

}  // namespace tnet
