#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "tnet/error.hpp"
#include "tnet/planarizer.hpp"

namespace tnet {

namespace {

using i128 = __int128;

void require_closed(const TensorNetwork& net) {
  if (!net.is_closed()) {
    throw Error(ErrorKind::HasExternalEdges,
                "circular drawing needs a closed network, found " + std::to_string(net.external_count()) +
                    " external edges");
  }
}

// Fisher-Yates with an explicit generator so orders do not depend on the
// standard library's shuffle.
std::vector<int> seeded_order(int n, std::uint64_t seed) {
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<int>(rng() % static_cast<std::uint64_t>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

// Preorder of a depth-first search, neighbours in port order; trees and
// outerplanar-like pieces come out crossing-free.
std::vector<int> dfs_order(const TensorNetwork& net) {
  const int n = net.vertex_count();
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  std::vector<int> order;
  for (int root = 0; root < n; ++root) {
    if (seen[static_cast<std::size_t>(root)]) continue;
    std::vector<std::pair<int, int>> stack{{root, 0}};
    seen[static_cast<std::size_t>(root)] = true;
    order.push_back(root);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next >= net.degree(v)) {
        stack.pop_back();
        continue;
      }
      int p = next++;
      if (net.port(v, p).external) continue;
      int w = net.opposite(v, p).vertex;
      if (seen[static_cast<std::size_t>(w)]) continue;
      seen[static_cast<std::size_t>(w)] = true;
      order.push_back(w);
      stack.emplace_back(w, 0);
    }
  }
  return order;
}

bool interleave(int p1, int q1, int p2, int q2) {
  if (p1 > q1) std::swap(p1, q1);
  if (p2 > q2) std::swap(p2, q2);
  return (p1 < p2 && p2 < q1 && q1 < q2) || (p2 < p1 && p1 < q2 && q2 < q1);
}

// Exact rational p/q with q > 0.
struct Ratio {
  i128 num;
  i128 den;
};

int compare(const Ratio& a, const Ratio& b) {
  i128 l = a.num * b.den;
  i128 r = b.num * a.den;
  return l < r ? -1 : (l > r ? 1 : 0);
}

struct ConcurrentChords {};

constexpr int kSiftPasses = 20;

// Points (x, x^2) on a parabola with random integer gaps: convex position,
// and chord intersections have exact rational abscissae.
Drawing draw(const TensorNetwork& net, const std::vector<int>& order, std::uint64_t perturb) {
  const int n = net.vertex_count();
  Drawing d;
  d.order = order;
  d.position.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < order.size(); ++i) d.position[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  std::mt19937_64 rng(perturb);
  std::vector<std::int64_t> xs(order.size());
  std::int64_t x = 0;
  for (auto& xi : xs) {
    x += 1 + static_cast<std::int64_t>(rng() % 64);
    xi = x;
  }

  const int m = net.edge_count();
  d.along.assign(static_cast<std::size_t>(m), {});

  // Parallel chords form bundles, copies ordered by edge id along the
  // bundle normal.
  std::map<std::pair<int, int>, int> bundle_of_pair;
  std::vector<int> bundle(static_cast<std::size_t>(m), -1);
  std::vector<int> copy(static_cast<std::size_t>(m), 0);
  std::vector<std::pair<int, int>> bundle_pos;
  std::vector<int> bundle_size;
  for (int e = 0; e < m; ++e) {
    const InternalEdge& ie = net.edge(e);
    if (ie.is_self_loop()) continue;
    auto key = std::minmax(d.position[static_cast<std::size_t>(ie.a.vertex)],
                           d.position[static_cast<std::size_t>(ie.b.vertex)]);
    auto [it, fresh] = bundle_of_pair.emplace(key, static_cast<int>(bundle_pos.size()));
    if (fresh) {
      bundle_pos.push_back(key);
      bundle_size.push_back(0);
    }
    bundle[static_cast<std::size_t>(e)] = it->second;
    copy[static_cast<std::size_t>(e)] = bundle_size[static_cast<std::size_t>(it->second)]++;
  }

  auto xpos = [&](int pos) { return static_cast<i128>(xs[static_cast<std::size_t>(pos)]); };

  // Crossing abscissa of two bundle chords.
  auto meet = [&](int b1, int b2) {
    auto [p, q] = bundle_pos[static_cast<std::size_t>(b1)];
    auto [r, s] = bundle_pos[static_cast<std::size_t>(b2)];
    i128 num = xpos(p) * xpos(q) - xpos(r) * xpos(s);
    i128 den = (xpos(p) + xpos(q)) - (xpos(r) + xpos(s));
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Ratio{num, den};
  };

  // Bundles that cross, by interleaving of their end positions.
  const auto nb = bundle_pos.size();
  std::vector<std::vector<int>> crossing_bundles(nb);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = i + 1; j < nb; ++j) {
      if (interleave(bundle_pos[i].first, bundle_pos[i].second, bundle_pos[j].first, bundle_pos[j].second)) {
        crossing_bundles[i].push_back(static_cast<int>(j));
        crossing_bundles[j].push_back(static_cast<int>(i));
      }
    }
  }
  std::vector<std::vector<int>> members(nb);
  for (int e = 0; e < m; ++e) {
    if (bundle[static_cast<std::size_t>(e)] >= 0) members[static_cast<std::size_t>(bundle[static_cast<std::size_t>(e)])].push_back(e);
  }

  for (int e = 0; e < m; ++e) {
    const int be = bundle[static_cast<std::size_t>(e)];
    if (be < 0) continue;
    const InternalEdge& ie = net.edge(e);
    const int pa = d.position[static_cast<std::size_t>(ie.a.vertex)];
    const int pb = d.position[static_cast<std::size_t>(ie.b.vertex)];
    const bool forward = xs[static_cast<std::size_t>(pa)] < xs[static_cast<std::size_t>(pb)];
    const i128 slope_e = xpos(pa) + xpos(pb);

    struct Hit {
      Ratio at;
      int other_bundle;
      int key;  // order among copies of the other bundle
      int edge;
    };
    std::vector<Hit> hits;
    for (int bf : crossing_bundles[static_cast<std::size_t>(be)]) {
      Ratio at = meet(be, bf);
      auto [r, s] = bundle_pos[static_cast<std::size_t>(bf)];
      // Sign of (bundle normal . travel direction): copies of bf are met in
      // ascending index when positive.
      i128 dot = slope_e - (xpos(r) + xpos(s));
      if (!forward) dot = -dot;
      for (int f : members[static_cast<std::size_t>(bf)]) {
        int c = copy[static_cast<std::size_t>(f)];
        hits.push_back(Hit{at, bf, dot > 0 ? c : -c, f});
      }
    }
    std::sort(hits.begin(), hits.end(), [&](const Hit& h1, const Hit& h2) {
      int c = compare(h1.at, h2.at);
      if (c != 0) return forward ? c < 0 : c > 0;
      if (h1.other_bundle != h2.other_bundle) return h1.other_bundle < h2.other_bundle;
      return h1.key < h2.key;
    });
    for (std::size_t i = 0; i + 1 < hits.size(); ++i) {
      if (hits[i].other_bundle != hits[i + 1].other_bundle && compare(hits[i].at, hits[i + 1].at) == 0) {
        throw ConcurrentChords{};
      }
    }
    const double x0 = static_cast<double>(xs[static_cast<std::size_t>(pa)]);
    const double x1 = static_cast<double>(xs[static_cast<std::size_t>(pb)]);
    for (const Hit& h : hits) {
      double xc = static_cast<double>(h.at.num) / static_cast<double>(h.at.den);
      d.along[static_cast<std::size_t>(e)].push_back(CrossingPoint{h.edge, (xc - x0) / (x1 - x0)});
      if (e < h.edge) d.crossings.emplace_back(e, h.edge);
    }
  }
  std::sort(d.crossings.begin(), d.crossings.end());
  return d;
}

// Moves single vertices to the position that minimises the crossings of
// their own chords until a full pass changes nothing.
std::vector<int> sift(const TensorNetwork& net, std::vector<int> order, int max_passes) {
  const int n = static_cast<int>(order.size());
  if (n < 4) return order;
  std::vector<std::pair<int, int>> chords;
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(n));
  for (const InternalEdge& e : net.edges()) {
    if (e.is_self_loop()) continue;
    incident[static_cast<std::size_t>(e.a.vertex)].push_back(static_cast<int>(chords.size()));
    incident[static_cast<std::size_t>(e.b.vertex)].push_back(static_cast<int>(chords.size()));
    chords.emplace_back(e.a.vertex, e.b.vertex);
  }
  std::vector<int> rest_pos(static_cast<std::size_t>(n));
  std::vector<long> diff(static_cast<std::size_t>(n) + 1);
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (int v = 0; v < n; ++v) {
      if (incident[static_cast<std::size_t>(v)].empty()) continue;
      std::vector<int> rest;
      int current = 0;
      for (int x : order) {
        if (x == v) {
          current = static_cast<int>(rest.size());
          continue;
        }
        rest_pos[static_cast<std::size_t>(x)] = static_cast<int>(rest.size());
        rest.push_back(x);
      }
      // Inserting v at k puts it between rest[k-1] and rest[k]. A chord
      // (v, w) crosses (x, y) iff exactly one of v, w lies strictly inside
      // the arc x..y, and v is inside for k in [i+1, j].
      std::fill(diff.begin(), diff.end(), 0);
      for (int ce : incident[static_cast<std::size_t>(v)]) {
        const int w = chords[static_cast<std::size_t>(ce)].first == v ? chords[static_cast<std::size_t>(ce)].second
                                                                        : chords[static_cast<std::size_t>(ce)].first;
        if (w == v) continue;
        const int pw = rest_pos[static_cast<std::size_t>(w)];
        for (std::size_t cf = 0; cf < chords.size(); ++cf) {
          auto [x, y] = chords[cf];
          if (x == v || y == v || x == w || y == w) continue;
          auto [i, j] = std::minmax(rest_pos[static_cast<std::size_t>(x)], rest_pos[static_cast<std::size_t>(y)]);
          if (i < pw && pw < j) {
            diff[0] += 1;
            diff[static_cast<std::size_t>(i) + 1] -= 1;
            diff[static_cast<std::size_t>(j) + 1] += 1;
          } else {
            diff[static_cast<std::size_t>(i) + 1] += 1;
            diff[static_cast<std::size_t>(j) + 1] -= 1;
          }
        }
      }
      long run = 0;
      std::vector<long> cost(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) {
        run += diff[static_cast<std::size_t>(k)];
        cost[static_cast<std::size_t>(k)] = run;
      }
      int best = current;
      for (int k = 0; k < n; ++k) {
        if (cost[static_cast<std::size_t>(k)] < cost[static_cast<std::size_t>(best)]) best = k;
      }
      if (best != current) {
        rest.insert(rest.begin() + best, v);
        order = std::move(rest);
        moved = true;
      }
    }
    if (!moved) break;
  }
  return order;
}

}  // namespace

std::size_t count_crossings(const TensorNetwork& net, const std::vector<int>& order) {
  std::vector<int> pos(static_cast<std::size_t>(net.vertex_count()), -1);
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  std::vector<std::pair<int, int>> chords;
  for (const InternalEdge& e : net.edges()) {
    if (!e.is_self_loop()) chords.emplace_back(pos[static_cast<std::size_t>(e.a.vertex)], pos[static_cast<std::size_t>(e.b.vertex)]);
  }
  std::size_t count = 0;
  for (std::size_t i = 0; i < chords.size(); ++i) {
    for (std::size_t j = i + 1; j < chords.size(); ++j) {
      if (interleave(chords[i].first, chords[i].second, chords[j].first, chords[j].second)) ++count;
    }
  }
  return count;
}

Drawing circular_drawing(const TensorNetwork& net, const std::vector<int>& order) {
  require_closed(net);
  std::vector<int> check(order);
  std::sort(check.begin(), check.end());
  bool permutation = check.size() == static_cast<std::size_t>(net.vertex_count());
  for (std::size_t i = 0; permutation && i < check.size(); ++i) permutation = check[i] == static_cast<int>(i);
  if (!permutation) throw Error(ErrorKind::IndexOutOfRange, "drawing order is not a permutation of the vertices");
  // Three chords through one point need a different perturbation.
  for (std::uint64_t attempt = 0;; ++attempt) {
    try {
      return draw(net, order, 0x9e3779b97f4a7c15ULL + attempt);
    } catch (const ConcurrentChords&) {
      if (attempt > 1000) throw std::logic_error("could not perturb chords apart");
    }
  }
}

Drawing circular_drawing(const TensorNetwork& net, std::uint64_t seed) {
  require_closed(net);
  return circular_drawing(net, seeded_order(net.vertex_count(), seed));
}

std::vector<int> improve_order(const TensorNetwork& net, std::vector<int> order, int max_passes) {
  return sift(net, std::move(order), max_passes);
}

Drawing best_circular_drawing(const TensorNetwork& net, std::uint64_t seed, int trials, bool improve) {
  require_closed(net);
  std::vector<std::vector<int>> candidates;
  for (int t = 0; t < std::max(trials, 1); ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(t)};
    std::uint32_t words[2];
    seq.generate(words, words + 2);
    std::uint64_t trial_seed = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    candidates.push_back(seeded_order(net.vertex_count(), trial_seed));
  }
  candidates.push_back(dfs_order(net));
  if (improve) {
    for (auto& c : candidates) c = sift(net, std::move(c), kSiftPasses);
  }
  std::size_t best = 0;
  std::size_t best_count = count_crossings(net, candidates[0]);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    std::size_t c = count_crossings(net, candidates[i]);
    if (c < best_count) {
      best = i;
      best_count = c;
    }
  }
  return circular_drawing(net, candidates[best]);
}

}  // namespace tnet
