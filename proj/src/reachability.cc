#include "hypermatch/reachability.h"

#include <algorithm>
#include <numeric>
#include <string>
#include <thread>

#include "hypermatch/matching_solver.h"

namespace hypermatch {
namespace {

bool SpansPerfectMatching(const Hypergraph& h, std::span<const Vertex> rest, Vertex extra) {
  VertexSet set(rest.begin(), rest.end());
  set.push_back(extra);
  set = MakeVertexSet(std::move(set));
  if (set.size() == static_cast<std::size_t>(h.k())) return h.Contains(set);
  return HasPerfectMatching(Induced(h, set).graph);
}

Rational NPow(int n, int e) {
  return Rational(boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(e)));
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t Find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Unite(std::size_t a, std::size_t b) {
    a = Find(a);
    b = Find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

std::uint64_t ReachableCount(const Hypergraph& h, Vertex u, Vertex v, int i, int workers) {
  const int n = h.n();
  if (u == v) throw InputError("reachability needs two distinct vertices");
  if (u >= static_cast<Vertex>(n) || v >= static_cast<Vertex>(n)) {
    throw InputError("vertex out of range");
  }
  const int size = i * h.k() - 1;
  if (i < 1 || size > n - 2) throw InputError("need 1 <= i and ik-1 <= n-2");

  VertexSet pool;
  for (int x = 0; x < n; ++x) {
    if (x != static_cast<int>(u) && x != static_cast<int>(v)) pool.push_back(static_cast<Vertex>(x));
  }
  workers = std::max(1, workers);
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  auto run = [&](int worker) {
    std::uint64_t index = 0;
    std::uint64_t count = 0;
    ForEachSubset(pool, size, [&](std::span<const Vertex> s) {
      if (index++ % static_cast<std::uint64_t>(workers) == static_cast<std::uint64_t>(worker) &&
          SpansPerfectMatching(h, s, u) && SpansPerfectMatching(h, s, v)) {
        ++count;
      }
      return true;
    });
    partial[static_cast<std::size_t>(worker)] = count;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (int w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

bool IsReachable(const Hypergraph& h, Vertex u, Vertex v, const Rational& beta, int i) {
  return Rational(ReachableCount(h, u, v, i)) >= beta * NPow(h.n(), i * h.k() - 1);
}

bool IsClosed(const Hypergraph& h, std::span<const Vertex> set, const Rational& beta, int i) {
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (!IsReachable(h, set[a], set[b], beta, i)) return false;
    }
  }
  return true;
}

Partition BuildClosedPartition(const Hypergraph& h, const AbsorptionParams& params) {
  const int n = h.n();
  const std::size_t un = static_cast<std::size_t>(n);
  const int i = params.i0;
  const bool enumerable = n >= 2 && i * h.k() - 1 <= n - 2;

  std::vector<std::vector<bool>> reach(un, std::vector<bool>(un, false));
  UnionFind components(un);
  if (enumerable) {
    for (Vertex a = 0; a < static_cast<Vertex>(n); ++a) {
      for (Vertex b = a + 1; b < static_cast<Vertex>(n); ++b) {
        if (IsReachable(h, a, b, params.beta, i)) {
          reach[a][b] = reach[b][a] = true;
          components.Unite(a, b);
        }
      }
    }
  }

  std::vector<VertexSet> groups(un);
  for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) groups[components.Find(v)].push_back(v);

  // Eviction: drop the vertex with the most unreachable partners until the
  // group is a clique of the reachability graph.
  VertexSet exceptional;
  for (VertexSet& group : groups) {
    while (group.size() > 1) {
      std::size_t worst = group.size();
      std::size_t worst_misses = 0;
      for (std::size_t x = 0; x < group.size(); ++x) {
        std::size_t misses = 0;
        for (std::size_t y = 0; y < group.size(); ++y) {
          if (x != y && !reach[group[x]][group[y]]) ++misses;
        }
        if (misses > worst_misses) {
          worst = x;
          worst_misses = misses;
        }
      }
      if (worst == group.size()) break;
      exceptional.push_back(group[worst]);
      group.erase(group.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }

  const Rational eps_sq_n = params.eps * params.eps * n;
  BigInt min_size = Floor(eps_sq_n);
  if (Rational(min_size) != eps_sq_n) min_size += 1;
  if (min_size < 2) min_size = 2;

  std::vector<VertexSet> parts;
  for (VertexSet& group : groups) {
    if (group.empty()) continue;
    if (BigInt(group.size()) < min_size) {
      exceptional.insert(exceptional.end(), group.begin(), group.end());
    } else {
      parts.push_back(std::move(group));
    }
  }
  std::sort(parts.begin(), parts.end(), [](const VertexSet& x, const VertexSet& y) {
    if (x.size() != y.size()) return x.size() > y.size();
    return x < y;
  });
  parts.insert(parts.begin(), MakeVertexSet(std::move(exceptional)));
  Partition out(n, std::move(parts));

  for (int p = 1; p <= out.r(); ++p) {
    if (!IsClosed(h, out.part(p), params.beta, i)) {
      throw std::logic_error("closed partition post-check failed for part " + std::to_string(p));
    }
  }
  return out;
}

Partition MergeTransferralParts(const Hypergraph& h, Partition p, const Rational& mu) {
  while (p.r() >= 2) {
    std::optional<std::pair<int, int>> transferral =
        FindTransferral(RobustEdgeVectors(h, p, mu));
    if (!transferral) break;
    auto [i, j] = *transferral;
    const int keep = std::min(i, j);
    const int drop = std::max(i, j);
    std::vector<VertexSet> parts = p.parts();
    parts[static_cast<std::size_t>(keep)].insert(parts[static_cast<std::size_t>(keep)].end(),
                                                parts[static_cast<std::size_t>(drop)].begin(),
                                                parts[static_cast<std::size_t>(drop)].end());
    parts.erase(parts.begin() + drop);
    p = Partition(p.n(), std::move(parts));
  }
  return p;
}

}  // namespace hypermatch
