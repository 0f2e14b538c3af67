#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "hypermatch/numeric.h"

namespace hypermatch {

using Vertex = std::uint32_t;

// A k-subset of the vertex set, stored strictly increasing.
using Edge = std::vector<Vertex>;

// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

// Sorts and deduplicates.
VertexSet MakeVertexSet(std::vector<Vertex> vertices);

// Fixed-size bitset over vertices. One word covers n <= 64, which is the
// common case for the exact solvers.
class VertexMask {
 public:
  VertexMask() = default;
  explicit VertexMask(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

  static VertexMask Of(std::size_t n, std::span<const Vertex> vertices);

  std::size_t size() const { return size_; }
  void Set(Vertex v) { words_[v >> 6] |= std::uint64_t{1} << (v & 63); }
  void Reset(Vertex v) { words_[v >> 6] &= ~(std::uint64_t{1} << (v & 63)); }
  bool Test(Vertex v) const { return (words_[v >> 6] >> (v & 63)) & 1U; }

  bool Intersects(const VertexMask& other) const;
  // True when every member of `other` is also a member of this mask.
  bool Contains(const VertexMask& other) const;
  std::size_t Count() const;
  // Lowest member >= from, or size() if none.
  std::size_t NextSet(std::size_t from) const;

  VertexMask& operator|=(const VertexMask& other);
  VertexMask& operator&=(const VertexMask& other);
  // Removes the members of `other`.
  VertexMask& Subtract(const VertexMask& other);

  VertexSet Members() const;

  bool operator==(const VertexMask&) const = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept;
};

// k-uniform hypergraph on {0, ..., n-1}. Immutable after construction; edges
// are kept in lexicographic order so that every traversal is deterministic.
class Hypergraph {
 public:
  Hypergraph() : Hypergraph(0, 2) {}
  Hypergraph(int n, int k);
  // Sorts each edge; throws InputError on wrong arity, repeated or
  // out-of-range vertices and duplicate edges.
  Hypergraph(int n, int k, std::vector<Edge> edges);

  static Hypergraph Complete(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_[i]; }
  const VertexMask& mask(std::size_t i) const { return masks_[i]; }
  // Indices of the edges through v, increasing.
  const std::vector<std::size_t>& incident(Vertex v) const { return incidence_[v]; }

  std::optional<std::size_t> Find(std::span<const Vertex> sorted_edge) const;
  bool Contains(std::span<const Vertex> sorted_edge) const {
    return Find(sorted_edge).has_value();
  }

  bool operator==(const Hypergraph& other) const {
    return n_ == other.n_ && k_ == other.k_ && edges_ == other.edges_;
  }

 private:
  void BuildIndex();

  int n_;
  int k_;
  std::vector<Edge> edges_;
  std::vector<VertexMask> masks_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::unordered_map<Edge, std::size_t, EdgeHash> lookup_;
};

// Collection of pairwise-disjoint edges.
class Matching {
 public:
  Matching() = default;
  // Throws InputError if two edges share a vertex.
  explicit Matching(std::vector<Edge> edges);

  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  // Appends `e`; throws InputError if it meets an edge already present.
  void Add(Edge e);
  // Removes the edge at position i, keeping the order of the rest.
  void Remove(std::size_t i);

  VertexSet Covered() const;
  bool Covers(Vertex v) const;

  // Every edge belongs to H and all edges are pairwise disjoint.
  bool IsValidIn(const Hypergraph& h) const;
  bool IsPerfectIn(const Hypergraph& h) const {
    return IsValidIn(h) && size() * h.k() == static_cast<std::size_t>(h.n());
  }

  bool operator==(const Matching&) const = default;

 private:
  std::vector<Edge> edges_;
};

// Calls fn(combination) for every r-subset of {0..n-1} in lexicographic
// order. Stops early when fn returns false.
template <typename Fn>
void ForEachCombination(int n, int r, Fn&& fn) {
  if (r < 0 || r > n) return;
  std::vector<Vertex> combo(static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i) combo[i] = static_cast<Vertex>(i);
  while (true) {
    if (!fn(std::span<const Vertex>(combo))) return;
    int i = r - 1;
    while (i >= 0 && combo[i] == static_cast<Vertex>(n - r + i)) --i;
    if (i < 0) return;
    ++combo[i];
    for (int j = i + 1; j < r; ++j) combo[j] = combo[j - 1] + 1;
  }
}

// Same, over the r-subsets of an explicit sorted pool of vertices.
template <typename Fn>
void ForEachSubset(std::span<const Vertex> pool, int r, Fn&& fn) {
  std::vector<Vertex> chosen(r < 0 ? 0 : static_cast<std::size_t>(r));
  ForEachCombination(static_cast<int>(pool.size()), r, [&](std::span<const Vertex> idx) {
    for (std::size_t i = 0; i < idx.size(); ++i) chosen[i] = pool[idx[i]];
    return fn(std::span<const Vertex>(chosen));
  });
}

// Number of edges of H containing S.
std::uint64_t DegreeOf(const Hypergraph& h, std::span<const Vertex> s);

// delta_d(H): minimum of DegreeOf over all d-subsets.
std::uint64_t MinDegree(const Hypergraph& h, int d);

struct InducedSubgraph {
  Hypergraph graph;
  // to_parent[i] is the vertex of the host hypergraph that became vertex i.
  std::vector<Vertex> to_parent;
};

InducedSubgraph Induced(const Hypergraph& h, std::span<const Vertex> w);

// |E(H1) \ E(H2)|.
std::uint64_t DirectedEditDistance(const Hypergraph& h1, const Hypergraph& h2);

// |E(H1) \ E(H2)| <= eps * n^k.
bool IsEpsClose(const Hypergraph& h1, const Hypergraph& h2, const Rational& eps);

}  // namespace hypermatch
