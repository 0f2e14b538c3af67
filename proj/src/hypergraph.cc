#include "hypermatch/hypergraph.h"

#include <algorithm>
#include <bit>
#include <limits>
#include <string>

namespace hypermatch {

VertexSet MakeVertexSet(std::vector<Vertex> vertices) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return vertices;
}

VertexMask VertexMask::Of(std::size_t n, std::span<const Vertex> vertices) {
  VertexMask mask(n);
  for (Vertex v : vertices) mask.Set(v);
  return mask;
}

bool VertexMask::Intersects(const VertexMask& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] & other.words_[i]) return true;
  }
  return false;
}

bool VertexMask::Contains(const VertexMask& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (other.words_[i] & ~words_[i]) return false;
  }
  return true;
}

std::size_t VertexMask::Count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::size_t VertexMask::NextSet(std::size_t from) const {
  if (from >= size_) return size_;
  std::size_t word = from >> 6;
  std::uint64_t bits = words_[word] & (~std::uint64_t{0} << (from & 63));
  while (true) {
    if (bits != 0) {
      std::size_t pos = (word << 6) + static_cast<std::size_t>(std::countr_zero(bits));
      return pos < size_ ? pos : size_;
    }
    if (++word >= words_.size()) return size_;
    bits = words_[word];
  }
}

VertexMask& VertexMask::operator|=(const VertexMask& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

VertexMask& VertexMask::operator&=(const VertexMask& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

VertexMask& VertexMask::Subtract(const VertexMask& other) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

VertexSet VertexMask::Members() const {
  VertexSet out;
  for (std::size_t v = NextSet(0); v < size_; v = NextSet(v + 1)) {
    out.push_back(static_cast<Vertex>(v));
  }
  return out;
}

std::size_t EdgeHash::operator()(const Edge& e) const noexcept {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (Vertex v : e) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

Hypergraph::Hypergraph(int n, int k) : n_(n), k_(k) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  if (k < 2) throw InputError("uniformity must be at least 2");
  BuildIndex();
}

Hypergraph::Hypergraph(int n, int k, std::vector<Edge> edges)
    : n_(n), k_(k), edges_(std::move(edges)) {
  if (n < 0) throw InputError("vertex count must be nonnegative");
  if (k < 2) throw InputError("uniformity must be at least 2");
  for (Edge& e : edges_) {
    if (e.size() != static_cast<std::size_t>(k)) {
      throw InputError("edge of size " + std::to_string(e.size()) + " in a " +
                       std::to_string(k) + "-graph");
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
      throw InputError("edge repeats a vertex");
    }
    if (e.back() >= static_cast<Vertex>(n)) {
      throw InputError("edge vertex " + std::to_string(e.back()) + " out of range");
    }
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw InputError("duplicate edge");
  }
  BuildIndex();
}

Hypergraph Hypergraph::Complete(int n, int k) {
  std::vector<Edge> edges;
  ForEachCombination(n, k, [&](std::span<const Vertex> c) {
    edges.emplace_back(c.begin(), c.end());
    return true;
  });
  return Hypergraph(n, k, std::move(edges));
}

void Hypergraph::BuildIndex() {
  masks_.clear();
  incidence_.assign(static_cast<std::size_t>(n_), {});
  lookup_.clear();
  lookup_.reserve(edges_.size());
  masks_.reserve(edges_.size());
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    masks_.push_back(VertexMask::Of(static_cast<std::size_t>(n_), edges_[i]));
    for (Vertex v : edges_[i]) incidence_[v].push_back(i);
    lookup_.emplace(edges_[i], i);
  }
}

std::optional<std::size_t> Hypergraph::Find(std::span<const Vertex> sorted_edge) const {
  auto it = lookup_.find(Edge(sorted_edge.begin(), sorted_edge.end()));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Matching::Matching(std::vector<Edge> edges) {
  for (Edge& e : edges) Add(std::move(e));
}

void Matching::Add(Edge e) {
  std::sort(e.begin(), e.end());
  for (const Edge& f : edges_) {
    for (Vertex v : e) {
      if (std::binary_search(f.begin(), f.end(), v)) {
        throw InputError("matching edges must be disjoint");
      }
    }
  }
  edges_.push_back(std::move(e));
}

void Matching::Remove(std::size_t i) {
  edges_.erase(edges_.begin() + static_cast<std::ptrdiff_t>(i));
}

VertexSet Matching::Covered() const {
  VertexSet out;
  for (const Edge& e : edges_) out.insert(out.end(), e.begin(), e.end());
  std::sort(out.begin(), out.end());
  return out;
}

bool Matching::Covers(Vertex v) const {
  for (const Edge& e : edges_) {
    if (std::binary_search(e.begin(), e.end(), v)) return true;
  }
  return false;
}

bool Matching::IsValidIn(const Hypergraph& h) const {
  VertexMask seen(static_cast<std::size_t>(h.n()));
  for (const Edge& e : edges_) {
    if (!h.Contains(e)) return false;
    for (Vertex v : e) {
      if (seen.Test(v)) return false;
      seen.Set(v);
    }
  }
  return true;
}

std::uint64_t DegreeOf(const Hypergraph& h, std::span<const Vertex> s) {
  if (s.size() > static_cast<std::size_t>(h.k())) {
    throw InputError("degree set larger than the uniformity");
  }
  for (Vertex v : s) {
    if (v >= static_cast<Vertex>(h.n())) {
      throw InputError("vertex " + std::to_string(v) + " out of range");
    }
  }
  if (s.empty()) return h.num_edges();
  VertexSet members = MakeVertexSet({s.begin(), s.end()});
  if (members.size() != s.size()) throw InputError("degree set repeats a vertex");

  // Scan the shortest incidence list and test containment of the rest.
  Vertex pivot = members.front();
  for (Vertex v : members) {
    if (h.incident(v).size() < h.incident(pivot).size()) pivot = v;
  }
  if (members.size() == 1) return h.incident(pivot).size();
  VertexMask target = VertexMask::Of(static_cast<std::size_t>(h.n()), members);
  std::uint64_t count = 0;
  for (std::size_t idx : h.incident(pivot)) {
    if (h.mask(idx).Contains(target)) ++count;
  }
  return count;
}

std::uint64_t MinDegree(const Hypergraph& h, int d) {
  if (d < 1 || d > h.k() - 1) {
    throw InputError("d must satisfy 1 <= d <= k-1");
  }
  if (h.n() < d) throw InputError("fewer than d vertices");
  std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
  ForEachCombination(h.n(), d, [&](std::span<const Vertex> s) {
    best = std::min(best, DegreeOf(h, s));
    return best > 0;
  });
  return best;
}

InducedSubgraph Induced(const Hypergraph& h, std::span<const Vertex> w) {
  VertexSet members = MakeVertexSet({w.begin(), w.end()});
  std::vector<std::int64_t> to_child(static_cast<std::size_t>(h.n()), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= static_cast<Vertex>(h.n())) {
      throw InputError("vertex " + std::to_string(members[i]) + " out of range");
    }
    to_child[members[i]] = static_cast<std::int64_t>(i);
  }
  VertexMask inside = VertexMask::Of(static_cast<std::size_t>(h.n()), members);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    if (!inside.Contains(h.mask(i))) continue;
    Edge e;
    e.reserve(h.edge(i).size());
    for (Vertex v : h.edge(i)) e.push_back(static_cast<Vertex>(to_child[v]));
    edges.push_back(std::move(e));
  }
  return {Hypergraph(static_cast<int>(members.size()), h.k(), std::move(edges)),
          std::move(members)};
}

std::uint64_t DirectedEditDistance(const Hypergraph& h1, const Hypergraph& h2) {
  if (h1.n() != h2.n() || h1.k() != h2.k()) {
    throw InputError("hypergraphs must share n and k");
  }
  std::uint64_t missing = 0;
  for (const Edge& e : h1.edges()) {
    if (!h2.Contains(e)) ++missing;
  }
  return missing;
}

bool IsEpsClose(const Hypergraph& h1, const Hypergraph& h2, const Rational& eps) {
  std::uint64_t distance = DirectedEditDistance(h1, h2);
  BigInt n_pow = boost::multiprecision::pow(BigInt(h1.n()), static_cast<unsigned>(h1.k()));
  return Rational(distance) <= eps * Rational(n_pow);
}

}  // namespace hypermatch
