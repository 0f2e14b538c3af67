#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "hypermatch/hypergraph.h"
#include "hypermatch/numeric.h"

namespace hypermatch {

// Vertex partition V0, V1, ..., Vr. V0 is the exceptional part and is
// ignored by index vectors; parts are addressed by their 1-based number.
class Partition {
 public:
  Partition() = default;
  // parts[0] is V0. Throws InputError unless the parts are disjoint and cover
  // {0, ..., n-1}.
  Partition(int n, std::vector<VertexSet> parts);

  // A single non-exceptional part holding every vertex.
  static Partition Trivial(int n);

  int n() const { return n_; }
  int r() const { return static_cast<int>(parts_.size()) - 1; }
  const VertexSet& exceptional() const { return parts_[0]; }
  const VertexSet& part(int i) const { return parts_[static_cast<std::size_t>(i)]; }
  const std::vector<VertexSet>& parts() const { return parts_; }
  // 0 for V0, otherwise the part number.
  int PartOf(Vertex v) const { return owner_[v]; }

  bool operator==(const Partition& other) const { return parts_ == other.parts_; }

 private:
  int n_ = 0;
  std::vector<VertexSet> parts_{VertexSet{}};
  std::vector<int> owner_;
};

// Integer vector over the r non-exceptional parts; coordinate i-1 is part i.
using IndexVector = std::vector<std::int64_t>;

IndexVector IndexVectorOf(const Partition& p, std::span<const Vertex> s);

// Nonnegative coordinates summing to s.
bool IsSVector(const IndexVector& v, int s);

// Every s-vector of length r, in lexicographic order.
std::vector<IndexVector> AllSVectors(int r, int s);

// Generators of an edge lattice: k-vectors over r coordinates.
struct LatticeBasis {
  int r = 0;
  int k = 0;
  std::vector<IndexVector> generators;
};

// Throws InputError unless every generator is a k-vector of length r.
LatticeBasis MakeLatticeBasis(int r, int k, std::vector<IndexVector> generators);

// Number of edges realising each index vector.
std::map<IndexVector, std::uint64_t> EdgeVectorHistogram(const Hypergraph& h,
                                                         const Partition& p);

// Index vectors realised by at least mu * n^k edges, lexicographic order.
LatticeBasis RobustEdgeVectors(const Hypergraph& h, const Partition& p, const Rational& mu);

// Integer coefficients, one per generator, with sum a_i * g_i equal to the
// target. Always verified by direct arithmetic before it is returned.
using LatticeCoefficients = std::vector<std::int64_t>;

// Exact membership via a column Hermite reduction of the generator matrix.
std::optional<LatticeCoefficients> LatticeContains(const LatticeBasis& basis,
                                                   const IndexVector& v);

// Lexicographically least (i, j), i != j, 1-based, with u_i - u_j in L.
std::optional<std::pair<int, int>> FindTransferral(const LatticeBasis& basis);

struct LatticeClassification {
  int r = 0;
  // For r = 2: (2,-2) and (3,-3). For r = 3: (-2,1,1), (1,-2,1), (1,1,-2).
  std::vector<std::pair<IndexVector, bool>> members;
};

LatticeClassification ClassifyLattice(const LatticeBasis& basis);

// Whether some (k-p)-vector v' has v + v' in L, for a p-vector v.
bool NeighborhoodNonempty(const LatticeBasis& basis, const IndexVector& v, int p);

// First ordered (i, j), 1-based and i == j allowed, with u - u_i - u_j in L,
// for a (k+2)-vector u over at most three parts.
std::optional<std::pair<int, int>> FindAbsorbingPair(const LatticeBasis& basis,
                                                     const IndexVector& u);

struct BoundedSearchStats {
  std::uint64_t nodes = 0;
  // False when the node budget ran out before the space was exhausted.
  bool complete = true;
};

// Depth-first search for coefficients with max |a_i| <= bound, independent
// of the Hermite route. Coefficients are tried in the order 0, 1, -1, 2, ...
std::optional<LatticeCoefficients> BoundedDecomposition(
    const LatticeBasis& basis, const IndexVector& target, int bound,
    BoundedSearchStats* stats = nullptr, std::uint64_t node_budget = 50'000'000);

// Sum of a_i * g_i.
IndexVector Combine(const LatticeBasis& basis, const LatticeCoefficients& coefficients);

// The analysis constants as runtime configuration. The intended ordering
// (1/n << alpha << gamma, and so on) is documented, not enforced.
struct AbsorptionParams {
  Rational mu{1, 100};
  Rational eps{1, 10};
  Rational beta{1, 20};
  Rational alpha{1, 100};
  Rational gamma{1, 10};
  Rational gamma_prime{1, 10};
  Rational sigma{1, 100};
  int i0 = 1;
  int t = 1;
};

}  // namespace hypermatch
