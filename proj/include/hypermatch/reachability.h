#pragma once

#include <cstdint>

#include "hypermatch/hypergraph.h"
#include "hypermatch/lattice.h"
#include "hypermatch/numeric.h"

namespace hypermatch {

// Number of (ik-1)-sets S in V \ {u, v} such that both H[S + u] and
// H[S + v] have perfect matchings. The enumeration is split round-robin over
// `workers` threads and summed, so the result does not depend on it.
std::uint64_t ReachableCount(const Hypergraph& h, Vertex u, Vertex v, int i, int workers = 1);

// count >= beta * n^(ik-1).
bool IsReachable(const Hypergraph& h, Vertex u, Vertex v, const Rational& beta, int i);

// Every pair of vertices of `set` is (beta, i)-reachable.
bool IsClosed(const Hypergraph& h, std::span<const Vertex> set, const Rational& beta, int i);

// Certified-closed partition. Uses params.beta, params.eps and params.i0:
// components of the reachability graph become parts, parts smaller than
// max(2, ceil(eps^2 n)) go to V0, and vertices are evicted to V0 until each
// part is closed. Parts are ordered by size, then by least vertex.
Partition BuildClosedPartition(const Hypergraph& h, const AbsorptionParams& params);

// Merges the parts named by FindTransferral on the mu-robust lattice until no
// transferral remains. The lower-numbered part absorbs the other.
Partition MergeTransferralParts(const Hypergraph& h, Partition p, const Rational& mu);

}  // namespace hypermatch
