#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/hypergraph.h"
#include "hypermatch/numeric.h"

namespace hypermatch {

// e is S-absorbing when e1, e2 below are disjoint edges with
//   |e1 ∩ S| = k - floor(d/2),  |e1 ∩ e| = floor(d/2),
//   |e2 ∩ S| = k - ceil(d/2),   |e2 ∩ e| = ceil(d/2).
// Swapping e for {e1, e2} covers S and leaves k-d vertices of e uncovered.
struct AbsorbingWitness {
  Edge e;
  Edge e1;
  Edge e2;
  VertexSet uncovered;
};

// Lexicographically least witness by (e1, e2). Returns nullopt when e is not
// an edge, meets S, or is not S-absorbing. Throws InputError if |S| != 2k-d.
std::optional<AbsorbingWitness> FindAbsorbingWitness(const Hypergraph& h,
                                                     std::span<const Vertex> s,
                                                     std::span<const Vertex> e, int d);

bool VerifyAbsorbingWitness(const Hypergraph& h, std::span<const Vertex> s, int d,
                            const AbsorbingWitness& w);

std::uint64_t CountSAbsorbing(const Hypergraph& h, std::span<const Vertex> s, int d,
                              int workers = 1);

// beta * n^(1-k) / (k+1).
Rational SamplingProbability(int n, int k, const Rational& beta);

// Keeps each edge with SamplingProbability, drawing in lexicographic edge
// order from SeededStream(seed); drops any edge meeting an earlier kept edge;
// truncates to floor(beta*n/k) edges by dropping the largest ones.
Matching SampleAbsorbingMatching(const Hypergraph& h, int d, const Rational& beta,
                                 std::uint64_t seed);

struct AbsorbStep {
  enum class Kind { kSwap, kExtend };
  int step = 0;
  Kind kind = Kind::kSwap;
  VertexSet s;
  Edge e;   // swapped-out edge (kSwap only)
  Edge e1;  // kExtend stores the added edge here
  Edge e2;
  // Number of S-absorbing edges in the matching at this step.
  std::uint64_t alternatives = 0;
  std::size_t covered_after = 0;
};

struct AbsorbOptions {
  // When no matching edge absorbs S, add an edge of H lying entirely inside
  // the uncovered vertices instead of stopping.
  bool extend_directly = true;
};

struct AbsorbResult {
  Matching matching;
  // Vertices of V(M') ∪ R left uncovered.
  VertexSet uncovered;
  bool success = false;
  std::string reason;
  std::vector<AbsorbStep> trace;
};

// Repeatedly takes the least (2k-d)-subset S of the uncovered vertices of
// V(M') ∪ R and swaps in an S-absorbing edge of the current matching. Stops
// with success once at most 2k-d-1 vertices are uncovered. Iterations are
// capped at ceil(|R|/(2k-d)) + |R|.
AbsorbResult Absorb(const Hypergraph& h, const Matching& m_prime, std::span<const Vertex> r,
                    int d, const AbsorbOptions& options = {});

// Both H[T] and H[T ∪ S] have perfect matchings. Needs |T| ≡ 0 (mod k),
// |S| = k and T ∩ S = ∅.
bool IsAbsorbingISet(const Hypergraph& h, std::span<const Vertex> t, std::span<const Vertex> s);

// Absorbing (i*k)-sets for S in lexicographic order, at most `limit` of them.
std::vector<VertexSet> FindAbsorbingISets(const Hypergraph& h, std::span<const Vertex> s, int i,
                                          std::size_t limit);

std::string ToString(AbsorbStep::Kind kind);

}  // namespace hypermatch
