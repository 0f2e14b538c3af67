#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypermatch/hypergraph.h"
#include "hypermatch/numeric.h"

namespace hypermatch {

struct SolverOptions {
  // Caps the search at floor(fractional optimum), computed once at the root.
  bool lp_root_bound = false;
  // Gives up after this many search nodes; 0 means no limit.
  std::uint64_t node_limit = 0;
};

struct SolverStats {
  std::uint64_t nodes = 0;
  // Set when node_limit stopped the search; the result is then not exact.
  bool aborted = false;
};

// Exact maximum matching by depth-first branch-and-bound on the lowest free
// vertex. Exponential in the worst case; meant for n up to ~16 at k = 3 or
// sparse inputs.
Matching MaxMatching(const Hypergraph& h, const SolverOptions& options = {},
                     SolverStats* stats = nullptr);

// A matching of exactly s edges, or nullopt if none exists.
std::optional<Matching> FindMatchingOfSize(const Hypergraph& h, int s,
                                           const SolverOptions& options = {},
                                           SolverStats* stats = nullptr);

bool HasPerfectMatching(const Hypergraph& h);

struct FractionalMatching {
  // weights[i] belongs to h.edge(i).
  std::vector<Rational> weights;
  Rational size;
  // Optimal fractional vertex cover; its total equals size.
  std::vector<Rational> cover;
};

// Weights in [0,1] with load at most 1 on every vertex.
bool IsFractionalMatching(const Hypergraph& h, const std::vector<Rational>& weights);

// Nonnegative vertex weights with total at least 1 on every edge.
bool IsFractionalCover(const Hypergraph& h, const std::vector<Rational>& cover);

// Exact LP optimum; throws std::logic_error if the certificate fails to check.
FractionalMatching MaxFractionalMatching(const Hypergraph& h);

}  // namespace hypermatch
