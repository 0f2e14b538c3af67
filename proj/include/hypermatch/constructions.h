#pragma once

#include <optional>

#include "hypermatch/hypergraph.h"
#include "hypermatch/numeric.h"
#include "json.hpp"

namespace hypermatch {

enum class BarrierKind { kDivisibility, kLayered };

struct BarrierSpec {
  BarrierKind kind = BarrierKind::kLayered;
  int n = 0;
  int k = 3;
  int j = 0;  // divisibility: required parity of |e ∩ U|
  int u = 0;  // divisibility: |U|, U defaults to the first u vertices
  int l = 1;  // layered: maximum |e ∩ W|
  int w = 0;  // layered: |W|, W defaults to the last w vertices
  // Replaces the default U (divisibility) or W (layered) when present.
  std::optional<VertexSet> vertices;
};

// All k-sets e with 1 <= |e ∩ W| <= l, W = {n-w, ..., n-1}.
Hypergraph BuildLayeredBarrier(int n, int k, int l, int w);
Hypergraph BuildLayeredBarrier(int n, int k, int l, const VertexSet& w_set);

// All k-sets e with |e ∩ U| ≡ j (mod 2), U = {0, ..., u-1}.
Hypergraph BuildDivisibilityBarrier(int n, int k, int j, int u);
Hypergraph BuildDivisibilityBarrier(int n, int k, int j, const VertexSet& u_set);

Hypergraph BuildBarrier(const BarrierSpec& spec);
BarrierSpec BarrierSpecFromJson(const nlohmann::json& j);
nlohmann::json BarrierSpecToJson(const BarrierSpec& spec);

// Closed-form edge counts of the two generators.
BigInt LayeredBarrierEdgeCount(int n, int k, int l, int w);
BigInt DivisibilityBarrierEdgeCount(int n, int k, int j, int u);

// C(n-d, k-d) - C(n-d-s+1, k-d). Negative only for s = 0, where the degree
// hypothesis is vacuous.
BigInt ThresholdValue(int n, int k, int d, int s);

// Matching size guaranteed above the threshold, by the residue case split on
// r = n mod k. Requires k >= 3 and k/2 <= d <= k-1.
int TheoremS(int n, int k, int d);

struct ThresholdReport {
  int n = 0;
  int k = 0;
  int d = 0;
  int s = 0;
  int r = 0;
  BigInt threshold;
};

ThresholdReport MakeThresholdReport(int n, int k, int d);

struct AsymptoticConstants {
  // max{1/2, 1 - (1-1/k)^(k-d)}
  Rational conjecture_fraction;
  // 1 - (1-1/k)^(k-d), a lower bound on the fractional threshold density.
  Rational c_star_lower;
  // (1 - d/k) * ceil((k-d)/(2d-k)); only defined for 2d > k.
  std::optional<Rational> lyy_c;
};

AsymptoticConstants ComputeAsymptoticConstants(int k, int d);

// Least t >= 0 with t = floor((n+t)/k) - s - 1.
int CorollaryT(int n, int k, int s);

struct CorollaryReduction {
  int t = 0;
  // n+t vertices: E(H) plus every k-set meeting {n, ..., n+t-1}.
  Hypergraph h_prime;
};

CorollaryReduction ReduceForCorollary(const Hypergraph& h, int s);

// delta_d(H') == delta_d(H) + C(n+t-d, k-d) - C(n-d, k-d), by brute force.
bool CheckCorollaryDegree(const Hypergraph& h, const CorollaryReduction& reduction, int d);

}  // namespace hypermatch
