#include "hypermatch/constructions.h"

#include <algorithm>
#include <string>

namespace hypermatch {
namespace {

void CheckNK(int n, int k) {
  if (n < 0) throw InputError("n must be nonnegative");
  if (k < 2) throw InputError("k must be at least 2");
}

VertexSet CheckedSet(int n, const VertexSet& set) {
  VertexSet out = MakeVertexSet(set);
  if (!out.empty() && out.back() >= static_cast<Vertex>(n)) {
    throw InputError("vertex " + std::to_string(out.back()) + " out of range");
  }
  return out;
}

VertexSet Range(int from, int to) {
  VertexSet out;
  for (int v = from; v < to; ++v) out.push_back(static_cast<Vertex>(v));
  return out;
}

template <typename Keep>
Hypergraph FilterComplete(int n, int k, Keep keep) {
  std::vector<Edge> edges;
  ForEachCombination(n, k, [&](std::span<const Vertex> e) {
    if (keep(e)) edges.emplace_back(e.begin(), e.end());
    return true;
  });
  return Hypergraph(n, k, std::move(edges));
}

int CountIn(std::span<const Vertex> e, const VertexMask& set) {
  int count = 0;
  for (Vertex v : e) count += set.Test(v) ? 1 : 0;
  return count;
}

}  // namespace

Hypergraph BuildLayeredBarrier(int n, int k, int l, int w) {
  CheckNK(n, k);
  if (w < 0 || w > n) throw InputError("w must satisfy 0 <= w <= n");
  return BuildLayeredBarrier(n, k, l, Range(n - w, n));
}

Hypergraph BuildLayeredBarrier(int n, int k, int l, const VertexSet& w_set) {
  CheckNK(n, k);
  if (l < 1 || l > k) throw InputError("l must satisfy 1 <= l <= k");
  VertexSet w = CheckedSet(n, w_set);
  VertexMask in_w = VertexMask::Of(static_cast<std::size_t>(n), w);
  return FilterComplete(n, k, [&](std::span<const Vertex> e) {
    int hits = CountIn(e, in_w);
    return hits >= 1 && hits <= l;
  });
}

Hypergraph BuildDivisibilityBarrier(int n, int k, int j, int u) {
  CheckNK(n, k);
  if (u < 0 || u > n) throw InputError("u must satisfy 0 <= u <= n");
  return BuildDivisibilityBarrier(n, k, j, Range(0, u));
}

Hypergraph BuildDivisibilityBarrier(int n, int k, int j, const VertexSet& u_set) {
  CheckNK(n, k);
  if (j != 0 && j != 1) throw InputError("j must be 0 or 1");
  VertexSet u = CheckedSet(n, u_set);
  VertexMask in_u = VertexMask::Of(static_cast<std::size_t>(n), u);
  return FilterComplete(n, k, [&](std::span<const Vertex> e) {
    return CountIn(e, in_u) % 2 == j;
  });
}

Hypergraph BuildBarrier(const BarrierSpec& spec) {
  if (spec.kind == BarrierKind::kLayered) {
    return spec.vertices ? BuildLayeredBarrier(spec.n, spec.k, spec.l, *spec.vertices)
                         : BuildLayeredBarrier(spec.n, spec.k, spec.l, spec.w);
  }
  return spec.vertices ? BuildDivisibilityBarrier(spec.n, spec.k, spec.j, *spec.vertices)
                       : BuildDivisibilityBarrier(spec.n, spec.k, spec.j, spec.u);
}

BarrierSpec BarrierSpecFromJson(const nlohmann::json& j) {
  try {
    BarrierSpec spec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "divisibility") {
      spec.kind = BarrierKind::kDivisibility;
    } else if (kind == "layered") {
      spec.kind = BarrierKind::kLayered;
    } else {
      throw InputError("unknown barrier kind '" + kind + "'");
    }
    spec.n = j.at("n").get<int>();
    spec.k = j.at("k").get<int>();
    spec.j = j.value("j", 0);
    spec.u = j.value("u", 0);
    spec.l = j.value("l", spec.k);
    spec.w = j.value("w", 0);
    if (j.contains("vertices")) spec.vertices = j.at("vertices").get<VertexSet>();
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("bad barrier spec: ") + e.what());
  }
}

nlohmann::json BarrierSpecToJson(const BarrierSpec& spec) {
  nlohmann::json j = {{"n", spec.n}, {"k", spec.k}};
  if (spec.kind == BarrierKind::kLayered) {
    j["kind"] = "layered";
    j["l"] = spec.l;
    j["w"] = spec.w;
  } else {
    j["kind"] = "divisibility";
    j["j"] = spec.j;
    j["u"] = spec.u;
  }
  if (spec.vertices) j["vertices"] = *spec.vertices;
  return j;
}

BigInt LayeredBarrierEdgeCount(int n, int k, int l, int w) {
  BigInt total = 0;
  for (int i = 1; i <= l; ++i) total += Binomial(w, i) * Binomial(n - w, k - i);
  return total;
}

BigInt DivisibilityBarrierEdgeCount(int n, int k, int j, int u) {
  BigInt total = 0;
  for (int i = j; i <= k; i += 2) total += Binomial(u, i) * Binomial(n - u, k - i);
  return total;
}

BigInt ThresholdValue(int n, int k, int d, int s) {
  CheckNK(n, k);
  if (d < 1 || d > k - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  if (s < 0 || s > n / k) throw InputError("s must satisfy 0 <= s <= floor(n/k)");
  return Binomial(n - d, k - d) - Binomial(n - d - s + 1, k - d);
}

int TheoremS(int n, int k, int d) {
  CheckNK(n, k);
  if (k < 3) throw InputError("k must be at least 3");
  if (2 * d < k || d > k - 1) throw InputError("d must satisfy k/2 <= d <= k-1");
  const int r = n % k;
  const int ceil_two_thirds = (2 * k + 2) / 3;
  const bool full = (d < ceil_two_thirds && r >= 2) || (d >= ceil_two_thirds && r >= k - d);
  return full ? n / k : n / k - 1;
}

ThresholdReport MakeThresholdReport(int n, int k, int d) {
  ThresholdReport report;
  report.n = n;
  report.k = k;
  report.d = d;
  report.s = TheoremS(n, k, d);
  report.r = n % k;
  report.threshold = ThresholdValue(n, k, d, report.s);
  return report;
}

AsymptoticConstants ComputeAsymptoticConstants(int k, int d) {
  if (k < 2) throw InputError("k must be at least 2");
  if (d < 1 || d > k - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  AsymptoticConstants out;
  Rational base = Rational(BigInt(k - 1), BigInt(k));
  Rational power = 1;
  for (int i = 0; i < k - d; ++i) power *= base;
  out.c_star_lower = 1 - power;
  out.conjecture_fraction = std::max(Rational(BigInt(1), BigInt(2)), out.c_star_lower);
  if (2 * d > k) {
    int ceil_ratio = (k - d + (2 * d - k) - 1) / (2 * d - k);
    out.lyy_c = (1 - Rational(BigInt(d), BigInt(k))) * ceil_ratio;
  }
  return out;
}

int CorollaryT(int n, int k, int s) {
  CheckNK(n, k);
  if (s < 0 || s > n / k - 1) throw InputError("s must satisfy 0 <= s <= floor(n/k)-1");
  // f(t) = floor((n+t)/k) - s - 1 - t starts >= 0 and drops by at most 1 per step.
  for (int t = 0; t <= n + k; ++t) {
    if (t == (n + t) / k - s - 1) return t;
  }
  throw std::logic_error("no fixed point for the corollary reduction");
}

CorollaryReduction ReduceForCorollary(const Hypergraph& h, int s) {
  const int n = h.n();
  const int k = h.k();
  CorollaryReduction out;
  out.t = CorollaryT(n, k, s);
  std::vector<Edge> edges = h.edges();
  ForEachCombination(n + out.t, k, [&](std::span<const Vertex> e) {
    if (e.back() >= static_cast<Vertex>(n)) edges.emplace_back(e.begin(), e.end());
    return true;
  });
  out.h_prime = Hypergraph(n + out.t, k, std::move(edges));
  return out;
}

bool CheckCorollaryDegree(const Hypergraph& h, const CorollaryReduction& reduction, int d) {
  const int n = h.n();
  const int k = h.k();
  BigInt expected = BigInt(MinDegree(h, d)) + Binomial(n + reduction.t - d, k - d) -
                    Binomial(n - d, k - d);
  return BigInt(MinDegree(reduction.h_prime, d)) == expected;
}

}  // namespace hypermatch
