#include "hypermatch/absorption.h"

#include <algorithm>
#include <numeric>
#include <thread>

#include "hypermatch/matching_solver.h"
#include "hypermatch/random.h"

namespace hypermatch {
namespace {

void CheckAbsorbingArgs(const Hypergraph& h, std::size_t s_size, int d) {
  if (d < 1 || d > h.k() - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  if (s_size != static_cast<std::size_t>(2 * h.k() - d)) {
    throw InputError("S must have exactly 2k-d vertices");
  }
}

VertexSet Union(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet Difference(std::span<const Vertex> a, std::span<const Vertex> b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::size_t IntersectionSize(std::span<const Vertex> a, std::span<const Vertex> b) {
  std::size_t count = 0;
  for (Vertex v : a) count += std::binary_search(b.begin(), b.end(), v) ? 1 : 0;
  return count;
}

}  // namespace

std::optional<AbsorbingWitness> FindAbsorbingWitness(const Hypergraph& h,
                                                     std::span<const Vertex> s_in,
                                                     std::span<const Vertex> e_in, int d) {
  CheckAbsorbingArgs(h, s_in.size(), d);
  const VertexSet s = MakeVertexSet({s_in.begin(), s_in.end()});
  const VertexSet e = MakeVertexSet({e_in.begin(), e_in.end()});
  if (s.size() != s_in.size()) throw InputError("S repeats a vertex");
  if (!h.Contains(e) || IntersectionSize(s, e) != 0) return std::nullopt;

  const int k = h.k();
  const int l1 = d / 2;
  const int l2 = d - l1;
  std::optional<AbsorbingWitness> best;

  // e1 = A ∪ B with A ⊆ S, B ⊆ e; e2 = (S \ A) ∪ C with C ⊆ e \ B.
  ForEachSubset(s, k - l1, [&](std::span<const Vertex> a) {
    const VertexSet s_rest = Difference(s, a);
    ForEachSubset(e, l1, [&](std::span<const Vertex> b) {
      Edge e1 = Union(a, b);
      if (!h.Contains(e1)) return true;
      const VertexSet e_rest = Difference(e, b);
      ForEachSubset(e_rest, l2, [&](std::span<const Vertex> c) {
        Edge e2 = Union(s_rest, c);
        if (!h.Contains(e2)) return true;
        if (!best || std::tie(e1, e2) < std::tie(best->e1, best->e2)) {
          best = AbsorbingWitness{e, e1, e2, Difference(e_rest, c)};
        }
        return true;
      });
      return true;
    });
    return true;
  });
  if (best && !VerifyAbsorbingWitness(h, s, d, *best)) {
    throw std::logic_error("absorbing witness failed to verify");
  }
  return best;
}

bool VerifyAbsorbingWitness(const Hypergraph& h, std::span<const Vertex> s_in, int d,
                            const AbsorbingWitness& w) {
  const std::size_t k = static_cast<std::size_t>(h.k());
  const VertexSet s = MakeVertexSet({s_in.begin(), s_in.end()});
  const std::size_t l1 = static_cast<std::size_t>(d / 2);
  const std::size_t l2 = static_cast<std::size_t>(d) - l1;
  if (!h.Contains(w.e) || !h.Contains(w.e1) || !h.Contains(w.e2)) return false;
  if (IntersectionSize(w.e1, w.e2) != 0 || IntersectionSize(w.e, s) != 0) return false;
  if (IntersectionSize(w.e1, s) != k - l1 || IntersectionSize(w.e1, w.e) != l1) return false;
  if (IntersectionSize(w.e2, s) != k - l2 || IntersectionSize(w.e2, w.e) != l2) return false;
  const VertexSet missed = Difference(Union(s, w.e), Union(w.e1, w.e2));
  return missed == w.uncovered && missed.size() == k - static_cast<std::size_t>(d);
}

std::uint64_t CountSAbsorbing(const Hypergraph& h, std::span<const Vertex> s_in, int d,
                              int workers) {
  CheckAbsorbingArgs(h, s_in.size(), d);
  const VertexSet s = MakeVertexSet({s_in.begin(), s_in.end()});
  const VertexMask s_mask = VertexMask::Of(static_cast<std::size_t>(h.n()), s);
  workers = std::max(1, workers);
  std::vector<std::uint64_t> partial(static_cast<std::size_t>(workers), 0);
  auto run = [&](int worker) {
    std::uint64_t count = 0;
    for (std::size_t i = static_cast<std::size_t>(worker); i < h.num_edges();
         i += static_cast<std::size_t>(workers)) {
      if (h.mask(i).Intersects(s_mask)) continue;
      if (FindAbsorbingWitness(h, s, h.edge(i), d)) ++count;
    }
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

Rational SamplingProbability(int n, int k, const Rational& beta) {
  if (n <= 0) throw InputError("n must be positive");
  BigInt n_pow = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k - 1));
  return beta / (Rational(n_pow) * (k + 1));
}

Matching SampleAbsorbingMatching(const Hypergraph& h, int d, const Rational& beta,
                                 std::uint64_t seed) {
  if (d < 1 || d > h.k() - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  if (beta <= 0 || beta >= 1) throw InputError("beta must lie in (0, 1)");
  if (h.n() == 0) return Matching();
  SeededStream rng(seed);
  const BernoulliGate keep(SamplingProbability(h.n(), h.k(), beta));
  std::vector<std::size_t> sampled;
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    if (keep(rng)) sampled.push_back(i);
  }

  VertexMask used(static_cast<std::size_t>(h.n()));
  std::vector<Edge> kept;
  for (std::size_t i : sampled) {
    if (used.Intersects(h.mask(i))) continue;
    used |= h.mask(i);
    kept.push_back(h.edge(i));
  }
  const std::size_t cap = Floor(beta * h.n() / h.k()).convert_to<std::size_t>();
  if (kept.size() > cap) kept.resize(cap);
  return Matching(std::move(kept));
}

AbsorbResult Absorb(const Hypergraph& h, const Matching& m_prime, std::span<const Vertex> r_in,
                    int d, const AbsorbOptions& options) {
  const int k = h.k();
  if (d < 1 || d > k - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  if (!m_prime.IsValidIn(h)) throw InputError("M' must be a matching of H");
  const VertexSet r = MakeVertexSet({r_in.begin(), r_in.end()});
  if (r.size() != r_in.size()) throw InputError("R repeats a vertex");
  if (!r.empty() && r.back() >= static_cast<Vertex>(h.n())) throw InputError("R out of range");
  if (IntersectionSize(r, m_prime.Covered()) != 0) throw InputError("R must avoid V(M')");

  const std::size_t s_size = static_cast<std::size_t>(2 * k - d);
  const std::size_t max_steps = (r.size() + s_size - 1) / s_size + r.size();

  AbsorbResult out;
  std::vector<Edge> matching = m_prime.edges();
  std::sort(matching.begin(), matching.end());
  VertexSet uncovered = r;
  std::size_t covered = m_prime.size() * static_cast<std::size_t>(k);

  for (std::size_t step = 0; uncovered.size() >= s_size; ++step) {
    if (step == max_steps) {
      out.reason = "iteration cap reached";
      break;
    }
    const VertexSet s(uncovered.begin(), uncovered.begin() + static_cast<std::ptrdiff_t>(s_size));
    AbsorbStep record;
    record.step = static_cast<int>(step);
    record.s = s;

    std::optional<std::size_t> chosen;
    std::optional<AbsorbingWitness> witness;
    for (std::size_t i = 0; i < matching.size(); ++i) {
      auto found = FindAbsorbingWitness(h, s, matching[i], d);
      if (!found) continue;
      ++record.alternatives;
      if (!chosen) {
        chosen = i;
        witness = std::move(found);
      }
    }

    if (chosen) {
      matching.erase(matching.begin() + static_cast<std::ptrdiff_t>(*chosen));
      matching.push_back(witness->e1);
      matching.push_back(witness->e2);
      uncovered = Union(Difference(uncovered, s), witness->uncovered);
      covered += static_cast<std::size_t>(k);
      record.kind = AbsorbStep::Kind::kSwap;
      record.e = witness->e;
      record.e1 = witness->e1;
      record.e2 = witness->e2;
    } else {
      std::optional<Edge> direct;
      if (options.extend_directly) {
        ForEachSubset(uncovered, k, [&](std::span<const Vertex> candidate) {
          if (!h.Contains(candidate)) return true;
          direct = Edge(candidate.begin(), candidate.end());
          return false;
        });
      }
      if (!direct) {
        out.reason = "no S-absorbing edge in the matching";
        break;
      }
      matching.push_back(*direct);
      uncovered = Difference(uncovered, *direct);
      covered += static_cast<std::size_t>(k);
      record.kind = AbsorbStep::Kind::kExtend;
      record.e1 = *direct;
    }
    std::sort(matching.begin(), matching.end());
    record.covered_after = covered;
    out.trace.push_back(std::move(record));
  }

  out.matching = Matching(std::move(matching));
  out.uncovered = std::move(uncovered);
  out.success = out.uncovered.size() < s_size;
  if (out.success) out.reason.clear();
  return out;
}

bool IsAbsorbingISet(const Hypergraph& h, std::span<const Vertex> t_in,
                     std::span<const Vertex> s_in) {
  const VertexSet t = MakeVertexSet({t_in.begin(), t_in.end()});
  const VertexSet s = MakeVertexSet({s_in.begin(), s_in.end()});
  if (t.size() != t_in.size() || s.size() != s_in.size()) {
    throw InputError("sets must not repeat vertices");
  }
  if (t.size() % static_cast<std::size_t>(h.k()) != 0) throw InputError("|T| must be divisible by k");
  if (s.size() != static_cast<std::size_t>(h.k())) throw InputError("|S| must equal k");
  if (IntersectionSize(t, s) != 0) throw InputError("T and S must be disjoint");
  return HasPerfectMatching(Induced(h, t).graph) &&
         HasPerfectMatching(Induced(h, Union(t, s)).graph);
}

std::vector<VertexSet> FindAbsorbingISets(const Hypergraph& h, std::span<const Vertex> s_in,
                                          int i, std::size_t limit) {
  if (i < 0) throw InputError("i must be nonnegative");
  const VertexSet s = MakeVertexSet({s_in.begin(), s_in.end()});
  VertexSet pool;
  for (Vertex v = 0; v < static_cast<Vertex>(h.n()); ++v) {
    if (!std::binary_search(s.begin(), s.end(), v)) pool.push_back(v);
  }
  std::vector<VertexSet> out;
  if (limit == 0) return out;
  ForEachSubset(pool, i * h.k(), [&](std::span<const Vertex> t) {
    if (IsAbsorbingISet(h, t, s)) out.emplace_back(t.begin(), t.end());
    return out.size() < limit;
  });
  return out;
}

std::string ToString(AbsorbStep::Kind kind) {
  return kind == AbsorbStep::Kind::kSwap ? "swap" : "extend";
}

}  // namespace hypermatch
