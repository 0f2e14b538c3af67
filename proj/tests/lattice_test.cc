#include "doctest.h"
#include "hypermatch/constructions.h"
#include "hypermatch/lattice.h"
#include "hypermatch/random.h"
#include "hypermatch/reachability.h"
#include "oracles.h"

using namespace hypermatch;

namespace {

using Pair = std::pair<int, int>;

LatticeBasis Basis(int r, int k, std::vector<IndexVector> g) {
  return MakeLatticeBasis(r, k, std::move(g));
}

Hypergraph TwoBlocks() {
  const Hypergraph k6 = Hypergraph::Complete(6, 3);
  std::vector<Edge> edges = k6.edges();
  for (const Edge& e : k6.edges()) {
    edges.push_back({e[0] + 6, e[1] + 6, e[2] + 6});
  }
  return Hypergraph(12, 3, edges);
}

}  // namespace

TEST_CASE("index vectors") {
  Partition p(5, {{}, {0, 1, 2}, {3, 4}});
  Vertex s[] = {0, 3, 4};
  CHECK(IndexVectorOf(p, s) == IndexVector{1, 2});
  Partition with_v0(5, {{0, 1}, {2, 3, 4}});
  Vertex inside_v0[] = {0, 1};
  CHECK(IndexVectorOf(with_v0, inside_v0) == IndexVector{0});
  CHECK(IndexVectorOf(p, std::span<const Vertex>()) == IndexVector{0, 0});
  CHECK_THROWS_AS(Partition(5, {{}, {0, 1}, {1, 2, 3, 4}}), InputError);
  CHECK_THROWS_AS(Partition(5, {{}, {0, 1}, {3, 4}}), InputError);

  CHECK(IsSVector({1, 2}, 3));
  CHECK_FALSE(IsSVector({-1, 4}, 3));
  CHECK(AllSVectors(2, 3) == std::vector<IndexVector>{{0, 3}, {1, 2}, {2, 1}, {3, 0}});
  CHECK(AllSVectors(3, 2).size() == 6);
}

TEST_CASE("robust edge vectors") {
  Hypergraph k9 = Hypergraph::Complete(9, 3);
  Partition p(9, {{}, {0, 1, 2, 3, 4}, {5, 6, 7, 8}});
  auto histogram = EdgeVectorHistogram(k9, p);
  CHECK(histogram[{3, 0}] == static_cast<std::uint64_t>(oracle::Binom(5, 3)));
  CHECK(histogram[{2, 1}] == static_cast<std::uint64_t>(oracle::Binom(5, 2) * 4));
  CHECK(histogram[{1, 2}] == static_cast<std::uint64_t>(5 * oracle::Binom(4, 2)));
  CHECK(histogram[{0, 3}] == static_cast<std::uint64_t>(oracle::Binom(4, 3)));
  LatticeBasis robust = RobustEdgeVectors(k9, p, MakeRational(1, 100));
  CHECK(robust.generators == std::vector<IndexVector>{{1, 2}, {2, 1}, {3, 0}});
  CHECK(RobustEdgeVectors(k9, p, MakeRational(0)).generators.size() == 4);
  CHECK(RobustEdgeVectors(Hypergraph(9, 3), p, MakeRational(0)).generators.empty());
}

TEST_CASE("lattice membership") {
  LatticeBasis b = Basis(2, 3, {{2, 1}, {1, 2}});
  auto diff = LatticeContains(b, {1, -1});
  REQUIRE(diff.has_value());
  CHECK(Combine(b, *diff) == IndexVector{1, -1});
  CHECK_FALSE(LatticeContains(b, {1, 0}).has_value());
  auto single = LatticeContains(Basis(2, 3, {{2, 1}}), {2, 1});
  REQUIRE(single.has_value());
  CHECK(*single == LatticeCoefficients{1});
  CHECK(LatticeContains(Basis(2, 3, {}), {0, 0}).has_value());
  CHECK_FALSE(LatticeContains(Basis(2, 3, {}), {1, -1}).has_value());
  CHECK_THROWS_AS(Basis(2, 3, {{2, 2}}), InputError);
  CHECK_THROWS_AS(Basis(2, 3, {{3}}), InputError);
}

TEST_CASE("transferrals") {
  CHECK(FindTransferral(Basis(2, 3, {{3, 0}, {2, 1}, {1, 2}})) == Pair{1, 2});
  CHECK_FALSE(FindTransferral(Basis(2, 3, {{2, 1}})).has_value());
  CHECK_FALSE(FindTransferral(Basis(2, 3, {{0, 3}, {2, 1}})).has_value());
  CHECK(FindTransferral(Basis(3, 3, {{1, 1, 1}, {0, 2, 1}})) == Pair{1, 2});
}

TEST_CASE("lattice classification") {
  LatticeClassification c = ClassifyLattice(Basis(2, 3, {{2, 1}, {0, 3}}));
  REQUIRE(c.members.size() == 2);
  CHECK(c.members[0] == std::pair<IndexVector, bool>{{2, -2}, true});
  CHECK(c.members[1] == std::pair<IndexVector, bool>{{3, -3}, false});

  LatticeClassification lone = ClassifyLattice(Basis(2, 3, {{2, 1}}));
  CHECK_FALSE(lone.members[0].second);
  CHECK_FALSE(lone.members[1].second);

  LatticeClassification full = ClassifyLattice(Basis(3, 3, AllSVectors(3, 3)));
  REQUIRE(full.members.size() == 3);
  for (const auto& [probe, member] : full.members) CHECK(member);

  CHECK_THROWS_AS(ClassifyLattice(Basis(1, 3, {{3}})), InputError);
  CHECK_THROWS_AS(ClassifyLattice(Basis(4, 3, {})), InputError);
}

TEST_CASE("neighbourhoods and absorbing pairs") {
  CHECK(NeighborhoodNonempty(Basis(2, 3, {{2, 1}}), {2, 0}, 2));
  CHECK_FALSE(NeighborhoodNonempty(Basis(2, 3, {{3, 0}}), {0, 2}, 2));
  LatticeBasis full = Basis(2, 3, AllSVectors(2, 3));
  for (const IndexVector& v : AllSVectors(2, 1)) CHECK(NeighborhoodNonempty(full, v, 1));

  for (int k = 3; k <= 5; ++k) {
    CHECK(FindAbsorbingPair(Basis(1, k, {{k}}), {k + 2}) == Pair{1, 1});
  }
  CHECK(FindAbsorbingPair(Basis(2, 3, {{2, 1}, {0, 3}}), {2, 3}) == Pair{1, 1});
  CHECK_FALSE(FindAbsorbingPair(Basis(2, 3, {}), {2, 3}).has_value());
}

TEST_CASE("bounded decompositions") {
  LatticeBasis b = Basis(2, 3, {{2, 1}, {1, 2}});
  CHECK(BoundedDecomposition(b, {4, 2}, 2) == LatticeCoefficients{2, 0});
  CHECK(BoundedDecomposition(b, {1, -1}, 1) == LatticeCoefficients{1, -1});
  CHECK_FALSE(BoundedDecomposition(Basis(2, 3, {{2, 1}}), {1, -1}, 20).has_value());
  CHECK_FALSE(BoundedDecomposition(b, {4, 2}, 1).has_value());
  CHECK(BoundedDecomposition(b, {0, 0}, 0) == LatticeCoefficients{0, 0});
}

TEST_CASE("membership never misses a bounded decomposition") {
  SeededStream rng(2024);
  for (int trial = 0; trial < 150; ++trial) {
    const int r = 1 + static_cast<int>(rng.Below(3));
    const int k = 2 + static_cast<int>(rng.Below(4));
    std::vector<IndexVector> all = AllSVectors(r, k);
    std::vector<IndexVector> gens;
    const int count = 1 + static_cast<int>(rng.Below(3));
    for (int i = 0; i < count; ++i) gens.push_back(all[rng.Below(all.size())]);
    LatticeBasis b = Basis(r, k, gens);
    IndexVector target(static_cast<std::size_t>(r));
    for (auto& x : target) x = static_cast<std::int64_t>(rng.Below(13)) - 6;
    auto exact = LatticeContains(b, target);
    if (exact) CHECK(Combine(b, *exact) == target);
    auto bounded = BoundedDecomposition(b, target, 6);
    if (bounded) {
      CHECK(Combine(b, *bounded) == target);
      CHECK(exact.has_value());
    }
  }
}

TEST_CASE("parity of U is a lattice invariant of the divisibility barrier") {
  for (int k = 3; k <= 4; ++k) {
    for (int j = 0; j <= 1; ++j) {
      const int n = 3 * k;
      const int u = k + 1;
      Hypergraph h = BuildDivisibilityBarrier(n, k, j, u);
      VertexSet us;
      VertexSet ws;
      for (int v = 0; v < n; ++v) (v < u ? us : ws).push_back(static_cast<Vertex>(v));
      Partition p(n, {{}, us, ws});
      LatticeBasis robust = RobustEdgeVectors(h, p, MakeRational(1, 10000));
      CHECK_FALSE(robust.generators.empty());
      for (const IndexVector& g : robust.generators) CHECK(g[0] % 2 == j);
      CHECK_FALSE(LatticeContains(robust, {1, -1}).has_value());
      CHECK_FALSE(FindTransferral(robust).has_value());
      CHECK(MergeTransferralParts(h, p, MakeRational(1, 10000)) == p);
    }
  }
}

TEST_CASE("reachability counts") {
  Hypergraph k6 = Hypergraph::Complete(6, 3);
  CHECK(ReachableCount(k6, 0, 5, 1) == 6);
  CHECK(ReachableCount(Hypergraph(6, 3), 0, 5, 1) == 0);
  Hypergraph blocks = TwoBlocks();
  CHECK(ReachableCount(blocks, 0, 7, 1) == 0);
  CHECK(ReachableCount(blocks, 0, 1, 1) == static_cast<std::uint64_t>(oracle::Binom(4, 2)));

  Hypergraph h = BuildLayeredBarrier(8, 3, 2, 3);
  for (Vertex u = 0; u < 8; ++u) {
    for (Vertex v = u + 1; v < 8; ++v) {
      CHECK(ReachableCount(h, u, v, 1) == ReachableCount(h, v, u, 1));
      CHECK(ReachableCount(h, u, v, 1, 3) == ReachableCount(h, u, v, 1));
    }
  }
  // i = 2 runs through the solver.
  CHECK(ReachableCount(Hypergraph::Complete(7, 3), 0, 1, 2) ==
        static_cast<std::uint64_t>(oracle::Binom(5, 5)));
  CHECK(ReachableCount(Hypergraph::Complete(8, 3), 0, 1, 2, 2) ==
        static_cast<std::uint64_t>(oracle::Binom(6, 5)));
}

TEST_CASE("closedness") {
  Hypergraph k6 = Hypergraph::Complete(6, 3);
  std::vector<Vertex> all = {0, 1, 2, 3, 4, 5};
  CHECK(IsClosed(k6, all, MakeRational(1, 6), 1));
  CHECK_FALSE(IsClosed(k6, all, MakeRational(7, 36), 1));
  std::vector<Vertex> one = {3};
  CHECK(IsClosed(Hypergraph(6, 3), one, MakeRational(1, 2), 1));
  std::vector<Vertex> spanning = {0, 1, 6, 7};
  CHECK_FALSE(IsClosed(TwoBlocks(), spanning, MakeRational(1, 1000), 1));
}

TEST_CASE("closed partitions") {
  AbsorptionParams params;
  params.beta = MakeRational(1, 20);
  params.eps = MakeRational(1, 100);
  Partition single = BuildClosedPartition(Hypergraph::Complete(9, 3), params);
  CHECK(single.r() == 1);
  CHECK(single.exceptional().empty());
  CHECK(single.part(1).size() == 9);

  params.beta = MakeRational(1, 100);
  Partition two = BuildClosedPartition(TwoBlocks(), params);
  CHECK(two.r() == 2);
  CHECK(two.exceptional().empty());
  CHECK(two.part(1) == VertexSet{0, 1, 2, 3, 4, 5});
  CHECK(two.part(2) == VertexSet{6, 7, 8, 9, 10, 11});

  Partition none = BuildClosedPartition(Hypergraph(7, 3), params);
  CHECK(none.r() == 0);
  CHECK(none.exceptional().size() == 7);

  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    std::vector<Edge> edges;
    SeededStream rng(seed);
    const Hypergraph k9 = Hypergraph::Complete(9, 3);
    for (const Edge& e : k9.edges()) {
      if (rng.Below(3) != 0) edges.push_back(e);
    }
    Hypergraph h(9, 3, edges);
    Partition p = BuildClosedPartition(h, params);
    for (int i = 1; i <= p.r(); ++i) CHECK(IsClosed(h, p.part(i), params.beta, 1));
  }
}

TEST_CASE("merging along transferrals") {
  Hypergraph k9 = Hypergraph::Complete(9, 3);
  Partition split(9, {{}, {0, 1, 2, 3, 4}, {5, 6, 7, 8}});
  Partition merged = MergeTransferralParts(k9, split, MakeRational(1, 100));
  CHECK(merged.r() == 1);
  CHECK(merged.part(1).size() == 9);
  CHECK(MergeTransferralParts(k9, merged, MakeRational(1, 100)) == merged);
  CHECK(MergeTransferralParts(k9, Partition::Trivial(9), MakeRational(1, 100)) ==
        Partition::Trivial(9));

  Hypergraph h = BuildDivisibilityBarrier(9, 3, 1, 4);
  Partition three(9, {{}, {0, 1}, {2, 3}, {4, 5, 6, 7, 8}});
  Partition out = MergeTransferralParts(h, three, MakeRational(1, 1000));
  CHECK_FALSE(FindTransferral(RobustEdgeVectors(h, out, MakeRational(1, 1000))).has_value());
  CHECK(MergeTransferralParts(h, out, MakeRational(1, 1000)) == out);
}
