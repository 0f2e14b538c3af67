#include "hypermatch/lattice.h"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace hypermatch {
namespace {

using BigMatrix = std::vector<std::vector<BigInt>>;

IndexVector UnitDifference(int r, int i, int j) {
  IndexVector v(static_cast<std::size_t>(r), 0);
  v[static_cast<std::size_t>(i - 1)] += 1;
  v[static_cast<std::size_t>(j - 1)] -= 1;
  return v;
}

void CheckDimension(const LatticeBasis& basis, const IndexVector& v) {
  if (v.size() != static_cast<std::size_t>(basis.r)) {
    throw InputError("vector has " + std::to_string(v.size()) + " coordinates, lattice has " +
                     std::to_string(basis.r));
  }
}

// Column operations on the r x g generator matrix A, mirrored on a g x g
// unimodular U, until A*U is in column echelon form. Then A*U*y = v is solved
// by forward substitution and x = U*y.
std::optional<std::vector<BigInt>> SolveOverIntegers(const LatticeBasis& basis,
                                                     const IndexVector& v) {
  const std::size_t rows = static_cast<std::size_t>(basis.r);
  const std::size_t cols = basis.generators.size();
  BigMatrix a(rows, std::vector<BigInt>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t i = 0; i < rows; ++i) a[i][c] = basis.generators[c][i];
  }
  BigMatrix u(cols, std::vector<BigInt>(cols, 0));
  for (std::size_t c = 0; c < cols; ++c) u[c][c] = 1;

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  // column y -= q * column x
  auto sub_col = [&](std::size_t y, std::size_t x, const BigInt& q) {
    for (auto& row : a) row[y] -= q * row[x];
    for (auto& row : u) row[y] -= q * row[x];
  };
  auto negate_col = [&](std::size_t x) {
    for (auto& row : a) row[x] = -row[x];
    for (auto& row : u) row[x] = -row[x];
  };

  std::vector<std::size_t> pivot_rows;
  std::size_t next = 0;
  for (std::size_t i = 0; i < rows && next < cols; ++i) {
    while (true) {
      std::size_t smallest = cols;
      for (std::size_t c = next; c < cols; ++c) {
        if (a[i][c] != 0 && (smallest == cols || abs(a[i][c]) < abs(a[i][smallest]))) {
          smallest = c;
        }
      }
      if (smallest == cols) break;
      swap_cols(next, smallest);
      bool reduced = true;
      for (std::size_t c = next + 1; c < cols; ++c) {
        if (a[i][c] == 0) continue;
        sub_col(c, next, a[i][c] / a[i][next]);
        if (a[i][c] != 0) reduced = false;
      }
      if (reduced) break;
    }
    if (next < cols && a[i][next] != 0) {
      if (a[i][next] < 0) negate_col(next);
      pivot_rows.push_back(i);
      ++next;
    }
  }

  std::vector<BigInt> y(cols, 0);
  for (std::size_t j = 0; j < pivot_rows.size(); ++j) {
    const std::size_t row = pivot_rows[j];
    BigInt residual = v[row];
    for (std::size_t l = 0; l < j; ++l) residual -= a[row][l] * y[l];
    if (residual % a[row][j] != 0) return std::nullopt;
    y[j] = residual / a[row][j];
  }
  for (std::size_t i = 0; i < rows; ++i) {
    BigInt total = 0;
    for (std::size_t j = 0; j < pivot_rows.size(); ++j) total += a[i][j] * y[j];
    if (total != v[i]) return std::nullopt;
  }
  std::vector<BigInt> x(cols, 0);
  for (std::size_t c = 0; c < cols; ++c) {
    for (std::size_t j = 0; j < pivot_rows.size(); ++j) x[c] += u[c][j] * y[j];
  }
  return x;
}

}  // namespace

Partition::Partition(int n, std::vector<VertexSet> parts) : n_(n), parts_(std::move(parts)) {
  if (n < 0) throw InputError("n must be nonnegative");
  if (parts_.empty()) parts_.emplace_back();
  owner_.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    parts_[i] = MakeVertexSet(std::move(parts_[i]));
    for (Vertex v : parts_[i]) {
      if (v >= static_cast<Vertex>(n)) throw InputError("partition vertex out of range");
      if (owner_[v] != -1) throw InputError("partition parts overlap");
      owner_[v] = static_cast<int>(i);
    }
  }
  for (int owner : owner_) {
    if (owner == -1) throw InputError("partition does not cover every vertex");
  }
}

Partition Partition::Trivial(int n) {
  VertexSet all;
  for (int v = 0; v < n; ++v) all.push_back(static_cast<Vertex>(v));
  return Partition(n, {VertexSet{}, std::move(all)});
}

IndexVector IndexVectorOf(const Partition& p, std::span<const Vertex> s) {
  IndexVector out(static_cast<std::size_t>(p.r()), 0);
  for (Vertex v : s) {
    if (v >= static_cast<Vertex>(p.n())) throw InputError("vertex out of range");
    const int owner = p.PartOf(v);
    if (owner > 0) ++out[static_cast<std::size_t>(owner - 1)];
  }
  return out;
}

bool IsSVector(const IndexVector& v, int s) {
  std::int64_t total = 0;
  for (std::int64_t x : v) {
    if (x < 0) return false;
    total += x;
  }
  return total == s;
}

std::vector<IndexVector> AllSVectors(int r, int s) {
  std::vector<IndexVector> out;
  if (r <= 0 || s < 0) return out;
  IndexVector current(static_cast<std::size_t>(r), 0);
  auto fill = [&](auto&& self, std::size_t pos, std::int64_t left) -> void {
    if (pos + 1 == current.size()) {
      current[pos] = left;
      out.push_back(current);
      return;
    }
    for (std::int64_t x = 0; x <= left; ++x) {
      current[pos] = x;
      self(self, pos + 1, left - x);
    }
  };
  fill(fill, 0, s);
  return out;
}

LatticeBasis MakeLatticeBasis(int r, int k, std::vector<IndexVector> generators) {
  if (r < 0) throw InputError("r must be nonnegative");
  for (const IndexVector& g : generators) {
    if (g.size() != static_cast<std::size_t>(r) || !IsSVector(g, k)) {
      throw InputError("lattice generators must be k-vectors of length r");
    }
  }
  // Drop repeats but keep the caller's order: coefficients are positional.
  std::vector<IndexVector> unique;
  for (IndexVector& g : generators) {
    if (std::find(unique.begin(), unique.end(), g) == unique.end()) unique.push_back(std::move(g));
  }
  return LatticeBasis{r, k, std::move(unique)};
}

std::map<IndexVector, std::uint64_t> EdgeVectorHistogram(const Hypergraph& h,
                                                         const Partition& p) {
  if (p.n() != h.n()) throw InputError("partition and hypergraph disagree on n");
  std::map<IndexVector, std::uint64_t> histogram;
  for (const Edge& e : h.edges()) ++histogram[IndexVectorOf(p, e)];
  return histogram;
}

LatticeBasis RobustEdgeVectors(const Hypergraph& h, const Partition& p, const Rational& mu) {
  if (mu < 0) throw InputError("mu must be nonnegative");
  const Rational bar = mu * Rational(boost::multiprecision::pow(
                                BigInt(h.n()), static_cast<unsigned>(h.k())));
  std::vector<IndexVector> robust;
  for (const auto& [vec, count] : EdgeVectorHistogram(h, p)) {
    // Edges meeting V0 do not produce k-vectors over the other parts.
    if (!IsSVector(vec, h.k())) continue;
    if (Rational(count) >= bar) robust.push_back(vec);
  }
  return MakeLatticeBasis(p.r(), h.k(), std::move(robust));
}

IndexVector Combine(const LatticeBasis& basis, const LatticeCoefficients& coefficients) {
  IndexVector out(static_cast<std::size_t>(basis.r), 0);
  for (std::size_t g = 0; g < basis.generators.size(); ++g) {
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] += coefficients[g] * basis.generators[g][i];
    }
  }
  return out;
}

std::optional<LatticeCoefficients> LatticeContains(const LatticeBasis& basis,
                                                   const IndexVector& v) {
  CheckDimension(basis, v);
  std::optional<std::vector<BigInt>> solution = SolveOverIntegers(basis, v);
  if (!solution) return std::nullopt;
  LatticeCoefficients coefficients;
  coefficients.reserve(solution->size());
  for (const BigInt& x : *solution) {
    if (x > std::numeric_limits<std::int64_t>::max() ||
        x < std::numeric_limits<std::int64_t>::min()) {
      throw std::logic_error("lattice certificate exceeds 64 bits");
    }
    coefficients.push_back(x.convert_to<std::int64_t>());
  }
  if (Combine(basis, coefficients) != v) {
    throw std::logic_error("lattice certificate failed to verify");
  }
  return coefficients;
}

std::optional<std::pair<int, int>> FindTransferral(const LatticeBasis& basis) {
  if (basis.r < 1) throw InputError("lattice needs at least one part");
  for (int i = 1; i <= basis.r; ++i) {
    for (int j = 1; j <= basis.r; ++j) {
      if (i == j) continue;
      if (LatticeContains(basis, UnitDifference(basis.r, i, j))) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

LatticeClassification ClassifyLattice(const LatticeBasis& basis) {
  LatticeClassification out;
  out.r = basis.r;
  std::vector<IndexVector> probes;
  if (basis.r == 2) {
    probes = {{2, -2}, {3, -3}};
  } else if (basis.r == 3) {
    probes = {{-2, 1, 1}, {1, -2, 1}, {1, 1, -2}};
  } else {
    throw InputError("classification needs r in {2, 3}");
  }
  for (IndexVector& probe : probes) {
    bool member = LatticeContains(basis, probe).has_value();
    out.members.emplace_back(std::move(probe), member);
  }
  return out;
}

bool NeighborhoodNonempty(const LatticeBasis& basis, const IndexVector& v, int p) {
  CheckDimension(basis, v);
  if (p < 1 || p > basis.k - 1) throw InputError("p must satisfy 1 <= p <= k-1");
  if (!IsSVector(v, p)) throw InputError("v must be a p-vector");
  for (const IndexVector& other : AllSVectors(basis.r, basis.k - p)) {
    IndexVector sum = v;
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += other[i];
    if (LatticeContains(basis, sum)) return true;
  }
  return false;
}

std::optional<std::pair<int, int>> FindAbsorbingPair(const LatticeBasis& basis,
                                                     const IndexVector& u) {
  CheckDimension(basis, u);
  if (basis.r < 1 || basis.r > 3) throw InputError("absorbing pairs need 1 <= r <= 3");
  if (!IsSVector(u, basis.k + 2)) throw InputError("u must be a (k+2)-vector");
  for (int i = 1; i <= basis.r; ++i) {
    for (int j = 1; j <= basis.r; ++j) {
      IndexVector rest = u;
      --rest[static_cast<std::size_t>(i - 1)];
      --rest[static_cast<std::size_t>(j - 1)];
      if (LatticeContains(basis, rest)) return std::make_pair(i, j);
    }
  }
  return std::nullopt;
}

std::optional<LatticeCoefficients> BoundedDecomposition(const LatticeBasis& basis,
                                                        const IndexVector& target, int bound,
                                                        BoundedSearchStats* stats,
                                                        std::uint64_t node_budget) {
  CheckDimension(basis, target);
  if (bound < 0) throw InputError("bound must be nonnegative");
  BoundedSearchStats local;
  BoundedSearchStats& st = stats ? *stats : local;
  st = BoundedSearchStats{};

  const std::size_t g = basis.generators.size();
  const std::size_t r = static_cast<std::size_t>(basis.r);
  // reach[i][c]: bound * sum over generators >= i of |coordinate c|.
  std::vector<std::vector<std::int64_t>> reach(g + 1, std::vector<std::int64_t>(r, 0));
  for (std::size_t i = g; i-- > 0;) {
    for (std::size_t c = 0; c < r; ++c) {
      reach[i][c] = reach[i + 1][c] + bound * std::abs(basis.generators[i][c]);
    }
  }

  LatticeCoefficients coefficients(g, 0);
  IndexVector residual = target;

  auto within_reach = [&](std::size_t i) {
    for (std::size_t c = 0; c < r; ++c) {
      if (std::abs(residual[c]) > reach[i][c]) return false;
    }
    return true;
  };

  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (++st.nodes > node_budget) {
      st.complete = false;
      return false;
    }
    if (i == g) {
      return std::all_of(residual.begin(), residual.end(), [](std::int64_t x) { return x == 0; });
    }
    if (!within_reach(i)) return false;
    const IndexVector& gen = basis.generators[i];
    if (i + 1 == g) {
      // Last generator: the coefficient is forced by any nonzero coordinate.
      std::size_t c = 0;
      while (c < r && gen[c] == 0) ++c;
      if (c == r) return self(self, g);
      if (residual[c] % gen[c] != 0) return false;
      const std::int64_t a = residual[c] / gen[c];
      if (std::abs(a) > bound) return false;
      for (std::size_t j = 0; j < r; ++j) {
        if (residual[j] != a * gen[j]) return false;
      }
      coefficients[i] = a;
      for (std::size_t j = 0; j < r; ++j) residual[j] -= a * gen[j];
      ++st.nodes;
      return true;
    }
    for (int step = 0; step <= 2 * bound; ++step) {
      const std::int64_t a = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
      coefficients[i] = a;
      for (std::size_t j = 0; j < r; ++j) residual[j] -= a * gen[j];
      if (self(self, i + 1)) return true;
      for (std::size_t j = 0; j < r; ++j) residual[j] += a * gen[j];
      coefficients[i] = 0;
      if (!st.complete) return false;
    }
    return false;
  };

  if (!search(search, 0)) return std::nullopt;
  if (Combine(basis, coefficients) != target) {
    throw std::logic_error("bounded decomposition failed to verify");
  }
  return coefficients;
}

}  // namespace hypermatch
