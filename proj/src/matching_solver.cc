#include "hypermatch/matching_solver.h"

#include <stdexcept>

#include "hypermatch/rational_simplex.h"

namespace hypermatch {
namespace {

class BranchAndBound {
 public:
  // Searches for a matching larger than `floor`, stopping at `goal` edges.
  BranchAndBound(const Hypergraph& h, int floor, int goal, std::uint64_t node_limit)
      : h_(h),
        k_(static_cast<std::size_t>(h.k())),
        best_size_(floor),
        goal_(goal),
        node_limit_(node_limit) {}

  void Run() {
    VertexMask free(static_cast<std::size_t>(h_.n()));
    for (int v = 0; v < h_.n(); ++v) free.Set(static_cast<Vertex>(v));
    Search(free, free.Count());
  }

  const std::vector<std::size_t>& best() const { return best_; }
  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

 private:
  // Returns true once the goal is reached.
  bool Search(VertexMask& free, std::size_t free_count) {
    if (node_limit_ != 0 && nodes_ >= node_limit_) {
      aborted_ = true;
      return true;
    }
    ++nodes_;
    const int current = static_cast<int>(chosen_.size());
    if (current > best_size_) {
      best_size_ = current;
      best_ = chosen_;
      if (best_size_ >= goal_) return true;
    }
    if (current + static_cast<int>(free_count / k_) <= best_size_) return false;

    const std::size_t v = free.NextSet(0);
    if (v >= free.size()) return false;

    for (std::size_t idx : h_.incident(static_cast<Vertex>(v))) {
      const VertexMask& e = h_.mask(idx);
      if (!free.Contains(e)) continue;
      free.Subtract(e);
      chosen_.push_back(idx);
      bool done = Search(free, free_count - k_);
      chosen_.pop_back();
      free |= e;
      if (done) return true;
      if (current + static_cast<int>(free_count / k_) <= best_size_) return false;
    }

    // Leave v uncovered.
    free.Reset(static_cast<Vertex>(v));
    bool done = Search(free, free_count - 1);
    free.Set(static_cast<Vertex>(v));
    return done;
  }

  const Hypergraph& h_;
  const std::size_t k_;
  int best_size_;
  const int goal_;
  const std::uint64_t node_limit_;
  bool aborted_ = false;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
};

int RootCap(const Hypergraph& h, const SolverOptions& options) {
  int cap = h.n() / h.k();
  if (options.lp_root_bound) {
    BigInt lp_floor = Floor(MaxFractionalMatching(h).size);
    if (lp_floor < cap) cap = lp_floor.convert_to<int>();
  }
  return cap;
}

Matching ToMatching(const Hypergraph& h, const std::vector<std::size_t>& indices) {
  std::vector<Edge> edges;
  edges.reserve(indices.size());
  for (std::size_t idx : indices) edges.push_back(h.edge(idx));
  return Matching(std::move(edges));
}

}  // namespace

Matching MaxMatching(const Hypergraph& h, const SolverOptions& options, SolverStats* stats) {
  const int cap = RootCap(h, options);
  if (stats) *stats = SolverStats{};
  if (cap == 0) return Matching();
  BranchAndBound search(h, 0, cap, options.node_limit);
  search.Run();
  if (stats) *stats = SolverStats{search.nodes(), search.aborted()};
  return ToMatching(h, search.best());
}

std::optional<Matching> FindMatchingOfSize(const Hypergraph& h, int s,
                                           const SolverOptions& options, SolverStats* stats) {
  if (s < 0) throw InputError("matching size must be nonnegative");
  if (stats) *stats = SolverStats{};
  if (s == 0) return Matching();
  if (s > RootCap(h, options)) return std::nullopt;
  BranchAndBound search(h, s - 1, s, options.node_limit);
  search.Run();
  if (stats) *stats = SolverStats{search.nodes(), search.aborted()};
  if (static_cast<int>(search.best().size()) != s) return std::nullopt;
  return ToMatching(h, search.best());
}

bool HasPerfectMatching(const Hypergraph& h) {
  if (h.n() % h.k() != 0) return false;
  return FindMatchingOfSize(h, h.n() / h.k()).has_value();
}

bool IsFractionalMatching(const Hypergraph& h, const std::vector<Rational>& weights) {
  if (weights.size() != h.num_edges()) return false;
  std::vector<Rational> load(static_cast<std::size_t>(h.n()), 0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] < 0 || weights[i] > 1) return false;
    for (Vertex v : h.edge(i)) load[v] += weights[i];
  }
  for (const Rational& l : load) {
    if (l > 1) return false;
  }
  return true;
}

bool IsFractionalCover(const Hypergraph& h, const std::vector<Rational>& cover) {
  if (cover.size() != static_cast<std::size_t>(h.n())) return false;
  for (const Rational& y : cover) {
    if (y < 0) return false;
  }
  for (const Edge& e : h.edges()) {
    Rational total = 0;
    for (Vertex v : e) total += cover[v];
    if (total < 1) return false;
  }
  return true;
}

FractionalMatching MaxFractionalMatching(const Hypergraph& h) {
  // One row per vertex. The w <= 1 bounds are implied by the vertex rows.
  LinearProgram lp;
  const std::size_t n = static_cast<std::size_t>(h.n());
  lp.a.assign(n, std::vector<Rational>(h.num_edges(), 0));
  for (std::size_t i = 0; i < h.num_edges(); ++i) {
    for (Vertex v : h.edge(i)) lp.a[v][i] = 1;
  }
  lp.b.assign(n, 1);
  lp.c.assign(h.num_edges(), 1);
  LpSolution solution = SolveLinearProgram(lp);
  if (!solution.bounded) throw std::logic_error("fractional matching LP reported unbounded");

  FractionalMatching out;
  out.weights = std::move(solution.primal);
  out.cover = std::move(solution.dual);
  out.size = 0;
  for (const Rational& w : out.weights) out.size += w;
  Rational cover_total = 0;
  for (const Rational& y : out.cover) cover_total += y;
  if (out.size != solution.objective || cover_total != out.size ||
      !IsFractionalMatching(h, out.weights) || !IsFractionalCover(h, out.cover)) {
    throw std::logic_error("fractional matching certificate failed to verify");
  }
  return out;
}

}  // namespace hypermatch
