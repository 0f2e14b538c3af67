#include "hypermatch/experiments.h"

#include <algorithm>
#include <chrono>
#include <set>
#include <thread>

#include "hypermatch/constructions.h"
#include "hypermatch/hypergraph_io.h"
#include "hypermatch/matching_solver.h"
#include "hypermatch/random.h"

namespace hypermatch {
namespace {

// Degrees of all d-sets of a growing edge set, indexed by colex rank.
class DegreeTable {
 public:
  DegreeTable(int n, int k, int d, std::set<Edge> edges)
      : n_(n), k_(k), d_(d), edges_(std::move(edges)) {
    degree_.assign(Binomial64(n, d), 0);
    for (const Edge& e : edges_) Bump(e);
  }

  // Adds edges through deficient d-sets until every degree reaches target.
  void RepairTo(std::uint64_t target) {
    while (true) {
      std::optional<VertexSet> worst;
      std::uint64_t worst_degree = target;
      ForEachCombination(n_, d_, [&](std::span<const Vertex> set) {
        std::uint64_t deg = degree_[Rank(set)];
        if (deg < worst_degree) {
          worst_degree = deg;
          worst = VertexSet(set.begin(), set.end());
        }
        return true;
      });
      if (!worst) return;

      VertexSet rest;
      for (Vertex v = 0; v < static_cast<Vertex>(n_); ++v) {
        if (!std::binary_search(worst->begin(), worst->end(), v)) rest.push_back(v);
      }
      std::optional<Edge> least;
      ForEachSubset(rest, k_ - d_, [&](std::span<const Vertex> x) {
        Edge e(worst->begin(), worst->end());
        e.insert(e.end(), x.begin(), x.end());
        std::sort(e.begin(), e.end());
        if (!edges_.count(e) && (!least || e < *least)) least = std::move(e);
        return true;
      });
      if (!least) throw std::logic_error("degree repair found no missing edge");
      edges_.insert(*least);
      Bump(*least);
    }
  }

  Hypergraph Build() const { return Hypergraph(n_, k_, {edges_.begin(), edges_.end()}); }

 private:
  std::size_t Rank(std::span<const Vertex> set) const {
    std::size_t rank = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      rank += Binomial64(static_cast<std::int64_t>(set[i]), static_cast<std::int64_t>(i + 1));
    }
    return rank;
  }

  void Bump(const Edge& e) {
    ForEachSubset(e, d_, [&](std::span<const Vertex> set) {
      ++degree_[Rank(set)];
      return true;
    });
  }

  int n_;
  int k_;
  int d_;
  std::set<Edge> edges_;
  std::vector<std::uint64_t> degree_;
};

std::set<Edge> SampleEdges(int n, int k, const Rational& p, SeededStream& rng) {
  const BernoulliGate keep(p);
  std::set<Edge> edges;
  ForEachCombination(n, k, [&](std::span<const Vertex> e) {
    if (keep(rng)) edges.emplace(e.begin(), e.end());
    return true;
  });
  return edges;
}

void CheckRange(int n, int k, int d) {
  if (k < 2 || n < 0) throw InputError("need k >= 2 and n >= 0");
  if (d < 1 || d > k - 1) throw InputError("d must satisfy 1 <= d <= k-1");
  if (n < d) throw InputError("need n >= d");
}

template <typename Fn>
void ParallelFor(int count, int workers, Fn&& fn) {
  workers = std::max(1, std::min(workers, std::max(count, 1)));
  if (workers == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      for (int i = w; i < count; i += workers) fn(i);
    });
  }
  for (auto& t : threads) t.join();
}

double MillisSince(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string ToString(ExperimentMode mode) {
  switch (mode) {
    case ExperimentMode::kTightness: return "tightness";
    case ExperimentMode::kSearch: return "search";
    case ExperimentMode::kAbsorbDemo: return "absorb-demo";
    case ExperimentMode::kLatticeReport: return "lattice-report";
  }
  return "unknown";
}

ExperimentMode ParseExperimentMode(const std::string& text) {
  if (text == "tightness") return ExperimentMode::kTightness;
  if (text == "search") return ExperimentMode::kSearch;
  if (text == "absorb-demo") return ExperimentMode::kAbsorbDemo;
  if (text == "lattice-report") return ExperimentMode::kLatticeReport;
  throw InputError("unknown mode '" + text + "'");
}

std::uint64_t TrialSeed(std::uint64_t seed, std::uint64_t index) {
  return SeededStream(seed).Split(index).Next();
}

Hypergraph RandomHypergraph(int n, int k, const Rational& p, std::uint64_t seed) {
  SeededStream rng(seed);
  std::set<Edge> edges = SampleEdges(n, k, p, rng);
  return Hypergraph(n, k, {edges.begin(), edges.end()});
}

Hypergraph RandomMinDegreeHypergraph(int n, int k, int d, std::uint64_t target,
                                     std::uint64_t seed) {
  CheckRange(n, k, d);
  const BigInt full = Binomial(n - d, k - d);
  if (BigInt(target) > full) throw InputError("target exceeds C(n-d, k-d)");
  Rational p0 = full == 0 ? Rational(0) : Rational(BigInt(target) + full, 2 * full);
  if (p0 > 1) p0 = 1;
  SeededStream rng(seed);
  DegreeTable table(n, k, d, SampleEdges(n, k, p0, rng));
  table.RepairTo(target);
  Hypergraph out = table.Build();
  if (MinDegree(out, d) < target) throw std::logic_error("degree certificate failed");
  return out;
}

Hypergraph RepairToMinDegree(const Hypergraph& h, int d, std::uint64_t target) {
  CheckRange(h.n(), h.k(), d);
  if (BigInt(target) > Binomial(h.n() - d, h.k() - d)) {
    throw InputError("target exceeds C(n-d, k-d)");
  }
  DegreeTable table(h.n(), h.k(), d, {h.edges().begin(), h.edges().end()});
  table.RepairTo(target);
  return table.Build();
}

nlohmann::json VerificationReport::ToJson() const {
  nlohmann::json cfg = {{"n", config.n},
                        {"k", config.k},
                        {"d", config.d},
                        {"s", config.s},
                        {"trials", config.trials},
                        {"perturbations", config.perturbations},
                        {"seed", config.seed},
                        {"mu", hypermatch::ToString(config.mu)},
                        {"beta", hypermatch::ToString(config.beta)},
                        {"eps", hypermatch::ToString(config.eps)},
                        {"mode", hypermatch::ToString(config.mode)}};
  nlohmann::json out = {{"schema", 1}, {"config", cfg}};
  if (config.mode == ExperimentMode::kTightness) {
    nlohmann::json cases = nlohmann::json::array();
    for (const TightnessCase& c : this->cases) {
      cases.push_back({{"n", c.n},
                       {"s", c.s},
                       {"threshold", c.threshold.str()},
                       {"min_degree", c.min_degree},
                       {"max_matching", c.max_matching},
                       {"timed_out", c.timed_out},
                       {"passed", c.passed}});
    }
    out["cases"] = std::move(cases);
  } else {
    out["s"] = s;
    out["threshold"] = threshold.str();
    nlohmann::json records = nlohmann::json::array();
    for (const TrialRecord& t : trials) {
      nlohmann::json rec = {{"trial", t.trial},
                            {"kind", t.kind},
                            {"seed", t.seed},
                            {"min_degree", t.min_degree},
                            {"above_threshold", t.above_threshold},
                            {"found", t.found},
                            {"timed_out", t.timed_out},
                            {"witness", EdgeListToJson(t.witness)}};
      if (t.instance) rec["counterexample"] = {{"instance", *t.instance}, {"seed", t.seed}};
      records.push_back(std::move(rec));
    }
    out["trials"] = std::move(records);
  }
  out["summary"] = {{"passed", passed},
                    {"failed", failed},
                    {"skipped", skipped},
                    {"timed_out", timed_out},
                    {"counterexamples", counterexamples}};
  out["timing"] = {{"wall_ms", wall_ms}};
  return out;
}

VerificationReport VerifyTightness(int k, int d, int n_min, int n_max, std::uint64_t node_limit) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.config.k = k;
  report.config.d = d;
  report.config.n = n_max;
  report.config.mode = ExperimentMode::kTightness;
  report.config.node_limit = node_limit;
  for (int n = n_min; n <= n_max; ++n) {
    TightnessCase c;
    c.n = n;
    c.s = TheoremS(n, k, d);
    if (c.s < 1) {
      ++report.skipped;
      continue;
    }
    c.threshold = ThresholdValue(n, k, d, c.s);
    Hypergraph barrier = BuildLayeredBarrier(n, k, k, c.s - 1);
    c.min_degree = MinDegree(barrier, d);
    SolverOptions options;
    options.node_limit = node_limit;
    SolverStats stats;
    c.max_matching = static_cast<int>(MaxMatching(barrier, options, &stats).size());
    c.timed_out = stats.aborted;
    c.passed = !c.timed_out && BigInt(c.min_degree) == c.threshold && c.max_matching == c.s - 1;
    if (c.timed_out) {
      ++report.timed_out;
    } else if (c.passed) {
      ++report.passed;
    } else {
      ++report.failed;
    }
    report.cases.push_back(std::move(c));
  }
  report.wall_ms = MillisSince(start);
  return report;
}

VerificationReport SearchCounterexamples(const ExperimentConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (config.trials < 1) throw InputError("trials must be at least 1");
  if (config.perturbations < 0) throw InputError("perturbations must be nonnegative");
  const int n = config.n;
  const int k = config.k;
  const int d = config.d;
  CheckRange(n, k, d);

  VerificationReport report;
  report.config = config;
  report.config.mode = ExperimentMode::kSearch;
  report.s = config.s > 0 ? config.s : TheoremS(n, k, d);
  report.threshold = ThresholdValue(n, k, d, report.s);
  const BigInt full = Binomial(n - d, k - d);
  // The hypothesis is a strict inequality: delta_d > threshold.
  BigInt target = report.threshold + 1;
  if (target < 0) target = 0;
  const bool satisfiable = target <= full;

  const int total = config.trials + config.perturbations;
  report.trials.resize(static_cast<std::size_t>(total));
  ParallelFor(total, config.workers, [&](int index) {
    TrialRecord& rec = report.trials[static_cast<std::size_t>(index)];
    rec.trial = index;
    rec.kind = index < config.trials ? "random" : "perturbed";
    rec.seed = TrialSeed(config.seed, static_cast<std::uint64_t>(index));
    if (!satisfiable) return;
    const std::uint64_t goal = target.convert_to<std::uint64_t>();

    Hypergraph h;
    if (index < config.trials) {
      h = RandomMinDegreeHypergraph(n, k, d, goal, rec.seed);
    } else {
      // Tight construction with a few edges removed and a few added, then
      // repaired back above the threshold.
      SeededStream rng(rec.seed);
      Hypergraph barrier = BuildLayeredBarrier(n, k, k, std::max(report.s - 1, 0));
      std::set<Edge> edges(barrier.edges().begin(), barrier.edges().end());
      const std::uint64_t removals = 1 + rng.Below(3);
      for (std::uint64_t i = 0; i < removals && !edges.empty(); ++i) {
        auto it = edges.begin();
        std::advance(it, static_cast<std::ptrdiff_t>(rng.Below(edges.size())));
        edges.erase(it);
      }
      std::vector<Edge> missing;
      ForEachCombination(n, k, [&](std::span<const Vertex> e) {
        Edge edge(e.begin(), e.end());
        if (!edges.count(edge)) missing.push_back(std::move(edge));
        return true;
      });
      const std::uint64_t additions = 1 + rng.Below(3);
      for (std::uint64_t i = 0; i < additions && !missing.empty(); ++i) {
        std::size_t pick = static_cast<std::size_t>(rng.Below(missing.size()));
        edges.insert(missing[pick]);
        missing.erase(missing.begin() + static_cast<std::ptrdiff_t>(pick));
      }
      h = RepairToMinDegree(Hypergraph(n, k, {edges.begin(), edges.end()}), d, goal);
    }

    rec.min_degree = MinDegree(h, d);
    rec.above_threshold = BigInt(rec.min_degree) > report.threshold;
    SolverOptions options;
    options.node_limit = config.node_limit;
    SolverStats stats;
    std::optional<Matching> witness = FindMatchingOfSize(h, report.s, options, &stats);
    rec.timed_out = stats.aborted;
    rec.found = witness.has_value();
    if (witness) rec.witness = witness->edges();
    if (rec.above_threshold && !rec.found && !rec.timed_out) {
      rec.instance = SerializeHypergraph(h);
    }
  });

  for (const TrialRecord& rec : report.trials) {
    if (!rec.above_threshold) {
      ++report.skipped;
    } else if (rec.timed_out) {
      ++report.timed_out;
    } else if (rec.found) {
      ++report.passed;
    } else {
      ++report.failed;
      ++report.counterexamples;
    }
  }
  report.wall_ms = MillisSince(start);
  return report;
}

bool ReverifyCounterexample(const TrialRecord& record, int d, int s, const BigInt& threshold) {
  if (!record.instance) return false;
  Hypergraph h = ParseHypergraph(*record.instance);
  return BigInt(MinDegree(h, d)) > threshold && !FindMatchingOfSize(h, s).has_value();
}

nlohmann::json WithoutTiming(nlohmann::json report) {
  report.erase("timing");
  return report;
}

}  // namespace hypermatch
