// Acceptance run: one PASS/FAIL line per criterion.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "hypermatch/absorption.h"
#include "hypermatch/cli.h"
#include "hypermatch/constructions.h"
#include "hypermatch/experiments.h"
#include "hypermatch/hypergraph_io.h"
#include "hypermatch/lattice.h"
#include "hypermatch/matching_solver.h"
#include "hypermatch/random.h"
#include "hypermatch/reachability.h"
#include "oracles.h"

using namespace hypermatch;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void Require(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void Criterion(int number, const std::string& title, double limit_seconds,
               const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = body();
  } catch (const std::exception& e) {
    outcome.ok = false;
    outcome.detail = std::string("exception: ") + e.what();
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && seconds >= limit_seconds) {
    outcome.Require(false, "over the time limit");
  }
  if (!outcome.ok) ++failures;
  std::printf("criterion %2d: %s  %s  [%.2fs%s]%s%s\n", number, outcome.ok ? "PASS" : "FAIL",
              title.c_str(), seconds,
              limit_seconds > 0 ? (" / limit " + std::to_string(int(limit_seconds)) + "s").c_str()
                                : "",
              outcome.detail.empty() ? "" : "  -- ", outcome.detail.c_str());
  std::fflush(stdout);
}

std::string Tag(std::initializer_list<std::pair<const char*, long long>> fields) {
  std::ostringstream out;
  for (const auto& [name, value] : fields) out << name << "=" << value << " ";
  return out.str();
}

Outcome DegreeFormula() {
  Outcome o;
  int checked = 0;
  for (auto [k, d] : {std::pair{3, 2}, {4, 2}, {4, 3}, {5, 3}}) {
    const int n_max = k == 3 ? 14 : 12;
    for (int n = 2 * k; n <= n_max; ++n) {
      for (int s = 0; s <= n / k; ++s) {
        Hypergraph h = BuildLayeredBarrier(n, k, k, s);
        const std::int64_t expected =
            oracle::Binom(n - d, k - d) - oracle::Binom(n - d - s, k - d);
        o.Require(static_cast<std::int64_t>(MinDegree(h, d)) == expected,
                  Tag({{"k", k}, {"d", d}, {"n", n}, {"s", s}}));
        ++checked;
      }
    }
  }
  o.detail = o.ok ? std::to_string(checked) + " instances exact" : o.detail;
  return o;
}

Outcome Tightness() {
  Outcome o;
  VerificationReport report = VerifyTightness(3, 2, 7, 14);
  o.Require(report.cases.size() == 8, "expected 8 cases");
  for (const TightnessCase& c : report.cases) {
    const std::int64_t threshold =
        oracle::Binom(c.n - 2, 1) - oracle::Binom(c.n - 2 - c.s + 1, 1);
    o.Require(c.threshold == threshold, Tag({{"threshold n", c.n}}));
    o.Require(BigInt(c.min_degree) == c.threshold, Tag({{"degree n", c.n}}));
    o.Require(c.max_matching == c.s - 1, Tag({{"matching n", c.n}}));
    o.Require(!c.timed_out && c.passed, Tag({{"case n", c.n}}));
  }
  o.Require(report.failed == 0, "report counts a failure");
  if (o.ok) o.detail = "n=7..14 exact (space barrier, |W|=s-1)";
  return o;
}

Outcome BarrierBounds() {
  Outcome o;
  int checked = 0;
  for (int k = 3; k <= 4; ++k) {
    for (int n = k; n <= 12; ++n) {
      for (int l = 1; l <= k; ++l) {
        for (int w = 0; w <= n; ++w) {
          Hypergraph h = BuildLayeredBarrier(n, k, l, w);
          const auto tag = Tag({{"k", k}, {"n", n}, {"l", l}, {"w", w}});
          const int integral = static_cast<int>(MaxMatching(h).size());
          o.Require(integral <= w, "integer bound " + tag);
          FractionalMatching fm = MaxFractionalMatching(h);
          o.Require(fm.size <= Rational(w), "fractional bound " + tag);
          o.Require(fm.size >= Rational(integral), "relaxation " + tag);
          const Rational n_over_k = MakeRational(n, k);
          if (l == k) {
            o.Require(fm.size == (Rational(w) < n_over_k ? Rational(w) : n_over_k),
                      "min(w, n/k) " + tag);
          }
          if (Rational(w) < n_over_k) {
            o.Require(fm.size == Rational(w), "exactly w " + tag);
            std::vector<Rational> indicator(static_cast<std::size_t>(n), Rational(0));
            for (int v = n - w; v < n; ++v) indicator[static_cast<std::size_t>(v)] = 1;
            o.Require(IsFractionalCover(h, indicator), "W cover " + tag);
          }
          ++checked;
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(checked) + " barriers exact";
  return o;
}

Outcome Divisibility() {
  Outcome o;
  o.Require(MaxMatching(BuildDivisibilityBarrier(6, 3, 0, 3)).size() == 1, "H^0(6,3,3)");
  int blocked = 0;
  int lattices = 0;
  for (int k = 3; k <= 4; ++k) {
    for (int n = k; n <= 12; n += k) {
      const int edges_in_pm = n / k;
      for (int j = 0; j <= 1; ++j) {
        for (int u = 0; u <= n; ++u) {
          const auto tag = Tag({{"k", k}, {"n", n}, {"j", j}, {"u", u}});
          Hypergraph h = BuildDivisibilityBarrier(n, k, j, u);
          // A perfect matching has n/k edges, each with |e ∩ U| ≡ j.
          const bool parity_violated = (u - j * edges_in_pm) % 2 != 0;
          if (parity_violated) {
            o.Require(!HasPerfectMatching(h), "perfect matching " + tag);
            ++blocked;
          }
          if (u == 0 || u == n || h.num_edges() == 0) continue;
          VertexSet us;
          VertexSet ws;
          for (int v = 0; v < n; ++v) (v < u ? us : ws).push_back(static_cast<Vertex>(v));
          Partition p(n, {{}, us, ws});
          const Rational mu(1, boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(k)));
          LatticeBasis basis = RobustEdgeVectors(h, p, mu);
          o.Require(!FindTransferral(basis).has_value(), "transferral " + tag);
          ++lattices;
        }
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(blocked) + " parity-violating barriers, " +
               std::to_string(lattices) + " transferral-free lattices";
  }
  return o;
}

Outcome Counterexamples() {
  Outcome o;
  int total = 0;
  for (int n = 7; n <= 9; ++n) {
    ExperimentConfig config;
    config.n = n;
    config.k = 3;
    config.d = 2;
    config.trials = 200;
    config.perturbations = 50;
    config.seed = 1;
    config.workers = 4;
    VerificationReport report = SearchCounterexamples(config);
    if (report.counterexamples > 0 || report.failed > 0) {
      const std::string path = "counterexamples_n" + std::to_string(n) + ".json";
      std::ofstream(path) << report.ToJson().dump(2) << "\n";
      o.Require(false, "archived in " + path);
    }
    for (const TrialRecord& t : report.trials) {
      o.Require(t.above_threshold && t.found && !t.timed_out,
                Tag({{"n", n}, {"trial", t.trial}}));
      ++total;
    }
  }
  if (o.ok) o.detail = std::to_string(total) + " instances, all contain an s-matching";
  return o;
}

Outcome LatticeOracle() {
  Outcome o;
  SeededStream rng(20240601);
  int yes = 0;
  int no = 0;
  for (int b = 0; b < 500; ++b) {
    const int r = 1 + static_cast<int>(rng.Below(3));
    const int k = 2 + static_cast<int>(rng.Below(4));
    std::vector<IndexVector> all = AllSVectors(r, k);
    std::vector<IndexVector> gens;
    const int count = 1 + static_cast<int>(rng.Below(4));
    for (int i = 0; i < count; ++i) gens.push_back(all[rng.Below(all.size())]);
    LatticeBasis basis = MakeLatticeBasis(r, k, gens);
    for (int t = 0; t < 4; ++t) {
      IndexVector target(static_cast<std::size_t>(r));
      if (t % 2 == 0) {
        for (auto& x : target) x = static_cast<std::int64_t>(rng.Below(13)) - 6;
      } else {
        // Small combination of the generators, so some targets are members.
        LatticeCoefficients a(basis.generators.size());
        for (auto& x : a) x = static_cast<std::int64_t>(rng.Below(5)) - 2;
        target = Combine(basis, a);
        bool in_box = true;
        for (auto x : target) in_box = in_box && x >= -6 && x <= 6;
        if (!in_box) continue;
      }
      const auto tag = Tag({{"basis", b}, {"target", t}});
      auto exact = LatticeContains(basis, target);
      if (exact) {
        o.Require(Combine(basis, *exact) == target, "certificate " + tag);
        ++yes;
      } else {
        BoundedSearchStats stats;
        auto bounded = BoundedDecomposition(basis, target, 20, &stats);
        o.Require(!bounded.has_value(), "missed member " + tag);
        o.Require(stats.complete, "bounded search incomplete " + tag);
        ++no;
      }
    }
  }
  if (o.ok) o.detail = std::to_string(yes) + " members certified, " + std::to_string(no) +
                       " non-members confirmed at bound 20";
  return o;
}

Outcome Reachability() {
  Outcome o;
  for (int n = 5; n <= 10; ++n) {
    Hypergraph h = Hypergraph::Complete(n, 3);
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
      for (Vertex v = u + 1; v < static_cast<Vertex>(n); ++v) {
        o.Require(static_cast<std::int64_t>(ReachableCount(h, u, v, 1)) ==
                      oracle::Binom(n - 2, 2),
                  Tag({{"n", n}, {"u", u}, {"v", v}}));
      }
    }
  }
  if (o.ok) o.detail = "all pairs, n=5..10";
  return o;
}

Outcome Absorption() {
  Outcome o;
  const Rational beta(3, 10);
  std::size_t worst = 0;
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    SeededStream rng = SeededStream(77).Split(trial);
    Hypergraph h = RandomHypergraph(30, 3, MakeRational(9, 10), rng.Next());
    Matching m_prime = SampleAbsorbingMatching(h, 2, beta, rng.Next());
    VertexSet pool;
    for (Vertex v = 0; v < 30; ++v) {
      if (!m_prime.Covers(v)) pool.push_back(v);
    }
    const int size = static_cast<int>(rng.Below(7));
    VertexSet r;
    for (int i = 0; i < size; ++i) {
      std::size_t pick = static_cast<std::size_t>(rng.Below(pool.size()));
      r.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    r = MakeVertexSet(r);
    AbsorbResult result = Absorb(h, m_prime, r, 2);
    const auto tag = Tag({{"trial", static_cast<long long>(trial)}});
    o.Require(result.matching.IsValidIn(h), "invalid matching " + tag);
    VertexSet target = m_prime.Covered();
    target.insert(target.end(), r.begin(), r.end());
    target = MakeVertexSet(target);
    std::size_t uncovered = 0;
    for (Vertex v : target) uncovered += result.matching.Covers(v) ? 0 : 1;
    for (Vertex v : result.matching.Covered()) {
      o.Require(std::binary_search(target.begin(), target.end(), v), "left V(M')+R " + tag);
    }
    o.Require(uncovered <= 3, "uncovered " + std::to_string(uncovered) + " " + tag);
    o.Require(uncovered == result.uncovered.size(), "uncovered bookkeeping " + tag);
    worst = std::max(worst, uncovered);
  }
  if (o.ok) o.detail = "20 trials, at most " + std::to_string(worst) + " uncovered";
  return o;
}

Outcome Corollary() {
  Outcome o;
  int checked = 0;
  for (int n = 20; n <= 60; ++n) {
    for (int k = 3; k <= 5; ++k) {
      for (int s = 1; s <= n / k - 1; ++s) {
        const int t = CorollaryT(n, k, s);
        const auto tag = Tag({{"n", n}, {"k", k}, {"s", s}});
        o.Require(t >= 0 && t == (n + t) / k - s - 1, "fixed point " + tag);
        o.Require(s + t == (n + t) / k - 1, "s+t " + tag);
        for (int smaller = 0; smaller < t; ++smaller) {
          o.Require(smaller != (n + smaller) / k - s - 1, "not least " + tag);
        }
        ++checked;
      }
    }
  }
  int degree_checks = 0;
  for (int n = 6; n <= 9; ++n) {
    for (int s = 1; s <= n / 3 - 1; ++s) {
      Hypergraph h = RandomHypergraph(n, 3, MakeRational(2, 3), static_cast<std::uint64_t>(n * 10 + s));
      CorollaryReduction red = ReduceForCorollary(h, s);
      for (int d = 1; d <= 2; ++d) {
        const std::int64_t expected = oracle::MinDegree(h, d) +
                                      oracle::Binom(n + red.t - d, 3 - d) -
                                      oracle::Binom(n - d, 3 - d);
        o.Require(oracle::MinDegree(red.h_prime, d) == expected,
                  "degree shift " + Tag({{"n", n}, {"s", s}, {"d", d}}));
        ++degree_checks;
      }
    }
  }
  if (o.ok) {
    o.detail = std::to_string(checked) + " fixed points, " + std::to_string(degree_checks) +
               " brute-force degree shifts";
  }
  return o;
}

std::string RunCapture(const std::vector<std::string>& args, int* code = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  int c = RunCli(args, out, err);
  if (code) *code = c;
  return out.str();
}

Outcome Determinism() {
  Outcome o;
  const std::string dir = "acceptance_determinism";
  std::filesystem::create_directories(dir);
  const std::string dense = dir + "/dense.txt";
  const std::string degree = dir + "/degree.txt";
  const std::vector<std::vector<std::string>> commands = {
      {"gen", "--kind", "random", "--n", "30", "--k", "3", "--p", "9/10", "--seed", "5"},
      {"gen", "--kind", "mindegree", "--n", "9", "--k", "3", "--d", "2", "--target", "3",
       "--seed", "11"},
      {"absorb", "--input", dense, "--d", "2", "--beta", "3/10", "--seed", "8",
       "--leftover-size", "6"},
      {"lattice", "--input", degree, "--beta", "1/100", "--eps", "1/100"},
      {"match", "--input", degree},
      {"fracmatch", "--input", degree},
  };
  int code = 0;
  std::ofstream(dense) << RunCapture(commands[0], &code);
  o.Require(code == 0, "gen random");
  std::ofstream(degree) << RunCapture(commands[1], &code);
  o.Require(code == 0, "gen mindegree");
  for (const auto& args : commands) {
    std::string first = RunCapture(args, &code);
    o.Require(code == 0, "exit code of " + args[0]);
    o.Require(!first.empty() && first == RunCapture(args), "repeat of " + args[0]);
  }
  for (int n : {8, 9}) {
    std::vector<std::string> base = {"verify", "--mode", "search", "--n", std::to_string(n),
                                      "--k", "3", "--d", "2", "--trials", "30",
                                      "--perturbations", "10", "--seed", "3"};
    std::vector<std::string> one = base;
    one.insert(one.end(), {"--workers", "1"});
    std::vector<std::string> many = base;
    many.insert(many.end(), {"--workers", "6"});
    auto a = WithoutTiming(nlohmann::json::parse(RunCapture(one, &code)));
    o.Require(code == 0, "verify exit code");
    auto b = WithoutTiming(nlohmann::json::parse(RunCapture(one)));
    auto c = WithoutTiming(nlohmann::json::parse(RunCapture(many)));
    o.Require(a.dump() == b.dump(), "verify repeat n=" + std::to_string(n));
    o.Require(a.dump() == c.dump(), "verify workers n=" + std::to_string(n));
  }
  Hypergraph h = ReadHypergraphFile(degree);
  o.Require(ReachableCount(h, 0, 1, 1, 1) == ReachableCount(h, 0, 1, 1, 5), "reach workers");
  Vertex s[] = {0, 1, 2, 3};
  Hypergraph d30 = ReadHypergraphFile(dense);
  o.Require(CountSAbsorbing(d30, s, 2, 1) == CountSAbsorbing(d30, s, 2, 7), "count workers");
  std::filesystem::remove_all(dir);
  if (o.ok) o.detail = "CLI outputs byte-identical across runs and worker counts";
  return o;
}

}  // namespace

int main() {
  Criterion(1, "space-barrier degree formula", 120, DegreeFormula);
  Criterion(2, "tightness suite k=3 d=2", 120, Tightness);
  Criterion(3, "barrier matching bounds", 60, BarrierBounds);
  Criterion(4, "divisibility barrier", 0, Divisibility);
  Criterion(5, "counterexample search", 600, Counterexamples);
  Criterion(6, "lattice oracle equivalence", 60, LatticeOracle);
  Criterion(7, "reachability closed form", 0, Reachability);
  Criterion(8, "absorption contract", 120, Absorption);
  Criterion(9, "corollary fixed point", 0, Corollary);
  Criterion(10, "determinism", 0, Determinism);
  std::printf("%s: %d of 10 criteria failed\n", failures == 0 ? "PASS" : "FAIL", failures);
  return failures == 0 ? 0 : 1;
}
