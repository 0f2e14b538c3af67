#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/hypergraph.h"
#include "hypermatch/numeric.h"
#include "json.hpp"

namespace hypermatch {

enum class ExperimentMode { kTightness, kSearch, kAbsorbDemo, kLatticeReport };

struct ExperimentConfig {
  int n = 9;
  int k = 3;
  int d = 2;
  // 0 selects TheoremS(n, k, d).
  int s = 0;
  int trials = 1;
  std::uint64_t seed = 1;
  Rational mu{1, 100};
  Rational beta{3, 10};
  Rational eps{1, 10};
  ExperimentMode mode = ExperimentMode::kSearch;
  // Near-extremal instances derived from the tight construction.
  int perturbations = 0;
  int workers = 1;
  // Per-solve branch-and-bound node limit; 0 means none.
  std::uint64_t node_limit = 0;
};

std::string ToString(ExperimentMode mode);
ExperimentMode ParseExperimentMode(const std::string& text);

// Seed of trial `index`, independent of scheduling.
std::uint64_t TrialSeed(std::uint64_t seed, std::uint64_t index);

// Each k-set kept independently with probability p, drawn in lexicographic
// order from SeededStream(seed).
Hypergraph RandomHypergraph(int n, int k, const Rational& p, std::uint64_t seed);

// Random start at density min(1, (target + C)/(2C)), C = C(n-d, k-d), then
// for the least d-set of minimum degree below target, add the least missing
// edge through it, until delta_d >= target. Certified on return.
Hypergraph RandomMinDegreeHypergraph(int n, int k, int d, std::uint64_t target,
                                     std::uint64_t seed);

// Adds edges to H as above until delta_d(H) >= target.
Hypergraph RepairToMinDegree(const Hypergraph& h, int d, std::uint64_t target);

struct TightnessCase {
  int n = 0;
  int s = 0;
  BigInt threshold;
  std::uint64_t min_degree = 0;
  int max_matching = 0;
  bool timed_out = false;
  bool passed = false;
};

struct TrialRecord {
  int trial = 0;
  std::string kind;  // "random" or "perturbed"
  std::uint64_t seed = 0;
  std::uint64_t min_degree = 0;
  bool above_threshold = false;
  bool found = false;
  bool timed_out = false;
  std::vector<Edge> witness;
  // Serialized instance, kept only for counterexamples.
  std::optional<std::string> instance;
};

struct VerificationReport {
  ExperimentConfig config;
  int s = 0;
  BigInt threshold;
  std::vector<TightnessCase> cases;
  std::vector<TrialRecord> trials;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  int timed_out = 0;
  int counterexamples = 0;
  double wall_ms = 0;

  // Schema 1. Timing lives under "timing" so the rest is reproducible.
  nlohmann::json ToJson() const;
};

// For each n in [n_min, n_max]: s = TheoremS, space barrier H_k^k with
// |W| = s-1; checks delta_d == threshold and max matching == s-1.
VerificationReport VerifyTightness(int k, int d, int n_min, int n_max,
                                   std::uint64_t node_limit = 0);

// Random instances at degree threshold+1 plus near-extremal perturbations of
// the tight construction; each must contain a matching of size s.
VerificationReport SearchCounterexamples(const ExperimentConfig& config);

// Re-runs a counterexample record from its serialized instance. True when the
// instance still meets the degree hypothesis and still has no s-matching.
bool ReverifyCounterexample(const TrialRecord& record, int d, int s, const BigInt& threshold);

// Copy of a report without its "timing" member.
nlohmann::json WithoutTiming(nlohmann::json report);

}  // namespace hypermatch
