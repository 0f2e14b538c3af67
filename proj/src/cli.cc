#include "hypermatch/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "hypermatch/absorption.h"
#include "hypermatch/constructions.h"
#include "hypermatch/experiments.h"
#include "hypermatch/hypergraph_io.h"
#include "hypermatch/lattice.h"
#include "hypermatch/matching_solver.h"
#include "hypermatch/random.h"
#include "hypermatch/reachability.h"

namespace hypermatch {
namespace {

using nlohmann::json;

struct Flags {
  int n = 9;
  int k = 3;
  int d = 2;
  std::optional<int> s;
  std::optional<int> l;
  int w = 0;
  int u = 0;
  int j = 0;
  std::string mu = "1/100";
  std::string beta = "3/10";
  std::string eps = "1/10";
  std::string p = "1/2";
  std::uint64_t seed = 1;
  int trials = 1;
  int perturbations = 0;
  int workers = 1;
  std::uint64_t node_limit = 0;
  std::optional<std::uint64_t> target;
  std::optional<int> n_min;
  std::string input;
  std::string input2;
  std::string output;
  std::string format;
  std::string kind = "layered";
  std::string spec;
  std::string mode = "search";
  std::string set;
  std::string partition;
  std::string leftover;
  std::optional<int> leftover_size;
};

void AddFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--n", f.n, "vertex count");
  cmd->add_option("--k", f.k, "uniformity");
  cmd->add_option("--d", f.d, "degree order");
  cmd->add_option("--s", f.s, "matching size");
  cmd->add_option("--l", f.l, "layered barrier: max |e ∩ W|");
  cmd->add_option("--w", f.w, "layered barrier: |W|");
  cmd->add_option("--u", f.u, "divisibility barrier: |U|");
  cmd->add_option("--j", f.j, "divisibility barrier: parity");
  cmd->add_option("--mu", f.mu, "robustness threshold (rational)");
  cmd->add_option("--beta", f.beta, "reachability / sampling constant (rational)");
  cmd->add_option("--eps", f.eps, "closeness / exceptional-set constant (rational)");
  cmd->add_option("--p", f.p, "edge probability for random instances (rational)");
  cmd->add_option("--seed", f.seed, "random seed");
  cmd->add_option("--trials", f.trials, "random trials");
  cmd->add_option("--perturbations", f.perturbations, "near-extremal trials");
  cmd->add_option("--workers", f.workers, "worker threads");
  cmd->add_option("--node-limit", f.node_limit, "branch-and-bound node limit (0 = none)");
  cmd->add_option("--target", f.target, "minimum degree target");
  cmd->add_option("--n-min", f.n_min, "smallest n for tightness runs");
  cmd->add_option("--input", f.input, "hypergraph file (text or JSON)");
  cmd->add_option("--input2", f.input2, "second hypergraph file");
  cmd->add_option("--output", f.output, "write result here instead of stdout");
  cmd->add_option("--format", f.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  cmd->add_option("--kind", f.kind, "gen: layered|divisibility|complete|random|mindegree");
  cmd->add_option("--spec", f.spec, "gen: barrier spec JSON file");
  cmd->add_option("--mode", f.mode, "verify: tightness|search");
  cmd->add_option("--set", f.set, "degree: comma-separated vertex set");
  cmd->add_option("--partition", f.partition, "lattice: parts 'V0;V1;...' of comma lists");
  cmd->add_option("--leftover", f.leftover, "absorb: comma-separated leftover set R");
  cmd->add_option("--leftover-size", f.leftover_size, "absorb: random leftover of this size");
}

std::vector<Vertex> ParseList(const std::string& text) {
  std::vector<Vertex> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      long long value = std::stoll(item, &used);
      if (used != item.size() || value < 0) throw std::invalid_argument(item);
      out.push_back(static_cast<Vertex>(value));
    } catch (const std::exception&) {
      throw InputError("bad vertex '" + item + "'");
    }
  }
  return out;
}

json BigToJson(const BigInt& z) {
  if (z <= std::numeric_limits<std::int64_t>::max() &&
      z >= std::numeric_limits<std::int64_t>::min()) {
    return z.convert_to<std::int64_t>();
  }
  return z.str();
}

Hypergraph LoadInput(const Flags& f) {
  if (f.input.empty()) throw InputError("--input is required");
  return ReadHypergraphFile(f.input);
}

std::string RenderText(const json& j) {
  std::string out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    out += it.key() + " " + (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
  }
  return out;
}

json PartitionToJson(const Partition& p) {
  json out = json::array();
  for (const VertexSet& part : p.parts()) out.push_back(part);
  return out;
}

json BasisToJson(const LatticeBasis& b) {
  json out = json::array();
  for (const IndexVector& g : b.generators) out.push_back(g);
  return out;
}

json CmdGen(const Flags& f, std::string& text_out) {
  Hypergraph h;
  if (!f.spec.empty()) {
    std::ifstream in(f.spec);
    if (!in) throw InputError("cannot open " + f.spec);
    json spec;
    try {
      spec = json::parse(in);
    } catch (const json::parse_error& e) {
      throw InputError(std::string("bad spec JSON: ") + e.what());
    }
    h = BuildBarrier(BarrierSpecFromJson(spec));
  } else if (f.kind == "layered") {
    h = BuildLayeredBarrier(f.n, f.k, f.l.value_or(f.k), f.w);
  } else if (f.kind == "divisibility") {
    h = BuildDivisibilityBarrier(f.n, f.k, f.j, f.u);
  } else if (f.kind == "complete") {
    h = Hypergraph::Complete(f.n, f.k);
  } else if (f.kind == "random") {
    h = RandomHypergraph(f.n, f.k, ParseRational(f.p), f.seed);
  } else if (f.kind == "mindegree") {
    if (!f.target) throw InputError("--target is required for mindegree instances");
    h = RandomMinDegreeHypergraph(f.n, f.k, f.d, *f.target, f.seed);
  } else {
    throw InputError("unknown kind '" + f.kind + "'");
  }
  text_out = SerializeHypergraph(h);
  return HypergraphToJson(h);
}

json CmdDegree(const Flags& f) {
  Hypergraph h = LoadInput(f);
  json out = {{"n", h.n()}, {"k", h.k()}};
  if (!f.set.empty()) {
    std::vector<Vertex> s = ParseList(f.set);
    out["set"] = s;
    out["degree"] = DegreeOf(h, s);
    return out;
  }
  out["d"] = f.d;
  const std::uint64_t delta = MinDegree(h, f.d);
  out["min_degree"] = delta;
  if (h.k() >= 3 && 2 * f.d >= h.k() && f.d <= h.k() - 1) {
    const int s = f.s.value_or(TheoremS(h.n(), h.k(), f.d));
    const BigInt threshold = ThresholdValue(h.n(), h.k(), f.d, s);
    out["s"] = s;
    out["r"] = h.n() % h.k();
    out["threshold"] = BigToJson(threshold);
    out["above_threshold"] = BigInt(delta) > threshold;
  }
  return out;
}

json CmdMatch(const Flags& f) {
  Hypergraph h = LoadInput(f);
  SolverOptions options;
  options.node_limit = f.node_limit;
  SolverStats stats;
  json out;
  if (f.s) {
    std::optional<Matching> m = FindMatchingOfSize(h, *f.s, options, &stats);
    out["s"] = *f.s;
    out["found"] = m.has_value();
    out["size"] = m ? m->size() : 0;
    out["edges"] = m ? EdgeListToJson(m->edges()) : json::array();
  } else {
    Matching m = MaxMatching(h, options, &stats);
    out["size"] = m.size();
    out["edges"] = EdgeListToJson(m.edges());
  }
  out["nodes"] = stats.nodes;
  out["aborted"] = stats.aborted;
  return out;
}

json CmdFracMatch(const Flags& f) {
  Hypergraph h = LoadInput(f);
  FractionalMatching fm = MaxFractionalMatching(h);
  json dual = json::array();
  for (const Rational& y : fm.cover) dual.push_back(ToString(y));
  json weights = json::array();
  for (const Rational& w : fm.weights) weights.push_back(ToString(w));
  return {{"size_num", BigToJson(numerator(fm.size))},
          {"size_den", BigToJson(denominator(fm.size))},
          {"dual", std::move(dual)},
          {"weights", std::move(weights)}};
}

Partition ParsePartition(const std::string& text, int n) {
  std::vector<VertexSet> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) parts.push_back(MakeVertexSet(ParseList(item)));
  if (text.empty() || text.back() == ';') parts.emplace_back();
  return Partition(n, std::move(parts));
}

json CmdLattice(const Flags& f) {
  Hypergraph h = LoadInput(f);
  AbsorptionParams params;
  params.mu = ParseRational(f.mu);
  params.beta = ParseRational(f.beta);
  params.eps = ParseRational(f.eps);
  Partition initial =
      f.partition.empty() ? BuildClosedPartition(h, params) : ParsePartition(f.partition, h.n());
  json out;
  out["partition"] = PartitionToJson(initial);
  if (initial.r() == 0) {
    out["robust_vectors"] = json::array();
    out["transferral"] = nullptr;
    out["merged_partition"] = PartitionToJson(initial);
    out["classification"] = nullptr;
    return out;
  }
  LatticeBasis basis = RobustEdgeVectors(h, initial, params.mu);
  out["robust_vectors"] = BasisToJson(basis);
  auto transferral = FindTransferral(basis);
  out["transferral"] = transferral ? json{transferral->first, transferral->second} : json(nullptr);
  Partition merged = MergeTransferralParts(h, initial, params.mu);
  LatticeBasis merged_basis = RobustEdgeVectors(h, merged, params.mu);
  out["merged_partition"] = PartitionToJson(merged);
  out["merged_robust_vectors"] = BasisToJson(merged_basis);
  if (merged.r() == 2 || merged.r() == 3) {
    json classification = json::array();
    for (const auto& [probe, member] : ClassifyLattice(merged_basis).members) {
      classification.push_back({{"vector", probe}, {"member", member}});
    }
    out["classification"] = std::move(classification);
  } else {
    out["classification"] = nullptr;
  }
  return out;
}

json CmdAbsorb(const Flags& f) {
  Hypergraph h = LoadInput(f);
  const Rational beta = ParseRational(f.beta);
  Matching m_prime = SampleAbsorbingMatching(h, f.d, beta, f.seed);
  VertexSet leftover;
  if (!f.leftover.empty()) {
    leftover = MakeVertexSet(ParseList(f.leftover));
  } else if (f.leftover_size) {
    VertexSet pool;
    for (Vertex v = 0; v < static_cast<Vertex>(h.n()); ++v) {
      if (!m_prime.Covers(v)) pool.push_back(v);
    }
    if (*f.leftover_size < 0 || static_cast<std::size_t>(*f.leftover_size) > pool.size()) {
      throw InputError("leftover size exceeds the vertices outside M'");
    }
    SeededStream rng = SeededStream(f.seed).Split(1);
    for (int i = 0; i < *f.leftover_size; ++i) {
      std::size_t pick = static_cast<std::size_t>(rng.Below(pool.size()));
      leftover.push_back(pool[pick]);
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    leftover = MakeVertexSet(std::move(leftover));
  }
  AbsorbResult result = Absorb(h, m_prime, leftover, f.d);
  json steps = json::array();
  for (const AbsorbStep& st : result.trace) {
    steps.push_back({{"step", st.step},
                     {"kind", ToString(st.kind)},
                     {"S", st.s},
                     {"e", st.e},
                     {"e1", st.e1},
                     {"e2", st.e2},
                     {"alternatives", st.alternatives},
                     {"covered", st.covered_after}});
  }
  return {{"d", f.d},
          {"beta", ToString(beta)},
          {"seed", f.seed},
          {"m_prime", EdgeListToJson(m_prime.edges())},
          {"leftover", leftover},
          {"steps", std::move(steps)},
          {"matching", EdgeListToJson(result.matching.edges())},
          {"uncovered", result.uncovered},
          {"success", result.success},
          {"reason", result.reason}};
}

json CmdVerify(const Flags& f, bool& counterexample) {
  ExperimentMode mode = ParseExperimentMode(f.mode);
  VerificationReport report;
  if (mode == ExperimentMode::kTightness) {
    report = VerifyTightness(f.k, f.d, f.n_min.value_or(2 * f.k), f.n, f.node_limit);
  } else if (mode == ExperimentMode::kSearch) {
    ExperimentConfig config;
    config.n = f.n;
    config.k = f.k;
    config.d = f.d;
    config.s = f.s.value_or(0);
    config.trials = f.trials;
    config.seed = f.seed;
    config.mu = ParseRational(f.mu);
    config.beta = ParseRational(f.beta);
    config.eps = ParseRational(f.eps);
    config.perturbations = f.perturbations;
    config.workers = f.workers;
    config.node_limit = f.node_limit;
    report = SearchCounterexamples(config);
  } else {
    throw InputError("verify supports --mode tightness or search");
  }
  counterexample = report.failed > 0 || report.counterexamples > 0;
  return report.ToJson();
}

json CmdCloseness(const Flags& f) {
  Hypergraph h1 = LoadInput(f);
  if (f.input2.empty()) throw InputError("--input2 is required");
  Hypergraph h2 = ReadHypergraphFile(f.input2);
  const Rational eps = ParseRational(f.eps);
  const std::uint64_t distance = DirectedEditDistance(h1, h2);
  return {{"distance", distance},
          {"eps", ToString(eps)},
          {"bound", ToString(eps * Rational(boost::multiprecision::pow(
                                       BigInt(h1.n()), static_cast<unsigned>(h1.k()))))},
          {"eps_close", IsEpsClose(h1, h2, eps)}};
}

void Emit(const Flags& f, const std::string& contents, std::ostream& out) {
  if (f.output.empty()) {
    out << contents;
  } else {
    WriteTextFile(f.output, contents);
  }
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degree-conditioned hypergraph matching toolkit", "hypermatch"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"gen", "generate a barrier or random instance"},
      {"degree", "minimum d-degree and threshold check"},
      {"match", "exact maximum matching or s-matching witness"},
      {"fracmatch", "exact maximum fractional matching with dual cover"},
      {"lattice", "robust edge-vectors, transferrals and closed partitions"},
      {"absorb", "sample an absorbing matching and absorb a leftover set"},
      {"verify", "tightness or counterexample experiments"},
      {"closeness", "directed edit distance and eps-closeness"},
  };
  std::vector<CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    AddFlags(sub, flags);
    subs.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream captured_out;
    std::ostringstream captured_err;
    int code = app.exit(e, captured_out, captured_err);
    out << captured_out.str();
    err << captured_err.str();
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    std::string name;
    for (CLI::App* sub : subs) {
      if (sub->parsed()) name = sub->get_name();
    }
    const bool text = flags.format == "text" || (flags.format.empty() && name == "gen");
    json result;
    std::string gen_text;
    bool counterexample = false;
    if (name == "gen") {
      result = CmdGen(flags, gen_text);
    } else if (name == "degree") {
      result = CmdDegree(flags);
    } else if (name == "match") {
      result = CmdMatch(flags);
    } else if (name == "fracmatch") {
      result = CmdFracMatch(flags);
    } else if (name == "lattice") {
      result = CmdLattice(flags);
    } else if (name == "absorb") {
      result = CmdAbsorb(flags);
    } else if (name == "verify") {
      result = CmdVerify(flags, counterexample);
    } else if (name == "closeness") {
      result = CmdCloseness(flags);
    }
    std::string rendered;
    if (name == "gen") {
      rendered = text ? gen_text : result.dump() + "\n";
    } else {
      rendered = text ? RenderText(result) : result.dump(2) + "\n";
    }
    Emit(flags, rendered, out);
    return counterexample ? kExitCounterexample : kExitOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternalError;
  }
}

}  // namespace hypermatch
