// Command-line front end. Exit codes: 0 success or certified, 1 violation or
// uncertified result, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "robsynth/certificates.hpp"
#include "robsynth/dispatch.hpp"
#include "robsynth/examples.hpp"
#include "robsynth/fault.hpp"
#include "robsynth/genbuchi.hpp"
#include "robsynth/io.hpp"
#include "robsynth/model.hpp"
#include "robsynth/parity.hpp"
#include "robsynth/reach.hpp"

namespace {

using namespace robsynth;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MetricAutomaton load(const std::string& path) { return parse_document(read_file(path)); }

void print_witness(const MetricAutomaton& a, const NotWinningError& e) {
  std::cerr << "not winning: " << e.what() << "\n" << lasso_to_json(a, e.witness());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust strategy synthesis and verification for metric automata"};
  app.require_subcommand(1);

  std::string file;
  std::string strategy_file;
  std::string certificate_file;
  std::string script_file;

  auto* validate = app.add_subcommand("validate", "Check metric axioms, disturbance bounds and reachability");
  validate->add_option("file", file, "Automaton document")->required();

  auto* format = app.add_subcommand("format", "Print the canonical form of a document");
  format->add_option("file", file, "Automaton document")->required();

  auto* synth = app.add_subcommand("synth", "Synthesize an optimally robust strategy");
  synth->add_option("file", file, "Automaton document")->required();
  std::string strategy_out;
  synth->add_option("--strategy-out", strategy_out, "Write the strategy document here");

  auto* verify_cmd = app.add_subcommand("verify", "Compute sigma of a given strategy");
  verify_cmd->add_option("file", file, "Automaton document")->required();
  verify_cmd->add_option("--strategy", strategy_file, "Strategy document")->required();

  auto* certify = app.add_subcommand("certify", "Check a rank certificate and derive its sigma bound");
  certify->add_option("file", file, "Automaton document")->required();
  certify->add_option("--certificate", certificate_file, "Certificate document");
  std::string construct_from;
  certify->add_option("--construct-from", construct_from, "Build the certificate from this strategy instead");
  std::string eta = "1";
  certify->add_option("--eta", eta, "Coefficient of eta(x) = c x for --construct-from");
  bool print_certificate = false;
  certify->add_flag("--print", print_certificate, "Print the certificate document");

  auto* fault = app.add_subcommand("fault-bound", "N-bound for transient faults");
  fault->add_option("file", file, "Automaton document")->required();
  fault->add_option("--strategy", strategy_file, "Strategy document")->required();
  fault->add_option("--certificate", certificate_file, "Certificate the strategy is induced from");
  bool search = false;
  fault->add_flag("--search", search, "Model-check the bound and search the empirical threshold");
  std::size_t state_cap = 10;
  fault->add_option("--state-cap", state_cap, "State limit for the exhaustive search");

  auto* sim = app.add_subcommand("simulate", "Run the strategy against an adversary");
  sim->add_option("file", file, "Automaton document")->required();
  sim->add_option("--strategy", strategy_file, "Strategy document")->required();
  std::size_t n_bound = 0;
  auto* n_opt = sim->add_option("--n-bound", n_bound, "Random adversary with this fault spacing");
  auto* script_opt = sim->add_option("--script", script_file, "Scripted fault document");
  n_opt->excludes(script_opt);
  std::uint64_t seed = 0;
  sim->add_option("--seed", seed, "Random seed");
  std::size_t steps = 50;
  sim->add_option("--steps", steps, "Number of transitions");
  std::size_t spacing = 0;
  sim->add_option("--spacing", spacing, "Spacing the script must respect");

  auto* dot = app.add_subcommand("export-dot", "Graphviz rendering");
  dot->add_option("file", file, "Automaton document")->required();
  dot->add_option("--strategy", strategy_file, "Strategy to highlight");
  bool annotate = false;
  dot->add_flag("--annotate", annotate, "Annotate states with fixpoint values");

  auto* example = app.add_subcommand("example", "Print a bundled example document");
  example->require_subcommand(1);
  auto* running = example->add_subcommand("running", "Seven-state running example");
  bool buchi = false;
  running->add_flag("--buchi", buchi, "Buchi variant");
  auto* gray = example->add_subcommand("gray-code", "Gray-code counter");
  int bits = 3;
  gray->add_option("--bits", bits, "Number of bits (1..12)")->required();
  auto* leader = example->add_subcommand("leader-election", "Four-node consensus");
  std::string rule;
  leader->add_option("--rule", rule, "min, max or floor-avg")->required()->check(CLI::IsMember({"min", "max", "floor-avg"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) {
      const MetricAutomaton a = parse_document(read_file(file), false);
      const ValidationReport rep = validate_automaton(a);
      const ValidationReport co = check_coreachability(a);
      std::cout << validation_to_json(a, rep, co);
      return rep.ok() ? kOk : kViolation;
    }
    if (*format) {
      std::cout << serialize_document(parse_document(read_file(file), false));
      return kOk;
    }
    if (*synth) {
      const MetricAutomaton a = load(file);
      const RobustnessReport rep = synthesize(a);
      std::cout << report_to_json(a, rep);
      if (!strategy_out.empty() && rep.strategy) {
        std::ofstream(strategy_out) << serialize_strategy(a, *rep.strategy);
      }
      return rep.certified ? kOk : kViolation;
    }
    if (*verify_cmd) {
      const MetricAutomaton a = load(file);
      const Strategy s = parse_strategy(a, read_file(strategy_file));
      try {
        const RobustnessReport rep = verify(a, s);
        std::cout << report_to_json(a, rep);
        return rep.certified ? kOk : kViolation;
      } catch (const NotWinningError& e) {
        print_witness(a, e);
        return kViolation;
      }
    }
    if (*certify) {
      const MetricAutomaton a = load(file);
      RankCertificate cert;
      if (!construct_from.empty()) {
        cert = construct_clf_from_strategy(a, parse_strategy(a, read_file(construct_from)), parse_rational(eta));
      } else if (!certificate_file.empty()) {
        cert = parse_certificate(a, read_file(certificate_file));
      } else {
        std::cerr << "certify needs --certificate or --construct-from\n";
        return kUsage;
      }
      if (print_certificate) std::cout << serialize_certificate(a, cert);
      const CertificateCheck chk = check_clf(a, cert);
      std::optional<SigmaBound> bound;
      if (chk.ok() && a.constant_gamma()) bound = sigma_bound_from_certificate(a, cert);
      std::cout << certificate_check_to_json(a, chk, bound);
      return chk.ok() && (!bound || bound->certified) ? kOk : kViolation;
    }
    if (*fault) {
      const MetricAutomaton a = load(file);
      const Strategy s = parse_strategy(a, read_file(strategy_file));
      std::optional<RankCertificate> cert;
      if (!certificate_file.empty()) cert = parse_certificate(a, read_file(certificate_file));
      const FaultBound fb = compute_fault_bound(a, s, cert);
      std::optional<SimOutcome> outcome;
      std::optional<ThresholdResult> threshold;
      if (search && fb.n) {
        outcome = exhaustive_adversary_search(a, s, *fb.n, state_cap);
        threshold = empirical_threshold(a, s, *fb.n, state_cap);
      }
      std::cout << fault_bound_to_json(a, fb, outcome, threshold);
      const bool clean = !outcome || !outcome->violation;
      return fb.certified && clean ? kOk : kViolation;
    }
    if (*sim) {
      const MetricAutomaton a = load(file);
      const Strategy s = parse_strategy(a, read_file(strategy_file));
      Adversary adv;
      if (!script_file.empty()) {
        adv.kind = AdversaryKind::Scripted;
        adv.script = parse_script(a, read_file(script_file));
        adv.script_spacing = spacing;
      } else if (*n_opt) {
        adv.kind = AdversaryKind::Random;
        adv.n_bound = n_bound;
        adv.seed = seed;
      }
      const RunResult run = simulate_run(a, s, adv, steps);
      std::cout << run_to_json(a, run);
      return run.accepted.value_or(false) ? kOk : kViolation;
    }
    if (*dot) {
      const MetricAutomaton a = load(file);
      std::optional<Strategy> s;
      if (!strategy_file.empty()) s = parse_strategy(a, read_file(strategy_file));
      std::optional<std::map<StateId, std::vector<ExtNonNeg>>> values;
      if (annotate) values = fixpoint_values(a);
      std::cout << export_dot(a, s, values);
      return kOk;
    }
    if (*example) {
      if (*running) std::cout << serialize_document(running_example(buchi));
      if (*gray) std::cout << serialize_document(gray_code(bits));
      if (*leader) std::cout << serialize_document(leader_election(parse_consensus_rule(rule)));
      return kOk;
    }
  } catch (const DocumentError& e) {
    std::cerr << e.kind() << " error\n";
    for (const auto& i : e.issues()) std::cerr << "  " << i.location << ": " << i.message << "\n";
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return kViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
