#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "robsynth/automaton.hpp"
#include "robsynth/model.hpp"

namespace robsynth {

/// Rank values per state plus the linear coefficients of f(x) = c x and
/// eta(x) = c x. Reachability and Buchi ranks have one component,
/// generalized Buchi one per set, parity one per even colour.
struct RankCertificate {
  AcceptanceKind objective = AcceptanceKind::Reachability;
  std::vector<std::vector<ExtNonNeg>> ranks;
  Rational f_coeff{1};
  Rational eta_coeff{1};

  std::size_t components() const { return ranks.empty() ? 0 : ranks.front().size(); }
  /// Scalar certificate from plain values.
  static RankCertificate scalar(AcceptanceKind objective, const std::vector<ExtNonNeg>& values, Rational f = 1);
};

struct CertificateCheck {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Zero exactly on the target set(s), positive elsewhere. Throws
/// PreconditionError on a dimension mismatch.
CertificateCheck check_rank(const MetricAutomaton& a, const RankCertificate& cert);

/// The decrease inequality with f(x) = f_coeff x at every state that needs it.
/// Includes the check_rank violations.
CertificateCheck check_clf(const MetricAutomaton& a, const RankCertificate& cert);

/// Whether input `in` at q satisfies the decrease inequality for component
/// `component` (ignored for parity, which compares whole vectors).
bool decreases(const MetricAutomaton& a, const RankCertificate& cert, StateId q, InputId in,
               std::size_t component = 0);

struct LipschitzResult {
  ExtNonNeg k{0};
  std::optional<std::pair<StateId, StateId>> witness;
  std::size_t component = 0;
};

/// Largest |R(p) - R(q)| / d(p, q) over state pairs and components. Pairs at
/// infinite distance or with both ranks infinite are skipped; one infinite
/// rank against a finite one gives infinity.
LipschitzResult lipschitz_constant(const MetricAutomaton& a, const RankCertificate& cert);

struct SigmaBound {
  ExtNonNeg sigma;
  LipschitzResult lipschitz;
  /// Parity: separation condition at radius sigma * gamma. True otherwise.
  bool certified = true;
  std::vector<std::string> notes;
};

/// sigma = K / c. Throws PreconditionError when the disturbance bound is not
/// constant or the certificate fails check_clf.
SigmaBound sigma_bound_from_certificate(const MetricAutomaton& a, const RankCertificate& cert);

/// Builds a CLF from a nominally winning strategy. Reachability and Buchi
/// ranks sum eta(d(., F)) along nominal strategy paths (longest path where all
/// strategy outcomes reach F, shortest path over any input elsewhere).
/// Generalized Buchi applies this per column. Parity partitions states by
/// the least even colour their nominal outcome reaches. f_coeff = eta_coeff.
/// Throws NotWinningError / PreconditionError.
RankCertificate construct_clf_from_strategy(const MetricAutomaton& a, const Strategy& s, const Rational& eta_coeff);

enum class InduceMode {
  /// Every input satisfying the inequality.
  Permissive,
  /// One input with minimal successor rank, ties by declaration order.
  Deterministic,
};

/// Strategy induced from a CLF. Buchi targets and parity Q-bar take every
/// enabled input in permissive mode and the first declared one in
/// deterministic mode; reachability targets stay undefined. Throws
/// PreconditionError when check_clf fails.
Strategy induce_strategy_from_clf(const MetricAutomaton& a, const RankCertificate& cert,
                                  InduceMode mode = InduceMode::Permissive);

}  // namespace robsynth
