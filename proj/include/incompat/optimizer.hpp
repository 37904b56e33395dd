#pragma once

// Optimal intercept-resend fidelity F over all measurements and
// reconstructions, and the incompatibility Q = 1 - F, with the closed-form
// bounds used to certify every run.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "incompat/fidelity.hpp"
#include "incompat/observables.hpp"

namespace incompat {

struct OptimizerConfig {
  int restarts = 16;
  int outcomes = 0;  // K; 0 selects d^2
  int max_iters = 2000;
  double convergence_eps = 1e-10;
  std::uint64_t seed = 0;
  double weight_prune_eps = 1e-12;
  double commutation_tol = kCommutationTol;

  /// Throws InvalidInput on nonpositive fields or K < d.
  void validate(Index dim) const;
  int outcomes_for(Index dim) const { return outcomes > 0 ? outcomes : static_cast<int>(dim * dim); }
};

struct TheoremOneBounds {
  double few_observables = 0.0;   // (1 - 1/N)(1 - 1/d)
  double many_observables = 0.0;  // (d - 1)/(d + 1)
};

/// Upper bounds on Q for N observables in dimension d. Both hold for every N;
/// they coincide at N = d + 1.
TheoremOneBounds theorem1_bounds(long n, long d);

/// (N + d - 1)/(N d): fidelity of the projective baseline for unbiased bases.
double projective_lower_bound(long n, long d);

/// 2/(d + 1), the floor on accessible fidelity for any pure-state ensemble.
double fuchs_lower_bound(long d);

struct SeeSawResult {
  Povm povm;
  ReconstructionMap reconstruction;
  double fidelity = 0.0;
  int iterations = 0;
  std::vector<double> trace;  // F after each sweep, starting with the seed
};

/// Alternates the exact reconstruction step with a fixed-point POVM update.
/// The recorded fidelity is non-decreasing; a violation beyond 1e-12 throws
/// NonMonotone. Throws SingularUpdate if the update operator vanishes.
SeeSawResult see_saw(const SignalEnsemble& s, const Povm& start, const OptimizerConfig& cfg);

/// K Haar-random directions symmetrized to a complete POVM.
Povm random_povm(Index dim, int outcomes, Rng& rng);

struct OptimalFidelity {
  double fidelity = 0.0;
  Povm povm;
  ReconstructionMap reconstruction;
  int iterations_used = 0;
  double projective_baseline = 0.0;   // best projective eigenbasis strategy
  std::vector<double> restart_trace;  // projective seeds first, then random restarts
  Index best_start = 0;
  bool is_lower_bound = true;         // best found value, not a certified supremum
};

/// See-saw from each eigenbasis measurement and from cfg.restarts random
/// K-outcome POVMs; the best run wins, lowest start index on ties.
OptimalFidelity optimal_fidelity(const SignalEnsemble& s, const OptimizerConfig& cfg);

struct QReport {
  double q = 0.0;
  double optimal_fidelity = 0.0;
  Povm best_povm;
  ReconstructionMap best_reconstruction;
  double lower_bound_eq8 = 0.0;   // (N+d-1)/(Nd)
  double upper_bound_eq5 = 0.0;   // (1-1/N)(1-1/d)
  double upper_bound_eq6 = 0.0;   // (d-1)/(d+1)
  double fuchs_floor = 0.0;       // 2/(d+1)
  double projective_baseline = 0.0;
  int iterations_used = 0;
  std::vector<double> restart_trace;
  std::vector<std::string> minimal_subset_labels;
  std::vector<std::string> input_labels;
  Index dim = 0;
  Index subset_size = 0;
  bool is_lower_bound = true;
};

/// Q of a raw observable set: reduces to a minimal noncommuting subset, then
/// optimizes. Throws BoundViolation if any certificate fails.
QReport q_measure(const ObservableSet& observables, const OptimizerConfig& cfg);

/// Best achievable fidelity over projective qubit measurements on a
/// resolution x resolution (theta, phi) grid, refined three times by 10x
/// around the best cell. Throws WrongDimension unless d = 2.
double grid_oracle_qubit(const SignalEnsemble& s, int resolution = 180);

struct LemmaOneResult {
  double sum = 0.0;
  double bound = 0.0;  // (N + d - 1)/d
  bool holds = false;
};

/// sum_{i,j} <phi|Pi_j^i|phi>^2 against (N + d - 1)/d for unbiased bases.
/// Throws NotMutuallyUnbiased.
LemmaOneResult lemma1_sum(const UnitVector& phi, const ObservableSet& bases);

}  // namespace incompat
