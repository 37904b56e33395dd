#pragma once

#include <string_view>

#include "incompat/observables.hpp"
#include "incompat/optimizer.hpp"

namespace incompat {

enum class EntropicVerdict {
  BoundInformative,
  BoundVacuousButIncompatible,
  Commuting,
};

std::string_view to_string(EntropicVerdict v) noexcept;

struct MaximumOverlap {
  double c = 0.0;      // max_{j,l} |<a_j|b_l>|
  double bound = 0.0;  // -log2 c, in bits
};

struct EntropicReport {
  double c = 0.0;
  double mu_bound = 0.0;
  double entropy_sum_at_state = 0.0;  // H_A + H_B at the witness, bits
  UnitVector witness_state;
  double q_value = 0.0;
  EntropicVerdict verdict = EntropicVerdict::BoundInformative;
  CommutationReport commutation;
};

/// Shannon entropy (bits) of measuring basis on rho; probabilities below
/// 1e-15 contribute nothing.
double measurement_entropy(const ComplexMatrix& rho, const Eigenbasis& basis);

MaximumOverlap mu_bound(const Eigenbasis& a, const Eigenbasis& b);

/// Compares the entropic bound with Q for a pair of observables. The witness
/// is the A eigenvector attaining the largest overlap c.
EntropicReport entropic_report(const Eigenbasis& a, const Eigenbasis& b, const OptimizerConfig& cfg);

/// Pair in dimension d >= 3 that shares e_1 and is unbiased on the rest:
/// A computational, B = {e_1} plus the Fourier basis of span{e_2..e_d}.
ObservableSet shared_eigenvector_pair(long d);

/// entropic_report on shared_eigenvector_pair(d). Throws InvalidInput for d < 3.
EntropicReport failure_case_demo(long d, const OptimizerConfig& cfg);

}  // namespace incompat
