#pragma once

// Fidelity of intercept-resend strategies against a signal ensemble: the
// average fidelity of an explicit (measurement, reconstruction) pair, the
// ensemble map Phi, and the achievable fidelity of a measurement under its
// best reconstruction.

#include <vector>

#include "incompat/linalg.hpp"
#include "incompat/observables.hpp"

namespace incompat {

/// Rank-1 POVM {M_a = m_a chi_a}.
class Povm {
 public:
  /// Validates m_a > 0 and ||sum_a m_a chi_a - I||_F <= tol.
  static Povm make(std::vector<double> weights, std::vector<UnitVector> directions, double tol = 1e-9);

  /// M_a = |w_a><w_a|; zero-norm elements (below prune_eps in weight) are dropped.
  static Povm from_elements(const std::vector<ComplexVector>& elements, double prune_eps = 1e-12,
                            double tol = 1e-9);

  /// Von Neumann measurement in the given basis.
  static Povm projective(const Eigenbasis& basis);

  Index dim() const noexcept { return dim_; }
  Index size() const noexcept { return static_cast<Index>(weights_.size()); }
  double weight(Index a) const { return weights_.at(static_cast<std::size_t>(a)); }
  const UnitVector& direction(Index a) const { return directions_.at(static_cast<std::size_t>(a)); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<UnitVector>& directions() const noexcept { return directions_; }

  /// sqrt(m_a) |chi_a>
  ComplexVector element_vector(Index a) const;
  ComplexMatrix element(Index a) const;
  double completeness_error() const;

 private:
  Index dim_ = 0;
  std::vector<double> weights_;
  std::vector<UnitVector> directions_;
};

/// Outcome a -> resent density matrix sigma_a.
class ReconstructionMap {
 public:
  /// Validates Hermiticity, PSD (min eigenvalue >= -1e-10) and unit trace.
  static ReconstructionMap make(std::vector<ComplexMatrix> states);
  static ReconstructionMap pure(const std::vector<UnitVector>& states);

  Index size() const noexcept { return static_cast<Index>(states_.size()); }
  const ComplexMatrix& state(Index a) const { return states_.at(static_cast<std::size_t>(a)); }
  const std::vector<ComplexMatrix>& states() const noexcept { return states_; }

 private:
  std::vector<ComplexMatrix> states_;
};

struct OutcomeTerm {
  Index outcome = 0;
  double weight = 0.0;
  double top_eigenvalue = 0.0;  // lambda(Phi(chi_a))
  double contribution = 0.0;    // weight * top_eigenvalue
};

struct FidelityBreakdown {
  double value = 0.0;
  std::vector<OutcomeTerm> per_outcome;
};

/// (1/Nd) sum_{i,j,a} Tr(Pi_j^i M_a) Tr(Pi_j^i sigma_a).
double average_fidelity(const SignalEnsemble& s, const Povm& m, const ReconstructionMap& a);

/// Phi(rho) = (1/Nd) sum_{i,j} Pi_j^i rho Pi_j^i. The sum runs over both the
/// basis index i and the vector index j.
ComplexMatrix phi_map(const SignalEnsemble& s, const ComplexMatrix& rho);

/// Phi(|v><v|), computed from overlaps without forming the projector.
ComplexMatrix phi_map(const SignalEnsemble& s, const UnitVector& v);

/// sigma_a = top eigenvector of d Phi(chi_a).
ReconstructionMap optimal_reconstruction(const SignalEnsemble& s, const Povm& m);

/// sum_a m_a lambda(Phi(chi_a)).
FidelityBreakdown achievable_fidelity(const SignalEnsemble& s, const Povm& m);

/// (1/Nd) sum_a m_a sum_{i,j} p(a)_j^i q(a)_j^i, with p = Tr(Pi chi_a) and
/// q = <eta_a|Pi|eta_a>.
///
/// Agrees with achievable_fidelity, since
/// d lambda(Phi(chi_a)) = (1/N) sum_{ij} p q.
double theorem2_fidelity(const SignalEnsemble& s, const Povm& m);

/// Average fidelity of measuring in basis k (0-based) and resending the
/// outcome eigenstate: 1/N + (1/Nd) sum_{i != k, j, l} |<psi_j^i|psi_l^k>|^4.
/// Throws IndexOutOfRange.
double projective_strategy_fidelity(const SignalEnsemble& s, Index k);

}  // namespace incompat
