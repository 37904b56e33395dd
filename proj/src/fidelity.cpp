#include "incompat/fidelity.hpp"

#include <cmath>
#include <string>

namespace incompat {

Povm Povm::make(std::vector<double> weights, std::vector<UnitVector> directions, double tol) {
  if (weights.size() != directions.size() || weights.empty()) {
    throw Error(ErrorCode::OutcomeCountMismatch, "POVM weights and directions differ in length");
  }
  Povm m;
  m.dim_ = directions.front().dim();
  for (std::size_t a = 0; a < weights.size(); ++a) {
    if (directions[a].dim() != m.dim_) throw Error(ErrorCode::DimMismatch, "POVM directions mix dimensions");
    if (!(weights[a] > 0.0)) {
      throw Error(ErrorCode::InvalidInput, "POVM weight " + std::to_string(a) + " is not positive");
    }
  }
  m.weights_ = std::move(weights);
  m.directions_ = std::move(directions);
  const double err = m.completeness_error();
  if (!(err <= tol)) {
    throw Error(ErrorCode::InvalidInput, "POVM completeness violated by " + std::to_string(err));
  }
  return m;
}

Povm Povm::from_elements(const std::vector<ComplexVector>& elements, double prune_eps, double tol) {
  std::vector<double> weights;
  std::vector<UnitVector> directions;
  for (const auto& w : elements) {
    const double m = w.squaredNorm();
    if (m < prune_eps) continue;
    weights.push_back(m);
    directions.push_back(UnitVector::normalize(w));
  }
  return make(std::move(weights), std::move(directions), tol);
}

Povm Povm::projective(const Eigenbasis& basis) {
  return make(std::vector<double>(static_cast<std::size_t>(basis.dim()), 1.0), basis.vectors());
}

ComplexVector Povm::element_vector(Index a) const {
  return std::sqrt(weight(a)) * direction(a).amplitudes();
}

ComplexMatrix Povm::element(Index a) const { return weight(a) * projector(direction(a)); }

double Povm::completeness_error() const {
  ComplexMatrix sum = ComplexMatrix::Zero(dim_, dim_);
  for (Index a = 0; a < size(); ++a) {
    const ComplexVector& v = directions_[static_cast<std::size_t>(a)].amplitudes();
    sum.noalias() += weights_[static_cast<std::size_t>(a)] * (v * v.adjoint());
  }
  return (sum - ComplexMatrix::Identity(dim_, dim_)).norm();
}

ReconstructionMap ReconstructionMap::make(std::vector<ComplexMatrix> states) {
  for (std::size_t a = 0; a < states.size(); ++a) {
    const ComplexMatrix& s = states[a];
    const std::string where = "reconstruction state " + std::to_string(a);
    if (s.rows() != s.cols()) throw Error(ErrorCode::DimMismatch, where + " is not square");
    if ((s - s.adjoint()).norm() > 1e-10 * std::max(1.0, s.norm())) {
      throw Error(ErrorCode::NotHermitian, where);
    }
    if (std::abs(s.trace() - Complex(1.0)) > 1e-10) throw Error(ErrorCode::InvalidInput, where + " trace != 1");
    const EigenDecomposition eig = herm_eig(s);
    if (eig.eigenvalues[eig.eigenvalues.size() - 1] < -1e-10) {
      throw Error(ErrorCode::InvalidInput, where + " is not positive semidefinite");
    }
  }
  ReconstructionMap out;
  out.states_ = std::move(states);
  return out;
}

ReconstructionMap ReconstructionMap::pure(const std::vector<UnitVector>& states) {
  ReconstructionMap out;
  out.states_.reserve(states.size());
  for (const auto& v : states) out.states_.push_back(projector(v));
  return out;
}

namespace {

void require_dim(const SignalEnsemble& s, Index d, const char* what) {
  if (s.dim() != d) throw Error(ErrorCode::DimMismatch, std::string(what) + " dimension differs from the ensemble");
}

}  // namespace

double average_fidelity(const SignalEnsemble& s, const Povm& m, const ReconstructionMap& a) {
  require_dim(s, m.dim(), "POVM");
  if (m.size() != a.size()) {
    throw Error(ErrorCode::OutcomeCountMismatch, "POVM has " + std::to_string(m.size()) +
                                                     " outcomes, reconstruction map has " + std::to_string(a.size()));
  }
  double total = 0.0;
  for (Index o = 0; o < m.size(); ++o) {
    require_dim(s, a.state(o).rows(), "reconstruction state");
    const ComplexMatrix element = m.element(o);
    double term = 0.0;
    for (Index i = 0; i < s.basis_count(); ++i) {
      for (Index j = 0; j < s.dim(); ++j) {
        const ComplexMatrix& pi = s.state(i, j);
        term += trace_product(pi, element).real() * trace_product(pi, a.state(o)).real();
      }
    }
    total += term;
  }
  return s.prior() * total;
}

ComplexMatrix phi_map(const SignalEnsemble& s, const ComplexMatrix& rho) {
  require_dim(s, rho.rows(), "input state");
  if (rho.rows() != rho.cols()) throw Error(ErrorCode::DimMismatch, "input state is not square");
  ComplexMatrix out = ComplexMatrix::Zero(s.dim(), s.dim());
  for (Index i = 0; i < s.basis_count(); ++i) {
    for (Index j = 0; j < s.dim(); ++j) {
      const ComplexMatrix& pi = s.state(i, j);
      out.noalias() += pi * rho * pi;
    }
  }
  return s.prior() * out;
}

ComplexMatrix phi_map(const SignalEnsemble& s, const UnitVector& v) {
  require_dim(s, v.dim(), "input state");
  const ComplexMatrix& psi = s.stacked();
  // weights_k = |<psi_k|v>|^2
  const RealVector weights = (psi.adjoint() * v.amplitudes()).cwiseAbs2();
  ComplexMatrix out = psi * weights.asDiagonal() * psi.adjoint();
  return s.prior() * hermitian_part(out);
}

ReconstructionMap optimal_reconstruction(const SignalEnsemble& s, const Povm& m) {
  require_dim(s, m.dim(), "POVM");
  const double d = static_cast<double>(s.dim());
  std::vector<UnitVector> states;
  states.reserve(static_cast<std::size_t>(m.size()));
  for (Index a = 0; a < m.size(); ++a) {
    states.push_back(max_eig(d * phi_map(s, m.direction(a))).second);
  }
  return ReconstructionMap::pure(states);
}

FidelityBreakdown achievable_fidelity(const SignalEnsemble& s, const Povm& m) {
  require_dim(s, m.dim(), "POVM");
  FidelityBreakdown out;
  out.per_outcome.reserve(static_cast<std::size_t>(m.size()));
  for (Index a = 0; a < m.size(); ++a) {
    OutcomeTerm term;
    term.outcome = a;
    term.weight = m.weight(a);
    term.top_eigenvalue = herm_eig(phi_map(s, m.direction(a))).eigenvalues[0];
    term.contribution = term.weight * term.top_eigenvalue;
    out.value += term.contribution;
    out.per_outcome.push_back(term);
  }
  return out;
}

double theorem2_fidelity(const SignalEnsemble& s, const Povm& m) {
  require_dim(s, m.dim(), "POVM");
  const double d = static_cast<double>(s.dim());
  double total = 0.0;
  for (Index a = 0; a < m.size(); ++a) {
    const UnitVector& chi = m.direction(a);
    const UnitVector eta = max_eig(d * phi_map(s, chi)).second;
    double pq = 0.0;
    for (Index i = 0; i < s.basis_count(); ++i) {
      for (Index j = 0; j < s.dim(); ++j) {
        const ComplexVector& psi = s.vector(i, j).amplitudes();
        const double p = std::norm(psi.dot(chi.amplitudes()));
        const double q = std::norm(psi.dot(eta.amplitudes()));
        pq += p * q;
      }
    }
    total += m.weight(a) * pq;
  }
  return s.prior() * total;
}

double projective_strategy_fidelity(const SignalEnsemble& s, Index k) {
  if (k < 0 || k >= s.basis_count()) {
    throw Error(ErrorCode::IndexOutOfRange, "basis index " + std::to_string(k) + " outside [0, " +
                                                std::to_string(s.basis_count()) + ")");
  }
  double cross = 0.0;
  for (Index i = 0; i < s.basis_count(); ++i) {
    if (i == k) continue;
    for (Index j = 0; j < s.dim(); ++j) {
      for (Index l = 0; l < s.dim(); ++l) {
        const double overlap2 = std::norm(s.vector(i, j).amplitudes().dot(s.vector(k, l).amplitudes()));
        cross += overlap2 * overlap2;
      }
    }
  }
  return 1.0 / static_cast<double>(s.basis_count()) + s.prior() * cross;
}

}  // namespace incompat
