#include "incompat/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace incompat {

void OptimizerConfig::validate(Index dim) const {
  if (restarts < 1) throw Error(ErrorCode::InvalidInput, "restarts must be >= 1");
  if (max_iters < 1) throw Error(ErrorCode::InvalidInput, "max_iters must be >= 1");
  if (!(convergence_eps > 0.0)) throw Error(ErrorCode::InvalidInput, "convergence_eps must be positive");
  if (!(weight_prune_eps > 0.0)) throw Error(ErrorCode::InvalidInput, "weight_prune_eps must be positive");
  if (!(commutation_tol > 0.0)) throw Error(ErrorCode::InvalidInput, "commutation tolerance must be positive");
  if (outcomes < 0) throw Error(ErrorCode::InvalidInput, "outcomes must be positive");
  if (outcomes_for(dim) < dim) {
    throw Error(ErrorCode::InvalidInput, "outcomes K=" + std::to_string(outcomes_for(dim)) +
                                             " is below the dimension " + std::to_string(dim));
  }
}

TheoremOneBounds theorem1_bounds(long n, long d) {
  if (n < 1 || d < 1) throw Error(ErrorCode::InvalidInput, "need N >= 1 and d >= 1");
  const double nn = static_cast<double>(n);
  const double dd = static_cast<double>(d);
  return {(1.0 - 1.0 / nn) * (1.0 - 1.0 / dd), (dd - 1.0) / (dd + 1.0)};
}

double projective_lower_bound(long n, long d) {
  if (n < 1 || d < 1) throw Error(ErrorCode::InvalidInput, "need N >= 1 and d >= 1");
  return static_cast<double>(n + d - 1) / static_cast<double>(n * d);
}

double fuchs_lower_bound(long d) {
  if (d < 1) throw Error(ErrorCode::InvalidInput, "need d >= 1");
  return 2.0 / (static_cast<double>(d) + 1.0);
}

Povm random_povm(Index dim, int outcomes, Rng& rng) {
  std::vector<ComplexVector> raw;
  raw.reserve(static_cast<std::size_t>(outcomes));
  ComplexMatrix w = ComplexMatrix::Zero(dim, dim);
  for (int a = 0; a < outcomes; ++a) {
    raw.push_back(random_unit_vector(dim, rng).amplitudes());
    w.noalias() += raw.back() * raw.back().adjoint();
  }
  Index rank = 0;
  const ComplexMatrix w_isqrt = pinv_sqrt_psd(w, 1e-12, &rank);
  if (rank < dim) throw Error(ErrorCode::SingularUpdate, "random directions do not span the space");
  for (auto& v : raw) v = w_isqrt * v;
  return Povm::from_elements(raw, 0.0);
}

namespace {

struct Sweep {
  std::vector<UnitVector> resend;
  std::vector<ComplexMatrix> gain;  // G_a = Phi(sigma_a)
  double fidelity = 0.0;
};

Sweep reconstruct(const SignalEnsemble& s, const std::vector<ComplexVector>& elements) {
  const double d = static_cast<double>(s.dim());
  Sweep out;
  out.resend.reserve(elements.size());
  out.gain.reserve(elements.size());
  for (const auto& w : elements) {
    const UnitVector chi = UnitVector::normalize(w);
    const auto [top, eta] = max_eig(d * phi_map(s, chi));
    out.resend.push_back(eta);
    out.gain.push_back(phi_map(s, eta));
    // <w|Phi(eta)|w> = m <eta|Phi(chi)|eta> = m top / d
    out.fidelity += w.squaredNorm() * top / d;
  }
  return out;
}

double linear_objective(const std::vector<ComplexVector>& elements, const std::vector<ComplexMatrix>& gain) {
  double total = 0.0;
  for (std::size_t a = 0; a < elements.size(); ++a) {
    total += elements[a].dot(gain[a] * elements[a]).real();
  }
  return total;
}

// Fixed-point step M_a <- L^{-1/2} G_a M_a G_a L^{-1/2} with G_a shifted by
// c I. c = 0 is the plain iteration; growing c shortens the step until the
// linear objective stops decreasing. Returns false if no shift helps.
bool povm_step(std::vector<ComplexVector>& elements, const std::vector<ComplexMatrix>& gain, double current,
               double prune_eps) {
  const Index d = elements.front().size();
  double scale = 0.0;
  for (const auto& g : gain) scale = std::max(scale, g.cwiseAbs().maxCoeff());
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);

  std::vector<ComplexVector> shifted(elements.size());
  for (int attempt = 0; attempt <= 24; ++attempt) {
    const double c = attempt == 0 ? 0.0 : scale * std::ldexp(1.0, attempt - 4);
    ComplexMatrix l = ComplexMatrix::Zero(d, d);
    for (std::size_t a = 0; a < elements.size(); ++a) {
      shifted[a] = (gain[a] + c * id) * elements[a];
      l.noalias() += shifted[a] * shifted[a].adjoint();
    }
    if (l.norm() == 0.0) throw Error(ErrorCode::SingularUpdate, "POVM update operator vanished");
    Index rank = 0;
    const ComplexMatrix l_isqrt = pinv_sqrt_psd(l, 1e-12, &rank);
    if (rank < d) continue;  // completeness would fail off the support
    std::vector<ComplexVector> kept;
    std::vector<ComplexMatrix> kept_gain;
    for (std::size_t a = 0; a < shifted.size(); ++a) {
      ComplexVector w = l_isqrt * shifted[a];
      if (w.squaredNorm() >= prune_eps) {
        kept.push_back(std::move(w));
        kept_gain.push_back(gain[a]);
      }
    }
    if (kept.empty()) continue;
    if (linear_objective(kept, kept_gain) >= current) {
      elements = std::move(kept);
      return true;
    }
  }
  return false;
}

}  // namespace

SeeSawResult see_saw(const SignalEnsemble& s, const Povm& start, const OptimizerConfig& cfg) {
  if (start.dim() != s.dim()) throw Error(ErrorCode::DimMismatch, "seed POVM dimension differs from ensemble");
  std::vector<ComplexVector> elements;
  elements.reserve(static_cast<std::size_t>(start.size()));
  for (Index a = 0; a < start.size(); ++a) elements.push_back(start.element_vector(a));

  SeeSawResult out;
  Sweep sweep = reconstruct(s, elements);
  out.trace.push_back(sweep.fidelity);

  for (int iter = 1; iter <= cfg.max_iters; ++iter) {
    if (!povm_step(elements, sweep.gain, sweep.fidelity, cfg.weight_prune_eps)) break;
    Sweep next = reconstruct(s, elements);
    if (next.fidelity < sweep.fidelity - 1e-12) {
      throw Error(ErrorCode::NonMonotone, "see-saw fidelity fell from " + std::to_string(sweep.fidelity) +
                                              " to " + std::to_string(next.fidelity));
    }
    const double gain = next.fidelity - sweep.fidelity;
    sweep = std::move(next);
    out.trace.push_back(sweep.fidelity);
    out.iterations = iter;
    if (gain < cfg.convergence_eps) break;
  }

  out.povm = Povm::from_elements(elements, 0.0);
  out.reconstruction = ReconstructionMap::pure(sweep.resend);
  out.fidelity = sweep.fidelity;
  return out;
}

OptimalFidelity optimal_fidelity(const SignalEnsemble& s, const OptimizerConfig& cfg) {
  cfg.validate(s.dim());
  OptimalFidelity out;
  out.fidelity = -1.0;
  const auto consider = [&](SeeSawResult run, Index start) {
    out.restart_trace.push_back(run.fidelity);
    if (run.fidelity > out.fidelity) {
      out.fidelity = run.fidelity;
      out.povm = std::move(run.povm);
      out.reconstruction = std::move(run.reconstruction);
      out.iterations_used = run.iterations;
      out.best_start = start;
    }
  };

  Index start = 0;
  for (Index k = 0; k < s.basis_count(); ++k) {
    out.projective_baseline = std::max(out.projective_baseline, projective_strategy_fidelity(s, k));
    std::vector<UnitVector> basis;
    for (Index j = 0; j < s.dim(); ++j) basis.push_back(s.vector(k, j));
    const Povm seed = Povm::make(std::vector<double>(static_cast<std::size_t>(s.dim()), 1.0), basis);
    consider(see_saw(s, seed, cfg), start++);
  }
  const int outcomes = cfg.outcomes_for(s.dim());
  for (int r = 0; r < cfg.restarts; ++r) {
    Rng rng = make_stream(cfg.seed, static_cast<std::uint64_t>(r));
    consider(see_saw(s, random_povm(s.dim(), outcomes, rng), cfg), start++);
  }
  return out;
}

QReport q_measure(const ObservableSet& observables, const OptimizerConfig& cfg) {
  const std::vector<Index> chosen = minimal_noncommuting_indices(observables, cfg.commutation_tol);
  std::vector<Eigenbasis> members;
  for (Index idx : chosen) members.push_back(observables[idx]);
  const ObservableSet subset(std::move(members));
  const SignalEnsemble s(subset);
  OptimalFidelity best = optimal_fidelity(s, cfg);

  QReport r;
  r.dim = s.dim();
  r.subset_size = subset.count();
  r.optimal_fidelity = best.fidelity;
  r.q = 1.0 - best.fidelity;
  r.best_povm = std::move(best.povm);
  r.best_reconstruction = std::move(best.reconstruction);
  const long n = static_cast<long>(subset.count());
  const long d = static_cast<long>(s.dim());
  const TheoremOneBounds upper = theorem1_bounds(n, d);
  r.lower_bound_eq8 = projective_lower_bound(n, d);
  r.upper_bound_eq5 = upper.few_observables;
  r.upper_bound_eq6 = upper.many_observables;
  r.fuchs_floor = fuchs_lower_bound(d);
  r.projective_baseline = best.projective_baseline;
  r.iterations_used = best.iterations_used;
  r.restart_trace = std::move(best.restart_trace);
  r.minimal_subset_labels = subset.labels();
  r.input_labels = observables.labels();
  r.is_lower_bound = best.is_lower_bound;

  constexpr double slack = 1e-9;
  const auto violated = [&](const std::string& what) {
    throw Error(ErrorCode::BoundViolation, what + " (F=" + std::to_string(r.optimal_fidelity) + ")");
  };
  if (r.optimal_fidelity < r.lower_bound_eq8 - slack) violated("F below (N+d-1)/(Nd)");
  if (r.optimal_fidelity < r.fuchs_floor - slack) violated("F below 2/(d+1)");
  if (r.optimal_fidelity > 1.0 + slack) violated("F above 1");
  if (n <= d + 1 && r.q > r.upper_bound_eq5 + slack) violated("Q above (1-1/N)(1-1/d)");
  if (r.q > r.upper_bound_eq6 + slack) violated("Q above (d-1)/(d+1)");
  return r;
}

namespace {

double projective_qubit_fidelity(const SignalEnsemble& s, double theta, double phi) {
  const double c = std::cos(theta / 2.0);
  const double sn = std::sin(theta / 2.0);
  const Complex e = std::polar(1.0, phi);
  ComplexVector up(2), down(2);
  up << c, e * sn;
  down << -sn, e * c;
  const Povm m = Povm::make({1.0, 1.0}, {UnitVector::normalize(up), UnitVector::normalize(down)});
  return achievable_fidelity(s, m).value;
}

}  // namespace

double grid_oracle_qubit(const SignalEnsemble& s, int resolution) {
  if (s.dim() != 2) throw Error(ErrorCode::WrongDimension, "grid oracle needs d = 2");
  if (resolution < 2) throw Error(ErrorCode::InvalidInput, "resolution must be >= 2");
  const double pi = std::numbers::pi;
  double d_theta = pi / (resolution - 1);
  double d_phi = 2.0 * pi / resolution;
  double best = -1.0, best_theta = 0.0, best_phi = 0.0;
  for (int i = 0; i < resolution; ++i) {
    for (int k = 0; k < resolution; ++k) {
      const double theta = i * d_theta;
      const double phi = k * d_phi;
      const double f = projective_qubit_fidelity(s, theta, phi);
      if (f > best) {
        best = f;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  for (int level = 0; level < 3; ++level) {
    d_theta /= 10.0;
    d_phi /= 10.0;
    const double centre_theta = best_theta;
    const double centre_phi = best_phi;
    for (int i = -10; i <= 10; ++i) {
      for (int k = -10; k <= 10; ++k) {
        const double theta = centre_theta + i * d_theta;
        const double phi = centre_phi + k * d_phi;
        const double f = projective_qubit_fidelity(s, theta, phi);
        if (f > best) {
          best = f;
          best_theta = theta;
          best_phi = phi;
        }
      }
    }
  }
  return best;
}

LemmaOneResult lemma1_sum(const UnitVector& phi, const ObservableSet& bases) {
  if (phi.dim() != bases.dim()) throw Error(ErrorCode::DimMismatch, "state dimension differs from bases");
  if (!is_mutually_unbiased(bases, 1e-9)) {
    throw Error(ErrorCode::NotMutuallyUnbiased, "lemma needs mutually unbiased bases");
  }
  LemmaOneResult r;
  for (const auto& basis : bases.members()) {
    for (const auto& v : basis.vectors()) {
      const double t = std::norm(v.amplitudes().dot(phi.amplitudes()));
      r.sum += t * t;
    }
  }
  const double d = static_cast<double>(bases.dim());
  r.bound = (static_cast<double>(bases.count()) + d - 1.0) / d;
  r.holds = r.sum <= r.bound + 1e-10;
  return r;
}

}  // namespace incompat
