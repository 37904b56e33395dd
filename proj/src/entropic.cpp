#include "incompat/entropic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace incompat {

std::string_view to_string(EntropicVerdict v) noexcept {
  switch (v) {
    case EntropicVerdict::BoundInformative: return "BOUND_INFORMATIVE";
    case EntropicVerdict::BoundVacuousButIncompatible: return "BOUND_VACUOUS_BUT_INCOMPATIBLE";
    case EntropicVerdict::Commuting: return "COMMUTING";
  }
  return "UNKNOWN";
}

double measurement_entropy(const ComplexMatrix& rho, const Eigenbasis& basis) {
  if (rho.rows() != basis.dim() || rho.cols() != basis.dim()) {
    throw Error(ErrorCode::DimMismatch, "state and basis dimensions differ");
  }
  double h = 0.0;
  for (const auto& v : basis.vectors()) {
    const double p = v.amplitudes().dot(rho * v.amplitudes()).real();
    if (p < 1e-15) continue;
    h -= p * std::log2(p);
  }
  return h;
}

MaximumOverlap mu_bound(const Eigenbasis& a, const Eigenbasis& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "bases act on different dimensions");
  MaximumOverlap out;
  for (const auto& pa : a.projectors())
    for (const auto& pb : b.projectors())
      out.c = std::max(out.c, std::sqrt(std::max(0.0, trace_product(pa, pb).real())));
  out.bound = std::max(0.0, -std::log2(out.c));  // c may round to 1 + ulp
  return out;
}

EntropicReport entropic_report(const Eigenbasis& a, const Eigenbasis& b, const OptimizerConfig& cfg) {
  EntropicReport r;
  const MaximumOverlap overlap = mu_bound(a, b);
  r.c = overlap.c;
  r.mu_bound = overlap.bound;
  r.commutation = commutes(a, b, cfg.commutation_tol);

  Index witness = 0;
  double best = -1.0;
  for (Index j = 0; j < a.dim(); ++j) {
    for (const auto& pb : b.projectors()) {
      const double t = trace_product(a.projector(j), pb).real();
      if (t > best + 1e-15) {
        best = t;
        witness = j;
      }
    }
  }
  r.witness_state = a.vectors()[static_cast<std::size_t>(witness)];
  const ComplexMatrix rho = projector(r.witness_state);
  r.entropy_sum_at_state = measurement_entropy(rho, a) + measurement_entropy(rho, b);

  r.q_value = q_measure(ObservableSet({a, b}), cfg).q;
  if (r.commutation.commutes) {
    r.verdict = EntropicVerdict::Commuting;
  } else if (r.mu_bound <= 1e-12) {
    r.verdict = EntropicVerdict::BoundVacuousButIncompatible;
  } else {
    r.verdict = EntropicVerdict::BoundInformative;
  }
  return r;
}

ObservableSet shared_eigenvector_pair(long d) {
  if (d < 3) throw Error(ErrorCode::InvalidInput, "the shared-eigenvector pair needs d >= 3");
  std::vector<UnitVector> computational;
  for (long k = 0; k < d; ++k) computational.push_back(UnitVector::basis(d, k));

  const long m = d - 1;
  std::vector<UnitVector> mixed{UnitVector::basis(d, 0)};
  for (long j = 0; j < m; ++j) {
    ComplexVector v = ComplexVector::Zero(d);
    for (long k = 0; k < m; ++k) {
      v[k + 1] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k) % m) / static_cast<double>(m));
    }
    mixed.push_back(UnitVector::normalize(v));
  }
  return ObservableSet({Eigenbasis::from_vectors(std::move(computational), "A"),
                        Eigenbasis::from_vectors(std::move(mixed), "B")});
}

EntropicReport failure_case_demo(long d, const OptimizerConfig& cfg) {
  const ObservableSet pair = shared_eigenvector_pair(d);
  return entropic_report(pair[0], pair[1], cfg);
}

}  // namespace incompat
