#include "incompat/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace incompat {

Eigenbasis Eigenbasis::from_vectors(std::vector<UnitVector> vectors, std::string label, double tol) {
  if (vectors.empty()) throw Error(ErrorCode::InvalidInput, "basis has no vectors");
  const Index d = vectors.front().dim();
  if (static_cast<Index>(vectors.size()) != d) {
    throw Error(ErrorCode::DimMismatch, "basis '" + label + "' needs exactly " + std::to_string(d) +
                                            " vectors, got " + std::to_string(vectors.size()));
  }
  for (const auto& v : vectors) {
    if (v.dim() != d) throw Error(ErrorCode::DimMismatch, "basis '" + label + "' mixes dimensions");
  }
  for (Index j = 0; j < d; ++j) {
    for (Index l = j + 1; l < d; ++l) {
      const Complex overlap = vectors[static_cast<std::size_t>(j)].amplitudes().dot(
          vectors[static_cast<std::size_t>(l)].amplitudes());
      if (std::abs(overlap) > tol) {
        throw Error(ErrorCode::InvalidInput, "basis '" + label + "' vectors " + std::to_string(j) +
                                                 " and " + std::to_string(l) + " are not orthogonal");
      }
    }
  }
  Eigenbasis basis;
  basis.projectors_.reserve(vectors.size());
  for (const auto& v : vectors) basis.projectors_.push_back(incompat::projector(v));
  basis.vectors_ = std::move(vectors);
  basis.label_ = std::move(label);
  return basis;
}

ComplexMatrix Eigenbasis::as_matrix() const {
  ComplexMatrix m(dim(), dim());
  for (Index j = 0; j < dim(); ++j) m.col(j) = vectors_[static_cast<std::size_t>(j)].amplitudes();
  return m;
}

ObservableSet::ObservableSet(std::vector<Eigenbasis> members) : members_(std::move(members)) {
  if (members_.empty()) throw Error(ErrorCode::InvalidInput, "observable set is empty");
  dim_ = members_.front().dim();
  for (const auto& m : members_) {
    if (m.dim() != dim_) throw Error(ErrorCode::DimMismatch, "observables act on different dimensions");
  }
}

std::vector<std::string> ObservableSet::labels() const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.label());
  return out;
}

SignalEnsemble::SignalEnsemble(const ObservableSet& set)
    : dim_(set.dim()), count_(set.count()), stacked_(set.dim(), set.dim() * set.count()) {
  prior_ = 1.0 / static_cast<double>(dim_ * count_);
  vectors_.reserve(static_cast<std::size_t>(size()));
  states_.reserve(static_cast<std::size_t>(size()));
  for (Index i = 0; i < count_; ++i) {
    const Eigenbasis& basis = set[i];
    for (Index j = 0; j < dim_; ++j) {
      vectors_.push_back(basis.vectors()[static_cast<std::size_t>(j)]);
      states_.push_back(basis.projector(j));
      stacked_.col(i * dim_ + j) = vectors_.back().amplitudes();
    }
  }
}

const UnitVector& SignalEnsemble::vector(Index i, Index j) const {
  if (i < 0 || i >= count_ || j < 0 || j >= dim_) throw Error(ErrorCode::IndexOutOfRange, "ensemble index");
  return vectors_[static_cast<std::size_t>(i * dim_ + j)];
}

const ComplexMatrix& SignalEnsemble::state(Index i, Index j) const {
  if (i < 0 || i >= count_ || j < 0 || j >= dim_) throw Error(ErrorCode::IndexOutOfRange, "ensemble index");
  return states_[static_cast<std::size_t>(i * dim_ + j)];
}

Eigenbasis eigenbasis_of(const ComplexMatrix& observable, double degeneracy_tol, std::string label) {
  const EigenDecomposition eig = herm_eig(observable, 1e-9);
  for (Index k = 0; k + 1 < eig.eigenvalues.size(); ++k) {
    const double gap = eig.eigenvalues[k] - eig.eigenvalues[k + 1];
    if (gap < degeneracy_tol) {
      throw Error(ErrorCode::DegenerateSpectrum,
                  "eigenvalue gap " + std::to_string(gap) + " below " + std::to_string(degeneracy_tol) +
                      (label.empty() ? std::string() : " in '" + label + "'") +
                      "; supply an explicit basis instead");
    }
  }
  std::vector<UnitVector> vectors;
  vectors.reserve(static_cast<std::size_t>(eig.eigenvalues.size()));
  for (Index k = 0; k < eig.eigenvalues.size(); ++k) vectors.push_back(eig.eigenvector(k));
  return Eigenbasis::from_vectors(std::move(vectors), std::move(label), 1e-9);
}

CommutationReport commutes(const Eigenbasis& a, const Eigenbasis& b, double tol) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimMismatch, "bases act on different dimensions");
  CommutationReport report;
  for (const auto& pa : a.projectors()) {
    for (const auto& pb : b.projectors()) {
      report.commutator_norm = std::max(report.commutator_norm, commutator_norm(pa, pb));
      if (trace_product(pa, pb).real() >= 1.0 - tol) ++report.common_eigenvector_count;
    }
  }
  report.commutes = report.commutator_norm <= tol;
  return report;
}

namespace {

std::vector<Index> greedy_from(const std::vector<std::vector<bool>>& noncommuting, Index start) {
  const Index n = static_cast<Index>(noncommuting.size());
  std::vector<Index> kept;
  for (Index step = 0; step < n; ++step) {
    const Index idx = (start + step) % n;
    bool keep = true;
    for (Index k : kept) {
      if (!noncommuting[static_cast<std::size_t>(idx)][static_cast<std::size_t>(k)]) {
        keep = false;
        break;
      }
    }
    if (keep) kept.push_back(idx);
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

bool satisfies_subset_properties(const std::vector<std::vector<bool>>& noncommuting,
                                 const std::vector<Index>& kept) {
  const auto nc = [&](Index x, Index y) {
    return noncommuting[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)];
  };
  for (std::size_t x = 0; x < kept.size(); ++x)
    for (std::size_t y = x + 1; y < kept.size(); ++y)
      if (!nc(kept[x], kept[y])) return false;
  for (Index e = 0; e < static_cast<Index>(noncommuting.size()); ++e) {
    if (std::find(kept.begin(), kept.end(), e) != kept.end()) continue;
    bool covered = false;
    for (Index k : kept) covered = covered || !nc(e, k);
    if (!covered) return false;
  }
  return true;
}

}  // namespace

std::vector<Index> minimal_noncommuting_indices(const ObservableSet& all, double tol) {
  const Index n = all.count();
  std::vector<std::vector<bool>> noncommuting(static_cast<std::size_t>(n),
                                              std::vector<bool>(static_cast<std::size_t>(n), false));
  for (Index x = 0; x < n; ++x) {
    for (Index y = x + 1; y < n; ++y) {
      const bool nc = !commutes(all[x], all[y], tol).commutes;
      noncommuting[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = nc;
      noncommuting[static_cast<std::size_t>(y)][static_cast<std::size_t>(x)] = nc;
    }
  }
  for (Index start = 0; start < n; ++start) {
    std::vector<Index> kept = greedy_from(noncommuting, start);
    if (satisfies_subset_properties(noncommuting, kept)) return kept;
  }
  throw Error(ErrorCode::NoValidSubset, "no greedy start index yields a valid minimal subset");
}

ObservableSet minimal_noncommuting_subset(const ObservableSet& all, double tol) {
  std::vector<Eigenbasis> members;
  for (Index idx : minimal_noncommuting_indices(all, tol)) members.push_back(all[idx]);
  return ObservableSet(std::move(members));
}

Eigenbasis random_basis(Index dim, Rng& rng, std::string label) {
  return eigenbasis_of(random_hermitian(dim, rng), 1e-12, std::move(label));
}

SignalEnsemble signal_ensemble(const ObservableSet& set) { return SignalEnsemble(set); }

bool is_prime(long n) noexcept {
  if (n < 2) return false;
  for (long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

ObservableSet mub_bases(long d, long n) {
  if (!is_prime(d)) throw Error(ErrorCode::NotPrime, std::to_string(d) + " is not prime");
  if (n < 1 || n > d + 1) {
    throw Error(ErrorCode::TooManyBases, "need 1 <= N <= d+1, got N=" + std::to_string(n));
  }
  std::vector<Eigenbasis> bases;
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));

  std::vector<UnitVector> computational;
  for (long k = 0; k < d; ++k) computational.push_back(UnitVector::basis(d, k));

  if (d == 2) {
    const double h = std::numbers::sqrt2 / 2.0;
    const Complex i(0.0, 1.0);
    bases.push_back(Eigenbasis::from_vectors(std::move(computational), "Z"));
    ComplexVector xp(2), xm(2), yp(2), ym(2);
    xp << h, h;
    xm << h, -h;
    yp << h, i * h;
    ym << h, -i * h;
    bases.push_back(Eigenbasis::from_vectors({UnitVector::normalize(xp), UnitVector::normalize(xm)}, "X"));
    bases.push_back(Eigenbasis::from_vectors({UnitVector::normalize(yp), UnitVector::normalize(ym)}, "Y"));
    bases.erase(bases.begin() + n, bases.end());
    return ObservableSet(std::move(bases));
  }

  bases.push_back(Eigenbasis::from_vectors(std::move(computational), "mub-0"));
  for (long b = 1; b < n; ++b) {
    std::vector<UnitVector> vectors;
    for (long j = 0; j < d; ++j) {
      ComplexVector v(d);
      for (long k = 0; k < d; ++k) {
        // exponent reduced mod d before the trig call
        const long e = ((b * k % d) * k + j * k) % d;
        v[k] = std::polar(inv_sqrt_d, 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(d));
      }
      vectors.push_back(UnitVector::normalize(v));
    }
    bases.push_back(Eigenbasis::from_vectors(std::move(vectors), "mub-" + std::to_string(b)));
  }
  return ObservableSet(std::move(bases));
}

bool is_mutually_unbiased(const ObservableSet& set, double tol) {
  const Index d = set.dim();
  const double target = 1.0 / static_cast<double>(d);
  for (Index i = 0; i < set.count(); ++i) {
    const ComplexMatrix bi = set[i].as_matrix();
    for (Index k = i; k < set.count(); ++k) {
      // |<psi_j^i|psi_l^k>|^2 = Tr(Pi_j^i Pi_l^k)
      const Eigen::MatrixXd overlaps = (bi.adjoint() * set[k].as_matrix()).cwiseAbs2();
      for (Index j = 0; j < d; ++j) {
        for (Index l = 0; l < d; ++l) {
          const double expected = (i == k) ? (j == l ? 1.0 : 0.0) : target;
          if (std::abs(overlaps(j, l) - expected) > tol) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace incompat
