#pragma once

#include <string>
#include <vector>

#include "incompat/linalg.hpp"

namespace incompat {

/// Default absolute tolerance on projector-commutator Frobenius norms.
inline constexpr double kCommutationTol = 1e-9;

/// Ordered orthonormal basis of one observable together with its rank-1
/// eigenprojectors.
class Eigenbasis {
 public:
  /// Validates orthonormality: |<v_j|v_l> - delta_jl| <= tol.
  static Eigenbasis from_vectors(std::vector<UnitVector> vectors, std::string label,
                                 double tol = 1e-9);

  Index dim() const noexcept { return static_cast<Index>(vectors_.size()); }
  const std::string& label() const noexcept { return label_; }
  const std::vector<UnitVector>& vectors() const noexcept { return vectors_; }
  const std::vector<ComplexMatrix>& projectors() const noexcept { return projectors_; }
  const ComplexMatrix& projector(Index j) const { return projectors_.at(static_cast<std::size_t>(j)); }

  /// Columns are the basis vectors.
  ComplexMatrix as_matrix() const;

 private:
  std::vector<UnitVector> vectors_;
  std::vector<ComplexMatrix> projectors_;
  std::string label_;
};

class ObservableSet {
 public:
  /// Throws InvalidInput when empty, DimMismatch when members disagree on dim.
  explicit ObservableSet(std::vector<Eigenbasis> members);

  Index dim() const noexcept { return dim_; }
  Index count() const noexcept { return static_cast<Index>(members_.size()); }
  const std::vector<Eigenbasis>& members() const noexcept { return members_; }
  const Eigenbasis& operator[](Index i) const { return members_.at(static_cast<std::size_t>(i)); }
  std::vector<std::string> labels() const;

 private:
  Index dim_ = 0;
  std::vector<Eigenbasis> members_;
};

/// The uniform N*d pure-state ensemble built from every eigenvector of every
/// basis in a set, each with prior 1/(Nd).
class SignalEnsemble {
 public:
  explicit SignalEnsemble(const ObservableSet& set);

  Index dim() const noexcept { return dim_; }
  Index basis_count() const noexcept { return count_; }
  Index size() const noexcept { return dim_ * count_; }
  double prior() const noexcept { return prior_; }

  /// State |psi_j^i>, i the basis index, j the vector index.
  const UnitVector& vector(Index i, Index j) const;
  const ComplexMatrix& state(Index i, Index j) const;

  /// d x (N d) matrix whose column i*d + j is |psi_j^i>.
  const ComplexMatrix& stacked() const noexcept { return stacked_; }

 private:
  Index dim_ = 0;
  Index count_ = 0;
  double prior_ = 0.0;
  std::vector<UnitVector> vectors_;
  std::vector<ComplexMatrix> states_;
  ComplexMatrix stacked_;
};

struct CommutationReport {
  bool commutes = false;
  int common_eigenvector_count = 0;
  double commutator_norm = 0.0;  // max over projector pairs
};

/// Eigenbasis ordered by descending eigenvalue. Throws DegenerateSpectrum when
/// two eigenvalues are closer than degeneracy_tol.
Eigenbasis eigenbasis_of(const ComplexMatrix& observable, double degeneracy_tol = 1e-8,
                         std::string label = {});

CommutationReport commutes(const Eigenbasis& a, const Eigenbasis& b, double tol = kCommutationTol);

/// Subset whose members pairwise noncommute and such that every excluded
/// member commutes with some kept one. Greedy in input order; other start
/// indices are tried only if the first pass fails verification.
ObservableSet minimal_noncommuting_subset(const ObservableSet& all, double tol = kCommutationTol);

/// Indices (into all) chosen by minimal_noncommuting_subset.
std::vector<Index> minimal_noncommuting_indices(const ObservableSet& all, double tol = kCommutationTol);

/// Eigenbasis of a GUE matrix (nondegenerate with probability one).
Eigenbasis random_basis(Index dim, Rng& rng, std::string label = {});

SignalEnsemble signal_ensemble(const ObservableSet& set);

bool is_prime(long n) noexcept;

/// N mutually unbiased bases in prime dimension d. Basis 0 is computational;
/// for odd d, basis b has <k|psi_j^b> = w^(b k^2 + j k) / sqrt(d), w = e^(2 pi i/d);
/// for d = 2 the bases are the Z, X, Y eigenbases.
ObservableSet mub_bases(long d, long n);

bool is_mutually_unbiased(const ObservableSet& set, double tol = 1e-10);

}  // namespace incompat
