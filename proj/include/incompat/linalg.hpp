#pragma once

// Dense complex linear algebra shared by every other module: a deterministic
// Hermitian eigensolver, projectors, traces and seeded Haar-random vectors.

#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>

#include "incompat/error.hpp"

namespace incompat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Random engine threaded explicitly through every stochastic routine.
using Rng = std::mt19937_64;

/// Independent stream for a (seed, stream index) pair.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// A normalized state vector. Construction normalizes; the norm invariant
/// therefore holds for every live instance.
class UnitVector {
 public:
  UnitVector() = default;

  /// Throws InvalidInput for a zero (or non-finite) vector.
  static UnitVector normalize(const ComplexVector& v);

  /// Keeps v bit-for-bit when its squared norm is within tol of 1, otherwise
  /// normalizes.
  static UnitVector keep_if_unit(const ComplexVector& v, double tol = 1e-12);

  /// Basis vector e_k of dimension dim (0-based k).
  static UnitVector basis(Index dim, Index k);

  Index dim() const noexcept { return amplitudes_.size(); }
  const ComplexVector& amplitudes() const noexcept { return amplitudes_; }
  Complex operator[](Index k) const { return amplitudes_[k]; }

 private:
  explicit UnitVector(ComplexVector v) : amplitudes_(std::move(v)) {}
  ComplexVector amplitudes_;
};

struct EigenDecomposition {
  RealVector eigenvalues;     // descending
  ComplexMatrix eigenvectors; // column k pairs with eigenvalues[k]

  UnitVector eigenvector(Index k) const;
};

/// Cyclic complex Jacobi. Eigenvalues are sorted descending (stable on ties)
/// and each eigenvector's first non-negligible amplitude is made real positive,
/// so the output is a deterministic function of the input.
///
/// Throws NotHermitian if ||H - H^dag||_F > tol * ||H||_F, NoConvergence if
/// 100 d^2 sweeps do not clear the off-diagonal part.
EigenDecomposition herm_eig(const ComplexMatrix& h, double tol = 1e-10);

/// Top eigenpair, with herm_eig's tie-breaking on a degenerate top.
std::pair<double, UnitVector> max_eig(const ComplexMatrix& h);

ComplexMatrix projector(const UnitVector& v);

/// Tr(AB). Throws DimMismatch.
Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||AB - BA||_F. Throws DimMismatch.
double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b);

/// Normalized vector of i.i.d. complex Gaussians (Haar-distributed direction).
UnitVector random_unit_vector(Index dim, Rng& rng);

/// GUE-distributed Hermitian matrix.
ComplexMatrix random_hermitian(Index dim, Rng& rng);

/// Mixed state G G^dag / Tr(G G^dag) with G a complex Ginibre matrix.
ComplexMatrix random_density_matrix(Index dim, Rng& rng);

/// Pseudo-inverse square root of a PSD matrix: eigenvalues below
/// rel_cutoff * max are treated as zero. Also reports the numerical rank.
ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& h, double rel_cutoff, Index* rank = nullptr);

/// (A + A^dag) / 2
inline ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  return (a + a.adjoint()) * 0.5;
}

}  // namespace incompat
