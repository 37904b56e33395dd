#include "incompat/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace incompat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::DimMismatch: return "DimMismatch";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::NoValidSubset: return "NoValidSubset";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::TooManyBases: return "TooManyBases";
    case ErrorCode::OutcomeCountMismatch: return "OutcomeCountMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NonMonotone: return "NonMonotone";
    case ErrorCode::SingularUpdate: return "SingularUpdate";
    case ErrorCode::WrongDimension: return "WrongDimension";
    case ErrorCode::NotMutuallyUnbiased: return "NotMutuallyUnbiased";
    case ErrorCode::BoundViolation: return "BoundViolation";
    case ErrorCode::ItemCount: return "ItemCount";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

Rng make_stream(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

UnitVector UnitVector::normalize(const ComplexVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw Error(ErrorCode::InvalidInput, "cannot normalize a zero or non-finite vector");
  }
  return UnitVector(v / n);
}

UnitVector UnitVector::keep_if_unit(const ComplexVector& v, double tol) {
  if (std::abs(v.squaredNorm() - 1.0) <= tol) return UnitVector(v);
  return normalize(v);
}

UnitVector UnitVector::basis(Index dim, Index k) {
  if (k < 0 || k >= dim) throw Error(ErrorCode::IndexOutOfRange, "basis index out of range");
  ComplexVector v = ComplexVector::Zero(dim);
  v[k] = 1.0;
  return UnitVector(std::move(v));
}

UnitVector EigenDecomposition::eigenvector(Index k) const {
  return UnitVector::normalize(eigenvectors.col(k));
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

// Make the first amplitude with modulus above the threshold real positive.
void fix_phase(Eigen::Ref<ComplexVector> v) {
  const double threshold = 1e-10 * v.norm();
  for (Index k = 0; k < v.size(); ++k) {
    const double mag = std::abs(v[k]);
    if (mag > threshold) {
      v *= std::conj(v[k]) / mag;
      v[k] = Complex(mag, 0.0);
      return;
    }
  }
}

}  // namespace

EigenDecomposition herm_eig(const ComplexMatrix& h, double tol) {
  if (h.rows() != h.cols()) throw Error(ErrorCode::DimMismatch, "matrix is not square");
  const Index d = h.rows();
  const double fro = h.norm();
  if ((h - h.adjoint()).norm() > tol * fro) {
    throw Error(ErrorCode::NotHermitian, "matrix deviates from its adjoint");
  }

  ComplexMatrix a = hermitian_part(h);
  ComplexMatrix v = ComplexMatrix::Identity(d, d);
  const double stop = std::pow(1e-15 * fro, 2);
  const long max_sweeps = 100L * d * d;

  long sweep = 0;
  while (off_diagonal_norm2(a) > stop) {
    if (++sweep > max_sweeps) {
      throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap exceeded");
    }
    for (Index p = 0; p < d - 1; ++p) {
      for (Index q = p + 1; q < d; ++q) {
        const Complex apq = a(p, q);
        const double r = std::abs(apq);
        if (r <= 1e-300) continue;
        const Complex phase = apq / r;  // e^{i phi}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * r);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const Complex e = std::conj(phase);
        const Complex upp = c, upq = s, uqp = -s * e, uqq = c * e;
        for (Index k = 0; k < d; ++k) {  // A <- A U
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (Index k = 0; k < d; ++k) {  // A <- U^dag A
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (Index k = 0; k < d; ++k) {  // V <- V U
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * upp + vkq * uqp;
          v(k, q) = vkp * upq + vkq * uqq;
        }
      }
    }
  }

  std::vector<Index> order(static_cast<std::size_t>(d));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return a(x, x).real() > a(y, y).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (Index k = 0; k < d; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    out.eigenvalues[k] = a(src, src).real();
    out.eigenvectors.col(k) = v.col(src);
    out.eigenvectors.col(k).normalize();
    fix_phase(out.eigenvectors.col(k));
  }
  return out;
}

std::pair<double, UnitVector> max_eig(const ComplexMatrix& h) {
  const EigenDecomposition eig = herm_eig(h);
  return {eig.eigenvalues[0], eig.eigenvector(0)};
}

ComplexMatrix projector(const UnitVector& v) {
  return v.amplitudes() * v.amplitudes().adjoint();
}

Complex trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.cols() || a.cols() != b.rows()) {
    throw Error(ErrorCode::DimMismatch, "trace_product operands differ in shape");
  }
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum();
}

double commutator_norm(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw Error(ErrorCode::DimMismatch, "commutator operands differ in shape");
  }
  return (a * b - b * a).norm();
}

UnitVector random_unit_vector(Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexVector v(dim);
  for (Index k = 0; k < dim; ++k) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    v[k] = Complex(re, im);
  }
  return UnitVector::normalize(v);
}

namespace {

ComplexMatrix gaussian_matrix(Index dim, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  ComplexMatrix g(dim, dim);
  for (Index c = 0; c < dim; ++c) {
    for (Index r = 0; r < dim; ++r) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      g(r, c) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

ComplexMatrix random_hermitian(Index dim, Rng& rng) { return hermitian_part(gaussian_matrix(dim, rng)); }

ComplexMatrix random_density_matrix(Index dim, Rng& rng) {
  const ComplexMatrix g = gaussian_matrix(dim, rng);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

ComplexMatrix pinv_sqrt_psd(const ComplexMatrix& h, double rel_cutoff, Index* rank) {
  const EigenDecomposition eig = herm_eig(h, 1e-8);
  const Index d = h.rows();
  const double top = eig.eigenvalues.size() ? eig.eigenvalues[0] : 0.0;
  RealVector inv(d);
  Index r = 0;
  for (Index k = 0; k < d; ++k) {
    const double lam = eig.eigenvalues[k];
    if (top > 0.0 && lam > rel_cutoff * top) {
      inv[k] = 1.0 / std::sqrt(lam);
      ++r;
    } else {
      inv[k] = 0.0;
    }
  }
  if (rank) *rank = r;
  return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace incompat
