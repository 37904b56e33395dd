#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "incompat/linalg.hpp"

using namespace incompat;
using namespace testing_support;

namespace {

double reconstruction_residual(const ComplexMatrix& h, const EigenDecomposition& eig) {
  return (eig.eigenvectors * eig.eigenvalues.asDiagonal() * eig.eigenvectors.adjoint() - h).norm();
}

double gram_defect(const EigenDecomposition& eig) {
  const Index d = eig.eigenvectors.cols();
  return (eig.eigenvectors.adjoint() * eig.eigenvectors - ComplexMatrix::Identity(d, d)).norm();
}

}  // namespace

TEST_CASE("herm_eig on identity and diagonal inputs") {
  const EigenDecomposition id = herm_eig(ComplexMatrix::Identity(3, 3));
  for (Index k = 0; k < 3; ++k) CHECK(id.eigenvalues[k] == doctest::Approx(1.0).epsilon(1e-15));

  const EigenDecomposition z = herm_eig(pauli_z());
  CHECK(z.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(z.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK((z.eigenvectors - ComplexMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("herm_eig sorts descending and reconstructs a seeded random matrix") {
  Rng rng = make_stream(1, 0);
  const ComplexMatrix h = random_hermitian(4, rng);
  const EigenDecomposition eig = herm_eig(h);
  CHECK(reconstruction_residual(h, eig) < 1e-9);
  CHECK(gram_defect(eig) < 1e-10);
  for (Index k = 0; k + 1 < 4; ++k) CHECK(eig.eigenvalues[k] >= eig.eigenvalues[k + 1]);
}

TEST_CASE("herm_eig invariants over random Hermitian matrices") {
  Rng rng = make_stream(2, 0);
  for (int trial = 0; trial < 200; ++trial) {
    const Index d = 1 + trial % 8;
    const ComplexMatrix h = random_hermitian(d, rng) * std::pow(10.0, trial % 5 - 2);
    const EigenDecomposition eig = herm_eig(h);
    CHECK(reconstruction_residual(h, eig) <= 1e-9 * std::max(1.0, h.norm()));
    CHECK(gram_defect(eig) <= 1e-10);
    // phase convention: first non-negligible amplitude real positive
    for (Index k = 0; k < d; ++k) {
      Index first = 0;
      while (std::abs(eig.eigenvectors(first, k)) <= 1e-10) ++first;
      CHECK(eig.eigenvectors(first, k).imag() == 0.0);
      CHECK(eig.eigenvectors(first, k).real() > 0.0);
    }
  }
}

TEST_CASE("herm_eig handles degenerate spectra deterministically") {
  Rng rng = make_stream(3, 0);
  // two-fold degenerate top eigenvalue in a rotated frame
  const ComplexMatrix u = herm_eig(random_hermitian(4, rng)).eigenvectors;
  RealVector lam(4);
  lam << 2.0, 2.0, -1.0, 0.5;
  const ComplexMatrix h = u * lam.asDiagonal() * u.adjoint();
  const EigenDecomposition a = herm_eig(h);
  const EigenDecomposition b = herm_eig(h);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
  CHECK(reconstruction_residual(h, a) < 1e-9);
  CHECK(a.eigenvalues[0] == doctest::Approx(2.0));
  CHECK(a.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  ComplexMatrix m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(herm_eig(m), Error);
  try {
    herm_eig(m);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
  }
}

TEST_CASE("max_eig examples") {
  ComplexMatrix diag = ComplexMatrix::Zero(2, 2);
  diag(0, 0) = 0.2;
  diag(1, 1) = 0.8;
  const auto [top, v] = max_eig(diag);
  CHECK(top == doctest::Approx(0.8));
  CHECK(std::abs(v[1]) == doctest::Approx(1.0));

  const ComplexMatrix half = 0.5 * ComplexMatrix::Identity(2, 2);
  const auto [top_half, v1] = max_eig(half);
  const auto [top_half2, v2] = max_eig(half);
  CHECK(top_half == doctest::Approx(0.5));
  CHECK(v1.amplitudes() == v2.amplitudes());

  // d Phi(|0><0|) for the Z/X ensemble, worked by hand: diag(3/4, 1/4)
  ComplexMatrix d_phi = ComplexMatrix::Zero(2, 2);
  d_phi(0, 0) = 0.75;
  d_phi(1, 1) = 0.25;
  CHECK(max_eig(d_phi).first == doctest::Approx(0.75));
}

TEST_CASE("max_eig equals the top of herm_eig exactly") {
  Rng rng = make_stream(4, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const ComplexMatrix h = random_hermitian(1 + trial % 6, rng);
    CHECK(max_eig(h).first == herm_eig(h).eigenvalues[0]);
  }
}

TEST_CASE("projector examples") {
  const ComplexMatrix p0 = projector(UnitVector::basis(2, 0));
  CHECK((p0 - ComplexMatrix{{1, 0}, {0, 0}}).norm() < 1e-15);

  const double h = std::sqrt(0.5);
  const ComplexMatrix plus = projector(vec({h, h}));
  CHECK((plus - ComplexMatrix::Constant(2, 2, 0.5)).norm() < 1e-15);

  Rng rng = make_stream(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const ComplexMatrix p = projector(random_unit_vector(5, rng));
    CHECK(std::abs(p.trace() - Complex(1.0)) < 1e-12);
    CHECK((p * p - p).norm() < 1e-10);
    CHECK((p - p.adjoint()).norm() < 1e-15);
  }
}

TEST_CASE("trace_product") {
  CHECK(trace_product(ComplexMatrix::Identity(3, 3), ComplexMatrix::Identity(3, 3)) == Complex(3.0));
  CHECK(trace_product(projector(UnitVector::basis(2, 0)), projector(UnitVector::basis(2, 1))) == Complex(0.0));
  CHECK_THROWS_AS(trace_product(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), Error);

  Rng rng = make_stream(6, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const UnitVector u = random_unit_vector(3, rng);
    const UnitVector v = random_unit_vector(3, rng);
    const Complex t = trace_product(projector(u), projector(v));
    const double direct = std::norm(u.amplitudes().dot(v.amplitudes()));
    CHECK(std::abs(t.real() - direct) < 1e-12);
    CHECK(std::abs(t.imag()) < 1e-12);
    CHECK(t.real() >= -1e-12);
    CHECK(t.real() <= 1 + 1e-12);

    const ComplexMatrix a = ComplexMatrix::Random(3, 3);
    const ComplexMatrix b = ComplexMatrix::Random(3, 3);
    CHECK(std::abs(trace_product(a, b) - std::conj(trace_product(b.adjoint(), a.adjoint()))) < 1e-12);
  }
}

TEST_CASE("commutator_norm") {
  ComplexMatrix d1 = ComplexMatrix::Zero(3, 3), d2 = ComplexMatrix::Zero(3, 3);
  d1.diagonal() << 1, 2, 3;
  d2.diagonal() << -1, 0.5, 7;
  CHECK(commutator_norm(d1, d2) == 0.0);
  // ZX - XZ = 2iY, Frobenius norm 2 sqrt(2)
  CHECK(commutator_norm(pauli_z(), pauli_x()) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(commutator_norm(pauli_x(), pauli_x()) == 0.0);
  CHECK_THROWS_AS(commutator_norm(d1, pauli_x()), Error);
}

TEST_CASE("random_unit_vector") {
  Rng rng = make_stream(7, 0);
  const UnitVector one = random_unit_vector(1, rng);
  CHECK(std::abs(one[0]) == doctest::Approx(1.0).epsilon(1e-12));

  Rng a = make_stream(11, 3), b = make_stream(11, 3);
  CHECK(random_unit_vector(4, a).amplitudes() == random_unit_vector(4, b).amplitudes());

  // Haar average of |<0|v>|^2 in d = 2 is 1/2
  Rng mc = make_stream(8, 0);
  double mean = 0.0;
  const int samples = 10000;
  for (int s = 0; s < samples; ++s) mean += std::norm(random_unit_vector(2, mc)[0]);
  mean /= samples;
  CHECK(std::abs(mean - 0.5) < 0.02);
}

TEST_CASE("unit vectors are normalized and zero vectors rejected") {
  ComplexVector v(3);
  v << 3, Complex(0, 4), 0;
  CHECK(std::abs(UnitVector::normalize(v).amplitudes().squaredNorm() - 1.0) < 1e-12);
  CHECK_THROWS_AS(UnitVector::normalize(ComplexVector::Zero(3)), Error);
}

TEST_CASE("pinv_sqrt_psd on a rank-deficient matrix") {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(0, 0) = 4.0;
  h(1, 1) = 0.25;
  Index rank = 0;
  const ComplexMatrix r = pinv_sqrt_psd(h, 1e-12, &rank);
  CHECK(rank == 2);
  CHECK(std::abs(r(0, 0) - Complex(0.5)) < 1e-14);
  CHECK(std::abs(r(1, 1) - Complex(2.0)) < 1e-14);
  CHECK(std::abs(r(2, 2)) < 1e-14);
}
