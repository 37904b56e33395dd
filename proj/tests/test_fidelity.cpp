#include <doctest.h>

#include "helpers.hpp"
#include "incompat/fidelity.hpp"
#include "incompat/optimizer.hpp"

using namespace incompat;
using namespace testing_support;

namespace {

SignalEnsemble ensemble(std::vector<Eigenbasis> bases) { return SignalEnsemble(ObservableSet(std::move(bases))); }

SignalEnsemble random_ensemble(Index d, Index n, Rng& rng) {
  std::vector<Eigenbasis> members;
  for (Index i = 0; i < n; ++i) members.push_back(random_basis(d, rng));
  return ensemble(std::move(members));
}

ReconstructionMap resend_basis(const Eigenbasis& b) { return ReconstructionMap::pure(b.vectors()); }

}  // namespace

TEST_CASE("Povm validation") {
  CHECK_NOTHROW(Povm::projective(x_basis()));
  CHECK_THROWS_AS(Povm::make({1.0}, {UnitVector::basis(2, 0)}), Error);               // incomplete
  CHECK_THROWS_AS(Povm::make({2.0, 0.0}, {UnitVector::basis(2, 0), UnitVector::basis(2, 1)}), Error);
  CHECK_THROWS_AS(Povm::make({1.0, 1.0}, {UnitVector::basis(2, 0)}), Error);

  Rng rng = make_stream(30, 0);
  const Povm m = random_povm(3, 9, rng);
  double total = 0.0;
  for (double w : m.weights()) total += w;
  CHECK(total == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(m.completeness_error() < 1e-9);
}

TEST_CASE("ReconstructionMap validation") {
  CHECK_THROWS_AS(ReconstructionMap::make({ComplexMatrix::Identity(2, 2)}), Error);  // trace 2
  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(ReconstructionMap::make({negative}), Error);
  CHECK_NOTHROW(ReconstructionMap::make({0.5 * ComplexMatrix::Identity(2, 2)}));
}

TEST_CASE("average_fidelity examples") {
  const Eigenbasis z = computational(2);
  SUBCASE("perfect discrimination of a single basis") {
    CHECK(average_fidelity(ensemble({z}), Povm::projective(z), resend_basis(z)) == doctest::Approx(1.0));
  }
  SUBCASE("Z measurement on the Z/X ensemble") {
    CHECK(average_fidelity(ensemble({z, x_basis()}), Povm::projective(z), resend_basis(z)) ==
          doctest::Approx(0.75).epsilon(1e-14));
  }
  SUBCASE("resending the maximally mixed state gives 1/d") {
    Rng rng = make_stream(31, 0);
    for (Index d = 2; d <= 4; ++d) {
      const SignalEnsemble s = random_ensemble(d, 3, rng);
      const Povm m = random_povm(d, static_cast<int>(d * d), rng);
      const ComplexMatrix mixed = ComplexMatrix::Identity(d, d) / static_cast<double>(d);
      const ReconstructionMap a = ReconstructionMap::make(std::vector<ComplexMatrix>(m.weights().size(), mixed));
      CHECK(std::abs(average_fidelity(s, m, a) - 1.0 / static_cast<double>(d)) < 1e-12);
    }
  }
  SUBCASE("errors") {
    const SignalEnsemble s = ensemble({z});
    CHECK_THROWS_AS(average_fidelity(s, Povm::projective(z), ReconstructionMap::pure({z.vectors()[0]})), Error);
    const Eigenbasis z3 = computational(3);
    CHECK_THROWS_AS(average_fidelity(s, Povm::projective(z3), resend_basis(z3)), Error);
  }
}

TEST_CASE("phi_map examples") {
  const SignalEnsemble zx = ensemble({computational(2), x_basis()});

  // sum_j Pi_j^i = I per basis gives Phi(I/d) = I/d^2
  const ComplexMatrix out = phi_map(zx, ComplexMatrix::Identity(2, 2) / 2.0);
  CHECK((out - ComplexMatrix::Identity(2, 2) / 4.0).norm() < 1e-15);

  // hand-computed: (1/4) diag(1,0) + I/8
  const ComplexMatrix rho0 = projector(UnitVector::basis(2, 0));
  ComplexMatrix expected = ComplexMatrix::Identity(2, 2) / 8.0;
  expected(0, 0) += 0.25;
  CHECK((phi_map(zx, rho0) - expected).norm() < 1e-15);
  CHECK(phi_map(zx, rho0).trace().real() == doctest::Approx(0.5));

  CHECK_THROWS_AS(phi_map(zx, ComplexMatrix::Identity(3, 3)), Error);
}

TEST_CASE("phi_map trace and positivity on random inputs") {
  Rng rng = make_stream(32, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 4;
    const SignalEnsemble s = random_ensemble(d, 1 + trial % 3, rng);
    const ComplexMatrix rho = random_density_matrix(d, rng);
    const ComplexMatrix out = phi_map(s, rho);
    CHECK(std::abs(out.trace().real() - 1.0 / static_cast<double>(d)) < 1e-10);
    CHECK(herm_eig(out).eigenvalues[d - 1] >= -1e-10);

    const UnitVector v = random_unit_vector(d, rng);
    CHECK((phi_map(s, v) - phi_map(s, projector(v))).norm() < 1e-13);
  }
}

TEST_CASE("optimal_reconstruction examples") {
  const Eigenbasis z = computational(2);
  const ReconstructionMap single = optimal_reconstruction(ensemble({z}), Povm::projective(z));
  CHECK((single.state(0) - z.projector(0)).norm() < 1e-12);
  CHECK((single.state(1) - z.projector(1)).norm() < 1e-12);

  const ReconstructionMap zx = optimal_reconstruction(ensemble({z, x_basis()}), Povm::projective(z));
  CHECK((zx.state(0) - z.projector(0)).norm() < 1e-12);

  // d Phi(chi) = I/2 for the complete qubit ensemble: tie broken deterministically
  const SignalEnsemble zxy(mub_bases(2, 3));
  const ReconstructionMap r1 = optimal_reconstruction(zxy, Povm::projective(x_basis()));
  const ReconstructionMap r2 = optimal_reconstruction(zxy, Povm::projective(x_basis()));
  CHECK(r1.state(0) == r2.state(0));
}

TEST_CASE("achievable_fidelity examples") {
  const Eigenbasis z = computational(2);
  const FidelityBreakdown zx = achievable_fidelity(ensemble({z, x_basis()}), Povm::projective(z));
  CHECK(zx.value == doctest::Approx(0.75).epsilon(1e-14));
  REQUIRE(zx.per_outcome.size() == 2);
  CHECK(zx.per_outcome[0].top_eigenvalue == doctest::Approx(0.375));

  CHECK(achievable_fidelity(ensemble({z}), Povm::projective(z)).value == doctest::Approx(1.0));

  // per outcome: (1/3)(diag(1,0) + I/2 + I/2) = diag(2/3, 1/3), so mu = 2/3
  const FidelityBreakdown zxy = achievable_fidelity(SignalEnsemble(mub_bases(2, 3)), Povm::projective(z));
  CHECK(zxy.value == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("breakdown contributions sum to the value") {
  Rng rng = make_stream(33, 0);
  for (int trial = 0; trial < 20; ++trial) {
    const SignalEnsemble s = random_ensemble(3, 2, rng);
    const FidelityBreakdown b = achievable_fidelity(s, random_povm(3, 9, rng));
    double sum = 0.0;
    for (const auto& t : b.per_outcome) sum += t.contribution;
    CHECK(std::abs(sum - b.value) < 1e-12);
  }
}

TEST_CASE("eigenvalue, overlap and explicit routes agree") {
  Rng rng = make_stream(34, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Index d = 2 + trial % 2;
    const SignalEnsemble s = random_ensemble(d, 1 + trial % 3, rng);
    const Povm m = random_povm(d, static_cast<int>(d * d), rng);
    const double eig_form = achievable_fidelity(s, m).value;
    CHECK(std::abs(eig_form - theorem2_fidelity(s, m)) < 1e-10);
    CHECK(std::abs(eig_form - average_fidelity(s, m, optimal_reconstruction(s, m))) < 1e-10);
    CHECK(eig_form >= 1.0 / static_cast<double>(d) - 1e-10);
    CHECK(eig_form <= 1.0 + 1e-10);
  }
  CHECK(theorem2_fidelity(ensemble({computational(3)}), Povm::projective(computational(3))) == doctest::Approx(1.0));
  CHECK(theorem2_fidelity(ensemble({computational(2), x_basis()}), Povm::projective(computational(2))) ==
        doctest::Approx(0.75));
}

TEST_CASE("top-eigenvector reconstruction beats any other reconstruction") {
  Rng rng = make_stream(35, 0);
  for (int trial = 0; trial < 30; ++trial) {
    const Index d = 2 + trial % 3;
    const SignalEnsemble s = random_ensemble(d, 2, rng);
    const Povm m = random_povm(d, static_cast<int>(d * d), rng);
    const double best = achievable_fidelity(s, m).value;
    std::vector<ComplexMatrix> states;
    for (Index a = 0; a < m.size(); ++a) states.push_back(random_density_matrix(d, rng));
    CHECK(average_fidelity(s, m, ReconstructionMap::make(states)) <= best + 1e-10);
  }
}

TEST_CASE("projective_strategy_fidelity") {
  for (long d : {2L, 3L, 5L}) {
    for (long n = 1; n <= d + 1; ++n) {
      const SignalEnsemble s(mub_bases(d, n));
      for (Index k = 0; k < n; ++k) {
        CHECK(std::abs(projective_strategy_fidelity(s, k) - projective_lower_bound(n, d)) < 1e-12);
      }
    }
  }
  CHECK(projective_strategy_fidelity(ensemble({computational(4)}), 0) == 1.0);

  // cross-evaluation against the explicit strategy
  const Eigenbasis z = computational(2);
  const SignalEnsemble tilted = ensemble({z, rotated_qubit(0.3)});
  const double closed = projective_strategy_fidelity(tilted, 0);
  const double c2 = std::pow(std::cos(0.3), 2), s2 = std::pow(std::sin(0.3), 2);
  CHECK(std::abs(closed - (0.5 + 0.25 * 2 * (c2 * c2 + s2 * s2))) < 1e-12);
  CHECK(std::abs(closed - average_fidelity(tilted, Povm::projective(z), resend_basis(z))) < 1e-12);

  Rng rng = make_stream(36, 0);
  for (int trial = 0; trial < 40; ++trial) {
    const Index d = 2 + trial % 4;
    const Index n = 1 + trial % 4;
    const SignalEnsemble s = random_ensemble(d, n, rng);
    for (Index k = 0; k < n; ++k) {
      CHECK(projective_strategy_fidelity(s, k) >= projective_lower_bound(n, d) - 1e-12);
    }
  }
  CHECK_THROWS_AS(projective_strategy_fidelity(tilted, 2), Error);
  CHECK_THROWS_AS(projective_strategy_fidelity(tilted, -1), Error);
}
