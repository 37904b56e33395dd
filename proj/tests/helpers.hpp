#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "incompat/observables.hpp"

namespace testing_support {

using namespace incompat;

inline ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline UnitVector vec(std::initializer_list<Complex> amps) {
  ComplexVector v(static_cast<Index>(amps.size()));
  Index k = 0;
  for (Complex a : amps) v[k++] = a;
  return UnitVector::normalize(v);
}

inline Eigenbasis computational(Index d, std::string label = "Z") {
  std::vector<UnitVector> vs;
  for (Index k = 0; k < d; ++k) vs.push_back(UnitVector::basis(d, k));
  return Eigenbasis::from_vectors(std::move(vs), std::move(label));
}

/// Computational basis listed in reverse order: same observable up to relabeling.
inline Eigenbasis computational_reversed(Index d, std::string label = "Z'") {
  std::vector<UnitVector> vs;
  for (Index k = d - 1; k >= 0; --k) vs.push_back(UnitVector::basis(d, k));
  return Eigenbasis::from_vectors(std::move(vs), std::move(label));
}

inline Eigenbasis x_basis() {
  const double h = std::numbers::sqrt2 / 2;
  return Eigenbasis::from_vectors({vec({h, h}), vec({h, -h})}, "X");
}

inline Eigenbasis y_basis() {
  const double h = std::numbers::sqrt2 / 2;
  return Eigenbasis::from_vectors({vec({h, Complex(0, h)}), vec({h, Complex(0, -h)})}, "Y");
}

/// Real rotation of the computational qubit basis by angle theta.
inline Eigenbasis rotated_qubit(double theta, std::string label = "R") {
  return Eigenbasis::from_vectors({vec({std::cos(theta), std::sin(theta)}), vec({-std::sin(theta), std::cos(theta)})},
                                  std::move(label));
}

/// {e1, (e2 + e3)/sqrt2, (e2 - e3)/sqrt2} in d = 3.
inline Eigenbasis shared_e1_basis() {
  const double h = std::numbers::sqrt2 / 2;
  return Eigenbasis::from_vectors({vec({1, 0, 0}), vec({0, h, h}), vec({0, h, -h})}, "B");
}

/// U basis with U a fixed unitary (eigenbasis of a seeded GUE matrix).
inline Eigenbasis seeded_basis(Index d, std::uint64_t seed, std::string label) {
  Rng rng = make_stream(seed, 99);
  return random_basis(d, rng, std::move(label));
}

/// Same vectors as b, permuted cyclically and rephased.
inline Eigenbasis relabeled(const Eigenbasis& b, std::string label) {
  std::vector<UnitVector> vs;
  const Index d = b.dim();
  for (Index k = 0; k < d; ++k) {
    const ComplexVector& v = b.vectors()[static_cast<std::size_t>((k + 1) % d)].amplitudes();
    vs.push_back(UnitVector::normalize(v * std::polar(1.0, 0.3 * static_cast<double>(k + 1))));
  }
  return Eigenbasis::from_vectors(std::move(vs), std::move(label));
}

}  // namespace testing_support
