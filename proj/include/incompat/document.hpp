#pragma once

// JSON input documents (observables or explicit bases) and the report
// serializers shared by the CLI. Complex numbers are [re, im] pairs.

#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "incompat/entropic.hpp"
#include "incompat/observables.hpp"
#include "incompat/optimizer.hpp"

namespace incompat {

using json = nlohmann::json;

struct ObservableItem {
  std::string label;
  ComplexMatrix matrix;
};

struct BasisItem {
  std::string label;
  std::vector<ComplexVector> vectors;
};

struct InputDocument {
  Index dim = 0;
  std::vector<std::variant<ObservableItem, BasisItem>> items;
};

/// Throws InvalidInput with the offending item and position.
InputDocument parse_input(const std::string& text);
InputDocument load_input(const std::string& path);

/// Observables are reduced to their eigenbases (degenerate spectra rejected).
ObservableSet to_observable_set(const InputDocument& doc, double degeneracy_tol = 1e-8);

json to_json(const InputDocument& doc);
InputDocument basis_document(const ObservableSet& set);

json complex_to_json(Complex z);
json vector_to_json(const ComplexVector& v);
json matrix_to_json(const ComplexMatrix& m);
json to_json(const OptimizerConfig& cfg);
json to_json(const Povm& m);
json to_json(const QReport& r);
json to_json(const EntropicReport& r);

/// Scalar leaves of a document as "key,value" lines; nested keys are dotted,
/// arrays are skipped. Doubles use 17 significant digits.
std::string to_csv(const json& doc);

}  // namespace incompat
