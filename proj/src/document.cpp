#include "incompat/document.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace incompat {

namespace {

[[noreturn]] void invalid(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvalidInput, where + ": " + what);
}

Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    invalid(where, "expected a [re, im] pair, got " + j.dump());
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ComplexVector parse_vector(const json& j, Index dim, const std::string& where) {
  if (!j.is_array() || static_cast<Index>(j.size()) != dim) {
    invalid(where, "expected " + std::to_string(dim) + " complex entries");
  }
  ComplexVector v(dim);
  for (Index k = 0; k < dim; ++k) v[k] = parse_complex(j[static_cast<std::size_t>(k)], where + "[" + std::to_string(k) + "]");
  return v;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    // locate the byte offset as line:column
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    invalid("line " + std::to_string(line) + ", column " + std::to_string(col), e.what());
  }
  if (!root.is_object()) invalid("document", "top level must be an object");
  if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<long>() < 1) {
    invalid("document", "missing positive integer 'dim'");
  }
  if (!root.contains("items") || !root["items"].is_array()) invalid("document", "missing 'items' array");

  InputDocument doc;
  doc.dim = root["dim"].get<Index>();
  std::size_t index = 0;
  for (const auto& item : root["items"]) {
    const std::string label = item.value("label", "item-" + std::to_string(index));
    const std::string where = "item " + std::to_string(index) + " ('" + label + "')";
    const std::string type = item.value("type", "");
    if (type == "observable") {
      if (!item.contains("matrix")) invalid(where, "observable needs 'matrix'");
      const json& rows = item["matrix"];
      if (!rows.is_array() || static_cast<Index>(rows.size()) != doc.dim) {
        invalid(where, "matrix needs " + std::to_string(doc.dim) + " rows");
      }
      ComplexMatrix m(doc.dim, doc.dim);
      for (Index r = 0; r < doc.dim; ++r) {
        m.row(r) = parse_vector(rows[static_cast<std::size_t>(r)], doc.dim, where + " row " + std::to_string(r)).transpose();
      }
      if ((m - m.adjoint()).norm() > 1e-9 * std::max(1.0, m.norm())) invalid(where, "matrix is not Hermitian");
      doc.items.emplace_back(ObservableItem{label, std::move(m)});
    } else if (type == "basis") {
      if (!item.contains("vectors")) invalid(where, "basis needs 'vectors'");
      const json& vs = item["vectors"];
      if (!vs.is_array() || static_cast<Index>(vs.size()) != doc.dim) {
        invalid(where, "basis needs " + std::to_string(doc.dim) + " vectors");
      }
      BasisItem basis{label, {}};
      for (Index k = 0; k < doc.dim; ++k) {
        basis.vectors.push_back(parse_vector(vs[static_cast<std::size_t>(k)], doc.dim, where + " vector " + std::to_string(k)));
      }
      for (Index j = 0; j < doc.dim; ++j) {
        for (Index l = j; l < doc.dim; ++l) {
          const Complex g = basis.vectors[static_cast<std::size_t>(j)].dot(basis.vectors[static_cast<std::size_t>(l)]);
          if (std::abs(g - Complex(j == l ? 1.0 : 0.0)) > 1e-9) invalid(where, "basis vectors are not orthonormal");
        }
      }
      doc.items.emplace_back(std::move(basis));
    } else {
      invalid(where, "type must be \"observable\" or \"basis\"");
    }
    ++index;
  }
  if (doc.items.empty()) invalid("document", "'items' is empty");
  return doc;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_input(buf.str());
}

ObservableSet to_observable_set(const InputDocument& doc, double degeneracy_tol) {
  std::vector<Eigenbasis> members;
  for (const auto& item : doc.items) {
    if (const auto* obs = std::get_if<ObservableItem>(&item)) {
      members.push_back(eigenbasis_of(obs->matrix, degeneracy_tol, obs->label));
    } else {
      const auto& basis = std::get<BasisItem>(item);
      std::vector<UnitVector> vectors;
      for (const auto& v : basis.vectors) vectors.push_back(UnitVector::keep_if_unit(v));
      members.push_back(Eigenbasis::from_vectors(std::move(vectors), basis.label));
    }
  }
  return ObservableSet(std::move(members));
}

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const ComplexVector& v) {
  json out = json::array();
  for (Index k = 0; k < v.size(); ++k) out.push_back(complex_to_json(v[k]));
  return out;
}

json matrix_to_json(const ComplexMatrix& m) {
  json out = json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(vector_to_json(m.row(r).transpose()));
  return out;
}

json to_json(const InputDocument& doc) {
  json items = json::array();
  for (const auto& item : doc.items) {
    if (const auto* obs = std::get_if<ObservableItem>(&item)) {
      items.push_back({{"type", "observable"}, {"label", obs->label}, {"matrix", matrix_to_json(obs->matrix)}});
    } else {
      const auto& basis = std::get<BasisItem>(item);
      json vs = json::array();
      for (const auto& v : basis.vectors) vs.push_back(vector_to_json(v));
      items.push_back({{"type", "basis"}, {"label", basis.label}, {"vectors", vs}});
    }
  }
  return {{"dim", doc.dim}, {"items", items}};
}

InputDocument basis_document(const ObservableSet& set) {
  InputDocument doc;
  doc.dim = set.dim();
  for (const auto& basis : set.members()) {
    BasisItem item{basis.label(), {}};
    for (const auto& v : basis.vectors()) item.vectors.push_back(v.amplitudes());
    doc.items.emplace_back(std::move(item));
  }
  return doc;
}

json to_json(const OptimizerConfig& cfg) {
  return {{"restarts", cfg.restarts},
          {"outcomes", cfg.outcomes},
          {"max_iters", cfg.max_iters},
          {"convergence_eps", cfg.convergence_eps},
          {"seed", cfg.seed},
          {"weight_prune_eps", cfg.weight_prune_eps},
          {"tol", cfg.commutation_tol}};
}

json to_json(const Povm& m) {
  json directions = json::array();
  for (const auto& v : m.directions()) directions.push_back(vector_to_json(v.amplitudes()));
  return {{"weights", m.weights()}, {"directions", directions}};
}

json to_json(const QReport& r) {
  json recon = json::array();
  for (const auto& s : r.best_reconstruction.states()) recon.push_back(matrix_to_json(s));
  return {{"q", r.q},
          {"optimal_fidelity", r.optimal_fidelity},
          {"is_lower_bound", r.is_lower_bound},
          {"dim", r.dim},
          {"subset_size", r.subset_size},
          {"lower_bound_eq8", r.lower_bound_eq8},
          {"upper_bound_eq5", r.upper_bound_eq5},
          {"upper_bound_eq6", r.upper_bound_eq6},
          {"fuchs_floor", r.fuchs_floor},
          {"projective_baseline", r.projective_baseline},
          {"iterations_used", r.iterations_used},
          {"restart_trace", r.restart_trace},
          {"minimal_subset_labels", r.minimal_subset_labels},
          {"input_labels", r.input_labels},
          {"best_povm", to_json(r.best_povm)},
          {"best_reconstruction", recon}};
}

json to_json(const EntropicReport& r) {
  return {{"c", r.c},
          {"mu_bound", r.mu_bound},
          {"entropy_sum_at_state", r.entropy_sum_at_state},
          {"witness_state", vector_to_json(r.witness_state.amplitudes())},
          {"q_value", r.q_value},
          {"verdict", std::string(to_string(r.verdict))},
          {"commutes", r.commutation.commutes},
          {"common_eigenvector_count", r.commutation.common_eigenvector_count},
          {"commutator_norm", r.commutation.commutator_norm}};
}

namespace {

void flatten(const json& node, const std::string& prefix, std::string& out) {
  if (node.is_object()) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
    return;
  }
  if (node.is_array() || node.is_null()) return;
  std::string value;
  if (node.is_number_float()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", node.get<double>());
    value = buf;
  } else if (node.is_string()) {
    value = node.get<std::string>();
  } else {
    value = node.dump();
  }
  out += prefix + "," + value + "\n";
}

}  // namespace

std::string to_csv(const json& doc) {
  std::string out = "key,value\n";
  flatten(doc, "", out);
  return out;
}

}  // namespace incompat
