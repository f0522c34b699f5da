#pragma once

#include <variant>

#include "wha/factories.hpp"
#include "wha/modules.hpp"

namespace wha {

// One parsed .wha.json document: the algebra plus any weak-Hopf-module
// sections riding along with it.
template <class K>
struct DocumentT {
  Wha<K> algebra;
  std::vector<std::pair<std::string, RightWhm<K>>> modules;
};

using Document = std::variant<DocumentT<Rat>, DocumentT<Cpx>, DocumentT<Gf>>;

// Strict parser: unknown sections are rejected, bad entries are reported by
// name and position. `tolerance_override`, when set, replaces the stored
// tolerance of a complex-field document.
Document parse_document(const std::string& text,
                        std::optional<double> tolerance_override = std::nullopt);
Document parse_document_file(const std::string& path,
                             std::optional<double> tolerance_override = std::nullopt);

// Canonical emission; exact coefficients round-trip bit-exactly, complex ones
// through 17 significant digits. `report_json`, when non-empty, must be a
// serialized JSON object and is attached under the "report" key (the parser
// accepts and ignores it).
std::string emit_document(const Document& doc, const std::string& report_json = "");

template <class K>
Document make_document(Wha<K> algebra) {
  return DocumentT<K>{std::move(algebra), {}};
}

// auxiliary input files for the B (x) B^op builder
template <class K>
struct AlgebraInputT {
  FieldOps<K> ops;
  SeparableAlgebra<K> algebra;
};
using AlgebraInput = std::variant<AlgebraInputT<Rat>, AlgebraInputT<Cpx>,
                                  AlgebraInputT<Gf>>;
AlgebraInput parse_algebra_file(const std::string& path);

struct FunctionalInput {
  std::vector<std::string> values;           // scalar literals
  std::vector<std::string> gamma;            // optional implementer of theta
};
FunctionalInput parse_functional_file(const std::string& path);

}  // namespace wha
