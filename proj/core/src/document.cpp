#include "wha/document.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace wha {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) { throw IoError(what); }

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail("document syntax error: " + std::string(e.what()));
  }
}

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::string& where) {
  if (!j.is_object()) fail(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      fail("unknown section '" + it.key() + "' in " + where +
           " (unknown sections are rejected, not ignored)");
}

FieldSpec parse_field(const json& j, std::optional<double> tol_override) {
  expect_keys(j, {"kind", "tolerance", "p"}, "field");
  if (!j.contains("kind") || !j["kind"].is_string()) fail("field.kind missing");
  std::string kind = j["kind"];
  FieldSpec spec;
  if (kind == "rational") {
    spec = FieldSpec::rational();
  } else if (kind == "complex") {
    double tol = j.value("tolerance", 1e-9);
    spec = FieldSpec::complex_fp(tol_override.value_or(tol));
  } else if (kind == "gf") {
    if (!j.contains("p")) fail("field.p missing for GF(p)");
    spec = FieldSpec::gf(j["p"].get<std::uint64_t>());
  } else {
    fail("unknown field kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

json field_to_json(const FieldSpec& spec) {
  json j;
  switch (spec.kind) {
    case FieldKind::rational:
      j["kind"] = "rational";
      break;
    case FieldKind::complex_fp:
      j["kind"] = "complex";
      j["tolerance"] = spec.tolerance;
      break;
    case FieldKind::gf:
      j["kind"] = "gf";
      j["p"] = spec.p;
      break;
  }
  return j;
}

template <class K>
Tensor3<K> parse_tensor(const FieldOps<K>& F, const json& j, std::size_t d0,
                        std::size_t d1, std::size_t d2, const std::string& name) {
  if (!j.is_array()) fail(name + " must be an array of entries");
  Tensor3<K> t(d0, d1, d2);
  std::size_t at = 0;
  for (const auto& e : j) {
    ++at;
    if (!e.is_array() || e.size() != 4 || !e[0].is_number_unsigned() ||
        !e[1].is_number_unsigned() || !e[2].is_number_unsigned() ||
        !e[3].is_string())
      fail(name + " entry " + std::to_string(at) +
           ": expected [i, j, k, \"coeff\"]");
    std::size_t i = e[0], jj = e[1], k = e[2];
    if (i >= d0 || jj >= d1 || k >= d2)
      fail(name + " entry " + std::to_string(at) + ": index [" +
           std::to_string(i) + "," + std::to_string(jj) + "," +
           std::to_string(k) + "] out of range");
    try {
      t.add(i, jj, k, F.parse(e[3].get<std::string>()));
    } catch (const Error& err) {
      fail(name + " entry " + std::to_string(at) + ": " + err.what());
    }
  }
  t.compress(F);
  return t;
}

template <class K>
Vec<K> parse_vector(const FieldOps<K>& F, const json& j, std::size_t n,
                    const std::string& name) {
  if (!j.is_array() || j.size() != n)
    fail(name + " must be an array of " + std::to_string(n) + " scalars");
  Vec<K> v(n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_string())
      fail(name + "[" + std::to_string(i) + "] must be a string");
    try {
      v[i] = F.parse(j[i].get<std::string>());
    } catch (const Error& err) {
      fail(name + "[" + std::to_string(i) + "]: " + err.what());
    }
  }
  return v;
}

template <class K>
Mat<K> parse_matrix(const FieldOps<K>& F, const json& j, std::size_t n,
                    const std::string& name) {
  if (!j.is_array() || j.size() != n)
    fail(name + " must have " + std::to_string(n) + " rows");
  Mat<K> m(n, n, F.zero());
  for (std::size_t i = 0; i < n; ++i) {
    Vec<K> row = parse_vector(F, j[i], n, name + " row " + std::to_string(i));
    for (std::size_t k = 0; k < n; ++k) m(i, k) = row[k];
  }
  return m;
}

template <class K>
json tensor_to_json(const FieldOps<K>& F, const Tensor3<K>& t) {
  json j = json::array();
  for (const auto& e : t.entries)
    j.push_back(json::array({e.i, e.j, e.k, F.str(e.c)}));
  return j;
}

template <class K>
json vector_to_json(const FieldOps<K>& F, const Vec<K>& v) {
  json j = json::array();
  for (const auto& c : v) j.push_back(F.str(c));
  return j;
}

template <class K>
json matrix_to_json(const FieldOps<K>& F, const Mat<K>& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols; ++k) row.push_back(F.str(m(i, k)));
    j.push_back(row);
  }
  return j;
}

template <class K>
DocumentT<K> parse_body(const FieldOps<K>& F, const json& j) {
  if (!j.contains("dim") || !j["dim"].is_number_unsigned())
    fail("dim missing or not a nonnegative integer");
  std::size_t n = j["dim"];
  if (n == 0) fail("dim must be positive");

  std::vector<std::string> labels;
  if (j.contains("basis")) {
    if (!j["basis"].is_array() || j["basis"].size() != n)
      fail("basis must list exactly dim labels");
    for (const auto& s : j["basis"]) labels.push_back(s.get<std::string>());
  }
  for (const char* req : {"mult", "comult", "unit", "counit", "antipode"})
    if (!j.contains(req)) fail(std::string(req) + " section missing");

  Tensor3<K> mult = parse_tensor(F, j["mult"], n, n, n, "mult");
  Tensor3<K> comult = parse_tensor(F, j["comult"], n, n, n, "comult");
  Vec<K> unit = parse_vector(F, j["unit"], n, "unit");
  Vec<K> counit = parse_vector(F, j["counit"], n, "counit");
  Mat<K> antipode = parse_matrix(F, j["antipode"], n, "antipode");
  std::optional<Mat<K>> star;
  if (j.contains("star")) star = parse_matrix(F, j["star"], n, "star");

  DocumentT<K> doc;
  doc.algebra = Wha<K>::make(F, n, std::move(labels), std::move(mult),
                             std::move(unit), std::move(comult),
                             std::move(counit), std::move(antipode),
                             std::move(star));

  if (j.contains("modules")) {
    if (!j["modules"].is_array()) fail("modules must be an array");
    std::size_t at = 0;
    for (const auto& mj : j["modules"]) {
      ++at;
      std::string where = "modules[" + std::to_string(at - 1) + "]";
      expect_keys(mj, {"name", "dim", "action", "coaction"}, where);
      if (!mj.contains("dim")) fail(where + ".dim missing");
      std::size_t mdim = mj["dim"];
      RightWhm<K> M;
      M.mdim = mdim;
      M.action = parse_tensor(F, mj["action"], mdim, n, mdim, where + ".action");
      M.coaction =
          parse_tensor(F, mj["coaction"], mdim, mdim, n, where + ".coaction");
      doc.modules.push_back({mj.value("name", "module" + std::to_string(at)),
                             std::move(M)});
    }
  }
  return doc;
}

template <class K>
json document_to_json(const DocumentT<K>& doc) {
  const auto& A = doc.algebra;
  const auto& F = A.F;
  json j;
  j["format"] = "wha.json/1";
  j["field"] = field_to_json(F.spec);
  j["dim"] = A.dim;
  j["basis"] = A.labels;
  j["mult"] = tensor_to_json(F, A.mult);
  j["comult"] = tensor_to_json(F, A.comult);
  j["unit"] = vector_to_json(F, A.unit);
  j["counit"] = vector_to_json(F, A.counit);
  j["antipode"] = matrix_to_json(F, A.antipode);
  if (A.star) j["star"] = matrix_to_json(F, *A.star);
  if (!doc.modules.empty()) {
    json mods = json::array();
    for (const auto& [name, M] : doc.modules) {
      json mj;
      mj["name"] = name;
      mj["dim"] = M.mdim;
      mj["action"] = tensor_to_json(F, M.action);
      mj["coaction"] = tensor_to_json(F, M.coaction);
      mods.push_back(mj);
    }
    j["modules"] = mods;
  }
  return j;
}

template <class K>
AlgebraInputT<K> parse_algebra_body(const FieldOps<K>& F, const json& j) {
  if (!j.contains("dim")) fail("algebra file: dim missing");
  std::size_t n = j["dim"];
  AlgebraInputT<K> out;
  out.ops = F;
  out.algebra.dim = n;
  out.algebra.mult = parse_tensor(F, j["mult"], n, n, n, "mult");
  out.algebra.unit = parse_vector(F, j["unit"], n, "unit");
  if (j.contains("basis"))
    for (const auto& s : j["basis"])
      out.algebra.labels.push_back(s.get<std::string>());
  else
    for (std::size_t i = 0; i < n; ++i)
      out.algebra.labels.push_back("b" + std::to_string(i));
  if (j.contains("star")) out.algebra.star = parse_matrix(F, j["star"], n, "star");
  return out;
}

}  // namespace

Document parse_document(const std::string& text,
                        std::optional<double> tol_override) {
  json j = parse_json(text);
  expect_keys(j,
              {"format", "field", "dim", "basis", "mult", "comult", "unit",
               "counit", "antipode", "star", "modules", "report"},
              "document");
  if (!j.contains("format") || j["format"] != "wha.json/1")
    fail("format must be \"wha.json/1\" (the version field is mandatory)");
  if (!j.contains("field")) fail("field section missing");
  FieldSpec spec = parse_field(j["field"], tol_override);
  switch (spec.kind) {
    case FieldKind::rational:
      return parse_body(FieldOps<Rat>{spec}, j);
    case FieldKind::complex_fp:
      return parse_body(FieldOps<Cpx>{spec}, j);
    case FieldKind::gf:
      return parse_body(FieldOps<Gf>{spec}, j);
  }
  fail("unreachable field kind");
}

Document parse_document_file(const std::string& path,
                             std::optional<double> tol_override) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str(), tol_override);
}

std::string emit_document(const Document& doc, const std::string& report_json) {
  json j = std::visit([](const auto& d) { return document_to_json(d); }, doc);
  if (!report_json.empty()) {
    json rep = parse_json(report_json);
    if (!rep.is_object()) fail("report attachment must be a JSON object");
    j["report"] = rep;
  }
  return j.dump(2) + "\n";
}

AlgebraInput parse_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j = parse_json(ss.str());
  expect_keys(j, {"format", "field", "dim", "basis", "mult", "unit", "star"},
              "algebra file");
  if (!j.contains("format") || j["format"] != "alg.json/1")
    fail("algebra file format must be \"alg.json/1\"");
  FieldSpec spec = parse_field(j["field"], std::nullopt);
  switch (spec.kind) {
    case FieldKind::rational:
      return parse_algebra_body(FieldOps<Rat>{spec}, j);
    case FieldKind::complex_fp:
      return parse_algebra_body(FieldOps<Cpx>{spec}, j);
    case FieldKind::gf:
      return parse_algebra_body(FieldOps<Gf>{spec}, j);
  }
  fail("unreachable field kind");
}

FunctionalInput parse_functional_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  json j = parse_json(ss.str());
  expect_keys(j, {"format", "values", "gamma"}, "functional file");
  if (!j.contains("format") || j["format"] != "fun.json/1")
    fail("functional file format must be \"fun.json/1\"");
  FunctionalInput out;
  if (!j.contains("values")) fail("functional file: values missing");
  for (const auto& s : j["values"]) out.values.push_back(s.get<std::string>());
  if (j.contains("gamma"))
    for (const auto& s : j["gamma"]) out.gamma.push_back(s.get<std::string>());
  return out;
}

}  // namespace wha
