// wha: batch tool over weak Hopf algebra structure-constant documents.
// Exit codes: 0 all checks pass, 1 mathematical failure, 2 I/O or parse failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "wha/cstar.hpp"
#include "wha/document.hpp"
#include "wha/integrals.hpp"

using namespace wha;
using nlohmann::json;

namespace {

struct Config {
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
  std::string format = "human";  // or "json"
  bool verbose = false;
};

constexpr int kExitPass = 0;
constexpr int kExitMathFail = 1;
constexpr int kExitIo = 2;

std::optional<double> env_tolerance() {
  const char* env = std::getenv("WHA_TOL");
  if (!env || !*env) return std::nullopt;
  char* end = nullptr;
  double v = std::strtod(env, &end);
  if (end == env || v < 0) throw IoError("WHA_TOL is not a nonnegative number");
  return v;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw IoError("cannot write '" + out_path + "'");
  out << text;
}

json check_to_json(const CheckLine& l) {
  return json{{"name", l.name}, {"residual", l.residual}, {"pass", l.pass}};
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

template <class K>
int run_verify(const DocumentT<K>& doc, const Config& cfg,
               const Document& parsed) {
  const Wha<K>& A = doc.algebra;
  std::vector<CheckLine> checks;

  AxiomReport rep = check_axioms(A);
  for (const auto& l : rep.lines) checks.push_back(l);

  if (rep.is_wha) {
    for (const auto& l : calculus_invariants(A)) checks.push_back(l);
    for (const auto& l : integral_invariants(A, cfg.seed)) checks.push_back(l);
    for (std::size_t t = 0; t < doc.modules.size(); ++t) {
      auto wr = check_whm(A, doc.modules[t].second);
      std::string prefix = "module '" + doc.modules[t].first + "' ";
      for (const CheckLine* l : {&wr.associative, &wr.unital, &wr.coassociative,
                                 &wr.counital, &wr.compatible, &wr.pi_r_recovers})
        checks.push_back({prefix + l->name, l->residual, l->pass});
    }
    if constexpr (std::is_same_v<K, Cpx>) {
      if (A.star) {
        StarReport sr = check_star(A);
        for (const CheckLine* l :
             {&sr.involutive, &sr.antimultiplicative, &sr.delta_star_map,
              &sr.unit_star, &sr.counit_conjugates, &sr.antipode_relation,
              &sr.subalgebras_star_closed, &sr.dual_is_star_wha})
          checks.push_back(*l);
      }
    }
  } else {
    checks.push_back({"invariant suites skipped (axioms fail)", 1.0, false});
  }

  bool pass = true;
  for (const auto& l : checks) pass &= l.pass;

  if (cfg.format == "json") {
    json report;
    report["command"] = "verify";
    report["pass"] = pass;
    report["seed"] = cfg.seed;
    report["tolerance"] = A.F.spec.tolerance;
    report["checks"] = json::array();
    for (const auto& l : checks) report["checks"].push_back(check_to_json(l));
    std::cout << emit_document(parsed, report.dump());
  } else {
    for (const auto& l : checks)
      if (!l.pass || cfg.verbose)
        std::cout << (l.pass ? "PASS " : "FAIL ") << l.name << " (residual "
                  << l.residual << ")\n";
    std::cout << (pass ? "verify: all checks passed\n"
                       : "verify: checks FAILED\n");
  }
  return pass ? kExitPass : kExitMathFail;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportFlags {
  bool integrals = false, haar_flag = false, grouplike = false;
  bool sectors_flag = false, frobenius = false;
};

template <class K>
int run_report(const DocumentT<K>& doc, const Config& cfg, const ReportFlags& fl,
               const Document& parsed) {
  const Wha<K>& A = doc.algebra;
  AxiomReport axioms = check_axioms(A, false);
  if (!axioms.is_wha) {
    std::cerr << "report: the document does not verify as a weak Hopf algebra\n";
    return kExitMathFail;
  }
  json rep;
  rep["command"] = "report";
  rep["seed"] = cfg.seed;
  std::ostringstream hum;

  auto bases = counital_subalgebras(A);
  IntegralSpace<K> il = integral_space(A, Side::left);
  IntegralSpace<K> ir = integral_space(A, Side::right);
  rep["dim"] = A.dim;
  rep["dim_al"] = bases.al.cols;
  rep["dim_ar"] = bases.ar.cols;
  rep["dim_il"] = il.dim();
  rep["dim_ir"] = ir.dim();
  rep["is_hopf"] = axioms.is_hopf;
  hum << "dim " << A.dim << ", dim A^L = " << bases.al.cols
      << ", dim A^R = " << bases.ar.cols << ", dim I^L = " << il.dim()
      << ", dim I^R = " << ir.dim() << "\n";
  hum << "ordinary Hopf algebra: " << (axioms.is_hopf ? "yes" : "no") << "\n";

  auto ni = normalized_integral(A);
  rep["semisimple"] = ni.semisimple;
  hum << "semisimple (normalized left integral exists): "
      << (ni.semisimple ? "yes" : "no") << "\n";

  if (fl.frobenius || fl.integrals) {
    auto fr = frobenius_test(A, cfg.seed);
    rep["frobenius"] = fr.frobenius;
    rep["frobenius_integral_search"] = to_string(fr.integral_found);
    hum << "Frobenius: " << (fr.frobenius ? "yes" : "no")
        << " (dim I^R = " << fr.dim_ir << ", dim A^L = " << fr.dim_al
        << ", non-degenerate integral search: " << to_string(fr.integral_found)
        << ")\n";
    if (fr.nondegenerate_l) {
      json coords = json::array();
      for (const auto& c : fr.nondegenerate_l->c) coords.push_back(A.F.str(c));
      rep["nondegenerate_left_integral"] = coords;
    }
  }

  if (fl.haar_flag || fl.integrals) {
    auto hd = haar(A);
    rep["haar_exists"] = hd.h.has_value();
    if (hd.h) {
      json coords = json::array();
      for (const auto& c : hd.h->c) coords.push_back(A.F.str(c));
      rep["haar"] = coords;
      hum << "Haar integral:";
      for (std::size_t i = 0; i < A.dim; ++i)
        if (!A.F.is_zero(hd.h->c[i]))
          hum << " " << A.F.str(hd.h->c[i]) << "*" << A.labels[i];
      hum << "\n";
    } else {
      rep["haar_chi_rank"] = hd.chi_rank;
      hum << "Haar integral: none (chi rank " << hd.chi_rank << " of " << A.dim
          << ")\n";
    }
  }

  if (fl.grouplike || fl.sectors_flag) {
    if constexpr (std::is_same_v<K, Cpx>) {
      if (!A.star)
        throw IoError(
            "the --grouplike/--sectors reports need a star structure, but the "
            "document carries none");
      auto cert = cstar_certify(A, cfg.seed);
      rep["cstar"] = cert.is_cstar;
      rep["gram_min_eigenvalue"] = cert.min_gram_eig;
      hum << "C*: " << (cert.is_cstar ? "yes" : "no");
      if (!cert.is_cstar) hum << " (" << cert.diagnostics << ")";
      hum << "\n";
      if (cert.is_cstar) {
        if (fl.grouplike) {
          auto gl = canonical_grouplike(A, cert, cfg.seed);
          auto dump_elem = [&](const char* key, const Vec<Cpx>& v) {
            json coords = json::array();
            for (const auto& c : v) coords.push_back(A.F.str(c));
            rep[key] = coords;
          };
          dump_elem("g", gl.g.c);
          dump_elem("g_l", gl.g_l.c);
          dump_elem("g_r", gl.g_r.c);
          rep["grouplike_max_residual"] = gl.max_residual();
          hum << "canonical grouplike g computed, max residual "
              << gl.max_residual() << "\n";
        }
        if (fl.sectors_flag) {
          auto sec = sectors(A, cert, cfg.seed);
          json blocks = json::array();
          for (std::size_t r = 0; r < sec.block_dims.size(); ++r)
            blocks.push_back(json{{"dim", sec.block_dims[r]},
                                  {"vacuum", (bool)sec.vacuum[r]}});
          rep["sectors"] = blocks;
          hum << "sectors:";
          for (std::size_t r = 0; r < sec.block_dims.size(); ++r)
            hum << " M_" << sec.block_dims[r]
                << (sec.vacuum[r] ? "(vacuum)" : "");
          hum << "\n";
        }
      }
    } else {
      throw IoError(
          "the --grouplike/--sectors reports are only available over the "
          "complex field (and need a star structure)");
    }
  }

  if (cfg.format == "json")
    std::cout << emit_document(parsed, rep.dump());
  else
    std::cout << hum.str();
  return kExitPass;
}

// ---------------------------------------------------------------------------
// derived documents
// ---------------------------------------------------------------------------

int run_dual(const Document& doc, const std::string& out) {
  Document result = std::visit(
      [](const auto& d) -> Document {
        auto next = d;
        next.algebra = dual(d.algebra);
        next.modules.clear();
        if (!check_axioms(next.algebra, false).pass())
          throw Inconsistent("the dual failed to re-verify");
        return next;
      },
      doc);
  write_output(emit_document(result), out);
  return kExitPass;
}

int run_twist(const Document& doc, TwistKind kind, const std::string& out) {
  Document result = std::visit(
      [&](const auto& d) -> Document {
        auto next = d;
        next.algebra = twist(d.algebra, kind);
        next.modules.clear();
        if (!check_axioms(next.algebra, false).pass())
          throw Inconsistent("the twist failed to re-verify");
        return next;
      },
      doc);
  write_output(emit_document(result), out);
  return kExitPass;
}

// ---------------------------------------------------------------------------
// make
// ---------------------------------------------------------------------------

FieldSpec parse_field_arg(const std::string& s) {
  if (s == "rational") return FieldSpec::rational();
  if (s == "complex") return FieldSpec::complex_fp();
  if (s.rfind("gf:", 0) == 0)
    return FieldSpec::gf(std::strtoull(s.c_str() + 3, nullptr, 10));
  throw IoError("unknown field '" + s + "' (use rational, complex, or gf:p)");
}

template <class F>
Document with_field(const FieldSpec& spec, F&& build) {
  spec.validate();
  switch (spec.kind) {
    case FieldKind::rational:
      return make_document(build(FieldOps<Rat>{spec}));
    case FieldKind::complex_fp:
      return make_document(build(FieldOps<Cpx>{spec}));
    case FieldKind::gf:
      return make_document(build(FieldOps<Gf>{spec}));
  }
  throw IoError("unreachable field kind");
}

std::vector<std::vector<std::size_t>> load_group_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError("group table syntax error: " + std::string(e.what()));
  }
  if (j.is_object() && j.contains("table")) j = j["table"];
  if (!j.is_array()) throw IoError("group table must be an array of arrays");
  std::vector<std::vector<std::size_t>> table;
  for (const auto& row : j) table.push_back(row.get<std::vector<std::size_t>>());
  return table;
}

template <class K>
Document build_bbop(const AlgebraInputT<K>& input, const FunctionalInput& fun,
                    bool normalize_index) {
  const auto& ops = input.ops;
  const auto& B = input.algebra;
  if (fun.values.size() != B.dim)
    throw IoError("functional length does not match the algebra dimension");
  Vec<K> E(B.dim, ops.zero());
  for (std::size_t i = 0; i < B.dim; ++i) E[i] = ops.parse(fun.values[i]);
  if (normalize_index) E = rescale_to_index_one(ops, B, E).first;
  std::optional<Vec<K>> gamma;
  if (!fun.gamma.empty()) {
    if (fun.gamma.size() != B.dim)
      throw IoError("gamma length does not match the algebra dimension");
    Vec<K> g(B.dim, ops.zero());
    for (std::size_t i = 0; i < B.dim; ++i) g[i] = ops.parse(fun.gamma[i]);
    gamma = std::move(g);
  }
  auto data = bbop(ops, B, E, std::move(gamma), 0);
  if (!data.all_properties_pass())
    throw Inconsistent("bbop property ledger failed");
  return make_document(std::move(data.algebra));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak Hopf algebra toolbox: verify, report, and construct "
               "structure-constant documents"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand name
  Config cfg;
  double tol_flag = -1;
  app.add_option("--tol", tol_flag,
                 "tolerance override for complex documents (or set WHA_TOL)");
  app.add_option("--seed", cfg.seed, "seed for randomized searches")
      ->default_val(0);
  app.add_option("--format", cfg.format, "output format: human or json")
      ->check(CLI::IsMember({"human", "json"}))
      ->default_val("human");
  app.add_flag("-v,--verbose", cfg.verbose, "print passing checks too");

  std::string in_path, out_path, kind_arg, b_path, e_path, table_path;
  std::string sum_a, sum_b;
  std::string field_arg = "rational";
  std::size_t cyclic_n = 0, symmetric_n = 0, pair_k = 0;
  bool with_star = false, normalize_index = false;
  ReportFlags fl;

  auto* verify = app.add_subcommand("verify", "check axioms and invariants");
  verify->add_option("document", in_path, "input .wha.json")->required();

  auto* report = app.add_subcommand("report", "dimensions and integral data");
  report->add_option("document", in_path, "input .wha.json")->required();
  report->add_flag("--integrals", fl.integrals, "integral spaces and Frobenius");
  report->add_flag("--haar", fl.haar_flag, "Haar integral");
  report->add_flag("--grouplike", fl.grouplike, "canonical grouplike element");
  report->add_flag("--sectors", fl.sectors_flag, "sector decomposition");
  report->add_flag("--frobenius", fl.frobenius, "Frobenius criteria");

  auto* dual_cmd = app.add_subcommand("dual", "emit the dual document");
  dual_cmd->add_option("document", in_path)->required();
  dual_cmd->add_option("-o,--output", out_path, "output path (default stdout)");

  auto* twist_cmd = app.add_subcommand("twist", "emit a twisted document");
  twist_cmd->add_option("document", in_path)->required();
  twist_cmd->add_option("--kind", kind_arg, "op, cop, or opcop")
      ->required()
      ->check(CLI::IsMember({"op", "cop", "opcop"}));
  twist_cmd->add_option("-o,--output", out_path);

  auto* make = app.add_subcommand("make", "construct example documents");
  make->require_subcommand(1);
  auto* mk_group = make->add_subcommand("group", "group algebra");
  mk_group->add_option("--cyclic", cyclic_n, "cyclic group of order N");
  mk_group->add_option("--symmetric", symmetric_n, "symmetric group S_N");
  mk_group->add_option("--table", table_path, "JSON multiplication table");
  mk_group->add_option("--field", field_arg, "rational | complex | gf:p");
  mk_group->add_flag("--star", with_star, "attach g* = g^{-1}");
  mk_group->add_option("-o,--output", out_path);
  auto* mk_groupoid = make->add_subcommand("groupoid", "groupoid algebra");
  std::size_t isotropy_n = 1;
  mk_groupoid->add_option("--pair", pair_k, "connected groupoid on K objects")
      ->required();
  mk_groupoid->add_option("--isotropy", isotropy_n,
                          "cyclic isotropy group Z_N (default trivial)");
  mk_groupoid->add_option("--field", field_arg);
  mk_groupoid->add_flag("--star", with_star);
  mk_groupoid->add_option("-o,--output", out_path);
  auto* mk_bbop = make->add_subcommand(
      "bbop", "B (x) B^op from a separable algebra and an index-1 functional");
  mk_bbop->add_option("--B", b_path, "algebra file (alg.json/1)")->required();
  mk_bbop->add_option("--E", e_path, "functional file (fun.json/1)")->required();
  mk_bbop->add_flag("--normalize-index", normalize_index,
                    "rescale E to index 1 when possible");
  mk_bbop->add_option("-o,--output", out_path);
  auto* mk_m2z2 =
      make->add_subcommand("m2z2", "M_2 over GF(2) with diagonal coproduct");
  mk_m2z2->add_option("-o,--output", out_path);
  auto* mk_sum = make->add_subcommand("sum", "direct sum of two documents");
  mk_sum->add_option("a", sum_a)->required();
  mk_sum->add_option("b", sum_b)->required();
  mk_sum->add_option("-o,--output", out_path);

  for (auto* sub : {verify, report, dual_cmd, twist_cmd, make, mk_group,
                    mk_groupoid, mk_bbop, mk_m2z2, mk_sum})
    sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitIo;
  }

  try {
    cfg.tolerance =
        tol_flag >= 0 ? std::optional<double>(tol_flag) : env_tolerance();

    if (*verify) {
      Document doc = parse_document_file(in_path, cfg.tolerance);
      return std::visit([&](const auto& d) { return run_verify(d, cfg, doc); },
                        doc);
    }
    if (*report) {
      Document doc = parse_document_file(in_path, cfg.tolerance);
      return std::visit(
          [&](const auto& d) { return run_report(d, cfg, fl, doc); }, doc);
    }
    if (*dual_cmd)
      return run_dual(parse_document_file(in_path, cfg.tolerance), out_path);
    if (*twist_cmd) {
      TwistKind kind = kind_arg == "op"    ? TwistKind::op
                       : kind_arg == "cop" ? TwistKind::cop
                                           : TwistKind::opcop;
      return run_twist(parse_document_file(in_path, cfg.tolerance), kind,
                       out_path);
    }
    if (*mk_group) {
      std::vector<std::vector<std::size_t>> table;
      if (cyclic_n > 0)
        table = cyclic_group_table(cyclic_n);
      else if (symmetric_n > 0)
        table = symmetric_group_table(symmetric_n);
      else if (!table_path.empty())
        table = load_group_table(table_path);
      else
        throw IoError("make group needs --cyclic, --symmetric, or --table");
      Document doc = with_field(parse_field_arg(field_arg), [&](auto F) {
        return group_algebra(F, table, {}, with_star);
      });
      write_output(emit_document(doc), out_path);
      return kExitPass;
    }
    if (*mk_groupoid) {
      Groupoid G = isotropy_n > 1
                       ? connected_groupoid(pair_k, cyclic_group_table(isotropy_n))
                       : Groupoid::pair(pair_k);
      Document doc = with_field(parse_field_arg(field_arg), [&](auto F) {
        return groupoid_algebra(F, G, with_star);
      });
      write_output(emit_document(doc), out_path);
      return kExitPass;
    }
    if (*mk_bbop) {
      AlgebraInput b = parse_algebra_file(b_path);
      FunctionalInput e = parse_functional_file(e_path);
      Document doc = std::visit(
          [&](const auto& input) {
            return build_bbop(input, e, normalize_index);
          },
          b);
      write_output(emit_document(doc), out_path);
      return kExitPass;
    }
    if (*mk_m2z2) {
      write_output(emit_document(make_document(m2z2())), out_path);
      return kExitPass;
    }
    if (*mk_sum) {
      Document da = parse_document_file(sum_a, cfg.tolerance);
      Document db = parse_document_file(sum_b, cfg.tolerance);
      Document out = std::visit(
          [&](const auto& x) -> Document {
            using T = std::decay_t<decltype(x)>;
            const T* y = std::get_if<T>(&db);
            if (!y) throw Error("direct_sum: field mismatch");
            return make_document(direct_sum(x.algebra, y->algebra));
          },
          da);
      write_output(emit_document(out), out_path);
      return kExitPass;
    }
    throw IoError("no subcommand selected");
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMathFail;
  }
}
