#include <doctest.h>

#include "wha/cstar.hpp"
#include "wha/document.hpp"

using namespace wha;

namespace {
FieldOps<Rat> Q;
FieldOps<Cpx> C{FieldSpec::complex_fp(1e-9)};
FieldOps<Gf> F2{FieldSpec::gf(2)};
}  // namespace

TEST_CASE("round trip over the rationals is byte-stable") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2), {"e", "g"});
  std::string text = emit_document(make_document(A));
  Document doc = parse_document(text);
  auto parsed = std::get<DocumentT<Rat>>(doc);
  CHECK(tensors_equal(A, parsed.algebra));
  CHECK(parsed.algebra.labels == A.labels);
  CHECK(emit_document(doc) == text);
}

TEST_CASE("round trip over GF(2) and the complex field") {
  SUBCASE("gf") {
    Wha<Gf> A = m2z2();
    std::string text = emit_document(make_document(A));
    auto parsed = std::get<DocumentT<Gf>>(parse_document(text));
    CHECK(tensors_equal(A, parsed.algebra));
  }
  SUBCASE("complex values survive 17-digit printing") {
    SeparableAlgebra<Cpx> B = matrix_algebra(C, 2);
    Vec<Cpx> gamma(4, C.zero());
    gamma[0] = 2.5 * 2.0;
    gamma[3] = 2.5 / 2.0;
    Vec<Cpx> E(4, C.zero());
    E[0] = gamma[0];
    E[3] = gamma[3];
    Wha<Cpx> A = bbop(C, B, E, std::optional<Vec<Cpx>>(gamma)).algebra;
    std::string text = emit_document(make_document(A));
    auto parsed = std::get<DocumentT<Cpx>>(parse_document(text));
    CHECK(tensors_equal(A, parsed.algebra));  // bit-exact for %.17g doubles
    CHECK(parsed.algebra.star.has_value());
  }
}

TEST_CASE("hand-written document matches the built-in fixture") {
  std::string text = R"({
    "format": "wha.json/1",
    "field": {"kind": "gf", "p": 2},
    "dim": 4,
    "basis": ["e11", "e12", "e21", "e22"],
    "mult": [
      [0,0,0,"1"], [0,1,1,"1"], [1,2,0,"1"], [1,3,1,"1"],
      [2,0,2,"1"], [2,1,3,"1"], [3,2,2,"1"], [3,3,3,"1 mod 2"]
    ],
    "comult": [[0,0,0,"1"],[1,1,1,"1"],[2,2,2,"1"],[3,3,3,"1"]],
    "unit": ["1","0","0","1"],
    "counit": ["1","1","1","1"],
    "antipode": [
      ["1","0","0","0"],
      ["0","0","1","0"],
      ["0","1","0","0"],
      ["0","0","0","1"]
    ]
  })";
  auto parsed = std::get<DocumentT<Gf>>(parse_document(text));
  CHECK(tensors_equal(parsed.algebra, m2z2()));
  CHECK(check_axioms(parsed.algebra).pass());
}

TEST_CASE("module sections round trip") {
  Wha<Rat> A = groupoid_algebra(Q, Groupoid::pair(2));
  DocumentT<Rat> doc{A, {}};
  doc.modules.push_back({"dual-regular", dual_regular_whm(A)});
  std::string text = emit_document(Document{doc});
  auto parsed = std::get<DocumentT<Rat>>(parse_document(text));
  REQUIRE(parsed.modules.size() == 1);
  CHECK(parsed.modules[0].first == "dual-regular");
  CHECK(check_whm(parsed.algebra, parsed.modules[0].second).pass());
}

TEST_CASE("report sections are accepted on input") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2));
  std::string with_report =
      emit_document(make_document(A), R"({"verdict": "pass"})");
  CHECK(with_report.find("\"report\"") != std::string::npos);
  auto parsed = std::get<DocumentT<Rat>>(parse_document(with_report));
  CHECK(tensors_equal(A, parsed.algebra));
}

TEST_CASE("parse errors are precise") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2));
  std::string good = emit_document(make_document(A));

  SUBCASE("syntax errors carry position information") {
    CHECK_THROWS_WITH_AS(parse_document("{ oops"),
                         doctest::Contains("syntax error"), Error);
  }
  SUBCASE("out-of-range tensor entries are named") {
    std::string bad = R"({
      "format": "wha.json/1",
      "field": {"kind": "rational"},
      "dim": 2,
      "mult": [[0,0,0,"1"], [9,1,1,"1"]],
      "comult": [[0,0,0,"1"],[1,1,1,"1"]],
      "unit": ["1","0"],
      "counit": ["1","1"],
      "antipode": [["1","0"],["0","1"]]
    })";
    CHECK_THROWS_WITH_AS(parse_document(bad),
                         doctest::Contains("mult entry 2"), Error);
  }
  SUBCASE("unknown sections are rejected") {
    std::string bad = good;
    bad.insert(bad.rfind('}'), R"(, "extra": 1)");
    CHECK_THROWS_WITH_AS(parse_document(bad), doctest::Contains("unknown section"),
                         Error);
  }
  SUBCASE("missing version field") {
    std::string bad = good;
    auto at = bad.find("\"format\": \"wha.json/1\"");
    bad.replace(at, std::string("\"format\": \"wha.json/1\"").size(),
                "\"format\": \"nope/9\"");
    CHECK_THROWS_WITH_AS(parse_document(bad), doctest::Contains("format"), Error);
  }
  SUBCASE("unknown field kind") {
    std::string bad = good;
    auto at = bad.find("\"rational\"");
    bad.replace(at, 10, "\"quantum\"");
    CHECK_THROWS_WITH_AS(parse_document(bad), doctest::Contains("field kind"),
                         Error);
  }
  SUBCASE("wrong unit length") {
    std::string bad = good;
    auto at = bad.find("\"unit\": [");
    bad.insert(bad.find('[', at) + 1, "\"0\",");
    CHECK_THROWS_AS(parse_document(bad), Error);
  }
  SUBCASE("GF literal with mismatched modulus") {
    std::string text = emit_document(make_document(m2z2()));
    auto at = text.find("\"1 mod 2\"");
    REQUIRE(at != std::string::npos);
    text.replace(at, 9, "\"1 mod 3\"");
    CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("modulus"),
                         Error);
  }
}

TEST_CASE("tolerance override applies to complex documents") {
  Wha<Cpx> A = group_algebra(C, cyclic_group_table(2), {}, true);
  std::string text = emit_document(make_document(A));
  auto loose = std::get<DocumentT<Cpx>>(parse_document(text, 0.5));
  CHECK(loose.algebra.F.spec.tolerance == 0.5);
  auto normal = std::get<DocumentT<Cpx>>(parse_document(text));
  CHECK(normal.algebra.F.spec.tolerance == 1e-9);
}

TEST_CASE("dual twice emits the identical canonical document") {
  Wha<Rat> A = group_algebra(Q, cyclic_group_table(2), {"e", "g"});
  std::string original = emit_document(make_document(A));
  auto round =
      std::get<DocumentT<Rat>>(parse_document(original)).algebra;
  std::string twice = emit_document(make_document(dual(dual(round))));
  CHECK(twice == original);
}
