#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "recollab/io.hpp"

using namespace recollab;
using Q = Rational;
using io::Json;

namespace {

const std::string fixture_dir = RECOLLAB_FIXTURE_DIR;

io::Document fixture(const std::string& name) { return io::load_document(fixture_dir + "/" + name); }

ErrorCode code_of(const std::function<void()>& f, std::string* what = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::Internal;
}

// Random quiver documents: acyclic arrows plus monomial and binomial relations.
Json random_quiver(std::mt19937& rng) {
  std::uniform_int_distribution<int> nv(1, 4), coin(0, 1), small(0, 2);
  int n = nv(rng);
  Json doc{{"kind", "quiver"}, {"field", "Q"}};
  for (int i = 0; i < n; ++i) doc["vertices"].push_back("v" + std::to_string(i));
  Json arrows = Json::array();
  std::vector<std::pair<int, int>> ends;
  for (int s = 0; s < n; ++s)
    for (int t = s + 1; t < n; ++t)
      for (int k = small(rng); k > 0; --k) {
        std::string label = "a" + std::to_string(ends.size());
        arrows.push_back({{"label", label}, {"source", "v" + std::to_string(s)}, {"target", "v" + std::to_string(t)}});
        ends.emplace_back(s, t);
      }
  doc["arrows"] = arrows;
  Json rels = Json::array();
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = 0; j < ends.size(); ++j)
      if (ends[i].second == ends[j].first && coin(rng))
        rels.push_back("a" + std::to_string(i) + "*a" + std::to_string(j));
  doc["relations"] = rels;
  return doc;
}

}  // namespace

TEST_CASE("fixture documents load") {
  std::vector<std::pair<std::string, Index>> dims{
      {"k.json", 1},           {"dual_numbers.json", 2},   {"a2.json", 3},           {"kronecker.json", 4},
      {"a3_zero.json", 5},     {"two_cycle.json", 5},      {"looped_pair.json", 7},  {"commutative_square.json", 9},
      {"triangular_kkk.json", 3}, {"triangular_dkk.json", 4}, {"dual_numbers_sc.json", 2}, {"tensor_a2_dual.json", 6}};
  for (const auto& [name, dim] : dims) {
    INFO(name);
    auto doc = fixture(name);
    CHECK(doc.field == FieldTag::rationals());
    CHECK(doc.hash.size() == 16);
    CHECK(io::build_algebra<Q>(doc)->dim() == dim);
  }
  auto f5 = fixture("a2_f5.json");
  CHECK(f5.field == FieldTag::prime_field(5));
  CHECK(io::build_algebra<Zp>(f5)->dim() == 3);
  CHECK_THROWS_AS(io::build_algebra<Q>(f5), Error);
}

TEST_CASE("documents agree with the programmatic fixtures") {
  const auto q = fx::q_field();
  CHECK(hochschild_homology(io::build_algebra<Q>(fixture("dual_numbers_sc.json")), 3) ==
        hochschild_homology(fx::dual_numbers<Q>(q), 3));
  auto a = io::build_algebra<Q>(fixture("a2.json"));
  CHECK(a->data().table == fx::a2<Q>(q)->data().table);
  auto tri = io::build_algebra<Q>(fixture("triangular_kkk.json"));
  auto k = ground_field<Q>(q);
  // Labels differ, structure constants do not.
  CHECK(tri->data().table == triangular(k, k, scalar_bimodule(k, k, 1)).algebra->data().table);
}

TEST_CASE("errors carry positions") {
  std::string what;
  CHECK(code_of([] { fixture("bad_syntax.json"); }, &what) == ErrorCode::ParseError);
  CHECK(what.find("bad_syntax.json:4:") != std::string::npos);

  CHECK(code_of([] { fixture("bad_schema.json"); }, &what) == ErrorCode::ParseError);
  CHECK(what.find("bad_schema.json:5:14") != std::string::npos);
  CHECK(what.find("/arrows/0") != std::string::npos);
  CHECK(what.find("target") != std::string::npos);

  auto bad = fixture("bad_relation.json");
  CHECK(code_of([&] { io::build_algebra<Q>(bad); }, &what) == ErrorCode::InvalidRelation);
  CHECK(what.find("bad_relation.json:1:1") != std::string::npos);

  CHECK(code_of([] { io::document_from_text(R"({"kind": "quiver", "vertices": ["v"]})", "x"); }) ==
        ErrorCode::ParseError);
  CHECK(code_of([] { io::document_from_text(R"({"kind": "quiver", "field": "Fp:6", "vertices": ["v"]})", "x"); }) ==
        ErrorCode::UnsupportedField);
  CHECK(code_of([] { io::document_from_text(R"({"kind": "quiver", "field": "R", "vertices": ["v"]})", "x"); }) ==
        ErrorCode::ParseError);
}

TEST_CASE("nested documents") {
  auto text = R"({
  "kind": "construction", "field": "Q", "op": "corner", "idempotent": "e:v9",
  "args": [{"kind": "quiver", "vertices": ["v1", "v2"], "arrows": [{"label": "a", "source": "v1", "target": "v2"}]}]
})";
  std::string what;
  auto doc = io::document_from_text(text, "corner.json");
  CHECK(code_of([&] { io::build_algebra<Q>(doc); }, &what) == ErrorCode::NotIdempotent);
  CHECK(what.find("corner.json:2:") != std::string::npos);

  auto mixed = io::document_from_text(R"({"kind": "construction", "field": "Q", "op": "opposite",
    "args": [{"kind": "quiver", "field": "Fp:3", "vertices": ["v"]}]})",
                                      "mixed.json");
  CHECK(code_of([&] { io::build_algebra<Q>(mixed); }) == ErrorCode::FieldMismatch);

  auto quotient = io::document_from_text(R"({"kind": "construction", "field": "Q", "op": "quotient",
    "idempotent": "e:v1", "args": [{"kind": "quiver", "vertices": ["v1"]}]})",
                                         "q.json");
  CHECK(code_of([&] { io::build_algebra<Q>(quotient); }) == ErrorCode::QuotientIsZero);

  auto arity = io::document_from_text(R"({"kind": "construction", "field": "Q", "op": "tensor",
    "args": [{"kind": "quiver", "vertices": ["v1"]}]})",
                                      "t.json");
  CHECK(code_of([&] { io::build_algebra<Q>(arity); }) == ErrorCode::ParseError);

  auto corner = io::document_from_text(R"({"kind": "construction", "field": "Q", "op": "corner",
    "idempotent": "e:v2", "args": [{"kind": "quiver", "vertices": ["v1", "v2"],
    "arrows": [{"label": "a", "source": "v1", "target": "v2"}]}]})",
                                       "c.json");
  CHECK(io::build_algebra<Q>(corner)->dim() == 1);
}

TEST_CASE("relation grammar") {
  const auto q = FieldTag::rationals();
  auto r = io::parse_relation<Q>("a*c - b*d", q);
  REQUIRE(r.size() == 2);
  CHECK(r[0].coeff == Q(1));
  CHECK(r[1].coeff == Q(-1));
  CHECK(r[1].path == std::vector<std::string>{"b", "d"});
  auto s = io::parse_relation<Q>("-2*x*y + 1/2 z w", q);
  REQUIRE(s.size() == 2);
  CHECK(s[0].coeff == Q(-2));
  CHECK(s[1].coeff == Q(1, 2));
  CHECK(s[1].path == std::vector<std::string>{"z", "w"});
  auto p = io::parse_relation<Zp>("3*x*x", FieldTag::prime_field(5));
  CHECK(p[0].coeff == Zp(3, 5));
  for (const char* bad : {"", "a +", "3", "a*3*b", "a b c d -", "a ** b"})
    CHECK_THROWS_AS(io::parse_relation<Q>(bad, q), Error);
}

TEST_CASE("idempotent grammar") {
  auto a = io::build_algebra<Q>(fixture("a3_zero.json"));
  auto e2 = io::parse_idempotent(*a, Json("e:v2"));
  CHECK(e2 == vertex_idempotent(*a, {"v2"}));
  CHECK(io::parse_idempotent(*a, Json("e:v1+v3")) == vertex_idempotent(*a, {"v1", "v3"}));
  Json coords = Json::array();
  for (Index i = 0; i < a->dim(); ++i) coords.push_back(format_scalar(e2(i)));
  CHECK(io::parse_idempotent(*a, coords) == e2);
  CHECK(io::parse_idempotent(*a, io::idempotent_arg("[0, 1, 0, 0, 0]")) == vertex_idempotent(*a, {"v2"}));
  CHECK_THROWS_AS(io::parse_idempotent(*a, Json("v2")), Error);
  CHECK_THROWS_AS(io::parse_idempotent(*a, Json("e:v1+")), Error);
  CHECK_THROWS_AS(io::parse_idempotent(*a, Json("e:v7")), Error);
  CHECK_THROWS_AS(io::parse_idempotent(*a, io::idempotent_arg("[0, 1, 0]")), Error);
  // Not idempotent: the arrow a.
  CHECK_THROWS_AS(io::parse_idempotent(*a, io::idempotent_arg("[0, 0, 0, 1, 0]")), Error);
  // Blocks of a triangular algebra.
  auto t = io::build_algebra<Q>(fixture("triangular_dkk.json"));
  auto block = io::parse_idempotent(*t, Json("e:2"));
  CHECK(t->is_idempotent(block));
  // e A + A e covers the k block twice and M once.
  CHECK(rank(Mat<Q>(t->left_matrix(block))) + rank(Mat<Q>(t->right_matrix(block))) == 3);
}

TEST_CASE("locate") {
  std::string text = "{\n  \"a\": [1,\n    {\"b\": \"x\"}],\n  \"c\": 2\n}";
  CHECK(io::locate(text, Json::json_pointer("/a/1/b")) == std::pair<int, int>{3, 11});
  CHECK(io::locate(text, Json::json_pointer("/c")) == std::pair<int, int>{4, 8});
  CHECK(io::locate(text, Json::json_pointer("")) == std::pair<int, int>{1, 1});
  // A missing member points at the enclosing value.
  CHECK(io::locate(text, Json::json_pointer("/a/1/z")).first == 3);
}

TEST_CASE("random quiver documents survive a text round trip") {
  std::mt19937 rng(20261016);
  for (int trial = 0; trial < 40; ++trial) {
    auto doc = random_quiver(rng);
    INFO(doc.dump());
    REQUIRE_FALSE(io::schema_violation(doc, "algebra_doc").has_value());
    auto direct = io::build_algebra<Q>(doc, FieldTag::rationals());
    auto loaded = io::build_algebra<Q>(io::document_from_text(io::dump(doc), "random"));
    CHECK(direct->hash() == loaded->hash());
    CHECK(same_algebra(*direct, *loaded));
    // Dropping a required member is always caught.
    auto broken = doc;
    broken.erase("vertices");
    CHECK(io::schema_violation(broken, "algebra_doc").has_value());
  }
}

TEST_CASE("reports are exact and schema-valid") {
  Mat<Q> m(2, 2);
  m << Q(1, 2), Q(-3), Q(0), Q(7, 5);
  CHECK(io::to_json<Q>(m) == Json::parse(R"([["1/2", "-3"], ["0", "7/5"]])"));

  auto a = fx::two_cycle<Q>(fx::q_field());
  auto r = from_idempotent(a, vertex_idempotent(*a, {"2"}), 3);
  auto k = io::to_json(keller_homology(r, 3), true);
  CHECK(k["ok"] == true);
  CHECK_FALSE(io::schema_violation(k["les"], "les").has_value());
  auto c = io::to_json(cohomology_les(r, 3), false);
  for (const auto& s : c["sequences"]) CHECK_FALSE(io::schema_violation(s, "les").has_value());
  auto st = io::to_json(check_stratifying(a, vertex_idempotent(*a, {"1"}), 3));
  CHECK(st["stratifying"] == false);
  CHECK(st["failing_degree"] == 1);
  CHECK(st["tor"]["dims"][1] == 1);

  Json report{{"tool", "recollab"},
              {"command", "verify"},
              {"inputs", {{"file_hash", io::content_hash("x")}, {"algebra_hash", io::hex64(a->hash())},
                          {"field", "Q"}, {"config", Json::object()}}},
              {"status", "ok"},
              {"exit_code", 0},
              {"results", {{"keller", k}}}};
  CHECK_FALSE(io::schema_violation(report, "run_report").has_value());
  CHECK(io::dump(report) == io::dump(Json::parse(io::dump(report))));
  report["exit_code"] = 9;
  CHECK(io::schema_violation(report, "run_report").has_value());
}
