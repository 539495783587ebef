#include "recollab/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <functional>
#include <regex>
#include <sstream>

#include "recollab/quiver.hpp"
#include "recollab_schema.hpp"

namespace recollab::io {

namespace {

Error parse_error(const std::string& what) { return Error(ErrorCode::ParseError, what); }

std::pair<int, int> line_col(std::string_view text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Minimal scanner over text already known to be valid JSON.
struct Scanner {
  std::string_view s;
  std::size_t i = 0;

  void ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  std::string string() {
    std::string out;
    ++i;  // opening quote
    while (i < s.size() && s[i] != '"') {
      if (s[i] == '\\' && i + 1 < s.size()) {
        out += s[i + 1];
        i += 2;
      } else {
        out += s[i++];
      }
    }
    ++i;
    return out;
  }
  void value() {
    ws();
    if (i >= s.size()) return;
    char c = s[i];
    if (c == '"') {
      string();
    } else if (c == '{' || c == '[') {
      char close = c == '{' ? '}' : ']';
      ++i;
      ws();
      if (i < s.size() && s[i] == close) {
        ++i;
        return;
      }
      while (i < s.size()) {
        ws();
        if (c == '{') {
          string();
          ws();
          ++i;  // colon
        }
        value();
        ws();
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        ++i;  // close
        return;
      }
    } else {
      while (i < s.size() && s[i] != ',' && s[i] != '}' && s[i] != ']' &&
             !std::isspace(static_cast<unsigned char>(s[i])))
        ++i;
    }
  }
  // Moves to the member or element named tok; false if absent.
  bool enter(const std::string& tok) {
    ws();
    if (i >= s.size()) return false;
    char c = s[i];
    if (c != '{' && c != '[') return false;
    ++i;
    long index = 0, want = -1;
    if (c == '[') {
      try {
        want = std::stol(tok);
      } catch (...) {
        return false;
      }
    }
    while (true) {
      ws();
      if (i >= s.size() || s[i] == '}' || s[i] == ']') return false;
      if (c == '{') {
        auto key = string();
        ws();
        ++i;
        ws();
        if (key == tok) return true;
      } else if (index == want) {
        return true;
      }
      value();
      ws();
      if (i < s.size() && s[i] == ',') ++i;
      ++index;
    }
  }
};

// ---------------------------------------------------------------- schema

struct Validator {
  const Json& root;

  using Failure = std::optional<std::pair<Json::json_pointer, std::string>>;

  const Json& resolve(const std::string& ref) const {
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0) throw Error(ErrorCode::Internal, "schema: unsupported $ref " + ref);
    return root.at("definitions").at(ref.substr(prefix.size()));
  }

  static bool type_ok(const Json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
  }

  Failure check(const Json& v, const Json& s, const Json::json_pointer& at) const {
    auto fail = [&](std::string why) -> Failure { return std::make_pair(at, std::move(why)); };
    if (s.contains("$ref")) return check(v, resolve(s["$ref"].get<std::string>()), at);
    if (s.contains("oneOf")) {
      int matches = 0;
      Failure deepest;
      for (const auto& branch : s["oneOf"]) {
        auto f = check(v, branch, at);
        if (!f) {
          ++matches;
        } else if (!deepest || f->first.to_string().size() > deepest->first.to_string().size()) {
          deepest = f;
        }
      }
      if (matches == 1) return std::nullopt;
      if (matches > 1) return fail("matches more than one alternative");
      return deepest;
    }
    if (s.contains("const") && v != s["const"]) return fail("expected " + s["const"].dump());
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || v == e;
      if (!found) return fail("expected one of " + s["enum"].dump());
    }
    if (s.contains("type") && !type_ok(v, s["type"].get<std::string>()))
      return fail("expected " + s["type"].get<std::string>());
    if (s.contains("pattern") && v.is_string() &&
        !std::regex_search(v.get<std::string>(), std::regex(s["pattern"].get<std::string>())))
      return fail("\"" + v.get<std::string>() + "\" does not match " + s["pattern"].get<std::string>());
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>())
      return fail("below minimum " + s["minimum"].dump());
    if (s.contains("maximum") && v.is_number() && v.get<double>() > s["maximum"].get<double>())
      return fail("above maximum " + s["maximum"].dump());
    if (v.is_object()) {
      if (s.contains("required"))
        for (const auto& r : s["required"])
          if (!v.contains(r.get<std::string>())) return fail("missing \"" + r.get<std::string>() + "\"");
      const Json* props = s.contains("properties") ? &s["properties"] : nullptr;
      for (const auto& [key, value] : v.items()) {
        if (props && props->contains(key)) {
          if (auto f = check(value, (*props)[key], at / key)) return f;
        } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
          return std::make_pair(at / key, std::string("unexpected member \"") + key + "\"");
        }
      }
    }
    if (v.is_array() && s.contains("items"))
      for (std::size_t i = 0; i < v.size(); ++i)
        if (auto f = check(v[i], s["items"], at / i)) return f;
    return std::nullopt;
  }
};

// ---------------------------------------------------------------- building

using Where = std::function<std::string(const Json::json_pointer&)>;

[[noreturn]] void relocate(const Error& e, const std::string& where) {
  std::string what = e.what();
  std::string prefix = std::string(to_string(e.code())) + ": ";
  if (what.rfind(prefix, 0) == 0) what = what.substr(prefix.size());
  throw Error(e.code(), where + ": " + what);
}

template <class S>
S scalar_of(const Json& j, const FieldTag& f) {
  if (j.is_number_integer()) return make_scalar<S>(f, j.get<long long>());
  return ScalarTraits<S>::parse(f, j.get<std::string>());
}

template <class S>
Vec<S> vector_of(const Json& j, const FieldTag& f, Index n, const char* what) {
  if (static_cast<Index>(j.size()) != n)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " + std::to_string(n));
  Vec<S> v(n);
  for (Index i = 0; i < n; ++i) v(i) = scalar_of<S>(j[static_cast<std::size_t>(i)], f);
  return v;
}

template <class S>
Mat<S> matrix_of(const Json& j, const FieldTag& f, Index rows, Index cols, const char* what) {
  if (static_cast<Index>(j.size()) != rows)
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Mat<S> m(rows, cols);
  for (Index r = 0; r < rows; ++r) m.row(r) = vector_of<S>(j[static_cast<std::size_t>(r)], f, cols, what).transpose();
  return m;
}

template <class S>
AlgebraPtr<S> from_structure_constants(const Json& j, const FieldTag& f) {
  AlgebraData<S> d;
  d.field = f;
  d.dim = j["dim"].get<Index>();
  const auto n = static_cast<std::size_t>(d.dim);
  if (j.contains("labels")) {
    d.labels = j["labels"].get<std::vector<std::string>>();
    if (d.labels.size() != n) throw Error(ErrorCode::DimensionMismatch, "labels do not match dim");
  } else {
    for (std::size_t i = 0; i < n; ++i) d.labels.push_back("b" + std::to_string(i));
  }
  const auto& table = j["table"];
  if (table.size() != n) throw Error(ErrorCode::DimensionMismatch, "table needs one matrix per basis element");
  for (std::size_t i = 0; i < n; ++i) {
    auto m = matrix_of<S>(table[i], f, d.dim, d.dim, "table entry");
    for (Index jj = 0; jj < d.dim; ++jj) {
      SparseVec<S> row;
      for (Index k = 0; k < d.dim; ++k)
        if (!is_zero(m(jj, k))) row.emplace_back(k, m(jj, k));
      d.table.push_back(std::move(row));
    }
  }
  d.unit = vector_of<S>(j["unit"], f, d.dim, "unit");
  if (j.contains("primitives"))
    for (const auto& p : j["primitives"]) d.primitives.push_back(vector_of<S>(p, f, d.dim, "primitive"));
  if (j.contains("primitive_labels")) d.primitive_labels = j["primitive_labels"].get<std::vector<std::string>>();
  return Algebra<S>::create(std::move(d));
}

template <class S>
AlgebraPtr<S> from_quiver_doc(const Json& j, const FieldTag& f) {
  QuiverPresentation<S> q;
  q.vertices = j["vertices"].get<std::vector<std::string>>();
  if (j.contains("arrows"))
    for (const auto& a : j["arrows"])
      q.arrows.push_back({a["label"].get<std::string>(), a["source"].get<std::string>(), a["target"].get<std::string>()});
  if (j.contains("relations"))
    for (const auto& r : j["relations"]) {
      if (r.is_string()) {
        q.relations.push_back(parse_relation<S>(r.get<std::string>(), f));
        continue;
      }
      Relation<S> rel;
      for (const auto& t : r) rel.push_back({scalar_of<S>(t["coeff"], f), t["path"].get<std::vector<std::string>>()});
      q.relations.push_back(std::move(rel));
    }
  QuiverOptions opts;
  if (j.contains("degree_bound")) opts.degree_bound = j["degree_bound"].get<int>();
  return from_quiver(q, f, opts);
}

// x -> lambda with x - lambda 1 in the radical of a local algebra.
template <class S>
std::vector<Mat<S>> augmentation(const AlgebraPtr<S>& a) {
  if (a->primitives().size() != 1) throw Error(ErrorCode::InvalidAlgebra, "augmentation bimodule needs local algebras");
  Mat<S> frame = hstack<S>(Mat<S>(a->unit()), a->radical().basis());
  std::vector<Mat<S>> out;
  for (Index i = 0; i < a->dim(); ++i) {
    auto c = solve(frame, a->basis_vector(i));
    if (!c) throw Error(ErrorCode::Internal, "augmentation: basis element outside k1 + rad");
    out.push_back(Mat<S>::Constant(1, 1, (*c)(0)));
  }
  return out;
}

template <class S>
Bimodule<S> bimodule_of(const Json& j, const AlgebraPtr<S>& left, const AlgebraPtr<S>& right, const FieldTag& f) {
  auto kind = j["kind"].get<std::string>();
  if (kind == "scalar") return scalar_bimodule(left, right, j["dim"].get<Index>());
  if (kind == "augmentation") return Bimodule<S>(left, right, 1, augmentation(left), augmentation(right));
  Index d = j["dim"].get<Index>();
  auto mats = [&](const Json& list, const AlgebraPtr<S>& alg, const char* side) {
    if (static_cast<Index>(list.size()) != alg->dim())
      throw Error(ErrorCode::DimensionMismatch, std::string(side) + " action needs one matrix per basis element");
    std::vector<Mat<S>> out;
    for (const auto& m : list) out.push_back(matrix_of<S>(m, f, d, d, side));
    return out;
  };
  return Bimodule<S>(left, right, d, mats(j["left"], left, "left"), mats(j["right"], right, "right"));
}

template <class S>
AlgebraPtr<S> build_rec(const Json& j, const FieldTag& f, const Json::json_pointer& at, const Where& where) {
  if (j.contains("field") && FieldTag::parse(j["field"].get<std::string>()) != f)
    throw Error(ErrorCode::FieldMismatch, where(at / "field") + ": nested document uses a different field");
  auto kind = j["kind"].get<std::string>();
  try {
    if (kind == "quiver") return from_quiver_doc<S>(j, f);
    if (kind == "structure_constants") return from_structure_constants<S>(j, f);
  } catch (const Error& e) {
    relocate(e, where(at));
  }
  std::vector<AlgebraPtr<S>> args;
  for (std::size_t i = 0; i < j["args"].size(); ++i) args.push_back(build_rec<S>(j["args"][i], f, at / "args" / i, where));
  auto op = j["op"].get<std::string>();
  const std::size_t want = op == "tensor" || op == "triangular" ? 2 : 1;
  if (args.size() != want)
    throw Error(ErrorCode::ParseError, where(at / "args") + ": \"" + op + "\" takes " + std::to_string(want) +
                                           " argument" + (want == 1 ? "" : "s"));
  auto idem = [&]() {
    if (!j.contains("idempotent"))
      throw Error(ErrorCode::ParseError, where(at) + ": \"" + op + "\" needs an idempotent");
    try {
      return parse_idempotent(*args[0], j["idempotent"]);
    } catch (const Error& e) {
      relocate(e, where(at / "idempotent"));
    }
  };
  try {
    if (op == "tensor") return tensor(args[0], args[1]);
    if (op == "opposite") return opposite(args[0]);
    if (op == "corner") return corner(args[0], idem()).algebra;
    if (op == "quotient") {
      auto q = ideal_and_quotient(args[0], idem());
      if (!q.quotient) throw Error(ErrorCode::QuotientIsZero, "AeA is the whole algebra");
      return *q.quotient;
    }
    if (!j.contains("bimodule")) throw Error(ErrorCode::ParseError, "\"triangular\" needs a bimodule");
    return triangular(args[0], args[1], bimodule_of<S>(j["bimodule"], args[1], args[0], f)).algebra;
  } catch (const Error& e) {
    if (std::string(e.what()).find(where(at)) != std::string::npos) throw;
    relocate(e, where(at));
  }
}

}  // namespace

// ---------------------------------------------------------------- public

Json parse_json(std::string_view text, const std::string& source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    std::string msg = e.what();
    auto pos = msg.find(": ", msg.find("parse error"));
    if (pos != std::string::npos) msg = msg.substr(pos + 2);
    throw parse_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }
}

std::pair<int, int> locate(std::string_view text, const Json::json_pointer& ptr) {
  Scanner sc{text};
  std::vector<std::string> tokens;
  for (auto p = ptr; !p.empty(); p = p.parent_pointer()) tokens.insert(tokens.begin(), p.back());
  for (const auto& t : tokens)
    if (!sc.enter(t)) break;
  sc.ws();
  return line_col(text, sc.i);
}

const Json& schema() {
  static const Json s = Json::parse(kSchemaText);
  return s;
}

std::optional<std::pair<Json::json_pointer, std::string>> schema_violation(const Json& doc,
                                                                         const std::string& definition) {
  const auto& root = schema();
  if (!root.at("definitions").contains(definition))
    throw Error(ErrorCode::Internal, "schema has no definition " + definition);
  return Validator{root}.check(doc, root["definitions"][definition], Json::json_pointer{});
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return hex64(h);
}

Document document_from_text(std::string text, const std::string& source) {
  Document d;
  d.source = source;
  d.json = parse_json(text, source);
  if (auto v = schema_violation(d.json, "algebra_doc")) {
    auto [line, col] = locate(text, v->first);
    auto ptr = v->first.to_string();
    throw parse_error(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " +
                      (ptr.empty() ? "" : ptr + ": ") + v->second);
  }
  if (!d.json.contains("field")) throw parse_error(source + ":1:1: the top-level document needs a \"field\"");
  d.field = FieldTag::parse(d.json["field"].get<std::string>());
  d.hash = content_hash(text);
  d.text = std::move(text);
  return d;
}

Document load_document(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw parse_error(file.string() + ": cannot open");
  std::stringstream ss;
  ss << in.rdbuf();
  return document_from_text(ss.str(), file.string());
}

template <class S>
AlgebraPtr<S> build_algebra(const Document& doc) {
  if (!ScalarTraits<S>::accepts(doc.field)) throw Error(ErrorCode::FieldMismatch, "scalar type does not match field");
  Where where = [&](const Json::json_pointer& p) {
    auto [line, col] = locate(doc.text, p);
    return doc.source + ":" + std::to_string(line) + ":" + std::to_string(col);
  };
  return build_rec<S>(doc.json, doc.field, Json::json_pointer{}, where);
}

template <class S>
AlgebraPtr<S> build_algebra(const Json& doc, const FieldTag& field) {
  if (auto v = schema_violation(doc, "algebra_doc"))
    throw parse_error(v->first.to_string() + ": " + v->second);
  Where where = [](const Json::json_pointer& p) { return p.empty() ? std::string("document") : p.to_string(); };
  return build_rec<S>(doc, field, Json::json_pointer{}, where);
}

template <class S>
Relation<S> parse_relation(std::string_view text, const FieldTag& field) {
  Relation<S> rel;
  std::size_t i = 0;
  auto ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::ParseError, "relation \"" + std::string(text) + "\": " + why);
  };
  bool first = true;
  while (true) {
    ws();
    if (i >= text.size()) break;
    bool negative = false;
    if (text[i] == '+' || text[i] == '-') {
      negative = text[i] == '-';
      ++i;
      ws();
    } else if (!first) {
      throw bad("expected + or - at offset " + std::to_string(i));
    }
    first = false;
    // factors separated by '*' or blanks, up to the next top-level sign
    std::vector<std::string> factors;
    while (true) {
      ws();
      std::size_t start = i;
      while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_' || text[i] == '/'))
        ++i;
      if (i == start) throw bad("expected a factor at offset " + std::to_string(i));
      factors.emplace_back(text.substr(start, i - start));
      ws();
      if (i < text.size() && text[i] == '*') {
        ++i;
        continue;
      }
      if (i < text.size() && text[i] != '+' && text[i] != '-') continue;
      break;
    }
    RelationTerm<S> term{make_scalar<S>(field, negative ? -1 : 1), {}};
    auto numeric = [](const std::string& s) {
      return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)) || c == '/'; });
    };
    std::size_t k = 0;
    if (numeric(factors[0])) {
      term.coeff = term.coeff * ScalarTraits<S>::parse(field, factors[0]);
      k = 1;
    }
    for (; k < factors.size(); ++k) {
      if (numeric(factors[k])) throw bad("coefficient in the middle of a path");
      term.path.push_back(factors[k]);
    }
    if (term.path.empty()) throw bad("a term without arrows");
    rel.push_back(std::move(term));
  }
  if (rel.empty()) throw bad("empty");
  return rel;
}

template <class S>
Vec<S> parse_idempotent(const Algebra<S>& a, const Json& spec) {
  Vec<S> e;
  if (spec.is_array()) {
    e = vector_of<S>(spec, a.field(), a.dim(), "idempotent");
  } else if (spec.is_string()) {
    auto text = spec.get<std::string>();
    if (text.rfind("e:", 0) != 0) throw parse_error("idempotent \"" + text + "\" must start with \"e:\"");
    std::vector<std::string> names;
    if (text.back() == '+') throw parse_error("idempotent \"" + text + "\" has an empty summand");
    std::stringstream ss(text.substr(2));
    for (std::string part; std::getline(ss, part, '+');) {
      if (part.empty()) throw parse_error("idempotent \"" + text + "\" has an empty summand");
      names.push_back(part);
    }
    const auto& labels = a.primitive_labels();
    std::vector<std::string> expanded;
    for (const auto& n : names) {
      if (std::find(labels.begin(), labels.end(), n) != labels.end()) {
        expanded.push_back(n);
        continue;
      }
      std::size_t before = expanded.size();
      for (const auto& l : labels)
        if (l.rfind(n + ":", 0) == 0) expanded.push_back(l);
      if (expanded.size() == before) throw Error(ErrorCode::NotIdempotent, "no primitive idempotent named \"" + n + "\"");
    }
    e = vertex_idempotent(a, expanded);
  } else {
    throw parse_error("idempotent must be a string or an array");
  }
  check_idempotent(a, e);
  return e;
}

Json idempotent_arg(const std::string& text) {
  if (!text.empty() && text.front() == '[') return parse_json(text, "--idempotent");
  return Json(text);
}

// ---------------------------------------------------------------- reports

template <class S>
Json to_json(const Mat<S>& m) {
  Json rows = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(format_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class S>
Json to_json(const Vec<S>& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(format_scalar(v(i)));
  return out;
}

Json to_json(const GradedDims& d) { return {{"lo", d.lo}, {"dims", d.dims}}; }

Json to_json(const DimBound& b) { return {{"finite", b.finite}, {"value", b.value}, {"text", b.format()}}; }

Json to_json(const Certificate& c) {
  Json out = Json::array();
  for (const auto& l : c.checks) {
    Json j{{"name", l.name}, {"ok", l.ok}};
    if (!l.detail.empty()) j["detail"] = l.detail;
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const StratifyingReport& r) {
  Json j{{"stratifying", r.stratifying},
         {"tensor_dim", r.tensor_dim},
         {"ideal_dim", r.ideal_dim},
         {"multiplication_iso", r.mult_iso},
         {"tor", to_json(r.tor)},
         {"checked_to", r.checked_to},
         {"failing_degree", r.failing_degree ? Json(*r.failing_degree) : Json(nullptr)},
         {"pd_quotient", to_json(r.pd_quotient)},
         {"perfect", to_string(r.perfect_ideal)}};
  if (!r.witness.empty()) j["witness"] = r.witness;
  if (!r.stratifying) j["failure"] = r.failure();
  return j;
}

Json to_json(const EquivalenceReport& r) {
  Json sides = Json::array();
  for (const auto& s : r.sides) {
    Json j{{"name", s.name}, {"bound", to_json(s.bound)}};
    if (!s.witness.empty()) j["witness"] = s.witness;
    sides.push_back(std::move(j));
  }
  Json j{{"invariant", r.invariant}, {"applies", r.applies}, {"sides", sides}, {"verdict", to_string(r.verdict)}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

template <class S>
Json to_json(const LesReport<S>& r, bool with_maps) {
  Json terms = Json::array(), joints = Json::array();
  for (const auto& t : r.terms) terms.push_back({{"label", t.label}, {"degree", t.degree}, {"dim", t.dim}});
  for (const auto& jt : r.joints)
    joints.push_back({{"term", jt.term},
                      {"checked", jt.checked},
                      {"composes_to_zero", jt.composes_to_zero},
                      {"rank_in", jt.rank_in},
                      {"rank_out", jt.rank_out},
                      {"exact", jt.exact}});
  Json j{{"homological", r.homological}, {"exact", r.exact}, {"terms", terms}, {"joints", joints}};
  if (with_maps) {
    Json maps = Json::array();
    for (std::size_t i = 0; i < r.maps.size(); ++i) maps.push_back({{"kind", r.map_kinds[i]}, {"matrix", to_json<S>(r.maps[i])}});
    j["maps"] = maps;
  }
  return j;
}

template <class S>
Json to_json(const KellerReport<S>& r, bool with_maps) {
  Json j{{"degenerate", r.degenerate},
         {"ok", r.ok()},
         {"hh", to_json(r.hh)},
         {"hh_corner", to_json(r.hh_corner)},
         {"hh_quotient", to_json(r.hh_quotient)},
         {"checks", to_json(r.checks)},
         {"additive", r.additive ? Json(*r.additive) : Json(nullptr)}};
  if (!r.degenerate) j["les"] = to_json(r.les, with_maps);
  return j;
}

template <class S>
Json to_json(const CohomologyLesReport<S>& r, bool with_maps) {
  Json seqs = Json::array();
  for (const auto& s : r.sequences) seqs.push_back(to_json(s, with_maps));
  return {{"degenerate", r.degenerate},
          {"ok", r.ok()},
          {"hh", to_json(r.hh)},
          {"hh_corner", to_json(r.hh_corner)},
          {"hh_quotient", to_json(r.hh_quotient)},
          {"checks", to_json(r.checks)},
          {"sequences", seqs}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

#define RECOLLAB_INSTANTIATE(S)                                                     \
  template AlgebraPtr<S> build_algebra<S>(const Document&);                         \
  template AlgebraPtr<S> build_algebra<S>(const Json&, const FieldTag&);            \
  template Relation<S> parse_relation<S>(std::string_view, const FieldTag&);        \
  template Vec<S> parse_idempotent<S>(const Algebra<S>&, const Json&);              \
  template Json to_json<S>(const Mat<S>&);                                          \
  template Json to_json<S>(const Vec<S>&);                                          \
  template Json to_json<S>(const LesReport<S>&, bool);                              \
  template Json to_json<S>(const KellerReport<S>&, bool);                           \
  template Json to_json<S>(const CohomologyLesReport<S>&, bool);
RECOLLAB_FOR_EACH_SCALAR(RECOLLAB_INSTANTIATE)
#undef RECOLLAB_INSTANTIATE

}  // namespace recollab::io
