#pragma once

// Algebra description documents, idempotent specs and JSON reports.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "recollab/quiver.hpp"
#include "recollab/verify.hpp"

namespace recollab::io {

using Json = nlohmann::json;

/// Parses JSON; syntax errors become ParseError "<source>:<line>:<col>: ...".
Json parse_json(std::string_view text, const std::string& source);

/// 1-based line and column of the value at a JSON pointer in well-formed text.
std::pair<int, int> locate(std::string_view text, const Json::json_pointer& ptr);

/// The schema shipped with the library.
const Json& schema();

/// First violation of schema definition `definition` as (pointer, message).
std::optional<std::pair<Json::json_pointer, std::string>> schema_violation(const Json& doc,
                                                                         const std::string& definition);

/// 64-bit FNV-1a as 16 hex digits.
std::string content_hash(std::string_view bytes);
std::string hex64(std::uint64_t h);

/// A loaded, schema-valid algebra description.
struct Document {
  std::string source;
  std::string text;
  Json json;
  FieldTag field;
  std::string hash;
};

/// Reads, parses and validates; ParseError carries line and column.
Document load_document(const std::filesystem::path& file);
Document document_from_text(std::string text, const std::string& source);

/// Builds the algebra. Errors from the constructions keep their code and gain
/// the location of the offending sub-document.
template <class S>
AlgebraPtr<S> build_algebra(const Document& doc);

template <class S>
AlgebraPtr<S> build_algebra(const Json& doc, const FieldTag& field);

/// "x*y - 2*a*b" style relation: signed terms, optional rational coefficient.
template <class S>
Relation<S> parse_relation(std::string_view text, const FieldTag& field);

/// "e:v" or "e:v1+v3" names primitive idempotents; a name that is not a
/// primitive label but prefixes some as "<name>:" stands for their sum (the
/// blocks of a triangular algebra). A JSON array gives coordinates.
template <class S>
Vec<S> parse_idempotent(const Algebra<S>& a, const Json& spec);

/// Command-line form of an idempotent: either grammar string or "[0,1,...]".
Json idempotent_arg(const std::string& text);

// ---------------------------------------------------------------- reports

template <class S>
Json to_json(const Mat<S>& m);
template <class S>
Json to_json(const Vec<S>& v);
Json to_json(const GradedDims& d);
Json to_json(const DimBound& b);
Json to_json(const Certificate& c);
Json to_json(const StratifyingReport& r);
Json to_json(const EquivalenceReport& r);
template <class S>
Json to_json(const LesReport<S>& r, bool with_maps);
template <class S>
Json to_json(const KellerReport<S>& r, bool with_maps);
template <class S>
Json to_json(const CohomologyLesReport<S>& r, bool with_maps);

/// Two-space indent, sorted keys, trailing newline.
std::string dump(const Json& j);

}  // namespace recollab::io
