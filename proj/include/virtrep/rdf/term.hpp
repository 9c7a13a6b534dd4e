#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "virtrep/rdf/numeric.hpp"

namespace virtrep::rdf {

/// Declaration order is the term order used for sorting:
/// IRIs < blank nodes < literals.
enum class TermKind : std::uint8_t { Iri, BlankNode, Literal };

/// An RDF term. Literals with a numeric or boolean datatype are stored in
/// canonical lexical form when the lexical is valid, so value-equal numbers
/// of the same datatype compare equal.
class Term {
 public:
  Term() = default;

  static Term iri(std::string iri);
  static Term blank(std::string label);
  /// Plain (xsd:string) or typed literal.
  static Term literal(std::string lexical, std::string_view datatype = {});
  static Term lang_literal(std::string lexical, std::string_view language);
  static Term number(const Numeric& n);
  static Term integer(long long v);
  static Term boolean(bool v);

  TermKind kind() const { return kind_; }
  bool is_iri() const { return kind_ == TermKind::Iri; }
  bool is_blank() const { return kind_ == TermKind::BlankNode; }
  bool is_literal() const { return kind_ == TermKind::Literal; }

  /// IRI text, blank node label, or literal lexical form.
  const std::string& value() const { return value_; }
  const std::string& datatype() const { return datatype_; }
  const std::string& language() const { return language_; }

  /// Parsed value for xsd:integer / xsd:decimal / xsd:double literals with a
  /// valid lexical form.
  std::optional<Numeric> numeric() const;
  std::optional<bool> boolean_value() const;

  /// N-Triples rendering, for diagnostics.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;

 private:
  TermKind kind_ = TermKind::Iri;
  std::string value_;
  std::string datatype_;
  std::string language_;
};

/// Mints a blank node label that is unique within the process.
std::string fresh_blank_label();

}  // namespace virtrep::rdf
