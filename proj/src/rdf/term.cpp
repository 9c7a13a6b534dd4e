#include "virtrep/rdf/term.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>

#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::rdf {

namespace {

std::optional<std::string> canonicalize(std::string_view lexical, std::string_view datatype) {
  if (datatype == xsd::kInteger) return canonical_integer(lexical);
  if (datatype == xsd::kDecimal) return canonical_decimal(lexical);
  if (datatype == xsd::kDouble) return canonical_double(lexical);
  if (datatype == xsd::kBoolean) {
    if (lexical == "true" || lexical == "1") return std::string("true");
    if (lexical == "false" || lexical == "0") return std::string("false");
  }
  return std::nullopt;
}

void escape_into(std::string& out, std::string_view text) {
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
}

}  // namespace

Term Term::iri(std::string iri) {
  Term t;
  t.kind_ = TermKind::Iri;
  t.value_ = std::move(iri);
  return t;
}

Term Term::blank(std::string label) {
  Term t;
  t.kind_ = TermKind::BlankNode;
  t.value_ = std::move(label);
  return t;
}

Term Term::literal(std::string lexical, std::string_view datatype) {
  Term t;
  t.kind_ = TermKind::Literal;
  t.datatype_ = datatype.empty() ? std::string(xsd::kString) : std::string(datatype);
  if (auto canon = canonicalize(lexical, t.datatype_)) {
    t.value_ = std::move(*canon);
  } else {
    t.value_ = std::move(lexical);
  }
  return t;
}

Term Term::lang_literal(std::string lexical, std::string_view language) {
  Term t;
  t.kind_ = TermKind::Literal;
  t.value_ = std::move(lexical);
  t.datatype_ = std::string(rdfns::kLangString);
  t.language_ = std::string(language);
  std::transform(t.language_.begin(), t.language_.end(), t.language_.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return t;
}

Term Term::number(const Numeric& n) { return literal(n.lexical(), n.datatype()); }

Term Term::integer(long long v) { return literal(std::to_string(v), xsd::kInteger); }

Term Term::boolean(bool v) { return literal(v ? "true" : "false", xsd::kBoolean); }

std::optional<Numeric> Term::numeric() const {
  if (kind_ != TermKind::Literal) return std::nullopt;
  if (datatype_ == xsd::kInteger) {
    auto canon = canonical_integer(value_);
    if (!canon) return std::nullopt;
    return Numeric::integer(BigInt(*canon));
  }
  if (datatype_ == xsd::kDecimal) {
    auto d = Decimal::parse(value_);
    if (!d) return std::nullopt;
    return Numeric::decimal(std::move(*d));
  }
  if (datatype_ == xsd::kDouble) {
    auto d = parse_double(value_);
    if (!d) return std::nullopt;
    return Numeric::floating(*d);
  }
  return std::nullopt;
}

std::optional<bool> Term::boolean_value() const {
  if (kind_ != TermKind::Literal || datatype_ != xsd::kBoolean) return std::nullopt;
  if (value_ == "true") return true;
  if (value_ == "false") return false;
  return std::nullopt;
}

std::string Term::to_string() const {
  switch (kind_) {
    case TermKind::Iri: return "<" + value_ + ">";
    case TermKind::BlankNode: return "_:" + value_;
    case TermKind::Literal: break;
  }
  std::string out = "\"";
  escape_into(out, value_);
  out += '"';
  if (!language_.empty()) {
    out += "@" + language_;
  } else if (datatype_ != xsd::kString) {
    out += "^^<" + datatype_ + ">";
  }
  return out;
}

std::string fresh_blank_label() {
  static std::atomic<std::uint64_t> counter{0};
  return "b" + std::to_string(++counter);
}

}  // namespace virtrep::rdf
