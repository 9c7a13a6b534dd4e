#include "virtrep/rdf/turtle.hpp"

#include <cctype>
#include <cstdio>
#include <map>

#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::rdf {

Graph parse_turtle(std::string_view text, std::string_view base) {
  syntax::TriplesParser parser(text, std::string(base), syntax::Dialect{});
  Graph g;
  for (const auto& st : parser.parse_document()) {
    // The Turtle dialect only produces terms, with literal subjects rejected.
    g.insert(Triple{*st.subject.term(), *st.predicate.term(), *st.object.term()});
  }
  return g;
}

namespace {

bool valid_local(std::string_view local) {
  if (local.empty()) return true;
  if (local.front() == '-') return false;
  for (char c : local) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '-') return false;
  }
  return true;
}

void write_iri_ref(std::string& out, std::string_view iri) {
  out += '<';
  for (char c : iri) {
    auto u = static_cast<unsigned char>(c);
    if (u <= 0x20 || std::string_view("<>\"{}|^`\\").find(c) != std::string_view::npos) {
      char buf[8];
      std::snprintf(buf, sizeof buf, "\\u%04X", u);
      out += buf;
    } else {
      out += c;
    }
  }
  out += '>';
}

void write_string(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    auto u = static_cast<unsigned char>(c);
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (u < 0x20 || u == 0x7F) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04X", u);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  out += '"';
}

class Writer {
 public:
  explicit Writer(const PrefixMap& prefixes) : prefixes_(prefixes) {}

  void iri(std::string& out, const std::string& iri) const {
    const std::string* best_prefix = nullptr;
    std::size_t best_len = 0;
    for (const auto& [prefix, ns] : prefixes_) {
      if (ns.size() > best_len && iri.size() >= ns.size() && iri.compare(0, ns.size(), ns) == 0 &&
          valid_local(std::string_view(iri).substr(ns.size()))) {
        best_prefix = &prefix;
        best_len = ns.size();
      }
    }
    if (best_prefix) {
      out += *best_prefix;
      out += ':';
      out += iri.substr(best_len);
    } else {
      write_iri_ref(out, iri);
    }
  }

  void term(std::string& out, const Term& t) {
    switch (t.kind()) {
      case TermKind::Iri: iri(out, t.value()); return;
      case TermKind::BlankNode: out += "_:" + label(t.value()); return;
      case TermKind::Literal: literal(out, t); return;
    }
  }

 private:
  // Labels are renumbered per document.
  std::string label(const std::string& original) {
    auto [it, inserted] = relabel_.try_emplace(original);
    if (inserted) it->second = "b" + std::to_string(relabel_.size());
    return it->second;
  }

  void literal(std::string& out, const Term& t) {
    const auto& dt = t.datatype();
    const auto& lex = t.value();
    if (dt == xsd::kInteger && canonical_integer(lex) == lex) {
      out += lex;
      return;
    }
    if (dt == xsd::kDecimal && canonical_decimal(lex) == lex) {
      out += lex;
      return;
    }
    if (dt == xsd::kDouble && canonical_double(lex) == lex && lex.find('E') != std::string::npos) {
      out += lex;
      return;
    }
    if (dt == xsd::kBoolean && (lex == "true" || lex == "false")) {
      out += lex;
      return;
    }
    write_string(out, lex);
    if (!t.language().empty()) {
      out += '@';
      out += t.language();
    } else if (dt != xsd::kString) {
      out += "^^";
      iri(out, dt);
    }
  }

  const PrefixMap& prefixes_;
  std::map<std::string, std::string> relabel_;
};

}  // namespace

std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes) {
  std::string out;
  for (const auto& [prefix, ns] : prefixes) {
    out += "@prefix " + prefix + ": ";
    write_iri_ref(out, ns);
    out += " .\n";
  }
  if (!prefixes.empty() && !g.empty()) out += '\n';

  Writer w(prefixes);
  const Term* subject = nullptr;
  const Term* predicate = nullptr;
  for (const auto& t : g) {
    if (!subject || *subject != t.subject) {
      if (subject) out += " .\n";
      w.term(out, t.subject);
      out += ' ';
      subject = &t.subject;
      predicate = nullptr;
    }
    if (!predicate || *predicate != t.predicate) {
      if (predicate) out += " ;\n    ";
      if (t.predicate.value() == rdfns::kType) {
        out += 'a';
      } else {
        w.term(out, t.predicate);
      }
      out += ' ';
      predicate = &t.predicate;
    } else {
      out += ", ";
    }
    w.term(out, t.object);
  }
  if (subject) out += " .\n";
  return out;
}

const PrefixMap& default_prefixes() {
  static const PrefixMap prefixes = {
      {"ldp", std::string(ldp::kNamespace)},     {"vr", std::string(vr::kNamespace)},
      {"saref", std::string(saref::kNamespace)}, {"demo", std::string(demo::kNamespace)},
      {"xsd", std::string(xsd::kNamespace)},
  };
  return prefixes;
}

}  // namespace virtrep::rdf
