#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "virtrep/query/expression.hpp"
#include "virtrep/rdf/graph.hpp"
#include "virtrep/rdf/syntax.hpp"

namespace virtrep::query {

inline constexpr std::string_view kQueryMediaType = "application/sparql-query";

struct BindClause {
  Expr expression;
  std::string variable;
};

/// CONSTRUCT { template } WHERE { BGP, FILTER(...), BIND(... AS ?v) }.
/// Blank nodes in the template are minted fresh per solution; blank nodes
/// in WHERE act as variables.
struct ConstructQuery {
  rdf::PrefixMap prefixes;
  std::vector<rdf::TriplePattern> templ;
  std::vector<rdf::TriplePattern> where;
  std::vector<FilterExpr> filters;
  std::vector<BindClause> binds;  // applied in textual order
};

/// Throws rdf::SyntaxError. A missing WHERE keyword, a template variable
/// bound nowhere, or a BIND to an already-bound variable are errors.
ConstructQuery parse_construct(std::string_view text, std::string_view base = {});

/// Solutions of the WHERE clause after BIND and FILTER, in match order.
std::vector<rdf::Binding> solutions(const ConstructQuery& q, const rdf::Graph& g);

/// Instantiates the template once per solution; triples with an unbound
/// variable or an invalid position are skipped.
rdf::Graph execute_construct(const ConstructQuery& q, const rdf::Graph& g);

}  // namespace virtrep::query
