#pragma once

#include <string>
#include <string_view>

#include "virtrep/rdf/graph.hpp"
#include "virtrep/rdf/syntax.hpp"

namespace virtrep::rdf {

inline constexpr std::string_view kTurtleMediaType = "text/turtle";

/// Parses a Turtle document. Relative IRIs resolve against `base`; blank
/// node labels are replaced with fresh ones. Throws SyntaxError.
Graph parse_turtle(std::string_view text, std::string_view base);

/// Writes `g` as Turtle, grouped by subject in term order. Every entry of
/// `prefixes` is declared; IRIs are abbreviated where the local part allows.
std::string serialize_turtle(const Graph& g, const PrefixMap& prefixes = {});

/// Prefixes used for documents the server and simulator emit.
const PrefixMap& default_prefixes();

}  // namespace virtrep::rdf
