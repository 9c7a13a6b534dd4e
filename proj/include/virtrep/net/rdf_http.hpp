#pragma once

#include <string>
#include <string_view>

#include "virtrep/net/http.hpp"
#include "virtrep/rdf/graph.hpp"

// Helpers shared by the services that speak Turtle over HTTP.

namespace virtrep::net {

/// "text/turtle; charset=utf-8" -> "text/turtle"
std::string media_type_of(std::string_view content_type);

/// True if an Accept header admits `media_type`. An empty header admits all.
bool accepts(std::string_view accept, std::string_view media_type);

Response turtle_response(int status, const rdf::Graph& g);

/// Turtle body with one resource carrying vr:errorKind and vr:errorDetail.
Response error_response(int status, std::string_view kind, std::string_view detail);
rdf::Graph error_graph(std::string_view kind, std::string_view detail);

}  // namespace virtrep::net
