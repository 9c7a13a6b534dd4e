#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace virtrep::rdf {

/// True if `iri` starts with a URI scheme followed by ':'.
bool is_absolute_iri(std::string_view iri);

/// RFC 3986 reference resolution. Returns nullopt if `base` is not absolute
/// and `reference` is relative.
std::optional<std::string> resolve_iri(std::string_view base, std::string_view reference);

/// Components of an http(s) IRI, for clients.
struct HttpTarget {
  std::string scheme;     // "http" or "https"
  std::string authority;  // host[:port]
  std::string path;       // path + query, at least "/"
  std::string origin() const { return scheme + "://" + authority; }
};
std::optional<HttpTarget> split_http_iri(std::string_view iri);

}  // namespace virtrep::rdf
