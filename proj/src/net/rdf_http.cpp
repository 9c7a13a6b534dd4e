#include "virtrep/net/rdf_http.hpp"

#include <algorithm>
#include <cctype>

#include "virtrep/rdf/turtle.hpp"
#include "virtrep/rdf/vocabulary.hpp"

namespace virtrep::net {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::string media_type_of(std::string_view content_type) {
  return lower(trim(content_type.substr(0, content_type.find(';'))));
}

bool accepts(std::string_view accept, std::string_view media_type) {
  if (trim(accept).empty()) return true;
  std::string want = lower(media_type);
  std::string want_major = want.substr(0, want.find('/'));
  std::size_t pos = 0;
  while (pos <= accept.size()) {
    auto comma = accept.find(',', pos);
    std::string_view range = accept.substr(pos, comma == std::string_view::npos ? accept.npos : comma - pos);
    pos = comma == std::string_view::npos ? accept.size() + 1 : comma + 1;

    std::string type = media_type_of(range);
    double q = 1.0;
    for (auto p = range.find(';'); p != std::string_view::npos; p = range.find(';', p + 1)) {
      auto param = trim(range.substr(p + 1, range.find(';', p + 1) - p - 1));
      if (param.starts_with("q=")) {
        try {
          q = std::stod(std::string(param.substr(2)));
        } catch (const std::exception&) {
          q = 0;
        }
      }
    }
    if (q <= 0) continue;
    if (type == "*/*" || type == want || type == want_major + "/*") return true;
  }
  return false;
}

Response turtle_response(int status, const rdf::Graph& g) {
  Response r;
  r.status = status;
  r.headers.emplace("Content-Type", "text/turtle; charset=utf-8");
  r.body = rdf::serialize_turtle(g, rdf::default_prefixes());
  return r;
}

rdf::Graph error_graph(std::string_view kind, std::string_view detail) {
  rdf::Term error = rdf::Term::blank(rdf::fresh_blank_label());
  return rdf::Graph{{error, rdf::Term::iri(std::string(rdf::vr::kErrorKind)), rdf::Term::literal(std::string(kind))},
                    {error, rdf::Term::iri(std::string(rdf::vr::kErrorDetail)), rdf::Term::literal(std::string(detail))}};
}

Response error_response(int status, std::string_view kind, std::string_view detail) {
  return turtle_response(status, error_graph(kind, detail));
}

}  // namespace virtrep::net
