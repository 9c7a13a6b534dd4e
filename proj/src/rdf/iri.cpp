#include "virtrep/rdf/iri.hpp"

#include <cctype>

namespace virtrep::rdf {

namespace {

struct Parts {
  std::optional<std::string_view> scheme, authority, query, fragment;
  std::string_view path;
};

Parts split(std::string_view s) {
  Parts p;
  if (auto hash = s.find('#'); hash != std::string_view::npos) {
    p.fragment = s.substr(hash + 1);
    s = s.substr(0, hash);
  }
  if (auto q = s.find('?'); q != std::string_view::npos) {
    p.query = s.substr(q + 1);
    s = s.substr(0, q);
  }
  if (is_absolute_iri(s)) {
    auto colon = s.find(':');
    p.scheme = s.substr(0, colon);
    s = s.substr(colon + 1);
  }
  if (s.starts_with("//")) {
    s.remove_prefix(2);
    auto slash = s.find('/');
    p.authority = s.substr(0, slash);
    s = slash == std::string_view::npos ? std::string_view{} : s.substr(slash);
  }
  p.path = s;
  return p;
}

std::string remove_dot_segments(std::string_view in) {
  std::string input(in);
  std::string output;
  while (!input.empty()) {
    if (input.starts_with("../")) {
      input.erase(0, 3);
    } else if (input.starts_with("./")) {
      input.erase(0, 2);
    } else if (input.starts_with("/./")) {
      input.replace(0, 3, "/");
    } else if (input == "/.") {
      input = "/";
    } else if (input.starts_with("/../") || input == "/..") {
      input = input.size() == 3 ? std::string("/") : "/" + input.substr(4);
      auto last = output.rfind('/');
      output.erase(last == std::string::npos ? 0 : last);
    } else if (input == "." || input == "..") {
      input.clear();
    } else {
      std::size_t start = input.front() == '/' ? 1 : 0;
      auto next = input.find('/', start);
      output += input.substr(0, next);
      input.erase(0, next == std::string::npos ? input.size() : next);
    }
  }
  return output;
}

std::string merge_paths(const Parts& base, std::string_view ref_path) {
  if (base.authority && base.path.empty()) return "/" + std::string(ref_path);
  auto slash = base.path.rfind('/');
  if (slash == std::string_view::npos) return std::string(ref_path);
  return std::string(base.path.substr(0, slash + 1)) + std::string(ref_path);
}

std::string recompose(const std::optional<std::string_view>& scheme,
                      const std::optional<std::string_view>& authority, std::string_view path,
                      const std::optional<std::string_view>& query,
                      const std::optional<std::string_view>& fragment) {
  std::string out;
  if (scheme) (out += *scheme) += ':';
  if (authority) (out += "//") += *authority;
  out += path;
  if (query) (out += '?') += *query;
  if (fragment) (out += '#') += *fragment;
  return out;
}

}  // namespace

bool is_absolute_iri(std::string_view iri) {
  if (iri.empty() || !std::isalpha(static_cast<unsigned char>(iri.front()))) return false;
  for (std::size_t i = 1; i < iri.size(); ++i) {
    char c = iri[i];
    if (c == ':') return true;
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '-' && c != '.') return false;
  }
  return false;
}

std::optional<std::string> resolve_iri(std::string_view base, std::string_view reference) {
  Parts r = split(reference);
  if (r.scheme) return recompose(r.scheme, r.authority, remove_dot_segments(r.path), r.query, r.fragment);
  if (!is_absolute_iri(base)) return std::nullopt;
  Parts b = split(base);
  std::string path;
  std::optional<std::string_view> authority, query;
  if (r.authority) {
    authority = r.authority;
    path = remove_dot_segments(r.path);
    query = r.query;
  } else {
    authority = b.authority;
    if (r.path.empty()) {
      path = std::string(b.path);
      query = r.query ? r.query : b.query;
    } else {
      path = r.path.front() == '/' ? remove_dot_segments(r.path) : remove_dot_segments(merge_paths(b, r.path));
      query = r.query;
    }
  }
  return recompose(b.scheme, authority, path, query, r.fragment);
}

std::optional<HttpTarget> split_http_iri(std::string_view iri) {
  Parts p = split(iri);
  if (!p.scheme || !p.authority || p.authority->empty()) return std::nullopt;
  std::string scheme(*p.scheme);
  for (auto& c : scheme) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (scheme != "http" && scheme != "https") return std::nullopt;
  HttpTarget t{scheme, std::string(*p.authority), p.path.empty() ? "/" : std::string(p.path)};
  if (p.query) (t.path += '?') += *p.query;
  return t;
}

}  // namespace virtrep::rdf
