#include "virtrep/net/http.hpp"

#include <algorithm>
#include <cctype>
#include <thread>
#include <sys/socket.h>
#include <vector>

#include <httplib.h>

#include "virtrep/rdf/iri.hpp"

namespace virtrep::net {

bool CaseInsensitiveLess::operator()(std::string_view a, std::string_view b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [](unsigned char x, unsigned char y) {
    return std::tolower(x) < std::tolower(y);
  });
}

namespace {

std::string first_header(const Headers& h, std::string_view name) {
  auto it = h.find(name);
  return it == h.end() ? std::string{} : it->second;
}

}  // namespace

std::string Request::header(std::string_view name) const { return first_header(headers, name); }
std::string Response::header(std::string_view name) const { return first_header(headers, name); }

struct HttpServer::Impl {
  Handler handler;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;
  int port = 0;
  bool started = false;

  void dispatch(const httplib::Request& in, httplib::Response& out) {
    Request req;
    req.method = in.method;
    req.path = in.path;
    req.body = in.body;
    for (const auto& [k, v] : in.headers) req.headers.emplace(k, v);
    Response res;
    try {
      res = handler(req);
    } catch (const std::exception& e) {
      res.status = 500;
      res.headers.emplace("Content-Type", "text/plain");
      res.body = e.what();
    }
    out.status = res.status;
    std::string content_type = res.header("Content-Type");
    for (const auto& [k, v] : res.headers) {
      if (!CaseInsensitiveLess{}(k, "Content-Type") && !CaseInsensitiveLess{}("Content-Type", k)) continue;
      out.headers.emplace(k, v);
    }
    if (!res.body.empty() || !content_type.empty()) {
      out.set_content(std::move(res.body), content_type.empty() ? "application/octet-stream" : content_type);
    }
  }
};

HttpServer::HttpServer(Handler handler, ServerOptions options) : impl_(std::make_unique<Impl>()) {
  impl_->handler = std::move(handler);
  impl_->options = std::move(options);
  auto threads = impl_->options.threads;
  impl_->server.new_task_queue = [threads] { return new httplib::ThreadPool(threads); };
  // httplib also sets SO_REUSEPORT, which lets a second server share the port.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  auto route = [this](const httplib::Request& in, httplib::Response& out) { impl_->dispatch(in, out); };
  impl_->server.Get(".*", route);
  impl_->server.Put(".*", route);
  impl_->server.Post(".*", route);
  impl_->server.Delete(".*", route);
  impl_->server.Patch(".*", route);
  impl_->server.Options(".*", route);
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind() {
  if (impl_->port > 0) return impl_->port;
  auto& s = impl_->server;
  if (impl_->options.port == 0) {
    impl_->port = s.bind_to_any_port(impl_->options.host);
    if (impl_->port <= 0) throw BindError("cannot bind " + impl_->options.host);
  } else {
    if (!s.bind_to_port(impl_->options.host, impl_->options.port)) {
      throw BindError("cannot bind " + impl_->options.host + ":" + std::to_string(impl_->options.port));
    }
    impl_->port = impl_->options.port;
  }
  return impl_->port;
}

void HttpServer::start() {
  bind();
  if (impl_->started) return;
  impl_->started = true;
  auto& s = impl_->server;
  impl_->thread = std::thread([&s] { s.listen_after_bind(); });
  s.wait_until_ready();
}

void HttpServer::stop() {
  if (!impl_) return;
  // httplib only closes the listening socket of a running server.
  if (impl_->port > 0 && !impl_->started) start();
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

bool HttpServer::running() const { return impl_->server.is_running(); }

int HttpServer::port() const { return impl_->port; }

std::string HttpServer::origin() const {
  return "http://" + impl_->options.host + ":" + std::to_string(impl_->port);
}

Response http_request(std::string_view method, std::string_view url, const Headers& headers, std::string body,
                      ClientOptions options) {
  auto target = rdf::split_http_iri(url);
  if (!target) throw ClientError(ClientError::Kind::InvalidUrl, "not an http(s) IRI: " + std::string(url));

  httplib::Client client(target->origin());
  auto timeout = options.timeout;
  client.set_connection_timeout(timeout);
  client.set_read_timeout(timeout);
  client.set_write_timeout(timeout);
  client.set_keep_alive(false);

  httplib::Request req;
  req.method = std::string(method);
  req.path = target->path;
  for (const auto& [k, v] : headers) req.headers.emplace(k, v);
  req.body = std::move(body);

  std::string received;
  bool too_large = false;
  req.content_receiver = [&](const char* data, size_t n, uint64_t, uint64_t) {
    if (options.max_body_bytes && received.size() + n > options.max_body_bytes) {
      too_large = true;
      return false;
    }
    received.append(data, n);
    return true;
  };

  auto started = std::chrono::steady_clock::now();
  httplib::Response res;
  httplib::Error error = httplib::Error::Success;
  bool ok = client.send(req, res, error);
  if (!ok) {
    if (too_large) {
      throw ClientError(ClientError::Kind::BodyTooLarge,
                        "response body exceeds " + std::to_string(options.max_body_bytes) + " bytes");
    }
    auto elapsed = std::chrono::steady_clock::now() - started;
    std::string what = httplib::to_string(error);
    switch (error) {
      case httplib::Error::Connection:
      case httplib::Error::BindIPAddress:
        throw ClientError(ClientError::Kind::Connect, what);
      case httplib::Error::ConnectionTimeout:
        throw ClientError(ClientError::Kind::Timeout, what);
      default:
        // Read and write errors after the full timeout are timeouts.
        if (elapsed >= timeout) throw ClientError(ClientError::Kind::Timeout, what);
        throw ClientError(ClientError::Kind::Transport, what);
    }
  }
  Response out;
  out.status = res.status;
  for (const auto& [k, v] : res.headers) out.headers.emplace(k, v);
  out.body = std::move(received);
  return out;
}

std::vector<std::string> link_targets(const Headers& headers, std::string_view rel) {
  std::vector<std::string> out;
  auto [lo, hi] = headers.equal_range("Link");
  for (auto it = lo; it != hi; ++it) {
    std::string_view v = it->second;
    // Comma-separated entries: <iri>; rel="x"
    std::size_t pos = 0;
    while (pos < v.size()) {
      auto open = v.find('<', pos);
      if (open == std::string_view::npos) break;
      auto close = v.find('>', open);
      if (close == std::string_view::npos) break;
      auto next = v.find('<', close);
      std::string_view params = v.substr(close + 1, next == std::string_view::npos ? v.npos : next - close - 1);
      std::string want = "rel=\"" + std::string(rel) + "\"";
      std::string want_bare = "rel=" + std::string(rel);
      if (params.find(want) != std::string_view::npos ||
          (params.find(want_bare) != std::string_view::npos)) {
        out.emplace_back(v.substr(open + 1, close - open - 1));
      }
      pos = close + 1;
    }
  }
  return out;
}

}  // namespace virtrep::net
