#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace virtrep::net {

struct CaseInsensitiveLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const;
};

using Headers = std::multimap<std::string, std::string, CaseInsensitiveLess>;

struct Request {
  std::string method;
  std::string path;  // decoded, without the query string
  Headers headers;
  std::string body;

  /// First value of a header, or empty.
  std::string header(std::string_view name) const;
};

struct Response {
  int status = 200;
  Headers headers;
  std::string body;

  std::string header(std::string_view name) const;
};

using Handler = std::function<Response(const Request&)>;

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 0;  // 0 picks a free port
  std::size_t threads = 64;
};

class BindError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Threaded HTTP/1.1 server that hands every request to one handler.
class HttpServer {
 public:
  explicit HttpServer(Handler handler, ServerOptions options = {});
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds the listening socket and returns the port. Throws BindError.
  int bind();
  /// Binds if needed and starts serving on a background thread.
  void start();
  void stop();
  bool running() const;

  int port() const;
  /// "http://host:port"
  std::string origin() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct ClientOptions {
  std::chrono::milliseconds timeout{5000};
  std::size_t max_body_bytes = 0;  // 0 = unlimited
};

class ClientError : public std::runtime_error {
 public:
  enum class Kind { InvalidUrl, Connect, Timeout, BodyTooLarge, Transport };
  ClientError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// One request on a fresh connection. Redirects are not followed.
/// Throws ClientError.
Response http_request(std::string_view method, std::string_view url, const Headers& headers = {},
                      std::string body = {}, ClientOptions options = {});

/// Value of a `Link` header with the given rel, e.g. rel="type".
std::vector<std::string> link_targets(const Headers& headers, std::string_view rel);

}  // namespace virtrep::net
