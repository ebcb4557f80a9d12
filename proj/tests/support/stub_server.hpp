#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace logiciot::testing
{

struct StubRequest
{
  std::string path;
  std::multimap<std::string, std::string> params;
};

struct StubReply
{
  int status = 200;
  std::string body = "{}";
  int delay_ms = 0;
};

/// Local HTTP server on a free port that records every GET and answers with
/// `handler` (default: 200 "{}").
class StubServer
{
public:
  using Handler = std::function<StubReply(const StubRequest &)>;

  explicit StubServer(Handler handler = {});
  ~StubServer();

  int port() const;
  /// http://127.0.0.1:<port><path>
  std::string url(const std::string & path = "") const;

  std::vector<StubRequest> requests() const;
  std::size_t count() const;
  /// Waits until at least `n` requests arrived.
  bool wait_for(std::size_t n, std::chrono::milliseconds timeout = std::chrono::seconds(5)) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Plain GET for tests; status 0 when the connection failed.
struct FetchResult
{
  int status = 0;
  std::string body;
};
FetchResult fetch(const std::string & url);

}  // namespace logiciot::testing
