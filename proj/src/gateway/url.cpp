#include "logiciot/gateway/url.hpp"

#include <charconv>
#include <stdexcept>

namespace logiciot::gateway
{

std::string Url::origin() const { return scheme + "://" + host + ":" + std::to_string(port); }

bool is_absolute(std::string_view target) noexcept { return target.find("://") != std::string_view::npos; }

Url parse_url(std::string_view text)
{
  const auto sep = text.find("://");
  if (sep == std::string_view::npos) throw std::invalid_argument("not an absolute URL: " + std::string(text));
  Url url;
  url.scheme = std::string(text.substr(0, sep));
  if (url.scheme != "http") throw std::invalid_argument("unsupported URL scheme '" + url.scheme + "'");
  auto rest = text.substr(sep + 3);
  const auto slash = rest.find_first_of("/?");
  auto authority = rest.substr(0, slash);
  url.path_and_query = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
  if (url.path_and_query.front() == '?') url.path_and_query.insert(0, "/");

  if (authority.empty()) throw std::invalid_argument("URL has no host: " + std::string(text));
  const auto colon = authority.rfind(':');
  if (colon != std::string_view::npos && authority.find(']') == std::string_view::npos) {
    auto port_text = authority.substr(colon + 1);
    int port = 0;
    auto [end, ec] = std::from_chars(port_text.data(), port_text.data() + port_text.size(), port);
    if (ec != std::errc{} || end != port_text.data() + port_text.size() || port <= 0 || port > 65535) {
      throw std::invalid_argument("bad port in URL: " + std::string(text));
    }
    url.port = port;
    authority = authority.substr(0, colon);
  }
  url.host = std::string(authority);
  if (url.host.empty()) throw std::invalid_argument("URL has no host: " + std::string(text));
  return url;
}

std::string resolve_target(std::string_view base, std::string_view target)
{
  if (is_absolute(target)) return std::string(target);
  if (base.empty()) {
    throw std::invalid_argument("relative target '" + std::string(target) + "' needs a module base URL");
  }
  std::string out(base);
  while (!out.empty() && out.back() == '/') out.pop_back();
  while (!target.empty() && target.front() == '/') target.remove_prefix(1);
  out += '/';
  out += target;
  return out;
}

}  // namespace logiciot::gateway
