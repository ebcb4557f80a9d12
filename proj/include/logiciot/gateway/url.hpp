#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace logiciot::gateway
{

/// http://host[:port]/path?query split into the pieces an HTTP client needs.
struct Url
{
  std::string scheme;
  std::string host;
  int port = 80;
  /// Path plus query, always starting with '/'.
  std::string path_and_query;

  /// scheme://host:port
  std::string origin() const;
};

/// Throws std::invalid_argument for anything that isn't an absolute http URL.
Url parse_url(std::string_view text);

bool is_absolute(std::string_view target) noexcept;

/// Absolute targets pass through; relative ones are joined onto `base`.
/// An empty base with a relative target throws std::invalid_argument.
std::string resolve_target(std::string_view base, std::string_view target);

using QueryPairs = std::vector<std::pair<std::string, std::string>>;

/// Appends `?k=v&...` (or `&k=v...` when the URL already has a query),
/// percent-encoding keys and values. Pair order is preserved.
std::string with_query(std::string_view url, const QueryPairs & pairs);

}  // namespace logiciot::gateway
