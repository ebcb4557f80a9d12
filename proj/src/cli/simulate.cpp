#include "logiciot/cli/simulate.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <thread>

#include <spdlog/spdlog.h>

#include "logiciot/engine/outbound.hpp"
#include "logiciot/gateway/http_outbound.hpp"
#include "logiciot/value.hpp"

namespace logiciot::cli
{

namespace
{

bool parse_integer(std::string_view s, double & out)
{
  long long n = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
  if (ec != std::errc{} || end != s.data() + s.size()) return false;
  out = static_cast<double>(n);
  return true;
}

bool parse_double(std::string_view s, double & out)
{
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && end == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

FieldGen parse_field_gen(const std::string & text)
{
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw GenSpecError("generator '" + text + "' is not FIELD=SPEC");
  FieldGen gen;
  gen.field = text.substr(0, eq);
  const std::string spec = text.substr(eq + 1);
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (colon == std::string::npos) throw GenSpecError("generator '" + text + "' has no kind");

  if (kind == "const") {
    gen.spec = ConstGen{rest};
  } else if (kind == "uniform") {
    const auto mid = rest.find(':', 1);
    if (mid == std::string::npos) throw GenSpecError("uniform needs MIN:MAX in '" + text + "'");
    const auto lo = std::string_view(rest).substr(0, mid);
    const auto hi = std::string_view(rest).substr(mid + 1);
    UniformGen u;
    u.integral = parse_integer(lo, u.min) && parse_integer(hi, u.max);
    if (!u.integral && !(parse_double(lo, u.min) && parse_double(hi, u.max))) {
      throw GenSpecError("uniform bounds must be numbers in '" + text + "'");
    }
    if (u.min > u.max) throw GenSpecError("uniform MIN exceeds MAX in '" + text + "'");
    gen.spec = u;
  } else if (kind == "choice") {
    ChoiceGen c;
    std::size_t start = 0;
    while (true) {
      const auto bar = rest.find('|', start);
      c.options.push_back(rest.substr(start, bar == std::string::npos ? std::string::npos : bar - start));
      if (bar == std::string::npos) break;
      start = bar + 1;
    }
    if (rest.empty()) throw GenSpecError("choice needs at least one option in '" + text + "'");
    gen.spec = c;
  } else {
    throw GenSpecError("unknown generator kind '" + kind + "'");
  }
  return gen;
}

RequestGenerator::RequestGenerator(const SimProfile & profile) : profile_(profile), rng_(profile.seed) {}

gateway::QueryPairs RequestGenerator::next()
{
  gateway::QueryPairs q;
  for (const auto & g : profile_.gens) {
    std::string value;
    if (const auto * c = std::get_if<ConstGen>(&g.spec)) {
      value = c->value;
    } else if (const auto * u = std::get_if<UniformGen>(&g.spec)) {
      if (u->integral) {
        std::uniform_int_distribution<long long> dist(static_cast<long long>(u->min), static_cast<long long>(u->max));
        value = std::to_string(dist(rng_));
      } else {
        std::uniform_real_distribution<double> dist(u->min, u->max);
        value = format_number(dist(rng_));
      }
    } else {
      const auto & options = std::get<ChoiceGen>(g.spec).options;
      std::uniform_int_distribution<std::size_t> dist(0, options.size() - 1);
      value = options[dist(rng_)];
    }
    q.emplace_back(g.field, std::move(value));
  }
  return q;
}

std::string RequestGenerator::next_url()
{
  std::string base = profile_.target;
  while (!base.empty() && base.back() == '/') base.pop_back();
  const std::string path =
    profile_.endpoint.empty() ? "/rel/" + profile_.relation + "/insert" : "/endpoint/" + profile_.endpoint;
  return gateway::with_query(base + path, next());
}

std::string summary(const SimResult & r)
{
  return "sent=" + std::to_string(r.sent) + " ok=" + std::to_string(r.ok) + " err=" + std::to_string(r.err);
}

SimResult run_simulation(const SimProfile & profile, int timeout_ms)
{
  RequestGenerator gen(profile);
  SimResult result;
  auto next_at = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < profile.count; ++i) {
    if (i > 0 && profile.period_ms > 0) {
      next_at += std::chrono::milliseconds(profile.period_ms);
      std::this_thread::sleep_until(next_at);
    }
    const auto url = gen.next_url();
    ++result.sent;
    try {
      const auto reply = gateway::http_get(url, timeout_ms, 1 << 20);
      if (reply.status >= 200 && reply.status < 300) {
        ++result.ok;
      } else {
        spdlog::warn("{} -> HTTP {}: {}", url, reply.status, reply.body);
        ++result.err;
      }
    } catch (const engine::ModuleCallError & e) {
      spdlog::warn("{}", e.what());
      ++result.err;
    }
  }
  return result;
}

}  // namespace logiciot::cli
