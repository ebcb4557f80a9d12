#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "logiciot/gateway/url.hpp"

namespace logiciot::cli
{

class GenSpecError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

struct ConstGen
{
  std::string value;
};

/// Integers when both bounds are integers, else doubles. Bounds inclusive.
struct UniformGen
{
  double min = 0;
  double max = 0;
  bool integral = true;
};

struct ChoiceGen
{
  std::vector<std::string> options;
};

using GenSpec = std::variant<ConstGen, UniformGen, ChoiceGen>;

struct FieldGen
{
  std::string field;
  GenSpec spec;
};

/// FIELD=const:V | FIELD=uniform:MIN:MAX | FIELD=choice:a|b|c
FieldGen parse_field_gen(const std::string & text);

struct SimProfile
{
  /// e.g. http://127.0.0.1:8080
  std::string target;
  /// Exactly one of relation / endpoint is set.
  std::string relation;
  std::string endpoint;
  std::size_t count = 0;
  int period_ms = 0;
  std::uint64_t seed = 0;
  std::vector<FieldGen> gens;
};

/// Seeded value source. Each request draws once per generator in order.
class RequestGenerator
{
public:
  explicit RequestGenerator(const SimProfile & profile);

  gateway::QueryPairs next();
  /// Full URL of the next request.
  std::string next_url();

private:
  const SimProfile & profile_;
  std::mt19937_64 rng_;
};

struct SimResult
{
  std::size_t sent = 0;
  std::size_t ok = 0;
  std::size_t err = 0;
};

/// "sent=N ok=N err=M"
std::string summary(const SimResult & r);

/// Sends the requests, one every period_ms. Non-2xx and transport
/// failures count as err.
SimResult run_simulation(const SimProfile & profile, int timeout_ms = 5000);

}  // namespace logiciot::cli
