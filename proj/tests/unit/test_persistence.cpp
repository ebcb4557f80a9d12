#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "logiciot/store/persistence.hpp"
#include "temp_dir.hpp"

using namespace logiciot;
using namespace logiciot::store;
namespace fs = std::filesystem;
using logiciot::testing::TempDir;

namespace
{

const std::vector<lang::RelationDecl> kRelations = {
  lang::RelationDecl{"R", {"MAC", "RSSI"}, {}},
  lang::RelationDecl{"Q", {"X"}, {}},
};

void write_file(const fs::path & p, const std::string & text) { std::ofstream(p) << text; }

std::size_t replay_error_line(const fs::path & p)
{
  RelationStore s(kRelations);
  try {
    replay_log(p, s);
  } catch (const ReplayError & e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("log entry shape")
{
  Record rec{1000, 1, {Value::text("38:E7:D8:D3:18:68"), Value::number(-87)}};
  CHECK(encode_log_entry("R", rec) == R"({"rel":"R","t":1000,"seq":1,"v":["38:E7:D8:D3:18:68",-87]})");
  Record mixed{5, 2, {Value::boolean(true), Value::null()}};
  CHECK(encode_log_entry("R", mixed) == R"({"rel":"R","t":5,"seq":2,"v":[true,null]})");
}

TEST_CASE("missing or empty log replays to an empty store")
{
  TempDir dir;
  RelationStore s(kRelations);
  CHECK(replay_log(dir.path / "absent.jsonl", s).records == 0);
  write_file(dir.path / "empty.jsonl", "");
  CHECK(replay_log(dir.path / "empty.jsonl", s).records == 0);
  CHECK(s.next_seq() == 1);
}

TEST_CASE("bad lines name their line number")
{
  TempDir dir;
  const std::string good = R"({"rel":"R","t":1,"seq":1,"v":["a",1]})";
  const auto p = dir.path / "log.jsonl";
  write_file(p, good + "\n" + R"({"rel":"R","t":2,"seq":2,"v":["a"]})" + "\n");
  CHECK(replay_error_line(p) == 2);
  write_file(p, "not json\n");
  CHECK(replay_error_line(p) == 1);
  write_file(p, good + "\n" + R"({"rel":"NOPE","t":2,"seq":2,"v":[1]})" + "\n");
  CHECK(replay_error_line(p) == 2);
  write_file(p, good + "\n" + good + "\n");
  CHECK(replay_error_line(p) == 2);
  write_file(p, R"({"rel":"R","t":1,"seq":1,"v":["a",1],"extra":0})" "\n");
  CHECK(replay_error_line(p) == 1);
  write_file(p, R"({"rel":"R","t":1.5,"seq":1,"v":["a",1]})" "\n");
  CHECK(replay_error_line(p) == 1);
  write_file(p, R"({"rel":"R","t":1,"seq":1,"v":["a",[1]]})" "\n");
  CHECK(replay_error_line(p) == 1);
}

TEST_CASE("replay reproduces the store")
{
  std::mt19937_64 rng(99);
  for (int round = 0; round < 30; ++round) {
    TempDir dir;
    const auto path = dir.path / "log.jsonl";
    StoreConfig cfg;
    cfg.default_capacity = std::uniform_int_distribution<std::size_t>(1, 20)(rng);
    RelationStore live(kRelations, cfg);
    {
      PersistenceLog log(path);
      const int n = std::uniform_int_distribution<int>(0, 80)(rng);
      Timestamp t = 100;
      for (int i = 0; i < n; ++i) {
        t += std::uniform_int_distribution<int>(0, 5)(rng);
        Record rec;
        if (std::bernoulli_distribution(0.5)(rng)) {
          const double v = std::uniform_int_distribution<int>(-1000, 1000)(rng) / 8.0;
          rec = live.append("R", {Value::text("m\"" + std::to_string(i)), Value::number(v)}, t);
          log.append("R", rec);
        } else {
          rec = live.append("Q", {std::bernoulli_distribution(0.5)(rng) ? Value::boolean(i % 2 == 0) : Value::null()}, t);
          log.append("Q", rec);
        }
      }
    }
    RelationStore restored(kRelations, cfg);
    replay_log(path, restored);
    REQUIRE(restored.snapshot() == live.snapshot());
    REQUIRE(restored.next_seq() == live.next_seq());
  }
}
