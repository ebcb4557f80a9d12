#include <doctest.h>

#include <random>

#include "logiciot/store/relation_store.hpp"

using namespace logiciot;
using namespace logiciot::store;

namespace
{

const std::vector<lang::RelationDecl> kRelations = {
  lang::RelationDecl{"R", {"MAC", "RSSI"}, {}},
  lang::RelationDecl{"Q", {"X"}, {}},
};

std::vector<Value> reading(const std::string & mac, double rssi) { return {Value::text(mac), Value::number(rssi)}; }

}  // namespace

TEST_CASE("insert returns the stored record")
{
  RelationStore s(kRelations);
  const auto rec = s.insert("R", reading("38:E7:D8:D3:18:68", -87), 1000, 1);
  CHECK(rec.t == 1000);
  CHECK(rec.seq == 1);
  CHECK(rec.values == reading("38:E7:D8:D3:18:68", -87));
  CHECK(s.next_seq() == 2);
}

TEST_CASE("insert validation")
{
  RelationStore s(kRelations);
  CHECK_THROWS_AS(s.insert("R", {Value::text("x")}, 0, 1), StoreError);
  CHECK_THROWS_AS(s.insert("NOPE", {Value::number(1)}, 0, 1), StoreError);
  s.insert("Q", {Value::number(1)}, 10, 5);
  CHECK_THROWS_AS(s.insert("Q", {Value::number(1)}, 10, 5), StoreError);
  CHECK_THROWS_AS(s.insert("Q", {Value::number(1)}, 9, 6), StoreError);
}

TEST_CASE("latest with offsets and T")
{
  RelationStore s(kRelations);
  CHECK_THROWS_AS(s.latest("R", "RSSI", 0), HistoryUnavailable);
  s.append("R", reading("a", -50), 1000);
  s.append("R", reading("b", -70), 1001);
  CHECK(s.latest("R", "RSSI", 0) == Value::number(-70));
  CHECK(s.latest("R", "RSSI", -1) == Value::number(-50));
  CHECK(s.latest("R", "T", -1) == Value::number(1000));
  CHECK(s.latest("R", "MAC", 0) == Value::text("b"));
  CHECK_THROWS_AS(s.latest("R", "RSSI", -2), HistoryUnavailable);
  CHECK_THROWS_AS(s.latest("R", "NOPE", 0), StoreError);
}

TEST_CASE("read returns newest first")
{
  RelationStore s(kRelations);
  CHECK(s.read("R", 10).empty());
  for (int i = 1; i <= 3; ++i) s.append("R", reading("m", -i), i);
  const auto two = s.read("R", 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].seq == 3);
  CHECK(two[1].seq == 2);
  CHECK(s.read("R", 100).size() == 3);
  CHECK_THROWS_AS(s.read("NOPE", 1), StoreError);
}

TEST_CASE("eviction past the window")
{
  StoreConfig cfg;
  cfg.default_capacity = 4;
  RelationStore s(kRelations, cfg);
  for (int i = 1; i <= 5; ++i) s.append("Q", {Value::number(i)}, i);
  CHECK(s.size("Q") == 4);
  CHECK(s.latest("Q", "X", -3) == Value::number(2));
  CHECK_THROWS_AS(s.latest("Q", "X", -4), HistoryUnavailable);
  CHECK(s.read("Q", 10).back().values[0] == Value::number(2));
}

TEST_CASE("capacity overrides")
{
  StoreConfig cfg;
  cfg.default_capacity = 8;
  cfg.capacity_overrides["Q"] = 2;
  RelationStore s(kRelations, cfg);
  CHECK(s.capacity("R") == 8);
  CHECK(s.capacity("Q") == 2);
}

TEST_CASE("window matches a growable-list oracle")
{
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    StoreConfig cfg;
    cfg.default_capacity = std::uniform_int_distribution<std::size_t>(1, 40)(rng);
    RelationStore s(kRelations, cfg);
    std::map<std::string, std::vector<Record>> oracle;
    std::vector<Seq> all_seqs;
    const int n = std::uniform_int_distribution<int>(0, 120)(rng);
    Timestamp t = 0;
    for (int i = 0; i < n; ++i) {
      const bool to_r = std::bernoulli_distribution(0.6)(rng);
      t += std::uniform_int_distribution<int>(0, 3)(rng);
      const double v = std::uniform_int_distribution<int>(-100, 0)(rng);
      const auto rec = to_r ? s.append("R", reading("m", v), t) : s.append("Q", {Value::number(v)}, t);
      oracle[to_r ? "R" : "Q"].push_back(rec);
      all_seqs.push_back(rec.seq);
    }
    for (std::size_t i = 1; i < all_seqs.size(); ++i) REQUIRE(all_seqs[i] > all_seqs[i - 1]);

    for (const auto & [rel, field] : {std::pair<std::string, std::string>{"R", "RSSI"}, {"Q", "X"}}) {
      const auto & full = oracle[rel];
      const std::size_t kept = std::min(full.size(), cfg.default_capacity);
      const std::size_t fi = rel == "R" ? 1 : 0;
      for (std::size_t k = 0; k <= cfg.default_capacity + 1; ++k) {
        const auto off = -static_cast<std::int64_t>(k);
        if (k < kept) {
          REQUIRE(s.latest(rel, field, off) == full[full.size() - 1 - k].values[fi]);
          REQUIRE(s.latest(rel, "T", off) == Value::number(static_cast<double>(full[full.size() - 1 - k].t)));
        } else {
          REQUIRE_THROWS_AS(s.latest(rel, field, off), HistoryUnavailable);
        }
      }
      // read(limit) is a prefix of the newest-first history.
      const std::size_t limit = std::uniform_int_distribution<std::size_t>(1, 50)(rng);
      const auto got = s.read(rel, limit);
      REQUIRE(got.size() == std::min(limit, kept));
      for (std::size_t i = 0; i < got.size(); ++i) REQUIRE(got[i] == full[full.size() - 1 - i]);
    }
  }
}

TEST_CASE("snapshots compare deeply")
{
  RelationStore a(kRelations), b(kRelations);
  a.append("R", reading("m", -1), 5);
  CHECK_FALSE(a.snapshot() == b.snapshot());
  b.append("R", reading("m", -1), 5);
  CHECK(a.snapshot() == b.snapshot());
}
