// Runs each acceptance criterion once and prints one PASS/FAIL line per
// criterion. Exit status is nonzero when any criterion fails.

#include <array>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include <spdlog/spdlog.h>

#include "fake_outbound.hpp"
#include "logiciot/cli/runtime.hpp"
#include "logiciot/cli/simulate.hpp"
#include "logiciot/engine/script.hpp"
#include "logiciot/eval/evaluator.hpp"
#include "logiciot/lang/parser.hpp"
#include "random_program.hpp"
#include "snippets.hpp"
#include "stub_server.hpp"
#include "temp_dir.hpp"

using namespace logiciot;
using Clock = std::chrono::steady_clock;

namespace
{

struct Outcome
{
  bool ok = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

std::string run_command(const std::string & cmd)
{
  std::string out;
  FILE * pipe = popen(cmd.c_str(), "r");
  if (!pipe) return out;
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
  pclose(pipe);
  return out;
}

void write_file(const std::filesystem::path & p, const std::string & text) { std::ofstream(p) << text; }

std::size_t count_kind(const std::vector<engine::Firing> & fs, engine::FiringKind kind)
{
  std::size_t n = 0;
  for (const auto & f : fs) n += f.kind == kind;
  return n;
}

std::string squeeze(const std::string & s)
{
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  }
  return out;
}

Outcome snippet_fidelity()
{
  const auto composite = testing::composite_program();
  const auto flat = squeeze(composite);
  for (const auto & listing : testing::listings()) {
    if (flat.find(squeeze(listing)) == std::string::npos) return fail("listing missing from composite: " + listing);
  }
  for (const auto & src : {composite, testing::seven_snippets()}) {
    try {
      engine::VirtualClock clock{0};
      testing::FakeOutbound out;
      engine::Engine e(lang::parse_program(src), {}, clock, out);
      if (!e.errors().empty()) return fail("load error: " + e.errors().front());
    } catch (const std::exception & ex) {
      return fail(ex.what());
    }
  }
  return {true, std::to_string(testing::listings().size()) + " listings"};
}

bool history_unavailable(const store::RelationStore & s, std::int64_t k)
{
  try {
    eval::evaluate(lang::parse_expression("R.RSSI[-" + std::to_string(k) + "]"), s, {});
  } catch (const eval::EvalError & e) {
    return e.kind() == eval::ErrorKind::HistoryUnavailable;
  }
  return false;
}

Outcome window_semantics()
{
  const std::vector<lang::RelationDecl> rels = {lang::RelationDecl{"R", {"MAC", "RSSI"}, {}}};
  store::StoreConfig big;
  big.default_capacity = 1024;
  store::RelationStore s(rels, big);
  for (int v = 1; v <= 100; ++v) s.append("R", {Value::text("m"), Value::number(v)}, v);
  for (int k = 0; k <= 99; ++k) {
    const auto v = eval::evaluate(lang::parse_expression("R.RSSI[-" + std::to_string(k) + "]"), s, {});
    if (v != Value::number(100 - k)) return fail("k=" + std::to_string(k));
  }
  if (!history_unavailable(s, 100)) return fail("k=100 available with W=1024");

  store::StoreConfig small;
  small.default_capacity = 10;
  store::RelationStore t(rels, small);
  for (int v = 1; v <= 100; ++v) t.append("R", {Value::text("m"), Value::number(v)}, v);
  if (!history_unavailable(t, 10)) return fail("k=10 available with W=10");
  return {true, ""};
}

Outcome oracle_equivalence()
{
  std::size_t firings = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    std::mt19937_64 rng(seed);
    const auto program = testing::random_program(rng);
    const auto steps = testing::random_script(rng, program);
    const auto fast = engine::run_script(program, steps);
    const auto slow = engine::naive_oracle(program, steps);
    const auto a = engine::export_firing_log(fast.firings);
    if (a != engine::export_firing_log(slow.firings)) return fail("firing logs differ for seed " + std::to_string(seed));
    if (fast.store != slow.store) return fail("stores differ for seed " + std::to_string(seed));
    firings += fast.firings.size();
  }
  return {true, std::to_string(firings) + " firings compared"};
}

Outcome end_to_end()
{
  cli::RunConfig cfg;
  cfg.port = 0;
  cli::Runtime rt(lang::parse_program("RELATION R (MAC, RSSI)\nRELATION ALARMS (MAC)\n"
                                      "RULE R1 R.RSSI < -60 { ALARMS(R.MAC) }\n"),
                  cfg);
  rt.start();

  cli::SimProfile profile;
  profile.target = "http://127.0.0.1:" + std::to_string(rt.port());
  profile.relation = "R";
  profile.count = 500;
  profile.seed = 42;
  profile.gens = {cli::parse_field_gen("MAC=const:38:E7:D8:D3:18:68"), cli::parse_field_gen("RSSI=uniform:-90:-30")};

  const std::string cmd = std::string(LOGICIOT_CLI) + " simulate --target " + profile.target +
                          " --relation R --count 500 --seed 42 --gen MAC=const:38:E7:D8:D3:18:68 --gen RSSI=uniform:-90:-30";
  const auto summary = run_command(cmd);

  std::size_t expected = 0;
  cli::RequestGenerator gen(profile);
  for (std::size_t i = 0; i < profile.count; ++i) {
    for (const auto & [k, v] : gen.next()) {
      if (k == "RSSI" && std::stod(v) < -60) ++expected;
    }
  }

  if (summary.rfind("sent=500 ok=500 err=0", 0) != 0) {
    rt.stop();
    return fail("simulator reported: " + summary);
  }
  const bool done = rt.loop().wait_processed(500, std::chrono::seconds(20));
  const auto got = rt.engine().store().size("ALARMS");
  rt.stop();
  if (!done) return fail("events not processed in time");
  if (got != expected) return fail("ALARMS=" + std::to_string(got) + " expected " + std::to_string(expected));
  return {true, "ALARMS=" + std::to_string(got)};
}

Outcome trigger_per_row()
{
  testing::StubServer stub;
  gateway::HttpOutbound out;
  engine::VirtualClock clock{0};
  engine::EngineConfig cfg;
  cfg.webhooks["R"] = stub.url("/hook");
  engine::Engine e(lang::parse_program("RELATION R (MAC, RSSI)\nRELATION SEEN (MAC)\nTRIGGER (R) { SEEN(R.MAC) }\n"
                                       "ENDPOINT BATCH (M) { R(M, -1); R(M, -2); R(M, -3) }\n"),
                   cfg, clock, out);
  const auto fs = e.process_event(engine::Event{engine::EndpointCall{"BATCH", {Value::text("aa")}}, 1});
  out.drain();
  const auto triggers = count_kind(fs, engine::FiringKind::Trigger);
  if (triggers != 3) return fail("trigger ran " + std::to_string(triggers) + " times");
  if (stub.count() != 3) return fail("webhook received " + std::to_string(stub.count()) + " GETs");
  return {true, ""};
}

Outcome cascade_guard()
{
  engine::VirtualClock clock{0};
  testing::FakeOutbound out;
  engine::Engine e(lang::parse_program("RELATION R (A)\nTRIGGER (R) { R(R.A + 1) }\n"), {}, clock, out);
  e.process_event(engine::Event{engine::ExternalInsert{"R", {Value::number(0)}}, 1});
  if (e.errors().size() != 1 || e.errors()[0].find("cascade") == std::string::npos) {
    return fail("expected one cascade error, got " + std::to_string(e.errors().size()));
  }
  const auto n = e.store().size("R");
  if (n != 65) return fail("store holds " + std::to_string(n) + " records");
  if (e.store().latest("R", "A", 0) != Value::number(64)) return fail("last record is not the 64th nested insert");
  return {true, "65 records"};
}

Outcome timer_determinism()
{
  const auto program = lang::parse_program("TIMER TM (1000) {}");
  std::istringstream script_in("{\"advance\": 10000}\n");
  const auto r = engine::run_script(program, engine::parse_script(script_in));
  if (r.firings.size() != 10) return fail("timer fired " + std::to_string(r.firings.size()) + " times");

  testing::TempDir dir;
  write_file(dir.path / "p.liot", "RELATION R (A)\nRELATION S (A)\nTRIGGER (R) { S(R.A) }\n"
                                  "TIMER TM (1000) { R(1) }\nRULE X S.A > 0 {}\n");
  write_file(dir.path / "s.jsonl", "{\"at\": 0, \"insert\": {\"relation\": \"R\", \"values\": [5]}}\n{\"advance\": 10000}\n");
  const std::string cmd = std::string(LOGICIOT_CLI) + " script " + (dir.path / "p.liot").string() + " " +
                          (dir.path / "s.jsonl").string() + " 2>/dev/null";
  const auto first = run_command(cmd);
  if (first.empty()) return fail("script printed nothing");
  for (int i = 0; i < 4; ++i) {
    if (run_command(cmd) != first) return fail("script output differs on run " + std::to_string(i + 2));
  }
  return {true, ""};
}

Outcome persistence_replay()
{
  testing::ProgramShape shape;
  shape.max_timers = 0;
  testing::ScriptShape script_shape;
  script_shape.max_events = 300;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    std::mt19937_64 rng(1000 + seed);
    const auto program = testing::random_program(rng, shape);
    const auto steps = testing::random_script(rng, program, script_shape);
    testing::TempDir dir;
    engine::EngineConfig cfg;
    cfg.store.default_capacity = std::uniform_int_distribution<std::size_t>(1, 64)(rng);
    cfg.persist_path = dir.path / "log.jsonl";
    const auto before = engine::run_script(program, steps, cfg);

    engine::VirtualClock clock{0};
    testing::FakeOutbound out;
    engine::Engine restarted(program, cfg, clock, out);
    if (restarted.store().snapshot() != before.store) return fail("store differs for seed " + std::to_string(seed));
    if (!restarted.firing_log().empty()) return fail("replay fired for seed " + std::to_string(seed));
  }
  return {true, ""};
}

Outcome http_contract()
{
  cli::RunConfig cfg;
  cfg.port = 0;
  cli::Runtime rt(lang::parse_program("RELATION R (MAC, RSSI)\n"), cfg);
  rt.start();
  const auto base = "http://127.0.0.1:" + std::to_string(rt.port());
  const auto ingest = testing::fetch(base + "/rel/R/insert?MAC=38:E7:D8:D3:18:68&RSSI=-87");
  if (ingest.status != 202) {
    rt.stop();
    return fail("ingest returned " + std::to_string(ingest.status));
  }
  rt.loop().wait_processed(1, std::chrono::seconds(5));
  const auto first = testing::fetch(base + "/rel/R/read");
  bool stable = true;
  for (int i = 0; i < 50; ++i) stable = stable && testing::fetch(base + "/rel/R/read").body == first.body;
  const auto t = rt.engine().store().read("R", 1).at(0).t;
  rt.stop();
  const auto expected = R"([{"T":)" + std::to_string(t) + R"(,"MAC":"38:E7:D8:D3:18:68","RSSI":-87}])";
  if (first.status != 200 || first.body != expected) return fail("read returned " + first.body);
  if (!stable) return fail("read not byte-identical across calls");
  return {true, ""};
}

Outcome throughput()
{
  std::string src = "RELATION R (MAC, RSSI)\nRELATION ALARMS (MAC)\n";
  for (int i = 0; i < 10; ++i) {
    src += "RULE X" + std::to_string(i) + " R.RSSI < " + std::to_string(-50 - i) + " { ALARMS(R.MAC) }\n";
  }
  const auto program = lang::parse_program(src);
  std::vector<engine::ScriptStep> steps;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> rssi(-90, -30);
  for (int i = 0; i < 10000; ++i) {
    steps.push_back({i, engine::InsertAction{"R", {{"MAC", Value::text("m")}, {"RSSI", Value::number(rssi(rng))}}}});
  }
  const auto r = engine::run_script(program, steps);
  if (!r.errors.empty()) return fail(r.errors.front());
  return {true, std::to_string(r.rule_evaluations) + " rule evaluations"};
}

struct Criterion
{
  int id;
  const char * name;
  double limit_s;
  std::function<Outcome()> run;
};

}  // namespace

int main()
{
  spdlog::set_level(spdlog::level::off);
  const std::vector<Criterion> criteria = {
    {1, "snippet fidelity", 1, snippet_fidelity},
    {2, "window semantics", 1, window_semantics},
    {3, "oracle equivalence", 60, oracle_equivalence},
    {4, "end-to-end rule firing", 30, end_to_end},
    {5, "trigger per-row semantics", 5, trigger_per_row},
    {6, "cascade guard", 1, cascade_guard},
    {7, "timer determinism", 5, timer_determinism},
    {8, "persistence replay", 30, persistence_replay},
    {9, "HTTP contract bit-stability", 5, http_contract},
    {10, "throughput", 5, throughput},
  };

  int failures = 0;
  for (const auto & c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception & e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (o.ok && secs >= c.limit_s) {
      o.ok = false;
      o.detail = "over time limit of " + std::to_string(static_cast<int>(c.limit_s)) + " s";
    }
    failures += !o.ok;
    std::printf("%s %2d %-28s %7.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.empty() ? "" : "  ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
