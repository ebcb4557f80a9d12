#include "logiciot/store/persistence.hpp"

#include "logiciot/json_value.hpp"

namespace logiciot::store
{

ReplayError::ReplayError(std::size_t line, const std::string & what)
  : std::runtime_error("log line " + std::to_string(line) + ": " + what), line_(line)
{
}

PersistenceLog::PersistenceLog(std::filesystem::path path) : path_(std::move(path))
{
  out_.open(path_, std::ios::app | std::ios::binary);
  if (!out_) throw std::runtime_error("cannot open persistence log " + path_.string());
}

std::string encode_log_entry(const std::string & relation, const Record & record)
{
  ordered_json j;
  j["rel"] = relation;
  j["t"] = record.t;
  j["seq"] = record.seq;
  ordered_json v = ordered_json::array();
  for (const auto & value : record.values) v.push_back(to_json(value));
  j["v"] = std::move(v);
  return j.dump();
}

void PersistenceLog::append(const std::string & relation, const Record & record)
{
  const std::string line = encode_log_entry(relation, record);
  std::lock_guard lock(mu_);
  out_ << line << '\n';
  out_.flush();
  if (!out_) throw std::runtime_error("write to persistence log " + path_.string() + " failed");
}

void PersistenceLog::flush()
{
  std::lock_guard lock(mu_);
  out_.flush();
}

ReplayStats replay_log(const std::filesystem::path & path, RelationStore & store)
{
  ReplayStats stats;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    if (!std::filesystem::exists(path)) return stats;
    throw std::runtime_error("cannot read persistence log " + path.string());
  }
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error & e) {
      throw ReplayError(lineno, std::string("unparsable entry: ") + e.what());
    }
    try {
      if (!j.is_object() || j.size() != 4 || !j.contains("rel") || !j.contains("t") || !j.contains("seq") ||
          !j.contains("v")) {
        throw ReplayError(lineno, "entry must have exactly the keys rel, t, seq, v");
      }
      if (!j["rel"].is_string() || !j["t"].is_number_integer() || !j["seq"].is_number_integer() ||
          !j["v"].is_array()) {
        throw ReplayError(lineno, "entry has a mistyped key");
      }
      const auto rel = j["rel"].get<std::string>();
      if (!store.has_relation(rel)) throw ReplayError(lineno, "undeclared relation '" + rel + "'");
      std::vector<Value> values;
      for (const auto & v : j["v"]) values.push_back(from_json(v));
      store.insert(rel, std::move(values), j["t"].get<Timestamp>(), j["seq"].get<Seq>());
      ++stats.records;
    } catch (const ReplayError &) {
      throw;
    } catch (const std::exception & e) {
      throw ReplayError(lineno, e.what());
    }
  }
  return stats;
}

}  // namespace logiciot::store
