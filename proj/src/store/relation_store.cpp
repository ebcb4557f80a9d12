#include "logiciot/store/relation_store.hpp"

#include <mutex>

namespace logiciot::store
{

HistoryUnavailable::HistoryUnavailable(std::string relation, std::string field, std::int64_t offset,
                                       std::size_t size)
  : std::runtime_error("history unavailable: " + relation + "." + field + "[" + std::to_string(offset) + "] with " +
                       std::to_string(size) + " record(s) retained"),
    relation_(std::move(relation)),
    offset_(offset)
{
}

RelationStore::RelationStore(const std::vector<lang::RelationDecl> & relations, StoreConfig config)
{
  for (const auto & decl : relations) {
    auto it = config.capacity_overrides.find(decl.name);
    const std::size_t cap = it == config.capacity_overrides.end() ? config.default_capacity : it->second;
    if (cap == 0) throw StoreError("window capacity for '" + decl.name + "' must be positive");
    windows_.emplace(decl.name, RelationWindow{decl, cap, {}});
  }
  for (const auto & [name, cap] : config.capacity_overrides) {
    if (!windows_.count(name)) throw StoreError("window override for undeclared relation '" + name + "'");
  }
}

const RelationWindow & RelationStore::window(const std::string & relation) const
{
  auto it = windows_.find(relation);
  if (it == windows_.end()) throw StoreError("unknown relation '" + relation + "'");
  return it->second;
}

RelationWindow & RelationStore::window(const std::string & relation)
{
  auto it = windows_.find(relation);
  if (it == windows_.end()) throw StoreError("unknown relation '" + relation + "'");
  return it->second;
}

Record RelationStore::insert(const std::string & relation, std::vector<Value> values, Timestamp t, Seq seq)
{
  std::unique_lock lock(mu_);
  RelationWindow & w = window(relation);
  if (values.size() != w.decl.fields.size()) {
    throw StoreError("relation '" + relation + "' expects " + std::to_string(w.decl.fields.size()) +
                     " values, got " + std::to_string(values.size()));
  }
  if (seq < next_seq_) {
    throw StoreError("seq " + std::to_string(seq) + " is not above the last stored seq " +
                     std::to_string(next_seq_ - 1));
  }
  if (t < last_t_) {
    throw StoreError("timestamp " + std::to_string(t) + " precedes the last stored timestamp " +
                     std::to_string(last_t_));
  }
  Record rec{t, seq, std::move(values)};
  if (w.records.size() == w.capacity) w.records.pop_front();
  w.records.push_back(rec);
  next_seq_ = seq + 1;
  last_t_ = t;
  return rec;
}

Record RelationStore::append(const std::string & relation, std::vector<Value> values, Timestamp t)
{
  return insert(relation, std::move(values), t, next_seq());
}

Value RelationStore::latest(const std::string & relation, const std::string & field, std::int64_t offset) const
{
  std::shared_lock lock(mu_);
  const RelationWindow & w = window(relation);
  int idx = -1;
  if (field != "T") {
    idx = w.decl.field_index(field);
    if (idx < 0) throw StoreError("relation '" + relation + "' has no field '" + field + "'");
  }
  if (offset > 0) throw StoreError("history offset must not be positive");
  const auto back = static_cast<std::uint64_t>(-offset);
  if (back >= w.records.size()) throw HistoryUnavailable(relation, field, offset, w.records.size());
  const Record & rec = w.records[w.records.size() - 1 - back];
  if (idx < 0) return Value::number(static_cast<double>(rec.t));
  return rec.values[static_cast<std::size_t>(idx)];
}

std::vector<Record> RelationStore::read(const std::string & relation, std::size_t limit) const
{
  std::shared_lock lock(mu_);
  const RelationWindow & w = window(relation);
  std::vector<Record> out;
  const std::size_t n = std::min(limit, w.records.size());
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(w.records[w.records.size() - 1 - i]);
  return out;
}

bool RelationStore::has_relation(const std::string & relation) const { return windows_.count(relation) > 0; }

const lang::RelationDecl & RelationStore::decl(const std::string & relation) const
{
  return window(relation).decl;
}

std::size_t RelationStore::size(const std::string & relation) const
{
  std::shared_lock lock(mu_);
  return window(relation).records.size();
}

std::size_t RelationStore::capacity(const std::string & relation) const { return window(relation).capacity; }

Seq RelationStore::next_seq() const
{
  std::shared_lock lock(mu_);
  return next_seq_;
}

Timestamp RelationStore::last_timestamp() const
{
  std::shared_lock lock(mu_);
  return last_t_;
}

StoreSnapshot RelationStore::snapshot() const
{
  std::shared_lock lock(mu_);
  return StoreSnapshot{windows_, next_seq_, last_t_};
}

}  // namespace logiciot::store
