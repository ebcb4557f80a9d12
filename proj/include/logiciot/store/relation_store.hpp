#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "logiciot/lang/ast.hpp"
#include "logiciot/value.hpp"

namespace logiciot::store
{

using Timestamp = std::int64_t;  // milliseconds since the Unix epoch
using Seq = std::int64_t;

struct Record
{
  Timestamp t = 0;
  Seq seq = 0;
  std::vector<Value> values;

  friend bool operator==(const Record &, const Record &) = default;
};

/// A field reference reached past the retained history (or into an empty
/// relation).
class HistoryUnavailable : public std::runtime_error
{
public:
  HistoryUnavailable(std::string relation, std::string field, std::int64_t offset, std::size_t size);

  const std::string & relation() const noexcept { return relation_; }
  std::int64_t offset() const noexcept { return offset_; }

private:
  std::string relation_;
  std::int64_t offset_;
};

/// Unknown relation or field, arity mismatch, or an out-of-order seq/t.
class StoreError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct StoreConfig
{
  std::size_t default_capacity = 1024;
  std::map<std::string, std::size_t> capacity_overrides;
};

/// One relation's bounded history, newest last. Eviction is oldest-first.
struct RelationWindow
{
  lang::RelationDecl decl;
  std::size_t capacity = 0;
  std::deque<Record> records;

  friend bool operator==(const RelationWindow &, const RelationWindow &) = default;
};

/// Full copy of the store state; compares deeply.
struct StoreSnapshot
{
  std::map<std::string, RelationWindow> windows;
  Seq next_seq = 1;
  Timestamp last_t = 0;

  friend bool operator==(const StoreSnapshot &, const StoreSnapshot &) = default;
};

/// Windows for every declared relation plus the global seq counter.
///
/// Only the engine writes. Reads take a shared lock, so readers on other
/// threads never observe a half-applied insert.
class RelationStore
{
public:
  explicit RelationStore(const std::vector<lang::RelationDecl> & relations, StoreConfig config = {});

  RelationStore(const RelationStore &) = delete;
  RelationStore & operator=(const RelationStore &) = delete;

  /// Append with an explicit seq, which must exceed every seq stored so far.
  Record insert(const std::string & relation, std::vector<Value> values, Timestamp t, Seq seq);

  /// Append using the next free seq.
  Record append(const std::string & relation, std::vector<Value> values, Timestamp t);

  /// `offset` 0 is the newest record, -k the k-th previous one. Field "T"
  /// yields the record timestamp.
  Value latest(const std::string & relation, const std::string & field, std::int64_t offset) const;

  /// Up to `limit` records, newest first.
  std::vector<Record> read(const std::string & relation, std::size_t limit) const;

  bool has_relation(const std::string & relation) const;
  const lang::RelationDecl & decl(const std::string & relation) const;
  std::size_t size(const std::string & relation) const;
  std::size_t capacity(const std::string & relation) const;

  Seq next_seq() const;
  /// Last seq handed out, 0 before the first insert.
  Seq last_seq() const { return next_seq() - 1; }
  /// Timestamp of the newest record in any relation, 0 before the first.
  Timestamp last_timestamp() const;

  StoreSnapshot snapshot() const;

private:
  const RelationWindow & window(const std::string & relation) const;
  RelationWindow & window(const std::string & relation);

  mutable std::shared_mutex mu_;
  std::map<std::string, RelationWindow> windows_;
  Seq next_seq_ = 1;
  Timestamp last_t_ = 0;
};

}  // namespace logiciot::store
