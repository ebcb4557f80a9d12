#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <string>

#include "logiciot/store/relation_store.hpp"

namespace logiciot::store
{

/// Replay failure; `line()` is 1-based.
class ReplayError : public std::runtime_error
{
public:
  ReplayError(std::size_t line, const std::string & what);
  std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Append-only JSON Lines record log, one shared file per run:
/// {"rel": "<name>", "t": <int>, "seq": <int>, "v": [<values...>]}
class PersistenceLog
{
public:
  explicit PersistenceLog(std::filesystem::path path);

  void append(const std::string & relation, const Record & record);
  void flush();

  const std::filesystem::path & path() const noexcept { return path_; }

private:
  std::filesystem::path path_;
  std::mutex mu_;
  std::ofstream out_;
};

/// One log line for `record`, without the trailing newline.
std::string encode_log_entry(const std::string & relation, const Record & record);

struct ReplayStats
{
  std::size_t records = 0;
};

/// Rebuild windows and the seq counter from a log. Missing file means empty
/// log. Stops at the first bad line with ReplayError.
ReplayStats replay_log(const std::filesystem::path & path, RelationStore & store);

}  // namespace logiciot::store
