#pragma once

#include <atomic>

#include "logiciot/store/relation_store.hpp"

namespace logiciot::engine
{

using store::Timestamp;

class Clock
{
public:
  virtual ~Clock() = default;
  virtual Timestamp now() const = 0;
};

/// Milliseconds since the Unix epoch from the system clock.
class WallClock final : public Clock
{
public:
  Timestamp now() const override;
};

/// Manually driven clock for scripts and tests. Never moves backwards.
class VirtualClock final : public Clock
{
public:
  explicit VirtualClock(Timestamp start = 0) : now_(start) {}

  Timestamp now() const override { return now_.load(); }
  /// Moves to `t`; earlier values are ignored.
  void set(Timestamp t);
  void advance(Timestamp ms) { set(now() + ms); }

private:
  std::atomic<Timestamp> now_;
};

}  // namespace logiciot::engine
