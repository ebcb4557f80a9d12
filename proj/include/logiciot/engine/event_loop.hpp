#pragma once

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <thread>

#include "logiciot/engine/engine.hpp"
#include "logiciot/engine/event.hpp"

namespace logiciot::engine
{

/// Bounded FIFO between producers (HTTP handlers) and the engine thread.
/// Arrival seqs are assigned under the queue lock, so queue order and
/// arrival_seq order agree.
class EventQueue
{
public:
  explicit EventQueue(std::size_t capacity = 10000);

  /// The assigned arrival_seq, or nullopt when full or closed.
  std::optional<std::uint64_t> try_push(EventKind kind);

  /// Waits until an event is available, the deadline passes, or the queue is
  /// closed and drained.
  std::optional<Event> pop_until(std::chrono::steady_clock::time_point deadline);

  /// Stop accepting; queued events can still be popped.
  void close();
  bool closed() const;
  std::size_t size() const;

private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Event> events_;
  std::size_t capacity_;
  std::uint64_t next_arrival_ = 1;
  bool closed_ = false;
};

/// Owns the thread that drives an Engine on wall-clock time: pops events,
/// runs them to completion, and ticks timers when due.
class EventLoop
{
public:
  EventLoop(Engine & engine, EventQueue & queue);
  ~EventLoop();

  EventLoop(const EventLoop &) = delete;
  EventLoop & operator=(const EventLoop &) = delete;

  void start();
  /// Closes the queue, processes what is left, joins the thread.
  void stop();

  /// Blocks until the event with `arrival_seq` has been processed.
  bool wait_processed(std::uint64_t arrival_seq, std::chrono::milliseconds timeout);
  std::uint64_t processed() const;

private:
  void run();

  Engine & engine_;
  EventQueue & queue_;
  std::thread thread_;
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::uint64_t processed_ = 0;
};

}  // namespace logiciot::engine
