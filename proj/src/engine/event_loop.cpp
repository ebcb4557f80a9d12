#include "logiciot/engine/event_loop.hpp"

#include <spdlog/spdlog.h>

namespace logiciot::engine
{

EventQueue::EventQueue(std::size_t capacity) : capacity_(capacity)
{
  if (capacity_ == 0) throw std::invalid_argument("event queue capacity must be positive");
}

std::optional<std::uint64_t> EventQueue::try_push(EventKind kind)
{
  std::uint64_t seq = 0;
  {
    std::lock_guard lock(mu_);
    if (closed_ || events_.size() >= capacity_) return std::nullopt;
    seq = next_arrival_++;
    events_.push_back(Event{std::move(kind), seq});
  }
  cv_.notify_one();
  return seq;
}

std::optional<Event> EventQueue::pop_until(std::chrono::steady_clock::time_point deadline)
{
  std::unique_lock lock(mu_);
  cv_.wait_until(lock, deadline, [&] { return !events_.empty() || closed_; });
  if (events_.empty()) return std::nullopt;
  Event ev = std::move(events_.front());
  events_.pop_front();
  return ev;
}

void EventQueue::close()
{
  {
    std::lock_guard lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool EventQueue::closed() const
{
  std::lock_guard lock(mu_);
  return closed_;
}

std::size_t EventQueue::size() const
{
  std::lock_guard lock(mu_);
  return events_.size();
}

EventLoop::EventLoop(Engine & engine, EventQueue & queue) : engine_(engine), queue_(queue) {}

EventLoop::~EventLoop() { stop(); }

void EventLoop::start()
{
  if (thread_.joinable()) return;
  thread_ = std::thread([this] { run(); });
}

void EventLoop::stop()
{
  queue_.close();
  if (thread_.joinable()) thread_.join();
  engine_.flush();
}

void EventLoop::run()
{
  using namespace std::chrono;
  WallClock wall;
  while (true) {
    auto deadline = steady_clock::now() + milliseconds(200);
    if (auto due = engine_.next_timer_due()) {
      const auto wait = milliseconds(std::max<Timestamp>(0, *due - wall.now()));
      deadline = std::min(deadline, steady_clock::now() + wait);
    }
    auto ev = queue_.pop_until(deadline);
    if (ev) {
      if (std::holds_alternative<Shutdown>(ev->kind)) {
        queue_.close();
      } else {
        engine_.process_event(*ev);
      }
      {
        std::lock_guard lock(mu_);
        processed_ = ev->arrival_seq;
      }
      cv_.notify_all();
    }
    if (!queue_.closed()) engine_.fire_due_timers();
    if (!ev && queue_.closed()) break;
  }
}

bool EventLoop::wait_processed(std::uint64_t arrival_seq, std::chrono::milliseconds timeout)
{
  std::unique_lock lock(mu_);
  return cv_.wait_for(lock, timeout, [&] { return processed_ >= arrival_seq; });
}

std::uint64_t EventLoop::processed() const
{
  std::lock_guard lock(mu_);
  return processed_;
}

}  // namespace logiciot::engine
