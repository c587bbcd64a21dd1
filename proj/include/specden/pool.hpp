#pragma once

#include <array>
#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <thread>
#include <vector>

#include "specden/layout.hpp"

namespace specden {

// Message kinds of the coordinator/worker protocol. The payload rides in a
// closure; the kind tags exist so tests and the optional trace log can
// observe the protocol (message counts per kind).
enum class MsgKind : int {
  ApplyShard,  // operator- or generator-defined work on an owned shard
  DotPartial,  // produce a blocked reduction partial
  Axpy,        // elementwise y + alpha*x on an owned shard
  Scale,       // elementwise c*x on an owned shard
  Gather,      // copy an owned shard into a coordinator buffer
  Scatter,     // copy a coordinator buffer slice into an owned shard
  Shutdown,    // drain and exit
};
inline constexpr std::size_t kMsgKindCount = 7;

struct PoolOptions {
  // Test hook: sleep a random duration in [0, delay_jitter_us] before
  // answering each message, to shake out ordering assumptions.
  unsigned delay_jitter_us = 0;
  std::uint64_t delay_seed = 0;
};

// In-process worker pool emulating one coordinator driving n single-shard
// devices. Workers are passive responders: they own disjoint shard ranges,
// never talk to each other, and answer every message exactly once. All
// cross-worker data moves through the coordinator, mirroring the paper's
// single-node multi-device setting (and its inefficiency: during the
// sequential phases of a Lanczos step, n-1 workers idle by design).
//
// The public API must be driven from one thread at a time.
class WorkerPool {
 public:
  WorkerPool(std::size_t n, ShardLayout layout, PoolOptions opt = {});
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  const ShardLayout& layout() const { return layout_; }
  std::size_t worker_count() const { return layout_.worker_count(); }

  // Sends `work` to worker w and returns a future that resolves when the
  // worker has answered. The exactly-once reply is the promise fulfilment.
  std::future<void> post(std::size_t w, MsgKind kind, std::function<void(std::size_t)> work);

  // Broadcasts `work` to every worker and waits for all replies; the first
  // worker exception (lowest worker index) is rethrown.
  void run_all(MsgKind kind, const std::function<void(std::size_t)>& work);

  // Runs `work` on one worker and waits.
  void run_on(std::size_t w, MsgKind kind, std::function<void(std::size_t)> work);

  std::uint64_t message_count(MsgKind kind) const {
    return counters_[static_cast<int>(kind)].load();
  }
  std::uint64_t total_messages() const;

 private:
  struct Envelope {
    MsgKind kind;
    std::function<void(std::size_t)> work;  // empty for Shutdown
    std::promise<void> reply;
  };
  struct Mailbox {
    std::mutex m;
    std::condition_variable cv;
    std::deque<Envelope> q;
  };

  void worker_main(std::size_t w);

  ShardLayout layout_;
  PoolOptions opt_;
  std::vector<std::unique_ptr<Mailbox>> boxes_;
  std::vector<std::thread> threads_;
  std::array<std::atomic<std::uint64_t>, kMsgKindCount> counters_{};
  bool shut_down_ = false;
};

}  // namespace specden
