#include "specden/pool.hpp"

#include <chrono>

#include "specden/errors.hpp"
#include "specden/rng.hpp"

namespace specden {

WorkerPool::WorkerPool(std::size_t n, ShardLayout layout, PoolOptions opt)
    : layout_(std::move(layout)), opt_(opt) {
  validate_layout(layout_);
  if (n != layout_.worker_count())
    throw layout_error("worker count does not match layout shard count");
  boxes_.reserve(n);
  for (std::size_t w = 0; w < n; ++w) boxes_.push_back(std::make_unique<Mailbox>());
  threads_.reserve(n);
  for (std::size_t w = 0; w < n; ++w)
    threads_.emplace_back([this, w] { worker_main(w); });
}

WorkerPool::~WorkerPool() {
  // Shutdown drains: it is queued behind any in-flight work, and workers
  // process their mailbox strictly FIFO.
  std::vector<std::future<void>> acks;
  for (std::size_t w = 0; w < worker_count(); ++w)
    acks.push_back(post(w, MsgKind::Shutdown, {}));
  for (auto& a : acks) a.wait();
  for (auto& t : threads_) t.join();
}

std::future<void> WorkerPool::post(std::size_t w, MsgKind kind,
                                   std::function<void(std::size_t)> work) {
  if (w >= worker_count()) throw protocol_error("message addressed to unknown worker");
  if (kind == MsgKind::Shutdown)
    shut_down_ = true;
  else if (shut_down_)
    throw protocol_error("message posted after shutdown");
  counters_[static_cast<int>(kind)].fetch_add(1, std::memory_order_relaxed);
  Envelope env{kind, std::move(work), {}};
  std::future<void> fut = env.reply.get_future();
  {
    std::lock_guard<std::mutex> lock(boxes_[w]->m);
    boxes_[w]->q.push_back(std::move(env));
  }
  boxes_[w]->cv.notify_one();
  return fut;
}

void WorkerPool::run_all(MsgKind kind, const std::function<void(std::size_t)>& work) {
  std::vector<std::future<void>> futs;
  futs.reserve(worker_count());
  for (std::size_t w = 0; w < worker_count(); ++w) futs.push_back(post(w, kind, work));
  // Wait for every reply before rethrowing so no worker is left with
  // dangling references to coordinator-owned buffers.
  std::exception_ptr first;
  for (auto& f : futs) {
    try {
      f.get();
    } catch (...) {
      if (!first) first = std::current_exception();
    }
  }
  if (first) std::rethrow_exception(first);
}

void WorkerPool::run_on(std::size_t w, MsgKind kind, std::function<void(std::size_t)> work) {
  post(w, kind, std::move(work)).get();
}

std::uint64_t WorkerPool::total_messages() const {
  std::uint64_t n = 0;
  for (const auto& c : counters_) n += c.load();
  return n;
}

void WorkerPool::worker_main(std::size_t w) {
  std::uint64_t delay_counter = 0;
  for (;;) {
    Envelope env;
    {
      std::unique_lock<std::mutex> lock(boxes_[w]->m);
      boxes_[w]->cv.wait(lock, [&] { return !boxes_[w]->q.empty(); });
      env = std::move(boxes_[w]->q.front());
      boxes_[w]->q.pop_front();
    }
    if (opt_.delay_jitter_us > 0) {
      auto us = uniform_index(opt_.delay_seed ^ (w * 0x9e3779b9ull), delay_counter++,
                              opt_.delay_jitter_us + 1);
      std::this_thread::sleep_for(std::chrono::microseconds(us));
    }
    if (env.kind == MsgKind::Shutdown) {
      env.reply.set_value();
      return;
    }
    try {
      if (env.work) env.work(w);
      env.reply.set_value();
    } catch (...) {
      env.reply.set_exception(std::current_exception());
    }
  }
}

}  // namespace specden
