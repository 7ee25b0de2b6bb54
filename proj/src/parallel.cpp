#include "pmcmc/parallel.hpp"

#include <algorithm>

namespace pmcmc {

WorkerPool::WorkerPool(unsigned workers) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  threads_.reserve(workers);
  for (unsigned i = 0; i < workers; ++i)
    threads_.emplace_back([this] { worker_loop(); });
}

WorkerPool::~WorkerPool() {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    stopping_ = true;
  }
  wake_.notify_all();
  for (auto& t : threads_) t.join();
}

void WorkerPool::worker_loop() {
  std::uint64_t seen_generation = 0;
  std::unique_lock<std::mutex> lock(mutex_);
  for (;;) {
    wake_.wait(lock, [&] { return stopping_ || generation_ != seen_generation; });
    if (stopping_) return;
    seen_generation = generation_;
    while (next_index_ < batch_size_) {
      const std::size_t i = next_index_++;
      ++in_flight_;
      lock.unlock();
      std::exception_ptr err;
      try {
        (*task_)(i);
      } catch (...) {
        err = std::current_exception();
      }
      lock.lock();
      if (err) errors_.emplace_back(i, err);
      --in_flight_;
    }
    if (in_flight_ == 0) done_.notify_all();
  }
}

void WorkerPool::run(std::size_t n,
                     const std::function<void(std::size_t)>& task) const {
  if (n == 0) return;
  std::unique_lock<std::mutex> lock(mutex_);
  task_ = &task;
  batch_size_ = n;
  next_index_ = 0;
  errors_.clear();
  ++generation_;
  wake_.notify_all();
  done_.wait(lock, [&] { return next_index_ >= batch_size_ && in_flight_ == 0; });
  task_ = nullptr;
  if (!errors_.empty()) {
    auto first = std::min_element(
        errors_.begin(), errors_.end(),
        [](const auto& a, const auto& b) { return a.first < b.first; });
    std::rethrow_exception(first->second);
  }
}

}  // namespace pmcmc
