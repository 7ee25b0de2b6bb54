#ifndef PMCMC_PARALLEL_HPP
#define PMCMC_PARALLEL_HPP

#include <condition_variable>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace pmcmc {

// Fixed pool of worker threads executing index-addressed task batches.
// Tasks communicate only through their own output slot, so results are
// independent of the worker count and of the scheduling order.
class WorkerPool {
 public:
  // workers == 0 selects std::thread::hardware_concurrency().
  explicit WorkerPool(unsigned workers = 0);
  ~WorkerPool();

  WorkerPool(const WorkerPool&) = delete;
  WorkerPool& operator=(const WorkerPool&) = delete;

  unsigned worker_count() const { return static_cast<unsigned>(threads_.size()); }

  // Runs task(i) for every i in [0, n) and blocks until all complete.
  // If tasks throw, the exception with the lowest index is rethrown.
  void run(std::size_t n, const std::function<void(std::size_t)>& task) const;

 private:
  void worker_loop();

  mutable std::mutex mutex_;
  mutable std::condition_variable wake_;
  mutable std::condition_variable done_;
  mutable const std::function<void(std::size_t)>* task_ = nullptr;
  mutable std::size_t batch_size_ = 0;
  mutable std::size_t next_index_ = 0;
  mutable std::size_t in_flight_ = 0;
  mutable std::uint64_t generation_ = 0;
  mutable std::vector<std::pair<std::size_t, std::exception_ptr>> errors_;
  bool stopping_ = false;
  std::vector<std::thread> threads_;
};

// Order-preserving parallel map; with a null pool the evaluation is serial.
template <typename In, typename Fn>
auto parallel_map(const std::vector<In>& items, Fn&& eval,
                  const WorkerPool* pool = nullptr)
    -> std::vector<decltype(eval(items.front()))> {
  using Out = decltype(eval(items.front()));
  std::vector<Out> results(items.size());
  if (pool == nullptr || pool->worker_count() <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) results[i] = eval(items[i]);
    return results;
  }
  pool->run(items.size(),
            [&](std::size_t i) { results[i] = eval(items[i]); });
  return results;
}

}  // namespace pmcmc

#endif
