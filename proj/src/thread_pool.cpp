#include "annealbench/thread_pool.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace annealbench {

namespace {

thread_local bool inside_worker = false;

class Pool {
 public:
  explicit Pool(std::size_t workers) {
    for (std::size_t i = 0; i < workers; ++i)
      threads_.emplace_back([this] { loop(); });
  }
  ~Pool() {
    {
      std::lock_guard lk(mu_);
      stop_ = true;
    }
    cv_.notify_all();
    for (auto& t : threads_) t.join();
  }
  std::size_t workers() const { return threads_.size(); }

  void run(std::size_t count, const std::function<void(std::size_t)>& body) {
    std::unique_lock lk(mu_);
    job_ = &body;
    count_ = count;
    next_.store(0);
    active_ = threads_.size();
    errors_.assign(count, nullptr);
    ++generation_;
    cv_.notify_all();
    lk.unlock();

    inside_worker = true;
    drain();
    inside_worker = false;

    lk.lock();
    done_cv_.wait(lk, [this] { return active_ == 0; });
    job_ = nullptr;
    for (auto& e : errors_)
      if (e) std::rethrow_exception(e);
  }

 private:
  void drain() {
    for (;;) {
      const auto i = next_.fetch_add(1);
      if (i >= count_) return;
      try {
        (*job_)(i);
      } catch (...) {
        errors_[i] = std::current_exception();
      }
    }
  }

  void loop() {
    inside_worker = true;
    std::size_t seen = 0;
    for (;;) {
      std::unique_lock lk(mu_);
      cv_.wait(lk, [&] { return stop_ || generation_ != seen; });
      if (stop_) return;
      seen = generation_;
      lk.unlock();
      drain();
      lk.lock();
      if (--active_ == 0) done_cv_.notify_all();
    }
  }

  std::vector<std::thread> threads_;
  std::mutex mu_;
  std::condition_variable cv_, done_cv_;
  const std::function<void(std::size_t)>* job_ = nullptr;
  std::size_t count_ = 0;
  std::atomic<std::size_t> next_{0};
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  bool stop_ = false;
  std::vector<std::exception_ptr> errors_;
};

std::mutex config_mu;
std::size_t configured = 0;
std::unique_ptr<Pool> pool;

std::size_t default_threads() {
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

}  // namespace

void set_thread_count(std::size_t n) {
  std::lock_guard lk(config_mu);
  configured = n;
  pool.reset();
}

std::size_t thread_count() {
  std::lock_guard lk(config_mu);
  return configured ? configured : default_threads();
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body) {
  if (count == 0) return;
  const auto threads = thread_count();
  if (inside_worker || threads <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  // One caller at a time owns the pool; the caller also works.
  static std::mutex run_mu;
  std::unique_lock run_lock(run_mu, std::try_to_lock);
  if (!run_lock.owns_lock()) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  Pool* p = nullptr;
  {
    std::lock_guard lk(config_mu);
    if (!pool) pool = std::make_unique<Pool>(threads - 1);
    p = pool.get();
  }
  p->run(count, body);
}

}  // namespace annealbench
