#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Core>

#include "bochner/exterior.hpp"
#include "bochner/serialize.hpp"

namespace bochner::tool {

/// Counter-based generator: draw k of stream s is splitmix64(seed, s, k), so a
/// case's inputs depend only on (seed, stream) and never on scheduling.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi);

  Form form(int q, int p);
  Eigen::MatrixXd symmetric(int n);
  Eigen::MatrixXd skew(int n);
  /// Sorted ascending, entries in [lo, hi).
  std::vector<double> blocks(int m, double lo, double hi);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Worker count: BOCHNER_FLOW_THREADS if set and positive, otherwise the
/// hardware concurrency.
int worker_count();

/// Runs task(i) for i in [0, n) on up to `workers` threads. Results are stored
/// by index.
template <class T>
std::vector<T> parallel_map(int n, int workers, const std::function<T(int)>& task) {
  std::vector<std::optional<T>> slots(static_cast<std::size_t>(std::max(n, 0)));
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  auto run = [&] {
    for (int i = next++; i < n; i = next++) {
      if (failed) return;
      try {
        slots[static_cast<std::size_t>(i)].emplace(task(i));
      } catch (...) {
        if (!failed.exchange(true)) failure = std::current_exception();
        return;
      }
    }
  };
  const int threads = std::clamp(workers, 1, std::max(n, 1));
  if (threads == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  std::vector<T> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

/// Deterministic JSON text: fixed key order, doubles as %.16e, non-finite
/// doubles as null, two-space indentation, trailing newline.
std::string render_json(const Json& j);

/// %.16e, or an empty field for non-finite values.
std::string format_double(double x);

}  // namespace bochner::tool
