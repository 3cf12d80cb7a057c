#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace epitheta {

// Worker pool handle owned by the caller (the CLI). Work is split into
// contiguous index blocks; results are always combined in block order, so
// output never depends on the worker count.
class Executor {
 public:
  explicit Executor(int workers = 1) : workers_(std::max(1, workers)) {}
  static int hardware() { return std::max(1u, std::thread::hardware_concurrency()); }

  int workers() const { return workers_; }

  // Calls body(begin, end, block) on `blocks` contiguous slices of [0, n).
  void for_blocks(std::uint64_t n, int blocks, const std::function<void(std::uint64_t, std::uint64_t, int)>& body) const {
    if (n == 0) return;
    blocks = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(blocks, n)));
    auto lo = [&](int b) { return n * b / blocks; };
    if (workers_ == 1 || blocks == 1) {
      for (int b = 0; b < blocks; ++b) body(lo(b), lo(b + 1), b);
      return;
    }
    std::vector<std::exception_ptr> errs(blocks);
    std::vector<std::thread> pool;
    std::atomic_int next{0};
    for (int w = 0; w < std::min(workers_, blocks); ++w)
      pool.emplace_back([&] {
        for (int b = next++; b < blocks; b = next++) {
          try {
            body(lo(b), lo(b + 1), b);
          } catch (...) {
            errs[b] = std::current_exception();
          }
        }
      });
    for (auto& t : pool) t.join();
    for (auto& e : errs)
      if (e) std::rethrow_exception(e);
  }

  // map over [0, n) with per-block results in block order.
  template <class R>
  std::vector<R> map_blocks(std::uint64_t n, const std::function<R(std::uint64_t, std::uint64_t)>& body) const {
    int blocks = workers_ == 1 ? 1 : workers_ * 8;
    blocks = static_cast<int>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(blocks, n)));
    std::vector<R> out(n == 0 ? 0 : blocks);
    for_blocks(n, blocks, [&](std::uint64_t b, std::uint64_t e, int i) { out[i] = body(b, e); });
    return out;
  }

 private:
  int workers_;
};

}  // namespace epitheta
