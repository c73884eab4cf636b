#include "spinterp/common.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "spinterp/rng.hpp"

namespace spinterp {

namespace {

double pairwise_sum_impl(const double* xs, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += xs[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(xs, half) + pairwise_sum_impl(xs + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> xs) {
  return pairwise_sum_impl(xs.data(), xs.size());
}

MeanStderr mean_and_stderr(std::span<const double> xs) {
  MeanStderr out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  out.mean = pairwise_sum(xs) / static_cast<double>(n);
  if (n < 2) return out;
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = xs[i] - out.mean;
    sq[i] = d * d;
  }
  const double var = pairwise_sum(sq) / static_cast<double>(n - 1);
  out.std_error = std::sqrt(var / static_cast<double>(n));
  return out;
}

void parallel_for(std::int64_t count, int threads,
                  const std::function<void(std::int64_t)>& body) {
  if (count <= 0) return;
  const int usable =
      std::min<std::int64_t>(std::max(threads, 1), count);
  if (usable <= 1) {
    for (std::int64_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(usable));
  for (int t = 0; t < usable; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::int64_t i = t; i < count; i += usable) body(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view task,
                          std::uint64_t index) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a over the task name
  for (unsigned char c : task) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix_bits(mix_bits(master ^ h) + kGoldenGamma * (index + 1));
}

}  // namespace spinterp
