#pragma once

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "rkhs/kernel.hpp"

namespace rkhs::cli {

/// Deterministic uniform draws built on mt19937_64 directly, so output bytes
/// do not depend on the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  static std::uint64_t stream_seed(std::uint64_t seed, const std::string& tag) {
    std::uint64_t h = 1469598103934665603ull;  // fnv-1a
    for (char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return h ^ seed;
  }

  double uniform() {  // [0, 1)
    return double(eng_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  Complex disk(double rmax = 0.8) {
    while (true) {
      const Complex z(uniform(-rmax, rmax), uniform(-rmax, rmax));
      if (std::abs(z) < rmax) return z;
    }
  }

  Complex box(double half_width) {
    return {uniform(-half_width, half_width), uniform(-half_width, half_width)};
  }

  Point ball(int n, double rmax = 0.8) {
    while (true) {
      std::vector<Complex> cs(n);
      double norm2 = 0;
      for (auto& c : cs) {
        c = Complex(uniform(-1, 1), uniform(-1, 1));
        norm2 += std::norm(c);
      }
      if (norm2 < rmax * rmax) return Point(std::move(cs));
    }
  }

  /// A disk pair at exact pseudohyperbolic distance eps from a random center.
  std::pair<Complex, Complex> rho_pair(double eps, double center_rmax = 0.6) {
    const Complex c = disk(center_rmax);
    const double th = uniform(0, 2 * 3.14159265358979323846);
    const Complex t = std::polar(eps, th);
    return {c, (t + c) / (1.0 + std::conj(c) * t)};
  }

  Complex unit_complex() {
    return std::polar(1.0, uniform(0, 2 * 3.14159265358979323846));
  }

 private:
  std::mt19937_64 eng_;
};

inline int thread_cap() {
  if (const char* s = std::getenv("RKHS_GEOMETRY_THREADS")) {
    const int v = std::atoi(s);
    if (v >= 1) return v;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

/// Index-parallel loop with deterministic output: workers write by index,
/// never share accumulator state. Rethrows the first worker exception.
template <class F>
void parallel_for(long n, F&& f) {
  const long T = std::min<long>(thread_cap(), n);
  if (T <= 1) {
    for (long i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  workers.reserve(static_cast<std::size_t>(T));
  for (long t = 0; t < T; ++t) {
    workers.emplace_back([&] {
      for (long i; (i = next.fetch_add(1)) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace rkhs::cli
