#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <thread>
#include <vector>

#include "wiregrid/errors.hpp"

namespace wiregrid::numerics {

/// `count` points from lo to hi inclusive.
inline std::vector<double> linspace(double lo, double hi, std::size_t count) {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double step = (hi - lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) out[i] = lo + step * static_cast<double>(i);
  out.back() = hi;
  return out;
}

/// Composite trapezoid over sampled (x, y), x strictly increasing.
inline double trapezoid(std::span<const double> x, std::span<const double> y) {
  double sum = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) sum += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return sum;
}

/// Composite Simpson of f over [lo, hi] with an even number of intervals.
template <typename F>
double simpson(F&& f, double lo, double hi, std::size_t intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2) ++intervals;
  const double h = (hi - lo) / static_cast<double>(intervals);
  double sum = f(lo) + f(hi);
  for (std::size_t i = 1; i < intervals; ++i) sum += f(lo + h * static_cast<double>(i)) * (i % 2 ? 4.0 : 2.0);
  return sum * h / 3.0;
}

/// Trapezoid of the piecewise-linear interpolant of (x, y) restricted to [lo, hi].
/// Band edges need not be sample points.
inline double trapezoid_band(std::span<const double> x, std::span<const double> y, double lo, double hi) {
  if (x.size() < 2) throw NumericError("trapezoid_band: need at least two samples");
  if (!(lo < hi)) throw NumericError("trapezoid_band: lo must be < hi");
  if (lo < x.front() || hi > x.back()) throw NumericError("band exceeds the sampled range");
  auto lerp = [&](std::size_t i, double t) {
    const double f = (t - x[i]) / (x[i + 1] - x[i]);
    return y[i] + f * (y[i + 1] - y[i]);
  };
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double a = std::max(lo, x[i]);
    const double b = std::min(hi, x[i + 1]);
    if (!(b > a)) continue;
    sum += 0.5 * (b - a) * (lerp(i, a) + lerp(i, b));
  }
  return sum;
}

/// Splits [0, n) into contiguous chunks run on worker threads. `body(begin, end)`
/// must only write state owned by its index range.
template <typename Body>
void parallel_for(std::size_t n, Body&& body, unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(1, n / 64)));
  if (threads <= 1) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
}

}  // namespace wiregrid::numerics
