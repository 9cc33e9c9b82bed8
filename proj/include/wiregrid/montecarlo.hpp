#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <mutex>

#include "wiregrid/budget.hpp"
#include "wiregrid/complementarity.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/errors.hpp"
#include "wiregrid/numerics.hpp"
#include "wiregrid/philox.hpp"

namespace wiregrid {

struct FateCounts {
  long long detected_own = 0;             ///< undisturbed + diffracted into a detector
  long long absorbed = 0;
  long long diffracted_away = 0;
  long long diffracted_to_detectors = 0;  ///< subset of detected_own, carries no path information
  std::uint64_t seed = 0;
  long long total = 0;

  bool operator==(const FateCounts&) const = default;
};

enum class Fate : int { undisturbed = 0, absorbed = 1, diffracted_away = 2, diffracted_to_detector = 3 };

/// Category probabilities, in draw order: undisturbed, absorbed, diffracted away, diffracted to a detector.
inline std::array<double, 4> fate_probabilities(const PhotonBudget& b) {
  const std::array<double, 4> p{b.undisturbed_detected, b.absorbed, b.diffracted_away, b.diffracted_to_detectors};
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("fate probability outside [0, 1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw DomainError("fate probabilities do not sum to 1");
  return p;
}

/// Fate of photon `index`: one Philox draw compared against cumulative thresholds.
inline Fate photon_fate(const std::array<double, 3>& thresholds, std::uint64_t seed, std::uint64_t index) {
  const double u = Philox4x32::uniform(seed, index);
  if (u < thresholds[0]) return Fate::undisturbed;
  if (u < thresholds[1]) return Fate::absorbed;
  if (u < thresholds[2]) return Fate::diffracted_away;
  return Fate::diffracted_to_detector;
}

/// n independent categorical draws. Photon i's randomness depends only on
/// (seed, i); counts are identical for any thread count.
inline FateCounts sample_fates(const PhotonBudget& budget, long long n, std::uint64_t seed, unsigned threads = 0) {
  if (n < 1) throw DomainError("sample_fates: n must be positive");
  const auto p = fate_probabilities(budget);
  const std::array<double, 3> thresholds{p[0], p[0] + p[1], p[0] + p[1] + p[2]};

  std::array<long long, 4> tally{};
  std::mutex merge;
  numerics::parallel_for(
      static_cast<std::size_t>(n),
      [&](std::size_t begin, std::size_t end) {
        std::array<long long, 4> local{};
        for (std::size_t i = begin; i < end; ++i) ++local[static_cast<int>(photon_fate(thresholds, seed, i))];
        std::lock_guard lock(merge);
        for (int k = 0; k < 4; ++k) tally[k] += local[k];
      },
      threads);

  FateCounts c;
  c.absorbed = tally[1];
  c.diffracted_away = tally[2];
  c.diffracted_to_detectors = tally[3];
  c.detected_own = tally[0] + tally[3];
  c.seed = seed;
  c.total = c.detected_own + c.absorbed + c.diffracted_away;
  return c;
}

struct EmpiricalReport {
  double absorbed = 0.0;  ///< x̂
  double absorbed_se = 0.0;
  double visibility = 0.0;
  double visibility_se = 0.0;
  double classical_whichway = 0.0;
  double classical_whichway_se = 0.0;
  ComplementarityReport report;
};

/// Point estimates from counts; standard errors via the binomial variance of
/// x̂ and first-order propagation.
inline EmpiricalReport estimate_metrics(const FateCounts& counts, const ValidConfig& vc) {
  if (counts.total <= 0) throw DomainError("estimate_metrics: counts.total must be positive");
  const auto n = static_cast<double>(counts.total);
  EmpiricalReport r;
  r.absorbed = static_cast<double>(counts.absorbed) / n;
  r.absorbed_se = std::sqrt(r.absorbed * (1.0 - r.absorbed) / n);
  const double y = coverage_fraction(vc);
  r.classical_whichway = classical_whichway(r.absorbed);
  r.classical_whichway_se = 2.0 * r.absorbed_se;
  r.visibility = visibility_lower_bound(r.absorbed, y);
  r.visibility_se = std::abs(visibility_lower_bound_slope(r.absorbed, y)) * r.absorbed_se;
  r.report = complementarity_report(quantum_whichway(true), r.classical_whichway, r.visibility);
  return r;
}

}  // namespace wiregrid
