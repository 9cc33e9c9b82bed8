#pragma once

#include <cmath>
#include <numbers>

#include "wiregrid/config.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/errors.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

/// Photon fates per source arm in the two-beam, grid-present case.
struct PhotonBudget {
  double absorbed = 0.0;                 ///< x
  double covered = 0.0;                  ///< y
  double diffracted_total = 0.0;         ///< = absorbed (Babinet accounting)
  double diffracted_to_detectors = 0.0;  ///< x·f_det
  double diffracted_away = 0.0;          ///< x·(1 − f_det)
  double detected = 0.0;                 ///< 1 − x − diffracted_away
  double undisturbed_detected = 0.0;     ///< 1 − 2x
  double detector_capture = 0.0;         ///< f_det

  struct Counts {
    double detected;
    double absorbed;
    double diffracted_away;
    double diffracted_to_detectors;
    double decrease;  ///< absorbed + diffracted_away
  };

  /// Expected (non-random) counts for N source photons.
  Counts counts(long long photons) const {
    const auto n = static_cast<double>(photons);
    return {detected * n, absorbed * n, diffracted_away * n, diffracted_to_detectors * n,
            (absorbed + diffracted_away) * n};
  }
};

struct SingleBeamBudget {
  double blocked = 0.0;
  double own_detector_decrease = 0.0;
  double wrong_detector = 0.0;
  double detector_half_width = 0.0;  ///< window used, radians
};

/// y = M·b / W. The beam height cancels.
inline double coverage_fraction(double wire_thickness, int wire_count, double beam_side) {
  return wire_count * wire_thickness / beam_side;
}

inline double coverage_fraction(const ValidConfig& vc) {
  return coverage_fraction(vc->wire_thickness, vc->wire_count, vc->beam_side);
}

/// x = M·(b/2 − (d/2π) sin(πb/d)) / (W/2): ∫cos²(πx/d) over the strips
/// centered on dark fringes, over ∫cos² across the beam (mean ½).
/// No validation, so boundary cases like b = d can be probed.
inline double absorbed_fraction(double wire_thickness, double wire_pitch, int wire_count, double beam_side) {
  const double t = std::numbers::pi * wire_thickness / wire_pitch;
  double t_minus_sin;
  if (t < 0.1) {
    // t − sin t = t³/3! − t⁵/5! + t⁷/7! − ...
    double term = t * t * t / 6.0;
    t_minus_sin = 0.0;
    for (int k = 1; k <= 6; ++k) {
      t_minus_sin += (k % 2 == 1) ? term : -term;
      term *= t * t / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
    }
  } else {
    t_minus_sin = t - std::sin(t);
  }
  const double per_wire = wire_pitch / (2.0 * std::numbers::pi) * t_minus_sin;
  return wire_count * per_wire / (beam_side / 2.0);
}

/// Small-b asymptote x ≈ M π² b³ / (6 d² W).
inline double absorbed_fraction_small_b(double wire_thickness, double wire_pitch, int wire_count,
                                        double beam_side) {
  return wire_count * std::numbers::pi * std::numbers::pi * std::pow(wire_thickness, 3) /
         (6.0 * wire_pitch * wire_pitch * beam_side);
}

inline double absorbed_fraction_two_beams(const ValidConfig& vc) {
  return absorbed_fraction(vc->wire_thickness, vc->wire_pitch, vc->wire_count, vc->beam_side);
}

/// Fraction of the diffracted (closed-form) pattern inside either detector
/// window, θ ∈ ±α/2 ± half-width. Windows are clipped to the pattern and merged if they overlap.
inline double detector_capture_fraction(const DiffractionPattern& pattern, const ExperimentConfig& c) {
  const double center = c.crossing_angle / 2.0;
  const double hw = c.detector_half_width;
  return band_power_union(pattern, {{center - hw, center + hw}, {-center - hw, -center + hw}});
}

inline double detector_capture_fraction(const ValidConfig& vc) {
  return detector_capture_fraction(two_beam_grid_pattern(vc), vc.get());
}

/// Assembles the exclusive fates from x and f_det.
inline PhotonBudget assemble_budget(double absorbed, double covered, double capture) {
  if (!(absorbed >= 0.0 && absorbed <= 0.5)) throw DomainError("absorbed fraction must lie in [0, 1/2]");
  if (!(capture >= 0.0 && capture <= 1.0)) throw DomainError("detector capture fraction must lie in [0, 1]");
  PhotonBudget b;
  b.absorbed = absorbed;
  b.covered = covered;
  b.diffracted_total = absorbed;
  b.detector_capture = capture;
  b.diffracted_to_detectors = absorbed * capture;
  b.diffracted_away = absorbed - b.diffracted_to_detectors;
  b.detected = 1.0 - absorbed - b.diffracted_away;
  b.undisturbed_detected = 1.0 - 2.0 * absorbed;
  return b;
}

inline PhotonBudget two_beam_budget(const ValidConfig& vc) {
  return assemble_budget(absorbed_fraction_two_beams(vc), coverage_fraction(vc), detector_capture_fraction(vc));
}

namespace detail {

inline double window_power(const FieldProfile& profile, double center, double half_width) {
  // 1e-6 rad steps resolve the λ/W main lobe and its sidelobes comfortably.
  const auto n = static_cast<std::size_t>(std::ceil(2.0 * half_width / 1e-6)) + 1;
  const auto grid = numerics::linspace(center - half_width, center + half_width, std::max<std::size_t>(n, 201));
  const auto pat = far_field_intensity(profile, grid);
  return numerics::trapezoid(pat.theta, pat.intensity);
}

}  // namespace detail

/// Uniform single beam on the grid. Detector counts are referenced to the
/// unobstructed beam: own decrease = 1 − P_own(masked)/P_own(clean); wrong =
/// (P_wrong(masked) − P_wrong(clean)) / P_own(clean), the light the wires add there.
inline SingleBeamBudget single_beam_budget(const ValidConfig& vc, int samples_per_wire = 64) {
  const ExperimentConfig& c = vc.get();
  const FieldProfile clean = single_beam_profile(vc, false, samples_per_wire);
  const FieldProfile masked = single_beam_profile(vc, true, samples_per_wire);
  const double own = c.crossing_angle / 2.0;
  const double wrong = -own;
  const double hw = c.detector_half_width;
  const double own_clean = detail::window_power(clean, own, hw);
  const double own_masked = detail::window_power(masked, own, hw);
  const double wrong_clean = detail::window_power(clean, wrong, hw);
  const double wrong_masked = detail::window_power(masked, wrong, hw);
  SingleBeamBudget out;
  out.blocked = coverage_fraction(vc);
  out.own_detector_decrease = 1.0 - own_masked / own_clean;
  out.wrong_detector = (wrong_masked - wrong_clean) / own_clean;
  out.detector_half_width = hw;
  return out;
}

}  // namespace wiregrid
