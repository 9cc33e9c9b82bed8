#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "wiregrid/budget.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

/// Built-in cross-checks between independent computation routes.

struct CheckResult {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

/// Normalized RMS between the numerical far field of the wire-strip
/// complement and the closed form, after a least-squares fit of the scale.
/// Samples where the numerical pattern is below 1e-3 of its peak (nulls) are excluded.
inline double oracle_rms_deviation(const ValidConfig& vc, int samples_per_wire = 256) {
  const auto grid = default_two_beam_theta_grid(vc);
  const DiffractionPattern numeric = far_field_intensity(complement_field_profile(vc, samples_per_wire), grid);
  const DiffractionPattern closed = two_beam_grid_pattern(vc, grid);
  const double peak = *std::max_element(numeric.intensity.begin(), numeric.intensity.end());
  double cross = 0.0, self = 0.0;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (numeric.intensity[i] < 1e-3 * peak) continue;
    kept.push_back(i);
    cross += numeric.intensity[i] * closed.intensity[i];
    self += closed.intensity[i] * closed.intensity[i];
  }
  const double scale = cross / self;
  double err = 0.0, ref = 0.0;
  for (std::size_t i : kept) {
    const double diff = numeric.intensity[i] - scale * closed.intensity[i];
    err += diff * diff;
    ref += numeric.intensity[i] * numeric.intensity[i];
  }
  return std::sqrt(err / ref);
}

/// max |A_full − A_masked − A_complement| / max |A_full| over a θ grid
/// spanning ±5λ/b, all three fields on the same cells.
inline double babinet_max_deviation(const ValidConfig& vc) {
  const ExperimentConfig& c = vc.get();
  const double reach = std::asin(std::min(0.95, 5.0 * c.wavelength / c.wire_thickness));
  const auto grid = numerics::linspace(-reach, reach, 2001);
  const auto full = far_field_amplitude(fringe_field_profile(vc, false), grid);
  const auto masked = far_field_amplitude(fringe_field_profile(vc, true), grid);
  const auto comp = far_field_amplitude(complement_field_profile(vc), grid);
  double peak = 0.0, dev = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    peak = std::max(peak, std::abs(full[i]));
    dev = std::max(dev, std::abs(full[i] - masked[i] - comp[i]));
  }
  return dev / peak;
}

/// x by composite Simpson quadrature of cos²(πx/d) over the strips, over W/2.
inline double absorbed_fraction_quadrature(const ValidConfig& vc, std::size_t intervals_per_wire = 2000) {
  const ExperimentConfig& c = vc.get();
  auto intensity = [&](double x) {
    const double e = std::cos(std::numbers::pi * x / c.wire_pitch);
    return e * e;
  };
  double sum = 0.0;
  for (double xc : wire_centers(c))
    sum += numerics::simpson(intensity, xc - c.wire_thickness / 2.0, xc + c.wire_thickness / 2.0, intervals_per_wire);
  return sum / (c.beam_side / 2.0);
}

inline std::vector<CheckResult> cross_validation_suite(const ValidConfig& vc) {
  std::vector<CheckResult> out;
  const double consistency = derive_geometry(vc).fringe_consistency;
  out.push_back({"fringe_consistency", consistency, 0.01, consistency <= 0.01});
  const double rms = oracle_rms_deviation(vc);
  out.push_back({"fourier_oracle_vs_closed_form_rms", rms, 0.01, rms < 0.01});
  const double babinet = babinet_max_deviation(vc);
  out.push_back({"babinet_amplitude_linearity", babinet, 1e-10, babinet < 1e-10});
  const double x = absorbed_fraction_two_beams(vc);
  const double xq = absorbed_fraction_quadrature(vc);
  const double rel = std::abs(x - xq) / x;
  out.push_back({"absorbed_closed_form_vs_quadrature", rel, 1e-10, rel < 1e-10});
  return out;
}

}  // namespace wiregrid
