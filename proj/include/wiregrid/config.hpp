#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "wiregrid/errors.hpp"

namespace wiregrid {

/// Physical parameters of the two-beam wire-grid interferometer.
/// SI units throughout: meters and radians.
struct ExperimentConfig {
  double wavelength = 638e-9;
  double wire_thickness = 32e-6;
  double wire_pitch = 319e-6;  ///< center-to-center wire separation
  int wire_count = 6;
  double beam_side = 2.55e-3;  ///< side of the square beam cross section
  double crossing_angle = 0.002;  ///< full angle between the beams
  double detector_half_width = 0.0005;  ///< angular half-acceptance of each detector
  long long photon_count = 1'000'000;  ///< photons per source arm

  bool operator==(const ExperimentConfig&) const = default;
};

/// An ExperimentConfig that has passed validate_config(). Downstream
/// operations only accept this type.
class ValidConfig {
 public:
  const ExperimentConfig& get() const noexcept { return config_; }
  const ExperimentConfig* operator->() const noexcept { return &config_; }
  operator const ExperimentConfig&() const noexcept { return config_; }

 private:
  explicit ValidConfig(ExperimentConfig c) : config_(std::move(c)) {}
  friend ValidConfig validate_config(const ExperimentConfig&);
  ExperimentConfig config_;
};

namespace detail {
inline void require_positive(double value, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw ConfigError(field, "must be finite and > 0 (got " + std::to_string(value) + ")");
}
}  // namespace detail

inline ValidConfig validate_config(const ExperimentConfig& c) {
  detail::require_positive(c.wavelength, "wavelength");
  detail::require_positive(c.wire_thickness, "wire_thickness");
  detail::require_positive(c.wire_pitch, "wire_pitch");
  detail::require_positive(c.beam_side, "beam_side");
  detail::require_positive(c.crossing_angle, "crossing_angle");
  detail::require_positive(c.detector_half_width, "detector_half_width");
  if (c.wire_count < 2)
    throw ConfigError("wire_count", "must be >= 2 (got " + std::to_string(c.wire_count) + ")");
  if (c.wire_count % 2 != 0)
    throw ConfigError("wire_count", "must be even (got " + std::to_string(c.wire_count) + ")");
  if (c.photon_count < 1)
    throw ConfigError("photon_count", "must be >= 1 (got " + std::to_string(c.photon_count) + ")");
  if (!(c.wire_thickness < c.wire_pitch))
    throw ConfigError("wire_thickness", "must be < wire_pitch, wires would touch");
  if (c.wire_count * c.wire_pitch > c.beam_side * (1.0 + 1e-12))
    throw ConfigError("wire_count", "wire_count * wire_pitch must be <= beam_side, grid must fit in the beam");
  if (!(c.crossing_angle < 0.1))
    throw ConfigError("crossing_angle", "must be < 0.1 rad (small-angle regime)");
  return ValidConfig(c);
}

struct DerivedGeometry {
  double wavenumber;         ///< 2π/λ
  double fringe_spacing;     ///< λ / (2 sin(α/2))
  std::pair<double, double> detector_angles;  ///< (−α/2, +α/2)
  double beam_area;          ///< W²
  double fringe_consistency; ///< |fringe_spacing − d| / d
};

inline DerivedGeometry derive_geometry(const ValidConfig& vc) {
  const ExperimentConfig& c = vc.get();
  const double spacing = c.wavelength / (2.0 * std::sin(c.crossing_angle / 2.0));
  return DerivedGeometry{
      .wavenumber = 2.0 * std::numbers::pi / c.wavelength,
      .fringe_spacing = spacing,
      .detector_angles = {-c.crossing_angle / 2.0, c.crossing_angle / 2.0},
      .beam_area = c.beam_side * c.beam_side,
      .fringe_consistency = std::abs(spacing - c.wire_pitch) / c.wire_pitch,
  };
}

/// Centers of the M wires, ±d/2, ±3d/2, ..., ascending.
inline std::vector<double> wire_centers(const ExperimentConfig& c) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(c.wire_count));
  const int half = c.wire_count / 2;
  for (int n = half; n >= 1; --n) out.push_back(-(2 * n - 1) * c.wire_pitch / 2.0);
  for (int n = 1; n <= half; ++n) out.push_back((2 * n - 1) * c.wire_pitch / 2.0);
  return out;
}

}  // namespace wiregrid
