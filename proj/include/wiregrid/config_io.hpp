#pragma once

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>

#include "wiregrid/config.hpp"
#include "wiregrid/errors.hpp"

namespace wiregrid {

// Line-oriented `key = value` config text:
//
//   # comment
//   wavelength = 638 nm
//   wire_thickness = 32 um
//   wire_count = 6
//
// Lengths take nm, um (also μm, µm), mm or m; angles take rad or mrad; counts
// are bare integers. Missing keys keep the defaults.

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

enum class Dimension { length, angle, count };

inline Dimension dimension_of(std::string_view key, std::size_t line) {
  if (key == "wavelength" || key == "wire_thickness" || key == "wire_pitch" || key == "beam_side")
    return Dimension::length;
  if (key == "crossing_angle" || key == "detector_half_width") return Dimension::angle;
  if (key == "wire_count" || key == "photon_count") return Dimension::count;
  throw ParseError(line, "unknown key '" + std::string(key) + "'");
}

inline double unit_scale(Dimension dim, std::string_view unit, std::size_t line) {
  if (unit.empty()) throw UnitError(line, std::string(unit), "missing unit for dimensional value");
  if (dim == Dimension::length) {
    if (unit == "nm") return 1e-9;
    if (unit == "um" || unit == "\xCE\xBCm" || unit == "\xC2\xB5m") return 1e-6;
    if (unit == "mm") return 1e-3;
    if (unit == "m") return 1.0;
    throw UnitError(line, std::string(unit), "not a length unit");
  }
  if (unit == "rad") return 1.0;
  if (unit == "mrad") return 1e-3;
  throw UnitError(line, std::string(unit), "not an angle unit");
}

}  // namespace detail

/// Applies one `key`/`value` pair. `line` is only used in error messages.
inline void apply_setting(ExperimentConfig& c, std::string_view key, std::string_view value, std::size_t line = 0) {
  key = detail::trim(key);
  value = detail::trim(value);
  const detail::Dimension dim = detail::dimension_of(key, line);
  if (value.empty()) throw ParseError(line, "missing value for '" + std::string(key) + "'");

  if (dim == detail::Dimension::count) {
    long long n = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), n);
    if (ec != std::errc{} || ptr != value.data() + value.size())
      throw ParseError(line, "expected an integer for '" + std::string(key) + "', got '" + std::string(value) + "'");
    if (key == "wire_count") {
      if (n > 1'000'000 || n < -1'000'000) throw ParseError(line, "wire_count out of range");
      c.wire_count = static_cast<int>(n);
    } else {
      c.photon_count = n;
    }
    return;
  }

  double number = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
  if (ec != std::errc{}) throw ParseError(line, "expected a number for '" + std::string(key) + "', got '" + std::string(value) + "'");
  const std::string_view unit = detail::trim(value.substr(static_cast<std::size_t>(ptr - value.data())));
  const double si = number * detail::unit_scale(dim, unit, line);
  if (key == "wavelength") c.wavelength = si;
  else if (key == "wire_thickness") c.wire_thickness = si;
  else if (key == "wire_pitch") c.wire_pitch = si;
  else if (key == "beam_side") c.beam_side = si;
  else if (key == "crossing_angle") c.crossing_angle = si;
  else c.detector_half_width = si;
}

/// Parses text onto `base` without validating.
inline ExperimentConfig parse_config_unvalidated(std::string_view text, ExperimentConfig base = {}) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    apply_setting(base, line.substr(0, eq), line.substr(eq + 1), line_no);
  }
  return base;
}

inline ValidConfig parse_config(std::string_view text) { return validate_config(parse_config_unvalidated(text)); }

/// Applies a `KEY=VALUE` override.
inline void apply_override(ExperimentConfig& c, std::string_view assignment) {
  const std::size_t eq = assignment.find('=');
  if (eq == std::string_view::npos)
    throw ParseError(0, "override must be KEY=VALUE, got '" + std::string(assignment) + "'");
  apply_setting(c, assignment.substr(0, eq), assignment.substr(eq + 1));
}

}  // namespace wiregrid
