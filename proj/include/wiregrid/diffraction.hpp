#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "wiregrid/config.hpp"
#include "wiregrid/errors.hpp"
#include "wiregrid/numerics.hpp"

namespace wiregrid {

/// Sampled relative intensity I(θ). The overall constant is arbitrary, only
/// ratios of integrals over the same pattern carry meaning.
struct DiffractionPattern {
  static constexpr std::string_view scale_note =
      "relative intensity, arbitrary overall scale; only ratios of integrals are meaningful";

  std::vector<double> theta;
  std::vector<double> intensity;

  void check() const {
    if (theta.size() < 3) throw NumericError("pattern needs at least 3 samples");
    if (theta.size() != intensity.size()) throw NumericError("pattern theta/intensity size mismatch");
    for (std::size_t i = 1; i < theta.size(); ++i)
      if (!(theta[i] > theta[i - 1])) throw NumericError("pattern theta must be strictly increasing");
    for (double v : intensity)
      if (!(v >= 0.0)) throw NumericError("pattern intensity must be non-negative");
  }
};

/// Real scalar field across the aperture at the grid plane, stored as
/// midpoint-rule cells. Cells come in uniform runs whose boundaries include
/// every strip edge, so jumps in the masked field fall on cell boundaries.
/// `carrier_sine` is sin of the propagation tilt: the physical field is
/// amplitude(x)·exp(iκ x carrier_sine).
struct FieldProfile {
  struct Run {
    std::size_t begin;
    std::size_t end;
  };

  std::vector<double> x;          ///< cell centers, strictly increasing
  std::vector<double> weight;     ///< cell widths
  std::vector<double> amplitude;  ///< signed real amplitude per cell
  std::vector<Run> runs;          ///< uniform sub-grids, contiguous and ordered
  double wavenumber = 0.0;
  double carrier_sine = 0.0;
  double aperture_lo = 0.0;
  double aperture_hi = 0.0;

  double max_cell_width() const { return weight.empty() ? 0.0 : *std::max_element(weight.begin(), weight.end()); }
};

namespace detail {

/// Piecewise-uniform cells over [breaks.front(), breaks.back()], no cell wider
/// than max_cell. Each interval between consecutive breaks becomes one run.
inline FieldProfile make_cells(std::span<const double> breaks, double max_cell) {
  FieldProfile p;
  p.aperture_lo = breaks.front();
  p.aperture_hi = breaks.back();
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double lo = breaks[k];
    const double len = breaks[k + 1] - lo;
    if (!(len > 0.0)) continue;
    // Tolerate round-off so that len == n * max_cell gives exactly n cells.
    auto n = static_cast<std::size_t>(std::ceil(len / max_cell * (1.0 - 1e-12)));
    n = std::max<std::size_t>(n, 1);
    const double h = len / static_cast<double>(n);
    const std::size_t begin = p.x.size();
    for (std::size_t j = 0; j < n; ++j) {
      p.x.push_back(lo + (static_cast<double>(j) + 0.5) * h);
      p.weight.push_back(h);
    }
    p.runs.push_back({begin, p.x.size()});
  }
  return p;
}

struct StripLayout {
  std::vector<double> breaks;
  std::vector<bool> run_is_strip;
};

inline StripLayout strip_layout(const ExperimentConfig& c) {
  StripLayout s;
  s.breaks.push_back(-c.beam_side / 2.0);
  s.run_is_strip.push_back(false);
  for (double xc : wire_centers(c)) {
    s.breaks.push_back(xc - c.wire_thickness / 2.0);
    s.run_is_strip.push_back(true);
    s.breaks.push_back(xc + c.wire_thickness / 2.0);
    s.run_is_strip.push_back(false);
  }
  s.breaks.push_back(c.beam_side / 2.0);
  return s;
}

enum class Region { everywhere, outside_strips, strips_only };

template <typename Amplitude>
FieldProfile strip_aligned_profile(const ExperimentConfig& c, int samples_per_wire, Region region,
                                   Amplitude&& amplitude) {
  if (samples_per_wire < 64) throw NumericError("samples_per_wire must be >= 64");
  const StripLayout layout = strip_layout(c);
  FieldProfile p = make_cells(layout.breaks, c.wire_thickness / samples_per_wire);
  p.wavenumber = 2.0 * std::numbers::pi / c.wavelength;
  p.amplitude.assign(p.x.size(), 0.0);
  for (std::size_t r = 0; r < p.runs.size(); ++r) {
    const bool strip = layout.run_is_strip[r];
    const bool keep = region == Region::everywhere || (region == Region::strips_only ? strip : !strip);
    if (!keep) continue;
    for (std::size_t i = p.runs[r].begin; i < p.runs[r].end; ++i) p.amplitude[i] = amplitude(p.x[i]);
  }
  return p;
}

}  // namespace detail

/// Two-beam fringe field E(x) ∝ cos(πx/d): dark fringes (zeros) at x = (n+½)d,
/// which is where the wire centers sit. With `grid_present` the field is zero
/// on every wire strip.
inline FieldProfile fringe_field_profile(const ValidConfig& vc, bool grid_present, int samples_per_wire = 64) {
  const ExperimentConfig& c = vc.get();
  const double d = c.wire_pitch;
  return detail::strip_aligned_profile(
      c, samples_per_wire, grid_present ? detail::Region::outside_strips : detail::Region::everywhere,
      [d](double x) { return std::cos(std::numbers::pi * x / d); });
}

/// Babinet complement of the masked fringe field: the fringe field on the
/// wire strips only, zero elsewhere. Shares cells with fringe_field_profile.
inline FieldProfile complement_field_profile(const ValidConfig& vc, int samples_per_wire = 64) {
  const ExperimentConfig& c = vc.get();
  const double d = c.wire_pitch;
  return detail::strip_aligned_profile(c, samples_per_wire, detail::Region::strips_only,
                                       [d](double x) { return std::cos(std::numbers::pi * x / d); });
}

/// One uniform beam tilted by +α/2, optionally with the wire strips zeroed.
inline FieldProfile single_beam_profile(const ValidConfig& vc, bool grid_present, int samples_per_wire = 64) {
  const ExperimentConfig& c = vc.get();
  FieldProfile p = detail::strip_aligned_profile(
      c, samples_per_wire, grid_present ? detail::Region::outside_strips : detail::Region::everywhere,
      [](double) { return 1.0; });
  p.carrier_sine = std::sin(c.crossing_angle / 2.0);
  return p;
}

/// Uniformly sampled profile over [lo, hi] with `cells` equal cells.
template <typename Amplitude>
FieldProfile sampled_profile(double lo, double hi, std::size_t cells, double wavelength, Amplitude&& amplitude) {
  if (!(hi > lo) || cells < 1) throw NumericError("sampled_profile: empty aperture");
  const double breaks[2] = {lo, hi};
  FieldProfile p = detail::make_cells(breaks, (hi - lo) / static_cast<double>(cells));
  p.wavenumber = 2.0 * std::numbers::pi / wavelength;
  p.amplitude.resize(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) p.amplitude[i] = amplitude(p.x[i]);
  return p;
}

namespace detail {

inline void check_sampling(const FieldProfile& p, std::span<const double> theta) {
  if (p.x.empty() || p.x.size() != p.weight.size() || p.x.size() != p.amplitude.size())
    throw NumericError("field profile is empty or inconsistent");
  if (!(p.wavenumber > 0.0)) throw NumericError("field profile has no wavenumber");
  for (std::size_t i = 1; i < theta.size(); ++i)
    if (!(theta[i] > theta[i - 1])) throw NumericError("theta grid must be strictly increasing");
  double max_offset = 0.0;
  for (double t : theta) max_offset = std::max(max_offset, std::abs(std::sin(t) - p.carrier_sine));
  if (max_offset == 0.0) return;
  const double wavelength = 2.0 * std::numbers::pi / p.wavenumber;
  const double period = wavelength / max_offset;
  if (p.max_cell_width() > period / 8.0)
    throw NumericError("field profile too coarse: fewer than 8 samples per oscillation at the largest |theta|");
}

/// Runs with at least one nonzero amplitude.
inline std::vector<char> active_runs(const FieldProfile& p) {
  std::vector<char> active(p.runs.size(), 0);
  for (std::size_t r = 0; r < p.runs.size(); ++r)
    for (std::size_t i = p.runs[r].begin; i < p.runs[r].end; ++i)
      if (p.amplitude[i] != 0.0) {
        active[r] = 1;
        break;
      }
  return active;
}

inline std::complex<double> fourier_sum(const FieldProfile& p, const std::vector<char>& active, double q) {
  // Σ w·E·exp(−i q x) with a phasor recurrence inside each uniform run,
  // re-seeded every 256 cells to bound drift.
  constexpr std::size_t reseed = 256;
  std::complex<double> total{0.0, 0.0};
  for (std::size_t r = 0; r < p.runs.size(); ++r) {
    if (!active[r]) continue;
    const auto& run = p.runs[r];
    const double h = run.end - run.begin > 1 ? p.x[run.begin + 1] - p.x[run.begin] : 0.0;
    const std::complex<double> step = std::polar(1.0, -q * h);
    std::complex<double> phase;
    for (std::size_t i = run.begin; i < run.end; ++i) {
      if ((i - run.begin) % reseed == 0) phase = std::polar(1.0, -q * p.x[i]);
      total += (p.weight[i] * p.amplitude[i]) * phase;
      phase *= step;
    }
  }
  return total;
}

}  // namespace detail

/// Far-field amplitude ∫E(x)·exp(−iκx(sinθ − carrier))dx at each θ.
inline std::vector<std::complex<double>> far_field_amplitude(const FieldProfile& profile,
                                                             std::span<const double> theta_grid,
                                                             unsigned threads = 0) {
  detail::check_sampling(profile, theta_grid);
  const auto active = detail::active_runs(profile);
  std::vector<std::complex<double>> out(theta_grid.size());
  numerics::parallel_for(
      theta_grid.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          const double q = profile.wavenumber * (std::sin(theta_grid[i]) - profile.carrier_sine);
          out[i] = detail::fourier_sum(profile, active, q);
        }
      },
      threads);
  return out;
}

inline DiffractionPattern far_field_intensity(const FieldProfile& profile, std::span<const double> theta_grid,
                                              unsigned threads = 0) {
  const auto amp = far_field_amplitude(profile, theta_grid, threads);
  DiffractionPattern pat;
  pat.theta.assign(theta_grid.begin(), theta_grid.end());
  pat.intensity.reserve(amp.size());
  for (const auto& a : amp) pat.intensity.push_back(std::norm(a));
  return pat;
}

// Closed-form two-beam wire-grid diffraction.

namespace detail {

/// (b q cos(bq/2) − 2 sin(bq/2)) / (q² b²) for q ≥ 0. Series below |bq/2| < 0.1,
/// where the direct form loses digits to cancellation.
inline double wire_envelope_amplitude(double q, double b) {
  if (q == 0.0) return 0.0;
  const double v = 0.5 * b * q;
  if (v < 0.1) {
    // 2(v cos v − sin v) = 2 Σ_{k≥1} (−1)^k 2k v^{2k+1} / (2k+1)!
    double sum = 0.0;
    double power = 1.0;           // v^{2k−2}
    double factorial = 6.0;       // (2k+1)!
    for (int k = 1; k <= 7; ++k) {
      const double term = 2.0 * k * power / factorial;
      sum += (k % 2 == 1) ? -term : term;
      power *= v * v;
      factorial *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    // 2 v³ / (q² b²) = b q / 4
    return 0.25 * b * q * sum;
  }
  return (b * q * std::cos(v) - 2.0 * std::sin(v)) / (q * q * b * b);
}

/// Alternating array factor Σ_{n=1}^{M/2} (−1)^{n−1} sin((2n−1) d q / 2).
inline double alternating_array_factor(double q, double d, int wire_count) {
  double sum = 0.0;
  for (int n = 1; n <= wire_count / 2; ++n) {
    const double term = std::sin((2 * n - 1) * d * q / 2.0);
    sum += (n % 2 == 1) ? term : -term;
  }
  return sum;
}

}  // namespace detail

/// Signed far-field amplitude of the wire-strip field (or equivalently the
/// diffracted part of the masked two-beam field), scale Λ = b⁻⁴ in intensity.
inline double two_beam_grid_amplitude(double theta, const ExperimentConfig& c) {
  const double q = 2.0 * std::numbers::pi / c.wavelength * std::abs(std::sin(theta));
  return detail::wire_envelope_amplitude(q, c.wire_thickness) *
         detail::alternating_array_factor(q, c.wire_pitch, c.wire_count);
}

/// I(θ) ∝ (κ sinθ)⁻⁴ {bκ sinθ cos(bκ sinθ/2) − 2 sin(bκ sinθ/2)}² {Σ(−1)^{n−1} sin((2n−1)dκ sinθ/2)}².
/// Even in θ exactly; I(0) = 0.
inline double two_beam_grid_intensity(double theta, const ValidConfig& vc) {
  const double a = two_beam_grid_amplitude(theta, vc.get());
  return a * a;
}

inline DiffractionPattern two_beam_grid_pattern(const ValidConfig& vc, std::span<const double> theta_grid) {
  DiffractionPattern pat;
  pat.theta.assign(theta_grid.begin(), theta_grid.end());
  pat.intensity.reserve(theta_grid.size());
  for (double t : theta_grid) pat.intensity.push_back(two_beam_grid_intensity(t, vc));
  pat.check();
  return pat;
}

/// Default totals range: sinθ ∈ ±20λ/b, clipped to |sinθ| ≤ 0.95, with at least
/// `samples_per_period` samples per array period λ/d in sinθ. Always odd, so θ = 0 is a sample.
inline std::vector<double> default_two_beam_theta_grid(const ValidConfig& vc, int samples_per_period = 64) {
  const ExperimentConfig& c = vc.get();
  const double smax = std::min(20.0 * c.wavelength / c.wire_thickness, 0.95);
  const double tmax = std::asin(smax);
  const double period = c.wavelength / c.wire_pitch;
  auto half = static_cast<std::size_t>(std::ceil(smax / period * samples_per_period));
  return numerics::linspace(-tmax, tmax, 2 * half + 1);
}

inline DiffractionPattern two_beam_grid_pattern(const ValidConfig& vc) {
  const auto grid = default_two_beam_theta_grid(vc);
  return two_beam_grid_pattern(vc, grid);
}

/// (∫_band I dθ) / (∫_all I dθ), trapezoid with linear interpolation at band edges.
inline double band_power(const DiffractionPattern& pattern, double theta_lo, double theta_hi) {
  pattern.check();
  if (!(theta_lo < theta_hi)) throw NumericError("band_power: theta_lo must be < theta_hi");
  if (theta_lo < pattern.theta.front() || theta_hi > pattern.theta.back())
    throw NumericError("band_power: band exceeds the sampled range");
  const double total = numerics::trapezoid(pattern.theta, pattern.intensity);
  if (!(total > 0.0)) throw NumericError("band_power: pattern carries no power");
  return numerics::trapezoid_band(pattern.theta, pattern.intensity, theta_lo, theta_hi) / total;
}

/// Union of bands clipped to the pattern's range, as a fraction of the total.
inline double band_power_union(const DiffractionPattern& pattern, std::vector<std::pair<double, double>> bands) {
  pattern.check();
  for (auto& [lo, hi] : bands) {
    lo = std::max(lo, pattern.theta.front());
    hi = std::min(hi, pattern.theta.back());
  }
  std::erase_if(bands, [](const auto& b) { return !(b.second > b.first); });
  std::sort(bands.begin(), bands.end());
  std::vector<std::pair<double, double>> merged;
  for (const auto& b : bands) {
    if (!merged.empty() && b.first <= merged.back().second)
      merged.back().second = std::max(merged.back().second, b.second);
    else
      merged.push_back(b);
  }
  double sum = 0.0;
  for (const auto& [lo, hi] : merged) sum += band_power(pattern, lo, hi);
  return sum;
}

/// Tail heuristic: assumes I ~ C/θ² beyond each edge, so the missing power on
/// a side is about ⟨I⟩_edge·|θ_edge|, with ⟨I⟩ averaged over the outer 5% of
/// samples to wash out fringes. Returns estimated captured/(captured + tails).
inline double captured_power_estimate(const DiffractionPattern& pattern) {
  pattern.check();
  const std::size_t n = pattern.theta.size();
  const std::size_t k = std::max<std::size_t>(2, n / 20);
  auto mean = [&](std::size_t b, std::size_t e) {
    double s = 0.0;
    for (std::size_t i = b; i < e; ++i) s += pattern.intensity[i];
    return s / static_cast<double>(e - b);
  };
  const double total = numerics::trapezoid(pattern.theta, pattern.intensity);
  const double tails = mean(0, k) * std::abs(pattern.theta.front()) + mean(n - k, n) * std::abs(pattern.theta.back());
  return total / (total + tails);
}

enum class Side { positive, negative };

struct PeakBounds {
  double theta_lo;
  double theta_hi;
  double theta_peak;
};

/// First principal peak on one side of θ = 0: the first local maximum (walking
/// outward) that exceeds both neighbouring local maxima, bracketed by the local
/// minima on either side of it.
inline PeakBounds first_peak_bounds(const DiffractionPattern& pattern, Side side) {
  pattern.check();
  const auto& I = pattern.intensity;
  const auto n = static_cast<std::ptrdiff_t>(I.size());
  // Outward walk as a sequence of indices starting at the sample closest to 0.
  std::vector<std::size_t> walk;
  if (side == Side::positive) {
    auto it = std::lower_bound(pattern.theta.begin(), pattern.theta.end(), 0.0);
    for (auto i = it - pattern.theta.begin(); i < n; ++i) walk.push_back(static_cast<std::size_t>(i));
  } else {
    auto it = std::upper_bound(pattern.theta.begin(), pattern.theta.end(), 0.0);
    for (auto i = (it - pattern.theta.begin()) - 1; i >= 0; --i) walk.push_back(static_cast<std::size_t>(i));
  }
  if (walk.size() < 3) throw NumericError("first_peak_bounds: too few samples on the requested side");

  std::vector<std::size_t> maxima;  // positions within `walk`
  for (std::size_t k = 1; k + 1 < walk.size(); ++k) {
    const double v = I[walk[k]];
    if (v > I[walk[k - 1]] && v >= I[walk[k + 1]]) maxima.push_back(k);
  }
  std::optional<std::size_t> chosen;
  for (std::size_t m = 0; m < maxima.size(); ++m) {
    const double v = I[walk[maxima[m]]];
    const bool above_prev = m == 0 || v > I[walk[maxima[m - 1]]];
    const bool above_next = m + 1 == maxima.size() || v > I[walk[maxima[m + 1]]];
    if (above_prev && above_next) {
      chosen = maxima[m];
      break;
    }
  }
  if (!chosen) throw NumericError("first_peak_bounds: no interior local maximum on the requested side");

  std::size_t inner = *chosen;
  while (inner > 0 && I[walk[inner - 1]] <= I[walk[inner]]) --inner;
  std::size_t outer = *chosen;
  while (outer + 1 < walk.size() && I[walk[outer + 1]] <= I[walk[outer]]) ++outer;

  double a = pattern.theta[walk[inner]];
  double b = pattern.theta[walk[outer]];
  if (a > b) std::swap(a, b);
  return {a, b, pattern.theta[walk[*chosen]]};
}

/// Far field of one uniform beam (tilted +α/2) with the strips zeroed, over
/// sinθ ∈ sin(α/2) ± 5λ/b, sampled at ≤ λ/(16W) so the main lobe is resolved.
inline DiffractionPattern single_beam_far_field(const ValidConfig& vc, bool grid_present, unsigned threads = 0) {
  const ExperimentConfig& c = vc.get();
  const FieldProfile profile = single_beam_profile(vc, grid_present);
  const double center = std::sin(c.crossing_angle / 2.0);
  const double reach = 5.0 * c.wavelength / c.wire_thickness;
  const double lo = std::asin(std::max(-0.95, center - reach));
  const double hi = std::asin(std::min(0.95, center + reach));
  const double step = c.wavelength / (16.0 * c.beam_side);
  const auto count = static_cast<std::size_t>(std::ceil((hi - lo) / step)) + 1;
  const auto grid = numerics::linspace(lo, hi, count);
  return far_field_intensity(profile, grid, threads);
}

inline DiffractionPattern single_beam_masked_far_field(const ValidConfig& vc, unsigned threads = 0) {
  return single_beam_far_field(vc, true, threads);
}

}  // namespace wiregrid
