#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "wiregrid/budget.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/errors.hpp"

namespace wiregrid {

struct VisibilityInputs {
  double i_max;
  double i_min;
};

/// V = (I_max − I_min) / (I_max + I_min).
inline double visibility_from_intensities(const VisibilityInputs& in) {
  if (!(in.i_min >= 0.0) || !(in.i_max >= in.i_min))
    throw DomainError("visibility requires i_max >= i_min >= 0");
  if (in.i_max == 0.0) throw DomainError("visibility undefined for i_max = i_min = 0");
  return (in.i_max - in.i_min) / (in.i_max + in.i_min);
}

/// Square-profile intensities consistent with the counts: absorbed photons
/// spread over the dark strips, the rest over the remaining area.
inline VisibilityInputs square_profile_intensities(double x, double y, double photons = 1.0, double area = 1.0) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("coverage y must lie in (0, 1)");
  return {(1.0 - x) * photons / ((1.0 - y) * area), x * photons / (y * area)};
}

/// Worst-case visibility given absorbed fraction x and covered fraction y.
inline double visibility_lower_bound(double x, double y) {
  if (!(y > 0.0 && y < 1.0)) throw DomainError("coverage y must lie in (0, 1)");
  if (!(x >= 0.0 && x < 1.0)) throw DomainError("absorbed fraction x must lie in [0, 1)");
  const double high = (1.0 - x) / (1.0 - y);
  const double low = x / y;
  if (low > high) throw DomainError("absorbed fraction exceeds the uniform share, bound would be negative");
  return (high - low) / (high + low);
}

/// dV/dx of visibility_lower_bound at fixed y.
inline double visibility_lower_bound_slope(double x, double y) {
  const double sum = (1.0 - x) / (1.0 - y) + x / y;
  return -2.0 / (y * (1.0 - y) * sum * sum);
}

/// K' ≥ 1 − 2x: photons neither absorbed nor diffracted carry the path.
inline double classical_whichway(double x) {
  if (!(x >= 0.0)) throw DomainError("absorbed fraction x must be >= 0");
  if (x > 0.5) throw DomainError("classical which-way bound undefined for x > 1/2");
  return 1.0 - 2.0 * x;
}

/// Both arms are identical, with or without the grid, so the paths are
/// indistinguishable.
inline double quantum_whichway(bool /*grid_present*/) { return 0.0; }

struct ComplementarityReport {
  double visibility_lower = 0.0;
  double quantum_whichway = 0.0;
  double classical_whichway_lower = 0.0;
  double quantum_sum = 0.0;
  double classical_sum = 0.0;
  bool quantum_inequality_satisfied = false;  ///< K² + V² ≤ 1
  bool classical_sum_below_two = false;       ///< K'² + V² < 2
};

inline ComplementarityReport complementarity_report(double k, double k_classical, double v) {
  auto in_unit = [](double a) { return a >= 0.0 && a <= 1.0; };
  if (!in_unit(k) || !in_unit(k_classical) || !in_unit(v))
    throw DomainError("complementarity_report inputs must lie in [0, 1]");
  ComplementarityReport r;
  r.visibility_lower = v;
  r.quantum_whichway = k;
  r.classical_whichway_lower = k_classical;
  r.quantum_sum = k * k + v * v;
  r.classical_sum = k_classical * k_classical + v * v;
  r.quantum_inequality_satisfied = r.quantum_sum <= 1.0;
  r.classical_sum_below_two = r.classical_sum < 2.0;
  return r;
}

/// Report for the grid-present two-beam setup at the configured b.
inline ComplementarityReport grid_report(const ValidConfig& vc) {
  const double x = absorbed_fraction_two_beams(vc);
  const double y = coverage_fraction(vc);
  return complementarity_report(quantum_whichway(true), classical_whichway(x), visibility_lower_bound(x, y));
}

struct SweepRow {
  double wire_thickness = 0.0;
  double absorbed = 0.0;  ///< x
  double covered = 0.0;   ///< y
  std::optional<double> visibility_lower;
  std::optional<double> classical_whichway_lower;
  double quantum_whichway = 0.0;
  std::optional<double> quantum_sum;
  std::optional<double> classical_sum;
  std::string status;  ///< empty when the row is fully in domain
};

/// Rows for V², K'², and their sums versus wire thickness. Row-level domain
/// problems are recorded in `status`, never thrown.
inline std::vector<SweepRow> sweep_thickness(const ValidConfig& vc, const std::vector<double>& b_values) {
  if (!std::is_sorted(b_values.begin(), b_values.end()))
    throw DomainError("sweep_thickness: b values must be sorted ascending");
  std::vector<SweepRow> rows;
  rows.reserve(b_values.size());
  for (double b : b_values) {
    SweepRow row;
    row.wire_thickness = b;
    ExperimentConfig c = vc.get();
    c.wire_thickness = b;
    try {
      const ValidConfig v = validate_config(c);
      row.absorbed = absorbed_fraction_two_beams(v);
      row.covered = coverage_fraction(v);
    } catch (const ConfigError& e) {
      row.status = std::string("invalid config: ") + e.what();
      rows.push_back(row);
      continue;
    }
    try {
      row.visibility_lower = visibility_lower_bound(row.absorbed, row.covered);
      row.quantum_sum = row.quantum_whichway * row.quantum_whichway + *row.visibility_lower * *row.visibility_lower;
    } catch (const DomainError& e) {
      row.status = std::string("visibility out of domain: ") + e.what();
    }
    try {
      row.classical_whichway_lower = classical_whichway(row.absorbed);
      if (row.visibility_lower)
        row.classical_sum = *row.classical_whichway_lower * *row.classical_whichway_lower +
                            *row.visibility_lower * *row.visibility_lower;
    } catch (const DomainError& e) {
      if (!row.status.empty()) row.status += "; ";
      row.status += std::string("out-of-domain: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wiregrid
