#pragma once

#include <string>
#include <vector>

#include "wiregrid/budget.hpp"
#include "wiregrid/complementarity.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/errors.hpp"

namespace wiregrid {

struct Scenario {
  bool grid = false;
  bool output_beam_splitter = false;
  bool visibility_measured = false;

  static Scenario open_paths() { return {false, false, false}; }
  static Scenario wire_grid() { return {true, false, true}; }
  static Scenario output_splitter() { return {false, true, true}; }

  std::string label() const {
    if (grid) return "wire-grid";
    if (output_beam_splitter) return "output-splitter";
    return "open-paths";
  }
};

struct ScenarioResult {
  Scenario scenario;
  ComplementarityReport report;
  std::string rationale;
};

inline void check_scenario(const Scenario& s) {
  if (s.grid && s.output_beam_splitter)
    throw DomainError("scenario: wire-grid and output beam splitter are mutually exclusive");
  if (s.visibility_measured != (s.grid || s.output_beam_splitter))
    throw DomainError("scenario: visibility is measured exactly when a grid or an output splitter is present");
}

inline ScenarioResult evaluate_scenario(const Scenario& s, const ValidConfig& vc) {
  check_scenario(s);
  ScenarioResult out{s, {}, {}};
  if (s.output_beam_splitter) {
    out.report = complementarity_report(0.0, 0.0, 1.0);
    out.rationale =
        "output splitter: one detector is silent (total destructive interference) so V = 1; "
        "a click cannot be traced to either path, K' = 0; K = 0 is implied by the symmetric paths, not computed";
    return out;
  }
  if (s.grid) {
    const double x = absorbed_fraction_two_beams(vc);
    const double y = coverage_fraction(vc);
    out.report = complementarity_report(quantum_whichway(true), classical_whichway(x), visibility_lower_bound(x, y));
    out.rationale =
        "wire-grid at dark fringes: V is the square-profile lower bound from absorbed and covered fractions; "
        "K' = 1 - 2x counts undeflected photons; the grid acts identically on both arms so K = 0";
    return out;
  }
  out.report = complementarity_report(quantum_whichway(false), 1.0, 0.0);
  out.rationale =
      "open paths: identical unperturbed arms give K = 0; V = 0 (unmeasured, not a measured null); "
      "a click plus momentum conservation gives K' = 1";
  return out;
}

inline std::vector<ScenarioResult> scenario_table(const ValidConfig& vc) {
  return {evaluate_scenario(Scenario::open_paths(), vc), evaluate_scenario(Scenario::wire_grid(), vc),
          evaluate_scenario(Scenario::output_splitter(), vc)};
}

}  // namespace wiregrid
