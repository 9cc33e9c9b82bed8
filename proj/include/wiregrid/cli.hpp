#pragma once

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "json.hpp"
#include "wiregrid/budget.hpp"
#include "wiregrid/complementarity.hpp"
#include "wiregrid/config.hpp"
#include "wiregrid/config_io.hpp"
#include "wiregrid/diffraction.hpp"
#include "wiregrid/errors.hpp"
#include "wiregrid/montecarlo.hpp"
#include "wiregrid/scenarios.hpp"
#include "wiregrid/validation.hpp"

namespace wiregrid::cli {

using Json = nlohmann::ordered_json;

enum class Format { csv, json };

struct RunRequest {
  std::string subcommand;
  std::string config_path;            ///< empty: built-in defaults
  Format output_format = Format::csv;
  std::string output_path = "-";      ///< "-" is standard output
  std::vector<std::string> overrides;
  std::uint64_t seed = 0;
  double theta_range_mrad = 10.0;
  std::size_t samples = 4001;
  double b_min_um = 1.0;
  double b_max_um = 150.0;
  std::size_t steps = 150;
};

enum ExitCode : int { ok = 0, invalid_input = 1, numeric_failure = 2, io_failure = 3 };

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"pattern", "budget", "metrics", "sweep", "simulate", "scenario", "validate"};
  return names;
}

inline std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

/// Rows of string cells with a header; written as RFC-4180 CSV.
class Table {
 public:
  explicit Table(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  void write_csv(std::ostream& os) const {
    write_row(os, header_);
    for (const auto& r : rows_) write_row(os, r);
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << "\r\n";
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline Json config_json(const ExperimentConfig& c) {
  return Json{{"wavelength_m", c.wavelength},
              {"wire_thickness_m", c.wire_thickness},
              {"wire_pitch_m", c.wire_pitch},
              {"wire_count", c.wire_count},
              {"beam_side_m", c.beam_side},
              {"crossing_angle_rad", c.crossing_angle},
              {"detector_half_width_rad", c.detector_half_width},
              {"photon_count", c.photon_count}};
}

inline Json report_json(const ComplementarityReport& r) {
  return Json{{"visibility_lower", r.visibility_lower},
              {"quantum_whichway", r.quantum_whichway},
              {"classical_whichway_lower", r.classical_whichway_lower},
              {"quantum_sum", r.quantum_sum},
              {"classical_sum", r.classical_sum},
              {"quantum_inequality_satisfied", r.quantum_inequality_satisfied},
              {"classical_sum_below_two", r.classical_sum_below_two}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file '" + path + "'");
  return ss.str();
}

/// Config file (or defaults), then overrides in order, then validation.
inline ValidConfig resolve_config(const RunRequest& req) {
  ExperimentConfig c;
  if (!req.config_path.empty()) c = parse_config_unvalidated(read_file(req.config_path));
  for (const auto& o : req.overrides) apply_override(c, o);
  return validate_config(c);
}

namespace detail {

/// Key/value/unit rows shared by the scalar-report subcommands.
struct Scalars {
  std::vector<std::tuple<std::string, double, std::string>> rows;
  void add(std::string key, double v, std::string unit) { rows.emplace_back(std::move(key), v, std::move(unit)); }
  void write_csv(std::ostream& os) const {
    Table t({"quantity", "value", "unit"});
    for (const auto& [k, v, u] : rows) t.add({k, format_number(v), u});
    t.write_csv(os);
  }
};

inline void emit_pattern(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  if (req.samples < 3) throw NumericError("--samples must be >= 3");
  if (!(req.theta_range_mrad > 0.0)) throw NumericError("--theta-range must be > 0");
  const double range = req.theta_range_mrad * 1e-3;
  const auto grid = numerics::linspace(-range, range, req.samples);
  const DiffractionPattern pat = two_beam_grid_pattern(vc, grid);
  if (req.output_format == Format::csv) {
    Table t({"theta_rad", "intensity_rel"});
    for (std::size_t i = 0; i < grid.size(); ++i) t.add({format_number(pat.theta[i]), format_number(pat.intensity[i])});
    t.write_csv(os);
    return;
  }
  Json j{{"subcommand", "pattern"}, {"config", config_json(vc.get())}};
  j["pattern"] = Json{{"scale_note", std::string(DiffractionPattern::scale_note)},
                      {"theta_rad", pat.theta},
                      {"intensity_rel", pat.intensity}};
  os << j.dump(2) << "\n";
}

inline void emit_budget(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  const PhotonBudget b = two_beam_budget(vc);
  const SingleBeamBudget s = single_beam_budget(vc);
  const auto n = vc->photon_count;
  const auto counts = b.counts(n);
  if (req.output_format == Format::csv) {
    Scalars out;
    out.add("detector_half_width", vc->detector_half_width, "rad");
    out.add("photon_count", static_cast<double>(n), "photons");
    out.add("two_beam.absorbed", b.absorbed, "fraction");
    out.add("two_beam.covered", b.covered, "fraction");
    out.add("two_beam.diffracted_total", b.diffracted_total, "fraction");
    out.add("two_beam.detector_capture", b.detector_capture, "fraction");
    out.add("two_beam.diffracted_to_detectors", b.diffracted_to_detectors, "fraction");
    out.add("two_beam.diffracted_away", b.diffracted_away, "fraction");
    out.add("two_beam.detected", b.detected, "fraction");
    out.add("two_beam.undisturbed_detected", b.undisturbed_detected, "fraction");
    out.add("two_beam.count.detected", counts.detected, "photons");
    out.add("two_beam.count.absorbed", counts.absorbed, "photons");
    out.add("two_beam.count.diffracted_away", counts.diffracted_away, "photons");
    out.add("two_beam.count.diffracted_to_detectors", counts.diffracted_to_detectors, "photons");
    out.add("two_beam.count.decrease", counts.decrease, "photons");
    out.add("single_beam.blocked", s.blocked, "fraction");
    out.add("single_beam.own_detector_decrease", s.own_detector_decrease, "fraction");
    out.add("single_beam.wrong_detector", s.wrong_detector, "fraction");
    out.write_csv(os);
    return;
  }
  Json j{{"subcommand", "budget"}, {"config", config_json(vc.get())}};
  j["detector_half_width_rad"] = vc->detector_half_width;
  j["two_beam"] = Json{{"absorbed", b.absorbed},
                       {"covered", b.covered},
                       {"diffracted_total", b.diffracted_total},
                       {"detector_capture", b.detector_capture},
                       {"diffracted_to_detectors", b.diffracted_to_detectors},
                       {"diffracted_away", b.diffracted_away},
                       {"detected", b.detected},
                       {"undisturbed_detected", b.undisturbed_detected}};
  j["two_beam_counts"] = Json{{"photons", n},
                              {"detected", counts.detected},
                              {"absorbed", counts.absorbed},
                              {"diffracted_away", counts.diffracted_away},
                              {"diffracted_to_detectors", counts.diffracted_to_detectors},
                              {"decrease", counts.decrease}};
  j["single_beam"] = Json{{"blocked", s.blocked},
                          {"own_detector_decrease", s.own_detector_decrease},
                          {"wrong_detector", s.wrong_detector}};
  os << j.dump(2) << "\n";
}

inline void emit_metrics(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  const double x = absorbed_fraction_two_beams(vc);
  const double y = coverage_fraction(vc);
  const ComplementarityReport r = grid_report(vc);
  if (req.output_format == Format::csv) {
    Scalars out;
    out.add("wire_thickness", vc->wire_thickness, "m");
    out.add("absorbed_x", x, "fraction");
    out.add("covered_y", y, "fraction");
    out.add("visibility_lower", r.visibility_lower, "1");
    out.add("quantum_whichway", r.quantum_whichway, "1");
    out.add("classical_whichway_lower", r.classical_whichway_lower, "1");
    out.add("quantum_sum", r.quantum_sum, "1");
    out.add("classical_sum", r.classical_sum, "1");
    out.add("quantum_inequality_satisfied", r.quantum_inequality_satisfied ? 1.0 : 0.0, "bool");
    out.add("classical_sum_below_two", r.classical_sum_below_two ? 1.0 : 0.0, "bool");
    out.write_csv(os);
    return;
  }
  Json j{{"subcommand", "metrics"}, {"config", config_json(vc.get())}};
  j["absorbed_x"] = x;
  j["covered_y"] = y;
  j["report"] = report_json(r);
  os << j.dump(2) << "\n";
}

inline void emit_sweep(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  if (req.steps < 1) throw NumericError("--steps must be >= 1");
  if (!(req.b_min_um > 0.0) || req.b_max_um < req.b_min_um) throw NumericError("--b-min/--b-max must satisfy 0 < min <= max");
  const auto bs = numerics::linspace(req.b_min_um * 1e-6, req.b_max_um * 1e-6, req.steps);
  const auto rows = sweep_thickness(vc, bs);
  auto opt = [](const std::optional<double>& v, bool square) {
    return v ? format_number(square ? *v * *v : *v) : std::string{};
  };
  if (req.output_format == Format::csv) {
    Table t({"b_um", "absorbed_x", "covered_y", "visibility_sq_lower", "classical_whichway_sq_lower",
             "classical_sum_lower", "quantum_sum_lower", "status"});
    for (const auto& r : rows)
      t.add({format_number(r.wire_thickness * 1e6), format_number(r.absorbed), format_number(r.covered),
             opt(r.visibility_lower, true), opt(r.classical_whichway_lower, true), opt(r.classical_sum, false),
             opt(r.quantum_sum, false), r.status.empty() ? "ok" : r.status});
    t.write_csv(os);
    return;
  }
  Json j{{"subcommand", "sweep"}, {"config", config_json(vc.get())}};
  Json arr = Json::array();
  auto jopt = [](const std::optional<double>& v, bool square) -> Json {
    if (!v) return nullptr;
    return square ? *v * *v : *v;
  };
  for (const auto& r : rows)
    arr.push_back(Json{{"b_um", r.wire_thickness * 1e6},
                       {"absorbed_x", r.absorbed},
                       {"covered_y", r.covered},
                       {"visibility_sq_lower", jopt(r.visibility_lower, true)},
                       {"classical_whichway_sq_lower", jopt(r.classical_whichway_lower, true)},
                       {"classical_sum_lower", jopt(r.classical_sum, false)},
                       {"quantum_sum_lower", jopt(r.quantum_sum, false)},
                       {"status", r.status.empty() ? "ok" : r.status}});
  j["rows"] = arr;
  os << j.dump(2) << "\n";
}

inline void emit_simulate(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  const PhotonBudget b = two_beam_budget(vc);
  const FateCounts c = sample_fates(b, vc->photon_count, req.seed);
  const EmpiricalReport e = estimate_metrics(c, vc);
  if (req.output_format == Format::csv) {
    Scalars out;
    out.add("seed", static_cast<double>(c.seed), "1");
    out.add("total", static_cast<double>(c.total), "photons");
    out.add("detected_own", static_cast<double>(c.detected_own), "photons");
    out.add("absorbed", static_cast<double>(c.absorbed), "photons");
    out.add("diffracted_away", static_cast<double>(c.diffracted_away), "photons");
    out.add("diffracted_to_detectors", static_cast<double>(c.diffracted_to_detectors), "photons");
    out.add("absorbed_x_hat", e.absorbed, "fraction");
    out.add("absorbed_x_hat_se", e.absorbed_se, "fraction");
    out.add("visibility_lower_hat", e.visibility, "1");
    out.add("visibility_lower_hat_se", e.visibility_se, "1");
    out.add("classical_whichway_lower_hat", e.classical_whichway, "1");
    out.add("classical_whichway_lower_hat_se", e.classical_whichway_se, "1");
    out.add("quantum_sum", e.report.quantum_sum, "1");
    out.add("classical_sum", e.report.classical_sum, "1");
    out.write_csv(os);
    return;
  }
  Json j{{"subcommand", "simulate"}, {"config", config_json(vc.get())}};
  j["counts"] = Json{{"seed", c.seed},
                     {"total", c.total},
                     {"detected_own", c.detected_own},
                     {"absorbed", c.absorbed},
                     {"diffracted_away", c.diffracted_away},
                     {"diffracted_to_detectors", c.diffracted_to_detectors}};
  j["estimates"] = Json{{"absorbed_x_hat", e.absorbed},
                        {"absorbed_x_hat_se", e.absorbed_se},
                        {"visibility_lower_hat", e.visibility},
                        {"visibility_lower_hat_se", e.visibility_se},
                        {"classical_whichway_lower_hat", e.classical_whichway},
                        {"classical_whichway_lower_hat_se", e.classical_whichway_se}};
  j["report"] = report_json(e.report);
  os << j.dump(2) << "\n";
}

inline void emit_scenarios(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  const auto table = scenario_table(vc);
  if (req.output_format == Format::csv) {
    Table t({"scenario", "grid", "output_beam_splitter", "visibility_measured", "K", "V", "K_prime", "quantum_sum",
             "classical_sum", "rationale"});
    for (const auto& s : table)
      t.add({s.scenario.label(), s.scenario.grid ? "1" : "0", s.scenario.output_beam_splitter ? "1" : "0",
             s.scenario.visibility_measured ? "1" : "0", format_number(s.report.quantum_whichway),
             format_number(s.report.visibility_lower), format_number(s.report.classical_whichway_lower),
             format_number(s.report.quantum_sum), format_number(s.report.classical_sum), s.rationale});
    t.write_csv(os);
    return;
  }
  Json j{{"subcommand", "scenario"}, {"config", config_json(vc.get())}};
  Json arr = Json::array();
  for (const auto& s : table)
    arr.push_back(Json{{"scenario", s.scenario.label()},
                       {"grid", s.scenario.grid},
                       {"output_beam_splitter", s.scenario.output_beam_splitter},
                       {"visibility_measured", s.scenario.visibility_measured},
                       {"report", report_json(s.report)},
                       {"rationale", s.rationale}});
  j["scenarios"] = arr;
  os << j.dump(2) << "\n";
}

/// Returns false when any check fails.
inline bool emit_validate(const ValidConfig& vc, const RunRequest& req, std::ostream& os) {
  const auto checks = cross_validation_suite(vc);
  bool all = true;
  for (const auto& c : checks) all = all && c.pass;
  if (req.output_format == Format::csv) {
    Table t({"check", "value", "threshold", "pass"});
    t.add({"config_valid", "1", "1", "true"});
    for (const auto& c : checks) t.add({c.name, format_number(c.value), format_number(c.threshold), c.pass ? "true" : "false"});
    t.write_csv(os);
    return all;
  }
  Json j{{"subcommand", "validate"}, {"config", config_json(vc.get())}};
  Json arr = Json::array();
  arr.push_back(Json{{"check", "config_valid"}, {"value", 1}, {"threshold", 1}, {"pass", true}});
  for (const auto& c : checks)
    arr.push_back(Json{{"check", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}});
  j["checks"] = arr;
  j["all_pass"] = all;
  os << j.dump(2) << "\n";
  return all;
}

inline void write_error(std::ostream& err, const char* kind, const std::string& message, int code) {
  err << Json{{"error", Json{{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump() << "\n";
}

}  // namespace detail

/// Executes one request. Artifacts go to `out` (or the requested file),
/// machine-readable error objects to `err`.
inline int run(const RunRequest& req, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  try {
    const auto& names = subcommands();
    if (std::find(names.begin(), names.end(), req.subcommand) == names.end())
      throw ParseError(0, "unknown subcommand '" + req.subcommand + "'");
    const ValidConfig vc = resolve_config(req);

    std::ostringstream buffer;
    bool checks_pass = true;
    if (req.subcommand == "pattern") detail::emit_pattern(vc, req, buffer);
    else if (req.subcommand == "budget") detail::emit_budget(vc, req, buffer);
    else if (req.subcommand == "metrics") detail::emit_metrics(vc, req, buffer);
    else if (req.subcommand == "sweep") detail::emit_sweep(vc, req, buffer);
    else if (req.subcommand == "simulate") detail::emit_simulate(vc, req, buffer);
    else if (req.subcommand == "scenario") detail::emit_scenarios(vc, req, buffer);
    else checks_pass = detail::emit_validate(vc, req, buffer);

    if (req.output_path.empty() || req.output_path == "-") {
      out << buffer.str();
      out.flush();
    } else {
      std::ofstream file(req.output_path, std::ios::binary);
      if (!file) throw IoError("cannot open output file '" + req.output_path + "'");
      file << buffer.str();
      if (!file) throw IoError("error writing output file '" + req.output_path + "'");
    }
    if (!checks_pass) {
      detail::write_error(err, "validation_check_failed", "one or more cross-validation checks failed", numeric_failure);
      return numeric_failure;
    }
    return ok;
  } catch (const IoError& e) {
    detail::write_error(err, "io", e.what(), io_failure);
    return io_failure;
  } catch (const ParseError& e) {
    detail::write_error(err, "parse", e.what(), invalid_input);
    return invalid_input;
  } catch (const ConfigError& e) {
    detail::write_error(err, "validation", e.what(), invalid_input);
    return invalid_input;
  } catch (const DomainError& e) {
    detail::write_error(err, "domain", e.what(), numeric_failure);
    return numeric_failure;
  } catch (const NumericError& e) {
    detail::write_error(err, "numeric", e.what(), numeric_failure);
    return numeric_failure;
  }
}

}  // namespace wiregrid::cli
