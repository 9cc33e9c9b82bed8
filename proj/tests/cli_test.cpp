#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "wiregrid/cli.hpp"

namespace wiregrid::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(RunRequest req) {
  std::ostringstream out, err;
  const int code = run(req, out, err);
  return {code, out.str(), err.str()};
}

RunRequest request(std::string sub, Format f = Format::csv) {
  RunRequest r;
  r.subcommand = std::move(sub);
  r.output_format = f;
  return r;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  return out;
}

// Value column of a quantity,value,unit table.
double scalar(const std::string& csv, const std::string& key) {
  for (const auto& l : lines(csv))
    if (l.rfind(key + ",", 0) == 0) return std::stod(l.substr(key.size() + 1));
  ADD_FAILURE() << "missing " << key;
  return std::nan("");
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

TEST(CsvField, QuotesWhenNeeded) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
}

TEST(FormatNumber, RoundTripsNineDigits) {
  for (double v : {0.96996123456789, 1.0332e-3, 997521.82, 6.5e-12}) {
    EXPECT_NEAR(std::stod(format_number(v)), v, 1e-11 * std::abs(v));
  }
}

TEST(Run, PatternCsv) {
  const Result r = call(request("pattern"));
  ASSERT_EQ(r.code, ok) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4002u);
  EXPECT_EQ(ls[0], "theta_rad,intensity_rel");
  // Largest side peak of the ±10 mrad pattern, located from the emitted rows.
  double best_t = 0, best_i = -1;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto comma = ls[i].find(',');
    const double t = std::stod(ls[i].substr(0, comma)), v = std::stod(ls[i].substr(comma + 1));
    if (t > 0 && t < 0.002 && v > best_i) best_i = v, best_t = t;
  }
  EXPECT_NEAR(best_t, 1.0332e-3, 1e-5);
}

TEST(Run, PatternJsonEchoesConfig) {
  RunRequest req = request("pattern", Format::json);
  req.samples = 11;
  const Result r = call(req);
  ASSERT_EQ(r.code, ok);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["config"]["wire_count"], 6);
  EXPECT_EQ(j["pattern"]["theta_rad"].size(), 11u);
  EXPECT_EQ(j.begin().key(), "subcommand");
}

TEST(Run, BudgetReportsWindow) {
  const Result r = call(request("budget"));
  ASSERT_EQ(r.code, ok) << r.err;
  EXPECT_EQ(lines(r.out)[0], "quantity,value,unit");
  EXPECT_DOUBLE_EQ(scalar(r.out, "detector_half_width"), 0.0005);
  EXPECT_NEAR(scalar(r.out, "two_beam.count.detected"), 997522, 5);
  EXPECT_NEAR(scalar(r.out, "single_beam.own_detector_decrease"), 0.155, 0.005);
}

TEST(Run, MetricsNominalDefaults) {
  const Result r = call(request("metrics"));
  ASSERT_EQ(r.code, ok);
  EXPECT_GE(scalar(r.out, "visibility_lower"), 0.9699);
  EXPECT_EQ(scalar(r.out, "quantum_whichway"), 0.0);
  EXPECT_LT(scalar(r.out, "classical_sum"), 2.0);
  const auto j = Json::parse(call(request("metrics", Format::json)).out);
  EXPECT_NEAR(j["report"]["visibility_lower"].get<double>(), 0.96996, 5e-5);
}

TEST(Run, SweepDefaultRows) {
  const Result r = call(request("sweep"));
  ASSERT_EQ(r.code, ok);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 151u);
  EXPECT_EQ(ls[0], "b_um,absorbed_x,covered_y,visibility_sq_lower,classical_whichway_sq_lower,classical_sum_lower,"
                   "quantum_sum_lower,status");
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_EQ(ls[i].substr(ls[i].rfind(',') + 1), "ok") << ls[i];
}

TEST(Run, SweepMarksOutOfDomainRows) {
  RunRequest req = request("sweep", Format::json);
  req.b_min_um = 300;
  req.b_max_um = 330;
  req.steps = 4;
  const Result r = call(req);
  ASSERT_EQ(r.code, ok);
  const auto rows = Json::parse(r.out)["rows"];
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_NE(rows[3]["status"].get<std::string>(), "ok");
  EXPECT_TRUE(rows[3]["visibility_sq_lower"].is_null());
}

TEST(Run, SimulateDeterministic) {
  RunRequest req = request("simulate");
  req.overrides = {"photon_count=100000"};
  const Result a = call(req), b = call(req);
  ASSERT_EQ(a.code, ok);
  EXPECT_EQ(a.out, b.out);
  EXPECT_DOUBLE_EQ(scalar(a.out, "total"), 100000);
  req.seed = 1;
  EXPECT_NE(call(req).out, a.out);
}

TEST(Run, ScenarioTable) {
  const Result r = call(request("scenario"));
  ASSERT_EQ(r.code, ok);
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 4u);
  EXPECT_EQ(ls[1].rfind("open-paths,0,0,0,0,0,1,0,", 0), 0u) << ls[1];
  EXPECT_EQ(ls[3].rfind("output-splitter,0,1,1,0,1,0,1,", 0), 0u) << ls[3];
}

TEST(Run, ValidatePassesOnDefaults) {
  const Result r = call(request("validate"));
  EXPECT_EQ(r.code, ok) << r.out;
  for (std::size_t i = 1; i < lines(r.out).size(); ++i) EXPECT_NE(lines(r.out)[i].find(",true"), std::string::npos);
}

TEST(Run, OverrideMatchesFileEdit) {
  const auto path = temp_file("wiregrid_cli_b16.conf", "wire_thickness = 16 um\n");
  RunRequest from_file = request("metrics");
  from_file.config_path = path.string();
  RunRequest from_override = request("metrics");
  from_override.overrides = {"wire_thickness=16 um"};
  EXPECT_EQ(call(from_file).out, call(from_override).out);
  // Overrides win over the file.
  from_file.overrides = {"wire_thickness=32 um"};
  EXPECT_EQ(call(from_file).out, call(request("metrics")).out);
}

TEST(Run, ExitCodes) {
  Result r = call(request("nonsense"));
  EXPECT_EQ(r.code, invalid_input);
  EXPECT_EQ(Json::parse(r.err)["error"]["exit_code"], 1);

  RunRequest bad = request("metrics");
  bad.overrides = {"wire_count=9"};
  r = call(bad);
  EXPECT_EQ(r.code, invalid_input);
  EXPECT_EQ(Json::parse(r.err)["error"]["kind"], "validation");
  EXPECT_TRUE(r.out.empty());

  bad.overrides = {"wire_thickness=16 parsecs"};
  EXPECT_EQ(call(bad).code, invalid_input);

  RunRequest missing = request("metrics");
  missing.config_path = "/nonexistent/dir/none.conf";
  r = call(missing);
  EXPECT_EQ(r.code, io_failure);
  EXPECT_EQ(Json::parse(r.err)["error"]["kind"], "io");

  RunRequest unwritable = request("metrics");
  unwritable.output_path = "/nonexistent/dir/out.csv";
  EXPECT_EQ(call(unwritable).code, io_failure);

  RunRequest numeric = request("pattern");
  numeric.samples = 2;
  EXPECT_EQ(call(numeric).code, numeric_failure);
}

TEST(Run, WritesOutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "wiregrid_cli_out.csv";
  RunRequest req = request("scenario");
  req.output_path = path.string();
  const Result r = call(req);
  ASSERT_EQ(r.code, ok);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), call(request("scenario")).out);
}

// The installed binary, end to end.
std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(WIREGRID_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  const int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

TEST(Binary, SimulateSeedZeroTwiceIsByteIdentical) {
  const auto a = shell("--override photon_count=200000 simulate --seed 0");
  const auto b = shell("--override photon_count=200000 simulate --seed 0");
  ASSERT_EQ(a.first, 0);
  EXPECT_EQ(a.second, b.second);
  EXPECT_FALSE(a.second.empty());
}

TEST(Binary, FlagsAndExitCodes) {
  EXPECT_EQ(shell("metrics --format json").first, 0);
  EXPECT_EQ(shell("--format json metrics").first, 0);
  EXPECT_EQ(shell("--format xml metrics").first, 1);
  EXPECT_EQ(shell("").first, 1);
  EXPECT_EQ(shell("metrics --override wire_count=7").first, 1);
  EXPECT_EQ(shell("metrics --config /nonexistent/x.conf").first, 3);
  EXPECT_EQ(shell("pattern --samples 2").first, 2);
  const auto sweep = shell("sweep --b-min 1 --b-max 10 --steps 10");
  EXPECT_EQ(sweep.first, 0);
  EXPECT_EQ(lines(sweep.second).size(), 11u);
}

}  // namespace
}  // namespace wiregrid::cli
