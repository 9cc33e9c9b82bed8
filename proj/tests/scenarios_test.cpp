#include <gtest/gtest.h>

#include "wiregrid/scenarios.hpp"

namespace wiregrid {
namespace {

const ValidConfig& nominal() {
  static const ValidConfig vc = validate_config({});
  return vc;
}

TEST(Scenarios, OpenPaths) {
  const auto r = evaluate_scenario(Scenario::open_paths(), nominal());
  EXPECT_EQ(r.report.quantum_whichway, 0.0);
  EXPECT_EQ(r.report.classical_whichway_lower, 1.0);
  EXPECT_EQ(r.report.visibility_lower, 0.0);
  EXPECT_NE(r.rationale.find("unmeasured"), std::string::npos);
  EXPECT_EQ(r.scenario.label(), "open-paths");
}

TEST(Scenarios, WireGrid) {
  const auto r = evaluate_scenario(Scenario::wire_grid(), nominal());
  EXPECT_EQ(r.report.quantum_whichway, 0.0);
  EXPECT_NEAR(r.report.visibility_lower, 0.96996, 5e-5);
  EXPECT_NEAR(r.report.classical_whichway_lower, 0.99752, 1e-5);
  EXPECT_TRUE(r.report.quantum_inequality_satisfied);
}

TEST(Scenarios, OutputSplitter) {
  const auto r = evaluate_scenario(Scenario::output_splitter(), nominal());
  EXPECT_EQ(r.report.visibility_lower, 1.0);
  EXPECT_EQ(r.report.classical_whichway_lower, 0.0);
  EXPECT_EQ(r.report.quantum_sum, 1.0);
  EXPECT_EQ(r.scenario.label(), "output-splitter");
}

TEST(Scenarios, TableOrderAndQuantumZero) {
  const auto table = scenario_table(nominal());
  ASSERT_EQ(table.size(), 3u);
  EXPECT_EQ(table[0].scenario.label(), "open-paths");
  EXPECT_EQ(table[1].scenario.label(), "wire-grid");
  EXPECT_EQ(table[2].scenario.label(), "output-splitter");
  for (const auto& r : table) {
    EXPECT_EQ(r.report.quantum_whichway, 0.0);
    EXPECT_FALSE(r.rationale.empty());
  }
}

TEST(Scenarios, InconsistentFlagsRejected) {
  EXPECT_THROW(evaluate_scenario({true, true, true}, nominal()), DomainError);
  EXPECT_THROW(evaluate_scenario({true, false, false}, nominal()), DomainError);
  EXPECT_THROW(evaluate_scenario({false, false, true}, nominal()), DomainError);
}

}  // namespace
}  // namespace wiregrid
