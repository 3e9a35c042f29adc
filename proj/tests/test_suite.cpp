#include <gtest/gtest.h>

#include "siglab/suite.hpp"

using namespace siglab;

TEST(VerifySuite, DefaultSeedPasses) {
  SuiteConfig cfg;
  cfg.instances = 60;
  cfg.lemmas = true;
  cfg.bow_pairs = 2000;
  cfg.satellite_configs = 300;
  const auto report = run_verify_suite(cfg);
  for (const auto& c : report.checks) {
    EXPECT_TRUE(c.ok()) << c.name << ": " << c.first_failure;
    EXPECT_GT(c.checked, 0u) << c.name;
  }
  EXPECT_TRUE(report.ok());
  EXPECT_NE(report.find("satellite"), nullptr);
}

TEST(VerifySuite, InjectedFaultIsDetected) {
  SuiteConfig cfg;
  cfg.instances = 60;
  cfg.inject_fault = true;
  const auto report = run_verify_suite(cfg);
  EXPECT_FALSE(report.ok());
  ASSERT_NE(report.find("edge_rule"), nullptr);
  EXPECT_GT(report.find("edge_rule")->violations, 0u);
}

TEST(VerifySuite, InstancesAreReproducibleAndDistinct) {
  for (std::size_t i = 0; i < 40; ++i) {
    const auto a = make_instance(5, i);
    const auto b = make_instance(5, i);
    EXPECT_EQ(a.points.points, b.points.points);
    EXPECT_EQ(a.k, b.k);
    EXPECT_GE(a.points.size(), a.k + 1);
    EXPECT_LE(a.points.size(), 200u);
    std::set<Vector> unique(a.points.points.begin(), a.points.points.end());
    EXPECT_EQ(unique.size(), a.points.size());
  }
}
