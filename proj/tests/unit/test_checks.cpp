#include <gtest/gtest.h>

#include <set>

#include "infolattice/checks.hpp"
#include "infolattice/error.hpp"
#include "infolattice/report.hpp"

using namespace infolattice;

TEST(Seeds, TrialSeedsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) seen.insert(trial_seed(7, t));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(trial_seed(7, 3), trial_seed(7, 3));
  EXPECT_NE(trial_seed(7, 3), trial_seed(8, 3));
}

TEST(RandomDistribution, ShapeAndDeterminism) {
  bool saw_sparse = false;
  for (std::uint64_t t = 0; t < 200; ++t) {
    std::mt19937_64 a(trial_seed(1, t)), b(trial_seed(1, t));
    const auto d = random_distribution(a, {3, 2, 4, true});
    const auto e = random_distribution(b, {3, 2, 4, true});
    ASSERT_EQ(d.support().size(), e.support().size());
    for (std::size_t k = 0; k < d.support().size(); ++k) {
      EXPECT_EQ(d.support()[k].realization, e.support()[k].realization);
      EXPECT_EQ(d.support()[k].p, e.support()[k].p);
    }
    std::size_t grid = 1;
    for (std::size_t i = 0; i < 3; ++i) {
      const auto c = d.variables().cardinality(i);
      EXPECT_GE(c, 2u);
      EXPECT_LE(c, 4u);
      grid *= c;
    }
    EXPECT_GE(d.support().size(), 1u);
    saw_sparse = saw_sparse || d.support().size() < grid;
  }
  EXPECT_TRUE(saw_sparse);

  std::mt19937_64 rng(5);
  const auto dense = random_distribution(rng, {2, 3, 3, false});
  EXPECT_EQ(dense.support().size(), 9u);
  EXPECT_THROW(random_distribution(rng, {0, 2, 3, true}), Error);
  EXPECT_THROW(random_distribution(rng, {2, 3, 2, true}), Error);
}

TEST(Suites, Names) {
  for (auto s : {CheckSuite::props, CheckSuite::lemmas, CheckSuite::mobius, CheckSuite::pie,
                 CheckSuite::pointwise, CheckSuite::mi, CheckSuite::trivariate}) {
    EXPECT_EQ(parse_suite(to_string(s)), s);
  }
  EXPECT_FALSE(parse_suite("nope").has_value());
}

TEST(Suites, AllPassOnShortRuns) {
  for (auto s : {CheckSuite::props, CheckSuite::lemmas, CheckSuite::mobius, CheckSuite::pie,
                 CheckSuite::pointwise, CheckSuite::mi, CheckSuite::trivariate}) {
    for (auto base : {LogBase::bits, LogBase::nats, LogBase::hartleys}) {
      CheckConfig c;
      c.suite = s;
      c.trials = 60;
      c.seed = 123;
      c.base = base;
      const auto report = run_check(c);
      EXPECT_TRUE(report.passed()) << check_text(report);
      for (const auto& law : report.laws) EXPECT_GT(law.cases, 0u) << law.name;
    }
  }
}

TEST(Suites, PropsCoversSixLawsAndMonotonicity) {
  CheckConfig c;
  c.trials = 50;
  const auto report = run_check(c);
  std::vector<std::string> names;
  for (const auto& l : report.laws) names.push_back(l.name);
  EXPECT_EQ(names, (std::vector<std::string>{"idempotence", "commutativity", "associativity",
                                             "absorption", "distributivity", "connexity",
                                             "monotonicity"}));
}

TEST(Suites, InvalidConfig) {
  CheckConfig c;
  c.tolerance = 0.0;
  EXPECT_THROW(run_check(c), Error);
  c.tolerance = 1e-9;
  c.trials = 0;
  EXPECT_THROW(run_check(c), Error);
}

TEST(Suites, ReportsAreDeterministic) {
  CheckConfig c;
  c.suite = CheckSuite::mobius;
  c.trials = 100;
  c.seed = 99;
  EXPECT_EQ(check_text(run_check(c)), check_text(run_check(c)));
  EXPECT_EQ(check_structured(run_check(c)), check_structured(run_check(c)));
  c.seed = 100;
  const auto other = run_check(c);
  EXPECT_TRUE(other.passed());
}

TEST(Suites, FailingLawIsReported) {
  // A tolerance below the rounding noise of the max-min identity makes some
  // trial fail, and the report must say so.
  CheckConfig c;
  c.suite = CheckSuite::pie;
  c.trials = 200;
  c.tolerance = 1e-300;
  const auto report = run_check(c);
  EXPECT_FALSE(report.passed());
  EXPECT_NE(check_text(report).find("overall: FAIL"), std::string::npos);
}
