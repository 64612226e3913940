#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "infolattice/checks.hpp"
#include "infolattice/error.hpp"
#include "infolattice/pointwise.hpp"

using namespace infolattice;

namespace {

const Source X = Source::single(0);
const Source Y = Source::single(1);
const Source Z = Source::single(2);

Realization R(std::vector<std::uint32_t> v) { return Realization{std::move(v)}; }

}  // namespace

TEST(Surprisal, Examples) {
  const auto d = fixtures::xor3();
  for (const auto& e : d.support()) {
    EXPECT_DOUBLE_EQ(surprisal(d, X, e.realization), 1.0);
    EXPECT_DOUBLE_EQ(surprisal(d, X | Y, e.realization),
                     fixtures::oracle_h(fixtures::xor3_rows(), 0b011, e.realization.values));
  }
  EXPECT_DOUBLE_EQ(surprisal(fixtures::biased(), X, R({1})), 2.0);
}

TEST(Surprisal, Units) {
  const auto d = fixtures::biased();
  EXPECT_NEAR(surprisal(d, X, R({1}), LogBase::nats), std::log(4.0), 1e-15);
  EXPECT_NEAR(surprisal(d, X, R({1}), LogBase::hartleys), std::log10(4.0), 1e-15);
}

TEST(Surprisal, OutsideSupportRejected) {
  try {
    surprisal(fixtures::copy(), X | Y, R({0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::zero_mass);
  }
}

TEST(CondSurprisal, Examples) {
  EXPECT_DOUBLE_EQ(cond_surprisal(fixtures::copy(), Y, X, R({0, 0})), 0.0);
  const auto d = fixtures::xor3();
  for (const auto& e : d.support()) {
    EXPECT_DOUBLE_EQ(cond_surprisal(d, Z, X | Y, e.realization), 0.0);
    EXPECT_DOUBLE_EQ(cond_surprisal(d, Z, X, e.realization), 1.0);
  }
}

TEST(Contents, UnionIntersectionExamples) {
  const auto d = fixtures::xor3();
  const Source singles[] = {X, Y, Z};
  const Source pairs[] = {X | Y, X | Z, Y | Z};
  const Source xy[] = {X, Y};
  for (const auto& e : d.support()) {
    EXPECT_DOUBLE_EQ(union_content(d, singles, e.realization), 1.0);
    EXPECT_DOUBLE_EQ(union_content(d, pairs, e.realization), 2.0);
    EXPECT_DOUBLE_EQ(intersection_content(d, xy, e.realization), 1.0);
    EXPECT_DOUBLE_EQ(synergy_content(d, xy, e.realization), 1.0);
    EXPECT_DOUBLE_EQ(synergy_content(d, singles, e.realization), 1.0);
  }
  const auto b = fixtures::biased2();
  EXPECT_NEAR(union_content(b, xy, R({0, 1})), 2.0, 1e-12);
  EXPECT_NEAR(intersection_content(b, xy, R({0, 1})), 0.415037, 1e-6);
  EXPECT_NEAR(intersection_content(b, xy, R({0, 1})), -std::log2(0.75), 1e-12);
}

TEST(Contents, UniqueExamples) {
  const auto b = fixtures::biased2();
  EXPECT_NEAR(unique_content(b, X, Y, R({1, 0})), 1.584963, 1e-6);
  EXPECT_NEAR(unique_content(b, X, Y, R({1, 0})), 2.0 + std::log2(0.75), 1e-12);
  EXPECT_EQ(unique_content(b, Y, X, R({1, 0})), 0.0);
}

TEST(Contents, SynergyAndMutualExamples) {
  const auto c = fixtures::copy();
  const Source xy[] = {X, Y};
  for (const auto& e : c.support()) EXPECT_DOUBLE_EQ(synergy_content(c, xy, e.realization), 0.0);
  EXPECT_DOUBLE_EQ(mutual_content(c, X, Y, R({0, 0})), 1.0);
  const auto u = fixtures::unif2();
  for (const auto& e : u.support()) EXPECT_DOUBLE_EQ(mutual_content(u, X, Y, e.realization), 0.0);
  const double anti = mutual_content(fixtures::anti(), X, Y, R({0, 0}));
  EXPECT_NEAR(anti, -1.321928, 1e-6);
  EXPECT_NEAR(anti, std::log2(0.1 / (0.5 * 0.5)), 1e-12);
}

TEST(Contents, ConditionalExamples) {
  const auto d = fixtures::xor3();
  const Source xy[] = {X, Y};
  for (const auto& e : d.support()) {
    const auto& r = e.realization;
    EXPECT_DOUBLE_EQ(cond_pointwise(d, PointwiseKind::union_content, xy, Z, r), 1.0);
    EXPECT_DOUBLE_EQ(cond_pointwise(d, PointwiseKind::synergy, xy, Z, r), 0.0);
    EXPECT_DOUBLE_EQ(cond_pointwise(d, PointwiseKind::mutual, xy, Z, r), 1.0);
  }
}

TEST(Contents, ArgumentChecks) {
  const auto d = fixtures::xor3();
  const Source overlap[] = {X | Y, Y};
  const Source three[] = {X, Y, Z};
  const auto r = d.support()[0].realization;
  EXPECT_THROW(mutual_content(d, X | Y, Y, r), Error);
  EXPECT_THROW(cond_pointwise(d, PointwiseKind::unique, three, std::nullopt, r), Error);
  EXPECT_THROW(cond_pointwise(d, PointwiseKind::union_content, overlap, X, r), Error);
}

TEST(Expected, Examples) {
  const auto d = fixtures::xor3();
  EXPECT_DOUBLE_EQ(expected(d, [&](const Realization& r) { return surprisal(d, X, r); }), 1.0);
  const auto u = fixtures::unif2();
  const Source xy[] = {X, Y};
  EXPECT_DOUBLE_EQ(
      expected(u, [&](const Realization& r) { return union_content(u, xy, r); }), 1.0);

  // KL-divergence oracle for I(X;Y) on ANTI.
  const auto a = fixtures::anti();
  double kl = 0.0;
  for (const auto& row : fixtures::anti_rows()) kl += row.p * std::log2(row.p / 0.25);
  const double mi = expected(a, [&](const Realization& r) { return mutual_content(a, X, Y, r); });
  EXPECT_NEAR(mi, kl, 1e-12);
  EXPECT_GE(mi, 0.0);
}

// The bivariate identities at every support point of random distributions,
// against a brute-force surprisal oracle built from the raw rows.
TEST(PointwiseProperties, RandomSweep) {
  for (std::uint64_t t = 0; t < 300; ++t) {
    std::mt19937_64 rng(trial_seed(3, t));
    const auto d = random_distribution(rng, {2, 2, 4, true});
    std::vector<fixtures::Row> rows;
    for (const auto& e : d.support()) rows.push_back({e.realization.values, e.p});
    const Source xy[] = {X, Y};
    for (const auto& e : d.support()) {
      const auto& r = e.realization;
      const double hx = fixtures::oracle_h(rows, 0b01, r.values);
      const double hy = fixtures::oracle_h(rows, 0b10, r.values);
      const double hxy = fixtures::oracle_h(rows, 0b11, r.values);
      const double u = union_content(d, xy, r);
      const double i = intersection_content(d, xy, r);
      const double ux = unique_content(d, X, Y, r);
      const double uy = unique_content(d, Y, X, r);
      const double s = synergy_content(d, xy, r);
      EXPECT_NEAR(u, std::max(hx, hy), 1e-12);
      EXPECT_NEAR(i, std::min(hx, hy), 1e-12);
      EXPECT_GE(hxy + 1e-9, u);
      EXPECT_GE(i, -1e-9);
      EXPECT_NEAR(u + i, hx + hy, 1e-9);
      EXPECT_TRUE(ux == 0.0 || uy == 0.0);
      EXPECT_NEAR(hxy, i + ux + uy + s, 1e-9);
      EXPECT_NEAR(mutual_content(d, X, Y, r), hx + hy - hxy, 1e-9);
      EXPECT_NEAR(mutual_content(d, X, Y, r), i - s, 1e-9);
    }
  }
}

TEST(PointwiseProperties, ConditionalChains) {
  for (std::uint64_t t = 0; t < 200; ++t) {
    std::mt19937_64 rng(trial_seed(5, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    const Source xy[] = {X, Y};
    for (const auto& e : d.support()) {
      const auto& r = e.realization;
      const double hx = cond_surprisal(d, X, Z, r);
      const double hy = cond_surprisal(d, Y, Z, r);
      const double hxy = cond_surprisal(d, X | Y, Z, r);
      const double u = cond_pointwise(d, PointwiseKind::union_content, xy, Z, r);
      const double i = cond_pointwise(d, PointwiseKind::intersection, xy, Z, r);
      const double ux = cond_pointwise(d, PointwiseKind::unique, xy, Z, r);
      const Source yx[] = {Y, X};
      const double uy = cond_pointwise(d, PointwiseKind::unique, yx, Z, r);
      const double s = cond_pointwise(d, PointwiseKind::synergy, xy, Z, r);
      EXPECT_GE(hxy + 1e-9, u);
      EXPECT_NEAR(u, std::max(hx, hy), 1e-12);
      EXPECT_GE(i, -1e-9);
      EXPECT_GE(s, 0.0);
      EXPECT_NEAR(hxy, i + ux + uy + s, 1e-9);
      EXPECT_NEAR(cond_pointwise(d, PointwiseKind::mutual, xy, Z, r), i - s, 1e-9);
    }
  }
}
