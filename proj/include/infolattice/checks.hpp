#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "infolattice/distribution.hpp"
#include "infolattice/pointwise.hpp"

namespace infolattice {

struct RandomDistributionOptions {
  unsigned n = 2;
  std::uint32_t min_cardinality = 2;
  std::uint32_t max_cardinality = 3;
  /// When set, half of the draws keep each grid cell with probability 0.5.
  bool allow_sparse = true;
};

/// Seed for trial `trial` derived from the master seed (splitmix64), so the
/// result never depends on how trials are scheduled.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept;

/// Masses are a uniform draw from the simplex over the outcome grid
/// (normalized unit exponentials), optionally sparsified.
JointDistribution random_distribution(std::mt19937_64& rng,
                                      const RandomDistributionOptions& options);

enum class CheckSuite { props, lemmas, mobius, pie, pointwise, mi, trivariate };

const char* to_string(CheckSuite suite) noexcept;
std::optional<CheckSuite> parse_suite(std::string_view name) noexcept;

struct CheckConfig {
  CheckSuite suite = CheckSuite::props;
  std::uint64_t seed = 7;
  std::size_t trials = 1000;
  double tolerance = 1e-9;
  LogBase base = LogBase::bits;
};

struct LawResult {
  std::string name;
  std::size_t cases = 0;
  double max_residual = 0.0;
  bool passed = true;
};

struct CheckReport {
  CheckConfig config;
  std::vector<LawResult> laws;

  bool passed() const;
};

/// Runs one randomized suite. Throws ErrorCode::invalid_argument for a
/// non-positive tolerance or zero trials.
CheckReport run_check(const CheckConfig& config);

}  // namespace infolattice
