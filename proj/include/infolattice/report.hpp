#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infolattice/checks.hpp"
#include "infolattice/distribution.hpp"
#include "infolattice/pid.hpp"
#include "infolattice/pointwise.hpp"

namespace infolattice {

const char* unit_name(LogBase base) noexcept;

/// Fixed 9-decimal rendering; never prints "-0.000000000".
std::string format_value(double v);

/// Residuals in scientific notation, e.g. "1.234e-12".
std::string format_residual(double v);

struct DecompositionInfo {
  /// Empty for the expected decomposition.
  std::optional<Realization> realization;
  std::optional<std::vector<std::string>> given;
  LogBase base = LogBase::bits;
  double tolerance = 1e-9;
};

std::string decomposition_text(const Decomposition& d,
                               const DecompositionInfo& info);
std::string decomposition_structured(const Decomposition& d,
                                     const DecompositionInfo& info);

struct MiInfo {
  std::string a, b, target;
  std::optional<Realization> realization;
  LogBase base = LogBase::bits;
  double tolerance = 1e-9;
};

std::string mi_text(const MiDecomposition& m, const MiInfo& info);
std::string mi_structured(const MiDecomposition& m, const MiInfo& info);

std::string check_text(const CheckReport& report);
std::string check_structured(const CheckReport& report);

}  // namespace infolattice
