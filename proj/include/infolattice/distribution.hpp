#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace infolattice {

inline constexpr std::size_t kMaxVariables = 32;
inline constexpr double kNormalizationTolerance = 1e-12;

/// Names and cardinalities of the variables of a joint distribution.
class VariableSet {
 public:
  VariableSet(std::vector<std::string> names,
              std::vector<std::uint32_t> cardinalities);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::uint32_t cardinality(std::size_t i) const { return cards_.at(i); }
  const std::vector<std::uint32_t>& cardinalities() const noexcept {
    return cards_;
  }

  /// Index of the named variable; throws ErrorCode::invalid_argument.
  std::size_t index_of(std::string_view name) const;

  bool operator==(const VariableSet&) const = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::uint32_t> cards_;
};

/// One full assignment of category indices, aligned with a VariableSet.
struct Realization {
  std::vector<std::uint32_t> values;

  std::size_t size() const noexcept { return values.size(); }
  std::uint32_t operator[](std::size_t i) const { return values[i]; }
  auto operator<=>(const Realization&) const = default;
};

/// Nonempty set of variable indices, stored as a bit mask.
class Source {
 public:
  constexpr Source() = default;
  constexpr explicit Source(std::uint32_t mask) : mask_(mask) {}

  static Source of(std::initializer_list<std::size_t> members);
  static Source of(std::span<const std::size_t> members);
  static constexpr Source single(std::size_t i) {
    return Source(std::uint32_t{1} << i);
  }

  constexpr std::uint32_t mask() const noexcept { return mask_; }
  constexpr bool empty() const noexcept { return mask_ == 0; }
  int size() const noexcept;
  constexpr bool contains(std::size_t i) const noexcept {
    return (mask_ >> i) & 1u;
  }
  constexpr bool subset_of(Source other) const noexcept {
    return (mask_ & ~other.mask_) == 0;
  }
  constexpr bool disjoint(Source other) const noexcept {
    return (mask_ & other.mask_) == 0;
  }
  constexpr Source operator|(Source other) const noexcept {
    return Source(mask_ | other.mask_);
  }
  std::vector<std::size_t> members() const;

  constexpr bool operator==(const Source&) const = default;

 private:
  std::uint32_t mask_ = 0;
};

/// Canonical source order: by size, then lexicographic member order.
bool canonical_less(Source a, Source b) noexcept;

/// Formats a source as "{x,y}" using the given variable names.
std::string format_source(Source s, std::span<const std::string> names);

/// Immutable discrete joint pmf. Only positive-mass assignments are stored.
class JointDistribution {
 public:
  struct Entry {
    Realization realization;
    double p;
  };

  /// Validates and builds a distribution. Rows with p == 0 are accepted and
  /// dropped; unlisted assignments have mass 0.
  JointDistribution(VariableSet vars, std::vector<Entry> rows);

  const VariableSet& variables() const noexcept { return vars_; }
  std::size_t num_variables() const noexcept { return vars_.size(); }

  /// Positive-mass entries in lexicographic order of the realization.
  const std::vector<Entry>& support() const noexcept { return support_; }

  bool in_support(const Realization& r) const;

  /// Throws unless r has one valid category index per variable.
  void check_realization(const Realization& r) const;
  void check_source(Source s) const;

  Source all_variables() const noexcept;

 private:
  VariableSet vars_;
  std::vector<Entry> support_;
};

double marginal_mass(const JointDistribution& d, Source s,
                     const Realization& r);

double conditional_mass(const JointDistribution& d, Source s, Source given,
                        const Realization& r);

inline const std::vector<JointDistribution::Entry>& support(
    const JointDistribution& d) {
  return d.support();
}

enum class InputFormat { json, csv };

JointDistribution load_distribution(std::string_view document,
                                    InputFormat format);

/// Picks the format from the extension (".csv" means CSV, anything else is
/// sniffed: a leading '{' means JSON).
JointDistribution load_distribution_file(const std::filesystem::path& path);

}  // namespace infolattice
