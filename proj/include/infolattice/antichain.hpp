#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "infolattice/distribution.hpp"

namespace infolattice {

inline constexpr unsigned kDefaultMaxLatticeVariables = 4;
inline constexpr unsigned kMaxLatticeVariables = 5;

/// Default variable names used when a lattice is not tied to a distribution.
std::vector<std::string> default_variable_names(unsigned n);

/// A nonempty set of pairwise incomparable sources, kept in canonical form:
/// supersets of other members are dropped and the rest sorted by
/// canonical_less.
class Antichain {
 public:
  /// Canonicalizes `sources`; throws ErrorCode::invalid_argument when empty
  /// or when a source is empty.
  static Antichain from_sources(std::vector<Source> sources);
  static Antichain from_upset(std::uint32_t upset);

  const std::vector<Source>& sources() const noexcept { return sources_; }
  std::size_t size() const noexcept { return sources_.size(); }

  /// Union of all member variables.
  Source variables() const noexcept;

  /// Bit (m - 1) is set for every source mask m in the up-set of the
  /// antichain. Needs every member inside the first 5 variables.
  std::uint32_t upset(unsigned n) const;

  /// "{x}{y,z}"
  std::string label(std::span<const std::string> names) const;

  bool operator==(const Antichain&) const = default;
  bool operator<(const Antichain& other) const;

 private:
  explicit Antichain(std::vector<Source> sources)
      : sources_(std::move(sources)) {}
  std::vector<Source> sources_;
};

/// All 2^n - 1 nonempty sources in canonical order. 1 <= n <= 5.
std::vector<Source> enumerate_sources(unsigned n);

/// Redundancy order: every source of b contains some source of a.
bool precedes(const Antichain& a, const Antichain& b);

/// Order of the sharing lattice (max-of-mins expressions); the dual of
/// precedes.
bool sharing_precedes(const Antichain& a, const Antichain& b);

/// Greatest lower bound in the redundancy order: minimal sources of a ∪ b.
Antichain meet(const Antichain& a, const Antichain& b);

/// Least upper bound in the redundancy order: minimal pairwise unions.
Antichain join(const Antichain& a, const Antichain& b);

/// Value of the sharing expression encoded by `a`, read as a union of
/// intersections: max over member sets of the min of h over the set.
double eval_sharing(const Antichain& a, std::span<const double> h);

/// Variable indices by descending h, ties broken by ascending index.
std::vector<std::size_t> total_order_reduce(std::span<const double> h);

enum class LatticeKind { redundancy, sharing };

/// All antichains over n variables with the redundancy order, precomputed
/// covers and node lookup. Nodes are listed bottom-up: every node appears
/// after all of its predecessors.
class RedundancyLattice {
 public:
  explicit RedundancyLattice(unsigned n);

  unsigned n() const noexcept { return n_; }
  std::size_t size() const noexcept { return nodes_.size(); }
  const Antichain& node(std::size_t i) const { return nodes_.at(i); }
  const std::vector<Antichain>& nodes() const noexcept { return nodes_; }

  std::size_t bottom() const noexcept { return 0; }
  std::size_t top() const noexcept { return nodes_.size() - 1; }

  std::optional<std::size_t> find(const Antichain& a) const;
  /// Throws ErrorCode::invalid_argument when `a` is not a node.
  std::size_t index_of(const Antichain& a) const;

  bool precedes(std::size_t a, std::size_t b) const;
  std::size_t meet(std::size_t a, std::size_t b) const;
  std::size_t join(std::size_t a, std::size_t b) const;

  /// α⁻: the nodes covered by `i`.
  std::span<const std::size_t> covered_by(std::size_t i) const;
  /// Nodes covering `i`.
  std::span<const std::size_t> covers_of(std::size_t i) const;
  /// {j : j ⪯ i}, in node order.
  std::vector<std::size_t> down_set(std::size_t i) const;

  std::string to_dot(LatticeKind kind,
                     std::span<const std::string> names = {}) const;

 private:
  std::size_t index_of_upset(std::uint32_t upset) const;

  unsigned n_;
  std::vector<Antichain> nodes_;
  std::vector<std::uint32_t> upsets_;
  std::unordered_map<std::uint32_t, std::size_t> by_upset_;
  std::vector<std::vector<std::size_t>> lower_covers_;
  std::vector<std::vector<std::size_t>> upper_covers_;
  // Explicit order relation, row-major [a * size + b]; empty for n = 5.
  std::vector<bool> order_;
};

/// Cached lattice for n variables. n = 5 requires `allow_n5`; anything
/// outside [1, 5] throws ErrorCode::out_of_range.
std::shared_ptr<const RedundancyLattice> enumerate_antichains(
    unsigned n, bool allow_n5 = false);

}  // namespace infolattice
