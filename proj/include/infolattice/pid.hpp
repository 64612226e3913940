#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "infolattice/antichain.hpp"
#include "infolattice/distribution.hpp"
#include "infolattice/pointwise.hpp"

namespace infolattice {

/// Binds lattice variable k to distribution variable `variables[k]`, with an
/// optional conditioning source that every node value is conditioned on.
struct Scope {
  std::vector<std::size_t> variables;
  std::optional<Source> given;

  /// All variables of `d`, unconditioned.
  static Scope all(const JointDistribution& d);

  /// Maps a lattice-space source to the distribution's variable indices.
  Source to_distribution(Source lattice_source) const;
  std::vector<std::string> names(const JointDistribution& d) const;
};

/// A value per lattice node, indexed like RedundancyLattice::nodes().
struct LatticeValuation {
  std::shared_ptr<const RedundancyLattice> lattice;
  std::vector<double> values;
};

/// Möbius inverse of a LatticeValuation.
struct PartialValuation {
  std::shared_ptr<const RedundancyLattice> lattice;
  std::vector<double> partials;
};

/// Surprisal of every lattice-space source at r, indexed by source mask
/// (entry 0 unused).
std::vector<double> source_surprisals(const JointDistribution& d,
                                      const Scope& scope, const Realization& r,
                                      LogBase base = LogBase::bits);

/// h(α) = min over the sources of α of their surprisal values.
LatticeValuation valuate(std::shared_ptr<const RedundancyLattice> lattice,
                         std::span<const double> source_values);

/// h(α) for an antichain over the distribution's own variable indices.
double redundancy_value(const JointDistribution& d, const Antichain& a,
                        const Realization& r, LogBase base = LogBase::bits);

/// h∂(α) = h(α) - Σ_{β ≺ α} h∂(β), evaluated bottom-up.
PartialValuation mobius_recursive(const LatticeValuation& valuation);

/// h∂(α) = h(α) - max over the nodes covered by α; h∂(bottom) = h(bottom).
/// Only valid for pointwise (min/max) valuations.
PartialValuation mobius_closed_form(const LatticeValuation& valuation);

struct DecomposeOptions {
  /// Distribution variables spanning the lattice; all variables when unset.
  std::optional<std::vector<std::size_t>> variables;
  std::optional<Source> given;
  LogBase base = LogBase::bits;
  bool allow_n5 = false;
};

struct Decomposition {
  std::shared_ptr<const RedundancyLattice> lattice;
  std::vector<std::string> names;
  std::vector<double> values;
  std::vector<double> partials;
  /// h(top) (pointwise) or the joint entropy (expected), computed directly.
  double reference = 0.0;

  double total() const;
  double residual() const;
};

/// Pointwise decomposition at a support realization.
Decomposition decompose_pointwise(const JointDistribution& d,
                                  const Realization& r,
                                  const DecomposeOptions& options = {});

/// Expectation over the support of the pointwise partials and node values.
Decomposition decompose_expected(const JointDistribution& d,
                                 const DecomposeOptions& options = {});

/// Name of the quantity a node's partial represents, for n = 2 and n = 3
/// (e.g. "x⊓(y⊕z)"); empty for other lattice sizes.
std::string partial_term_name(const RedundancyLattice& lattice,
                              std::size_t node,
                              std::span<const std::string> names);

struct NamedTerm {
  std::string name;
  std::size_t node = 0;
  double value = 0.0;
};

/// The 18 terms of the three-variable decomposition of h(x,y,z), in
/// reading order from h(x⊓y⊓z) to h((x,y)⊕(x,z)⊕(y,z)), each paired with
/// its node in the n = 3 lattice.
std::vector<std::pair<std::string, Antichain>> trivariate_terms(
    std::span<const std::string> names);

/// Requires a three-variable distribution and a support realization.
std::vector<NamedTerm> trivariate_report(const JointDistribution& d,
                                         const Realization& r,
                                         LogBase base = LogBase::bits);

/// Mutual-information family of predictors a, b about target t. Each of the
/// first five values is the unconditioned content minus the content
/// conditioned on t. All values are signed.
struct MiDecomposition {
  double union_info = 0.0;
  double unique_a = 0.0;
  double unique_b = 0.0;
  double intersection = 0.0;
  double synergy = 0.0;
  /// i(a,b; t), computed directly.
  double joint = 0.0;
  /// i(a; b; t) = i(a; b) - i(a; b | t), computed directly.
  double coinformation = 0.0;

  double decomposition_residual() const;
  double coinformation_residual() const;
};

MiDecomposition mi_decompose(const JointDistribution& d, Source a, Source b,
                             Source target, const Realization& r,
                             LogBase base = LogBase::bits);

MiDecomposition mi_decompose_expected(const JointDistribution& d, Source a,
                                      Source b, Source target,
                                      LogBase base = LogBase::bits);

}  // namespace infolattice
