#pragma once

#include <functional>
#include <optional>
#include <span>

#include "infolattice/distribution.hpp"

namespace infolattice {

/// Logarithm base used for every information quantity.
enum class LogBase { bits, nats, hartleys };

/// Converts an amount measured in nats to the requested units.
double from_nats(double nats, LogBase base) noexcept;

// Pointwise measures. Every function throws ErrorCode::zero_mass when a
// required marginal (or conditioning) mass is zero at r.

double surprisal(const JointDistribution& d, Source s, const Realization& r,
                 LogBase base = LogBase::bits);

/// h(s | given) = h(s, given) - h(given); s and given must be disjoint.
double cond_surprisal(const JointDistribution& d, Source s, Source given,
                      const Realization& r, LogBase base = LogBase::bits);

/// h(a ⊔ b ⊔ ...): the largest marginal surprisal among the sources.
double union_content(const JointDistribution& d, std::span<const Source> sources,
                     const Realization& r, LogBase base = LogBase::bits);

/// h(a ⊓ b ⊓ ...): the smallest marginal surprisal among the sources.
double intersection_content(const JointDistribution& d,
                            std::span<const Source> sources,
                            const Realization& r, LogBase base = LogBase::bits);

/// h(a ∖ b) = max(h(a) - h(b), 0).
double unique_content(const JointDistribution& d, Source a, Source b,
                      const Realization& r, LogBase base = LogBase::bits);

/// h(a ⊕ b ⊕ ...): surprisal of the union of all member variables minus the
/// union content of the sources.
double synergy_content(const JointDistribution& d,
                       std::span<const Source> sources, const Realization& r,
                       LogBase base = LogBase::bits);

/// i(a; b) = h(a) + h(b) - h(a, b). Signed.
double mutual_content(const JointDistribution& d, Source a, Source b,
                      const Realization& r, LogBase base = LogBase::bits);

enum class PointwiseKind { union_content, intersection, unique, synergy, mutual };

/// Evaluates `kind` with every surprisal replaced by its conditional on
/// `given`. With no `given` this is the unconditioned measure. `unique` and
/// `mutual` take exactly two sources.
double cond_pointwise(const JointDistribution& d, PointwiseKind kind,
                      std::span<const Source> sources,
                      std::optional<Source> given, const Realization& r,
                      LogBase base = LogBase::bits);

/// Support-weighted mean of a pointwise functional.
double expected(const JointDistribution& d,
                const std::function<double(const Realization&)>& functional);

}  // namespace infolattice
