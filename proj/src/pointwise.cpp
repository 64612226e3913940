#include "infolattice/pointwise.hpp"

#include <algorithm>
#include <cmath>

#include "infolattice/error.hpp"

namespace infolattice {

double from_nats(double nats, LogBase base) noexcept {
  switch (base) {
    case LogBase::bits: return nats / std::log(2.0);
    case LogBase::nats: return nats;
    case LogBase::hartleys: return nats / std::log(10.0);
  }
  return nats;
}

namespace {

// -log p in the requested base; +0.0 folds a negative zero at p == 1.
double neg_log(double p, LogBase base) {
  return from_nats(-std::log(p), base) + 0.0;
}

void require_sources(std::span<const Source> sources) {
  if (sources.empty()) {
    throw Error(ErrorCode::invalid_argument, "source list is empty");
  }
}

Source union_of(std::span<const Source> sources) {
  Source all;
  for (Source s : sources) all = all | s;
  return all;
}

// Surprisal of s, conditioned on `given` when present.
double h(const JointDistribution& d, Source s, std::optional<Source> given,
         const Realization& r, LogBase base) {
  return given ? cond_surprisal(d, s, *given, r, base)
               : surprisal(d, s, r, base);
}

}  // namespace

double surprisal(const JointDistribution& d, Source s, const Realization& r,
                 LogBase base) {
  const double p = marginal_mass(d, s, r);
  if (p <= 0.0) {
    throw Error(ErrorCode::zero_mass,
                "marginal mass of " + format_source(s, d.variables().names()) +
                    " is zero at this realization");
  }
  return neg_log(p, base);
}

double cond_surprisal(const JointDistribution& d, Source s, Source given,
                      const Realization& r, LogBase base) {
  d.check_source(s);
  d.check_source(given);
  if (!s.disjoint(given)) {
    throw Error(ErrorCode::invalid_argument,
                "conditioned and conditioning sources overlap");
  }
  const double pg = marginal_mass(d, given, r);
  if (pg <= 0.0) throw Error(ErrorCode::zero_mass, "conditioning mass is zero");
  const double pj = marginal_mass(d, s | given, r);
  if (pj <= 0.0) {
    throw Error(ErrorCode::zero_mass, "joint mass is zero at this realization");
  }
  return std::max(0.0, neg_log(pj / pg, base));
}

double union_content(const JointDistribution& d, std::span<const Source> sources,
                     const Realization& r, LogBase base) {
  return cond_pointwise(d, PointwiseKind::union_content, sources, std::nullopt,
                        r, base);
}

double intersection_content(const JointDistribution& d,
                            std::span<const Source> sources,
                            const Realization& r, LogBase base) {
  return cond_pointwise(d, PointwiseKind::intersection, sources, std::nullopt,
                        r, base);
}

double unique_content(const JointDistribution& d, Source a, Source b,
                      const Realization& r, LogBase base) {
  const Source pair[] = {a, b};
  return cond_pointwise(d, PointwiseKind::unique, pair, std::nullopt, r, base);
}

double synergy_content(const JointDistribution& d,
                       std::span<const Source> sources, const Realization& r,
                       LogBase base) {
  return cond_pointwise(d, PointwiseKind::synergy, sources, std::nullopt, r,
                        base);
}

double mutual_content(const JointDistribution& d, Source a, Source b,
                      const Realization& r, LogBase base) {
  const Source pair[] = {a, b};
  return cond_pointwise(d, PointwiseKind::mutual, pair, std::nullopt, r, base);
}

double cond_pointwise(const JointDistribution& d, PointwiseKind kind,
                      std::span<const Source> sources,
                      std::optional<Source> given, const Realization& r,
                      LogBase base) {
  require_sources(sources);
  if (given) {
    for (Source s : sources) {
      if (!s.disjoint(*given)) {
        throw Error(ErrorCode::invalid_argument,
                    "sources must be disjoint from the conditioning source");
      }
    }
  }
  const bool pairwise =
      kind == PointwiseKind::unique || kind == PointwiseKind::mutual;
  if (pairwise && sources.size() != 2) {
    throw Error(ErrorCode::invalid_argument,
                "unique and mutual contents take exactly two sources");
  }

  auto max_h = [&] {
    double m = 0.0;
    for (Source s : sources) m = std::max(m, h(d, s, given, r, base));
    return m;
  };

  switch (kind) {
    case PointwiseKind::union_content:
      return max_h();
    case PointwiseKind::intersection: {
      double m = h(d, sources[0], given, r, base);
      for (Source s : sources.subspan(1)) {
        m = std::min(m, h(d, s, given, r, base));
      }
      return m;
    }
    case PointwiseKind::unique:
      return std::max(h(d, sources[0], given, r, base) -
                          h(d, sources[1], given, r, base),
                      0.0);
    case PointwiseKind::synergy:
      return std::max(h(d, union_of(sources), given, r, base) - max_h(), 0.0);
    case PointwiseKind::mutual:
      if (!sources[0].disjoint(sources[1])) {
        throw Error(ErrorCode::invalid_argument,
                    "mutual content needs disjoint sources");
      }
      return h(d, sources[0], given, r, base) +
             h(d, sources[1], given, r, base) -
             h(d, sources[0] | sources[1], given, r, base);
  }
  throw Error(ErrorCode::internal, "unknown pointwise kind");
}

double expected(const JointDistribution& d,
                const std::function<double(const Realization&)>& functional) {
  double total = 0.0;
  for (const auto& e : d.support()) total += e.p * functional(e.realization);
  return total;
}

}  // namespace infolattice
