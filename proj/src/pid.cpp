#include "infolattice/pid.hpp"

#include <algorithm>
#include <cmath>

#include "infolattice/error.hpp"

namespace infolattice {

Scope Scope::all(const JointDistribution& d) {
  Scope s;
  for (std::size_t i = 0; i < d.num_variables(); ++i) s.variables.push_back(i);
  return s;
}

Source Scope::to_distribution(Source lattice_source) const {
  std::uint32_t mask = 0;
  for (std::size_t k : lattice_source.members()) {
    if (k >= variables.size()) {
      throw Error(ErrorCode::invalid_argument,
                  "source references a variable outside the scope");
    }
    mask |= std::uint32_t{1} << variables[k];
  }
  return Source(mask);
}

std::vector<std::string> Scope::names(const JointDistribution& d) const {
  std::vector<std::string> out;
  for (std::size_t v : variables) out.push_back(d.variables().name(v));
  return out;
}

namespace {

void check_scope(const JointDistribution& d, const Scope& scope) {
  if (scope.variables.empty()) {
    throw Error(ErrorCode::invalid_argument, "scope has no variables");
  }
  std::uint32_t seen = 0;
  for (std::size_t v : scope.variables) {
    if (v >= d.num_variables()) {
      throw Error(ErrorCode::invalid_argument, "scope variable out of range");
    }
    if (seen & (std::uint32_t{1} << v)) {
      throw Error(ErrorCode::invalid_argument, "scope repeats a variable");
    }
    seen |= std::uint32_t{1} << v;
  }
  if (scope.given) {
    d.check_source(*scope.given);
    if (!Source(seen).disjoint(*scope.given)) {
      throw Error(ErrorCode::invalid_argument,
                  "lattice variables overlap the conditioning source");
    }
  }
}

Scope scope_from(const JointDistribution& d, const DecomposeOptions& options) {
  Scope scope = options.variables ? Scope{*options.variables, options.given}
                                  : Scope::all(d);
  if (!options.variables && options.given) {
    // Every non-conditioning variable spans the lattice.
    scope.variables.erase(
        std::remove_if(scope.variables.begin(), scope.variables.end(),
                       [&](std::size_t v) { return options.given->contains(v); }),
        scope.variables.end());
    scope.given = options.given;
  }
  check_scope(d, scope);
  return scope;
}

Decomposition pointwise_with(const JointDistribution& d, const Scope& scope,
                             std::shared_ptr<const RedundancyLattice> lattice,
                             const Realization& r, LogBase base) {
  const auto h = source_surprisals(d, scope, r, base);
  auto valuation = valuate(lattice, h);
  auto partial = mobius_closed_form(valuation);
  Decomposition out;
  out.lattice = std::move(lattice);
  out.names = scope.names(d);
  out.values = std::move(valuation.values);
  out.partials = std::move(partial.partials);
  out.reference = h.back();
  return out;
}

}  // namespace

std::vector<double> source_surprisals(const JointDistribution& d,
                                      const Scope& scope, const Realization& r,
                                      LogBase base) {
  check_scope(d, scope);
  if (scope.variables.size() > kMaxLatticeVariables) {
    throw Error(ErrorCode::out_of_range, "too many lattice variables");
  }
  const std::uint32_t count = std::uint32_t{1} << scope.variables.size();
  std::vector<double> out(count, 0.0);
  for (std::uint32_t m = 1; m < count; ++m) {
    const Source s = scope.to_distribution(Source(m));
    out[m] = scope.given ? cond_surprisal(d, s, *scope.given, r, base)
                         : surprisal(d, s, r, base);
  }
  return out;
}

LatticeValuation valuate(std::shared_ptr<const RedundancyLattice> lattice,
                         std::span<const double> source_values) {
  if (source_values.size() < (std::size_t{1} << lattice->n())) {
    throw Error(ErrorCode::invalid_argument,
                "need one value per source of the lattice");
  }
  LatticeValuation out{lattice, {}};
  out.values.reserve(lattice->size());
  for (const auto& node : lattice->nodes()) {
    double v = source_values[node.sources().front().mask()];
    for (Source s : node.sources()) v = std::min(v, source_values[s.mask()]);
    out.values.push_back(v);
  }
  return out;
}

double redundancy_value(const JointDistribution& d, const Antichain& a,
                        const Realization& r, LogBase base) {
  double v = surprisal(d, a.sources().front(), r, base);
  for (Source s : a.sources()) v = std::min(v, surprisal(d, s, r, base));
  return v;
}

PartialValuation mobius_recursive(const LatticeValuation& valuation) {
  const auto& lattice = *valuation.lattice;
  PartialValuation out{valuation.lattice,
                       std::vector<double>(lattice.size(), 0.0)};
  // Node order is a linear extension, so every predecessor is done first.
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    double below = 0.0;
    for (std::size_t b : lattice.down_set(a)) {
      if (b != a) below += out.partials[b];
    }
    out.partials[a] = valuation.values[a] - below;
  }
  return out;
}

PartialValuation mobius_closed_form(const LatticeValuation& valuation) {
  const auto& lattice = *valuation.lattice;
  PartialValuation out{valuation.lattice,
                       std::vector<double>(lattice.size(), 0.0)};
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    const auto covered = lattice.covered_by(a);
    if (covered.empty()) {
      out.partials[a] = valuation.values[a];
      continue;
    }
    double best = valuation.values[covered.front()];
    for (std::size_t c : covered) best = std::max(best, valuation.values[c]);
    out.partials[a] = valuation.values[a] - best;
  }
  return out;
}

double Decomposition::total() const {
  double sum = 0.0;
  for (double p : partials) sum += p;
  return sum;
}

double Decomposition::residual() const { return std::abs(total() - reference); }

Decomposition decompose_pointwise(const JointDistribution& d,
                                  const Realization& r,
                                  const DecomposeOptions& options) {
  d.check_realization(r);
  if (!d.in_support(r)) {
    throw Error(ErrorCode::out_of_support, "realization is outside the support");
  }
  const Scope scope = scope_from(d, options);
  auto lattice = enumerate_antichains(
      static_cast<unsigned>(scope.variables.size()), options.allow_n5);
  return pointwise_with(d, scope, std::move(lattice), r, options.base);
}

Decomposition decompose_expected(const JointDistribution& d,
                                 const DecomposeOptions& options) {
  const Scope scope = scope_from(d, options);
  auto lattice = enumerate_antichains(
      static_cast<unsigned>(scope.variables.size()), options.allow_n5);
  Decomposition out;
  out.lattice = lattice;
  out.names = scope.names(d);
  out.values.assign(lattice->size(), 0.0);
  out.partials.assign(lattice->size(), 0.0);
  // Fixed lexicographic reduction order over the support.
  for (const auto& e : d.support()) {
    const auto point = pointwise_with(d, scope, lattice, e.realization,
                                      options.base);
    for (std::size_t i = 0; i < lattice->size(); ++i) {
      out.values[i] += e.p * point.values[i];
      out.partials[i] += e.p * point.partials[i];
    }
    out.reference += e.p * point.reference;
  }
  return out;
}

std::vector<std::pair<std::string, Antichain>> trivariate_terms(
    std::span<const std::string> names) {
  if (names.size() != 3) {
    throw Error(ErrorCode::invalid_argument, "trivariate terms need 3 names");
  }
  const std::string& x = names[0];
  const std::string& y = names[1];
  const std::string& z = names[2];
  const Source X = Source::single(0), Y = Source::single(1),
               Z = Source::single(2);
  const Source XY = X | Y, XZ = X | Z, YZ = Y | Z, XYZ = XY | Z;
  auto ac = [](std::vector<Source> s) {
    return Antichain::from_sources(std::move(s));
  };
  auto J = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  auto S = [](const std::string& a, const std::string& b) {
    return "(" + a + "⊕" + b + ")";
  };

  std::vector<std::pair<std::string, Antichain>> out;
  out.emplace_back(x + "⊓" + y + "⊓" + z, ac({X, Y, Z}));
  out.emplace_back("(" + x + "⊓" + y + ")∖" + z, ac({X, Y}));
  out.emplace_back("(" + x + "⊓" + z + ")∖" + y, ac({X, Z}));
  out.emplace_back("(" + y + "⊓" + z + ")∖" + x, ac({Y, Z}));
  out.emplace_back(x + "⊓" + S(y, z), ac({X, YZ}));
  out.emplace_back(y + "⊓" + S(x, z), ac({Y, XZ}));
  out.emplace_back(z + "⊓" + S(x, y), ac({Z, XY}));
  out.emplace_back(x + "∖" + J(y, z), ac({X}));
  out.emplace_back(y + "∖" + J(x, z), ac({Y}));
  out.emplace_back(z + "∖" + J(x, y), ac({Z}));
  out.emplace_back(S(x, y) + "⊓" + S(x, z) + "⊓" + S(y, z), ac({XY, XZ, YZ}));
  out.emplace_back(S(x, y) + "⊓" + S(x, z) + "∖" + J(y, z), ac({XY, XZ}));
  out.emplace_back(S(x, y) + "⊓" + S(y, z) + "∖" + J(x, z), ac({XY, YZ}));
  out.emplace_back(S(x, z) + "⊓" + S(y, z) + "∖" + J(x, y), ac({XZ, YZ}));
  out.emplace_back(S(x, y) + "∖(" + J(x, z) + "⊔" + J(y, z) + ")", ac({XY}));
  out.emplace_back(S(x, z) + "∖(" + J(x, y) + "⊔" + J(y, z) + ")", ac({XZ}));
  out.emplace_back(S(y, z) + "∖(" + J(x, y) + "⊔" + J(x, z) + ")", ac({YZ}));
  out.emplace_back(J(x, y) + "⊕" + J(x, z) + "⊕" + J(y, z), ac({XYZ}));
  return out;
}

std::string partial_term_name(const RedundancyLattice& lattice,
                              std::size_t node,
                              std::span<const std::string> names) {
  const Antichain& a = lattice.node(node);
  if (lattice.n() == 2 && names.size() >= 2) {
    const std::string& x = names[0];
    const std::string& y = names[1];
    if (a.size() == 2) return x + "⊓" + y;
    const Source s = a.sources().front();
    if (s.mask() == 1) return x + "∖" + y;
    if (s.mask() == 2) return y + "∖" + x;
    return x + "⊕" + y;
  }
  if (lattice.n() == 3 && names.size() >= 3) {
    for (auto& [name, term] : trivariate_terms(names.first(3))) {
      if (term == a) return name;
    }
  }
  return {};
}

std::vector<NamedTerm> trivariate_report(const JointDistribution& d,
                                         const Realization& r, LogBase base) {
  if (d.num_variables() != 3) {
    throw Error(ErrorCode::invalid_argument,
                "trivariate report needs exactly three variables");
  }
  DecomposeOptions options;
  options.base = base;
  const auto dec = decompose_pointwise(d, r, options);
  std::vector<NamedTerm> out;
  for (auto& [name, term] : trivariate_terms(dec.names)) {
    const std::size_t node = dec.lattice->index_of(term);
    out.push_back({name, node, dec.partials[node]});
  }
  return out;
}

double MiDecomposition::decomposition_residual() const {
  return std::abs(joint - (intersection + unique_a + unique_b + synergy));
}

double MiDecomposition::coinformation_residual() const {
  return std::abs(coinformation - (intersection - synergy));
}

namespace {

void check_mi_sources(const JointDistribution& d, Source a, Source b,
                      Source target) {
  d.check_source(a);
  d.check_source(b);
  d.check_source(target);
  if (!a.disjoint(b) || !a.disjoint(target) || !b.disjoint(target)) {
    throw Error(ErrorCode::invalid_argument,
                "predictors and target must be pairwise disjoint");
  }
}

}  // namespace

MiDecomposition mi_decompose(const JointDistribution& d, Source a, Source b,
                             Source target, const Realization& r,
                             LogBase base) {
  check_mi_sources(d, a, b, target);
  const Source ab[] = {a, b};
  const Source ba[] = {b, a};
  auto diff = [&](PointwiseKind kind, std::span<const Source> sources) {
    return cond_pointwise(d, kind, sources, std::nullopt, r, base) -
           cond_pointwise(d, kind, sources, target, r, base);
  };
  MiDecomposition out;
  out.union_info = diff(PointwiseKind::union_content, ab);
  out.unique_a = diff(PointwiseKind::unique, ab);
  out.unique_b = diff(PointwiseKind::unique, ba);
  out.intersection = diff(PointwiseKind::intersection, ab);
  out.synergy = diff(PointwiseKind::synergy, ab);
  out.joint = surprisal(d, a | b, r, base) - cond_surprisal(d, a | b, target, r, base);
  out.coinformation = diff(PointwiseKind::mutual, ab);
  return out;
}

MiDecomposition mi_decompose_expected(const JointDistribution& d, Source a,
                                      Source b, Source target, LogBase base) {
  check_mi_sources(d, a, b, target);
  MiDecomposition out;
  for (const auto& e : d.support()) {
    const auto m = mi_decompose(d, a, b, target, e.realization, base);
    out.union_info += e.p * m.union_info;
    out.unique_a += e.p * m.unique_a;
    out.unique_b += e.p * m.unique_b;
    out.intersection += e.p * m.intersection;
    out.synergy += e.p * m.synergy;
    out.joint += e.p * m.joint;
    out.coinformation += e.p * m.coinformation;
  }
  return out;
}

}  // namespace infolattice
