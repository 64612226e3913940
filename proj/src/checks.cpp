#include "infolattice/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>

#include "infolattice/antichain.hpp"
#include "infolattice/error.hpp"
#include "infolattice/expression.hpp"
#include "infolattice/pid.hpp"
#include "infolattice/pointwise.hpp"

namespace infolattice {

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  std::uint64_t z = master + (trial + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Portable draws; the standard distributions are implementation-defined.
std::uint64_t below(std::mt19937_64& rng, std::uint64_t bound) {
  return rng() % bound;
}

double unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

JointDistribution random_distribution(std::mt19937_64& rng,
                                      const RandomDistributionOptions& options) {
  if (options.n < 1 || options.min_cardinality < 2 ||
      options.max_cardinality < options.min_cardinality) {
    throw Error(ErrorCode::invalid_argument, "bad random distribution options");
  }
  std::vector<std::string> names;
  std::vector<std::uint32_t> cards;
  const auto defaults = default_variable_names(options.n);
  std::size_t cells = 1;
  for (unsigned i = 0; i < options.n; ++i) {
    names.push_back(defaults[i]);
    cards.push_back(options.min_cardinality +
                    static_cast<std::uint32_t>(below(
                        rng, options.max_cardinality - options.min_cardinality + 1)));
    cells *= cards.back();
  }

  const bool sparse = options.allow_sparse && below(rng, 2) == 1;
  std::vector<double> weights(cells, 0.0);
  double total = 0.0;
  for (auto& w : weights) {
    const bool keep = !sparse || below(rng, 2) == 1;
    const double draw = -std::log1p(-unit(rng));
    if (keep) {
      w = draw;
      total += w;
    }
  }
  if (total <= 0.0) {
    weights[below(rng, cells)] = 1.0;
    total = 1.0;
  }

  std::vector<JointDistribution::Entry> rows;
  Realization r;
  r.values.assign(options.n, 0);
  for (std::size_t cell = 0; cell < cells; ++cell) {
    if (weights[cell] > 0.0) rows.push_back({r, weights[cell] / total});
    // Odometer over the grid, last variable fastest.
    for (std::size_t i = options.n; i-- > 0;) {
      if (++r.values[i] < cards[i]) break;
      r.values[i] = 0;
    }
  }
  return JointDistribution(VariableSet(std::move(names), std::move(cards)),
                           std::move(rows));
}

const char* to_string(CheckSuite suite) noexcept {
  switch (suite) {
    case CheckSuite::props: return "props";
    case CheckSuite::lemmas: return "lemmas";
    case CheckSuite::mobius: return "mobius";
    case CheckSuite::pie: return "pie";
    case CheckSuite::pointwise: return "pointwise";
    case CheckSuite::mi: return "mi";
    case CheckSuite::trivariate: return "trivariate";
  }
  return "unknown";
}

std::optional<CheckSuite> parse_suite(std::string_view name) noexcept {
  for (auto s : {CheckSuite::props, CheckSuite::lemmas, CheckSuite::mobius,
                 CheckSuite::pie, CheckSuite::pointwise, CheckSuite::mi,
                 CheckSuite::trivariate}) {
    if (name == to_string(s)) return s;
  }
  return std::nullopt;
}

bool CheckReport::passed() const {
  return std::all_of(laws.begin(), laws.end(),
                     [](const LawResult& l) { return l.passed; });
}

namespace {

class LawTable {
 public:
  explicit LawTable(std::vector<std::string> names) {
    for (auto& n : names) laws_.push_back({std::move(n), 0, 0.0, true});
    tolerance_.assign(laws_.size(), std::nullopt);
  }

  // Fixed-value laws carry their own tolerance instead of the configured one.
  void pin_tolerance(std::size_t law, double tolerance) {
    tolerance_.at(law) = tolerance;
  }

  void record(std::size_t law, double residual) {
    auto& l = laws_.at(law);
    ++l.cases;
    if (!(residual <= l.max_residual)) l.max_residual = residual;
  }

  std::vector<LawResult> finish(double tolerance) {
    for (std::size_t i = 0; i < laws_.size(); ++i) {
      laws_[i].passed = laws_[i].max_residual <= tolerance_[i].value_or(tolerance);
    }
    return std::move(laws_);
  }

 private:
  std::vector<LawResult> laws_;
  std::vector<std::optional<double>> tolerance_;
};

std::vector<double> random_surprisals(std::mt19937_64& rng, unsigned n) {
  std::vector<double> h(n);
  for (unsigned i = 0; i < n; ++i) {
    h[i] = 8.0 * unit(rng);
    if (i > 0 && below(rng, 4) == 0) h[i] = h[below(rng, i)];
  }
  return h;
}

std::vector<LawResult> check_props(const CheckConfig& c) {
  enum { idem, comm, assoc, absorb, distrib, connex, monotone };
  LawTable laws({"idempotence", "commutativity", "associativity", "absorption",
                 "distributivity", "connexity", "monotonicity"});
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const unsigned n = 2 + static_cast<unsigned>(below(rng, 3));
    const auto lattice = enumerate_antichains(n);
    const auto h = random_surprisals(rng, n);
    auto pick = [&]() -> const Antichain& {
      return lattice->node(below(rng, lattice->size()));
    };
    auto E = [&](const Antichain& a) { return eval_sharing(a, h); };
    // In the sharing lattice ⊔ is the redundancy meet and ⊓ the join.
    auto cup = [](const Antichain& a, const Antichain& b) { return meet(a, b); };
    auto cap = [](const Antichain& a, const Antichain& b) { return join(a, b); };

    for (int k = 0; k < 8; ++k) {
      const Antichain& a = pick();
      const Antichain& b = pick();
      const Antichain& g = pick();
      laws.record(idem, std::abs(E(cup(a, a)) - E(a)));
      laws.record(idem, std::abs(E(cap(a, a)) - E(a)));
      laws.record(comm, std::abs(E(cup(a, b)) - E(cup(b, a))));
      laws.record(comm, std::abs(E(cap(a, b)) - E(cap(b, a))));
      laws.record(comm, std::abs(E(cup(a, b)) - std::max(E(a), E(b))));
      laws.record(comm, std::abs(E(cap(a, b)) - std::min(E(a), E(b))));
      laws.record(assoc, std::abs(E(cup(cup(a, b), g)) - E(cup(a, cup(b, g)))));
      laws.record(assoc, std::abs(E(cap(cap(a, b), g)) - E(cap(a, cap(b, g)))));
      laws.record(absorb, std::abs(E(cup(a, cap(a, b))) - E(a)));
      laws.record(absorb, std::abs(E(cap(a, cup(a, b))) - E(a)));
      laws.record(distrib,
                  std::abs(E(cap(a, cup(b, g))) - E(cup(cap(a, b), cap(a, g)))));
      laws.record(distrib,
                  std::abs(E(cup(a, cap(b, g))) - E(cap(cup(a, b), cup(a, g)))));
      if (sharing_precedes(a, b)) {
        laws.record(monotone, std::max(0.0, E(a) - E(b)));
      }
    }
    auto connexity = [&](std::span<const double> hs) {
      for (const auto& node : lattice->nodes()) {
        const double v = eval_sharing(node, hs);
        double gap = std::numeric_limits<double>::infinity();
        for (double hi : hs) gap = std::min(gap, std::abs(v - hi));
        laws.record(connex, gap);
      }
    };
    connexity(h);
    const auto d = random_distribution(rng, {n, 2, 3, true});
    for (const auto& e : d.support()) {
      std::vector<double> hs;
      for (unsigned i = 0; i < n; ++i) {
        hs.push_back(surprisal(d, Source::single(i), e.realization, c.base));
      }
      connexity(hs);
    }
  }
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_pie(const CheckConfig& c) {
  LawTable laws({"max-min identity (union)", "min-max identity (intersection)"});
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const unsigned n = 1 + static_cast<unsigned>(below(rng, 5));
    const auto h = random_surprisals(rng, n);
    double alt_min = 0.0, alt_max = 0.0;
    for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) {
      double lo = std::numeric_limits<double>::infinity();
      double hi = -lo;
      for (std::size_t i : Source(s).members()) {
        lo = std::min(lo, h[i]);
        hi = std::max(hi, h[i]);
      }
      const double sign = (Source(s).size() % 2 == 1) ? 1.0 : -1.0;
      alt_min += sign * lo;
      alt_max += sign * hi;
    }
    laws.record(0, std::abs(*std::max_element(h.begin(), h.end()) - alt_min));
    laws.record(1, std::abs(*std::min_element(h.begin(), h.end()) - alt_max));
  }
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_mobius(const CheckConfig& c) {
  enum { agree, nonneg, sum, monotone, order, named };
  LawTable laws({"closed form = recursive", "partials non-negative",
                 "partials sum to h(top)", "valuation monotone",
                 "expectation commutes with inversion",
                 "n=2 partials = pointwise contents"});
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const unsigned n = 2 + static_cast<unsigned>(t % 2);
    const auto d = random_distribution(rng, {n, 2, n == 2 ? 4u : 3u, true});
    const auto lattice = enumerate_antichains(n);
    const auto scope = Scope::all(d);
    std::vector<double> expected_values(lattice->size(), 0.0);
    std::vector<double> expected_partials(lattice->size(), 0.0);
    for (const auto& e : d.support()) {
      const auto h = source_surprisals(d, scope, e.realization, c.base);
      const auto valuation = valuate(lattice, h);
      const auto closed = mobius_closed_form(valuation);
      const auto recursive = mobius_recursive(valuation);
      double total = 0.0;
      for (std::size_t i = 0; i < lattice->size(); ++i) {
        laws.record(agree, std::abs(closed.partials[i] - recursive.partials[i]));
        laws.record(nonneg, std::max(0.0, -closed.partials[i]));
        total += closed.partials[i];
        for (std::size_t lo : lattice->covered_by(i)) {
          laws.record(monotone,
                      std::max(0.0, valuation.values[lo] - valuation.values[i]));
        }
        expected_values[i] += e.p * valuation.values[i];
        expected_partials[i] += e.p * closed.partials[i];
      }
      laws.record(sum, std::abs(total - h.back()));
      if (n == 2) {
        const Source x = Source::single(0), y = Source::single(1);
        const Source xy[] = {x, y};
        const auto& r = e.realization;
        const auto& L = *lattice;
        auto at = [&](std::vector<Source> s) {
          return closed.partials[L.index_of(Antichain::from_sources(std::move(s)))];
        };
        laws.record(named, std::abs(at({x, y}) - intersection_content(d, xy, r, c.base)));
        laws.record(named, std::abs(at({x}) - unique_content(d, x, y, r, c.base)));
        laws.record(named, std::abs(at({y}) - unique_content(d, y, x, r, c.base)));
        laws.record(named, std::abs(at({x | y}) - synergy_content(d, xy, r, c.base)));
      }
    }
    const auto inverted =
        mobius_recursive(LatticeValuation{lattice, expected_values});
    for (std::size_t i = 0; i < lattice->size(); ++i) {
      laws.record(order, std::abs(inverted.partials[i] - expected_partials[i]));
    }
  }
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_lemmas(const CheckConfig& c) {
  std::vector<std::string> names;
  for (int i = 1; i <= 9; ++i) names.push_back("L" + std::to_string(i));
  LawTable laws(names);
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    for (const auto& e : d.support()) {
      const auto results = lemma_suite(d, e.realization, c.base);
      for (std::size_t i = 0; i < results.size(); ++i) {
        laws.record(i, results[i].residual());
      }
    }
  }
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_pointwise(const CheckConfig& c) {
  enum { chain, union_max, decomp, zero_unique, mi_split, mi_nonneg,
         entropy_split, witness, anti };
  LawTable laws({"joint >= union >= max >= min >= 0", "union = max exactly",
                 "h(x,y) = intersection + uniques + synergy",
                 "one unique content is exactly 0", "i(x;y) = intersection - synergy",
                 "E[i(x;y)] >= 0", "H(X⊓Y) - H(X⊕Y) = I(X;Y)",
                 "negative pointwise i(x;y) observed",
                 "fixed ANTI case i(0;0) = log(0.1/0.25)"});
  laws.pin_tolerance(anti, 1e-6);
  bool negative_seen = false;
  const Source x = Source::single(0), y = Source::single(1);
  const Source xy[] = {x, y};
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const auto d = random_distribution(rng, {2, 2, 4, true});
    double mi = 0.0, inter = 0.0, syn = 0.0;
    for (const auto& e : d.support()) {
      const auto& r = e.realization;
      const double hx = surprisal(d, x, r, c.base);
      const double hy = surprisal(d, y, r, c.base);
      const double hxy = surprisal(d, x | y, r, c.base);
      const double u = union_content(d, xy, r, c.base);
      const double lo = intersection_content(d, xy, r, c.base);
      const double ux = unique_content(d, x, y, r, c.base);
      const double uy = unique_content(d, y, x, r, c.base);
      const double s = synergy_content(d, xy, r, c.base);
      const double i = mutual_content(d, x, y, r, c.base);
      const double hi = std::max(hx, hy);
      laws.record(chain, std::max({0.0, u - hxy, hi - u, lo - hi, -lo}));
      laws.record(union_max, u == hi ? 0.0 : std::abs(u - hi) + 1.0);
      laws.record(decomp, std::abs(hxy - (lo + ux + uy + s)));
      laws.record(zero_unique, (ux == 0.0 || uy == 0.0) ? 0.0 : std::min(ux, uy));
      laws.record(mi_split, std::abs(i - (lo - s)));
      if (i < 0.0) negative_seen = true;
      mi += e.p * i;
      inter += e.p * lo;
      syn += e.p * s;
    }
    laws.record(mi_nonneg, std::max(0.0, -mi));
    laws.record(entropy_split, std::abs((inter - syn) - mi));
  }
  {
    const JointDistribution d(VariableSet({"x", "y"}, {2, 2}),
                              {{{{0, 0}}, 0.1}, {{{0, 1}}, 0.4},
                               {{{1, 0}}, 0.4}, {{{1, 1}}, 0.1}});
    const Realization r{{0, 0}};
    const double i = mutual_content(d, x, y, r, c.base);
    if (i < 0.0) negative_seen = true;
    laws.record(anti, std::abs(i - from_nats(std::log(0.1 / 0.25), c.base)));
  }
  laws.record(witness, negative_seen ? 0.0 : 1.0);
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_mi(const CheckConfig& c) {
  enum { pw_decomp, pw_coinfo, ex_decomp, ex_coinfo };
  LawTable laws({"i(x,y;z) = sum of four parts", "i(x;y;z) = i(x⊓y;z) - i(x⊕y;z)",
                 "I(X,Y;Z) = sum of four parts", "I(X;Y;Z) = I(X⊓Y;Z) - I(X⊕Y;Z)"});
  const Source x = Source::single(0), y = Source::single(1), z = Source::single(2);
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    for (const auto& e : d.support()) {
      const auto m = mi_decompose(d, x, y, z, e.realization, c.base);
      laws.record(pw_decomp, m.decomposition_residual());
      laws.record(pw_coinfo, m.coinformation_residual());
    }
    const auto m = mi_decompose_expected(d, x, y, z, c.base);
    laws.record(ex_decomp, m.decomposition_residual());
    laws.record(ex_coinfo, m.coinformation_residual());
  }
  return laws.finish(c.tolerance);
}

std::vector<LawResult> check_trivariate(const CheckConfig& c) {
  LawTable laws({"18 named terms sum to h(x,y,z)", "named terms non-negative"});
  const Source xyz = Source(0b111);
  for (std::size_t t = 0; t < c.trials; ++t) {
    std::mt19937_64 rng(trial_seed(c.seed, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    for (const auto& e : d.support()) {
      double total = 0.0;
      for (const auto& term : trivariate_report(d, e.realization, c.base)) {
        total += term.value;
        laws.record(1, std::max(0.0, -term.value));
      }
      laws.record(0, std::abs(total - surprisal(d, xyz, e.realization, c.base)));
    }
  }
  return laws.finish(c.tolerance);
}

}  // namespace

CheckReport run_check(const CheckConfig& config) {
  if (!(config.tolerance > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "tolerance must be positive");
  }
  if (config.trials < 1) {
    throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  }
  CheckReport report{config, {}};
  switch (config.suite) {
    case CheckSuite::props: report.laws = check_props(config); break;
    case CheckSuite::lemmas: report.laws = check_lemmas(config); break;
    case CheckSuite::mobius: report.laws = check_mobius(config); break;
    case CheckSuite::pie: report.laws = check_pie(config); break;
    case CheckSuite::pointwise: report.laws = check_pointwise(config); break;
    case CheckSuite::mi: report.laws = check_mi(config); break;
    case CheckSuite::trivariate: report.laws = check_trivariate(config); break;
  }
  return report;
}

}  // namespace infolattice
