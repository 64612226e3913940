#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "infolattice/checks.hpp"
#include "infolattice/error.hpp"
#include "infolattice/expression.hpp"
#include "infolattice/pid.hpp"
#include "infolattice/pointwise.hpp"

using namespace infolattice;

namespace {

const Source X = Source::single(0);
const Source Y = Source::single(1);
const Source Z = Source::single(2);

Antichain A(std::vector<Source> s) { return Antichain::from_sources(std::move(s)); }

double partial_at(const Decomposition& d, const Antichain& a) {
  return d.partials[d.lattice->index_of(a)];
}

// Independent Möbius inversion: node values from raw-row surprisals, partials
// from h∂(α) = h(α) - Σ over strict predecessors, with the order taken from
// the subset definition.
std::vector<double> oracle_partials(const RedundancyLattice& L,
                                    const std::vector<fixtures::Row>& rows,
                                    const std::vector<std::uint32_t>& r) {
  auto le = [](const Antichain& a, const Antichain& b) {
    for (Source B : b.sources()) {
      bool found = false;
      for (Source Am : a.sources()) found = found || Am.subset_of(B);
      if (!found) return false;
    }
    return true;
  };
  std::vector<double> value(L.size()), partial(L.size());
  for (std::size_t i = 0; i < L.size(); ++i) {
    double v = INFINITY;
    for (Source s : L.node(i).sources()) v = std::min(v, fixtures::oracle_h(rows, s.mask(), r));
    value[i] = v;
  }
  // Bottom-up by repeated passes so the node listing order is not assumed.
  std::vector<bool> done(L.size(), false);
  for (std::size_t pass = 0; pass < L.size(); ++pass) {
    for (std::size_t i = 0; i < L.size(); ++i) {
      if (done[i]) continue;
      bool ready = true;
      double below = 0.0;
      for (std::size_t j = 0; j < L.size(); ++j) {
        if (j != i && le(L.node(j), L.node(i))) {
          if (!done[j]) ready = false;
          below += partial[j];
        }
      }
      if (ready) {
        partial[i] = value[i] - below;
        done[i] = true;
      }
    }
  }
  return partial;
}

}  // namespace

TEST(RedundancyValue, Examples) {
  const auto d = fixtures::xor3();
  for (const auto& e : d.support()) {
    EXPECT_DOUBLE_EQ(redundancy_value(d, A({X, Y}), e.realization), 1.0);
    EXPECT_DOUBLE_EQ(redundancy_value(d, A({X | Y, X | Z, Y | Z}), e.realization), 2.0);
    EXPECT_DOUBLE_EQ(redundancy_value(d, A({X | Y | Z}), e.realization),
                     surprisal(d, X | Y | Z, e.realization));
  }
}

TEST(Mobius, BivariateExamples) {
  const auto copy = decompose_pointwise(fixtures::copy(), Realization{{1, 1}});
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X, Y})), 1.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({Y})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X | Y})), 0.0);

  const auto pair = decompose_pointwise(fixtures::unif2(), Realization{{0, 1}});
  EXPECT_DOUBLE_EQ(partial_at(pair, A({X, Y})), 1.0);
  EXPECT_DOUBLE_EQ(partial_at(pair, A({X})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(pair, A({Y})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(pair, A({X | Y})), 1.0);

  const auto one = decompose_pointwise(fixtures::biased(), Realization{{1}});
  ASSERT_EQ(one.partials.size(), 1u);
  EXPECT_DOUBLE_EQ(one.partials[0], one.values[0]);
  EXPECT_DOUBLE_EQ(one.partials[0], 2.0);
}

TEST(Mobius, ClosedFormMatchesRecursiveOnExamples) {
  for (const auto& d : {fixtures::copy(), fixtures::unif2(), fixtures::xor3()}) {
    const auto lattice = enumerate_antichains(static_cast<unsigned>(d.num_variables()));
    for (const auto& e : d.support()) {
      const auto h = source_surprisals(d, Scope::all(d), e.realization);
      const auto v = valuate(lattice, h);
      const auto closed = mobius_closed_form(v);
      const auto rec = mobius_recursive(v);
      for (std::size_t i = 0; i < lattice->size(); ++i) {
        EXPECT_NEAR(closed.partials[i], rec.partials[i], 1e-12);
      }
      EXPECT_EQ(closed.partials[lattice->bottom()], v.values[lattice->bottom()]);
    }
  }
  const auto xor3 = decompose_pointwise(fixtures::xor3(), Realization{{0, 1, 1}});
  EXPECT_DOUBLE_EQ(xor3.partials[xor3.lattice->top()], 0.0);
}

TEST(Decompose, XorPointwise) {
  const auto d = fixtures::xor3();
  for (const auto& e : d.support()) {
    const auto dec = decompose_pointwise(d, e.realization);
    ASSERT_EQ(dec.partials.size(), 18u);
    EXPECT_NEAR(dec.total(), 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(dec.reference, 2.0);
    EXPECT_DOUBLE_EQ(partial_at(dec, A({X, Y, Z})), 1.0);
    EXPECT_DOUBLE_EQ(partial_at(dec, A({X | Y, X | Z, Y | Z})), 1.0);
    for (std::size_t i = 0; i < dec.partials.size(); ++i) {
      const auto& node = dec.lattice->node(i);
      if (!(node == A({X, Y, Z})) && !(node == A({X | Y, X | Z, Y | Z}))) {
        EXPECT_DOUBLE_EQ(dec.partials[i], 0.0) << node.label(dec.names);
      }
    }
  }
}

TEST(Decompose, PointMassAndSupportPolicy) {
  const auto pm = fixtures::point_mass3();
  const auto dec = decompose_pointwise(pm, Realization{{1, 0, 1}});
  for (double p : dec.partials) EXPECT_EQ(p, 0.0);
  try {
    decompose_pointwise(pm, Realization{{0, 0, 0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::out_of_support);
  }
}

TEST(Decompose, ExpectedExamples) {
  const auto copy = decompose_expected(fixtures::copy());
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X, Y})), 1.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({Y})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(copy, A({X | Y})), 0.0);

  const auto u = decompose_expected(fixtures::unif2());
  EXPECT_DOUBLE_EQ(partial_at(u, A({X, Y})), 1.0);
  EXPECT_DOUBLE_EQ(partial_at(u, A({X})), 0.0);
  EXPECT_DOUBLE_EQ(partial_at(u, A({X | Y})), 1.0);
  EXPECT_DOUBLE_EQ(u.total(), 2.0);

  const auto x = decompose_expected(fixtures::xor3());
  EXPECT_NEAR(x.total(), 2.0, 1e-12);
  EXPECT_NEAR(x.reference, 2.0, 1e-12);
}

TEST(Decompose, VariableSelectionAndConditioning) {
  const auto d = fixtures::xor3();
  DecomposeOptions sub;
  sub.variables = std::vector<std::size_t>{0, 2};
  const auto xz = decompose_pointwise(d, Realization{{0, 1, 1}}, sub);
  EXPECT_EQ(xz.names, (std::vector<std::string>{"x", "z"}));
  EXPECT_EQ(xz.partials.size(), 4u);
  EXPECT_DOUBLE_EQ(xz.total(), 2.0);

  DecomposeOptions cond;
  cond.given = Z;
  const auto given = decompose_pointwise(d, Realization{{0, 1, 1}}, cond);
  EXPECT_EQ(given.names, (std::vector<std::string>{"x", "y"}));
  // Given z, x and y are copies of one another through parity.
  EXPECT_DOUBLE_EQ(partial_at(given, A({X, Y})), 1.0);
  EXPECT_DOUBLE_EQ(partial_at(given, A({X | Y})), 0.0);
  EXPECT_DOUBLE_EQ(given.reference, 1.0);
}

TEST(Decompose, RandomAgainstOracleInversion) {
  for (std::uint64_t t = 0; t < 150; ++t) {
    std::mt19937_64 rng(trial_seed(17, t));
    const unsigned n = 2 + static_cast<unsigned>(t % 2);
    const auto d = random_distribution(rng, {n, 2, 3, true});
    std::vector<fixtures::Row> rows;
    for (const auto& e : d.support()) rows.push_back({e.realization.values, e.p});
    std::vector<double> expected_partials;
    std::vector<double> expected_values;
    for (const auto& e : d.support()) {
      const auto dec = decompose_pointwise(d, e.realization);
      const auto oracle = oracle_partials(*dec.lattice, rows, e.realization.values);
      expected_partials.resize(dec.partials.size(), 0.0);
      expected_values.resize(dec.partials.size(), 0.0);
      for (std::size_t i = 0; i < oracle.size(); ++i) {
        EXPECT_NEAR(dec.partials[i], oracle[i], 1e-9);
        EXPECT_GE(dec.partials[i], -1e-9);
        expected_partials[i] += e.p * dec.partials[i];
        expected_values[i] += e.p * dec.values[i];
        for (std::size_t j : dec.lattice->covered_by(i)) {
          EXPECT_LE(dec.values[j], dec.values[i] + 1e-9);
        }
      }
      EXPECT_NEAR(dec.total(), fixtures::oracle_h(rows, (1u << n) - 1, e.realization.values),
                  1e-9);
    }
    const auto ex = decompose_expected(d);
    double entropy = 0.0;
    for (const auto& row : rows) entropy -= row.p * std::log2(row.p);
    EXPECT_NEAR(ex.total(), entropy, 1e-9);
    const auto inverted = mobius_recursive({ex.lattice, expected_values});
    for (std::size_t i = 0; i < ex.partials.size(); ++i) {
      EXPECT_NEAR(ex.partials[i], expected_partials[i], 1e-12);
      EXPECT_NEAR(inverted.partials[i], ex.partials[i], 1e-9);
    }
  }
}

TEST(TermNames, Bivariate) {
  const auto L = enumerate_antichains(2);
  const std::vector<std::string> names{"x", "y"};
  EXPECT_EQ(partial_term_name(*L, L->index_of(A({X, Y})), names), "x⊓y");
  EXPECT_EQ(partial_term_name(*L, L->index_of(A({X})), names), "x∖y");
  EXPECT_EQ(partial_term_name(*L, L->index_of(A({Y})), names), "y∖x");
  EXPECT_EQ(partial_term_name(*L, L->index_of(A({X | Y})), names), "x⊕y");
  EXPECT_EQ(partial_term_name(*enumerate_antichains(4), 0, names), "");
}

TEST(Trivariate, Examples) {
  const auto x = trivariate_report(fixtures::xor3(), Realization{{1, 0, 1}});
  ASSERT_EQ(x.size(), 18u);
  EXPECT_EQ(x.front().name, "x⊓y⊓z");
  EXPECT_EQ(x.back().name, "(x,y)⊕(x,z)⊕(y,z)");
  EXPECT_DOUBLE_EQ(x.front().value, 1.0);
  EXPECT_DOUBLE_EQ(x.back().value, 0.0);
  double sum = 0.0;
  for (const auto& t : x) sum += t.value;
  EXPECT_NEAR(sum, 2.0, 1e-12);

  const auto u = trivariate_report(fixtures::unif3(), Realization{{0, 1, 0}});
  EXPECT_DOUBLE_EQ(u.front().value, 1.0);
  EXPECT_DOUBLE_EQ(u.back().value, 1.0);
  sum = 0.0;
  for (const auto& t : u) sum += t.value;
  EXPECT_NEAR(sum, 3.0, 1e-12);

  for (const auto& t : trivariate_report(fixtures::point_mass3(), Realization{{1, 0, 1}})) {
    EXPECT_EQ(t.value, 0.0) << t.name;
  }
  EXPECT_THROW(trivariate_report(fixtures::copy(), Realization{{0, 0}}), Error);
}

// Each named term, written as an expression by hand, evaluates to the
// reported value; the 18 terms cover all 18 nodes once.
TEST(Trivariate, NamesAgreeWithExpressions) {
  const char* expressions[] = {
      "x cap y cap z",
      "(x cap y) minus z",
      "(x cap z) minus y",
      "(y cap z) minus x",
      "x cap (y oplus z)",
      "y cap (x oplus z)",
      "z cap (x oplus y)",
      "x minus (y,z)",
      "y minus (x,z)",
      "z minus (x,y)",
      "(x oplus y) cap (x oplus z) cap (y oplus z)",
      "((x oplus y) cap (x oplus z)) minus (y,z)",
      "((x oplus y) cap (y oplus z)) minus (x,z)",
      "((x oplus z) cap (y oplus z)) minus (x,y)",
      "(x oplus y) minus ((x,z) cup (y,z))",
      "(x oplus z) minus ((x,y) cup (y,z))",
      "(y oplus z) minus ((x,y) cup (x,z))",
      "(x,y) oplus (x,z) oplus (y,z)",
  };
  for (std::uint64_t t = 0; t < 40; ++t) {
    std::mt19937_64 rng(trial_seed(23, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    const auto& names = d.variables().names();
    for (const auto& e : d.support()) {
      const auto report = trivariate_report(d, e.realization);
      std::set<std::size_t> nodes;
      for (std::size_t k = 0; k < 18; ++k) {
        const auto expr = parse_expression(expressions[k], names);
        EXPECT_NEAR(report[k].value, eval_expression(d, expr, e.realization), 1e-9)
            << report[k].name;
        nodes.insert(report[k].node);
      }
      EXPECT_EQ(nodes.size(), 18u);
    }
  }
}

TEST(MutualInformation, Examples) {
  const auto x = mi_decompose_expected(fixtures::xor3(), X, Y, Z);
  EXPECT_NEAR(x.intersection, 0.0, 1e-9);
  EXPECT_NEAR(x.synergy, 1.0, 1e-9);
  EXPECT_NEAR(x.unique_a, 0.0, 1e-9);
  EXPECT_NEAR(x.unique_b, 0.0, 1e-9);
  EXPECT_NEAR(x.joint, 1.0, 1e-9);
  EXPECT_NEAR(x.coinformation, -1.0, 1e-9);

  const auto c = mi_decompose_expected(fixtures::copy3(), X, Y, Z);
  EXPECT_NEAR(c.intersection, 1.0, 1e-9);
  EXPECT_NEAR(c.synergy, 0.0, 1e-9);

  // z independent of (x, y).
  std::vector<fixtures::Row> rows;
  for (const auto& r : fixtures::anti_rows()) {
    for (std::uint32_t z = 0; z < 2; ++z) rows.push_back({{r.values[0], r.values[1], z}, r.p / 2});
  }
  const auto ind = fixtures::make({"x", "y", "z"}, {2, 2, 2}, rows);
  for (const auto& e : ind.support()) {
    const auto m = mi_decompose(ind, X, Y, Z, e.realization);
    for (double v : {m.union_info, m.unique_a, m.unique_b, m.intersection, m.synergy}) {
      EXPECT_NEAR(v, 0.0, 1e-12);
    }
  }
  EXPECT_THROW(mi_decompose_expected(fixtures::xor3(), X | Z, Y, Z), Error);
}

// Co-information from raw rows as I(X;Y) - I(X;Y|Z).
TEST(MutualInformation, CoinformationAgainstOracle) {
  for (std::uint64_t t = 0; t < 100; ++t) {
    std::mt19937_64 rng(trial_seed(29, t));
    const auto d = random_distribution(rng, {3, 2, 3, true});
    std::vector<fixtures::Row> rows;
    for (const auto& e : d.support()) rows.push_back({e.realization.values, e.p});
    double coinfo = 0.0;
    for (const auto& row : rows) {
      const auto& r = row.values;
      auto h = [&](std::uint32_t m) { return fixtures::oracle_h(rows, m, r); };
      const double i_xy = h(1) + h(2) - h(3);
      const double i_xy_z = (h(5) - h(4)) + (h(6) - h(4)) - (h(7) - h(4));
      coinfo += row.p * (i_xy - i_xy_z);
    }
    const auto m = mi_decompose_expected(d, X, Y, Z);
    EXPECT_NEAR(m.coinformation, coinfo, 1e-9);
    EXPECT_NEAR(m.intersection - m.synergy, coinfo, 1e-9);
    EXPECT_LE(m.decomposition_residual(), 1e-9);
  }
}
