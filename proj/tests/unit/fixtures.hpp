#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "infolattice/distribution.hpp"

namespace fixtures {

using infolattice::JointDistribution;
using infolattice::Realization;
using infolattice::VariableSet;

struct Row {
  std::vector<std::uint32_t> values;
  double p;
};

inline JointDistribution make(std::vector<std::string> names,
                              std::vector<std::uint32_t> cards,
                              const std::vector<Row>& rows) {
  std::vector<JointDistribution::Entry> entries;
  for (const auto& r : rows) entries.push_back({Realization{r.values}, r.p});
  return JointDistribution(VariableSet(std::move(names), std::move(cards)),
                           std::move(entries));
}

inline std::vector<Row> xor3_rows() {
  return {{{0, 0, 0}, 0.25}, {{0, 1, 1}, 0.25}, {{1, 0, 1}, 0.25}, {{1, 1, 0}, 0.25}};
}

inline JointDistribution xor3() { return make({"x", "y", "z"}, {2, 2, 2}, xor3_rows()); }

inline JointDistribution copy() {
  return make({"x", "y"}, {2, 2}, {{{0, 0}, 0.5}, {{1, 1}, 0.5}});
}

inline JointDistribution copy3() {
  return make({"x", "y", "z"}, {2, 2, 2}, {{{0, 0, 0}, 0.5}, {{1, 1, 1}, 0.5}});
}

inline JointDistribution unif2() {
  return make({"x", "y"}, {2, 2},
              {{{0, 0}, 0.25}, {{0, 1}, 0.25}, {{1, 0}, 0.25}, {{1, 1}, 0.25}});
}

inline JointDistribution unif3() {
  std::vector<Row> rows;
  for (std::uint32_t i = 0; i < 8; ++i) rows.push_back({{i >> 2, (i >> 1) & 1, i & 1}, 0.125});
  return make({"x", "y", "z"}, {2, 2, 2}, rows);
}

inline std::vector<Row> anti_rows() {
  return {{{0, 0}, 0.1}, {{0, 1}, 0.4}, {{1, 0}, 0.4}, {{1, 1}, 0.1}};
}

inline JointDistribution anti() { return make({"x", "y"}, {2, 2}, anti_rows()); }

inline JointDistribution biased() { return make({"x"}, {2}, {{{0}, 0.75}, {{1}, 0.25}}); }

// Two independent bits, each 0 with probability 3/4.
inline std::vector<Row> biased2_rows() {
  return {{{0, 0}, 0.5625}, {{0, 1}, 0.1875}, {{1, 0}, 0.1875}, {{1, 1}, 0.0625}};
}

inline JointDistribution biased2() { return make({"x", "y"}, {2, 2}, biased2_rows()); }

inline JointDistribution point_mass3() {
  return make({"x", "y", "z"}, {2, 2, 2}, {{{1, 0, 1}, 1.0}});
}

// Brute-force marginal: sums raw rows agreeing with r on the masked variables.
inline double oracle_mass(const std::vector<Row>& rows, std::uint32_t mask,
                          const std::vector<std::uint32_t>& r) {
  double total = 0.0;
  for (const auto& row : rows) {
    bool agree = true;
    for (std::size_t i = 0; i < r.size(); ++i) {
      if ((mask >> i) & 1u) agree = agree && row.values[i] == r[i];
    }
    if (agree) total += row.p;
  }
  return total;
}

inline double oracle_h(const std::vector<Row>& rows, std::uint32_t mask,
                       const std::vector<std::uint32_t>& r) {
  return -std::log2(oracle_mass(rows, mask, r));
}

}  // namespace fixtures
