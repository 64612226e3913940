#include "infolattice/antichain.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <mutex>
#include <sstream>

#include "infolattice/error.hpp"

namespace infolattice {

namespace {

constexpr std::uint32_t bit_of(Source s) { return std::uint32_t{1} << (s.mask() - 1); }

std::uint32_t full_mask(unsigned n) { return (std::uint32_t{1} << n) - 1; }

void check_lattice_n(unsigned n) {
  if (n < 1 || n > kMaxLatticeVariables) {
    throw Error(ErrorCode::out_of_range,
                "lattice size n=" + std::to_string(n) + " outside [1, " +
                    std::to_string(kMaxLatticeVariables) + "]");
  }
}

}  // namespace

std::vector<std::string> default_variable_names(unsigned n) {
  static const char* const kNames[] = {"x", "y", "z", "w", "v"};
  std::vector<std::string> out;
  for (unsigned i = 0; i < n; ++i) {
    out.emplace_back(i < std::size(kNames) ? kNames[i]
                                           : "x" + std::to_string(i + 1));
  }
  return out;
}

Antichain Antichain::from_sources(std::vector<Source> sources) {
  if (sources.empty()) {
    throw Error(ErrorCode::invalid_argument, "antichain needs a source");
  }
  for (Source s : sources) {
    if (s.empty()) throw Error(ErrorCode::invalid_argument, "empty source");
  }
  std::sort(sources.begin(), sources.end(), canonical_less);
  sources.erase(std::unique(sources.begin(), sources.end()), sources.end());
  std::vector<Source> minimal;
  // Sorted by size, so any subset of a source precedes it.
  for (Source s : sources) {
    const bool dominated = std::any_of(
        minimal.begin(), minimal.end(), [&](Source m) { return m.subset_of(s); });
    if (!dominated) minimal.push_back(s);
  }
  return Antichain(std::move(minimal));
}

Antichain Antichain::from_upset(std::uint32_t upset) {
  std::vector<Source> members;
  for (std::uint32_t u = upset; u != 0; u &= u - 1) {
    members.emplace_back(static_cast<std::uint32_t>(std::countr_zero(u)) + 1);
  }
  return from_sources(std::move(members));
}

Source Antichain::variables() const noexcept {
  Source all;
  for (Source s : sources_) all = all | s;
  return all;
}

std::uint32_t Antichain::upset(unsigned n) const {
  check_lattice_n(n);
  const std::uint32_t full = full_mask(n);
  std::uint32_t up = 0;
  for (Source s : sources_) {
    if ((s.mask() & ~full) != 0) {
      throw Error(ErrorCode::invalid_argument,
                  "antichain references a variable outside the lattice");
    }
    for (std::uint32_t m = 1; m <= full; ++m) {
      if ((s.mask() & ~m) == 0) up |= std::uint32_t{1} << (m - 1);
    }
  }
  return up;
}

std::string Antichain::label(std::span<const std::string> names) const {
  std::string out;
  for (Source s : sources_) out += format_source(s, names);
  return out;
}

bool Antichain::operator<(const Antichain& other) const {
  return std::lexicographical_compare(sources_.begin(), sources_.end(),
                                      other.sources_.begin(),
                                      other.sources_.end(), canonical_less);
}

std::vector<Source> enumerate_sources(unsigned n) {
  check_lattice_n(n);
  std::vector<Source> out;
  for (std::uint32_t m = 1; m <= full_mask(n); ++m) out.emplace_back(m);
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

bool precedes(const Antichain& a, const Antichain& b) {
  return std::all_of(b.sources().begin(), b.sources().end(), [&](Source bs) {
    return std::any_of(a.sources().begin(), a.sources().end(),
                       [&](Source as) { return as.subset_of(bs); });
  });
}

bool sharing_precedes(const Antichain& a, const Antichain& b) {
  return precedes(b, a);
}

Antichain meet(const Antichain& a, const Antichain& b) {
  std::vector<Source> all = a.sources();
  all.insert(all.end(), b.sources().begin(), b.sources().end());
  return Antichain::from_sources(std::move(all));
}

Antichain join(const Antichain& a, const Antichain& b) {
  std::vector<Source> unions;
  for (Source as : a.sources()) {
    for (Source bs : b.sources()) unions.push_back(as | bs);
  }
  return Antichain::from_sources(std::move(unions));
}

double eval_sharing(const Antichain& a, std::span<const double> h) {
  double best = -std::numeric_limits<double>::infinity();
  for (Source s : a.sources()) {
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i : s.members()) {
      if (i >= h.size()) {
        throw Error(ErrorCode::invalid_argument,
                    "surprisal vector is shorter than the antichain's variables");
      }
      lo = std::min(lo, h[i]);
    }
    best = std::max(best, lo);
  }
  return best;
}

std::vector<std::size_t> total_order_reduce(std::span<const double> h) {
  std::vector<std::size_t> order(h.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h[a] > h[b]; });
  return order;
}

RedundancyLattice::RedundancyLattice(unsigned n) : n_(n) {
  check_lattice_n(n);
  const auto sources = enumerate_sources(n);

  // Depth-first over canonically ordered sources, adding a source whenever it
  // is incomparable with everything chosen so far.
  std::vector<Source> chosen;
  auto extend = [&](auto&& self, std::size_t from) -> void {
    if (!chosen.empty()) nodes_.push_back(Antichain::from_sources(chosen));
    for (std::size_t k = from; k < sources.size(); ++k) {
      const Source s = sources[k];
      const bool comparable =
          std::any_of(chosen.begin(), chosen.end(), [&](Source c) {
            return c.subset_of(s) || s.subset_of(c);
          });
      if (comparable) continue;
      chosen.push_back(s);
      self(self, k + 1);
      chosen.pop_back();
    }
  };
  extend(extend, 0);

  // Bottom-up: larger up-sets sit lower in the order.
  std::vector<std::pair<std::uint32_t, Antichain>> keyed;
  keyed.reserve(nodes_.size());
  for (auto& a : nodes_) keyed.emplace_back(a.upset(n), std::move(a));
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    const int px = std::popcount(x.first), py = std::popcount(y.first);
    if (px != py) return px > py;
    return x.second < y.second;
  });
  nodes_.clear();
  for (auto& [up, a] : keyed) {
    by_upset_.emplace(up, nodes_.size());
    upsets_.push_back(up);
    nodes_.push_back(std::move(a));
  }

  // Up-sets of a finite poset form a distributive lattice in which covers
  // differ by exactly one element.
  lower_covers_.resize(nodes_.size());
  upper_covers_.resize(nodes_.size());
  const std::uint32_t full = full_mask(n);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const std::uint32_t up = upsets_[i];
    for (std::uint32_t m = 1; m <= full; ++m) {
      const std::uint32_t b = std::uint32_t{1} << (m - 1);
      if (up & b) continue;
      bool closed = true;
      for (unsigned j = 0; j < n && closed; ++j) {
        const std::uint32_t super = m | (std::uint32_t{1} << j);
        if (super != m && !(up & (std::uint32_t{1} << (super - 1)))) {
          closed = false;
        }
      }
      if (closed) lower_covers_[i].push_back(index_of_upset(up | b));
    }
    for (Source s : nodes_[i].sources()) {
      const std::uint32_t smaller = up & ~bit_of(s);
      if (smaller != 0) upper_covers_[i].push_back(index_of_upset(smaller));
    }
    std::sort(lower_covers_[i].begin(), lower_covers_[i].end());
    std::sort(upper_covers_[i].begin(), upper_covers_[i].end());
  }

  if (n <= kDefaultMaxLatticeVariables) {
    const std::size_t size = nodes_.size();
    order_.assign(size * size, false);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        order_[a * size + b] = (upsets_[b] & ~upsets_[a]) == 0;
      }
    }
  }
}

std::optional<std::size_t> RedundancyLattice::find(const Antichain& a) const {
  std::uint32_t up = 0;
  try {
    up = a.upset(n_);
  } catch (const Error&) {
    return std::nullopt;
  }
  auto it = by_upset_.find(up);
  if (it == by_upset_.end()) return std::nullopt;
  return it->second;
}

std::size_t RedundancyLattice::index_of(const Antichain& a) const {
  if (auto i = find(a)) return *i;
  throw Error(ErrorCode::invalid_argument,
              "antichain " + a.label(default_variable_names(n_)) +
                  " is not a node of the n=" + std::to_string(n_) + " lattice");
}

std::size_t RedundancyLattice::index_of_upset(std::uint32_t upset) const {
  auto it = by_upset_.find(upset);
  if (it == by_upset_.end()) {
    throw Error(ErrorCode::internal, "up-set without a lattice node");
  }
  return it->second;
}

bool RedundancyLattice::precedes(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) {
    throw Error(ErrorCode::out_of_range, "lattice node index out of range");
  }
  if (!order_.empty()) return order_[a * size() + b];
  return (upsets_[b] & ~upsets_[a]) == 0;
}

std::size_t RedundancyLattice::meet(std::size_t a, std::size_t b) const {
  return index_of_upset(upsets_.at(a) | upsets_.at(b));
}

std::size_t RedundancyLattice::join(std::size_t a, std::size_t b) const {
  return index_of_upset(upsets_.at(a) & upsets_.at(b));
}

std::span<const std::size_t> RedundancyLattice::covered_by(std::size_t i) const {
  return lower_covers_.at(i);
}

std::span<const std::size_t> RedundancyLattice::covers_of(std::size_t i) const {
  return upper_covers_.at(i);
}

std::vector<std::size_t> RedundancyLattice::down_set(std::size_t i) const {
  if (i >= size()) {
    throw Error(ErrorCode::out_of_range, "lattice node index out of range");
  }
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j <= i; ++j) {
    if (precedes(j, i)) out.push_back(j);
  }
  return out;
}

std::string RedundancyLattice::to_dot(LatticeKind kind,
                                      std::span<const std::string> names) const {
  std::vector<std::string> fallback;
  if (names.size() < n_) {
    fallback = default_variable_names(n_);
    names = fallback;
  }
  const bool redundancy = kind == LatticeKind::redundancy;
  std::ostringstream out;
  out << "digraph " << (redundancy ? "redundancy" : "sharing")
      << "_lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < size(); ++i) {
    out << "  n" << i << " [label=\"" << nodes_[i].label(names) << "\"];\n";
  }
  // Edges run from the lower to the upper end of each cover, so with
  // rankdir=BT the top of the chosen order is drawn uppermost.
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t lower : lower_covers_[i]) {
      if (redundancy) {
        out << "  n" << lower << " -> n" << i << ";\n";
      } else {
        out << "  n" << i << " -> n" << lower << ";\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

std::shared_ptr<const RedundancyLattice> enumerate_antichains(unsigned n,
                                                             bool allow_n5) {
  check_lattice_n(n);
  if (n > kDefaultMaxLatticeVariables && !allow_n5) {
    throw Error(ErrorCode::out_of_range,
                "n=" + std::to_string(n) +
                    " exceeds the default cap of 4 (enable the n=5 override)");
  }
  static std::mutex mutex;
  static std::array<std::shared_ptr<const RedundancyLattice>,
                    kMaxLatticeVariables + 1>
      cache;
  std::lock_guard lock(mutex);
  if (!cache[n]) cache[n] = std::make_shared<const RedundancyLattice>(n);
  return cache[n];
}

}  // namespace infolattice
