#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "infolattice/antichain.hpp"
#include "infolattice/distribution.hpp"
#include "infolattice/pid.hpp"
#include "infolattice/pointwise.hpp"

namespace infolattice {

/// Information-sharing expression. Leaves are sources (a multi-member source
/// is a joint observer); interior nodes apply one operator to two or more
/// operands. `minus` is binary; the others are n-ary.
class Expression {
 public:
  enum class Op { source, union_content, intersection, minus, synergy };

  static Expression leaf(Source s);
  static Expression apply(Op op, std::vector<Expression> operands);

  Op op() const noexcept { return op_; }
  Source source() const noexcept { return source_; }
  const std::vector<Expression>& operands() const noexcept { return operands_; }

  /// Every variable referenced anywhere in the expression.
  Source variables() const;

  /// Surface syntax, e.g. "x cap (y oplus z)".
  std::string to_string(std::span<const std::string> names) const;

  bool operator==(const Expression&) const = default;

 private:
  Op op_ = Op::source;
  Source source_;
  std::vector<Expression> operands_;
};

/// Parses the surface grammar
///
///   source := NAME | "(" NAME ("," NAME)+ ")"
///   expr   := source | "(" expr ")" | expr OP expr
///   OP     := cup | cap | minus | oplus   (or ⊔ ⊓ ∖ ⊕)
///
/// Chains of one repeated operator are allowed; mixing operators needs
/// parentheses. Leaves get the index of their name in `names`.
/// Throws ErrorCode::parse.
Expression parse_expression(std::string_view text,
                            std::span<const std::string> names);

/// Fixed-size set of lattice nodes.
class AtomSet {
 public:
  AtomSet() = default;
  explicit AtomSet(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  void insert(std::size_t node);
  bool contains(std::size_t node) const;
  std::size_t count() const;
  bool empty() const { return count() == 0; }
  std::vector<std::size_t> members() const;

  AtomSet& operator|=(const AtomSet& other);
  AtomSet& operator&=(const AtomSet& other);
  AtomSet& operator-=(const AtomSet& other);
  bool operator==(const AtomSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Maps an expression (in lattice variable indices) to the set of lattice
/// nodes whose partial contents it sums: a source A becomes ↓{A}, ⊔ union,
/// ⊓ intersection, ∖ difference, and a ⊕ b ⊕ ... becomes ↓{joint of all
/// their variables} minus the union of the operands.
AtomSet lower(const Expression& expr, const RedundancyLattice& lattice);

double sum_partials(const AtomSet& atoms, std::span<const double> partials);

struct EvalOptions {
  std::optional<Source> given;
  LogBase base = LogBase::bits;
  bool allow_n5 = false;
};

/// Evaluates an expression whose leaves use the distribution's variable
/// indices, over the lattice spanned by the variables it references. With
/// `given`, every node value is conditioned on it.
double eval_expression(const JointDistribution& d, const Expression& expr,
                       const Realization& r, const EvalOptions& options = {});

double eval_expression_expected(const JointDistribution& d,
                                const Expression& expr,
                                const EvalOptions& options = {});

/// i(expr; about) = eval(expr) - eval(expr | about).
double mutual_expression(const JointDistribution& d, const Expression& expr,
                         Source about, const Realization& r,
                         LogBase base = LogBase::bits);

double mutual_expression_expected(const JointDistribution& d,
                                  const Expression& expr, Source about,
                                  LogBase base = LogBase::bits);

struct LemmaResult {
  std::string name;
  std::string identity;
  double lhs = 0.0;
  double rhs = 0.0;

  double residual() const;
};

/// Both sides of the nine three-variable sharing identities, evaluated on a
/// set of n = 3 partials.
std::vector<LemmaResult> lemma_suite(const PartialValuation& partials);

/// Same, at a support realization of a three-variable distribution.
std::vector<LemmaResult> lemma_suite(const JointDistribution& d,
                                     const Realization& r,
                                     LogBase base = LogBase::bits);

}  // namespace infolattice
