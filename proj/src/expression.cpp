#include "infolattice/expression.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <cmath>

#include "infolattice/error.hpp"

namespace infolattice {

Expression Expression::leaf(Source s) {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "empty source leaf");
  Expression e;
  e.source_ = s;
  return e;
}

Expression Expression::apply(Op op, std::vector<Expression> operands) {
  if (op == Op::source) {
    throw Error(ErrorCode::invalid_argument, "use Expression::leaf for sources");
  }
  if (operands.size() < 2 || (op == Op::minus && operands.size() != 2)) {
    throw Error(ErrorCode::invalid_argument, "wrong operand count");
  }
  Expression e;
  e.op_ = op;
  e.operands_ = std::move(operands);
  return e;
}

Source Expression::variables() const {
  if (op_ == Op::source) return source_;
  Source all;
  for (const auto& o : operands_) all = all | o.variables();
  return all;
}

namespace {

const char* keyword(Expression::Op op) {
  switch (op) {
    case Expression::Op::union_content: return "cup";
    case Expression::Op::intersection: return "cap";
    case Expression::Op::minus: return "minus";
    case Expression::Op::synergy: return "oplus";
    case Expression::Op::source: break;
  }
  return "?";
}

std::string leaf_text(Source s, std::span<const std::string> names) {
  std::string out;
  for (std::size_t m : s.members()) {
    if (!out.empty()) out += ',';
    out += m < names.size() ? names[m] : "x" + std::to_string(m + 1);
  }
  return s.size() > 1 ? "(" + out + ")" : out;
}

}  // namespace

std::string Expression::to_string(std::span<const std::string> names) const {
  if (op_ == Op::source) return leaf_text(source_, names);
  std::string out;
  for (std::size_t i = 0; i < operands_.size(); ++i) {
    if (i) out += std::string(" ") + keyword(op_) + " ";
    const auto& o = operands_[i];
    out += o.op() == Op::source ? o.to_string(names)
                                : "(" + o.to_string(names) + ")";
  }
  return out;
}

namespace {

struct Token {
  enum class Kind { name, lparen, rparen, comma, op, end } kind;
  std::string text;
  Expression::Op op = Expression::Op::source;
  std::size_t offset = 0;
};

std::vector<Token> tokenize(std::string_view text) {
  static const std::pair<std::string_view, Expression::Op> kSymbols[] = {
      {"⊔", Expression::Op::union_content},
      {"⊓", Expression::Op::intersection},
      {"∖", Expression::Op::minus},
      {"⊕", Expression::Op::synergy},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (c == '(' || c == ')' || c == ',') {
      out.push_back({c == '(' ? Token::Kind::lparen
                     : c == ')' ? Token::Kind::rparen
                                : Token::Kind::comma,
                     std::string(1, c), Expression::Op::source, i});
      ++i;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) {
        ++j;
      }
      std::string word(text.substr(i, j - i));
      Token t{Token::Kind::name, word, Expression::Op::source, i};
      if (word == "cup") t = {Token::Kind::op, word, Expression::Op::union_content, i};
      if (word == "cap") t = {Token::Kind::op, word, Expression::Op::intersection, i};
      if (word == "minus") t = {Token::Kind::op, word, Expression::Op::minus, i};
      if (word == "oplus") t = {Token::Kind::op, word, Expression::Op::synergy, i};
      out.push_back(std::move(t));
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [sym, op] : kSymbols) {
      if (text.substr(i, sym.size()) == sym) {
        out.push_back({Token::Kind::op, std::string(sym), op, i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) {
      throw Error(ErrorCode::parse, "unexpected character at offset " +
                                        std::to_string(i) + " in expression");
    }
  }
  out.push_back({Token::Kind::end, "", Expression::Op::source, text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::span<const std::string> names)
      : tokens_(std::move(tokens)), names_(names) {}

  Expression parse() {
    Expression e = expr();
    expect(Token::Kind::end, "end of expression");
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::parse, what + " at offset " +
                                      std::to_string(peek().offset));
  }

  void expect(Token::Kind kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    ++pos_;
  }

  std::size_t variable(const Token& t) const {
    auto it = std::find(names_.begin(), names_.end(), t.text);
    if (it == names_.end()) {
      throw Error(ErrorCode::parse, "unknown variable '" + t.text + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
  }

  Expression expr() {
    std::vector<Expression> operands;
    operands.push_back(operand());
    std::optional<Expression::Op> op;
    while (peek().kind == Token::Kind::op) {
      if (op && *op != peek().op) {
        fail("ambiguous operator mix; add parentheses");
      }
      op = peek().op;
      ++pos_;
      operands.push_back(operand());
    }
    if (!op) return std::move(operands.front());
    if (*op == Expression::Op::minus) {
      Expression acc = std::move(operands.front());
      for (std::size_t i = 1; i < operands.size(); ++i) {
        acc = Expression::apply(Expression::Op::minus,
                                {std::move(acc), std::move(operands[i])});
      }
      return acc;
    }
    return Expression::apply(*op, std::move(operands));
  }

  Expression operand() {
    if (peek().kind == Token::Kind::name) {
      return Expression::leaf(Source::single(variable(tokens_[pos_++])));
    }
    if (peek().kind != Token::Kind::lparen) fail("expected a variable or '('");
    if (peek(1).kind == Token::Kind::name && peek(2).kind == Token::Kind::comma) {
      ++pos_;
      std::uint32_t mask = 0;
      while (true) {
        if (peek().kind != Token::Kind::name) fail("expected a variable name");
        const auto bit = std::uint32_t{1} << variable(peek());
        if (mask & bit) fail("variable repeated in a joint source");
        mask |= bit;
        ++pos_;
        if (peek().kind == Token::Kind::rparen) break;
        expect(Token::Kind::comma, "',' or ')'");
      }
      ++pos_;
      return Expression::leaf(Source(mask));
    }
    ++pos_;
    Expression inner = expr();
    expect(Token::Kind::rparen, "')'");
    return inner;
  }

  std::vector<Token> tokens_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

}  // namespace

Expression parse_expression(std::string_view text,
                            std::span<const std::string> names) {
  if (names.size() > kMaxVariables) {
    throw Error(ErrorCode::invalid_argument, "too many variable names");
  }
  return Parser(tokenize(text), names).parse();
}

AtomSet::AtomSet(std::size_t universe)
    : universe_(universe), words_((universe + 63) / 64, 0) {}

void AtomSet::insert(std::size_t node) {
  if (node >= universe_) throw Error(ErrorCode::out_of_range, "atom out of range");
  words_[node / 64] |= std::uint64_t{1} << (node % 64);
}

bool AtomSet::contains(std::size_t node) const {
  return node < universe_ && ((words_[node / 64] >> (node % 64)) & 1u);
}

std::size_t AtomSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<std::size_t> AtomSet::members() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < universe_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

namespace {

void check_same_universe(const AtomSet& a, const AtomSet& b) {
  if (a.universe() != b.universe()) {
    throw Error(ErrorCode::invalid_argument, "atom sets from different lattices");
  }
}

}  // namespace

AtomSet& AtomSet::operator|=(const AtomSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator&=(const AtomSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
  return *this;
}

AtomSet& AtomSet::operator-=(const AtomSet& other) {
  check_same_universe(*this, other);
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~other.words_[i];
  return *this;
}

namespace {

AtomSet down_set_of(Source s, const RedundancyLattice& lattice) {
  AtomSet out(lattice.size());
  for (std::size_t i : lattice.down_set(lattice.index_of(Antichain::from_sources({s})))) {
    out.insert(i);
  }
  return out;
}

}  // namespace

AtomSet lower(const Expression& expr, const RedundancyLattice& lattice) {
  using Op = Expression::Op;
  const std::uint32_t full = (std::uint32_t{1} << lattice.n()) - 1;
  if ((expr.variables().mask() & ~full) != 0) {
    throw Error(ErrorCode::invalid_argument,
                "expression references a variable outside the lattice");
  }
  if (expr.op() == Op::source) return down_set_of(expr.source(), lattice);

  const auto& ops = expr.operands();
  AtomSet acc = lower(ops.front(), lattice);
  switch (expr.op()) {
    case Op::union_content:
      for (std::size_t i = 1; i < ops.size(); ++i) acc |= lower(ops[i], lattice);
      return acc;
    case Op::intersection:
      for (std::size_t i = 1; i < ops.size(); ++i) acc &= lower(ops[i], lattice);
      return acc;
    case Op::minus:
      acc -= lower(ops[1], lattice);
      return acc;
    case Op::synergy: {
      for (std::size_t i = 1; i < ops.size(); ++i) acc |= lower(ops[i], lattice);
      AtomSet joint = down_set_of(expr.variables(), lattice);
      joint -= acc;
      return joint;
    }
    case Op::source:
      break;
  }
  throw Error(ErrorCode::internal, "unknown operator");
}

double sum_partials(const AtomSet& atoms, std::span<const double> partials) {
  if (partials.size() != atoms.universe()) {
    throw Error(ErrorCode::invalid_argument, "partials do not match atom set");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < partials.size(); ++i) {
    if (atoms.contains(i)) sum += partials[i];
  }
  return sum;
}

namespace {

Expression remap(const Expression& e, std::span<const std::size_t> to_lattice) {
  if (e.op() == Expression::Op::source) {
    std::uint32_t mask = 0;
    for (std::size_t v : e.source().members()) {
      mask |= std::uint32_t{1} << to_lattice[v];
    }
    return Expression::leaf(Source(mask));
  }
  std::vector<Expression> ops;
  for (const auto& o : e.operands()) ops.push_back(remap(o, to_lattice));
  return Expression::apply(e.op(), std::move(ops));
}

// An expression bound to the lattice spanned by its own variables.
struct PreparedExpression {
  DecomposeOptions options;
  AtomSet atoms;
};

PreparedExpression prepare(const JointDistribution& d, const Expression& expr,
                           const EvalOptions& options) {
  const Source vars = expr.variables();
  d.check_source(vars);
  if (options.given && !vars.disjoint(*options.given)) {
    throw Error(ErrorCode::invalid_argument,
                "expression variables overlap the conditioning source");
  }
  std::vector<std::size_t> scope = vars.members();
  std::vector<std::size_t> to_lattice(kMaxVariables, 0);
  for (std::size_t k = 0; k < scope.size(); ++k) to_lattice[scope[k]] = k;

  auto lattice = enumerate_antichains(static_cast<unsigned>(scope.size()),
                                      options.allow_n5);
  PreparedExpression out;
  out.atoms = lower(remap(expr, to_lattice), *lattice);
  out.options.variables = std::move(scope);
  out.options.given = options.given;
  out.options.base = options.base;
  out.options.allow_n5 = options.allow_n5;
  return out;
}

}  // namespace

double eval_expression(const JointDistribution& d, const Expression& expr,
                       const Realization& r, const EvalOptions& options) {
  const auto prepared = prepare(d, expr, options);
  const auto dec = decompose_pointwise(d, r, prepared.options);
  return sum_partials(prepared.atoms, dec.partials);
}

double eval_expression_expected(const JointDistribution& d,
                                const Expression& expr,
                                const EvalOptions& options) {
  const auto prepared = prepare(d, expr, options);
  double total = 0.0;
  for (const auto& e : d.support()) {
    const auto dec = decompose_pointwise(d, e.realization, prepared.options);
    total += e.p * sum_partials(prepared.atoms, dec.partials);
  }
  return total;
}

double mutual_expression(const JointDistribution& d, const Expression& expr,
                         Source about, const Realization& r, LogBase base) {
  EvalOptions plain{std::nullopt, base, false};
  EvalOptions conditioned{about, base, false};
  return eval_expression(d, expr, r, plain) -
         eval_expression(d, expr, r, conditioned);
}

double mutual_expression_expected(const JointDistribution& d,
                                  const Expression& expr, Source about,
                                  LogBase base) {
  EvalOptions plain{std::nullopt, base, false};
  EvalOptions conditioned{about, base, false};
  return eval_expression_expected(d, expr, plain) -
         eval_expression_expected(d, expr, conditioned);
}

double LemmaResult::residual() const { return std::abs(lhs - rhs); }

namespace {

struct LemmaSpec {
  const char* name;
  const char* lhs;
  std::vector<const char*> rhs;  // summed; empty means zero
};

const std::vector<LemmaSpec>& lemma_specs() {
  static const std::vector<LemmaSpec> kLemmas = {
      {"L1", "(x cap y) minus z", {"(x minus z) cap (y minus z)"}},
      {"L2",
       "((x,y) minus (y,z)) cap ((x,z) minus (y,z))",
       {"x minus (y,z)", "((x oplus y) cap (x oplus z)) minus (y,z)"}},
      {"L3",
       "(x,y) minus ((x,z) cup (y,z))",
       {"(x oplus y) minus ((x,z) cup (y,z))"}},
      {"L4", "x cap (y minus x)", {}},
      {"L5", "(y minus x) cap (y,z)", {"y minus x"}},
      {"L6", "x cap (x oplus z)", {}},
      {"L7", "(y minus x) cap (x oplus z)", {"y cap (x oplus z)"}},
      {"L8",
       "(x oplus y) cap (x,z) cap (y,z)",
       {"z cap (x oplus y)", "(x oplus y) cap (x oplus z) cap (y oplus z)"}},
      {"L9",
       "(x,y) cap (x,z) cap (y,z)",
       {"x cap (y,z)", "y cap (x oplus z)", "z cap (x oplus y)",
        "(y cap z) minus x", "(x oplus y) cap (x oplus z) cap (y oplus z)"}},
  };
  return kLemmas;
}

struct LoweredLemma {
  std::string name;
  std::string identity;
  AtomSet lhs;
  std::vector<AtomSet> rhs;
};

const std::vector<LoweredLemma>& lowered_lemmas() {
  static const std::vector<LoweredLemma> kLowered = [] {
    const auto lattice = enumerate_antichains(3);
    const auto names = default_variable_names(3);
    std::vector<LoweredLemma> out;
    for (const auto& spec : lemma_specs()) {
      LoweredLemma l;
      l.name = spec.name;
      l.identity = std::string(spec.lhs) + " = ";
      l.lhs = lower(parse_expression(spec.lhs, names), *lattice);
      if (spec.rhs.empty()) l.identity += "0";
      for (std::size_t i = 0; i < spec.rhs.size(); ++i) {
        if (i) l.identity += " + ";
        l.identity += std::string("[") + spec.rhs[i] + "]";
        l.rhs.push_back(lower(parse_expression(spec.rhs[i], names), *lattice));
      }
      out.push_back(std::move(l));
    }
    return out;
  }();
  return kLowered;
}

}  // namespace

std::vector<LemmaResult> lemma_suite(const PartialValuation& partials) {
  if (partials.lattice->n() != 3) {
    throw Error(ErrorCode::invalid_argument, "lemma suite needs n = 3");
  }
  std::vector<LemmaResult> out;
  for (const auto& l : lowered_lemmas()) {
    LemmaResult r{l.name, l.identity, sum_partials(l.lhs, partials.partials), 0.0};
    for (const auto& term : l.rhs) r.rhs += sum_partials(term, partials.partials);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<LemmaResult> lemma_suite(const JointDistribution& d,
                                     const Realization& r, LogBase base) {
  if (d.num_variables() != 3) {
    throw Error(ErrorCode::invalid_argument,
                "lemma suite needs a three-variable distribution");
  }
  DecomposeOptions options;
  options.base = base;
  const auto dec = decompose_pointwise(d, r, options);
  return lemma_suite(PartialValuation{dec.lattice, dec.partials});
}

}  // namespace infolattice
