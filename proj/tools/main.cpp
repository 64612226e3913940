#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "infolattice/infolattice.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitError = 2;

struct ApiError : std::runtime_error {
  il_status status;
  ApiError(il_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(il_status s) {
  if (s != IL_OK) throw ApiError(s, il_last_error());
}

struct DistDeleter {
  void operator()(il_distribution* d) const { il_distribution_free(d); }
};
struct LatticeDeleter {
  void operator()(il_lattice* l) const { il_lattice_free(l); }
};
struct StringDeleter {
  void operator()(char* s) const { il_string_free(s); }
};
using Dist = std::unique_ptr<il_distribution, DistDeleter>;
using Lattice = std::unique_ptr<il_lattice, LatticeDeleter>;
using OwnedString = std::unique_ptr<char, StringDeleter>;

Dist load(const std::string& path) {
  il_distribution* d = nullptr;
  check(il_distribution_load_file(path.c_str(), &d));
  return Dist(d);
}

size_t variable_count(const il_distribution* d) {
  size_t n = 0;
  check(il_distribution_variable_count(d, &n));
  return n;
}

std::string variable_name(const il_distribution* d, size_t i) {
  const char* name = nullptr;
  check(il_distribution_variable_name(d, i, &name));
  return name;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// "X+Y" names the joint source of X and Y.
uint32_t parse_source(const il_distribution* d, const std::string& text) {
  uint32_t mask = 0;
  for (const auto& raw : split(text, '+')) {
    const std::string name = trim(raw);
    if (name.empty()) throw UsageError("empty variable name in source '" + text + "'");
    size_t index = 0;
    check(il_distribution_variable_index(d, name.c_str(), &index));
    const uint32_t bit = uint32_t{1} << index;
    if (mask & bit) throw UsageError("variable '" + name + "' repeated in source '" + text + "'");
    mask |= bit;
  }
  return mask;
}

// Comma-separated sources, e.g. "X,Y+Z".
std::vector<uint32_t> parse_sources(const il_distribution* d, const std::string& text) {
  std::vector<uint32_t> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_source(d, item));
  return out;
}

uint32_t parse_union(const il_distribution* d, const std::string& text) {
  uint32_t mask = 0;
  for (uint32_t s : parse_sources(d, text)) mask |= s;
  return mask;
}

std::vector<uint32_t> parse_realization(const il_distribution* d, const std::string& text) {
  std::vector<uint32_t> values;
  for (const auto& raw : split(text, ',')) {
    const std::string item = trim(raw);
    std::size_t used = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size() || item[0] == '-' || v > UINT32_MAX) {
      throw UsageError("realization entries must be non-negative integers: '" + text + "'");
    }
    values.push_back(static_cast<uint32_t>(v));
  }
  if (values.size() != variable_count(d)) {
    throw UsageError("realization has " + std::to_string(values.size()) +
                     " entries but the distribution has " +
                     std::to_string(variable_count(d)) + " variables");
  }
  return values;
}

std::string source_name(const il_distribution* d, uint32_t mask) {
  std::string out;
  int members = 0;
  for (size_t i = 0; i < 32; ++i) {
    if (mask & (uint32_t{1} << i)) {
      out += (members++ ? "," : "") + variable_name(d, i);
    }
  }
  return members > 1 ? "(" + out + ")" : out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') s.erase(0, 1);
  return s;
}

struct Globals {
  std::string base = "2";
  double tolerance = 1e-9;
  uint64_t seed = 7;
  size_t trials = 1000;
  bool allow_n5 = false;
  std::string format = "text";

  il_base log_base() const {
    if (base == "e") return IL_NATS;
    if (base == "10") return IL_HARTLEYS;
    return IL_BITS;
  }
  const char* units() const {
    if (base == "e") return "nats";
    if (base == "10") return "hartleys";
    return "bits";
  }
  bool structured() const { return format == "structured"; }
  il_report_format report_format() const {
    return structured() ? IL_REPORT_STRUCTURED : IL_REPORT_TEXT;
  }
};

int cmd_validate(const Globals& g, const std::string& file) {
  auto d = load(file);
  size_t support = 0;
  check(il_distribution_support_size(d.get(), &support));
  const size_t n = variable_count(d.get());
  if (g.structured()) {
    nlohmann::ordered_json j;
    j["kind"] = "validation";
    j["valid"] = true;
    j["variables"] = n;
    j["support_points"] = support;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "ok: " << n << " variable" << (n == 1 ? "" : "s") << ", " << support
              << " support point" << (support == 1 ? "" : "s") << '\n';
  }
  return 0;
}

struct PointwiseArgs {
  std::string file;
  std::string sources;
  std::optional<std::string> realization;
  std::optional<std::string> given;
};

int cmd_pointwise(const Globals& g, const PointwiseArgs& a) {
  auto d = load(a.file);
  const auto sources = parse_sources(d.get(), a.sources);
  const uint32_t given = a.given ? parse_union(d.get(), *a.given) : 0;
  std::optional<std::vector<uint32_t>> r;
  if (a.realization) r = parse_realization(d.get(), *a.realization);

  auto measure = [&](il_measure m, std::vector<uint32_t> srcs) {
    double v = 0.0;
    if (r) {
      check(il_pointwise(d.get(), m, srcs.data(), srcs.size(), given, r->data(), r->size(),
                         g.log_base(), &v));
    } else {
      check(il_expected(d.get(), m, srcs.data(), srcs.size(), given, g.log_base(), &v));
    }
    return v;
  };

  const std::string f = r ? "h" : "H";
  const std::string cond = given ? "|" + source_name(d.get(), given) : "";
  std::vector<std::pair<std::string, double>> rows;
  uint32_t joint = 0;
  std::vector<std::string> names;
  for (uint32_t s : sources) {
    names.push_back(source_name(d.get(), s));
    rows.emplace_back(f + "(" + names.back() + cond + ")", measure(IL_SURPRISAL, {s}));
    joint |= s;
  }
  auto joined = [&](const char* op) {
    std::string out;
    for (const auto& n : names) out += (out.empty() ? "" : op) + n;
    return out;
  };
  if (sources.size() >= 2) {
    rows.emplace_back(f + "(" + source_name(d.get(), joint) + cond + ")",
                      measure(IL_SURPRISAL, {joint}));
    rows.emplace_back(f + "(" + joined("⊔") + cond + ")", measure(IL_UNION, sources));
    rows.emplace_back(f + "(" + joined("⊓") + cond + ")", measure(IL_INTERSECTION, sources));
    if (sources.size() == 2) {
      rows.emplace_back(f + "(" + names[0] + "∖" + names[1] + cond + ")",
                        measure(IL_UNIQUE, sources));
      rows.emplace_back(f + "(" + names[1] + "∖" + names[0] + cond + ")",
                        measure(IL_UNIQUE, {sources[1], sources[0]}));
    }
    rows.emplace_back(f + "(" + joined("⊕") + cond + ")", measure(IL_SYNERGY, sources));
    if (sources.size() == 2 && (sources[0] & sources[1]) == 0) {
      rows.emplace_back((r ? "i(" : "I(") + names[0] + ";" + names[1] + cond + ")",
                        measure(IL_MUTUAL, sources));
    }
  }

  if (g.structured()) {
    nlohmann::ordered_json j;
    j["kind"] = "pointwise";
    j["mode"] = r ? "pointwise" : "expected";
    if (r) j["realization"] = *r;
    j["units"] = g.units();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& [name, v] : rows) arr.push_back({{"quantity", name}, {"value", v}});
    j["rows"] = std::move(arr);
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "units: " << g.units() << '\n';
    size_t width = 0;
    auto cols = [](const std::string& s) {
      size_t n = 0;
      for (char c : s) n += (c & 0xC0) != 0x80;
      return n;
    };
    for (const auto& row : rows) width = std::max(width, cols(row.first));
    for (const auto& [name, v] : rows) {
      std::cout << name << std::string(width - cols(name) + 2, ' ') << fmt(v) << '\n';
    }
  }
  return 0;
}

struct DecomposeArgs {
  std::string file;
  std::string mode = "expected";
  std::optional<std::string> realization;
  std::optional<std::string> target;
  std::optional<std::string> predictors;
  std::optional<std::string> vars;
  std::optional<std::string> given;
};

int cmd_decompose(const Globals& g, const DecomposeArgs& a) {
  auto d = load(a.file);
  std::optional<std::vector<uint32_t>> r;
  if (a.mode == "pointwise") {
    if (!a.realization) throw UsageError("pointwise mode requires --realization");
    r = parse_realization(d.get(), *a.realization);
  } else if (a.realization) {
    throw UsageError("--realization only applies to --mode pointwise");
  }

  char* text = nullptr;
  int holds = 0;
  if (a.target || a.predictors) {
    if (!a.target || !a.predictors) {
      throw UsageError("--target and --predictors must be given together");
    }
    if (a.vars || a.given) throw UsageError("--vars and --given do not apply with --target");
    const auto preds = parse_sources(d.get(), *a.predictors);
    if (preds.size() != 2) throw UsageError("--predictors takes exactly two sources");
    const uint32_t target = parse_source(d.get(), *a.target);
    check(il_mi_report(d.get(), preds[0], preds[1], target, r ? r->data() : nullptr,
                       r ? r->size() : 0, g.log_base(), g.tolerance, g.report_format(),
                       &text, &holds));
  } else {
    il_decompose_options opts{};
    opts.realization = r ? r->data() : nullptr;
    opts.realization_len = r ? r->size() : 0;
    opts.variables = a.vars ? parse_union(d.get(), *a.vars) : 0;
    opts.given = a.given ? parse_union(d.get(), *a.given) : 0;
    opts.base = g.log_base();
    opts.tolerance = g.tolerance;
    opts.allow_n5 = g.allow_n5;
    opts.format = g.report_format();
    check(il_decompose_report(d.get(), &opts, &text, &holds));
  }
  OwnedString report(text);
  std::cout << report.get();
  if (!holds) {
    std::cerr << "error: residual exceeds tolerance " << g.tolerance << '\n';
    return kExitFailure;
  }
  return 0;
}

struct LatticeArgs {
  unsigned n = 2;
  std::string kind = "redundancy";
  std::optional<std::string> out;
};

int cmd_lattice(const Globals& g, const LatticeArgs& a) {
  il_lattice* raw = nullptr;
  check(il_lattice_create(a.n, g.allow_n5, &raw));
  Lattice l(raw);
  size_t nodes = 0, edges = 0;
  check(il_lattice_size(l.get(), &nodes));
  check(il_lattice_cover_count(l.get(), &edges));
  char* dot_raw = nullptr;
  check(il_lattice_dot(l.get(), a.kind == "sharing" ? IL_SHARING : IL_REDUNDANCY, nullptr,
                       &dot_raw));
  OwnedString dot(dot_raw);

  if (a.out) {
    std::ofstream f(*a.out, std::ios::binary);
    if (!f || !(f << dot.get()) || !f.flush()) {
      throw ApiError(IL_ERR_IO, "cannot write " + *a.out);
    }
  }
  if (g.structured()) {
    nlohmann::ordered_json j;
    j["kind"] = "lattice";
    j["order"] = a.kind;
    j["n"] = a.n;
    j["nodes"] = nodes;
    j["cover_edges"] = edges;
    auto labels = nlohmann::ordered_json::array();
    for (size_t i = 0; i < nodes; ++i) {
      char* label = nullptr;
      check(il_lattice_label(l.get(), i, nullptr, &label));
      labels.push_back(OwnedString(label).get());
    }
    j["labels"] = std::move(labels);
    if (a.out) j["dot_file"] = *a.out;
    std::cout << j.dump(2) << '\n';
  } else if (a.out) {
    std::cout << a.kind << " lattice, n=" << a.n << ": " << nodes << " nodes, " << edges
              << " cover edges, written to " << *a.out << '\n';
  } else {
    std::cout << dot.get();
  }
  return 0;
}

struct EvalArgs {
  std::string file;
  std::string expression;
  std::optional<std::string> realization;
  std::optional<std::string> given;
  std::optional<std::string> about;
};

int cmd_eval(const Globals& g, const EvalArgs& a) {
  auto d = load(a.file);
  std::optional<std::vector<uint32_t>> r;
  if (a.realization) r = parse_realization(d.get(), *a.realization);
  const uint32_t given = a.given ? parse_union(d.get(), *a.given) : 0;
  const uint32_t about = a.about ? parse_union(d.get(), *a.about) : 0;
  double v = 0.0;
  check(il_eval_expression(d.get(), a.expression.c_str(), r ? r->data() : nullptr,
                           r ? r->size() : 0, given, about, g.log_base(), g.allow_n5, &v));
  if (g.structured()) {
    nlohmann::ordered_json j;
    j["kind"] = "expression";
    j["expression"] = a.expression;
    j["mode"] = r ? "pointwise" : "expected";
    if (r) j["realization"] = *r;
    if (a.given) j["given"] = *a.given;
    if (a.about) j["about"] = *a.about;
    j["units"] = g.units();
    j["value"] = v;
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << fmt(v) << '\n';
  }
  return 0;
}

int cmd_check(const Globals& g, const std::string& suite_name) {
  static const std::pair<const char*, il_suite> suites[] = {
      {"props", IL_SUITE_PROPS},         {"lemmas", IL_SUITE_LEMMAS},
      {"mobius", IL_SUITE_MOBIUS},       {"pie", IL_SUITE_PIE},
      {"pointwise", IL_SUITE_POINTWISE}, {"mi", IL_SUITE_MI},
      {"trivariate", IL_SUITE_TRIVARIATE}};
  std::optional<il_suite> suite;
  for (const auto& [name, s] : suites) {
    if (suite_name == name) suite = s;
  }
  if (!suite) throw UsageError("unknown suite '" + suite_name + "'");
  char* text = nullptr;
  int passed = 0;
  check(il_check_report(*suite, g.seed, g.trials, g.tolerance, g.log_base(),
                        g.report_format(), &text, &passed));
  OwnedString report(text);
  std::cout << report.get();
  return passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pointwise information measures, redundancy lattices and partial "
               "information decomposition"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--base", g.base, "Logarithm base")
      ->check(CLI::IsMember({"2", "e", "10"}))
      ->capture_default_str();
  app.add_option("--tol", g.tolerance, "Residual tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--trials", g.trials, "Randomized trials")
      ->check(CLI::Range(size_t{1}, std::numeric_limits<size_t>::max()))
      ->capture_default_str();
  app.add_flag("--allow-n5", g.allow_n5, "Permit the 7579-node n=5 lattice");
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::function<int()> run;

  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "Validate a distribution file");
  validate->add_option("file", validate_file)->required();
  validate->callback([&] { run = [&] { return cmd_validate(g, validate_file); }; });

  PointwiseArgs pw;
  auto* pointwise = app.add_subcommand("pointwise", "Pointwise (or expected) contents");
  pointwise->add_option("file", pw.file)->required();
  pointwise->add_option("--sources", pw.sources, "Sources, e.g. X,Y or X,Y+Z")->required();
  pointwise->add_option("--realization", pw.realization,
                        "Comma-separated categories; omit for expectations");
  pointwise->add_option("--given", pw.given, "Conditioning variables");
  pointwise->callback([&] { run = [&] { return cmd_pointwise(g, pw); }; });

  DecomposeArgs dc;
  auto* decompose = app.add_subcommand("decompose", "Partial information decomposition");
  decompose->add_option("file", dc.file)->required();
  decompose->add_option("--mode", dc.mode)
      ->check(CLI::IsMember({"pointwise", "expected"}))
      ->capture_default_str();
  decompose->add_option("--realization", dc.realization, "Comma-separated categories");
  decompose->add_option("--target", dc.target, "Target source for the mutual-information form");
  decompose->add_option("--predictors", dc.predictors, "Two predictor sources, e.g. X,Y");
  decompose->add_option("--vars", dc.vars, "Variables spanning the lattice");
  decompose->add_option("--given", dc.given, "Conditioning variables");
  decompose->callback([&] { run = [&] { return cmd_decompose(g, dc); }; });

  LatticeArgs la;
  auto* lattice = app.add_subcommand("lattice", "Export a lattice as DOT");
  lattice->add_option("--n", la.n, "Number of variables")->required();
  lattice->add_option("--kind", la.kind)
      ->check(CLI::IsMember({"redundancy", "sharing"}))
      ->capture_default_str();
  lattice->add_option("--out", la.out, "DOT output path; stdout when omitted");
  lattice->callback([&] { run = [&] { return cmd_lattice(g, la); }; });

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Evaluate an information-sharing expression");
  eval->add_option("file", ev.file)->required();
  eval->add_option("expression", ev.expression, "e.g. \"x cap (y oplus z)\"")->required();
  eval->add_option("--realization", ev.realization,
                   "Comma-separated categories; omit for the expectation");
  eval->add_option("--given", ev.given, "Conditioning variables");
  eval->add_option("--about", ev.about, "Mutual information about these variables");
  eval->callback([&] { run = [&] { return cmd_eval(g, ev); }; });

  std::string suite;
  auto* check_cmd = app.add_subcommand("check", "Run a randomized identity suite");
  check_cmd->add_option("suite", suite,
                        "props, lemmas, mobius, pie, pointwise, mi or trivariate")
      ->required();
  check_cmd->callback([&] { run = [&] { return cmd_check(g, suite); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    return run();
  } catch (const ApiError& e) {
    std::cerr << "error: " << il_status_string(e.status) << ": " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return kExitError;
}
