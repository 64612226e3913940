#include "infolattice/infolattice.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "infolattice/antichain.hpp"
#include "infolattice/checks.hpp"
#include "infolattice/distribution.hpp"
#include "infolattice/error.hpp"
#include "infolattice/expression.hpp"
#include "infolattice/pid.hpp"
#include "infolattice/pointwise.hpp"
#include "infolattice/report.hpp"

namespace il = infolattice;

struct il_distribution {
  il::JointDistribution dist;
};

struct il_lattice {
  std::shared_ptr<const il::RedundancyLattice> lattice;
};

namespace {

thread_local std::string last_error;

il_status fail(il_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <typename F>
il_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return IL_OK;
  } catch (const il::Error& e) {
    return fail(static_cast<il_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(IL_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(IL_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(IL_ERR_INTERNAL, "unknown error");
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw il::Error(il::ErrorCode::invalid_argument, what);
}

char* duplicate(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

il::LogBase to_base(il_base base) {
  switch (base) {
    case IL_BITS: return il::LogBase::bits;
    case IL_NATS: return il::LogBase::nats;
    case IL_HARTLEYS: return il::LogBase::hartleys;
  }
  throw il::Error(il::ErrorCode::invalid_argument, "unknown log base");
}

il::Realization to_realization(const il::JointDistribution& d,
                               const uint32_t* values, size_t len) {
  require(values != nullptr, "realization is null");
  il::Realization r{std::vector<std::uint32_t>(values, values + len)};
  d.check_realization(r);
  return r;
}

std::optional<il::Source> optional_source(const il::JointDistribution& d,
                                          uint32_t mask) {
  if (mask == 0) return std::nullopt;
  d.check_source(il::Source(mask));
  return il::Source(mask);
}

std::vector<il::Source> to_sources(const il::JointDistribution& d,
                                   const uint32_t* sources, size_t count) {
  require(sources != nullptr || count == 0, "sources is null");
  std::vector<il::Source> out;
  for (size_t i = 0; i < count; ++i) {
    d.check_source(il::Source(sources[i]));
    out.emplace_back(sources[i]);
  }
  return out;
}

double measure_at(const il::JointDistribution& d, il_measure measure,
                  const std::vector<il::Source>& sources,
                  std::optional<il::Source> given, const il::Realization& r,
                  il::LogBase base) {
  using K = il::PointwiseKind;
  switch (measure) {
    case IL_SURPRISAL:
      require(sources.size() == 1, "surprisal takes exactly one source");
      return given ? il::cond_surprisal(d, sources[0], *given, r, base)
                   : il::surprisal(d, sources[0], r, base);
    case IL_UNION: return il::cond_pointwise(d, K::union_content, sources, given, r, base);
    case IL_INTERSECTION: return il::cond_pointwise(d, K::intersection, sources, given, r, base);
    case IL_UNIQUE: return il::cond_pointwise(d, K::unique, sources, given, r, base);
    case IL_SYNERGY: return il::cond_pointwise(d, K::synergy, sources, given, r, base);
    case IL_MUTUAL: return il::cond_pointwise(d, K::mutual, sources, given, r, base);
  }
  throw il::Error(il::ErrorCode::invalid_argument, "unknown measure");
}

std::vector<std::string> lattice_names(const il_lattice* l, const char* const* names) {
  const unsigned n = l->lattice->n();
  if (!names) return il::default_variable_names(n);
  std::vector<std::string> out;
  for (unsigned i = 0; i < n; ++i) {
    require(names[i] != nullptr, "variable name is null");
    out.emplace_back(names[i]);
  }
  return out;
}

std::vector<std::string> names_of(const il::JointDistribution& d, il::Source s) {
  std::vector<std::string> out;
  for (auto i : s.members()) out.push_back(d.variables().name(i));
  return out;
}

std::string name_of(const il::JointDistribution& d, il::Source s) {
  std::string out;
  for (const auto& n : names_of(d, s)) out += (out.empty() ? "" : ",") + n;
  return s.size() > 1 ? "(" + out + ")" : out;
}

}  // namespace

extern "C" {

const char* il_last_error(void) { return last_error.c_str(); }

const char* il_status_string(il_status status) {
  if (status == IL_OK) return "ok";
  return il::to_string(static_cast<il::ErrorCode>(status));
}

void il_string_free(char* s) { std::free(s); }

il_status il_distribution_load_file(const char* path, il_distribution** out) {
  return guarded([&] {
    require(path && out, "null argument");
    *out = new il_distribution{il::load_distribution_file(path)};
  });
}

il_status il_distribution_load_text(const char* text, il_input_format format,
                                     il_distribution** out) {
  return guarded([&] {
    require(text && out, "null argument");
    require(format == IL_INPUT_JSON || format == IL_INPUT_CSV, "unknown input format");
    *out = new il_distribution{il::load_distribution(
        text, format == IL_INPUT_CSV ? il::InputFormat::csv : il::InputFormat::json)};
  });
}

void il_distribution_free(il_distribution* d) { delete d; }

il_status il_distribution_variable_count(const il_distribution* d, size_t* out) {
  return guarded([&] {
    require(d && out, "null argument");
    *out = d->dist.num_variables();
  });
}

il_status il_distribution_variable_name(const il_distribution* d, size_t i,
                                        const char** out) {
  return guarded([&] {
    require(d && out, "null argument");
    if (i >= d->dist.num_variables()) {
      throw il::Error(il::ErrorCode::out_of_range, "variable index out of range");
    }
    *out = d->dist.variables().name(i).c_str();
  });
}

il_status il_distribution_variable_index(const il_distribution* d, const char* name,
                                         size_t* out) {
  return guarded([&] {
    require(d && name && out, "null argument");
    *out = d->dist.variables().index_of(name);
  });
}

il_status il_distribution_cardinality(const il_distribution* d, size_t i, uint32_t* out) {
  return guarded([&] {
    require(d && out, "null argument");
    if (i >= d->dist.num_variables()) {
      throw il::Error(il::ErrorCode::out_of_range, "variable index out of range");
    }
    *out = d->dist.variables().cardinality(i);
  });
}

il_status il_distribution_support_size(const il_distribution* d, size_t* out) {
  return guarded([&] {
    require(d && out, "null argument");
    *out = d->dist.support().size();
  });
}

il_status il_distribution_support_entry(const il_distribution* d, size_t k,
                                        uint32_t* values, double* p) {
  return guarded([&] {
    require(d != nullptr, "null argument");
    const auto& s = d->dist.support();
    if (k >= s.size()) {
      throw il::Error(il::ErrorCode::out_of_range, "support index out of range");
    }
    if (values) std::copy(s[k].realization.values.begin(), s[k].realization.values.end(), values);
    if (p) *p = s[k].p;
  });
}

il_status il_marginal_mass(const il_distribution* d, uint32_t source,
                           const uint32_t* realization, size_t len, double* out) {
  return guarded([&] {
    require(d && out, "null argument");
    d->dist.check_source(il::Source(source));
    *out = il::marginal_mass(d->dist, il::Source(source),
                             to_realization(d->dist, realization, len));
  });
}

il_status il_pointwise(const il_distribution* d, il_measure measure,
                       const uint32_t* sources, size_t count, uint32_t given,
                       const uint32_t* realization, size_t len, il_base base,
                       double* out) {
  return guarded([&] {
    require(d && out, "null argument");
    const auto r = to_realization(d->dist, realization, len);
    *out = measure_at(d->dist, measure, to_sources(d->dist, sources, count),
                      optional_source(d->dist, given), r, to_base(base));
  });
}

il_status il_expected(const il_distribution* d, il_measure measure,
                      const uint32_t* sources, size_t count, uint32_t given,
                      il_base base, double* out) {
  return guarded([&] {
    require(d && out, "null argument");
    const auto srcs = to_sources(d->dist, sources, count);
    const auto g = optional_source(d->dist, given);
    const auto b = to_base(base);
    *out = il::expected(d->dist, [&](const il::Realization& r) {
      return measure_at(d->dist, measure, srcs, g, r, b);
    });
  });
}

il_status il_lattice_create(unsigned n, int allow_n5, il_lattice** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new il_lattice{il::enumerate_antichains(n, allow_n5 != 0)};
  });
}

void il_lattice_free(il_lattice* l) { delete l; }

il_status il_lattice_size(const il_lattice* l, size_t* out) {
  return guarded([&] {
    require(l && out, "null argument");
    *out = l->lattice->size();
  });
}

il_status il_lattice_cover_count(const il_lattice* l, size_t* out) {
  return guarded([&] {
    require(l && out, "null argument");
    size_t edges = 0;
    for (size_t i = 0; i < l->lattice->size(); ++i) {
      edges += l->lattice->covered_by(i).size();
    }
    *out = edges;
  });
}

il_status il_lattice_label(const il_lattice* l, size_t node, const char* const* names,
                           char** out) {
  return guarded([&] {
    require(l && out, "null argument");
    if (node >= l->lattice->size()) {
      throw il::Error(il::ErrorCode::out_of_range, "node index out of range");
    }
    *out = duplicate(l->lattice->node(node).label(lattice_names(l, names)));
  });
}

il_status il_lattice_dot(const il_lattice* l, il_lattice_kind kind,
                         const char* const* names, char** out) {
  return guarded([&] {
    require(l && out, "null argument");
    require(kind == IL_REDUNDANCY || kind == IL_SHARING, "unknown lattice kind");
    const auto k = kind == IL_SHARING ? il::LatticeKind::sharing : il::LatticeKind::redundancy;
    *out = duplicate(l->lattice->to_dot(k, lattice_names(l, names)));
  });
}

il_status il_decompose_report(const il_distribution* d,
                              const il_decompose_options* options, char** report,
                              int* identity_holds) {
  return guarded([&] {
    require(d && options && report, "null argument");
    require(options->tolerance > 0.0, "tolerance must be positive");
    const auto& dist = d->dist;
    il::DecomposeOptions opts;
    opts.base = to_base(options->base);
    opts.allow_n5 = options->allow_n5 != 0;
    opts.given = optional_source(dist, options->given);
    if (options->variables != 0) {
      const il::Source vars(options->variables);
      dist.check_source(vars);
      opts.variables = vars.members();
    }
    il::DecompositionInfo info;
    info.base = opts.base;
    info.tolerance = options->tolerance;
    if (opts.given) info.given = names_of(dist, *opts.given);

    il::Decomposition result;
    if (options->realization) {
      info.realization = to_realization(dist, options->realization, options->realization_len);
      result = il::decompose_pointwise(dist, *info.realization, opts);
    } else {
      result = il::decompose_expected(dist, opts);
    }
    const std::string text = options->format == IL_REPORT_STRUCTURED
                                 ? il::decomposition_structured(result, info)
                                 : il::decomposition_text(result, info);
    *report = duplicate(text);
    if (identity_holds) *identity_holds = result.residual() <= options->tolerance;
  });
}

il_status il_mi_report(const il_distribution* d, uint32_t a, uint32_t b,
                       uint32_t target, const uint32_t* realization, size_t len,
                       il_base base, double tolerance, il_report_format format,
                       char** report, int* identity_holds) {
  return guarded([&] {
    require(d && report, "null argument");
    require(tolerance > 0.0, "tolerance must be positive");
    const auto& dist = d->dist;
    const il::Source sa(a), sb(b), st(target);
    for (auto s : {sa, sb, st}) {
      require(!s.empty(), "predictor and target sources must be nonempty");
      dist.check_source(s);
    }
    il::MiInfo info{name_of(dist, sa), name_of(dist, sb), name_of(dist, st),
                    std::nullopt, to_base(base), tolerance};
    il::MiDecomposition m;
    if (realization) {
      info.realization = to_realization(dist, realization, len);
      m = il::mi_decompose(dist, sa, sb, st, *info.realization, info.base);
    } else {
      m = il::mi_decompose_expected(dist, sa, sb, st, info.base);
    }
    *report = duplicate(format == IL_REPORT_STRUCTURED ? il::mi_structured(m, info)
                                                       : il::mi_text(m, info));
    if (identity_holds) {
      *identity_holds = m.decomposition_residual() <= tolerance &&
                        m.coinformation_residual() <= tolerance;
    }
  });
}

il_status il_eval_expression(const il_distribution* d, const char* expression,
                             const uint32_t* realization, size_t len, uint32_t given,
                             uint32_t about, il_base base, int allow_n5, double* out) {
  return guarded([&] {
    require(d && expression && out, "null argument");
    const auto& dist = d->dist;
    const auto expr = il::parse_expression(expression, dist.variables().names());
    const auto b = to_base(base);
    const auto g = optional_source(dist, given);
    const auto ab = optional_source(dist, about);
    require(!(g && ab), "given and about cannot be combined");
    std::optional<il::Realization> r;
    if (realization) r = to_realization(dist, realization, len);
    if (ab) {
      *out = r ? il::mutual_expression(dist, expr, *ab, *r, b)
               : il::mutual_expression_expected(dist, expr, *ab, b);
    } else {
      const il::EvalOptions opts{g, b, allow_n5 != 0};
      *out = r ? il::eval_expression(dist, expr, *r, opts)
               : il::eval_expression_expected(dist, expr, opts);
    }
  });
}

il_status il_check_report(il_suite suite, uint64_t seed, size_t trials, double tolerance,
                          il_base base, il_report_format format, char** report,
                          int* passed) {
  return guarded([&] {
    require(report != nullptr, "null argument");
    require(suite >= IL_SUITE_PROPS && suite <= IL_SUITE_TRIVARIATE, "unknown suite");
    il::CheckConfig config;
    config.suite = static_cast<il::CheckSuite>(suite);
    config.seed = seed;
    config.trials = trials;
    config.tolerance = tolerance;
    config.base = to_base(base);
    const auto result = il::run_check(config);
    *report = duplicate(format == IL_REPORT_STRUCTURED ? il::check_structured(result)
                                                       : il::check_text(result));
    if (passed) *passed = result.passed();
  });
}

}  // extern "C"
