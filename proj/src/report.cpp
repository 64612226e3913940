#include "infolattice/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

namespace infolattice {

using nlohmann::ordered_json;

const char* unit_name(LogBase base) noexcept {
  switch (base) {
    case LogBase::bits: return "bits";
    case LogBase::nats: return "nats";
    case LogBase::hartleys: return "hartleys";
  }
  return "bits";
}

std::string format_value(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
    s.erase(0, 1);
  }
  return s;
}

std::string format_residual(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

namespace {

// Display width of UTF-8 text: one column per code point.
std::size_t width(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(
      s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void render(std::ostream& out) const {
    std::vector<std::size_t> w(rows_.front().size(), 0);
    for (const auto& row : rows_) {
      for (std::size_t i = 0; i < row.size(); ++i) w[i] = std::max(w[i], width(row[i]));
    }
    for (const auto& row : rows_) {
      std::string line;
      for (std::size_t i = 0; i < row.size(); ++i) {
        line += row[i];
        if (i + 1 < row.size()) line += std::string(w[i] - width(row[i]) + 2, ' ');
      }
      out << line << '\n';
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

std::string realization_text(const Realization& r) {
  std::string s = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(r[i]);
  }
  return s + ")";
}

std::string join_names(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
  return s;
}

const char* verdict(double residual, double tolerance) {
  return residual <= tolerance ? "ok" : "EXCEEDS TOLERANCE";
}

}  // namespace

std::string decomposition_text(const Decomposition& d,
                               const DecompositionInfo& info) {
  std::ostringstream out;
  out << "decomposition: "
      << (info.realization ? "pointwise at " + realization_text(*info.realization)
                           : std::string("expected"))
      << '\n';
  out << "variables: " << join_names(d.names) << '\n';
  if (info.given) out << "given: " << join_names(*info.given) << '\n';
  out << "units: " << unit_name(info.base) << '\n';

  const auto& L = *d.lattice;
  const bool named = L.size() == 4 || L.size() == 18;
  std::vector<std::string> header{"node"};
  if (named) header.push_back("term");
  header.insert(header.end(), {"value", "partial"});
  Table table(header);
  for (std::size_t i = 0; i < L.size(); ++i) {
    std::vector<std::string> row{L.node(i).label(d.names)};
    if (named) row.push_back(partial_term_name(L, i, d.names));
    row.push_back(format_value(d.values[i]));
    row.push_back(format_value(d.partials[i]));
    table.add(std::move(row));
  }
  table.render(out);

  const double residual = d.residual();
  out << "sum of partials: " << format_value(d.total()) << '\n';
  out << "reference " << (info.realization ? "h" : "H") << "(" << join_names(d.names)
      << (info.given ? "|" + join_names(*info.given) : std::string()) << "): "
      << format_value(d.reference) << '\n';
  out << "residual: " << format_residual(residual) << " (tolerance "
      << format_residual(info.tolerance) << ", "
      << verdict(residual, info.tolerance) << ")\n";
  return out.str();
}

std::string decomposition_structured(const Decomposition& d,
                                     const DecompositionInfo& info) {
  ordered_json j;
  j["kind"] = "decomposition";
  j["mode"] = info.realization ? "pointwise" : "expected";
  if (info.realization) j["realization"] = info.realization->values;
  j["variables"] = d.names;
  if (info.given) j["given"] = *info.given;
  j["units"] = unit_name(info.base);
  const auto& L = *d.lattice;
  auto nodes = ordered_json::array();
  for (std::size_t i = 0; i < L.size(); ++i) {
    ordered_json n;
    n["label"] = L.node(i).label(d.names);
    n["term"] = partial_term_name(L, i, d.names);
    n["value"] = d.values[i];
    n["partial"] = d.partials[i];
    nodes.push_back(std::move(n));
  }
  j["nodes"] = std::move(nodes);
  j["sum"] = d.total();
  j["reference"] = d.reference;
  j["residual"] = d.residual();
  j["tolerance"] = info.tolerance;
  j["identity_holds"] = d.residual() <= info.tolerance;
  return j.dump(2) + "\n";
}

namespace {

struct MiRow {
  std::string name;
  double value;
};

std::vector<MiRow> mi_rows(const MiDecomposition& m, const MiInfo& info) {
  const std::string f = info.realization ? "i" : "I";
  const auto& a = info.a;
  const auto& b = info.b;
  const auto& t = info.target;
  return {
      {f + "(" + a + "⊔" + b + ";" + t + ")", m.union_info},
      {f + "(" + a + "∖" + b + ";" + t + ")", m.unique_a},
      {f + "(" + b + "∖" + a + ";" + t + ")", m.unique_b},
      {f + "(" + a + "⊓" + b + ";" + t + ")", m.intersection},
      {f + "(" + a + "⊕" + b + ";" + t + ")", m.synergy},
  };
}

}  // namespace

std::string mi_text(const MiDecomposition& m, const MiInfo& info) {
  std::ostringstream out;
  const std::string f = info.realization ? "i" : "I";
  out << "mutual information: "
      << (info.realization ? "pointwise at " + realization_text(*info.realization)
                           : std::string("expected"))
      << '\n';
  out << "units: " << unit_name(info.base) << '\n';
  Table table({"quantity", "value"});
  for (const auto& row : mi_rows(m, info)) table.add({row.name, format_value(row.value)});
  table.render(out);
  const double r1 = m.decomposition_residual();
  const double r2 = m.coinformation_residual();
  out << f << "(" << info.a << "," << info.b << ";" << info.target
      << ") direct: " << format_value(m.joint) << '\n';
  out << f << "(" << info.a << ";" << info.b << ";" << info.target
      << ") direct: " << format_value(m.coinformation) << '\n';
  out << "decomposition residual: " << format_residual(r1) << " (tolerance "
      << format_residual(info.tolerance) << ", " << verdict(r1, info.tolerance) << ")\n";
  out << "coinformation residual: " << format_residual(r2) << " (tolerance "
      << format_residual(info.tolerance) << ", " << verdict(r2, info.tolerance) << ")\n";
  return out.str();
}

std::string mi_structured(const MiDecomposition& m, const MiInfo& info) {
  ordered_json j;
  j["kind"] = "mutual_information";
  j["mode"] = info.realization ? "pointwise" : "expected";
  if (info.realization) j["realization"] = info.realization->values;
  j["predictors"] = {info.a, info.b};
  j["target"] = info.target;
  j["units"] = unit_name(info.base);
  auto rows = ordered_json::array();
  for (const auto& row : mi_rows(m, info)) {
    rows.push_back({{"quantity", row.name}, {"value", row.value}});
  }
  j["rows"] = std::move(rows);
  j["joint"] = m.joint;
  j["coinformation"] = m.coinformation;
  j["decomposition_residual"] = m.decomposition_residual();
  j["coinformation_residual"] = m.coinformation_residual();
  j["tolerance"] = info.tolerance;
  j["identity_holds"] = m.decomposition_residual() <= info.tolerance &&
                        m.coinformation_residual() <= info.tolerance;
  return j.dump(2) + "\n";
}

std::string check_text(const CheckReport& report) {
  std::ostringstream out;
  const auto& c = report.config;
  out << "suite: " << to_string(c.suite) << '\n'
      << "seed: " << c.seed << '\n'
      << "trials: " << c.trials << '\n'
      << "tolerance: " << format_residual(c.tolerance) << '\n'
      << "units: " << unit_name(c.base) << '\n';
  Table table({"law", "cases", "max residual", "result"});
  for (const auto& law : report.laws) {
    table.add({law.name, std::to_string(law.cases), format_residual(law.max_residual),
               law.passed ? "PASS" : "FAIL"});
  }
  table.render(out);
  out << "overall: " << (report.passed() ? "PASS" : "FAIL") << '\n';
  return out.str();
}

std::string check_structured(const CheckReport& report) {
  ordered_json j;
  const auto& c = report.config;
  j["kind"] = "check";
  j["suite"] = to_string(c.suite);
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["tolerance"] = c.tolerance;
  j["units"] = unit_name(c.base);
  auto laws = ordered_json::array();
  for (const auto& law : report.laws) {
    laws.push_back({{"law", law.name},
                    {"cases", law.cases},
                    {"max_residual", law.max_residual},
                    {"passed", law.passed}});
  }
  j["laws"] = std::move(laws);
  j["passed"] = report.passed();
  return j.dump(2) + "\n";
}

}  // namespace infolattice
