#include "infolattice/distribution.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <regex>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "infolattice/error.hpp"

namespace infolattice {

namespace {

bool valid_name(const std::string& name) {
  static const std::regex kIdentifier("[A-Za-z_][A-Za-z0-9_]*");
  return std::regex_match(name, kIdentifier);
}

std::string format_assignment(const Realization& r) {
  std::string out = "(";
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(r[i]);
  }
  return out + ")";
}

}  // namespace

VariableSet::VariableSet(std::vector<std::string> names,
                         std::vector<std::uint32_t> cardinalities)
    : names_(std::move(names)), cards_(std::move(cardinalities)) {
  if (names_.empty()) {
    throw Error(ErrorCode::invalid_argument, "at least one variable required");
  }
  if (names_.size() > kMaxVariables) {
    throw Error(ErrorCode::out_of_range,
                "at most " + std::to_string(kMaxVariables) + " variables");
  }
  if (names_.size() != cards_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "names and cardinalities differ in length");
  }
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (!valid_name(names_[i])) {
      throw Error(ErrorCode::invalid_argument,
                  "variable name '" + names_[i] + "' is not an identifier");
    }
    if (cards_[i] < 2) {
      throw Error(ErrorCode::cardinality,
                  "variable '" + names_[i] + "' has cardinality < 2");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (names_[j] == names_[i]) {
        throw Error(ErrorCode::invalid_argument,
                    "duplicate variable name '" + names_[i] + "'");
      }
    }
  }
}

std::size_t VariableSet::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) {
    throw Error(ErrorCode::invalid_argument,
                "unknown variable '" + std::string(name) + "'");
  }
  return static_cast<std::size_t>(it - names_.begin());
}

Source Source::of(std::initializer_list<std::size_t> members) {
  return of(std::span<const std::size_t>(members.begin(), members.size()));
}

Source Source::of(std::span<const std::size_t> members) {
  std::uint32_t mask = 0;
  for (std::size_t m : members) {
    if (m >= kMaxVariables) {
      throw Error(ErrorCode::out_of_range, "variable index out of range");
    }
    mask |= std::uint32_t{1} << m;
  }
  if (mask == 0) throw Error(ErrorCode::invalid_argument, "empty source");
  return Source(mask);
}

int Source::size() const noexcept { return std::popcount(mask_); }

std::vector<std::size_t> Source::members() const {
  std::vector<std::size_t> out;
  for (std::uint32_t m = mask_; m != 0; m &= m - 1) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(m)));
  }
  return out;
}

bool canonical_less(Source a, Source b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  // Same size: the lexicographically smaller member list has the lowest
  // differing bit set.
  std::uint32_t diff = a.mask() ^ b.mask();
  if (diff == 0) return false;
  return (a.mask() >> std::countr_zero(diff)) & 1u;
}

std::string format_source(Source s, std::span<const std::string> names) {
  std::string out = "{";
  bool first = true;
  for (std::size_t m : s.members()) {
    if (!first) out += ',';
    first = false;
    out += m < names.size() ? names[m] : "x" + std::to_string(m + 1);
  }
  return out + "}";
}

JointDistribution::JointDistribution(VariableSet vars, std::vector<Entry> rows)
    : vars_(std::move(vars)) {
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    if (row.realization.size() != vars_.size()) {
      throw Error(ErrorCode::cardinality,
                  "pmf row " + std::to_string(k + 1) + " has " +
                      std::to_string(row.realization.size()) +
                      " values, expected " + std::to_string(vars_.size()));
    }
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (row.realization[i] >= vars_.cardinality(i)) {
        throw Error(ErrorCode::cardinality,
                    "pmf row " + std::to_string(k + 1) + ": value " +
                        std::to_string(row.realization[i]) +
                        " out of range for '" + vars_.name(i) + "'");
      }
    }
    if (!(row.p >= 0.0) || !std::isfinite(row.p)) {
      throw Error(ErrorCode::negative_mass,
                  "pmf row " + std::to_string(k + 1) +
                      " has negative or non-finite mass");
    }
  }

  std::sort(rows.begin(), rows.end(), [](const Entry& a, const Entry& b) {
    return a.realization < b.realization;
  });
  for (std::size_t k = 1; k < rows.size(); ++k) {
    if (rows[k].realization == rows[k - 1].realization) {
      throw Error(ErrorCode::duplicate_assignment,
                  "assignment " + format_assignment(rows[k].realization) +
                      " listed more than once");
    }
  }

  double total = 0.0;
  for (const auto& row : rows) total += row.p;
  if (std::abs(total - 1.0) > kNormalizationTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "masses sum to " << total << ", expected 1 within "
        << std::setprecision(1) << std::scientific << kNormalizationTolerance;
    throw Error(ErrorCode::normalization, msg.str());
  }

  for (auto& row : rows) {
    if (row.p > 0.0) support_.push_back(std::move(row));
  }
  if (support_.empty()) {
    throw Error(ErrorCode::normalization, "support is empty");
  }
}

bool JointDistribution::in_support(const Realization& r) const {
  auto it = std::lower_bound(
      support_.begin(), support_.end(), r,
      [](const Entry& e, const Realization& key) { return e.realization < key; });
  return it != support_.end() && it->realization == r;
}

void JointDistribution::check_realization(const Realization& r) const {
  if (r.size() != vars_.size()) {
    throw Error(ErrorCode::invalid_argument,
                "realization has " + std::to_string(r.size()) +
                    " values, expected " + std::to_string(vars_.size()));
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] >= vars_.cardinality(i)) {
      throw Error(ErrorCode::cardinality,
                  "realization value " + std::to_string(r[i]) +
                      " out of range for '" + vars_.name(i) + "'");
    }
  }
}

void JointDistribution::check_source(Source s) const {
  if (s.empty()) throw Error(ErrorCode::invalid_argument, "empty source");
  if ((s.mask() & ~all_variables().mask()) != 0) {
    throw Error(ErrorCode::invalid_argument,
                "source references a variable index >= " +
                    std::to_string(vars_.size()));
  }
}

Source JointDistribution::all_variables() const noexcept {
  const auto n = vars_.size();
  return Source(n >= 32 ? ~std::uint32_t{0}
                        : (std::uint32_t{1} << n) - 1);
}

double marginal_mass(const JointDistribution& d, Source s,
                     const Realization& r) {
  d.check_source(s);
  d.check_realization(r);
  const auto members = s.members();
  double mass = 0.0;
  for (const auto& e : d.support()) {
    bool agrees = true;
    for (std::size_t m : members) {
      if (e.realization[m] != r[m]) {
        agrees = false;
        break;
      }
    }
    if (agrees) mass += e.p;
  }
  return std::min(mass, 1.0);
}

double conditional_mass(const JointDistribution& d, Source s, Source given,
                        const Realization& r) {
  d.check_source(s);
  d.check_source(given);
  if (!s.disjoint(given)) {
    throw Error(ErrorCode::invalid_argument,
                "conditioned and conditioning sources overlap");
  }
  const double denom = marginal_mass(d, given, r);
  if (denom <= 0.0) {
    throw Error(ErrorCode::zero_mass, "conditioning mass is zero");
  }
  return std::min(marginal_mass(d, s | given, r) / denom, 1.0);
}

namespace {

JointDistribution parse_json(std::string_view document) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::parse, std::string("malformed JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("variables") ||
        !doc.contains("pmf")) {
      throw Error(ErrorCode::parse,
                  "document must be an object with 'variables' and 'pmf'");
    }
    const auto& vars = doc.at("variables");
    const auto& pmf = doc.at("pmf");
    if (!vars.is_array() || !pmf.is_array()) {
      throw Error(ErrorCode::parse, "'variables' and 'pmf' must be arrays");
    }
    std::vector<std::string> names;
    std::vector<std::uint32_t> cards;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      const auto& v = vars[i];
      if (!v.is_object() || !v.contains("name") || !v.contains("cardinality") ||
          !v.at("name").is_string() || !v.at("cardinality").is_number_integer()) {
        throw Error(ErrorCode::parse, "variables[" + std::to_string(i) +
                                          "] needs string 'name' and "
                                          "integer 'cardinality'");
      }
      const auto card = v.at("cardinality").get<std::int64_t>();
      if (card < 2 || card > std::int64_t{1} << 31) {
        throw Error(ErrorCode::cardinality,
                    "variables[" + std::to_string(i) + "] cardinality " +
                        std::to_string(card) + " is invalid");
      }
      names.push_back(v.at("name").get<std::string>());
      cards.push_back(static_cast<std::uint32_t>(card));
    }
    VariableSet vs(std::move(names), std::move(cards));

    std::vector<JointDistribution::Entry> rows;
    rows.reserve(pmf.size());
    for (std::size_t k = 0; k < pmf.size(); ++k) {
      const auto& row = pmf[k];
      const std::string where = "pmf[" + std::to_string(k) + "]";
      if (!row.is_object() || !row.contains("assignment") ||
          !row.contains("p") || !row.at("assignment").is_array() ||
          !row.at("p").is_number()) {
        throw Error(ErrorCode::parse,
                    where + " needs array 'assignment' and number 'p'");
      }
      Realization r;
      for (const auto& a : row.at("assignment")) {
        if (!a.is_number_integer() || a.get<std::int64_t>() < 0) {
          throw Error(ErrorCode::cardinality,
                      where + " has a non-integer or negative category");
        }
        const auto value = a.get<std::int64_t>();
        if (value > std::numeric_limits<std::uint32_t>::max()) {
          throw Error(ErrorCode::cardinality, where + " category too large");
        }
        r.values.push_back(static_cast<std::uint32_t>(value));
      }
      rows.push_back({std::move(r), row.at("p").get<double>()});
    }
    return JointDistribution(std::move(vs), std::move(rows));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse, std::string("invalid document: ") + e.what());
  }
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

JointDistribution parse_csv(std::string_view document) {
  std::vector<std::string> names;
  std::vector<std::int64_t> declared;  // -1 when inferred
  std::vector<JointDistribution::Entry> rows;
  std::vector<std::uint32_t> max_seen;
  bool have_header = false;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= document.size()) {
    auto end = document.find('\n', pos);
    if (end == std::string_view::npos) end = document.size();
    const auto line = trim(document.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fields = split_commas(line);
    const std::string where = "line " + std::to_string(line_no);
    if (!have_header) {
      if (fields.size() < 2 || fields.back() != "p") {
        throw Error(ErrorCode::parse,
                    where + ": header must list variables then 'p'");
      }
      for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
        auto f = fields[i];
        const auto colon = f.find(':');
        std::int64_t card = -1;
        if (colon != std::string_view::npos) {
          const auto num = trim(f.substr(colon + 1));
          auto [p, ec] =
              std::from_chars(num.data(), num.data() + num.size(), card);
          if (ec != std::errc() || p != num.data() + num.size()) {
            throw Error(ErrorCode::parse, where + ": bad cardinality in '" +
                                              std::string(f) + "'");
          }
          f = trim(f.substr(0, colon));
        }
        names.emplace_back(f);
        declared.push_back(card);
      }
      max_seen.assign(names.size(), 0);
      have_header = true;
      continue;
    }

    if (fields.size() != names.size() + 1) {
      throw Error(ErrorCode::parse, where + ": expected " +
                                        std::to_string(names.size() + 1) +
                                        " fields, found " +
                                        std::to_string(fields.size()));
    }
    Realization r;
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::uint32_t v = 0;
      const auto f = fields[i];
      auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
      if (ec != std::errc() || p != f.data() + f.size()) {
        throw Error(ErrorCode::parse, where + ": '" + std::string(f) +
                                          "' is not a category index");
      }
      r.values.push_back(v);
      max_seen[i] = std::max(max_seen[i], v);
    }
    double prob = 0.0;
    try {
      std::size_t used = 0;
      const std::string text(fields.back());
      prob = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::parse, where + ": '" + std::string(fields.back()) +
                                        "' is not a probability");
    }
    if (prob < 0.0) {
      throw Error(ErrorCode::negative_mass, where + ": negative mass");
    }
    rows.push_back({std::move(r), prob});
  }
  if (!have_header) throw Error(ErrorCode::parse, "empty CSV document");

  std::vector<std::uint32_t> cards;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (declared[i] >= 0) {
      if (declared[i] < 2 || declared[i] > std::int64_t{1} << 31) {
        throw Error(ErrorCode::cardinality,
                    "variable '" + names[i] + "' has invalid cardinality");
      }
      cards.push_back(static_cast<std::uint32_t>(declared[i]));
    } else {
      cards.push_back(std::max<std::uint32_t>(2, max_seen[i] + 1));
    }
  }
  return JointDistribution(VariableSet(std::move(names), std::move(cards)),
                           std::move(rows));
}

}  // namespace

JointDistribution load_distribution(std::string_view document,
                                    InputFormat format) {
  return format == InputFormat::json ? parse_json(document)
                                     : parse_csv(document);
}

JointDistribution load_distribution_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::io, "cannot open '" + path.string() + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  InputFormat format = InputFormat::csv;
  if (path.extension() != ".csv") {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      format = InputFormat::json;
    }
  }
  try {
    return load_distribution(text, format);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace infolattice
