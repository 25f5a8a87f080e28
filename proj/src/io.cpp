#include "mband/io.hpp"

#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace mband {

using nlohmann::json;

namespace {

const char* role_name(FilterRole r) {
  switch (r) {
    case FilterRole::scaling: return "scaling";
    case FilterRole::analysis: return "analysis";
    case FilterRole::synthesis: return "synthesis";
  }
  return "analysis";
}

json integer_to_json(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

BigInt integer_from_json(const json& j) {
  if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Rational::parse(j.get<std::string>()).numerator();
    } catch (const std::exception&) {
    }
    throw ParseError("invalid integer string '" + j.get<std::string>() + "'");
  }
  throw ParseError("expected an integer, got " + j.dump());
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return j.at(name);
}

template <typename T>
T get_as(const json& j, const char* name) {
  try {
    return field(j, name).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("field '") + name + "': " + e.what());
  }
}

json matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    rows.push_back(row);
  }
  return rows;
}

RationalMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  RationalMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) throw ParseError("matrix rows differ in length");
    for (Eigen::Index k = 0; k < cols; ++k) {
      const json& e = row[static_cast<std::size_t>(k)];
      try {
        m(i, k) = e.is_string() ? Rational::parse(e.get<std::string>()) : Rational(e.get<std::int64_t>());
      } catch (const std::exception& ex) {
        throw ParseError(std::string("matrix entry: ") + ex.what());
      }
    }
  }
  return m;
}

json parameters_to_json(const BankParameters& p) {
  json j = json::object();
  j["degree"] = p.degree ? json(*p.degree) : json(nullptr);
  j["half_width"] = p.half_width ? json(*p.half_width) : json(nullptr);
  if (!p.a0) {
    j["a0"] = nullptr;
  } else if (p.a0->strategy == A0Completion::Strategy::custom) {
    j["a0"] = json{{"strategy", "custom"}, {"matrix", matrix_to_json(p.a0->matrix)}};
  } else {
    j["a0"] = json{{"strategy", strategy_name(p.a0->strategy)}};
  }
  return j;
}

BankParameters parameters_from_json(const json& j) {
  BankParameters p;
  if (j.is_null()) return p;
  if (!j.is_object()) throw ParseError("parameters must be an object");
  if (j.contains("degree") && !j["degree"].is_null()) p.degree = get_as<int>(j, "degree");
  if (j.contains("half_width") && !j["half_width"].is_null()) p.half_width = get_as<int>(j, "half_width");
  if (j.contains("a0") && !j["a0"].is_null()) {
    const auto strategy = get_as<std::string>(j["a0"], "strategy");
    if (strategy == "unit")
      p.a0 = A0Completion::unit_rows();
    else if (strategy == "orthogonal")
      p.a0 = A0Completion::orthogonal_rows();
    else if (strategy == "custom")
      p.a0 = A0Completion::custom(matrix_from_json(field(j["a0"], "matrix")));
    else
      throw ParseError("unknown a0 strategy '" + strategy + "'");
  }
  return p;
}

Filter filter_from_json(const json& j, int dilation, Family family) {
  Filter f;
  f.dilation = dilation;
  f.family = family;
  f.offset = get_as<int>(j, "offset");
  f.taps = get_as<std::vector<double>>(j, "taps_float");
  if (f.taps.empty()) throw ParseError("filter has no taps");
  if (j.contains("taps_exact") && !j["taps_exact"].is_null()) {
    const json& e = j["taps_exact"];
    const json& num = field(e, "numerator");
    const json& den = field(e, "denominator");
    if (!num.is_array() || !den.is_array() || num.size() != den.size() || num.size() != f.taps.size())
      throw ParseError("taps_exact arrays must match taps_float in length");
    if (!get_as<bool>(e, "sqrtN_scale")) throw ParseError("taps_exact without sqrtN_scale is not supported");
    std::vector<Rational> r;
    for (std::size_t i = 0; i < num.size(); ++i) {
      const BigInt d = integer_from_json(den[i]);
      if (d <= 0) throw ParseError("taps_exact denominators must be positive");
      r.emplace_back(integer_from_json(num[i]), d);
    }
    f.taps_exact = std::move(r);
  }
  return f;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json filter_to_json(const Filter& f, FilterRole role, int channel) {
  json j;
  j["role"] = role_name(role);
  j["channel"] = channel;
  j["offset"] = f.offset;
  j["taps_float"] = f.taps;
  if (f.taps_exact) {
    json num = json::array(), den = json::array();
    for (const auto& r : *f.taps_exact) {
      num.push_back(integer_to_json(r.numerator()));
      den.push_back(integer_to_json(r.denominator()));
    }
    j["taps_exact"] = json{{"numerator", num}, {"denominator", den}, {"sqrtN_scale", true}};
  } else {
    j["taps_exact"] = nullptr;
  }
  return j;
}

json bank_to_json(const FilterBank& bank) {
  json j;
  j["schema_version"] = bank_schema_version;
  j["N"] = bank.dilation;
  j["family"] = family_name(bank.family);
  j["kind"] = kind_name(bank.kind);
  j["parameters"] = parameters_to_json(bank.parameters);
  json filters = json::array();
  for (int i = 0; i < bank.channels(); ++i)
    filters.push_back(filter_to_json(bank.analysis[static_cast<std::size_t>(i)], FilterRole::analysis, i));
  for (int i = 0; i < static_cast<int>(bank.synthesis.size()); ++i)
    filters.push_back(filter_to_json(bank.synthesis[static_cast<std::size_t>(i)], FilterRole::synthesis, i));
  j["filters"] = filters;
  return j;
}

json scaling_filter_to_json(const Filter& f, const BankParameters& parameters) {
  json j;
  j["schema_version"] = bank_schema_version;
  j["N"] = f.dilation;
  j["family"] = family_name(f.family);
  j["parameters"] = parameters_to_json(parameters);
  j["filters"] = json::array({filter_to_json(f, FilterRole::scaling, 0)});
  return j;
}

FilterBank bank_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("bank file must hold a JSON object");
  const int version = get_as<int>(j, "schema_version");
  if (version != bank_schema_version) throw ParseError("unsupported schema_version " + std::to_string(version));
  FilterBank bank;
  bank.dilation = get_as<int>(j, "N");
  if (bank.dilation < 2) throw ParseError("N must be at least 2");
  try {
    bank.family = parse_family(get_as<std::string>(j, "family"));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  const std::string kind = j.contains("kind") ? get_as<std::string>(j, "kind") : "biorthogonal";
  if (kind != "orthogonal" && kind != "biorthogonal") throw ParseError("unknown bank kind '" + kind + "'");
  bank.kind = kind == "orthogonal" ? BankKind::orthogonal : BankKind::biorthogonal;
  bank.parameters = parameters_from_json(j.contains("parameters") ? j["parameters"] : json(nullptr));

  const json& filters = field(j, "filters");
  if (!filters.is_array()) throw ParseError("'filters' must be an array");
  const auto n = static_cast<std::size_t>(bank.dilation);
  std::vector<std::optional<Filter>> analysis(n), synthesis(n);
  for (const json& fj : filters) {
    const auto role = get_as<std::string>(fj, "role");
    const int channel = get_as<int>(fj, "channel");
    if (channel < 0 || channel >= bank.dilation) throw ParseError("filter channel out of range");
    if (role != "analysis" && role != "synthesis" && role != "scaling") throw ParseError("unknown filter role '" + role + "'");
    Filter f = filter_from_json(fj, bank.dilation, bank.family);
    auto& slot = (role == "synthesis" ? synthesis : analysis)[static_cast<std::size_t>(channel)];
    if (slot) throw ParseError("duplicate filter record");
    slot = std::move(f);
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!analysis[i] || !synthesis[i])
      throw ParseError("bank file must hold N analysis and N synthesis filters");
    bank.analysis.push_back(std::move(*analysis[i]));
    bank.synthesis.push_back(std::move(*synthesis[i]));
  }
  return bank;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

void write_bank(const std::filesystem::path& path, const FilterBank& bank) {
  write_text(path, bank_to_json(bank).dump(2) + "\n");
}

FilterBank read_bank(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("'" + path.string() + "': " + e.what());
  }
  return bank_from_json(j);
}

RationalMatrix read_rational_matrix(const std::filesystem::path& path) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<Rational>> rows;
  std::string line;
  while (std::getline(in, line)) {
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::vector<Rational> row;
    std::string tok;
    while (ls >> tok) {
      if (tok.front() == '#') break;
      try {
        row.push_back(Rational::parse(tok));
      } catch (const std::exception&) {
        throw ParseError("'" + path.string() + "': bad matrix entry '" + tok + "'");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError("'" + path.string() + "': empty matrix");
  RationalMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) throw ParseError("'" + path.string() + "': ragged matrix rows");
    for (std::size_t k = 0; k < rows[i].size(); ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = rows[i][k];
  }
  return m;
}

Signal read_signal(const std::filesystem::path& path, int column) {
  if (column < 0) throw std::invalid_argument("read_signal: negative column");
  std::istringstream in(read_text(path));
  std::vector<double> values;
  std::string line;
  bool seen_row = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t' || c == '\r') c = ' ';
    std::istringstream ls(line);
    std::vector<std::string> fields;
    std::string tok;
    while (ls >> tok) fields.push_back(tok);
    if (fields.empty() || fields[0].front() == '#') continue;
    if (static_cast<int>(fields.size()) <= column)
      throw ParseError("'" + path.string() + "' line " + std::to_string(line_no) + ": no column " + std::to_string(column));
    const std::string& field_text = fields[static_cast<std::size_t>(column)];
    std::size_t used = 0;
    double v = 0.0;
    bool ok = true;
    try {
      v = std::stod(field_text, &used);
    } catch (const std::exception&) {
      ok = false;
    }
    ok = ok && used == field_text.size();
    if (!ok) {
      if (!seen_row) {  // header
        seen_row = true;
        continue;
      }
      throw ParseError("'" + path.string() + "' line " + std::to_string(line_no) + ": not a number '" + field_text + "'");
    }
    seen_row = true;
    values.push_back(v);
  }
  return Eigen::Map<const Signal>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_signal(const std::filesystem::path& path, const Signal& x) {
  std::string text;
  for (Eigen::Index i = 0; i < x.size(); ++i) text += format_double(x[i]) + "\n";
  write_text(path, text);
}

void write_columns(const std::filesystem::path& path, const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw std::invalid_argument("write_columns: column lengths differ");
  std::string text;
  for (std::size_t i = 0; i < x.size(); ++i) text += format_double(x[i]) + " " + format_double(y[i]) + "\n";
  write_text(path, text);
}

}  // namespace mband
