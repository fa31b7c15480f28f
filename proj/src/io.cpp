#include "ellcoh/io.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <set>
#include <sstream>

namespace ellcoh::io {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::ParseError, (path.empty() ? std::string("/") : path) + ": " + what);
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    // byte is 1-based and points just past the offending character
    const std::size_t offset = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                                           e.what());
  }
}

// Walks a JSON value while remembering its pointer for diagnostics.
class Node {
 public:
  Node(const Json& value, std::string path) : value_(value), path_(std::move(path)) {}

  const Json& value() const { return value_; }
  const std::string& path() const { return path_; }

  void expect_object(std::initializer_list<std::string_view> required,
                     std::initializer_list<std::string_view> optional = {}) const {
    if (!value_.is_object()) schema_error(path_, "expected an object");
    for (auto key : required)
      if (!value_.contains(std::string(key))) schema_error(path_, "missing key '" + std::string(key) + "'");
    for (const auto& [key, _] : value_.items()) {
      const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                         std::find(optional.begin(), optional.end(), key) != optional.end();
      if (!known) schema_error(path_, "unknown key '" + key + "'");
    }
  }

  bool has(std::string_view key) const { return value_.is_object() && value_.contains(std::string(key)); }

  Node operator[](std::string_view key) const {
    return {value_.at(std::string(key)), path_ + "/" + std::string(key)};
  }

  Node at(std::size_t i) const { return {value_.at(i), path_ + "/" + std::to_string(i)}; }

  std::string string() const {
    if (!value_.is_string()) schema_error(path_, "expected a string");
    return value_.get<std::string>();
  }

  bool boolean() const {
    if (!value_.is_boolean()) schema_error(path_, "expected true or false");
    return value_.get<bool>();
  }

  Dim natural() const {
    if (!value_.is_number_integer() || value_.get<long long>() < 0)
      schema_error(path_, "expected a non-negative integer");
    return static_cast<Dim>(value_.get<long long>());
  }

  std::vector<Node> array() const {
    if (!value_.is_array()) schema_error(path_, "expected an array");
    std::vector<Node> out;
    for (std::size_t i = 0; i < value_.size(); ++i) out.push_back(at(i));
    return out;
  }

  BettiVector betti(FieldTag field) const {
    std::vector<Dim> dims;
    for (const auto& n : array()) dims.push_back(n.natural());
    return {std::move(dims), field};
  }

  DegreeRanks ranks() const {
    if (!value_.is_object()) schema_error(path_, "expected an object mapping degrees to ranks");
    DegreeRanks out;
    for (const auto& [key, _] : value_.items()) {
      int degree = 0;
      const auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), degree);
      if (ec != std::errc{} || ptr != key.data() + key.size() || degree < 0)
        schema_error(path_, "degree key '" + key + "' is not a non-negative integer");
      out[degree] = (*this)[key].natural();
    }
    return out;
  }

 private:
  const Json& value_;
  std::string path_;
};

FieldTag parse_field(const Node& n) {
  const auto s = n.string();
  if (s == "rational") return FieldTag::Rational;
  if (s == "complex") return FieldTag::Complex;
  schema_error(n.path(), "field must be \"rational\" or \"complex\"");
}

ComplementInput parse_complement(const Node& n, FieldTag field) {
  if (!n.value().is_object()) schema_error(n.path(), "expected an object");
  if (n.has("betti")) {
    n.expect_object({"betti"});
    return n["betti"].betti(field);
  }
  n.expect_object({"recipe"});
  const auto r = n["recipe"];
  r.expect_object({"ambient_betti", "locus_betti", "pushforward_ranks"});
  return ComplementRecipe{r["ambient_betti"].betti(field), r["locus_betti"].betti(field),
                          r["pushforward_ranks"].ranks()};
}

ResidueSpaceInput parse_residue(const Node& n, FieldTag field) {
  if (!n.value().is_object()) schema_error(n.path(), "expected an object");
  if (!n.has("mode")) schema_error(n.path(), "missing key 'mode'");
  const auto mode = n["mode"].string();
  const std::initializer_list<std::string_view> extras = {"torus_type", "closed_orientable_dim"};

  ResidueSpaceInput r;
  if (mode == "direct") {
    n.expect_object({"i", "mode", "betti"}, extras);
    r.mode = residue::Direct{n["betti"].betti(field)};
  } else if (mode == "trivial_torus") {
    n.expect_object({"i", "mode", "base_betti"}, extras);
    r.mode = residue::TrivialTorus{n["base_betti"].betti(field)};
  } else if (mode == "circle_gysin") {
    n.expect_object({"i", "mode", "base_betti", "cup_e_ranks"}, extras);
    r.mode = residue::CircleGysin{n["base_betti"].betti(field), n["cup_e_ranks"].ranks()};
  } else if (mode == "points") {
    n.expect_object({"i", "mode", "count"}, extras);
    r.mode = residue::Points{n["count"].natural()};
  } else {
    schema_error(n.path() + "/mode", "unknown residue mode '" + mode + "'");
  }
  r.stratum = static_cast<int>(n["i"].natural());
  if (n.has("torus_type")) r.torus_type = n["torus_type"].boolean();
  if (n.has("closed_orientable_dim")) r.closed_orientable_dim = static_cast<int>(n["closed_orientable_dim"].natural());
  return r;
}

std::vector<ResidueSpaceInput> parse_residues(const Node& n, FieldTag field) {
  std::vector<ResidueSpaceInput> out;
  for (const auto& item : n.array()) out.push_back(parse_residue(item, field));
  return out;
}

Json betti_json(const BettiVector& b) {
  Json arr = Json::array();
  for (Dim d : b.dims) arr.push_back(d);
  return arr;
}

Json padded_json(const BettiVector& b, int length) {
  Json arr = Json::array();
  for (Dim d : b.padded(length)) arr.push_back(d);
  return arr;
}

Json ranks_json(const DegreeRanks& ranks) {
  Json obj = Json::object();
  for (const auto& [k, r] : ranks) obj[std::to_string(k)] = r;
  return obj;
}

Json complement_json(const ComplementInput& c) {
  return std::visit(overloaded{
                        [](const BettiVector& b) { return Json{{"betti", betti_json(b)}}; },
                        [](const ComplementRecipe& r) {
                          return Json{{"recipe",
                                       {{"ambient_betti", betti_json(r.ambient_betti)},
                                        {"locus_betti", betti_json(r.locus_betti)},
                                        {"pushforward_ranks", ranks_json(r.pushforward_ranks)}}}};
                        },
                    },
                    c);
}

Json residue_json(const ResidueSpaceInput& r) {
  Json out;
  out["i"] = r.stratum;
  out["mode"] = mode_name(r.mode);
  std::visit(overloaded{
                 [&](const residue::Direct& d) { out["betti"] = betti_json(d.betti); },
                 [&](const residue::TrivialTorus& t) { out["base_betti"] = betti_json(t.base_betti); },
                 [&](const residue::CircleGysin& g) {
                   out["base_betti"] = betti_json(g.base_betti);
                   out["cup_e_ranks"] = ranks_json(g.cup_e_ranks);
                 },
                 [&](const residue::Points& p) { out["count"] = p.count; },
             },
             r.mode);
  if (r.torus_type) out["torus_type"] = true;
  if (r.closed_orientable_dim) out["closed_orientable_dim"] = *r.closed_orientable_dim;
  return out;
}

Json residues_json(const std::vector<ResidueSpaceInput>& residues) {
  Json arr = Json::array();
  for (const auto& r : residues) arr.push_back(residue_json(r));
  return arr;
}

int display_length(const CohomologyReport& report) {
  int length = report.ambient_dim + 1;
  length = std::max(length, report.algebroid_betti.support_end());
  length = std::max(length, report.complement_betti.support_end());
  return length;
}

struct Row {
  std::string label;
  std::vector<Dim> dims;
};

std::vector<Row> report_rows(const CohomologyReport& report, int length) {
  std::vector<Row> rows;
  rows.push_back({"H^k(M\\D)", report.complement_betti.padded(length)});
  for (const auto& r : report.residues)
    rows.push_back({"H^{k-" + std::to_string(r.stratum) + "}_res", r.shifted.padded(length)});
  rows.push_back({"H^k(A_|D|)", report.algebroid_betti.padded(length)});
  return rows;
}

std::string render_table(const std::vector<Row>& rows, int length) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::string> header = {"k"};
  for (int k = 0; k < length; ++k) header.push_back(std::to_string(k));
  header.push_back("otherwise");
  cells.push_back(header);
  for (const auto& row : rows) {
    std::vector<std::string> line = {row.label};
    for (Dim d : row.dims) line.push_back(std::to_string(d));
    line.push_back("0");
    cells.push_back(line);
  }
  std::vector<std::size_t> width(header.size(), 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());

  std::ostringstream out;
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << " | ";
      out << std::left << std::setw(static_cast<int>(c + 1 == line.size() ? 0 : width[c])) << line[c];
    }
    out << '\n';
  }
  return out.str();
}

std::string render_checks_impl(const std::vector<Check>& checks) {
  std::ostringstream out;
  out << "\nconsistency checks:\n";
  for (const auto& c : checks) out << "  [" << to_string(c.status) << "] " << c.name << ": " << c.detail << '\n';
  return out.str();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

DivisorSpec divisor_from_json(const Json& doc) {
  const Node root(doc, "");
  root.expect_object({"name", "ambient_dim", "intersection_number", "field", "complement", "residues", "flags"},
                     {"description", "alternate"});
  DivisorSpec spec;
  spec.name = root["name"].string();
  if (root.has("description")) spec.description = root["description"].string();
  spec.ambient_dim = static_cast<int>(root["ambient_dim"].natural());
  spec.intersection_number = static_cast<int>(root["intersection_number"].natural());
  spec.field = parse_field(root["field"]);
  spec.complement = parse_complement(root["complement"], spec.field);
  spec.residues = parse_residues(root["residues"], spec.field);

  const auto flags = root["flags"];
  flags.expect_object({"global_normal_crossing", "d1_coorientable"});
  spec.flags.global_normal_crossing = flags["global_normal_crossing"].boolean();
  spec.flags.d1_coorientable = flags["d1_coorientable"].boolean();

  if (root.has("alternate")) {
    const auto alt = root["alternate"];
    alt.expect_object({"label", "complement", "residues"});
    spec.alternate = AlternatePipeline{alt["label"].string(), parse_complement(alt["complement"], spec.field),
                                       parse_residues(alt["residues"], spec.field)};
  }
  return spec;
}

DivisorSpec parse_divisor(std::string_view text) { return divisor_from_json(parse_text(text)); }

Json divisor_to_json(const DivisorSpec& spec) {
  Json doc;
  doc["name"] = spec.name;
  if (!spec.description.empty()) doc["description"] = spec.description;
  doc["ambient_dim"] = spec.ambient_dim;
  doc["intersection_number"] = spec.intersection_number;
  doc["field"] = to_string(spec.field);
  doc["complement"] = complement_json(spec.complement);
  doc["residues"] = residues_json(spec.residues);
  doc["flags"] = {{"global_normal_crossing", spec.flags.global_normal_crossing},
                  {"d1_coorientable", spec.flags.d1_coorientable}};
  if (spec.alternate) {
    doc["alternate"] = {{"label", spec.alternate->label},
                        {"complement", complement_json(spec.alternate->complement)},
                        {"residues", residues_json(spec.alternate->residues)}};
  }
  return doc;
}

std::string dump_divisor(const DivisorSpec& spec) { return divisor_to_json(spec).dump(2) + "\n"; }

Json report_to_json(const CohomologyReport& report, FieldTag field, Route route) {
  const int length = display_length(report);
  Json doc;
  doc["version"] = std::string(kVersion);
  doc["name"] = report.divisor_name;
  doc["field"] = to_string(field);
  doc["route"] = route == Route::General ? "general" : "dim4";
  doc["ambient_dim"] = report.ambient_dim;
  doc["algebroid_betti"] = padded_json(report.algebroid_betti, length);
  doc["euler_characteristic"] = euler_char(report.algebroid_betti);
  Json residues = Json::array();
  for (const auto& r : report.residues) {
    residues.push_back({{"stratum", r.stratum},
                        {"betti", betti_json(r.betti.trimmed())},
                        {"shifted", padded_json(r.shifted, length)}});
  }
  doc["breakdown"] = {{"complement", padded_json(report.complement_betti, length)}, {"residues", residues}};
  doc["complex_log_betti"] = padded_json(complex_log_cohomology(report.complement_betti), length);
  Json checks = Json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"detail", c.detail}});
  doc["checks"] = checks;
  return doc;
}

CohomologyReport report_from_json(const Json& doc) {
  const Node root(doc, "");
  root.expect_object({"version", "name", "field", "route", "ambient_dim", "algebroid_betti", "euler_characteristic",
                      "breakdown", "complex_log_betti", "checks"});
  const FieldTag field = parse_field(root["field"]);
  CohomologyReport report;
  report.divisor_name = root["name"].string();
  report.ambient_dim = static_cast<int>(root["ambient_dim"].natural());
  report.algebroid_betti = root["algebroid_betti"].betti(field);
  const auto breakdown = root["breakdown"];
  breakdown.expect_object({"complement", "residues"});
  report.complement_betti = breakdown["complement"].betti(field);
  for (const auto& r : breakdown["residues"].array()) {
    r.expect_object({"stratum", "betti", "shifted"});
    report.residues.push_back(
        {static_cast<int>(r["stratum"].natural()), r["betti"].betti(field), r["shifted"].betti(field)});
  }
  for (const auto& c : root["checks"].array()) {
    c.expect_object({"name", "status", "detail"});
    const auto status = c["status"].string();
    CheckStatus s = CheckStatus::Pass;
    if (status == "fail") s = CheckStatus::Fail;
    else if (status == "warn") s = CheckStatus::Warn;
    else if (status != "pass") schema_error(c.path() + "/status", "unknown status '" + status + "'");
    report.checks.push_back({c["name"].string(), s, c["detail"].string()});
  }
  return report;
}

std::string format_table(const CohomologyReport& report, bool with_checks) {
  const int length = display_length(report);
  std::string out = report.divisor_name + "\n" + render_table(report_rows(report, length), length);
  if (with_checks) out += render_checks_impl(report.checks);
  return out;
}

std::string format_complex_log_table(const CohomologyReport& report) {
  const auto complex = complex_log_cohomology(report.complement_betti);
  const int length = std::max(1, complex.support_end());
  return report.divisor_name + " (complex log tangent bundle, dimensions over C)\n" +
         render_table({{"H^k(A_D)", complex.padded(length)}}, length);
}

std::string format_csv(const CohomologyReport& report, bool with_checks) {
  const int length = display_length(report);
  std::ostringstream out;
  out << "series";
  for (int k = 0; k < length; ++k) out << ',' << k;
  out << '\n';
  const auto emit = [&](const std::string& name, const BettiVector& b) {
    out << name;
    for (Dim d : b.padded(length)) out << ',' << d;
    out << '\n';
  };
  emit("complement", report.complement_betti);
  for (const auto& r : report.residues) emit("residue_" + std::to_string(r.stratum) + "_shifted", r.shifted);
  emit("algebroid", report.algebroid_betti);
  if (with_checks) {
    out << "\ncheck,status,detail\n";
    for (const auto& c : report.checks)
      out << csv_quote(c.name) << ',' << to_string(c.status) << ',' << csv_quote(c.detail) << '\n';
  }
  return out.str();
}

std::string format_checks(const std::vector<Check>& checks) { return render_checks_impl(checks); }

GysinInput parse_gysin(std::string_view text) {
  const auto doc = parse_text(text);
  const Node root(doc, "");
  root.expect_object({"base_betti", "cup_e_ranks"});
  return {root["base_betti"].betti(FieldTag::Rational), root["cup_e_ranks"].ranks()};
}

SequenceSpec parse_sequence(std::string_view text) {
  const auto doc = parse_text(text);
  const Node root(doc, "");
  root.expect_object({"terms", "ranks"});
  SequenceSpec spec;
  for (const auto& t : root["terms"].array()) {
    if (t.value().is_number_integer()) {
      spec.terms.push_back(SequenceTerm::known(t.natural()));
    } else if (t.value().is_string()) {
      spec.terms.push_back(SequenceTerm::unknown(t.string()));
    } else {
      t.expect_object({}, {"dim", "label"});
      SequenceTerm term;
      if (t.has("label")) term.label = t["label"].string();
      if (t.has("dim") && !t["dim"].value().is_null()) term.dim = t["dim"].natural();
      spec.terms.push_back(term);
    }
  }
  for (const auto& r : root["ranks"].array()) {
    if (r.value().is_null()) spec.map_ranks.push_back(std::nullopt);
    else spec.map_ranks.push_back(r.natural());
  }
  if (spec.terms.size() < 2 || spec.map_ranks.size() + 1 != spec.terms.size())
    schema_error("/ranks", "need one rank entry (or null) per arrow, i.e. terms - 1 entries");
  return spec;
}

std::string format_solution(const SequenceSpec& spec, const SequenceSolution& sol) {
  std::ostringstream out;
  const auto name = [&](std::size_t j) {
    return spec.terms[j].label.empty() ? "T" + std::to_string(j) : spec.terms[j].label;
  };
  const auto value = [](const std::optional<Dim>& v) { return v ? std::to_string(*v) : std::string("free"); };
  const auto mark = [](const std::optional<Dim>& v) { return v ? "  (solved)" : "  (not forced)"; };
  out << "terms:\n";
  for (std::size_t j = 0; j < spec.terms.size(); ++j)
    out << "  " << j << "  " << name(j) << " = " << value(sol.dims[j]) << (spec.terms[j].dim ? "" : mark(sol.dims[j]))
        << '\n';
  out << "ranks:\n";
  for (std::size_t j = 0; j + 1 < spec.terms.size(); ++j)
    out << "  " << name(j) << " -> " << name(j + 1) << " : " << value(sol.ranks[j])
        << (spec.map_ranks[j] ? "" : mark(sol.ranks[j])) << '\n';
  if (!sol.complete()) {
    out << "UNDERDETERMINED:";
    for (const auto& u : sol.free_unknowns) out << ' ' << u;
    out << '\n';
  }
  return out.str();
}

std::string format_verify_local(const local::LocalIsomorphismReport& report) {
  std::vector<std::vector<std::string>> cells = {{"k", "lhs", "rhs", "rank", "injective", "surjective"}};
  for (const auto& d : report.degrees) {
    cells.push_back({std::to_string(d.degree), std::to_string(d.lhs_dim), std::to_string(d.rhs_dim),
                     std::to_string(d.rank), d.injective ? "yes" : "no", d.surjective ? "yes" : "no"});
  }
  std::vector<std::size_t> width(6, 0);
  for (const auto& line : cells)
    for (std::size_t c = 0; c < line.size(); ++c) width[c] = std::max(width[c], line[c].size());
  std::ostringstream out;
  out << "local chart with intersection number " << report.l << '\n';
  for (const auto& line : cells) {
    for (std::size_t c = 0; c < line.size(); ++c) {
      if (c > 0) out << " | ";
      out << std::left << std::setw(static_cast<int>(c + 1 == line.size() ? 0 : width[c])) << line[c];
    }
    out << '\n';
  }
  out << "bijective: " << (report.bijective() ? "yes" : "no") << '\n';
  return out.str();
}

Json verify_local_to_json(const local::LocalIsomorphismReport& report) {
  Json degrees = Json::array();
  for (const auto& d : report.degrees) {
    degrees.push_back({{"k", d.degree},
                       {"lhs", d.lhs_dim},
                       {"rhs", d.rhs_dim},
                       {"rank", d.rank},
                       {"injective", d.injective},
                       {"surjective", d.surjective}});
  }
  return {{"version", std::string(kVersion)},
          {"l", report.l},
          {"lhs_betti", betti_json(report.lhs_betti())},
          {"rhs_betti", betti_json(report.rhs_betti())},
          {"degrees", degrees},
          {"injective", report.injective},
          {"surjective", report.surjective},
          {"bijective", report.bijective()}};
}

}  // namespace ellcoh::io
