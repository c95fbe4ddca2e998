#include "latpoly/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace latpoly {

namespace {

using nlohmann::json;

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("invalid JSON: ") + e.what());
  }
}

const json& require_field(const json& j, const char* field) {
  auto it = j.find(field);
  if (it == j.end()) {
    throw std::invalid_argument(std::string("missing field \"") + field + "\"");
  }
  return *it;
}

int require_int(const json& j, const char* what) {
  if (!j.is_number_integer()) {
    throw std::invalid_argument(std::string(what) + " must be an integer");
  }
  return j.get<int>();
}

std::vector<std::vector<ElemId>> require_table(const json& j, const char* what) {
  if (!j.is_array()) {
    throw std::invalid_argument(std::string(what) + " must be an array of rows");
  }
  std::vector<std::vector<ElemId>> rows;
  rows.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) {
      throw std::invalid_argument(std::string(what) + " rows must be arrays");
    }
    std::vector<ElemId> out;
    out.reserve(row.size());
    for (const auto& v : row) out.push_back(require_int(v, what));
    rows.push_back(std::move(out));
  }
  return rows;
}

LatticePtr parse_lattice(const json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("lattice descriptor must be an object");
  }
  const json& type = require_field(j, "type");
  if (!type.is_string()) {
    throw std::invalid_argument("lattice \"type\" must be a string");
  }
  const std::string kind = type.get<std::string>();
  if (kind == "chain") {
    return BoundedLattice::chain(require_int(require_field(j, "size"), "size"));
  }
  if (kind == "product") {
    const json& factors = require_field(j, "factors");
    if (!factors.is_array()) {
      throw std::invalid_argument("product \"factors\" must be an array");
    }
    std::vector<int> out;
    out.reserve(factors.size());
    for (const auto& f : factors) out.push_back(require_int(f, "factor"));
    return BoundedLattice::product(std::move(out));
  }
  if (kind == "table") {
    return BoundedLattice::from_tables(
        require_int(require_field(j, "size"), "size"),
        require_table(require_field(j, "meet"), "meet"),
        require_table(require_field(j, "join"), "join"));
  }
  throw std::invalid_argument("unknown lattice type \"" + kind + "\"");
}

json lattice_to_json(const BoundedLattice& lattice) {
  json j;
  switch (lattice.kind()) {
    case LatticeKind::Chain:
      j["type"] = "chain";
      j["size"] = lattice.size();
      break;
    case LatticeKind::Product:
      j["type"] = "product";
      j["factors"] = lattice.factors();
      break;
    case LatticeKind::Table: {
      j["type"] = "table";
      j["size"] = lattice.size();
      json meet = json::array(), join = json::array();
      for (ElemId a = 0; a < lattice.size(); ++a) {
        json mrow = json::array(), jrow = json::array();
        for (ElemId b = 0; b < lattice.size(); ++b) {
          mrow.push_back(lattice.meet(a, b));
          jrow.push_back(lattice.join(a, b));
        }
        meet.push_back(std::move(mrow));
        join.push_back(std::move(jrow));
      }
      j["meet"] = std::move(meet);
      j["join"] = std::move(join);
      break;
    }
  }
  return j;
}

std::string bool_token(bool b) { return b ? "true" : "false"; }

std::string join_ids(const std::vector<ElemId>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(ids[i]);
  }
  return out;
}

const char* class_token(VerdictClass cls) {
  switch (cls) {
    case VerdictClass::WeightedDisjunction:
      return "weighted_disjunction";
    case VerdictClass::ChainForm:
      return "chain_form";
    case VerdictClass::NotChainStructured:
      return "not_chain_structured";
  }
  return "?";
}

}  // namespace

LatticePtr parse_lattice_text(const std::string& json_text) {
  return parse_lattice(parse_json(json_text));
}

std::string lattice_to_json_text(const BoundedLattice& lattice) {
  return lattice_to_json(lattice).dump(1);
}

std::string subset_key(Subset set) {
  std::string out;
  bool first = true;
  for (int var = 1; set != 0; ++var, set >>= 1) {
    if (set & 1u) {
      if (!first) out += ",";
      out += std::to_string(var);
      first = false;
    }
  }
  return out;
}

Subset parse_subset_key(const std::string& key, int arity) {
  if (key.empty()) return 0;
  Subset out = 0;
  int previous = 0;
  std::stringstream stream(key);
  std::string token;
  while (std::getline(stream, token, ',')) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
      throw std::invalid_argument("bad coefficient key \"" + key +
                                  "\": indices must be positive integers");
    }
    const int var = std::stoi(token);
    if (var <= previous) {
      throw std::invalid_argument("bad coefficient key \"" + key +
                                  "\": indices must be strictly increasing");
    }
    if (var > arity) {
      throw std::invalid_argument("bad coefficient key \"" + key +
                                  "\": index exceeds the arity");
    }
    out |= subset_bit(var);
    previous = var;
  }
  if (key.back() == ',') {
    throw std::invalid_argument("bad coefficient key \"" + key + "\"");
  }
  return out;
}

DnfPolynomial parse_polynomial_text(const std::string& json_text) {
  const json j = parse_json(json_text);
  if (!j.is_object()) {
    throw std::invalid_argument("polynomial file must be a JSON object");
  }
  LatticePtr lattice = parse_lattice(require_field(j, "lattice"));
  const int arity = require_int(require_field(j, "arity"), "arity");
  if (arity < 1 || arity > kMaxArity) {
    throw std::invalid_argument("arity must be in 1..16");
  }
  const json& coeffs = require_field(j, "coefficients");
  if (!coeffs.is_object()) {
    throw std::invalid_argument("\"coefficients\" must be an object");
  }
  std::vector<ElemId> values(std::size_t{1} << arity, lattice->bottom());
  for (const auto& [key, value] : coeffs.items()) {
    const Subset set = parse_subset_key(key, arity);
    ElemId id;
    if (value.is_array()) {
      if (lattice->kind() != LatticeKind::Product) {
        throw std::invalid_argument(
            "coordinate tuples are only valid over product lattices");
      }
      std::vector<int> coords;
      coords.reserve(value.size());
      for (const auto& c : value) coords.push_back(require_int(c, "coordinate"));
      id = lattice->element_at(coords);
    } else {
      id = require_int(value, "coefficient");
      lattice->check_element(id);
    }
    values[set] = id;
  }
  return DnfPolynomial(std::move(lattice), arity, std::move(values));
}

DnfPolynomial load_polynomial_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_polynomial_text(buffer.str());
}

LatticePtr load_lattice_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_lattice_text(buffer.str());
}

std::string polynomial_to_json_text(const DnfPolynomial& p) {
  json coeffs = json::object();
  const ElemId bottom = p.lattice().bottom();
  const Subset count = Subset{1} << p.arity();
  for (Subset set = 0; set < count; ++set) {
    if (p.coefficient(set) != bottom) {
      coeffs[subset_key(set)] = p.coefficient(set);
    }
  }
  json j;
  j["lattice"] = lattice_to_json(p.lattice());
  j["arity"] = p.arity();
  j["coefficients"] = std::move(coeffs);
  return j.dump(1);
}

std::string render_classification(const Classification& cls,
                                  OutputFormat format) {
  std::string out;
  if (const auto* wd = std::get_if<WeightedDisjunction>(&cls)) {
    if (format == OutputFormat::Machine) {
      return "class=weighted_disjunction a_empty=" +
             std::to_string(wd->empty_coefficient) + " unary=" +
             join_ids(wd->unary);
    }
    out = "WeightedDisjunction: a_{}=" + std::to_string(wd->empty_coefficient);
    for (std::size_t i = 0; i < wd->unary.size(); ++i) {
      out += (i == 0 ? "; " : ", ");
      out += "a_" + std::to_string(i + 1) + "=" + std::to_string(wd->unary[i]);
    }
    return out;
  }
  if (const auto* cf = std::get_if<ChainForm>(&cls)) {
    if (format == OutputFormat::Machine) {
      out = "class=chain_form a_empty=" + std::to_string(cf->empty_coefficient) +
            " unary=" + join_ids(cf->unary) + " chain=";
      for (std::size_t i = 0; i < cf->chain.size(); ++i) {
        if (i > 0) out += ";";
        out += subset_to_string(cf->chain[i].subset) + ":" +
               std::to_string(cf->chain[i].coefficient);
      }
      return out;
    }
    out = "ChainForm: ";
    for (std::size_t i = 0; i < cf->chain.size(); ++i) {
      if (i > 0) out += ", ";
      out += "S_" + std::to_string(i + 1) + "=" +
             subset_to_string(cf->chain[i].subset) + " (a=" +
             std::to_string(cf->chain[i].coefficient) + ")";
    }
    out += "; a_{}=" + std::to_string(cf->empty_coefficient);
    for (std::size_t i = 0; i < cf->unary.size(); ++i) {
      out += ", a_" + std::to_string(i + 1) + "=" + std::to_string(cf->unary[i]);
    }
    return out;
  }
  const auto& ncs = std::get<NotChainStructured>(cls);
  if (ncs.reason == NotChainStructured::Reason::IncomparableEssentialTerms) {
    if (format == OutputFormat::Machine) {
      return "class=not_chain_structured reason=incomparable_essential_terms "
             "first=" +
             subset_to_string(ncs.first) + " second=" +
             subset_to_string(ncs.second);
    }
    return "NotChainStructured: incomparable essential terms " +
           subset_to_string(ncs.first) + ", " + subset_to_string(ncs.second);
  }
  if (format == OutputFormat::Machine) {
    return "class=not_chain_structured reason=undominated_variable variable=" +
           std::to_string(ncs.variable) + " s1=" + subset_to_string(ncs.s1);
  }
  return "NotChainStructured: variable " + std::to_string(ncs.variable) +
         " outside S_1=" + subset_to_string(ncs.s1) + " with a_" +
         std::to_string(ncs.variable) + " above every a_j in S_1";
}

std::string render_matrix(const std::vector<ElemId>& entries, int rows,
                          int cols) {
  if (entries.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("matrix shape mismatch");
  }
  std::string out = "[";
  for (int i = 0; i < rows; ++i) {
    if (i > 0) out += ",";
    out += "[";
    for (int j = 0; j < cols; ++j) {
      if (j > 0) out += ",";
      out += std::to_string(entries[static_cast<std::size_t>(i) * cols + j]);
    }
    out += "]";
  }
  return out + "]";
}

std::string render_witness_line(const CommutationWitness& witness) {
  return "witness " + render_matrix(witness.entries, witness.rows, witness.cols) +
         " row_first=" + std::to_string(witness.row_first) +
         " column_first=" + std::to_string(witness.column_first);
}

namespace {

std::string poly_line(const PolyVerdict& v, const char* fast_key) {
  return std::string("poly coeffs=") + join_ids(v.coefficients) +
         " class=" + class_token(v.classification) + " " + fast_key + "=" +
         bool_token(v.fast) + " oracle=" + bool_token(v.oracle);
}

std::string elapsed_line(double seconds) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "elapsed: %.3fs", seconds);
  return buffer;
}

}  // namespace

std::string render_verification_report(const VerificationReport& report,
                                       OutputFormat format) {
  std::string summary = "checked=" + std::to_string(report.checked) +
                        " selfcommuting=" +
                        std::to_string(report.self_commuting_oracle) +
                        " mismatches=" + std::to_string(report.mismatches.size());
  std::string out;
  if (format == OutputFormat::Machine) {
    out = "verify lattice=" + report.lattice_description +
          " arity=" + std::to_string(report.arity) + "\n";
    for (const PolyVerdict& v : report.verdicts) {
      out += poly_line(v, "fast") + "\n";
    }
    for (const MismatchRecord& m : report.mismatches) {
      out += "mismatch coeffs=" + join_ids(m.verdict.coefficients) +
             " fast=" + bool_token(m.verdict.fast) +
             " oracle=" + bool_token(m.verdict.oracle) + "\n";
      if (m.witness) out += render_witness_line(*m.witness) + "\n";
    }
    return out + summary + "\n";
  }
  out = "lattice: " + report.lattice_description + "\n" +
        "arity: " + std::to_string(report.arity) + "\n";
  for (const MismatchRecord& m : report.mismatches) {
    out += "mismatch coeffs=" + join_ids(m.verdict.coefficients) +
           " fast=" + bool_token(m.verdict.fast) +
           " oracle=" + bool_token(m.verdict.oracle) + "\n";
    if (m.witness) out += render_witness_line(*m.witness) + "\n";
  }
  return out + summary + "\n" + elapsed_line(report.elapsed_seconds) + "\n";
}

std::string render_search_report(const SearchReport& report,
                                 OutputFormat format) {
  std::string summary =
      "checked=" + std::to_string(report.checked) +
      " wdchain=" + std::to_string(report.wd_or_chain) +
      " sufficiency_confirmed=" + std::to_string(report.sufficiency_confirmed) +
      " candidates=" + std::to_string(report.candidates.size()) +
      " violations=" + std::to_string(report.sufficiency_violations.size());
  std::string body;
  for (const SearchCandidate& c : report.candidates) {
    body += "candidate coeffs=" + join_ids(c.coefficients) + " " +
            render_classification(c.classification, OutputFormat::Machine) + "\n";
  }
  for (const MismatchRecord& m : report.sufficiency_violations) {
    body += "violation coeffs=" + join_ids(m.verdict.coefficients) + "\n";
    if (m.witness) body += render_witness_line(*m.witness) + "\n";
  }
  if (format == OutputFormat::Machine) {
    std::string out = "search lattice=" + report.lattice_description +
                      " arity=" + std::to_string(report.arity) + "\n";
    for (const PolyVerdict& v : report.verdicts) {
      out += poly_line(v, "structural") + "\n";
    }
    return out + body + summary + "\n";
  }
  std::string out = "lattice: " + report.lattice_description + "\n" +
                    "arity: " + std::to_string(report.arity) + "\n" + body;
  if (report.candidates.empty()) out += "no candidates\n";
  return out + summary + "\n" + elapsed_line(report.elapsed_seconds) + "\n";
}

}  // namespace latpoly
