#include "cuntzk/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cuntzk/error.hpp"

namespace cuntzk::io {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing member '") + key + "'");
  return j.at(key);
}

long long as_int(const json& j, const std::string& what) {
  if (!j.is_number_integer()) parse_error(what + " must be an integer");
  return j.get<long long>();
}

}  // namespace

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(e.what());
  }
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) parse_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

double clean(double x) {
  const double r = std::round(x * 1e12) / 1e12;
  return r == 0.0 ? 0.0 : r;
}

json complex_to_json(Complex z) { return json::array({clean(z.real()), clean(z.imag())}); }

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    parse_error("complex numbers are [re, im] pairs");
  return {j[0].get<double>(), j[1].get<double>()};
}

FamilySpec family_from_json(const json& j) {
  const json& fam = member(j, "family");
  if (!fam.is_string()) parse_error("'family' must be a string");
  const std::string name = fam.get<std::string>();
  const json& params = member(j, "params");
  if (!params.is_array()) parse_error("'params' must be an array");
  FamilySpec f;
  if (name == "direct_product") {
    if (params.size() != 2) parse_error("direct_product takes two group specs");
    f.kind = FamilySpec::Kind::DirectProduct;
    f.n = 0;
    f.factors = {family_from_json(params[0]), family_from_json(params[1])};
    return f;
  }
  if (params.size() != 1) parse_error(name + " takes one parameter");
  if (name == "cyclic") f.kind = FamilySpec::Kind::Cyclic;
  else if (name == "dihedral") f.kind = FamilySpec::Kind::Dihedral;
  else if (name == "symmetric") f.kind = FamilySpec::Kind::Symmetric;
  else throw Error(ErrorCode::UnsupportedParameter, "unknown family '" + name + "'");
  const long long n = as_int(params[0], name + " parameter");
  if (n < 1 || n > 720) throw Error(ErrorCode::UnsupportedParameter, name + " parameter out of range");
  f.n = static_cast<int>(n);
  return f;
}

json family_to_json(const FamilySpec& f) {
  switch (f.kind) {
    case FamilySpec::Kind::Cyclic: return {{"family", "cyclic"}, {"params", {f.n}}};
    case FamilySpec::Kind::Dihedral: return {{"family", "dihedral"}, {"params", {f.n}}};
    case FamilySpec::Kind::Symmetric: return {{"family", "symmetric"}, {"params", {f.n}}};
    case FamilySpec::Kind::DirectProduct:
      return {{"family", "direct_product"},
              {"params", json::array({family_to_json(f.factors.at(0)),
                                      family_to_json(f.factors.at(1))})}};
  }
  return {};
}

FiniteGroup group_from_json(const json& j) {
  if (!j.is_object()) parse_error("group spec must be an object");
  if (j.contains("family")) return builtin_group(family_from_json(j));
  const json& t = member(j, "table");
  if (!t.is_array()) parse_error("'table' must be an array of rows");
  std::vector<std::vector<long long>> table;
  for (const auto& row : t) {
    if (!row.is_array()) parse_error("table rows must be arrays");
    std::vector<long long> r;
    for (const auto& v : row) r.push_back(as_int(v, "table entry"));
    table.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) parse_error("'labels' must be an array");
    for (const auto& l : j["labels"]) {
      if (!l.is_string()) parse_error("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  return group_from_table(table, std::move(labels));
}

json group_to_json(const FiniteGroup& g) {
  if (g.family()) return family_to_json(*g.family());
  json t = json::array();
  for (Element a = 0; a < g.order(); ++a) {
    json row = json::array();
    for (Element b = 0; b < g.order(); ++b) row.push_back(g.mul(a, b));
    t.push_back(std::move(row));
  }
  json j{{"table", std::move(t)}};
  if (!g.labels().empty()) j["labels"] = g.labels();
  return j;
}

json group_summary(const FiniteGroup& g) {
  json j{{"order", g.order()}, {"abelian", g.is_abelian()}};
  j["family"] = g.family() ? json(g.family()->name()) : json(nullptr);
  return j;
}

json classes_to_json(const FiniteGroup& g, const ConjugacyData& c) {
  json out = json::array();
  for (std::size_t k = 0; k < c.count(); ++k)
    out.push_back({{"index", k},
                   {"representative", c.reps[k]},
                   {"representative_label", g.label(c.reps[k])},
                   {"size", c.sizes[k]},
                   {"element_order", c.rep_orders[k]}});
  return out;
}

json character_table_to_json(const CharacterTable& t) {
  json irreps = json::array();
  for (std::size_t p = 0; p < t.count(); ++p) {
    json vals = json::array();
    for (const Complex& v : t.values(p)) vals.push_back(complex_to_json(v));
    irreps.push_back({{"index", p},
                      {"label", t.irrep_label(p)},
                      {"dim", t.dim(p)},
                      {"conjugate", t.conjugate(p)},
                      {"values", std::move(vals)}});
  }
  return {{"fingerprint", t.fingerprint()},
          {"group", group_summary(t.group())},
          {"classes", classes_to_json(t.group(), t.classes())},
          {"irreps", std::move(irreps)},
          {"residuals",
           {{"row_orthogonality", clean(t.residuals().row)},
            {"column_orthogonality", clean(t.residuals().column)}}}};
}

CharacterTable character_table_from_json(const FiniteGroup& g, const json& j) {
  const json& irreps = member(j, "irreps");
  if (!irreps.is_array()) parse_error("'irreps' must be an array");
  std::vector<std::vector<Complex>> rows;
  for (const auto& ir : irreps) {
    const json& vals = member(ir, "values");
    if (!vals.is_array()) parse_error("'values' must be an array");
    std::vector<Complex> row;
    for (const auto& v : vals) row.push_back(complex_from_json(v));
    rows.push_back(std::move(row));
  }
  CharacterTable t = character_table_from_values(g, rows);
  if (j.contains("fingerprint") && j["fingerprint"] != t.fingerprint())
    throw Error(ErrorCode::TableMismatch, "character table fingerprint differs");
  return t;
}

json irrep_matrices_to_json(const IrrepMatrices& m) {
  json mats = json::array();
  for (const auto& a : m.matrices()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      json row = json::array();
      for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(complex_to_json(a(i, k)));
      rows.push_back(std::move(row));
    }
    mats.push_back(std::move(rows));
  }
  return {{"irrep", m.irrep()}, {"dim", m.dim()}, {"matrices", std::move(mats)}};
}

IrrepMatrices irrep_matrices_from_json(const CharacterTable& t, const json& j) {
  const long long irrep = as_int(member(j, "irrep"), "'irrep'");
  if (irrep < 0) throw Error(ErrorCode::UnknownIrrep, std::to_string(irrep));
  const json& mats = member(j, "matrices");
  if (!mats.is_array()) parse_error("'matrices' must be an array");
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& m : mats) {
    if (!m.is_array() || m.empty()) parse_error("each matrix must be a nonempty array of rows");
    const auto n = static_cast<Eigen::Index>(m.size());
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!m[i].is_array() || static_cast<Eigen::Index>(m[i].size()) != n)
        parse_error("matrices must be square");
      for (Eigen::Index k = 0; k < n; ++k) a(i, k) = complex_from_json(m[i][k]);
    }
    out.push_back(std::move(a));
  }
  return irrep_matrices(t, static_cast<std::size_t>(irrep), std::move(out));
}

Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    const std::size_t start = (!s.empty() && s[0] == '-') ? 1 : 0;
    if (s.size() == start || s.find_first_not_of("0123456789", start) != std::string::npos)
      parse_error("'" + s + "' is not an integer");
    return Integer(s);
  }
  parse_error("expected an integer");
}

json integer_to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return x.convert_to<long long>();
  return x.str();
}

IntVector int_vector_from_json(const json& j) {
  if (!j.is_array()) parse_error("expected an array of integers");
  IntVector v;
  for (const auto& x : j) v.push_back(integer_from_json(x));
  return v;
}

json int_vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

IntMatrix int_matrix_from_json(const json& j) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  std::vector<IntVector> rows;
  for (const auto& r : j) rows.push_back(int_vector_from_json(r));
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) parse_error("matrix rows have different lengths");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = rows[i][k];
  }
  return m;
}

json int_matrix_to_json(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(int_vector_to_json(m.row(i)));
  return a;
}

json rep_element_to_json(const RepRingElement& a) {
  return {{"fingerprint", a.ring().fingerprint()}, {"coeffs", int_vector_to_json(a.coeffs())}};
}

RepRingElement rep_element_from_json(const RepRing& ring, const json& j) {
  const json& fp = member(j, "fingerprint");
  if (!fp.is_string() || fp.get<std::string>() != ring.fingerprint())
    throw Error(ErrorCode::TableMismatch, "element fingerprint " + fp.dump() +
                                              " does not match table " + ring.fingerprint());
  IntVector c = int_vector_from_json(member(j, "coeffs"));
  if (c.size() != ring.rank())
    throw Error(ErrorCode::DimensionMismatch, "coefficient count differs from ring rank");
  return RepRingElement(ring, std::move(c));
}

std::map<std::size_t, long long> multiset_from_json(const CharacterTable& t, const json& j) {
  if (!j.is_object()) parse_error("'rep' must be an object mapping irreps to multiplicities");
  std::map<std::size_t, long long> m;
  for (const auto& [key, value] : j.items()) m[t.irrep_index(key)] += as_int(value, "multiplicity");
  return m;
}

ParsedAction action_from_json(const json& j, BurnsideOptions options) {
  FiniteGroup g = group_from_json(member(j, "group"));
  RepRing ring(character_table(g, options));
  auto multiset = multiset_from_json(ring.table(), member(j, "rep"));
  QuasiFreeActionSpec spec = action_spec(ring, multiset);
  return {std::move(ring), std::move(spec)};
}

json fg_group_to_json(const FgAbelianGroup& g) {
  return {{"description", g.describe()},
          {"free_rank", g.free_rank()},
          {"torsion", int_vector_to_json(g.torsion())},
          {"moduli", int_vector_to_json(g.moduli())}};
}

json smith_certificate(const IntMatrix& m, const SmithDecomposition& s) {
  return {{"matrix", int_matrix_to_json(m)},
          {"U", int_matrix_to_json(s.U)},
          {"D", int_matrix_to_json(s.D)},
          {"V", int_matrix_to_json(s.V)},
          {"rank", s.rank}};
}

json k_groups_to_json(const KGroupsResult& k, const CharacterTable& t) {
  json gens = json::array();
  for (const auto& g : k.generators)
    gens.push_back({{"irrep", t.irrep_label(g.irrep)},
                    {"appendix_label", g.appendix_label},
                    {"conjugate_label", g.conjugate_label},
                    {"k0_coords", int_vector_to_json(g.k0_coords)}});
  json k1 = json::array();
  for (const auto& b : k.k1_basis) k1.push_back(int_vector_to_json(b));
  return {{"algebra", algebra_name(k.algebra)},
          {"K0", fg_group_to_json(k.k0)},
          {"K1", {{"free_rank", k.k1_rank()}, {"basis", std::move(k1)}}},
          {"defining_matrix", int_matrix_to_json(k.defining_matrix)},
          {"label_convention", convention_name(k.convention)},
          {"generators", std::move(gens)}};
}

json gr_decision_to_json(const GrDecision& d) {
  json j{{"holds", d.holds},
         {"restricted_map", int_matrix_to_json(d.restricted_map)},
         {"obstruction_group", d.obstruction_group}};
  j["witness"] = d.witness ? int_vector_to_json(*d.witness) : json(nullptr);
  j["refutation"] = d.holds ? json(nullptr) : int_vector_to_json(d.refutation);
  return j;
}

json kte_report_to_json(const KteReport& r, const CharacterTable& t) {
  json entries = json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"irrep", t.irrep_label(e.irrep)},
                       {"e11_class", int_vector_to_json(e.coords)},
                       {"e11_zero", e.zero},
                       {"z_class", int_vector_to_json(e.z_coords)},
                       {"z_zero", e.z_zero}});
  json j{{"k_trivial", r.k_trivial}, {"torsion_free", r.torsion_free}, {"entries", entries}};
  j["z_variant_trivial"] = r.torsion_free ? json(r.z_variant_trivial) : json(nullptr);
  return j;
}

json verification_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"identity", c.name},
                      {"max_deviation", c.max_deviation},
                      {"tolerance", c.tolerance},
                      {"passed", c.passed}});
  return {{"n", r.n}, {"depth", r.depth}, {"dim", r.dim}, {"passed", r.passed()},
          {"checks", std::move(checks)}};
}

}  // namespace cuntzk::io
