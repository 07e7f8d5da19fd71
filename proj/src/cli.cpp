#include "cuntzk/cli.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cuntzk/error.hpp"
#include "cuntzk/hash.hpp"
#include "cuntzk/io.hpp"

namespace cuntzk {

using nlohmann::json;

json RunReport::to_json() const {
  json j;
  j["tool"] = "cuntzk";
  j["version"] = version;
  j["command"] = command;
  j["inputs_fingerprint"] = inputs_fingerprint;
  j["result"] = payload;
  if (!certificate.is_null()) j["certificate"] = certificate;
  return j;
}

namespace {

// A value starting with '{' or '[' is inline JSON; anything else is a path.
json load_json(const std::string& value) {
  const auto first = value.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (value[first] == '{' || value[first] == '['))
    return io::parse(value);
  return io::read_file(value);
}

std::string fingerprint_inputs(const std::string& command, const json& inputs) {
  Fnv1a h;
  h.add(std::string_view(command));
  h.add(std::string_view(inputs.dump()));
  return h.hex();
}

struct GroupArgs {
  std::string group;
  std::string family;
  int n = 0;

  void add_to(CLI::App* app) {
    app->add_option("--group", group, "Group spec: JSON file or inline JSON");
    app->add_option("--family", family, "cyclic, dihedral or symmetric")
        ->check(CLI::IsMember({"cyclic", "dihedral", "symmetric"}));
    app->add_option("--n", n, "Family parameter");
  }

  bool given() const { return !group.empty() || !family.empty(); }

  json spec() const {
    if (!group.empty() && !family.empty())
      throw Error(ErrorCode::ParseError, "--group and --family are exclusive");
    if (!group.empty()) return load_json(group);
    if (family.empty()) throw Error(ErrorCode::ParseError, "a group is required (--group or --family)");
    return json{{"family", family}, {"params", json::array({n})}};
  }
};

std::vector<std::string> labels_of(const FiniteGroup& g, const std::vector<Element>& xs) {
  std::vector<std::string> out;
  for (Element x : xs) out.push_back(g.label(x));
  return out;
}

json rep_multiset_json(const RepRingElement& a) {
  json j = json::object();
  const auto& t = a.ring().table();
  for (std::size_t p = 0; p < a.ring().rank(); ++p)
    if (a[p] != 0) j[t.irrep_label(p)] = io::integer_to_json(a[p]);
  return j;
}

json action_json(const QuasiFreeActionSpec& spec) {
  const auto& g = spec.ring().table().group();
  return json{{"group", io::group_summary(g)},
              {"rep", rep_multiset_json(spec.rep_class)},
              {"n", spec.n},
              {"faithful", spec.faithful},
              {"kernel", labels_of(g, spec.kernel_subgroup)}};
}

// ---- chartable -------------------------------------------------------------

struct ChartableArgs {
  GroupArgs group;
  std::uint64_t seed = kDefaultBurnsideSeed;
  bool matrices = false;
};

RunReport run_chartable(const ChartableArgs& a) {
  const json spec = a.group.spec();
  const FiniteGroup g = io::group_from_json(spec);
  BurnsideOptions opts;
  opts.seed = a.seed;
  const CharacterTable t = character_table(g, opts);

  RunReport r;
  r.command = "chartable";
  r.inputs_fingerprint = fingerprint_inputs(r.command, {{"group", spec}, {"seed", a.seed}});
  r.payload = io::character_table_to_json(t);
  r.payload["burnside_attempts"] = t.burnside_attempts();
  if (a.matrices) {
    json mats = json::array();
    for (std::size_t p = 0; p < t.count(); ++p) {
      try {
        mats.push_back(io::irrep_matrices_to_json(irrep_matrices(t, p)));
      } catch (const Error& e) {
        if (e.code() != ErrorCode::MatricesUnavailable) throw;
        mats.push_back(json{{"irrep", t.irrep_label(p)}, {"available", false}});
      }
    }
    r.payload["matrices"] = mats;
  }
  r.certificate = {{"orthogonality_residuals",
                    {{"row", io::clean(t.residuals().row)},
                     {"column", io::clean(t.residuals().column)}}},
                   {"tolerance", kOrthogonalityTolerance}};
  return r;
}

void text_chartable(const RunReport& r, std::ostream& out) {
  const json& p = r.payload;
  const json& fam = p["group"]["family"];
  out << "group " << (fam.is_null() ? std::string("table") : fam.get<std::string>()) << " of order "
      << p["group"]["order"] << "\n";
  out << "classes:";
  for (const auto& c : p["classes"]) out << ' ' << c["representative_label"].get<std::string>() << '('
                                         << c["size"] << ')';
  out << "\n";
  for (const auto& irrep : p["irreps"]) {
    out << std::setw(6) << irrep["label"].get<std::string>() << " dim " << irrep["dim"] << ":";
    for (const auto& v : irrep["values"]) {
      const double re = v[0], im = v[1];
      out << ' ';
      if (im == 0.0) out << re;
      else out << re << (im < 0 ? "-" : "+") << std::abs(im) << 'i';
    }
    out << "\n";
  }
}

// ---- kgroups ---------------------------------------------------------------

struct KgroupsArgs {
  std::string action;
  GroupArgs group;
  bool fixed_point = false;
  bool quotient = false;
  bool o_infinity = false;
  std::string convention = "appendix";
  std::uint64_t seed = kDefaultBurnsideSeed;
};

json module_maps(const QuasiFreeActionSpec& spec, const KGroupsResult& k) {
  json maps = json::array();
  const auto& ring = spec.ring();
  for (std::size_t p = 0; p < ring.rank(); ++p) {
    const auto m = dual_action_k_map(spec, k, ring.basis(p));
    maps.push_back({{"irrep", ring.table().irrep_label(p)},
                    {"on_k0", io::int_matrix_to_json(m.on_k0)},
                    {"on_k1", io::int_matrix_to_json(m.on_k1)}});
  }
  return maps;
}

RunReport run_kgroups(const KgroupsArgs& a) {
  BurnsideOptions opts;
  opts.seed = a.seed;
  const LabelConvention conv =
      a.convention == "conjugate" ? LabelConvention::Conjugate : LabelConvention::Appendix;

  RunReport r;
  r.command = "kgroups";
  if (a.o_infinity) {
    if (!a.action.empty())
      throw Error(ErrorCode::ParseError, "--o-infinity takes --group or --family, not --action");
    const json spec = a.group.spec();
    const RepRing ring(character_table(io::group_from_json(spec), opts));
    KGroupsResult k = k_groups_o_infinity(ring);
    k.convention = conv;
    r.inputs_fingerprint = fingerprint_inputs(
        r.command, {{"group", spec}, {"o_infinity", true}, {"convention", a.convention}, {"seed", a.seed}});
    r.payload = {{"group", io::group_summary(ring.table().group())},
                 {"k_groups", io::k_groups_to_json(k, ring.table())}};
    return r;
  }

  if (a.action.empty()) throw Error(ErrorCode::ParseError, "--action is required");
  const json input = load_json(a.action);
  r.inputs_fingerprint = fingerprint_inputs(
      r.command, {{"action", input}, {"fixed_point", a.fixed_point}, {"quotient", a.quotient},
                  {"convention", a.convention}, {"seed", a.seed}});
  io::ParsedAction parsed = io::action_from_json(input, opts);
  QuasiFreeActionSpec spec = parsed.spec;

  json quotient_info;
  std::optional<QuotientAction> q;
  if (a.quotient && !spec.faithful) {
    q = quotient_action(spec, opts);
    quotient_info = {{"kernel", labels_of(spec.ring().table().group(), spec.kernel_subgroup)},
                     {"quotient_order", q->quotient.order()},
                     {"action", action_json(q->spec)}};
    spec = q->spec;
  }

  KGroupsResult k = a.fixed_point ? k_groups_fixed_point(spec) : k_groups_crossed_product(spec);
  k.convention = conv;
  const auto& table = spec.ring().table();
  const KteReport kte = kte_check_embedding(k, spec.ring());
  const MultMatrix lambda = lambda_endomorphism_matrix(spec);

  r.payload = {{"action", action_json(spec)},
               {"k_groups", io::k_groups_to_json(k, table)},
               {"module_maps", module_maps(spec, k)},
               {"lambda_endomorphism", io::int_matrix_to_json(lambda.matrix)},
               {"kte", io::kte_report_to_json(kte, table)}};
  if (!quotient_info.is_null()) r.payload["quotient"] = quotient_info;
  r.certificate = io::smith_certificate(k.defining_matrix, smith_normal_form(k.defining_matrix));
  return r;
}

void text_kgroups(const RunReport& r, std::ostream& out) {
  const json& k = r.payload["k_groups"];
  out << "algebra " << k["algebra"].get<std::string>() << "\n";
  out << "K0 = " << k["K0"]["description"].get<std::string>() << "\n";
  const int k1 = k["K1"]["free_rank"];
  out << "K1 = " << (k1 == 0 ? std::string("0") : k1 == 1 ? std::string("Z") : "Z^" + std::to_string(k1))
      << "\n";
  if (r.payload.contains("kte"))
    out << "K-trivial embedding: " << (r.payload["kte"]["k_trivial"].get<bool>() ? "yes" : "no")
        << "\n";
}

// ---- decide-gr -------------------------------------------------------------

struct DecideArgs {
  std::string target;
  std::string source_rep;
  std::string restricted_map;
  std::string k1_class;
  std::uint64_t seed = kDefaultBurnsideSeed;
};

RunReport run_decide_gr(const DecideArgs& a) {
  if (a.k1_class.empty()) throw Error(ErrorCode::ParseError, "--class is required");
  const IntVector cls = io::int_vector_from_json(load_json(a.k1_class));
  RunReport r;
  r.command = "decide-gr";
  GrDecision d;
  if (!a.restricted_map.empty()) {
    if (!a.target.empty() || !a.source_rep.empty())
      throw Error(ErrorCode::ParseError, "--restricted-map excludes --target and --source-rep");
    const json rj = load_json(a.restricted_map);
    r.inputs_fingerprint =
        fingerprint_inputs(r.command, {{"restricted_map", rj}, {"class", load_json(a.k1_class)}});
    d = gr_decide(io::int_matrix_from_json(rj), cls);
  } else {
    if (a.target.empty() || a.source_rep.empty())
      throw Error(ErrorCode::ParseError, "need --target and --source-rep, or --restricted-map");
    BurnsideOptions opts;
    opts.seed = a.seed;
    const json tj = load_json(a.target), sj = load_json(a.source_rep);
    r.inputs_fingerprint = fingerprint_inputs(
        r.command, {{"target", tj}, {"source_rep", sj}, {"class", load_json(a.k1_class)},
                    {"seed", a.seed}});
    const io::ParsedAction target = io::action_from_json(tj, opts);
    const RepRingElement source = class_of(target.ring, io::multiset_from_json(target.ring.table(), sj));
    d = gr_criterion(target.spec, source, cls);
    r.payload["target"] = action_json(target.spec);
    r.payload["source_rep"] = rep_multiset_json(source);
  }
  r.payload["decision"] = io::gr_decision_to_json(d);
  const IntMatrix a_mat = IntMatrix::identity(d.restricted_map.rows()) - d.restricted_map;
  r.certificate = io::smith_certificate(a_mat, smith_normal_form(a_mat));
  return r;
}

void text_decide(const RunReport& r, std::ostream& out) {
  const json& d = r.payload["decision"];
  out << (d["holds"].get<bool>() ? "holds" : "fails");
  if (d.contains("witness") && !d["witness"].is_null()) out << ", witness " << d["witness"].dump();
  else out << ", obstruction in " << d["obstruction_group"].get<std::string>();
  out << "\n";
}

// ---- verify ----------------------------------------------------------------

struct FockArgs {
  int n = 2;
  int depth = 3;
  std::string action = "trivial";
  int order = 3;
};

RunReport run_verify_fock(const FockArgs& a) {
  std::shared_ptr<const FiniteGroup> g;
  std::vector<Eigen::MatrixXcd> u;
  if (a.action == "trivial") {
    g = std::make_shared<const FiniteGroup>(cyclic(1));
    u = {Eigen::MatrixXcd::Identity(a.n, a.n)};
  } else if (a.action == "z2-swap") {
    if (a.n < 2) throw Error(ErrorCode::UnsupportedParameter, "z2-swap needs n >= 2");
    g = std::make_shared<const FiniteGroup>(cyclic(2));
    std::vector<int> id(a.n), sw(a.n);
    for (int i = 0; i < a.n; ++i) id[i] = sw[i] = i;
    std::swap(sw[0], sw[1]);
    u = permutation_unitaries({id, sw});
  } else {
    if (a.order < 1) throw Error(ErrorCode::UnsupportedParameter, "--order must be positive");
    g = std::make_shared<const FiniteGroup>(cyclic(a.order));
    const CharacterTable t = character_table(*g);
    const double step = 2.0 * std::numbers::pi / a.order;
    std::vector<IrrepMatrices> blocks;
    for (int i = 0; i < a.n; ++i) {
      // Coordinate i carries the character sending the generator to zeta^(n-1-i).
      const int e = ((a.n - 1 - i) % a.order + a.order) % a.order;
      const Complex target = std::polar(1.0, step * e);
      std::size_t found = t.count();
      for (std::size_t p = 0; p < t.count(); ++p)
        if (std::abs(t.value(p, a.order > 1 ? 1 : 0) - target) < kIntegralityTolerance) found = p;
      if (found == t.count()) throw Error(ErrorCode::UnknownIrrep, "no character for exponent");
      blocks.push_back(irrep_matrices(t, found));
    }
    std::vector<const IrrepMatrices*> ptrs;
    for (const auto& b : blocks) ptrs.push_back(&b);
    u = direct_sum(ptrs);
  }
  const VerificationReport rep = verify_fock(a.n, a.depth, *g, u);

  RunReport r;
  r.command = "verify fock";
  r.inputs_fingerprint = fingerprint_inputs(
      r.command, {{"n", a.n}, {"depth", a.depth}, {"action", a.action}, {"order", a.order}});
  r.payload = io::verification_to_json(rep);
  r.payload["action"] = a.action;
  r.payload["group_order"] = g->order();
  return r;
}

RunReport run_verify_matrix_units(const GroupArgs& ga, std::uint64_t seed) {
  const json spec = ga.spec();
  BurnsideOptions opts;
  opts.seed = seed;
  const CharacterTable t = character_table(io::group_from_json(spec), opts);
  const MatrixUnitReport rep = verify_matrix_units(t);

  RunReport r;
  r.command = "verify matrix-units";
  r.inputs_fingerprint = fingerprint_inputs(r.command, {{"group", spec}, {"seed", seed}});
  json entries = json::array();
  for (const auto& e : rep.entries)
    entries.push_back({{"irrep", t.irrep_label(e.irrep)},
                       {"dim", e.dim},
                       {"product", io::clean(e.product_deviation)},
                       {"adjoint", io::clean(e.adjoint_deviation)},
                       {"trace", io::clean(e.trace_deviation)},
                       {"central", io::clean(e.central_deviation)}});
  r.payload = {{"group", io::group_summary(t.group())},
               {"irreps", entries},
               {"completeness", io::clean(rep.completeness_deviation)},
               {"expansion", io::clean(rep.expansion.max_deviation)},
               {"relation_tolerance", rep.relation_tolerance},
               {"completeness_tolerance", rep.completeness_tolerance},
               {"passed", rep.passed()}};
  return r;
}

void text_verify(const RunReport& r, std::ostream& out) {
  out << r.command << ": " << (r.payload["passed"].get<bool>() ? "passed" : "FAILED") << "\n";
  if (r.payload.contains("checks"))
    for (const auto& c : r.payload["checks"])
      out << "  " << c["identity"].get<std::string>() << ": " << c["max_deviation"] << " (tol "
          << c["tolerance"] << ")\n";
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"K-theory of quasi-free actions on Cuntz algebras", "cuntzk"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));
  std::string format = "json";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  ChartableArgs ct;
  auto* chartable = app.add_subcommand("chartable", "Character table by Burnside's method");
  ct.group.add_to(chartable);
  chartable->add_option("--seed", ct.seed, "Seed for the random class-sum combination");
  chartable->add_flag("--matrices", ct.matrices, "Include builtin irrep matrices where available");

  KgroupsArgs kg;
  auto* kgroups = app.add_subcommand("kgroups", "K-groups of a crossed product or fixed-point algebra");
  kgroups->add_option("--action", kg.action, "Action spec: JSON file or inline JSON");
  kg.group.add_to(kgroups);
  kgroups->add_flag("--fixed-point", kg.fixed_point, "Report the fixed-point algebra");
  kgroups->add_flag("--quotient", kg.quotient, "Push a non-faithful action down to G/ker");
  kgroups->add_flag("--o-infinity", kg.o_infinity, "Crossed product of O_infinity");
  kgroups->add_option("--convention", kg.convention, "Generator label convention")
      ->check(CLI::IsMember({"appendix", "conjugate"}));
  kgroups->add_option("--seed", kg.seed, "Burnside seed");

  DecideArgs dg;
  auto* decide = app.add_subcommand("decide-gr", "Decide whether a K_1 class lies in image(1 - R)");
  decide->add_option("--target", dg.target, "Target action spec");
  decide->add_option("--source-rep", dg.source_rep, "Source representation multiset");
  decide->add_option("--restricted-map", dg.restricted_map, "R as an integer matrix");
  decide->add_option("--class", dg.k1_class, "K_1 class in the target's K_1 basis");
  decide->add_option("--seed", dg.seed, "Burnside seed");

  auto* verify = app.add_subcommand("verify", "Numerical verification");
  verify->require_subcommand(1);
  verify->fallthrough();
  FockArgs fa;
  auto* fock = verify->add_subcommand("fock", "Toeplitz and covariance identities on a truncated Fock space");
  fock->add_option("--n", fa.n, "Number of generators")->required();
  fock->add_option("--depth", fa.depth, "Truncation depth")->required();
  fock->add_option("--action", fa.action, "Group action")
      ->check(CLI::IsMember({"trivial", "z2-swap", "cyclic-diagonal"}));
  fock->add_option("--order", fa.order, "Order of the cyclic group for cyclic-diagonal");
  GroupArgs mu;
  std::uint64_t mu_seed = kDefaultBurnsideSeed;
  auto* units = verify->add_subcommand("matrix-units", "Matrix-unit relations in the group algebra");
  mu.add_to(units);
  units->add_option("--seed", mu_seed, "Burnside seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "ParseError: " << e.what() << "\n";
    return exit_code(ErrorCode::ParseError);
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    RunReport r;
    void (*text)(const RunReport&, std::ostream&) = nullptr;
    if (chartable->parsed()) {
      r = run_chartable(ct);
      text = text_chartable;
    } else if (kgroups->parsed()) {
      r = run_kgroups(kg);
      text = text_kgroups;
    } else if (decide->parsed()) {
      r = run_decide_gr(dg);
      text = text_decide;
    } else if (fock->parsed()) {
      r = run_verify_fock(fa);
      text = text_verify;
    } else {
      r = run_verify_matrix_units(mu, mu_seed);
      text = text_verify;
    }
    r.wall_time = std::chrono::steady_clock::now() - start;
    if (format == "text") {
      text(r, out);
    } else {
      out << r.to_json().dump(2) << "\n";
      text(r, err);
    }
    err << r.command << " finished in " << std::fixed << std::setprecision(3)
        << r.wall_time.count() << " s\n";
    if (r.payload.contains("passed") && !r.payload["passed"].get<bool>())
      return exit_code(ErrorCode::ValidationFailed);
    return 0;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.code());
  } catch (const nlohmann::json::exception& e) {
    err << "ParseError: " << e.what() << "\n";
    return exit_code(ErrorCode::ParseError);
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 5;
  }
}

}  // namespace cuntzk
