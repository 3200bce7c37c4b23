// Command-line front end. Reports go to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>

#include "rdp/catalog/verify.hpp"
#include "rdp/lattice/decide.hpp"
#include "rdp/surface.hpp"
#include "rdp/weierstrass/parse.hpp"

using namespace rdp;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kBadInput = 2;

struct Options {
  bool json = false;
  std::uint64_t p = 0;
  unsigned degree = 1;
  std::string eq, poly, config, type;
  bool all = false;
  std::optional<int> table;
  std::optional<std::uint64_t> filter_p;
  std::string catalog_file;
};

auto field_name(const Field &F) -> std::string {
  return F.degree() == 1 ? "GF(" + std::to_string(F.characteristic()) + ")"
                         : "GF(" + std::to_string(F.characteristic()) + "^" + std::to_string(F.degree()) + ")";
}

auto yes_no(bool b) -> const char * { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------

auto classify(const Options &o) -> int {
  const Field &F = Field::get(o.p, o.degree);
  const WeierstrassEq e = parse_equation(o.eq, F);
  const SurfaceReport R = analyze_surface(e);

  Json j;
  j["command"] = "classify";
  j["characteristic"] = o.p;
  j["field"] = field_name(F);
  j["equation"] = e.to_string();
  j["kind"] = kind_name(R.kind);
  j["delta"] = R.invariants.delta.to_string();
  j["j"] = R.invariants.j_string();
  if (R.fibers) {
    Json fibers = Json::array();
    for (auto &f : R.fibers->fibers) {
      Json x;
      x["place"] = f.place.name();
      x["degree"] = f.place.degree;
      x["kodaira"] = f.type.to_string();
      x["v_delta"] = f.v_delta;
      x["components"] = f.components;
      x["rdp"] = f.type.rdp() ? Json(f.type.rdp()->name()) : Json(nullptr);
      fibers.push_back(x);
    }
    j["fibers"] = fibers;
    j["total_v_delta"] = R.fibers->total_v_delta;
    j["mw_rank"] = R.fibers->mw_rank;
  } else {
    j["fibers"] = nullptr;
  }
  Json pts = Json::array();
  for (std::size_t i = 0; i < R.singular.points.size(); ++i) {
    const auto &sp = R.singular.points[i];
    const auto &v = R.singular.verdicts[i];
    Json x;
    x["location"] = sp.describe();
    x["orbit"] = sp.orbit();
    x["residue_degree"] = sp.residue_degree;
    x["type"] = rdp_name(v.cls, o.p);
    x["tjurina"] = v.m;
    x["resolution"] = v.tree.shape();
    x["fiber"] = R.fiber_of_point[i] ? Json(R.fibers->fibers[*R.fiber_of_point[i]].place.name()) : Json(nullptr);
    pts.push_back(x);
  }
  j["singular_points"] = pts;
  j["configuration"] = R.singular.configuration.to_string();

  if (o.json) {
    std::cout << j.dump(2) << "\n";
    return kOk;
  }
  std::cout << "equation: " << j["equation"].get<std::string>() << "\n"
            << "field: " << j["field"].get<std::string>() << "\n"
            << "kind: " << j["kind"].get<std::string>() << "\n"
            << "delta: " << j["delta"].get<std::string>() << "\n"
            << "j: " << j["j"].get<std::string>() << "\n";
  if (R.fibers) {
    std::cout << "fibers (sum of v(delta) = " << R.fibers->total_v_delta << "):\n";
    for (auto &f : j["fibers"]) {
      std::cout << "  " << f["place"].get<std::string>() << "  " << f["kodaira"].get<std::string>()
                << "  v(delta) = " << f["v_delta"].get<int>();
      if (!f["rdp"].is_null()) std::cout << "  " << f["rdp"].get<std::string>();
      std::cout << "\n";
    }
  }
  std::cout << "singular points:" << (pts.empty() ? " none" : "") << "\n";
  for (auto &x : pts)
    std::cout << "  " << x["location"].get<std::string>() << "  " << x["type"].get<std::string>()
              << "  m = " << x["tjurina"].get<unsigned>() << "  orbit " << x["orbit"].get<unsigned>() << "\n";
  std::cout << "configuration: " << j["configuration"].get<std::string>() << "\n";
  return kOk;
}

auto check_config(const Options &o) -> int {
  const RdpConfiguration c = RdpConfiguration::parse(o.config, o.p);
  c.validate();
  const CatalogMembership M = load_catalog().membership(o.p);
  const Occurrence occ = decide_occurrence(c, &M);
  const ConditionFlags f = check_conditions(c.lattice(), o.p);

  std::string verdict = occ.occurs ? "yes" : "no";
  if (occ.degree1_witness == Witness::OnlyDegree2) verdict += " (degree 2 only)";
  if (o.json) {
    Json j;
    j["command"] = "check-config";
    j["characteristic"] = o.p;
    j["configuration"] = c.to_string();
    j["occurs"] = occ.occurs;
    j["degree1"] = witness_name(occ.degree1_witness);
    j["rationale"] = occ.rationale;
    j["conditions"] = {{"E8", f.e8}, {"E8+T[l=2]", f.t_ell2}, {"E8+T[p]", f.t_p}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "occurs: " << verdict << "\n"
              << "configuration: " << c.to_string() << "\n"
              << "rationale: " << occ.rationale << "\n";
  }
  return kOk;
}

auto class_json(const SubsystemClass &c) -> Json {
  Json x;
  x["type"] = c.type.to_string();
  Json basis = Json::array();
  for (auto &v : c.basis) basis.push_back(v);
  x["basis"] = basis;
  x["free_rank"] = c.quotient.free_rank;
  x["invariant_factors"] = c.quotient.torsion;
  x["quotient"] = c.quotient.to_string();
  Json flags;
  for (auto l : kFlagPrimes) flags["E8+T[l=" + std::to_string(l) + "]"] = c.flag_T_ell(l);
  for (auto p : kFlagPrimes) flags["E8+T[p=" + std::to_string(p) + "]"] = c.flag_T_p(p);
  x["conditions"] = flags;
  return x;
}

void print_class(const Json &x) {
  std::cout << "type " << x["type"].get<std::string>() << "\n  quotient: " << x["quotient"].get<std::string>()
            << "\n  basis:";
  for (auto &v : x["basis"]) {
    std::cout << " (";
    for (std::size_t i = 0; i < v.size(); ++i) std::cout << (i ? "," : "") << v[i].get<int>();
    std::cout << ")";
  }
  std::cout << "\n  conditions:";
  for (auto &[k, b] : x["conditions"].items()) std::cout << " " << k << "=" << yes_no(b.get<bool>());
  std::cout << "\n";
}

auto lattice(const Options &o) -> int {
  std::vector<SubsystemClass> classes;
  Json j;
  j["command"] = "lattice";
  if (o.all) {
    classes = subsystem_table();
  } else {
    const AdeType t = AdeType::parse(o.type);
    classes = classes_of_type(t);
    j["type"] = t.to_string();
    j["rank"] = t.rank();
    j["determinant"] = t.determinant();
    j["embeds"] = !classes.empty();
  }
  Json arr = Json::array();
  for (auto &c : classes) arr.push_back(class_json(c));
  j["classes"] = arr;
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    if (!o.all && classes.empty()) std::cout << "type " << j["type"].get<std::string>() << ": no embedding into E8\n";
    for (auto &x : arr) print_class(x);
  }
  return kOk;
}

auto tjurina(const Options &o) -> int {
  const Field &F = Field::get(o.p, o.degree);
  const MPoly f = parse_local_polynomial(o.poly, F);
  const TjurinaResult r = tjurina_dimension(f);
  if (o.json) {
    Json j;
    j["command"] = "tjurina";
    j["characteristic"] = o.p;
    j["field"] = field_name(F);
    j["polynomial"] = f.to_string({"x", "y", "z"});
    j["tjurina"] = r.m;
    j["truncation"] = r.truncation;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "tjurina: " << r.m << "\n";
  }
  return kOk;
}

auto instance_json(const InstanceResult &i) -> Json {
  Json x;
  x["sub_row"] = i.sub_label;
  x["field"] = i.field;
  x["assignment"] = i.assignment;
  x["equation"] = i.equation;
  x["delta"] = i.delta;
  x["expected_delta"] = i.expected_delta;
  x["j"] = i.j;
  x["expected_j"] = i.expected_j;
  x["kind"] = i.kind;
  x["configuration"] = i.configuration;
  x["expected_configuration"] = i.expected_configuration;
  x["dual_checked"] = i.dual_checked;
  x["dual_ok"] = i.dual_ok;
  x["total_v_delta"] = i.total_v_delta;
  x["skipped"] = i.skipped;
  x["error"] = i.error;
  x["pass"] = i.pass;
  return x;
}

auto verify_tables(const Options &o) -> int {
  Catalog own;
  if (!o.catalog_file.empty()) {
    std::ifstream in(o.catalog_file);
    if (!in) throw Error("cannot read " + o.catalog_file);
    std::ostringstream text;
    text << in.rdbuf();
    own = parse_catalog(text.str());
  }
  const Catalog &cat = o.catalog_file.empty() ? load_catalog() : own;
  const CatalogReport rep = verify_all(cat, o.table, o.filter_p);
  if (rep.rows.empty()) throw Error("no catalog rows match the filter");

  std::size_t failed = 0, instances = 0;
  for (auto &r : rep.rows) {
    failed += r.pass ? 0 : 1;
    instances += r.instances.size();
  }
  if (o.json) {
    Json j;
    j["command"] = "verify-tables";
    Json verdicts = Json::array();
    for (auto &r : rep.rows) {
      const CatalogRow &row = *cat.find(r.id);
      Json x;
      x["row"] = r.id;
      x["table"] = row.table;
      x["characteristic"] = row.p;
      x["type"] = row.type_label;
      x["pass"] = r.pass;
      x["warnings"] = r.warnings;
      Json inst = Json::array();
      for (auto &i : r.instances) inst.push_back(instance_json(i));
      x["instances"] = inst;
      verdicts.push_back(x);
    }
    j["verdicts"] = verdicts;
    Json cons;
    cons["configurations_checked"] = rep.consistency.configurations_checked;
    Json e8 = Json::object();
    for (auto &[p, n] : rep.consistency.e8_rows) e8[std::to_string(p)] = n;
    cons["e8_rows"] = e8;
    cons["problems"] = rep.consistency.problems;
    j["consistency"] = cons;
    j["pass"] = rep.pass();
    std::cout << j.dump(2) << "\n";
  } else {
    for (auto &r : rep.rows) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.id << "  (" << r.instances.size() << " instances)\n";
      for (auto &w : r.warnings) std::cout << "  warning: " << w << "\n";
      for (auto &i : r.instances) {
        if (i.pass) continue;
        std::cout << "  " << i.sub_label << " over " << i.field << " at " << i.assignment << ": ";
        if (!i.error.empty()) std::cout << i.error;
        else
          std::cout << "delta " << i.delta << " vs " << i.expected_delta << ", j " << i.j << " vs " << i.expected_j
                    << ", configuration " << i.configuration << " vs " << i.expected_configuration;
        std::cout << "\n";
      }
    }
    std::cout << "consistency: " << rep.consistency.configurations_checked << " configurations checked";
    for (auto &[p, n] : rep.consistency.e8_rows) std::cout << ", char " << p << " has " << n << " E8 rows";
    std::cout << "\n";
    for (auto &pr : rep.consistency.problems) std::cout << "  problem: " << pr << "\n";
    std::cout << rep.rows.size() - failed << " of " << rep.rows.size() << " rows pass, " << instances
              << " instances\n";
  }
  if (!rep.pass()) std::cerr << "verification failed\n";
  return rep.pass() ? kOk : kFailed;
}

} // namespace

auto main(int argc, char **argv) -> int {
  CLI::App app{"Rational double points on del Pezzo surfaces"};
  app.require_subcommand(1);
  Options o;
  auto json_flag = [&](CLI::App *s) { s->add_flag("--json", o.json, "Structured report"); };

  auto *cl = app.add_subcommand("classify", "Invariants, fibers and singularities of a Weierstrass sextic");
  cl->add_option("--char", o.p, "Characteristic (prime)")->required();
  cl->add_option("--degree", o.degree, "Work over GF(p^degree); 'a' is the generator");
  cl->add_option("--eq", o.eq, "Equation, e.g. \"y^2 = x^3 + t^5*s\"")->required();
  json_flag(cl);

  auto *cc = app.add_subcommand("check-config", "Decide whether an RDP configuration occurs");
  cc->add_option("--char", o.p, "Characteristic (0 or prime)")->required();
  cc->add_option("config", o.config, "Configuration, e.g. \"D4^0+3A1\"")->required();
  json_flag(cc);

  auto *vt = app.add_subcommand("verify-tables", "Re-verify the catalog of equations");
  vt->add_option("--table", o.table, "Only this table");
  vt->add_option("--char", o.filter_p, "Only this characteristic");
  vt->add_option("--catalog", o.catalog_file, "Catalog file instead of the built-in one");
  json_flag(vt);

  auto *la = app.add_subcommand("lattice", "Embeddings of a root lattice into E8");
  auto *type_opt = la->add_option("--type", o.type, "ADE sum, e.g. \"D4+4A1\"");
  auto *all_opt = la->add_flag("--all", o.all, "Dump every enumerated class");
  type_opt->excludes(all_opt);
  json_flag(la);

  auto *tj = app.add_subcommand("tjurina", "Tjurina dimension of a surface germ at the origin");
  tj->add_option("--char", o.p, "Characteristic (prime)")->required();
  tj->add_option("--degree", o.degree, "Work over GF(p^degree); 'a' is the generator");
  tj->add_option("--poly", o.poly, "Polynomial in x, y, z")->required();
  json_flag(tj);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e, std::cout, std::cerr);
    return rc == 0 ? kOk : kBadInput;
  }

  try {
    if (la->parsed() && !o.all && o.type.empty()) throw Error("lattice needs --type or --all");
    if ((cc->parsed()) && o.p != 0 && !detail::is_prime(o.p))
      throw Error("characteristic must be 0 or prime, got " + std::to_string(o.p));
    if (cl->parsed()) return classify(o);
    if (cc->parsed()) return check_config(o);
    if (vt->parsed()) return verify_tables(o);
    if (la->parsed()) return lattice(o);
    if (tj->parsed()) return tjurina(o);
  } catch (const Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    // internal inconsistencies are failures of the verification, not of the input
    return std::string(e.what()).rfind("internal", 0) == 0 ? kFailed : kBadInput;
  }
  return kBadInput;
}
