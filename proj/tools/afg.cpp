// afg: command-line front end for the afg library.
//
// Exit status: 0 success, 1 domain error or failed --check, 2 usage error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "afg/census.hpp"
#include "afg/embed.hpp"
#include "afg/flagfix.hpp"
#include "afg/genlab.hpp"

using namespace afg;
using Json = nlohmann::ordered_json;

namespace {

// Integers that fit in 64 bits are JSON numbers, larger ones strings.
Json jint(const Integer& v) {
  if (v >= 0 && v <= std::numeric_limits<std::int64_t>::max()) return static_cast<std::int64_t>(v);
  if (v < 0 && v >= std::numeric_limits<std::int64_t>::min()) return static_cast<std::int64_t>(v);
  return to_string(v);
}

Json jrat(const Rational& r) { return to_string(r); }

Json jdouble(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

struct Output {
  std::string command;
  Json config = Json::object();
  Json result = Json::object();
  bool failed_check = false;
};

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string header_line(const Output& o) {
  std::string h = "# afg " + o.command;
  for (const auto& [k, v] : o.config.items()) h += " " + k + "=" + scalar_text(v);
  return h;
}

std::string csv_cell(const Json& v) {
  std::string s = scalar_text(v);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Output& o, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    Json doc;
    doc["command"] = o.command;
    doc["config"] = o.config;
    doc["result"] = o.result;
    out << doc.dump(2) << "\n";
    return out.str();
  }
  out << header_line(o) << "\n";
  const auto rows = o.result.is_array() ? o.result : Json::array({o.result});
  if (format == "csv") {
    if (rows.empty()) return out.str();
    std::vector<std::string> cols;
    for (const auto& [k, v] : rows.front().items()) cols.push_back(k);
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << (r.contains(cols[i]) ? csv_cell(r[cols[i]]) : "");
      out << "\n";
    }
    return out.str();
  }
  if (o.result.is_array()) {
    for (const auto& r : rows) {
      if (!r.is_object()) {
        out << scalar_text(r) << "\n";
        continue;
      }
      bool first = true;
      for (const auto& [k, v] : r.items()) {
        out << (first ? "" : " ") << k << "=" << scalar_text(v);
        first = false;
      }
      out << "\n";
    }
    return out.str();
  }
  if (o.result.contains("value")) out << scalar_text(o.result["value"]) << "\n";
  for (const auto& [k, v] : o.result.items()) {
    if (k == "value") continue;
    if (v.is_array() && !v.empty() && v.front().is_string()) {
      out << k << ":\n";
      for (const auto& s : v) out << "  " << s.get<std::string>() << "\n";
    } else {
      out << k << ": " << scalar_text(v) << "\n";
    }
  }
  return out.str();
}

Caps parse_caps(const std::vector<std::string>& specs) {
  Caps c = default_caps();
  for (const auto& s : specs) {
    const auto eq = s.find('=');
    const auto parse = [&](const std::string& v) {
      if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
        throw CLI::ValidationError("--cap", "expected a non-negative integer, got '" + v + "'");
      return std::stoull(v);
    };
    if (eq == std::string::npos) {
      const auto v = parse(s);
      c.group_elements = c.matrix_tuples = c.orbit = c.subspaces = v;
      continue;
    }
    const auto key = s.substr(0, eq);
    const auto v = parse(s.substr(eq + 1));
    if (key == "group_elements") c.group_elements = v;
    else if (key == "matrix_tuples") c.matrix_tuples = v;
    else if (key == "orbit") c.orbit = v;
    else if (key == "subspaces") c.subspaces = v;
    else if (key == "action_degree") c.action_degree = v;
    else throw CLI::ValidationError("--cap", "unknown budget '" + key + "'");
  }
  return c;
}

Json caps_json(const Caps& c) {
  return Json{{"group_elements", c.group_elements}, {"matrix_tuples", c.matrix_tuples}, {"orbit", c.orbit},
              {"subspaces", c.subspaces},           {"action_degree", c.action_degree}};
}

std::vector<Matrix> parse_matrices(const std::vector<std::string>& texts) {
  std::vector<Matrix> out;
  for (const auto& t : texts) {
    if (!t.empty() && t[0] == '@') {
      std::ifstream in(t.substr(1));
      if (!in) fail(ErrorKind::MissingData, "cannot open matrix file " + t.substr(1));
      std::stringstream ss;
      ss << in.rdbuf();
      for (auto& m : parse_matrix_list(ss.str())) out.push_back(std::move(m));
    } else {
      out.push_back(parse_matrix(t));
    }
  }
  return out;
}

FormKind parse_kind(const std::string& s) {
  if (s == "zero") return FormKind::Zero;
  if (s == "symplectic") return FormKind::Symplectic;
  if (s == "quadratic") return FormKind::Quadratic;
  if (s == "unitary") return FormKind::Unitary;
  throw CLI::ValidationError("--space", "expected zero|symplectic|quadratic|unitary");
}

Sign parse_sign(const std::string& s) {
  if (s == "+") return Sign::Plus;
  if (s == "-") return Sign::Minus;
  if (s == "o" || s.empty()) return Sign::Circle;
  throw CLI::ValidationError("--sign", "expected +, - or o");
}

Json count_report_json(const CountReport& r) {
  Json j{{"group", r.group}, {"statistic", r.statistic}, {"value", jint(r.value)}};
  j["exponent_num"] = r.exponent ? jint(numerator(*r.exponent)) : Json(nullptr);
  j["exponent_den"] = r.exponent ? jint(denominator(*r.exponent)) : Json(nullptr);
  j["window"] = r.window;
  return j;
}

Json fpr_json(const FprReport& r) {
  return Json{{"m", r.m},
              {"omega_size", jint(r.omega_size)},
              {"fix", jint(r.fix)},
              {"class_size", jint(r.class_size)},
              {"intersection", jint(r.intersection)},
              {"lhs", jint(r.lhs)},
              {"rhs", jint(r.rhs)},
              {"holds", r.holds},
              {"transitive", r.transitive},
              {"fpr_num", jint(numerator(r.fpr))},
              {"fpr_den", jint(denominator(r.fpr))}};
}

Json parabolic_json(const ParabolicReport& p) {
  Json targets = Json::array();
  for (const auto& t : p.targets) targets.push_back(Json{{"source", t.source}, {"f", jrat(t.f)}});
  return Json{{"m", p.m},
              {"klein", p.klein},
              {"omega_size", jint(p.x.omega_size)},
              {"fix", Json{{"x", jint(p.x.fix)}, {"y", jint(p.y.fix)}}},
              {"class_size", Json{{"x", jint(p.x.class_size)}, {"y", jint(p.y.class_size)}}},
              {"intersection", Json{{"x", jint(p.x.intersection)}, {"y", jint(p.y.intersection)}}},
              {"fpr_num", jint(numerator(p.x.fpr))},
              {"fpr_den", jint(denominator(p.x.fpr))},
              {"product", jrat(p.product)},
              {"identity_holds", p.product_identity_holds},
              {"target_exponent_f", targets},
              {"measured_exponent",
               Json{{"fpr", jdouble(p.measured_fpr_exponent)},
                    {"fix", jdouble(p.measured_fix_exponent)},
                    {"product", jdouble(p.measured_product_exponent)}}}};
}

Json experiment_json(const GenerationExperiment& e) {
  Json trials = Json::array();
  for (const auto& t : e.per_trial) trials.push_back(Json{{"generated", t.generated}, {"order_found", jint(t.order_found)}});
  Json j{{"atlas", to_string(e.atlas)}, {"A", e.A},       {"B", e.B},
         {"path", e.klein ? "klein" : "order4"},        {"trials", e.trials}, {"seed", e.seed},
         {"successes", e.successes()}};
  j["frequency"] = e.frequency() ? Json(*e.frequency()) : Json(nullptr);
  j["per_trial"] = trials;
  return j;
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || std::filesystem::path(path).is_absolute()) return path;
  if (const char* dir = std::getenv("AFG_OUT_DIR")) return (std::filesystem::path(dir) / path).string();
  return path;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Almost-free embeddings, subgroup counts and fixed-point ratios of classical groups"};
  app.require_subcommand(1);

  std::string format = "text";
  std::vector<std::string> cap_specs;
  std::string output_file;
  app.add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--cap", cap_specs, "Budget override: N (all enumeration budgets) or key=N")->take_all();
  app.add_option("--output", output_file, "Write the document here instead of stdout (relative to $AFG_OUT_DIR)");

  bool oracle = false, check = false;
  const auto add_oracle = [&](CLI::App* sub) {
    sub->add_flag("--oracle", oracle, "Use the independent brute-force oracle");
    sub->add_flag("--check", check, "Run formula and oracle and fail on mismatch");
  };
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--cap", cap_specs, "Budget override")->take_all();
    sub->add_option("--output", output_file, "Output file");
  };

  unsigned b = 0, c = 0, d = 0, n = 0, t = 0;
  std::uint32_t q = 0;
  std::string group, space_kind, sign, stat, twoA, twoB, catalog_path, mode = "order4", report_kind;
  std::size_t m = 0, trials = 50;
  std::uint64_t seed = 1, s_order = 0;
  std::vector<std::string> xs, ys;
  double s_zeta = 1.0;
  int precision = 12;
  std::string x_class_text, y_class_text, jordan;
  unsigned l1 = 0, l2 = 0, lsize = 0;
  bool list = false;

  auto* psi_cmd = app.add_subcommand("psi", "Pairs (A, B) with AB = 0, A b x c, B c x d");
  psi_cmd->add_option("--b", b)->required();
  psi_cmd->add_option("--c", c)->required();
  psi_cmd->add_option("--d", d)->required();
  psi_cmd->add_option("--q", q)->required();
  add_oracle(psi_cmd);

  auto* order_cmd = app.add_subcommand("order", "Group order");
  order_cmd->add_option("group", group, "FAMILY[EPS]_N_Q")->required();
  add_oracle(order_cmd);

  auto* count_cmd = app.add_subcommand("count", "Element and subgroup counts with exponent reports");
  count_cmd->add_option("--group", group, "Classical group");
  count_cmd->add_option("--sn", t, "Symmetric group S_t");
  count_cmd->add_option("--stat", stat, "i2 | i4 | i2x2 | pairs | order | j4")->required()
      ->check(CLI::IsMember({"i2", "i4", "i2x2", "pairs", "order", "j4"}));
  count_cmd->add_option("--s", s_order, "Element order for --stat order");
  add_oracle(count_cmd);

  auto* klein_cmd = app.add_subcommand("klein", "Klein four-subgroups");
  klein_cmd->add_option("--group", group, "Classical group");
  klein_cmd->add_option("--sn", n, "Symmetric group S_n");
  add_oracle(klein_cmd);

  auto* sub_cmd = app.add_subcommand("subspaces", "Totally singular m-subspaces");
  sub_cmd->add_option("--group", group, "Use the group's standard form");
  sub_cmd->add_option("--space", space_kind, "zero | symplectic | quadratic | unitary");
  sub_cmd->add_option("--sign", sign, "+, - or o (quadratic only)");
  sub_cmd->add_option("--n", n);
  sub_cmd->add_option("--q", q);
  sub_cmd->add_option("--m", m)->required();
  sub_cmd->add_flag("--list", list, "List the subspaces (echelon bases)");
  add_oracle(sub_cmd);

  auto* fix_cmd = app.add_subcommand("fix", "Totally singular m-spaces fixed by every listed element");
  fix_cmd->add_option("--group", group)->required();
  fix_cmd->add_option("--m", m)->required();
  fix_cmd->add_option("--x", xs, "Matrix 'r c q; entries' or @file")->take_all();

  auto* fpr_cmd = app.add_subcommand("fpr", "Fixed-point ratio with the exact double-counting check");
  fpr_cmd->add_option("--group", group)->required();
  fpr_cmd->add_option("--m", m)->required();
  fpr_cmd->add_option("--x", xs, "One element, or two generating a Klein four-group")->required()->take_all();

  auto* embed_cmd = app.add_subcommand("embed", "Almost-free embedding of a 2-group");
  embed_cmd->add_option("--group", group)->required();
  embed_cmd->add_option("--B", twoB, "2-group, e.g. C2xC4")->required();

  auto* gen_cmd = app.add_subcommand("generate", "Random generation experiment");
  gen_cmd->add_option("--group", group)->required();
  gen_cmd->add_option("--A", twoA)->required();
  gen_cmd->add_option("--B", twoB)->required();
  gen_cmd->add_option("--trials", trials);
  gen_cmd->add_option("--seed", seed);

  auto* zeta_cmd = app.add_subcommand("zeta", "sum of class_count * index^-s over a catalog");
  zeta_cmd->add_option("--catalog", catalog_path)->required();
  zeta_cmd->add_option("--s", s_zeta)->required();
  zeta_cmd->add_option("--precision", precision, "Significant digits")->check(CLI::Range(1, 17));

  auto* crit_cmd = app.add_subcommand("criterion", "Exact criterion sum over a catalog");
  crit_cmd->add_option("--catalog", catalog_path, "Catalog CSV");
  crit_cmd->add_option("--group", group, "Fill class sizes (and with no catalog, parabolic rows) from flagfix");
  crit_cmd->add_option("--x", xs, "x as a matrix")->take_all();
  crit_cmd->add_option("--y", ys, "y, or two matrices generating K")->take_all();
  crit_cmd->add_option("--x-class", x_class_text, "|x^G|");
  crit_cmd->add_option("--y-class", y_class_text, "|y^G| or |K^G|");
  crit_cmd->add_option("--mode", mode)->check(CLI::IsMember({"order4", "klein"}));

  auto* rep_cmd = app.add_subcommand("report", "Diagnostics");
  rep_cmd->add_option("kind", report_kind, "exponents | parabolic | i2ratio | centralizer | nilpotent | rank")
      ->required()
      ->check(CLI::IsMember({"exponents", "parabolic", "i2ratio", "centralizer", "nilpotent", "rank"}));
  rep_cmd->add_option("--group", group);
  rep_cmd->add_option("--m", m);
  rep_cmd->add_option("--x", xs)->take_all();
  rep_cmd->add_option("--y", ys)->take_all();
  rep_cmd->add_option("--catalog", catalog_path);
  rep_cmd->add_option("--jordan", jordan, "l1,l2,l3,l4");
  rep_cmd->add_option("--q", q);
  rep_cmd->add_option("--b", b);
  rep_cmd->add_option("--c", c);
  rep_cmd->add_option("--l1", l1);
  rep_cmd->add_option("--l2", l2);
  rep_cmd->add_option("--l", lsize);
  rep_cmd->add_option("--n", n, "Ambient size m of the block matrices");
  add_oracle(rep_cmd);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Output o;
  Caps caps;
  try {
    caps = parse_caps(cap_specs);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  default_caps() = caps;
  const auto usage = [](const std::string& msg) -> int {
    std::cerr << "usage error: " << msg << "\n";
    return 2;
  };
  const auto mode_json = [&]() { return check ? "check" : oracle ? "oracle" : "formula"; };

  try {
    if (psi_cmd->parsed()) {
      o.command = "psi";
      o.config = Json{{"b", b}, {"c", c}, {"d", d}, {"q", q}, {"mode", mode_json()}};
      if (check) {
        const Integer f = psi(b, c, d, q), r = psi_oracle(b, c, d, q, caps);
        o.result = Json{{"value", jint(f)}, {"oracle", jint(r)}, {"match", f == r}};
        o.failed_check = f != r;
      } else {
        o.result = Json{{"value", jint(oracle ? psi_oracle(b, c, d, q, caps) : psi(b, c, d, q))}};
      }
    } else if (order_cmd->parsed()) {
      o.command = "order";
      const auto spec = parse_group_spec(group);
      o.config = Json{{"group", to_string(spec)}, {"mode", mode_json()}};
      if (check || oracle) {
        const GroupAtlas atlas(spec);
        const Integer bs = atlas.bsgs_order();
        if (check) {
          o.result = Json{{"value", jint(atlas.order())}, {"oracle", jint(bs)}, {"match", bs == atlas.order()}};
          o.failed_check = bs != atlas.order();
        } else {
          o.result = Json{{"value", jint(bs)}};
        }
      } else {
        o.result = Json{{"value", jint(group_order(spec))}};
      }
    } else if (count_cmd->parsed()) {
      o.command = "count";
      if (count_cmd->count("--sn")) {
        if (stat != "j4" && stat != "i2x2") return usage("--sn supports --stat j4 or i2x2");
        o.config = Json{{"sn", t}, {"stat", stat}, {"mode", mode_json()}};
        const auto formula = stat == "j4" ? sn_order4_count(t) : sn_klein_count(t);
        const auto brute = [&] { return stat == "j4" ? sn_order4_oracle(t) : sn_klein_oracle(t); };
        Integer fact = 1;
        for (unsigned i = 2; i <= t; ++i) fact *= i;
        const Integer value = oracle && !check ? brute() : formula;
        o.result = count_report_json(make_report("S_" + std::to_string(t), stat, value, fact, ""));
        if (check) {
          const Integer r = brute();
          o.result["oracle"] = jint(r);
          o.result["match"] = r == formula;
          o.failed_check = r != formula;
        }
      } else {
        if (group.empty()) return usage("count needs --group or --sn");
        if (stat == "j4") return usage("--stat j4 needs --sn");
        if (stat == "order" && s_order == 0) return usage("--stat order needs --s");
        const GroupAtlas atlas(parse_group_spec(group));
        o.config = Json{{"group", to_string(atlas.spec())}, {"stat", stat}};
        if (stat == "order") o.config["s"] = s_order;
        o.config["mode"] = mode_json();
        o.config["caps"] = caps_json(caps);
        const PermGroup G(atlas);
        if (stat == "i2" || stat == "i4" || stat == "order") {
          const std::uint64_t s = stat == "i2" ? 2 : stat == "i4" ? 4 : s_order;
          const std::string window = stat == "i2" ? "1/2" : stat == "i4" ? "3/4" : "";
          o.result = count_report_json(make_report(to_string(atlas.spec()), stat, count_order_elements(G, s, caps),
                                                   atlas.order(), window));
        } else {
          const auto k = count_klein_subgroups(G, caps);
          const bool pairs = stat == "pairs";
          const Integer value = pairs ? k.commuting_pairs : (oracle && !check) ? k.distinct_triples : k.subgroups;
          o.result = count_report_json(make_report(to_string(atlas.spec()), stat, value, atlas.order(), "3/4"));
          if (check) {
            o.result["distinct_triples"] = jint(k.distinct_triples);
            o.result["match"] = k.subgroups == k.distinct_triples && k.subgroups * 3 == k.commuting_pairs;
            o.failed_check = !o.result["match"].get<bool>();
          }
        }
      }
    } else if (klein_cmd->parsed()) {
      o.command = "klein";
      if (klein_cmd->count("--sn")) {
        o.config = Json{{"sn", n}, {"mode", mode_json()}};
        const Integer f = sn_klein_count(n);
        if (check) {
          const Integer r = sn_klein_oracle(n);
          o.result = Json{{"value", jint(f)}, {"oracle", jint(r)}, {"match", f == r}};
          o.failed_check = f != r;
        } else {
          o.result = Json{{"value", jint(oracle ? sn_klein_oracle(n) : f)}};
        }
      } else {
        if (group.empty()) return usage("klein needs --group or --sn");
        const GroupAtlas atlas(parse_group_spec(group));
        o.config = Json{{"group", to_string(atlas.spec())}, {"mode", mode_json()}, {"caps", caps_json(caps)}};
        const auto k = count_klein_subgroups(PermGroup(atlas), caps);
        o.result = Json{{"value", jint(oracle && !check ? k.distinct_triples : k.subgroups)},
                        {"commuting_pairs", jint(k.commuting_pairs)},
                        {"distinct_triples", jint(k.distinct_triples)}};
        if (check) {
          o.result["match"] = k.subgroups == k.distinct_triples;
          o.failed_check = k.subgroups != k.distinct_triples;
        }
      }
    } else if (sub_cmd->parsed()) {
      o.command = "subspaces";
      std::optional<FormedSpace> space;
      if (!group.empty()) {
        const auto spec = parse_group_spec(group);
        space = standard_form(spec);
        o.config["group"] = to_string(spec);
      } else {
        if (space_kind.empty() || n == 0 || q == 0) return usage("subspaces needs --group or --space, --n and --q");
        space = standard_space(parse_kind(space_kind), parse_sign(sign), n, q);
        o.config["space"] = space_kind;
        o.config["sign"] = sign.empty() ? "o" : sign;
        o.config["n"] = n;
        o.config["q"] = q;
      }
      o.config["m"] = m;
      o.config["mode"] = mode_json();
      o.config["list"] = list;
      o.config["caps"] = caps_json(caps);
      const Integer f = totally_singular_count(*space, m);
      if (check || oracle || list) {
        const auto all = enumerate_totally_singular(*space, m, caps);
        const Integer e(all.size());
        o.result["value"] = jint(check ? f : oracle ? e : f);
        if (check) {
          o.result["enumerated"] = jint(e);
          o.result["match"] = e == f;
          o.failed_check = e != f;
        }
        if (list) {
          Json l = Json::array();
          for (const auto& U : all) l.push_back(format_matrix(U));
          o.result["subspaces"] = l;
        }
      } else {
        o.result["value"] = jint(f);
      }
    } else if (fix_cmd->parsed()) {
      o.command = "fix";
      const GroupAtlas atlas(parse_group_spec(group));
      const auto elems = parse_matrices(xs);
      Json xs_json = Json::array();
      for (const auto& x : elems) xs_json.push_back(format_matrix(x));
      o.config = Json{{"group", to_string(atlas.spec())}, {"m", m}, {"x", xs_json}, {"caps", caps_json(caps)}};
      o.result = Json{{"value", jint(fix_count(elems, atlas.form(), m, caps))}};
    } else if (fpr_cmd->parsed()) {
      o.command = "fpr";
      const GroupAtlas atlas(parse_group_spec(group));
      const auto elems = parse_matrices(xs);
      if (elems.size() != 1 && elems.size() != 2) return usage("fpr takes one element or a Klein pair");
      Json xs_json = Json::array();
      for (const auto& x : elems) xs_json.push_back(format_matrix(x));
      o.config = Json{{"group", to_string(atlas.spec())}, {"m", m}, {"x", xs_json}, {"caps", caps_json(caps)}};
      const auto r = elems.size() == 1 ? fpr_check(elems[0], atlas, m, caps) : fpr_check(elems[0], elems[1], atlas, m, caps);
      o.result = fpr_json(r);
      if (!r.holds) fail(ErrorKind::IdentityViolated, "double-counting identity failed: " + to_string(r.lhs) + " != " + to_string(r.rhs));
    } else if (embed_cmd->parsed()) {
      o.command = "embed";
      const auto spec = parse_group_spec(group);
      const auto B = TwoGroup::parse(twoB);
      o.config = Json{{"group", to_string(spec)}, {"B", B.tag()}};
      const auto e = embed_almost_free(B, spec);
      const auto ch = e.check();
      Json mats = Json::array();
      for (const auto& img : e.images) mats.push_back(format_matrix(img));
      o.result = Json{{"n", e.decomposition.n},
                      {"a", e.decomposition.a},
                      {"k", e.decomposition.k},
                      {"s", e.decomposition.s},
                      {"homomorphism", ch.homomorphism},
                      {"injective", ch.injective},
                      {"preserves_form", ch.preserves_form},
                      {"in_group", ch.in_group},
                      {"fixed_space_dim", ch.fixed_space_dim},
                      {"fixed_space_ok", ch.fixed_space_ok},
                      {"involution_rank_ok", ch.involution_rank_ok},
                      {"images", mats}};
      o.failed_check = !ch.all();
    } else if (gen_cmd->parsed()) {
      o.command = "generate";
      const GroupAtlas atlas(parse_group_spec(group));
      const auto A = TwoGroup::parse(twoA), B = TwoGroup::parse(twoB);
      o.config = Json{{"group", to_string(atlas.spec())}, {"A", A.tag()}, {"B", B.tag()}, {"trials", trials},
                      {"seed", seed}, {"caps", caps_json(caps)}};
      o.result = experiment_json(run_generation_experiment(atlas, A, B, trials, seed));
    } else if (zeta_cmd->parsed()) {
      o.command = "zeta";
      o.config = Json{{"catalog", catalog_path}, {"s", s_zeta}, {"precision", precision}};
      std::ostringstream v;
      v << std::setprecision(precision) << zeta(read_catalog(catalog_path), s_zeta);
      o.result = Json{{"value", v.str()}};
    } else if (crit_cmd->parsed()) {
      o.command = "criterion";
      const CriterionMode cm = mode == "klein" ? CriterionMode::Klein : CriterionMode::Order4;
      o.config = Json{{"mode", mode}};
      if (!catalog_path.empty()) o.config["catalog"] = catalog_path;
      if (!group.empty()) o.config["group"] = group;
      Catalog cat;
      Integer xc, yc;
      if (!group.empty()) {
        const GroupAtlas atlas(parse_group_spec(group));
        const auto x = parse_matrices(xs), y = parse_matrices(ys);
        if (x.size() != 1 || y.size() != (cm == CriterionMode::Klein ? 2u : 1u))
          return usage("criterion --group needs one --x and one --y (two in klein mode)");
        o.config["x"] = format_matrix(x[0]);
        Json yj = Json::array();
        for (const auto& yy : y) yj.push_back(format_matrix(yy));
        o.config["y"] = yj;
        xc = class_size(x[0], atlas, caps).size();
        yc = y.size() == 1 ? class_size(y[0], atlas, caps).size() : klein_class(y[0], y[1], atlas.generators(), caps).size();
        cat = catalog_path.empty() ? parabolic_catalog(atlas, x[0], y, caps) : read_catalog(catalog_path);
      } else {
        if (catalog_path.empty() || x_class_text.empty() || y_class_text.empty())
          return usage("criterion needs --catalog with --x-class and --y-class, or --group with --x and --y");
        cat = read_catalog(catalog_path);
        try {
          xc = Integer(x_class_text);
          yc = Integer(y_class_text);
        } catch (const std::exception&) {
          return usage("class sizes must be integers");
        }
      }
      o.config["x_class"] = jint(xc);
      o.config["y_class"] = jint(yc);
      const Rational s = criterion_sum(cat, xc, yc, cm);
      Json terms = Json::array();
      for (const auto& e : cat)
        terms.push_back(Json{{"label", e.label}, {"term", jrat(criterion_sum({e}, xc, yc, cm))}});
      o.result = Json{{"value", jrat(s)}, {"below_one", s < 1}, {"entries", cat.size()}, {"terms", terms}};
    } else if (rep_cmd->parsed()) {
      o.command = "report " + report_kind;
      if (report_kind == "exponents") {
        if (group.empty()) return usage("report exponents needs --group");
        const GroupAtlas atlas(parse_group_spec(group));
        const std::string name = to_string(atlas.spec());
        o.config = Json{{"group", name}, {"caps", caps_json(caps)}};
        const PermGroup G(atlas);
        const Integer i2 = count_order_elements(G, 2, caps), i4 = count_order_elements(G, 4, caps);
        const auto k = count_klein_subgroups(G, caps);
        o.result = Json::array({count_report_json(make_report(name, "i2", i2, atlas.order(), "1/2")),
                                count_report_json(make_report(name, "i4", i4, atlas.order(), "3/4")),
                                count_report_json(make_report(name, "i2x2", k.subgroups, atlas.order(), "3/4")),
                                count_report_json(make_report(name, "pairs", k.commuting_pairs, atlas.order(), "3/4"))});
        o.failed_check = !(i4 >= 0 && i4 < atlas.order() && k.subgroups * 3 == k.commuting_pairs);
      } else if (report_kind == "parabolic") {
        if (group.empty() || m == 0) return usage("report parabolic needs --group and --m");
        const GroupAtlas atlas(parse_group_spec(group));
        const auto x = parse_matrices(xs), y = parse_matrices(ys);
        if (x.size() != 1 || (y.size() != 1 && y.size() != 2)) return usage("report parabolic needs --x and --y");
        Json yj = Json::array();
        for (const auto& yy : y) yj.push_back(format_matrix(yy));
        o.config = Json{{"group", to_string(atlas.spec())}, {"m", m}, {"x", format_matrix(x[0])}, {"y", yj},
                        {"caps", caps_json(caps)}};
        const auto p = y.size() == 1 ? parabolic_bound_report(x[0], y[0], atlas, m, caps)
                                     : parabolic_bound_report(x[0], y[0], y[1], atlas, m, caps);
        o.result = parabolic_json(p);
        if (!p.product_identity_holds) fail(ErrorKind::IdentityViolated, "double-counting identity failed");
      } else if (report_kind == "i2ratio") {
        if (group.empty() || catalog_path.empty()) return usage("report i2ratio needs --group and --catalog");
        const GroupAtlas atlas(parse_group_spec(group));
        o.config = Json{{"group", to_string(atlas.spec())}, {"catalog", catalog_path}, {"caps", caps_json(caps)}};
        o.result = Json::array();
        for (const auto& e : read_catalog(catalog_path)) {
          if (e.generators_file.empty()) continue;
          const auto r = i2_ratio_report(e, atlas, caps);
          o.result.push_back(Json{{"label", r.label},
                                  {"i2_M", jint(r.i2_M)},
                                  {"i2_G", jint(r.i2_G)},
                                  {"index", jint(r.index)},
                                  {"ratio", jrat(r.ratio)},
                                  {"exponent", jdouble(r.exponent)},
                                  {"ratio_ok", r.ratio_ok}});
          o.failed_check = o.failed_check || !r.ratio_ok;
        }
      } else if (report_kind == "centralizer") {
        if (jordan.empty() || q == 0) return usage("report centralizer needs --jordan and --q");
        JordanType jt;
        std::stringstream ss(jordan);
        std::string part;
        std::size_t i = 0;
        while (std::getline(ss, part, ',')) {
          if (i >= 4 || part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            return usage("--jordan takes up to four non-negative integers l1,l2,l3,l4");
          jt.l[i++] = static_cast<unsigned>(std::stoul(part));
        }
        o.config = Json{{"jordan", jordan}, {"q", q}, {"mode", mode_json()}, {"caps", caps_json(caps)}};
        const auto r = unipotent_centralizer_order(jt, q, caps);
        const Integer formula = unipotent_centralizer_formula(jt, q);
        o.result = Json{{"value", jint(r.order)}, {"formula", jint(formula)}, {"exponent", r.exponent},
                        {"in_window", r.in_window}};
        bool ok = r.order == formula && r.in_window;
        if (check || oracle) {
          const Integer lit = unipotent_centralizer_oracle(jt, q, caps);
          o.result["oracle"] = jint(lit);
          ok = ok && lit == r.order;
        }
        o.failed_check = check && !ok;
      } else if (report_kind == "nilpotent") {
        if (n == 0 || q == 0) return usage("report nilpotent needs --l1 --l2 --l --n --q");
        o.config = Json{{"l1", l1}, {"l2", l2}, {"l", lsize}, {"n", n}, {"q", q}, {"mode", mode_json()},
                        {"caps", caps_json(caps)}};
        const Integer f = nilpotent_block_count(l1, l2, lsize, n, q, caps);
        o.result = Json{{"value", jint(f)}, {"bound_exponent", nilpotent_bound_exponent(l1, l2, lsize, n)}};
        if (check || oracle) {
          const Integer r = nilpotent_block_oracle(l1, l2, lsize, n, q, caps);
          o.result["oracle"] = jint(r);
          o.result["match"] = r == f;
          o.failed_check = check && r != f;
        }
      } else {
        if (q == 0) return usage("report rank needs --b --c --q");
        o.config = Json{{"b", b}, {"c", c}, {"q", q}};
        Integer total = 0;
        Json rows = Json::array();
        for (unsigned r = 0; r <= std::min(b, c); ++r) {
          const Integer v = rank_count(b, c, r, q);
          total += v;
          rows.push_back(Json{{"r", r}, {"count", jint(v)}});
        }
        const Integer all = ipow(Integer(q), b * c);
        o.result = Json{{"value", jint(total)}, {"expected", jint(all)}, {"match", total == all}, {"by_rank", rows}};
        o.failed_check = total != all;
      }
    }
  } catch (const DomainError& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return 1;
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  const std::string doc = render(o, format);
  const std::string path = resolve_output_path(output_file);
  if (path.empty()) {
    std::cout << doc;
  } else {
    std::ofstream out(path);
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      return 1;
    }
    out << doc;
  }
  if (o.failed_check) {
    std::cerr << "check failed\n";
    return 1;
  }
  return 0;
}
