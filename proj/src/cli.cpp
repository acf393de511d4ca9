#include "nsfrag/cli.hpp"

#include "nsfrag/error.hpp"
#include "nsfrag/eval.hpp"
#include "nsfrag/expr.hpp"
#include "nsfrag/hull.hpp"
#include "nsfrag/loeb.hpp"
#include "nsfrag/strucmodel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <unistd.h>

namespace nsfrag::cli {

using nlohmann::json;

namespace {

json rational_json(const Rational& q) { return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}}; }

json shadow_json(const ExtendedShadow& s) {
  switch (s.kind()) {
    case ExtendedShadow::Kind::finite:
      return rational_json(s.value());
    case ExtendedShadow::Kind::plus_infinity:
      return {{"infinity", "+"}};
    case ExtendedShadow::Kind::minus_infinity:
      return {{"infinity", "-"}};
  }
  return nullptr;
}

json germ_json(const Germ& g) {
  json num = json::array(), den = json::array();
  for (const auto& c : g.numerator().coeffs()) num.push_back(rational_json(c));
  for (const auto& c : g.denominator().coeffs()) den.push_back(rational_json(c));
  return {{"text", g.to_string()}, {"numerator", num}, {"denominator", den}};
}

struct Output {
  std::string text;
  json doc;
};

// Splits "a, b, c" at top-level commas.
std::vector<std::string> split_components(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[' || c == '{') ++depth;
    if (c == ')' || c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

hull::Point parse_point(const std::string& text) {
  hull::Point p;
  for (const auto& c : split_components(text)) p.push_back(eval::parse_germ(c));
  return p;
}

hull::Structure structure_named(const std::string& name, std::size_t dim) {
  if (name == "rationals") return hull::Structure::rationals();
  if (name == "naturals") return hull::Structure::naturals();
  if (name == "vector") return hull::Structure::vectors(static_cast<int>(dim));
  throw InvalidArgument("unknown structure '" + name + "' (rationals, naturals, vector)");
}

json point_json(const hull::HullPoint& p) {
  json canon = json::array(), rep = json::array();
  for (const auto& g : p.canonical()) canon.push_back(germ_json(g));
  for (const auto& g : p.representative()) rep.push_back(g.to_string());
  return {{"structure", p.structure().name()}, {"canonical", canon}, {"representative", rep}};
}

Output cmd_eval(const std::string& e) {
  eval::Value v = eval::evaluate(expr::parse(e, expr::Mode::germ));
  if (auto* g = std::get_if<Germ>(&v)) return {g->to_string(), {{"kind", "germ"}, {"value", germ_json(*g)}}};
  if (auto* b = std::get_if<bool>(&v)) return {*b ? "true" : "false", {{"kind", "truth"}, {"value", *b}}};
  const auto& s = std::get<ExtendedShadow>(v);
  return {s.to_string(), {{"kind", "shadow"}, {"value", shadow_json(s)}}};
}

Output cmd_shadow(const std::string& e) {
  ExtendedShadow s = shadow(eval::parse_germ(e));
  return {s.to_string(), {{"shadow", shadow_json(s)}}};
}

Output cmd_classify(const std::string& e) {
  Germ g = eval::parse_germ(e);
  GermClass c = classify(g);
  Valuation v = valuation(g);
  json doc = {{"class", to_string(c)},
              {"valuation", v.is_bottom() ? json(nullptr) : json(v.value())},
              {"shadow", shadow_json(shadow(g))}};
  return {to_string(c), doc};
}

Output cmd_member(const std::string& set, const std::string& e) {
  coding::CodedSet s = eval::parse_coded_set(set);
  bool m = coding::membership(s, eval::parse_germ(e));
  return {m ? "true" : "false", {{"set", s.to_string()}, {"member", m}}};
}

Output cmd_measure(const std::string& e) {
  loeb::InternalSet x = eval::internal_set_of(expr::parse(e, expr::Mode::set));
  bool standard = x.is_standard();
  Rational m = standard ? loeb::lebesgue(x) : loeb::loeb_measure(x);
  loeb::CountingBounds b = loeb::counting_measure(x);
  json doc = {{"set", x.to_string()},
              {"standard", standard},
              {"measure", rational_json(m)},
              {"counting_bounds", {{"lower", b.lower.to_string()}, {"upper", b.upper.to_string()}}}};
  return {to_string(m), doc};
}

Output cmd_sigma(const std::string& file, std::optional<long> depth) {
  std::ifstream in(file);
  if (!in) throw InvalidArgument("cannot open sigma file '" + file + "'");
  eval::SigmaSpec spec = eval::parse_sigma(in);
  long d = depth ? *depth : spec.depth.value_or(30);
  loeb::SigmaResult r = loeb::sigma_limit(spec.family, d);
  std::ostringstream os;
  os << "mode: " << loeb::to_string(spec.family.mode) << "\n";
  json partial = json::array();
  for (const auto& [k, v] : r.partial) {
    os << "k=" << k << ": " << to_string(v) << "\n";
    partial.push_back({{"k", k}, {"value", rational_json(v)}});
  }
  os << "closed form: " << r.closed_form.to_string() << "\n";
  os << "limit: " << r.limit.to_string();
  return {os.str(),
          {{"mode", loeb::to_string(spec.family.mode)},
           {"partial", partial},
           {"closed_form", r.closed_form.to_string()},
           {"limit", shadow_json(r.limit)}}};
}

Output cmd_ext(const std::string& e) {
  expr::Node n = expr::parse(e, expr::Mode::ext);
  if (n.kind == expr::Kind::compare) {
    ext::ExtOrder o = ext::extnum_order(eval::external_of(n.children[0]), eval::external_of(n.children[1]));
    return {ext::to_string(o), {{"order", ext::to_string(o)}}};
  }
  ext::ExternalNumber x = eval::external_of(n);
  return {x.to_string(),
          {{"value", x.to_string()}, {"center", germ_json(x.center())}, {"neutrix", x.neutrix().to_string()}}};
}

std::string pass(bool ok) { return ok ? "PASS" : "FAIL"; }

Output cmd_oracle(int index_size, int carrier, int depth, const std::string& model, bool serial, bool& failed) {
  using namespace strucmodel;
  const Execution exec = serial ? Execution::serial : Execution::parallel;
  std::ostringstream os;
  json doc;
  SweepReport los;
  PsiReport psi;
  if (!model.empty()) {
    std::ifstream in(model);
    if (!in) throw InvalidArgument("cannot open model file '" + model + "'");
    ModelFile m = parse_model(in);
    if (depth < 0 || depth > 3) throw InvalidArgument("depth must be in [0, 3]");
    FinUltrapower up = ultrapower_quotient(m.base, m.index);
    los = check_model(up, depth);
    const int k = up.class_count();
    if (k > 10) throw InvalidArgument("model has too many classes for the set-coding check");
    psi.instances = 1;
    for (std::uint32_t xm = 0; xm < (1u << k); ++xm) {
      for (std::uint32_t ym = 0; ym < (1u << k); ++ym) {
        ClassSet x(static_cast<std::size_t>(k)), y(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i) {
          x[static_cast<std::size_t>(i)] = (xm >> i) & 1;
          y[static_cast<std::size_t>(i)] = (ym >> i) & 1;
        }
        ++psi.pairs;
        if (!setop_check(up, x, y).ok()) ++psi.failures;
      }
    }
    os << "model: " << model << " (carrier " << m.base.size() << ", |I|=" << m.index.size << ", w=" << m.index.w
       << ", classes " << k << ")\n";
    doc["model"] = model;
  } else {
    SweepBounds bounds{index_size, carrier, depth};
    los = los_sweep(bounds, exec);
    psi = psi_sweep(bounds, exec);
    os << "sweep: |I| <= " << index_size << ", carrier <= " << carrier << ", depth <= " << depth << "\n";
    doc["bounds"] = {{"index_size", index_size}, {"carrier_size", carrier}, {"depth", depth}};
  }
  os << "los: " << los.instances << " instances, " << los.signatures << " formula signatures, " << los.los_checks
     << " checks, " << los.mismatches << " mismatches\n";
  os << "quotient: " << los.quotient_checks << " checks\n";
  os << "psi: " << psi.instances << " instances, " << psi.pairs << " set pairs, " << psi.failures << " failures\n";
  if (los.first_mismatch) os << "first mismatch: " << *los.first_mismatch << "\n";
  const bool ok = los.passed() && psi.passed();
  os << "result: " << pass(ok);
  doc["los"] = {{"instances", los.instances},     {"signatures", los.signatures},
                {"checks", los.los_checks},       {"quotient_checks", los.quotient_checks},
                {"mismatches", los.mismatches},   {"first_mismatch", los.first_mismatch ? json(*los.first_mismatch) : json(nullptr)}};
  doc["psi"] = {{"instances", psi.instances}, {"pairs", psi.pairs}, {"failures", psi.failures}};
  doc["passed"] = ok;
  failed = !ok;
  return {os.str(), doc};
}

// CLI11 reads a leading '-' as an option; expressions never start with a
// space otherwise, so a space keeps "-w" positional.
std::vector<std::string> protect_negative(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const auto& a : args) {
    if (!a.empty() && a[0] == '-' && a != "-h" && (a.size() == 1 || a[1] != '-')) out.push_back(" " + a);
    else out.push_back(a);
  }
  return out;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& raw_args) {
  CLI::App app{"Exact engine for definable hyperrationals, their shadows, codings, hulls, measures and external numbers",
               "nsfrag"};
  app.require_subcommand(1);
  bool json_out = false;
  app.add_flag("--json", json_out, "Structured output");

  std::string e1, e2;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a germ expression or predicate");
  eval_cmd->add_option("expr", e1, "Expression in w")->required();
  auto* shadow_cmd = app.add_subcommand("shadow", "Shadow of a germ");
  shadow_cmd->add_option("expr", e1)->required();
  auto* classify_cmd = app.add_subcommand("classify", "Classify a germ");
  classify_cmd->add_option("expr", e1)->required();
  auto* member_cmd = app.add_subcommand("member", "Membership of a germ in a coded set");
  member_cmd->add_option("set", e1)->required();
  member_cmd->add_option("expr", e2)->required();

  std::string sigma_file;
  std::optional<long> depth_opt;
  long depth_value = 0;
  auto* measure_cmd = app.add_subcommand("measure", "Lebesgue/Loeb measure of an interval-algebra set");
  measure_cmd->add_option("set", e1);
  measure_cmd->add_option("--sigma", sigma_file, "Sigma-family schema file");
  auto* depth_flag = measure_cmd->add_option("--depth", depth_value, "Certificate depth");

  auto* hull_cmd = app.add_subcommand("hull", "Nonstandard hull operations");
  hull_cmd->require_subcommand(1);
  std::string structure = "rationals";
  long first_k = 0, slope = 1, offset = 1, bound = 20;
  auto add_structure = [&](CLI::App* c) {
    c->add_option("--structure", structure, "rationals | naturals | vector")->capture_default_str();
  };
  auto* hpoint = hull_cmd->add_subcommand("point", "Canonical hull point");
  hpoint->add_option("point", e1, "Germ, or comma-separated germs for vectors")->required();
  add_structure(hpoint);
  auto* hdist = hull_cmd->add_subcommand("dist", "Hull distance");
  hdist->add_option("p", e1)->required();
  hdist->add_option("q", e2)->required();
  add_structure(hdist);
  auto* happ = hull_cmd->add_subcommand("approachable", "Approachability");
  happ->add_option("point", e1)->required();
  add_structure(happ);
  auto* hlimit = hull_cmd->add_subcommand("limit", "Limit of a Cauchy family F(k, w)");
  hlimit->add_option("family", e1, "Family in k and w")->required();
  hlimit->add_option("--first", first_k, "First index")->capture_default_str();
  hlimit->add_option("--slope", slope, "Modulus slope a in a*j + b")->capture_default_str();
  hlimit->add_option("--offset", offset, "Modulus offset b")->capture_default_str();
  hlimit->add_option("--bound", bound, "Largest tolerance exponent checked")->capture_default_str();
  add_structure(hlimit);

  auto* ext_cmd = app.add_subcommand("ext", "External-number arithmetic and order");
  ext_cmd->add_option("expr", e1)->required();

  int index_size = 3, carrier = 3, depth = 2;
  std::string model;
  bool serial = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive finite-ultrapower oracle");
  oracle_cmd->add_option("--index-size", index_size)->capture_default_str();
  oracle_cmd->add_option("--carrier-size", carrier)->capture_default_str();
  oracle_cmd->add_option("--depth", depth)->capture_default_str();
  oracle_cmd->add_option("--model", model, "Model description file");
  oracle_cmd->add_flag("--serial", serial, "Run the serial reference sweep");

  auto* repl_cmd = app.add_subcommand("repl", "Read-eval loop on standard input");

  CommandResult result;
  for (const auto& a : raw_args) {
    if (a.rfind("-", 0) == 0) continue;
    if (!app.get_subcommand_no_throw(a)) {
      result.status = Status::error;
      result.exit_code = 2;
      result.diagnostics.push_back("unknown command '" + a + "'");
      result.text = "error: unknown command '" + a + "' (try --help)";
      return result;
    }
    break;
  }
  std::vector<std::string> args = protect_negative(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    result.text = app.help();
    return result;
  } catch (const CLI::CallForAllHelp&) {
    result.text = app.help("", CLI::AppFormatMode::All);
    return result;
  } catch (const CLI::ParseError& e) {
    result.status = Status::error;
    result.exit_code = 2;
    result.diagnostics.push_back(e.what());
    result.text = json_out ? json({{"status", "error"}, {"exit_code", 2}, {"error", e.what()}}).dump(2)
                           : std::string("error: ") + e.what();
    return result;
  }
  if (*depth_flag) depth_opt = depth_value;

  try {
    Output out;
    bool failed = false;
    if (*eval_cmd) out = cmd_eval(e1);
    else if (*shadow_cmd) out = cmd_shadow(e1);
    else if (*classify_cmd) out = cmd_classify(e1);
    else if (*member_cmd) out = cmd_member(e1, e2);
    else if (*measure_cmd) {
      if (!sigma_file.empty()) out = cmd_sigma(sigma_file, depth_opt);
      else if (!e1.empty()) out = cmd_measure(e1);
      else throw InvalidArgument("measure needs a set expression or --sigma FILE");
    } else if (*hull_cmd) {
      if (*hpoint) {
        hull::Point p = parse_point(e1);
        hull::HullPoint hp = hull::hull_point(structure_named(structure, p.size()), p);
        out = {hp.to_string(), point_json(hp)};
      } else if (*hdist) {
        hull::Point p = parse_point(e1), q = parse_point(e2);
        hull::Structure s = structure_named(structure, p.size());
        Rational d = hull::hull_dist(hull::hull_point(s, p), hull::hull_point(s, q));
        out = {to_string(d), {{"distance", rational_json(d)}}};
      } else if (*happ) {
        hull::Point p = parse_point(e1);
        bool a = hull::approachable(structure_named(structure, p.size()), p);
        out = {a ? "true" : "false", {{"approachable", a}}};
      } else {
        hull::HullSequence seq;
        seq.structure = structure_named(structure, 1);
        seq.family = eval::parse_family(e1);
        seq.first_k = first_k;
        seq.modulus_slope = slope;
        seq.modulus_offset = offset;
        seq.check_bound = bound;
        hull::HullLimit lim = hull::hull_limit(seq);
        json cert = json::array();
        for (const auto& c : lim.certificate)
          cert.push_back({{"j", c.j}, {"k", c.k}, {"distance", rational_json(c.distance)}});
        json doc = point_json(lim.point);
        doc["certificate"] = cert;
        out = {lim.point.to_string(), doc};
      }
    } else if (*ext_cmd) {
      out = cmd_ext(e1);
    } else if (*oracle_cmd) {
      out = cmd_oracle(index_size, carrier, depth, model, serial, failed);
    } else if (*repl_cmd) {
      run_repl(std::cin, std::cout, json_out, isatty(STDIN_FILENO) != 0);
      return result;
    }
    if (failed) {
      result.status = Status::error;
      result.exit_code = 4;
      result.diagnostics.push_back("oracle found mismatches");
    }
    if (json_out) {
      out.doc["status"] = failed ? "error" : "ok";
      result.text = out.doc.dump(2);
    } else {
      result.text = out.text;
    }
  } catch (const ParseError& e) {
    result.status = Status::error;
    result.exit_code = 3;
    result.diagnostics.push_back(e.what());
  } catch (const DomainError& e) {
    result.status = Status::error;
    result.exit_code = 4;
    result.diagnostics.push_back(e.what());
  }
  if (result.status == Status::error && result.text.empty()) {
    const std::string& msg = result.diagnostics.front();
    result.text = json_out ? json({{"status", "error"}, {"exit_code", result.exit_code}, {"error", msg}}).dump(2)
                           : "error: " + msg;
  }
  return result;
}

namespace {

std::vector<std::string> tokenize_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false, any = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
      any = true;
    } else if (!quoted && std::isspace(static_cast<unsigned char>(c))) {
      if (any) out.push_back(cur);
      cur.clear();
      any = false;
    } else {
      cur += c;
      any = true;
    }
  }
  if (any) out.push_back(cur);
  return out;
}

}  // namespace

int run_repl(std::istream& in, std::ostream& out, bool json, bool prompt) {
  static const std::vector<std::string> single = {"eval", "shadow", "classify", "ext"};
  static const std::vector<std::string> commands = {"eval",   "shadow", "classify", "member",
                                                    "measure", "hull",  "ext",      "oracle"};
  std::string line;
  while (true) {
    if (prompt) out << "> " << std::flush;
    if (!std::getline(in, line)) break;
    auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos) continue;
    line = line.substr(start);
    if (line == "quit" || line == "exit") break;
    std::string head = line.substr(0, line.find_first_of(" \t"));
    std::vector<std::string> args;
    if (std::find(single.begin(), single.end(), head) != single.end()) {
      std::string rest = line.size() > head.size() ? line.substr(head.size() + 1) : "";
      args = {head, rest};
    } else if (head == "measure" && line.find("--") == std::string::npos) {
      args = {head, line.size() > head.size() ? line.substr(head.size() + 1) : ""};
    } else if (std::find(commands.begin(), commands.end(), head) != commands.end()) {
      args = tokenize_line(line);
    } else {
      args = {"eval", line};
    }
    if (json) args.insert(args.begin(), "--json");
    out << run_command(args).text << "\n";
  }
  return 0;
}

}  // namespace nsfrag::cli
