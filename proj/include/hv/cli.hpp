#ifndef HV_CLI_HPP
#define HV_CLI_HPP

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hv/errors.hpp"
#include "hv/modules.hpp"
#include "hv/solver.hpp"
#include "hv/syntax.hpp"

namespace hv::cli {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kInvalidPsi = 2,
  kBoundExhausted = 3,
  kVerificationFailed = 4,
};

enum class OutputMode { Text, Machine };

struct Config {
  // psi entries beyond L1, L2, I1 are kept so make_psi can reject nonzero ones
  std::map<Generator, Rational> psi{{Generator::L(1), Rational(2)},
                                    {Generator::L(2), Rational(3)},
                                    {Generator::I(1), Rational(5)}};
  CentralCharacter xi;
  Bounds bounds;
  ModuleKind module = ModuleKind::Universal;
  OutputMode output = OutputMode::Text;

  WhittakerMap whittaker_map() const { return make_psi(psi); }
  ModuleSpec spec() const {
    const WhittakerMap p = whittaker_map();
    return module == ModuleKind::Universal ? ModuleSpec::universal(p) : ModuleSpec::reduced(p, xi);
  }
};

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw UsageError("rationals must be strings \"p/q\" or integers, got " + j.dump());
}

/// "L1", "L[1]", "I2", ... -> generator.
inline Generator generator_from_key(const std::string& key) {
  if (key.size() < 2 || (key[0] != 'L' && key[0] != 'I'))
    throw UsageError("bad psi key '" + key + "'");
  std::string num = key.substr(1);
  if (num.front() == '[' && num.back() == ']') num = num.substr(1, num.size() - 2);
  int k = 0;
  try {
    std::size_t used = 0;
    k = std::stoi(num, &used);
    if (used != num.size()) throw std::invalid_argument(num);
  } catch (const std::exception&) {
    throw UsageError("bad psi key '" + key + "'");
  }
  return key[0] == 'L' ? Generator::L(k) : Generator::I(k);
}

inline ModuleKind module_from_string(const std::string& s) {
  if (s == "universal") return ModuleKind::Universal;
  if (s == "reduced") return ModuleKind::Reduced;
  throw UsageError("module must be 'universal' or 'reduced', got '" + s + "'");
}

inline void apply_config_json(Config& cfg, const json& j) {
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  if (j.contains("psi")) {
    cfg.psi.clear();
    for (const auto& [key, value] : j.at("psi").items())
      cfg.psi[generator_from_key(key)] = rational_from_json(value);
  }
  if (j.contains("xi")) {
    const json& xs = j.at("xi");
    if (!xs.is_array() || xs.size() != 4) throw UsageError("xi must be an array of 4 rationals");
    for (std::size_t i = 0; i < 4; ++i) cfg.xi.xi[i] = rational_from_json(xs[i]);
  }
  if (j.contains("bounds")) {
    const json& b = j.at("bounds");
    auto get = [&b](const char* key, int& slot) {
      if (!b.contains(key)) return;
      if (!b.at(key).is_number_integer()) throw UsageError(std::string("bound '") + key + "' must be an integer");
      slot = b.at(key).get<int>();
    };
    get("degree", cfg.bounds.degree);
    get("l0", cfg.bounds.l0);
    get("zdeg", cfg.bounds.zdeg);
    get("genIndex", cfg.bounds.gen_index);
  }
  if (j.contains("module")) cfg.module = module_from_string(j.at("module").get<std::string>());
  if (j.contains("output")) {
    const std::string o = j.at("output").get<std::string>();
    if (o == "machine") cfg.output = OutputMode::Machine;
    else if (o == "text") cfg.output = OutputMode::Text;
    else throw UsageError("output must be 'text' or 'machine'");
  }
  cfg.bounds.validate();
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("config '" + path + "': " + e.what());
  }
  Config cfg;
  apply_config_json(cfg, j);
  return cfg;
}

inline std::vector<Rational> parse_rational_list(const std::string& text, std::size_t expected,
                                                 const char* what) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Rational::parse(item));
  if (out.size() != expected)
    throw UsageError(std::string(what) + " needs " + std::to_string(expected) + " comma-separated rationals");
  return out;
}

template <class Element>
json terms_json(const Element& x) {
  json terms = json::array();
  for (const auto& [c, body] : display_terms(x)) terms.push_back({c.str(), body.empty() ? "1" : body});
  return {{"terms", terms}, {"text", format_element(x)}};
}

/// Runs one command line (without the program name). Returns the exit code.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Exact computations in the twisted Heisenberg-Virasoro algebra and its Whittaker modules",
               "hv"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, module_name, psi_text, xi_text, lemma;
  std::optional<int> degree, l0, zdeg, gen_index;
  bool machine = false;
  LemmaRanges ranges;
  int cap = 20;

  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--module", module_name, "universal or reduced")->check(CLI::IsMember({"universal", "reduced"}));
  app.add_option("--degree", degree, "cap on |lambda+mu|");
  app.add_option("--l0", l0, "cap on lambda(0)");
  app.add_option("--zdeg", zdeg, "cap on central degree (universal module)");
  app.add_option("--gen-index", gen_index, "cap on operator index for probes");
  app.add_option("--psi", psi_text, "psi(L1),psi(L2),psi(I1)");
  app.add_option("--xi", xi_text, "xi0,xi1,xi2,xi3");
  app.add_flag("--json", machine, "machine-readable JSON output");
  app.add_option("--lemma", lemma, "lemma id for verify");
  app.add_option("--a-max", ranges.a_max, "verify: largest exponent a");
  app.add_option("--k-max", ranges.k_max, "verify: largest index k");
  app.add_option("--m-max", ranges.m_max, "verify: largest operator index m");
  app.add_option("--cap", cap, "nilpotency: largest power tried");

  std::vector<std::string> operands;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("operands", operands, "element arguments ('-' reads stdin)");
    return s;
  };
  sub("bracket", "Lie bracket of two algebra elements");
  sub("normalize", "PBW normal form of a product");
  sub("act", "action of an algebra element on a module vector");
  sub("defect", "g.v - psi(g) v");
  sub("solve", "basis of Whittaker vectors within the bounds");
  sub("descend", "reduce a reduced-module vector to a multiple of w");
  sub("nilpotency", "nilpotency index of a positive generator under the dot action");
  sub("member", "bounded submodule membership probe: TARGET GEN...");
  sub("verify", "check a lemma over a parameter range");
  sub("basis", "enumerate module basis indices within the bounds");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  const std::string command = app.get_subcommands().front()->get_name();

  try {
    Config cfg = config_path.empty() ? Config{} : load_config(config_path);
    if (!module_name.empty()) cfg.module = module_from_string(module_name);
    if (degree) cfg.bounds.degree = *degree;
    if (l0) cfg.bounds.l0 = *l0;
    if (zdeg) cfg.bounds.zdeg = *zdeg;
    if (gen_index) cfg.bounds.gen_index = *gen_index;
    if (!psi_text.empty()) {
      auto p = parse_rational_list(psi_text, 3, "--psi");
      cfg.psi = {{Generator::L(1), p[0]}, {Generator::L(2), p[1]}, {Generator::I(1), p[2]}};
    }
    if (!xi_text.empty()) {
      auto x = parse_rational_list(xi_text, 4, "--xi");
      for (std::size_t i = 0; i < 4; ++i) cfg.xi.xi[i] = x[i];
    }
    if (machine) cfg.output = OutputMode::Machine;
    cfg.bounds.validate();
    const bool json_out = cfg.output == OutputMode::Machine;

    std::optional<std::string> stdin_text;
    auto operand = [&](std::size_t i) -> std::string {
      if (operands[i] != "-") return operands[i];
      if (!stdin_text) stdin_text.emplace(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
      return *stdin_text;
    };
    auto need = [&](std::size_t n, const char* usage) {
      if (operands.size() != n) throw UsageError(std::string("usage: hv ") + command + " " + usage);
    };

    json result;
    std::string text;
    int code = kOk;

    if (command == "bracket") {
      need(2, "X Y");
      const LieElement x = to_lie(parse_element(operand(0)));
      const LieElement y = to_lie(parse_element(operand(1)));
      const LieElement r = bracket(x, y);
      result = terms_json(r);
      text = format_element(r);
    } else if (command == "normalize") {
      need(1, "EXPR");
      const UEAElement u = to_uea(parse_element(operand(0)));
      result = terms_json(u);
      text = format_element(u);
    } else if (command == "act" || command == "defect" || command == "nilpotency") {
      need(2, command == "act" ? "U V" : "G V");
      const ParsedElement op = parse_element(operand(0));
      WhittakerModule module(cfg.spec());
      const ModuleVector v = to_module_vector(parse_element(operand(1)), module);
      if (command == "act") {
        const ModuleVector r = module.act_uea(to_uea(op), v);
        result = terms_json(r);
        text = format_element(r);
      } else {
        const LieElement x = to_lie(op);
        if (x.terms().size() != 1 || !x.terms().begin()->second.is_one())
          throw UsageError(command + " takes a single generator");
        const Generator g = x.terms().begin()->first;
        if (command == "defect") {
          const ModuleVector r = module.defect(g, v);
          result = terms_json(r);
          text = format_element(r);
        } else {
          const int k = nilpotency_index(module, g, v, cap);
          result = {{"index", k}};
          text = "nilpotency index " + std::to_string(k);
        }
      }
    } else if (command == "solve") {
      need(0, "");
      const std::vector<ModuleVector> sol = whittaker_solve(cfg.spec(), cfg.bounds);
      json basis = json::array();
      text = "dimension " + std::to_string(sol.size()) + ":";
      for (std::size_t i = 0; i < sol.size(); ++i) {
        basis.push_back(terms_json(sol[i]));
        text += (i == 0 ? " " : ", ") + format_element(sol[i]);
      }
      result = {{"dimension", sol.size()}, {"basis", basis}};
    } else if (command == "descend") {
      need(1, "V");
      WhittakerModule module(cfg.spec());
      const ModuleVector v = to_module_vector(parse_element(operand(0)), module);
      const DescentResult d = descend(module, v);
      json trace = json::array();
      std::string trace_text;
      for (Generator g : d.trace) {
        trace.push_back(g.str());
        trace_text += (trace_text.empty() ? "" : " ") + g.str();
      }
      const std::string final_text = format_element(d.coefficient * module.cyclic());
      result = {{"trace", trace}, {"coefficient", d.coefficient.str()}, {"text", final_text}};
      text = "trace: " + (trace_text.empty() ? std::string("(none)") : trace_text) + "\nresult: " + final_text;
    } else if (command == "member") {
      if (operands.size() < 2) throw UsageError("usage: hv member TARGET GEN...");
      WhittakerModule module(cfg.spec());
      const ModuleVector target = to_module_vector(parse_element(operand(0)), module);
      std::vector<ModuleVector> gens;
      for (std::size_t i = 1; i < operands.size(); ++i)
        gens.push_back(to_module_vector(parse_element(operand(i)), module));
      const MembershipResult m = submodule_membership(module, target, gens, cfg.bounds);
      json witness = json::array();
      std::string witness_text;
      for (const auto& [c, v] : m.witness) {
        witness.push_back({{"coefficient", c.str()}, {"vector", terms_json(v)}});
        witness_text += (witness_text.empty() ? "" : " + ") + std::string("(") + c.str() + ")*(" +
                        format_element(v) + ")";
      }
      const std::string status = m.member ? "member" : "unknownWithinBounds";
      result = {{"status", status}, {"spanDimension", m.span_dimension}, {"witness", witness}};
      text = status + " (span dimension " + std::to_string(m.span_dimension) + ")";
      if (m.member) text += "\nwitness: " + (witness_text.empty() ? std::string("0") : witness_text);
      if (!m.member) code = kBoundExhausted;
    } else if (command == "verify") {
      need(0, "--lemma ID");
      if (lemma.empty()) throw UsageError("verify needs --lemma");
      ranges.degree = cfg.bounds.degree;
      ranges.l0 = cfg.bounds.l0;
      const Report r = verify_lemma(lemma, ranges, cfg.whittaker_map());
      json failures = json::array();
      text = "lemma " + lemma + ": " + std::to_string(r.instances) + " instances, " +
             std::to_string(r.failures.size()) + " failures";
      for (const auto& f : r.failures) {
        failures.push_back({{"parameters", f.parameters}, {"expected", f.expected}, {"got", f.got}});
        text += "\n  FAIL " + f.parameters + ": expected " + f.expected + ", got " + f.got;
      }
      result = {{"lemma", lemma}, {"instances", r.instances}, {"failures", failures}};
      if (!r.passed()) code = kVerificationFailed;
    } else if (command == "basis") {
      need(0, "");
      const std::vector<BasisIndex> basis = basis_enumerate(cfg.spec(), cfg.bounds);
      json idx = json::array();
      text = std::to_string(basis.size()) + " basis vectors";
      for (const auto& b : basis) {
        idx.push_back(format_index(b));
        text += "\n" + format_index(b);
      }
      result = {{"count", basis.size()}, {"indices", idx}};
    }

    if (json_out) {
      json doc = {{"schemaVersion", kSchemaVersion}, {"command", command}, {"result", result}};
      out << doc.dump(2) << "\n";
    } else {
      out << text << "\n";
    }
    return code;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidPsiError& e) {
    err << "invalid psi: " << e.what() << "\n";
    return kInvalidPsi;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BoundExhausted& e) {
    err << "bound exhausted: " << e.what() << "\n";
    return kBoundExhausted;
  } catch (const TheoremViolation& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace hv::cli

#endif  // HV_CLI_HPP
