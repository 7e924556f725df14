// kinv: command-line front end for the knot invariant engine.
//
// Exit status: 0 when every requested verdict passes, 1 for a failed
// verdict or an internal inconsistency (reported with its step), 2 for
// input errors (unknown knot, unparsable braid or table, bad flags).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kinv/mmr.hpp"

namespace {

using namespace kinv;

struct RunConfig {
  std::string command;
  std::string knot;
  std::string braid;
  int order = 8;
  int n = 2;
  int sigma = -1;
  std::string format = "text";
  std::string out;
  std::vector<std::string> suites;
};

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Names the pipeline step in flight, for exit-1 diagnostics.
struct StepError : std::runtime_error {
  StepError(const std::string& step, const std::string& what) : std::runtime_error(step + ": " + what) {}
};

template <class F>
auto step(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const DiagramError&) {
    throw;
  } catch (const UnknownKnot&) {
    throw;
  } catch (const StepError&) {
    throw;
  } catch (const std::exception& e) {
    throw StepError(name, e.what());
  }
}

struct Knot {
  std::string name;
  BraidWord braid;
};

Knot resolve(const RunConfig& cfg) {
  if (cfg.knot.empty() == cfg.braid.empty()) throw InputError("give exactly one of --knot or --braid");
  if (!cfg.braid.empty()) return {"braid", parse_braid(cfg.braid)};
  KnotTable table;
  try {
    table = KnotTable::load_default();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  return {cfg.knot, table.lookup(cfg.knot)};
}

json header(const char* kind, const Knot& k, int sigma) {
  return {{"schema", kSchemaVersion},
          {"kind", kind},
          {"knot", k.name},
          {"braid", to_string(k.braid)},
          {"conventions", conventions_json(sigma)}};
}

struct Output {
  std::string text;
  json doc;
  bool passed = true;
};

Output run_jones(const RunConfig& cfg) {
  Knot k = resolve(cfg);
  LongKnotDiagram dg = braid_to_long_knot(k.braid);
  SPoly j = step("eval_vn", [&] { return eval_vn(dg, cfg.n); });
  Output o;
  o.text = j.to_string() + "\n";
  o.doc = header("jones", k, cfg.sigma);
  o.doc["n"] = cfg.n;
  o.doc["variable"] = "s";
  o.doc["polynomial"] = to_json(j);
  o.doc["text"] = j.to_string();
  return o;
}

Output run_verma(const RunConfig& cfg) {
  Knot k = resolve(cfg);
  LongKnotDiagram dg = braid_to_long_knot(k.braid);
  BivariateJones J = step("colored_jones_function", [&] { return colored_jones_function(dg, cfg.sigma, cfg.order, k.name); });
  Output o;
  std::ostringstream s;
  s << "knot " << k.name << " " << to_string(k.braid) << "\n";
  for (int i = 0; i <= cfg.order; ++i) s << "h^" << i << ": " << J.j.coeff(i).to_string() << "\n";
  o.text = s.str();
  o.doc = header("verma", k, cfg.sigma);
  o.doc["order"] = cfg.order;
  o.doc["series"] = to_json(J.j);
  return o;
}

Output run_mmr(const RunConfig& cfg) {
  Knot k = resolve(cfg);
  MMRReport r = step("verify_mmr_equality", [&] { return verify_mmr_equality(k.name, k.braid, cfg.order); });
  Output o;
  std::ostringstream s;
  s << "knot " << r.knot << " " << to_string(r.braid) << "\n"
    << "order " << r.order << "\n"
    << "alexander " << r.delta.to_string() << "\n"
    << "rho10 " << r.rho10.poly.to_string() << "\n"
    << "p1 " << r.p1.poly.to_string() << "\n"
    << "rho11 " << r.rho11.to_string() << "\n";
  for (const auto& v : r.verdicts)
    s << "verdict " << v.name << ": " << (v.passed ? "pass" : "FAIL") << (v.detail.empty() ? "" : " (" + v.detail + ")")
      << "\n";
  o.text = s.str();
  o.doc = to_json(r);
  o.passed = r.all_passed();
  return o;
}

// A pass matrix: one row per subject, one column per check.
struct Matrix {
  std::string suite;
  std::vector<std::string> columns;
  std::vector<std::pair<std::string, std::vector<bool>>> rows;
  bool passed() const {
    for (const auto& [_, cells] : rows)
      for (bool c : cells)
        if (!c) return false;
    return true;
  }
};

Matrix suite_xc(int order) {
  Matrix m{"xc", {"conjugation_invariance", "pivot_trace", "kink_cancellation", "yang_baxter"}, {}};
  d::Algebra alg(order);
  auto row = [&](const std::string& name, const d::Tensor& r) {
    d::XCReport x = d::verify_xc(alg, r, alg.kappa());
    m.rows.push_back({name, {x.conjugation_invariance, x.pivot_trace, x.kink_cancellation, x.yang_baxter}});
  };
  row("R", alg.R());
  row("twisted_kappa", alg.twist(alg.R(), alg.kappa()));
  row("twisted_A", alg.twist(alg.R(), alg.A()));
  row("twisted_B", alg.twist(alg.R(), alg.B()));
  return m;
}

Matrix suite_twist(int order) {
  Matrix m{"twist", {"kappa", "A"}, {}};
  d::Algebra alg(order);
  for (const char* b : {"[1]", "[1,2]", "[1,1,2]"}) {
    BraidWord w = parse_braid(b);
    m.rows.push_back({"conjugation " + to_string(w),
                      {d::braid_conjugation_check(alg, w, alg.kappa()), d::braid_conjugation_check(alg, w, alg.A())}});
  }
  for (const char* b : {"[1,1,1]", "[1,-2,1,-2]"}) {
    LongKnotDiagram dg = braid_to_long_knot(parse_braid(b));
    d::Element z = d::compute_z_algebra(alg, dg);
    std::vector<bool> cells;
    for (const auto& phi : {alg.kappa(), alg.A()}) cells.push_back((d::compute_z_twisted(alg, dg, phi) - z).vanishes_through(order));
    m.rows.push_back({"long_knot " + std::string(b), cells});
  }
  return m;
}

Matrix suite_invariants(int order) {
  Matrix m{"invariants", {"alexander", "verma", "jones_n2", "jones_n3"}, {}};
  KnotTable table = KnotTable::load_default();
  for (const auto& name : table.names()) {
    auto ps = table.presentations(name);
    auto d0 = alexander_poly(ps[0]);
    auto dg0 = braid_to_long_knot(ps[0]);
    auto j0 = eval_verma(dg0, -1, order);
    auto v2 = eval_vn(dg0, 2), v3 = eval_vn(dg0, 3);
    std::vector<bool> cells(4, true);
    for (std::size_t p = 1; p < ps.size(); ++p) {
      auto dg = braid_to_long_knot(ps[p]);
      cells[0] = cells[0] && alexander_poly(ps[p]) == d0;
      cells[1] = cells[1] && eval_verma(dg, -1, order).equal_through(j0, order);
      cells[2] = cells[2] && eval_vn(dg, 2) == v2;
      cells[3] = cells[3] && eval_vn(dg, 3) == v3;
    }
    m.rows.push_back({name, cells});
  }
  return m;
}

Output run_verify(const RunConfig& cfg) {
  static const std::vector<std::string> known{"invariants", "twist", "xc"};
  std::vector<std::string> suites = cfg.suites.empty() ? known : cfg.suites;
  std::sort(suites.begin(), suites.end());
  suites.erase(std::unique(suites.begin(), suites.end()), suites.end());
  for (const auto& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end()) throw InputError("unknown suite '" + s + "'");

  Output o;
  std::ostringstream s;
  json jsuites = json::array();
  for (const auto& name : suites) {
    Matrix m = step(name.c_str(), [&] {
      if (name == "xc") return suite_xc(cfg.order);
      if (name == "twist") return suite_twist(cfg.order);
      return suite_invariants(cfg.order);
    });
    s << "suite " << m.suite << " (order " << cfg.order << ")\n";
    json rows = json::array();
    for (const auto& [row, cells] : m.rows) {
      s << "  " << row << ":";
      json jr{{"subject", row}};
      for (std::size_t c = 0; c < cells.size(); ++c) {
        s << " " << m.columns[c] << "=" << (cells[c] ? "pass" : "FAIL");
        jr[m.columns[c]] = static_cast<bool>(cells[c]);
      }
      s << "\n";
      rows.push_back(jr);
    }
    jsuites.push_back({{"suite", m.suite}, {"rows", rows}, {"passed", m.passed()}});
    o.passed = o.passed && m.passed();
  }
  s << (o.passed ? "all pass" : "FAILURES") << "\n";
  o.text = s.str();
  o.doc = {{"schema", kSchemaVersion},
           {"kind", "verify"},
           {"order", cfg.order},
           {"conventions", conventions_json(cfg.sigma)},
           {"suites", jsuites},
           {"all_passed", o.passed}};
  return o;
}

Output run_table(const RunConfig&) {
  KnotTable table;
  try {
    table = KnotTable::load_default();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
  Output o;
  std::ostringstream s;
  json entries = json::array();
  for (const auto& e : table.entries()) {
    s << e.name << ": " << to_string(e.braid) << "\n";
    entries.push_back({{"name", e.name}, {"braid", to_string(e.braid)}});
  }
  o.text = s.str();
  o.doc = {{"schema", kSchemaVersion}, {"kind", "table"}, {"path", KnotTable::default_path()}, {"entries", entries}};
  return o;
}

void emit(const RunConfig& cfg, const Output& o) {
  std::string body = cfg.format == "json" ? o.doc.dump(2) + "\n" : o.text;
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::ofstream f(cfg.out);
  if (!f) throw InputError("cannot write " + cfg.out);
  f << body;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Universal sl2 knot invariant and its large-color expansion"};
  app.require_subcommand(1);

  auto knot_flags = [&](CLI::App* sub) {
    sub->add_option("--knot", cfg.knot, "Knot name from the table");
    sub->add_option("--braid", cfg.braid, "Braid word, e.g. \"[1,1,1]\"");
  };
  auto format_flags = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--out", cfg.out, "Write the report to this file");
    sub->add_option("--sigma", cfg.sigma, "Verma module sign")->check(CLI::IsMember({-1, 1}));
  };
  auto order_flag = [&](CLI::App* sub) { sub->add_option("--order", cfg.order, "Truncation order in h")->check(CLI::NonNegativeNumber); };

  auto* jones = app.add_subcommand("jones", "Colored Jones polynomial of the n-dimensional module");
  knot_flags(jones);
  format_flags(jones);
  jones->add_option("--n", cfg.n, "Module dimension")->check(CLI::PositiveNumber);
  auto* verma = app.add_subcommand("verma", "Colored Jones function J(lambda, h) through h^order");
  knot_flags(verma);
  format_flags(verma);
  order_flag(verma);
  auto* mmr = app.add_subcommand("mmr", "Extract rho10 and P1 and compare");
  knot_flags(mmr);
  format_flags(mmr);
  order_flag(mmr);
  auto* verify = app.add_subcommand("verify", "Run the property suites (xc, twist, invariants)");
  format_flags(verify);
  order_flag(verify);
  verify->add_option("--suite", cfg.suites, "Suite name; repeatable");
  auto* table = app.add_subcommand("table", "List the bundled knots");
  format_flags(table);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    Output o;
    if (cfg.command == "jones") o = run_jones(cfg);
    else if (cfg.command == "verma") o = run_verma(cfg);
    else if (cfg.command == "mmr") o = run_mmr(cfg);
    else if (cfg.command == "verify") o = run_verify(cfg);
    else o = run_table(cfg);
    emit(cfg, o);
    return o.passed ? 0 : 1;
  } catch (const UnknownKnot& e) {
    std::cerr << "kinv: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "kinv: parse error: " << e.what() << "\n";
    return 2;
  } catch (const DiagramError& e) {
    std::cerr << "kinv: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "kinv: " << e.what() << "\n";
    return 2;
  } catch (const StepError& e) {
    std::cerr << "kinv: internal inconsistency in " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "kinv: internal error: " << e.what() << "\n";
    return 1;
  }
}
