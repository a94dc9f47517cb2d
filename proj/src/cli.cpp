#include "logdef/cli.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "logdef/oracle.hpp"
#include "logdef/paths.hpp"

namespace logdef {

namespace fs = std::filesystem;

std::string csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << "\n";
  char buf[40];
  for (const auto& r : rows) {
    for (size_t i = 0; i < r.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", r[i]);
      os << (i ? "," : "") << buf;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

int decision_exit(Decision d) { return d == Decision::Yes ? 0 : d == Decision::No ? 1 : 2; }

std::vector<std::vector<double>> theta1_curve(const FourierScalar& f, int G = 64) {
  std::vector<std::vector<double>> rows;
  for (int j = 0; j < G; ++j) {
    double t = 2 * M_PI * j / G;
    rows.push_back({t, evaluate(f, t, 0.0)});
  }
  return rows;
}

json path_json(const std::vector<double>& s_values, const std::vector<Section>& path) {
  json a = json::array();
  for (size_t i = 0; i < path.size(); ++i) {
    json e = section_to_json(path[i]);
    e["s"] = s_values[i];
    a.push_back(e);
  }
  return a;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidInput, "bad number in list: \"" + tok + "\"");
    }
  }
  if (v.empty()) throw Error(ErrorKind::InvalidInput, "empty list");
  return v;
}

// least-squares slope of log y against log x
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = double(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    double a = std::log(x[i]), b = std::log(y[i]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

struct Ctx {
  Scenario sc;
  CommandResult out;
};

void cmd_check_mc(Ctx& c, const std::string& name) {
  const Section& s = c.sc.section(name);
  McResidual r = mc_residual(s, c.sc.model);
  bool ok = is_mc(s, c.sc.model, c.sc.tol);
  c.out.report = {{"section", name},
                  {"residual_norm", r.norm2},
                  {"scale", mc_scale(s)},
                  {"tolerance", c.sc.tol.residual},
                  {"maurer_cartan", ok},
                  {"residual", table_to_json(r.r2)}};
  c.out.exit_code = ok ? 0 : 1;
}

void cmd_first_order(Ctx& c, const std::string& name) {
  const Section& s = c.sc.section(name);
  FoliatedOneForm d = d_twisted(s.f, c.sc.model.gamma, leafwise(c.sc.model.foliation));
  double nd = ck_norm(d.coeff, 0);
  bool ok = nd < c.sc.tol.residual * (1.0 + ck_norm(s.f, 0));
  c.out.report = {{"section", name}, {"twisted_differential_norm", nd}, {"first_order", ok}};
  c.out.exit_code = ok ? 0 : 1;
}

void cmd_kuranishi(Ctx& c, const std::string& name) {
  KuranishiReport r = kuranishi(c.sc.section(name), c.sc.model, c.sc.tol);
  c.out.report = kuranishi_to_json(r);
  c.out.report["section"] = name;
  if (r.obstruction_integral) c.out.curves["obstruction_integral"] = csv({"theta1", "value"}, theta1_curve(*r.obstruction_integral));
  c.out.exit_code = r.verdict == KuranishiVerdict::Unobstructed ? 0 : r.verdict == KuranishiVerdict::Obstructed ? 1 : 2;
}

void cmd_prolong(Ctx& c, const std::string& name, const std::string& mode, int order, const std::string& samples) {
  const Section& s = c.sc.section(name);
  std::vector<std::vector<double>> rows;
  if (mode == "smooth") {
    std::vector<double> sv = parse_list(samples);
    auto path = prolong_smooth(s, c.sc.model, sv, c.sc.tol);
    json res = json::array();
    bool ok = true;
    for (size_t i = 0; i < path.size(); ++i) {
      double r = mc_residual(path[i], c.sc.model).norm2;
      ok = ok && is_mc(path[i], c.sc.model, c.sc.tol);
      rows.push_back({sv[i], r});
      res.push_back(r);
    }
    c.out.report = {{"mode", "smooth"}, {"path", path_json(sv, path)}, {"residuals", res}, {"all_mc", ok}};
    c.out.exit_code = ok ? 0 : 1;
  } else if (mode == "formal") {
    auto terms = prolong_formal(s, c.sc.model, order, c.sc.tol);
    json tj = json::array();
    for (const auto& t : terms) tj.push_back(section_to_json(t));
    std::vector<double> eps, res;
    for (int j = 1; j <= 8; ++j) {
      double e = std::ldexp(1.0, -j);
      eps.push_back(e);
      res.push_back(mc_residual(evaluate_series(terms, e), c.sc.model).norm2);
      rows.push_back({e, res.back()});
    }
    bool fit = true;
    for (double r : res) fit = fit && r > 0;
    c.out.report = {{"mode", "formal"}, {"order", order}, {"terms", tj}, {"eps", eps}, {"residuals", res}};
    c.out.report["loglog_slope"] = fit ? json(loglog_slope(eps, res)) : json(nullptr);
    c.out.exit_code = 0;
  } else {
    throw Error(ErrorKind::InvalidInput, "--mode must be smooth or formal");
  }
  c.out.curves["prolong_residuals"] = csv({mode == "smooth" ? "s" : "eps", "residual"}, rows);
}

void cmd_gauge(Ctx& c, const std::string& name, const std::string& g_file, double time) {
  const Section& s = c.sc.section(name);
  json gj = load_json(g_file);
  if (gj.is_object() && gj.contains("g")) gj = gj["g"];
  GaugePath path;
  path.constant = table_from_json(gj, c.sc.truncation);
  GaugeResult g = gauge_flow(s, path, time, c.sc.model, c.sc.tol);
  double before = mc_residual(s, c.sc.model).norm2, after = mc_residual(g.section, c.sc.model).norm2;
  c.out.report = {{"section", section_to_json(g.section)},
                  {"time", time},
                  {"residual_before", before},
                  {"residual_after", after},
                  {"exp_order", g.exp.order},
                  {"exp_tail_bound", g.exp.tail_bound},
                  {"projection_error", g.exp.projection_error}};
  bool ok = is_mc(g.section, c.sc.model, c.sc.tol) || !is_mc(s, c.sc.model, c.sc.tol);
  c.out.exit_code = ok ? 0 : 1;
}

void cmd_equiv(Ctx& c, const std::string& a, const std::string& b) {
  EquivReport r = hamiltonian_equivalent(c.sc.section(a), c.sc.section(b), c.sc.model, c.sc.tol);
  c.out.report = {{"a", a}, {"b", b}, {"decision", decision_name(r.decision)}, {"reason", r.reason}};
  if (r.G) c.out.report["G"] = table_to_json(*r.G);
  c.out.exit_code = decision_exit(r.decision);
}

void cmd_cohomology(Ctx& c, bool h0, const std::string& form) {
  if (h0) {
    H0Basis b = h0_twisted(c.sc.model, c.sc.tol);
    c.out.report = h0_to_json(b);
    std::vector<std::vector<double>> rows;
    for (const auto& a : b.zero_set) rows.push_back({a.start, a.end});
    c.out.curves["zero_set"] = csv({"theta_start", "theta_end"}, rows);
    c.out.exit_code = 0;
    return;
  }
  if (form.empty()) throw Error(ErrorKind::InvalidInput, "cohomology needs --h0 or --h1-class <form>");
  ClassReport r = h1_twisted_is_zero_class({c.sc.function(form)}, c.sc.model, c.sc.tol);
  c.out.report = class_report_to_json(r);
  c.out.report["form"] = form;
  c.out.exit_code = decision_exit(r.decision);
}

void cmd_rigidity(Ctx& c) {
  TangentDims d = poisson_tangent_dims(c.sc.model, c.sc.truncation, c.sc.tol);
  c.out.report = {{"first", d.first}, {"h0", d.h0}, {"gamma_in_image", d.gamma_in_image}, {"note", d.note},
                  {"band", {c.sc.truncation.N, c.sc.truncation.M}}};
  c.out.exit_code = 0;
}

LambdaValue scenario_lambda(const Scenario& sc) {
  if (sc.model.foliation.is_kronecker() && sc.model.foliation.lambda->is_liouville_mode())
    return *sc.model.foliation.lambda;
  return LambdaValue::liouville_constant();
}

void cmd_liouville(Ctx& c, int pmax) {
  LiouvilleCertificate cert = liouville_pairs(scenario_lambda(c.sc), pmax);
  std::string why;
  bool ok = verify_certificate(cert, &why);
  c.out.report = certificate_to_json(cert);
  c.out.report["verified"] = ok;
  if (!ok) c.out.report["why"] = why;
  c.out.exit_code = ok ? 0 : 1;
}

void cmd_counterexample(Ctx& c, const std::string& k_text, int pmax) {
  std::vector<int> ks;
  for (double k : parse_list(k_text)) ks.push_back(int(k));
  double C = c.sc.model.foliation.is_kronecker() ? c.sc.model.C : 1.0;
  CounterexampleBundle b = build_counterexample(liouville_pairs(scenario_lambda(c.sc), pmax), ks, C);
  json entries = json::array();
  for (const auto& e : b.entries)
    entries.push_back({{"p", e.p}, {"n", e.n.get_str()}, {"m", e.m.get_str()}, {"log10_divisor", e.log10_divisor}});
  json norms = json::array();
  std::vector<std::vector<double>> rows;
  for (const auto& r : b.norms) {
    norms.push_back({{"k", r.k}, {"l", r.l}, {"log10_norm", r.log10_norm}, {"norm", r.norm}});
    rows.push_back({double(r.k), double(r.l), r.norm});
  }
  json growth = json::array();
  for (const auto& g : b.primitive_magnitude) growth.push_back(g.get_str());
  c.out.report = {{"certificate", certificate_to_json(b.cert)},
                  {"entries", entries},
                  {"k", ks},
                  {"residual_support", b.residual_support},
                  {"all_residuals_formally_exact", b.all_residuals_formally_exact},
                  {"primitive_magnitude", growth},
                  {"growth_constant", b.growth_constant},
                  {"norms", norms}};
  c.out.curves["norms"] = csv({"k", "l", "norm"}, rows);
  c.out.exit_code = b.all_residuals_formally_exact ? 0 : 1;
}

json oracle_json(const OracleReport& r) {
  json mm = json::array();
  for (const auto& m : r.mismatches)
    mm.push_back({{"where", m.where}, {"n", m.n}, {"m", m.m}, {"got", m.got}, {"want", m.want}});
  return {{"ok", r.ok}, {"checked", r.checked}, {"mismatches", mm}, {"seconds", r.seconds}};
}

SectionT<Exact> exact_section(const Section& s) { return {{to_exact(s.alpha.coeff)}, to_exact(s.f)}; }

void cmd_oracle(Ctx& c, const std::string& what) {
  const ModelT<Exact> m = c.sc.model.exact();
  if (what == "jacobi") {
    try {
      ModelBivector mb = assemble_model(m);
      c.out.report = {{"jacobi", true}, {"pi", mb.pi.str()}};
      c.out.exit_code = 0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::JacobiFails) throw;
      c.out.report = {{"jacobi", false}, {"trivector", e.what()}};
      c.out.exit_code = 1;
    }
    return;
  }
  if (what == "verify-mc") {
    json per;
    bool ok = true;
    for (const auto& [name, s] : c.sc.sections) {
      OracleReport r = verify_mc(m, exact_section(s));
      per[name] = oracle_json(r);
      ok = ok && r.ok;
    }
    c.out.report = {{"sections", per}, {"ok", ok}};
    c.out.exit_code = ok ? 0 : 1;
    return;
  }
  if (what == "linfty") {
    auto gens = band11_generators();
    OracleReport low = verify_low_brackets(m, gens);
    OracleReport l3 = verify_higher_vanish(m, 3, gens);
    OracleReport l4 = verify_higher_vanish(m, 4, gens);
    c.out.report = {{"sign_table", {{"lambda1", "+d"}, {"lambda2", "(-1)^{|x|} [[x, y]]"}}},
                    {"lambda1_lambda2", oracle_json(low)},
                    {"lambda3", oracle_json(l3)},
                    {"lambda4", oracle_json(l4)}};
    c.out.exit_code = (low.ok && l3.ok && l4.ok) ? 0 : 1;
    return;
  }
  throw Error(ErrorKind::InvalidInput, "oracle check must be verify-mc, jacobi or linfty");
}

void cmd_long_path(Ctx& c) {
  LongPathReport r = long_path_inZ(c.sc.truncation, BumpParams{}, c.sc.tol);
  std::vector<std::vector<double>> rows;
  for (size_t i = 0; i < r.s_values.size(); ++i) rows.push_back({r.s_values[i], r.residuals[i]});
  c.out.curves["long_path_residuals"] = csv({"s", "residual"}, rows);
  c.out.curves["long_path_f"] = csv({"theta1", "value"}, theta1_curve(r.f, 256));
  c.out.report = {{"endpoint_residual", r.endpoint_residual},
                  {"residuals", r.residuals},
                  {"s", r.s_values},
                  {"lossiness", r.lossiness},
                  {"C", r.C},
                  {"K", r.K},
                  {"g_mean", r.g_mean},
                  {"h0", h0_kind_name(r.h0)},
                  {"sign_change", r.sign_change},
                  {"witness", {{"t_plus", r.t_plus}, {"f_plus", r.f_plus}, {"t_minus", r.t_minus}, {"f_minus", r.f_minus}}},
                  {"endpoint", section_to_json(r.path.back())}};
  c.out.exit_code = (r.endpoint_residual < 1e-6 && r.sign_change) ? 0 : 1;
}

void cmd_retract(Ctx& c, const std::string& name, int steps) {
  auto path = retract_path(c.sc.section(name), steps);
  std::vector<double> sv;
  std::vector<std::vector<double>> rows;
  json res = json::array();
  bool ok = true;
  for (int j = 0; j <= steps; ++j) {
    sv.push_back(double(j) / steps);
    double r = mc_residual(path[size_t(j)], c.sc.model).norm2;
    ok = ok && is_mc(path[size_t(j)], c.sc.model, c.sc.tol);
    rows.push_back({sv.back(), r});
    res.push_back(r);
  }
  c.out.report = {{"path", path_json(sv, path)}, {"residuals", res}, {"all_mc", ok}};
  c.out.curves["retract_residuals"] = csv({"s", "residual"}, rows);
  c.out.exit_code = ok ? 0 : 1;
}

void write_outputs(const std::string& dir, const CommandResult& r) {
  fs::create_directories(fs::path(dir) / "curves");
  std::ofstream(fs::path(dir) / "report.json") << dump_canonical(r.report);
  for (const auto& [stem, text] : r.curves) std::ofstream(fs::path(dir) / "curves" / (stem + ".csv")) << text;
}

int error_exit(const Error& e) {
  if (is_undecided_kind(e.kind())) return 2;
  if (e.kind() == ErrorKind::ObstructionPresent || e.kind() == ErrorKind::JacobiFails ||
      e.kind() == ErrorKind::NoNowhereZeroSolution)
    return 1;
  if (auto* su = dynamic_cast<const StepUnsolvableError*>(&e)) return decision_exit(su->report.decision) == 1 ? 1 : 2;
  return 3;
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"logdef: deformations of Lagrangians in the singular locus of log-symplectic 4-manifolds"};
  app.require_subcommand(1);
  std::string scenario, out_dir, sec, sec_b, mode = "smooth", samples = "0,0.25,0.5,1,2", g_file, form, k_text = "1,2,4,8,12",
                                          check;
  int order = 3, pmax = 6, steps = 10;
  double time = 1.0;
  bool h0 = false;
  auto common = [&](CLI::App* c) {
    c->add_option("scenario", scenario, "scenario JSON")->required();
    c->add_option("--out", out_dir, "output directory (default: scenario outputs)");
  };
  auto with_sec = [&](CLI::App* c) {
    common(c);
    c->add_option("section", sec, "section name")->required();
  };
  auto* check_mc = app.add_subcommand("check-mc", "Maurer-Cartan residual");
  with_sec(check_mc);
  auto* first = app.add_subcommand("first-order", "first-order condition d^gamma f = 0");
  with_sec(first);
  auto* kur = app.add_subcommand("kuranishi", "Kuranishi obstruction");
  with_sec(kur);
  auto* prol = app.add_subcommand("prolong", "prolong a first-order deformation");
  with_sec(prol);
  prol->add_option("--mode", mode)->check(CLI::IsMember({"smooth", "formal"}));
  prol->add_option("--order", order);
  prol->add_option("--samples", samples, "comma-separated s values");
  auto* gauge = app.add_subcommand("gauge", "gauge flow by a Hamiltonian");
  with_sec(gauge);
  gauge->add_option("--g", g_file, "coefficient table file")->required();
  gauge->add_option("--time", time);
  auto* eq = app.add_subcommand("equiv-ham", "Hamiltonian equivalence of two sections");
  common(eq);
  eq->add_option("a", sec)->required();
  eq->add_option("b", sec_b)->required();
  auto* coh = app.add_subcommand("cohomology", "twisted cohomology");
  common(coh);
  auto* h0_flag = coh->add_flag("--h0", h0);
  coh->add_option("--h1-class", form, "function name of the 1-form coefficient")->excludes(h0_flag);
  auto* rig = app.add_subcommand("rigidity", "Poisson tangent dimensions");
  common(rig);
  auto* liou = app.add_subcommand("liouville", "certified Liouville pairs");
  common(liou);
  liou->add_option("--pmax", pmax);
  auto* cex = app.add_subcommand("counterexample", "Liouville counterexample bundle");
  common(cex);
  cex->add_option("--k", k_text, "comma-separated k values");
  cex->add_option("--pmax", pmax);
  auto* orc = app.add_subcommand("oracle", "symbolic Schouten checks");
  orc->add_option("check", check)->required()->check(CLI::IsMember({"verify-mc", "jacobi", "linfty"}));
  common(orc);
  auto* lp = app.add_subcommand("long-path", "bump path on the gamma = -dtheta2 model");
  common(lp);
  auto* ret = app.add_subcommand("retract", "retraction path to the zero section");
  with_sec(ret);
  ret->add_option("--steps", steps);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    json err = {{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}};
    std::cout << dump_canonical(err);
    return 3;
  }

  Ctx c;
  std::string dir = out_dir;
  try {
    c.sc = load_scenario(scenario);
    if (dir.empty()) dir = c.sc.outputs;
    auto* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    if (verb == "check-mc") cmd_check_mc(c, sec);
    else if (verb == "first-order") cmd_first_order(c, sec);
    else if (verb == "kuranishi") cmd_kuranishi(c, sec);
    else if (verb == "prolong") cmd_prolong(c, sec, mode, order, samples);
    else if (verb == "gauge") cmd_gauge(c, sec, g_file, time);
    else if (verb == "equiv-ham") cmd_equiv(c, sec, sec_b);
    else if (verb == "cohomology") cmd_cohomology(c, h0, form);
    else if (verb == "rigidity") cmd_rigidity(c);
    else if (verb == "liouville") cmd_liouville(c, pmax);
    else if (verb == "counterexample") cmd_counterexample(c, k_text, pmax);
    else if (verb == "oracle") cmd_oracle(c, check);
    else if (verb == "long-path") cmd_long_path(c);
    else if (verb == "retract") cmd_retract(c, sec, steps);
    c.out.report["command"] = verb;
    c.out.report["exit_code"] = c.out.exit_code;
  } catch (const Error& e) {
    c.out = {};
    c.out.report = error_to_json(e);
    c.out.exit_code = error_exit(e);
    c.out.report["exit_code"] = c.out.exit_code;
  } catch (const std::exception& e) {
    c.out = {};
    c.out.report = {{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}};
    c.out.exit_code = 3;
    c.out.report["exit_code"] = 3;
  }
  if (!dir.empty()) {
    try {
      write_outputs(dir, c.out);
    } catch (const std::exception& e) {
      std::cerr << "cannot write outputs to " << dir << ": " << e.what() << "\n";
    }
  }
  std::cout << dump_canonical(c.out.report);
  return c.out.exit_code;
}

}  // namespace logdef
