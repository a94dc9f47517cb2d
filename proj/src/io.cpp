#include "logdef/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "logdef/errors.hpp"

namespace logdef {

const char* error_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::BandLimitExceeded: return "BandLimitExceeded";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::GridTooSmall: return "GridTooSmall";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::LiouvilleModeUnsupported: return "LiouvilleModeUnsupported";
    case ErrorKind::InvalidModel: return "InvalidModel";
    case ErrorKind::InvalidLambda: return "InvalidLambda";
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::DivisorNearZero: return "DivisorNearZero";
    case ErrorKind::NotFirstOrder: return "NotFirstOrder";
    case ErrorKind::NotMaurerCartan: return "NotMaurerCartan";
    case ErrorKind::ObstructionPresent: return "ObstructionPresent";
    case ErrorKind::StepUnsolvable: return "StepUnsolvable";
    case ErrorKind::SearchExhausted: return "SearchExhausted";
    case ErrorKind::DegreeOverflow: return "DegreeOverflow";
    case ErrorKind::JacobiFails: return "JacobiFails";
    case ErrorKind::BandProjectionTooLossy: return "BandProjectionTooLossy";
    case ErrorKind::NoNowhereZeroSolution: return "NoNowhereZeroSolution";
  }
  return "Unknown";
}

bool is_undecided_kind(ErrorKind k) {
  return k == ErrorKind::PrecisionExhausted || k == ErrorKind::DivisorNearZero ||
         k == ErrorKind::SearchExhausted || k == ErrorKind::ToleranceUnreachable;
}

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::InvalidInput, msg); }

void dump_rec(const json& j, std::ostringstream& os, int indent) {
  const std::string pad(size_t(indent) * 2, ' '), pad1(size_t(indent + 1) * 2, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map: sorted keys
        if (!first) os << ",\n";
        first = false;
        os << pad1 << json(it.key()).dump() << ": ";
        dump_rec(it.value(), os, indent + 1);
      }
      os << "\n" << pad << "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      bool flat = true;
      for (const auto& e : j)
        if (e.is_structured()) flat = false;
      if (flat) {
        os << "[";
        for (size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          dump_rec(j[i], os, 0);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad1;
        dump_rec(j[i], os, indent + 1);
      }
      os << "\n" << pad << "]";
      return;
    }
    case json::value_t::number_float: {
      double v = j.get<double>();
      if (!std::isfinite(v)) {
        os << (std::isnan(v) ? "null" : (v > 0 ? "1e999" : "-1e999"));
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default: os << j.dump();
  }
}

double num(const json& j, const char* what) {
  if (!j.is_number()) bad(std::string(what) + " must be a number");
  return j.get<double>();
}

int integer(const json& j, const char* what) {
  if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
  return j.get<int>();
}

json interval_json(const mpq_class& q) { return q.get_str(); }

}  // namespace

std::string dump_canonical(const json& j) {
  std::ostringstream os;
  dump_rec(j, os, 0);
  os << "\n";
  return os.str();
}

json table_to_json(const FourierScalar& f) {
  json a = json::array();
  for (int n = -f.N(); n <= f.N(); ++n)
    for (int m = -f.M(); m <= f.M(); ++m) {
      cd v = f.coeff(n, m);
      if (v != cd(0, 0)) a.push_back({n, m, v.real(), v.imag()});
    }
  return a;
}

json table_to_json(const ExactScalar& f) {
  json a = json::array();
  for (int n = -f.N(); n <= f.N(); ++n)
    for (int m = -f.M(); m <= f.M(); ++m) {
      const Exact& v = f.coeff(n, m);
      if (!v.is_zero()) a.push_back({n, m, v.str()});
    }
  return a;
}

FourierScalar table_from_json(const json& j, const BandLimit& band) {
  if (!j.is_array()) bad("coefficient table must be an array of [n, m, re, im]");
  FourierScalar f(band);
  std::vector<std::vector<bool>> set(size_t(2 * band.N + 1), std::vector<bool>(size_t(2 * band.M + 1), false));
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 4) bad("coefficient entry must be [n, m, re, im]");
    int n = integer(e[0], "n"), m = integer(e[1], "m");
    if (std::abs(n) > band.N || std::abs(m) > band.M)
      throw Error(ErrorKind::BandLimitExceeded,
                  "coefficient (" + std::to_string(n) + "," + std::to_string(m) + ") outside the truncation");
    if (set[size_t(n + band.N)][size_t(m + band.M)]) bad("duplicate coefficient entry");
    set[size_t(n + band.N)][size_t(m + band.M)] = true;
    f.at(n, m) = cd(num(e[2], "re"), num(e[3], "im"));
  }
  for (int n = -band.N; n <= band.N; ++n)
    for (int m = -band.M; m <= band.M; ++m) {
      if (!set[size_t(n + band.N)][size_t(m + band.M)]) continue;
      cd v = f.coeff(n, m);
      if (set[size_t(-n + band.N)][size_t(-m + band.M)]) {
        if (std::abs(f.coeff(-n, -m) - std::conj(v)) > 1e-12 * (1 + std::abs(v)))
          bad("table is not real-valued: entry (" + std::to_string(n) + "," + std::to_string(m) +
              ") and its conjugate partner disagree");
      } else {
        f.at(-n, -m) = std::conj(v);
      }
    }
  if (std::abs(f.coeff(0, 0).imag()) > 1e-12) bad("constant coefficient must be real");
  f.at(0, 0) = cd(f.coeff(0, 0).real(), 0.0);
  return f;
}

json lambda_to_json(const LambdaValue& l) {
  switch (l.mode()) {
    case LambdaValue::Mode::Quadratic:
      return {{"mode", "quadratic"}, {"a", l.qa}, {"b", l.qb}, {"c", l.qc}, {"d", l.qd}};
    case LambdaValue::Mode::Decimal:
      return {{"mode", "decimal"}, {"digits", l.digits_text}, {"error", l.error_text}};
    case LambdaValue::Mode::LiouvilleConstant: return {{"mode", "liouville_constant"}};
  }
  return {};
}

LambdaValue lambda_from_json(const json& j) {
  if (!j.is_object() || !j.contains("mode")) bad("lambda needs a \"mode\"");
  const std::string mode = j["mode"].get<std::string>();
  if (mode == "quadratic")
    return LambdaValue::quadratic(integer(j.at("a"), "a"), integer(j.at("b"), "b"), integer(j.at("c"), "c"),
                                  integer(j.at("d"), "d"));
  if (mode == "decimal") return LambdaValue::decimal(j.at("digits").get<std::string>(), j.at("error").get<std::string>());
  if (mode == "liouville_constant") return LambdaValue::liouville_constant();
  bad("unknown lambda mode " + mode);
}

json model_to_json(const ModelData& m) {
  json j;
  if (m.foliation.is_kronecker()) {
    j["foliation"] = {{"kind", "kronecker"}, {"lambda", lambda_to_json(*m.foliation.lambda)}};
    j["X"] = {{"kind", "constant"}, {"C", m.C}};
    j["K"] = m.K;
  } else {
    j["foliation"] = {{"kind", "fibration"}};
    j["X"] = {{"kind", "theta1"}, {"coeffs", table_to_json(m.gx)}};
  }
  j["gamma"] = table_to_json(m.gamma.coeff);
  return j;
}

ModelData model_from_json(const json& j, const BandLimit& band) {
  try {
    const std::string kind = j.at("foliation").at("kind").get<std::string>();
    const json& X = j.at("X");
    if (kind == "kronecker") {
      if (X.at("kind") != "constant") bad("Kronecker models take X = {\"kind\":\"constant\",\"C\":...}");
      double K = j.contains("K") ? num(j["K"], "K") : 0.0;
      ModelData m = ModelData::kronecker(lambda_from_json(j["foliation"].at("lambda")), num(X.at("C"), "C"), K, band);
      if (j.contains("gamma")) {
        FourierScalar g = table_from_json(j["gamma"], band);
        if (max_abs_diff(g, m.gamma.coeff) > 1e-14) bad("Kronecker gamma must equal K dtheta2");
      }
      m.validate();
      return m;
    }
    if (kind != "fibration") bad("foliation kind must be fibration or kronecker");
    FourierScalar gx;
    if (X.at("kind") == "theta1") {
      gx = table_from_json(X.at("coeffs"), BandLimit{band.N, 0, band.B_max});
    } else if (X.at("kind") == "constant") {
      gx = FourierScalar::constant(num(X.at("C"), "C"), BandLimit{0, 0, band.B_max});
    } else {
      bad("X kind must be theta1 or constant");
    }
    FourierScalar gamma = j.contains("gamma") ? table_from_json(j["gamma"], band) : FourierScalar(band);
    ModelData m = ModelData::fibration(gamma, gx);
    m.validate();
    return m;
  } catch (const json::exception& e) {
    bad(std::string("model: ") + e.what());
  }
}

json section_to_json(const Section& s) {
  return {{"alpha", table_to_json(s.alpha.coeff)}, {"f", table_to_json(s.f)}};
}

Section section_from_json(const json& j, const BandLimit& band) {
  if (!j.is_object()) bad("section must be an object with alpha and f");
  Section s{{j.contains("alpha") ? table_from_json(j["alpha"], band) : FourierScalar(band)},
            j.contains("f") ? table_from_json(j["f"], band) : FourierScalar(band)};
  return s;
}

json arcs_to_json(const std::vector<Arc>& arcs) {
  json a = json::array();
  for (const auto& x : arcs) a.push_back({x.start, x.end});
  return a;
}

json class_report_to_json(const ClassReport& r) {
  json j{{"decision", decision_name(r.decision)},
         {"formally_exact", r.formally_exact},
         {"small_divisor_factor", r.small_divisor_factor},
         {"residual", r.residual},
         {"reason", r.reason}};
  if (r.primitive) j["primitive"] = table_to_json(*r.primitive);
  return j;
}

json h0_to_json(const H0Basis& h) {
  json gens = json::array();
  for (const auto& g : h.generators) gens.push_back(table_to_json(g));
  return {{"kind", h0_kind_name(h.kind)},
          {"zero_set", arcs_to_json(h.zero_set)},
          {"bandlimited_dim", h.bandlimited_dim},
          {"generators", gens},
          {"note", h.note}};
}

json kuranishi_to_json(const KuranishiReport& r) {
  json j{{"verdict", kuranishi_name(r.verdict)},
         {"reason", r.reason},
         {"zero_set", arcs_to_json(r.zero_set)},
         {"complement", arcs_to_json(r.complement)},
         {"derivative_sup", {{"sampled", r.derivative.sampled}, {"upper", r.derivative.upper}}},
         {"threshold", r.threshold},
         {"small_divisor_factor", r.small_divisor_factor}};
  if (r.violating_arc) j["violating_arc"] = {r.violating_arc->start, r.violating_arc->end};
  if (r.obstruction_integral) j["obstruction_integral"] = table_to_json(*r.obstruction_integral);
  return j;
}

json certificate_to_json(const LiouvilleCertificate& c) {
  json pairs = json::array();
  for (const auto& p : c.pairs)
    pairs.push_back({{"p", p.p},
                     {"m", p.m.get_str()},
                     {"n", p.n.get_str()},
                     {"witness", interval_json(p.witness)},
                     {"digits", p.digits}});
  return {{"lambda", lambda_to_json(c.lambda)}, {"pairs", pairs}};
}

json error_to_json(const Error& e) {
  json j{{"kind", error_name(e.kind())}, {"message", e.what()}};
  if (e.detail >= 0) j["detail"] = e.detail;
  return {{"error", j}};
}

const Section& Scenario::section(const std::string& name) const {
  auto it = sections.find(name);
  if (it == sections.end()) bad("no section named \"" + name + "\" in the scenario");
  return it->second;
}

const FourierScalar& Scenario::function(const std::string& name) const {
  auto it = functions.find(name);
  if (it == functions.end()) bad("no function named \"" + name + "\" in the scenario");
  return it->second;
}

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) bad("scenario must be a JSON object");
  Scenario sc;
  try {
    if (j.contains("truncation")) {
      const json& t = j["truncation"];
      sc.truncation = {integer(t.at("N"), "N"), integer(t.at("M"), "M"),
                       t.contains("B_max") ? integer(t["B_max"], "B_max") : 64};
      if (sc.truncation.N < 0 || sc.truncation.M < 0 || sc.truncation.B_max < std::max(sc.truncation.N, sc.truncation.M))
        bad("truncation needs 0 <= N, M <= B_max");
    }
    if (!j.contains("model")) bad("scenario needs a model");
    sc.model = model_from_json(j["model"], sc.truncation);
    if (j.contains("sections"))
      for (auto it = j["sections"].begin(); it != j["sections"].end(); ++it)
        sc.sections[it.key()] = section_from_json(it.value(), sc.truncation);
    if (j.contains("functions"))
      for (auto it = j["functions"].begin(); it != j["functions"].end(); ++it)
        sc.functions[it.key()] = table_from_json(it.value(), sc.truncation);
    if (j.contains("tolerances")) {
      const json& t = j["tolerances"];
      auto get = [&](const char* k, double& dst) {
        if (!t.contains(k)) return;
        dst = num(t[k], k);
        if (!(dst > 0)) bad(std::string("tolerance ") + k + " must be positive");
      };
      get("residual", sc.tol.residual);
      get("zero", sc.tol.zero);
      get("class", sc.tol.cls);
      get("divisor", sc.tol.divisor);
    }
    if (j.contains("outputs")) sc.outputs = j["outputs"].get<std::string>();
  } catch (const json::exception& e) {
    bad(std::string("scenario: ") + e.what());
  }
  return sc;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(load_json(path)); }

}  // namespace logdef
