#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "logdef/cohomology.hpp"
#include "logdef/dgla.hpp"
#include "logdef/diophantine.hpp"

namespace logdef {

using json = nlohmann::json;

// Sorted keys, doubles as %.17g, two-space indent.
std::string dump_canonical(const json& j);

// [[n, m, re, im], ...] over nonzero coefficients in (n, m) order.
json table_to_json(const FourierScalar& f);
json table_to_json(const ExactScalar& f);
// Missing Hermitian partners are filled in; a present partner must match.
FourierScalar table_from_json(const json& j, const BandLimit& band);

json lambda_to_json(const LambdaValue& l);
LambdaValue lambda_from_json(const json& j);

json model_to_json(const ModelData& m);
ModelData model_from_json(const json& j, const BandLimit& band);

json section_to_json(const Section& s);
Section section_from_json(const json& j, const BandLimit& band);

json arcs_to_json(const std::vector<Arc>& arcs);
json class_report_to_json(const ClassReport& r);
json h0_to_json(const H0Basis& h);
json kuranishi_to_json(const KuranishiReport& r);
json certificate_to_json(const LiouvilleCertificate& c);
json error_to_json(const Error& e);

struct Scenario {
  BandLimit truncation{8, 8, 64};
  ModelData model;
  std::map<std::string, Section> sections;
  std::map<std::string, FourierScalar> functions;  // named scalar tables (forms, Hamiltonians)
  Tolerances tol;
  std::string outputs = "out";

  const Section& section(const std::string& name) const;
  const FourierScalar& function(const std::string& name) const;
};

// Throws InvalidInput on schema violations.
Scenario scenario_from_json(const json& j);
Scenario load_scenario(const std::string& path);
json load_json(const std::string& path);

}  // namespace logdef
