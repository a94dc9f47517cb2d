#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logdef/dgla.hpp"

namespace logdef {

class StepUnsolvableError : public Error {
 public:
  StepUnsolvableError(int step, ClassReport rep, const std::string& msg)
      : Error(ErrorKind::StepUnsolvable, msg), report(std::move(rep)) {
    detail = step;
  }
  ClassReport report;
};

// (s alpha, s f e^{s h}) with L_X alpha = d_F h.  h defaults to the one
// produced by extends_to_closed.
std::vector<Section> prolong_smooth(const Section& s, const ModelData& model,
                                    const std::vector<double>& s_values, const Tolerances& tol = {},
                                    const std::optional<FourierScalar>& h = std::nullopt);

// Terms (alpha_k, f_k), k = 1..K of the formal series; alpha_k = 0 for k >= 2.
std::vector<Section> prolong_formal(const Section& s, const ModelData& model, int order,
                                    const Tolerances& tol = {});
// sum_k eps^k (alpha_k, f_k)
Section evaluate_series(const std::vector<Section>& terms, double eps);

struct GaugePath {
  std::optional<FourierScalar> constant;                  // g_u = G for all u
  std::vector<std::pair<double, FourierScalar>> samples;  // (u_j, g_{u_j})
  FourierScalar integral(double time) const;               // int_0^time g_u du
};

struct GaugeResult {
  Section section;
  ExpReport exp;
};
// (alpha_0 + d_F G, f_0 e^{X(G)})
GaugeResult gauge_flow(const Section& s0, const GaugePath& path, double time, const ModelData& model,
                       const Tolerances& tol = {});

struct EquivReport {
  Decision decision = Decision::Undecided;
  std::optional<FourierScalar> G;
  std::string reason;
};
EquivReport hamiltonian_equivalent(const Section& a, const Section& b, const ModelData& model,
                                   const Tolerances& tol = {});

double smoothstep(double x);
// Phi(s) = 1 - S(2s), Psi(s) = 1 - S(2s - 1); Psi = 1 on supp Phi.
std::vector<Section> retract_path(const Section& s, int steps);

struct BumpParams {
  int f_power = 31;       // f = sin t1 ((1 + cos t1)/2)^f_power
  int h_power = 32;       // 1 + H = ((1 - cos t1)/2)^h_power
  int samples = 21;       // path samples on [0, 2]
  bool nowhere_zero = false;
};

struct LongPathReport {
  std::vector<double> s_values;
  std::vector<Section> path;
  std::vector<double> residuals;
  double endpoint_residual = 0.0;
  double lossiness = 0.0;  // ||f (1 + H)||_0 / ||f||_0
  double C = 0.0, K = 0.0;
  double g_mean = 0.0;      // mean of G before integration
  H0Basis::Kind h0 = H0Basis::Kind::Zero;
  bool sign_change = false;
  double f_plus = 0.0, f_minus = 0.0;  // f(t+), f(t-) witnessing the sign change
  double t_plus = 0.0, t_minus = 0.0;
  FourierScalar f, g, H;
};
ModelData in_z_model(const BandLimit& band);
LongPathReport long_path_inZ(const BandLimit& band, const BumpParams& params = {},
                             const Tolerances& tol = {});

}  // namespace logdef
