#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logdef/foliated.hpp"
#include "logdef/interval.hpp"

namespace logdef {

enum class Decision { Yes, No, Undecided };
const char* decision_name(Decision d);

// All relative (scaled by max(1, input norm) where it makes sense).
struct Tolerances {
  double residual = 1e-8;
  double zero = 1e-8;
  double cls = 1e-8;
  double divisor = 1e-10;
  double exp = 1e-14;
};

struct ClassReport {
  Decision decision = Decision::Undecided;
  bool formally_exact = false;
  std::optional<FourierScalar> primitive;
  double small_divisor_factor = 0.0;
  double residual = 0.0;
  std::string reason;
};

// d_F-exactness of eta.
ClassReport is_exact(const FoliatedOneForm& eta, const FoliationSpec& spec, const Tolerances& tol = {});

struct H0Basis {
  enum class Kind { FunctionsOfTheta1Annihilating, Line, Zero };
  Kind kind = Kind::Zero;
  std::vector<Arc> zero_set;             // annihilating case
  std::vector<FourierScalar> generators;  // bandlimited basis (may be empty)
  int bandlimited_dim = 0;
  std::string note;
};
const char* h0_kind_name(H0Basis::Kind k);

H0Basis h0_twisted(const ModelData& model, const Tolerances& tol = {});

// Solve d_F k + k gamma = eta; Yes when the residual is below tol.cls.
// Throws DivisorNearZero when a near-vanishing divisor meets a
// non-negligible right-hand side.
ClassReport h1_twisted_is_zero_class(const FoliatedOneForm& eta, const ModelData& model,
                                     const Tolerances& tol = {});

struct ExtendReport {
  Decision decision = Decision::Undecided;
  std::optional<FourierScalar> h;  // L_X alpha = d_F h
  ClassReport lie_class;
};
ExtendReport extends_to_closed(const FoliatedOneForm& alpha, const ModelData& model,
                               const Tolerances& tol = {});

struct TangentDims {
  int first = 0;  // dim Omega^1_cl / (Im r + R gamma)
  int h0 = 0;     // dim H^0_gamma
  bool gamma_in_image = false;
  std::string note;
};
TangentDims poisson_tangent_dims(const ModelData& model, const BandLimit& band, const Tolerances& tol = {});

// Fiberwise primitive (fibration) of the zero-mean part: g[n,m] = c[n,m]/(i m).
FourierScalar fiber_primitive(const FourierScalar& c);

}  // namespace logdef
