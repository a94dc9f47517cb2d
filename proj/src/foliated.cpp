#include "logdef/foliated.hpp"

#include "logdef/interval.hpp"

namespace logdef {

ModelData ModelData::fibration(const FourierScalar& gamma, const FourierScalar& gx) {
  ModelData md;
  md.foliation.kind = FoliationKind::Fibration;
  md.gamma = {gamma};
  md.gx = gx;
  md.x_constant = false;
  return md;
}

ModelData ModelData::kronecker(const LambdaValue& lambda, double C, double K, const BandLimit& band) {
  ModelData md;
  md.foliation.kind = FoliationKind::Kronecker;
  md.foliation.lambda = lambda;
  md.x_constant = true;
  md.C = C;
  md.K = K;
  md.gamma = {FourierScalar::constant(K, band)};
  return md;
}

FourierScalar ModelData::x_coeff() const {
  if (x_constant) return FourierScalar::constant(C, BandLimit{0, 0, gamma.coeff.band().B_max});
  return gx;
}

ModelT<cd> ModelData::numeric() const {
  ModelT<cd> m;
  m.fol = leafwise(foliation);
  m.gamma = gamma.coeff;
  m.gx = x_coeff();
  return m;
}

ModelT<Exact> ModelData::exact() const {
  ModelT<Exact> m;
  m.fol.kind = foliation.kind;
  if (foliation.is_kronecker()) m.fol.lambda = foliation.lambda->exact();
  m.gamma = to_exact(gamma.coeff);
  if (x_constant) {
    m.gx = ExactScalar::constant(Exact::from_double(C), BandLimit{0, 0, gamma.coeff.band().B_max});
  } else {
    m.gx = to_exact(gx);
  }
  return m;
}

void ModelData::validate() const {
  if (hermitian_defect(gamma.coeff) > 1e-12)
    throw Error(ErrorKind::InvalidModel, "gamma is not real-valued (Hermitian symmetry)");
  if (foliation.is_kronecker()) {
    if (!foliation.lambda) throw Error(ErrorKind::InvalidModel, "Kronecker foliation needs lambda");
    if (C == 0.0) throw Error(ErrorKind::InvalidModel, "Kronecker model needs C != 0");
    bool ok = true;
    gamma.coeff.for_each([&](int n, int m, const cd& v) {
      cd want = (n == 0 && m == 0) ? cd(K, 0) : cd(0, 0);
      if (std::abs(v - want) > 1e-14) ok = false;
    });
    if (!ok) throw Error(ErrorKind::InvalidModel, "Kronecker gamma must equal K dtheta2");
    return;
  }
  if (x_constant) {
    if (C == 0.0) throw Error(ErrorKind::InvalidModel, "X must be nowhere zero");
    return;
  }
  if (hermitian_defect(gx) > 1e-12)
    throw Error(ErrorKind::InvalidModel, "g_X is not real-valued");
  bool mband = true;
  gx.for_each_nonzero([&](int, int m, const cd&) {
    if (m != 0) mband = false;
  });
  if (!mband) throw Error(ErrorKind::InvalidModel, "g_X must depend on theta1 only");
  if (certify_sign_theta1(gx) == 0)
    throw Error(ErrorKind::InvalidModel, "g_X has a zero (or a cell that cannot be separated from zero)");
}

FoliatedOneForm canonical_representative(const FoliatedOneForm& eta, const FoliationSpec& spec) {
  if (!spec.is_kronecker()) {
    FourierScalar h = theta2_mean(eta.coeff).resized(eta.coeff.band());
    return {h};
  }
  if (!spec.lambda || !spec.lambda->is_generic())
    throw Error(ErrorKind::LiouvilleModeUnsupported,
                "no canonical representative for a Liouville slope");
  return {FourierScalar::constant(eta.coeff.coeff(0, 0), eta.coeff.band())};
}

}  // namespace logdef
