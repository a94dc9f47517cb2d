#include "logdef/dgla.hpp"

#include <cmath>

namespace logdef {

const char* kuranishi_name(KuranishiVerdict v) {
  switch (v) {
    case KuranishiVerdict::Unobstructed: return "unobstructed";
    case KuranishiVerdict::Obstructed: return "obstructed";
    case KuranishiVerdict::Undecided: return "undecided";
  }
  return "?";
}

namespace {

// Products below are taken with enough headroom that nothing is dropped.
Section with_headroom(const Section& s, const ModelData& model, int* B_out) {
  const ModelT<cd> nm = model.numeric();
  int B = std::max({s.f.band().B_max, s.alpha.coeff.band().B_max, nm.gamma.band().B_max});
  B = std::max({B, s.f.N() + std::max(nm.gamma.N(), s.alpha.coeff.N() + nm.gx.N()),
                s.f.M() + std::max(nm.gamma.M(), s.alpha.coeff.M())});
  *B_out = B;
  return {{s.alpha.coeff.with_cap(B)}, s.f.with_cap(B)};
}

ModelT<cd> numeric_with_cap(const ModelData& model, int B) {
  ModelT<cd> nm = model.numeric();
  nm.gamma = nm.gamma.with_cap(B);
  nm.gx = nm.gx.with_cap(B);
  return nm;
}

}  // namespace

McResidual mc_residual(const Section& s, const ModelData& model) {
  int B = 0;
  Section h = with_headroom(s, model, &B);
  return mc_residual(h, numeric_with_cap(model, B));
}

double mc_scale(const Section& s) { return 1.0 + ck_norm(s.f, 0) + ck_norm(s.alpha.coeff, 0); }

bool is_mc(const Section& s, const ModelData& model, const Tolerances& tol) {
  return mc_residual(s, model).norm2 < tol.residual * mc_scale(s);
}

KuranishiReport kuranishi(const Section& s, const ModelData& model, const Tolerances& tol) {
  KuranishiReport rep;
  // first-order check: d^gamma f = 0
  {
    int B = 0;
    Section h = with_headroom(s, model, &B);
    ModelT<cd> nm = numeric_with_cap(model, B);
    double lin = ck_norm(d_twisted(h.f, OneFormT<cd>{nm.gamma}, nm.fol).coeff, 0);
    if (lin >= tol.residual * mc_scale(s))
      throw Error(ErrorKind::NotFirstOrder,
                  "d^gamma f has norm " + std::to_string(lin) + ", not a first-order deformation");
  }
  const double fnorm = ck_norm(s.f, 0);
  if (fnorm == 0.0) {
    rep.verdict = KuranishiVerdict::Unobstructed;
    rep.reason = "f vanishes identically; (alpha, 0) is Maurer-Cartan";
    return rep;
  }
  if (model.foliation.is_kronecker()) {
    const LambdaValue& lam = *model.foliation.lambda;
    if (!lam.is_liouville_mode()) {
      rep.verdict = KuranishiVerdict::Unobstructed;
      rep.reason = "generic slope: every closed foliated form extends, the Kuranishi class vanishes";
      return rep;
    }
    rep.verdict = KuranishiVerdict::Undecided;
    rep.reason = "Liouville slope with f != 0: small divisors; smooth obstructedness is not decidable";
    try {
      FoliatedOneForm q{multiply_into(s.f, lie_x(s.alpha, model).coeff,
                                      BandLimit{s.f.N() + s.alpha.coeff.N(), s.f.M() + s.alpha.coeff.M(),
                                                std::max(s.f.N() + s.alpha.coeff.N(), s.f.M() + s.alpha.coeff.M())},
                                      nullptr)};
      rep.small_divisor_factor = is_exact(FoliatedOneForm{scale(q.coeff, 2.0)}, model.foliation, tol).small_divisor_factor;
    } catch (const Error& e) {
      if (!is_undecided_kind(e.kind())) throw;
      rep.reason += std::string("; divisor diagnostic: ") + e.what();
    }
    return rep;
  }
  rep.zero_set = fiber_sup_zero_arcs(s.f, tol.zero * fnorm);
  rep.complement = complement_arcs(rep.zero_set);
  FourierScalar I = fiber_integral(s.alpha.coeff);
  FourierScalar dI = partial_theta1(I);
  {
    int B = 0;
    Section h = with_headroom(s, model, &B);
    ModelT<cd> nm = numeric_with_cap(model, B);
    rep.obstruction_integral = fiber_integral(multiply(h.f, lie_x(h.alpha, nm).coeff));
  }
  rep.threshold = tol.cls * std::max(1.0, ck_norm(I, 0));
  if (rep.complement.empty()) {
    rep.verdict = KuranishiVerdict::Unobstructed;
    rep.reason = "f vanishes on every fiber";
    return rep;
  }
  rep.derivative = sup_on_arcs(dI, rep.complement);
  if (rep.derivative.upper < rep.threshold) {
    rep.verdict = KuranishiVerdict::Unobstructed;
    rep.reason = "fiber integral of alpha is locally constant off the zero set of f";
  } else if (rep.derivative.sampled > rep.threshold) {
    rep.verdict = KuranishiVerdict::Obstructed;
    rep.reason = "fiber integral of alpha varies where f does not vanish";
    for (const auto& a : rep.complement)
      if (arc_contains(a, rep.derivative.argmax)) rep.violating_arc = a;
  } else {
    rep.verdict = KuranishiVerdict::Undecided;
    rep.reason = "derivative of the fiber integral is within the tolerance band";
  }
  return rep;
}

}  // namespace logdef
