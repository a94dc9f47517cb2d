#include "logdef/paths.hpp"

#include <cmath>

namespace logdef {

namespace {

int cap_for(std::initializer_list<const FourierScalar*> xs) {
  int B = 0;
  for (auto* x : xs) B = std::max(B, x->band().B_max);
  return B;
}

FourierScalar product_capped(const FourierScalar& a, const FourierScalar& b, int B, double* dropped) {
  return multiply_into(a, b, BandLimit{std::min(a.N() + b.N(), B), std::min(a.M() + b.M(), B), B}, dropped);
}

FourierScalar theta1_primitive(const FourierScalar& q) {
  FourierScalar u(BandLimit{q.N(), 0, q.band().B_max});
  for (int n = -q.N(); n <= q.N(); ++n)
    if (n != 0) u.at(n, 0) = q.coeff(n, 0) / cd(0.0, double(n));
  return u;
}

}  // namespace

std::vector<Section> prolong_smooth(const Section& s, const ModelData& model,
                                    const std::vector<double>& s_values, const Tolerances& tol,
                                    const std::optional<FourierScalar>& h_in) {
  KuranishiReport kr = kuranishi(s, model, tol);
  if (kr.verdict != KuranishiVerdict::Unobstructed)
    throw Error(ErrorKind::ObstructionPresent,
                std::string("Kuranishi verdict is ") + kuranishi_name(kr.verdict) + ": " + kr.reason);
  const bool f_zero = s.f.is_zero();
  FourierScalar h(BandLimit{0, 0, s.f.band().B_max});
  if (h_in) {
    h = *h_in;
  } else if (!f_zero) {
    ExtendReport ex = extends_to_closed(s.alpha, model, tol);
    if (ex.decision != Decision::Yes)
      throw Error(ErrorKind::ObstructionPresent, "L_X alpha is not d_F-exact: no global h");
    h = *ex.h;
  }
  const int B = cap_for({&s.f, &s.alpha.coeff, &h});
  std::vector<Section> out;
  out.reserve(s_values.size());
  for (double sv : s_values) {
    Section r;
    r.alpha = {scale(s.alpha.coeff, sv)};
    if (f_zero || sv == 0.0) {
      r.f = FourierScalar(BandLimit{0, 0, B});
    } else {
      FourierScalar e = exp_of(scale(h, sv), tol.exp * 1e-2);
      r.f = scale(product_capped(s.f, e.with_cap(B), B, nullptr), sv);
    }
    // f e^{sh} may need more modes than the cap allows; refuse rather than return a non-MC section
    const double rel = mc_residual(r, model).norm2 / mc_scale(r);
    if (rel > tol.residual)
      throw Error(ErrorKind::ToleranceUnreachable,
                  "prolong_smooth: f e^{sh} not representable at band cap " + std::to_string(B) +
                      " (s = " + std::to_string(sv) + ", relative residual " + std::to_string(rel) + ")");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Section> prolong_formal(const Section& s, const ModelData& model, int order, const Tolerances& tol) {
  if (order < 1) throw Error(ErrorKind::InvalidInput, "order must be >= 1");
  {
    const ModelT<cd> nm = model.numeric();
    const int B = std::max({s.f.band().B_max, s.f.N() + nm.gamma.N(), s.f.M() + nm.gamma.M()});
    double lin = ck_norm(d_twisted(s.f.with_cap(B), OneFormT<cd>{nm.gamma.with_cap(B)}, nm.fol).coeff, 0);
    if (lin >= tol.residual * mc_scale(s))
      throw Error(ErrorKind::NotFirstOrder, "input is not a first-order deformation");
  }
  const int B = cap_for({&s.f, &s.alpha.coeff});
  const FourierScalar L = lie_x(s.alpha, model).coeff;
  std::vector<Section> terms;
  terms.push_back(s);
  const FourierScalar zero(BandLimit{0, 0, B});
  for (int k = 2; k <= order; ++k) {
    FourierScalar rhs = product_capped(terms.back().f, L, B, nullptr);
    ClassReport rep;
    if (rhs.is_zero()) {
      rep.decision = Decision::Yes;
      rep.primitive = zero;
    } else {
      rep = h1_twisted_is_zero_class(FoliatedOneForm{rhs}, model, tol);
    }
    if (rep.decision != Decision::Yes)
      throw StepUnsolvableError(k, rep, "step " + std::to_string(k) + ": right-hand side is not a d^gamma-coboundary (" +
                                            rep.reason + ")");
    FourierScalar fk = *rep.primitive;
    Section t;
    t.alpha = {zero};
    t.f = fk.band().B_max < B ? fk.with_cap(B) : fk;
    terms.push_back(std::move(t));
  }
  return terms;
}

Section evaluate_series(const std::vector<Section>& terms, double eps) {
  Section r{{FourierScalar()}, FourierScalar()};
  double p = 1.0;
  for (const auto& t : terms) {
    p *= eps;
    r.alpha.coeff = add(r.alpha.coeff, scale(t.alpha.coeff, p));
    r.f = add(r.f, scale(t.f, p));
  }
  return r;
}

FourierScalar GaugePath::integral(double time) const {
  if (constant) return scale(*constant, time);
  if (samples.empty()) throw Error(ErrorKind::InvalidInput, "empty gauge path");
  FourierScalar acc(BandLimit{0, 0, samples.front().second.band().B_max});
  for (size_t j = 0; j + 1 < samples.size(); ++j) {
    double u0 = samples[j].first, u1 = samples[j + 1].first;
    if (u0 >= time) break;
    const FourierScalar& g0 = samples[j].second;
    FourierScalar g1 = samples[j + 1].second;
    if (u1 > time) {
      double w = (time - u0) / (u1 - u0);
      g1 = add(scale(g0, 1.0 - w), scale(g1, w));
      u1 = time;
    }
    acc = add(acc, scale(add(g0, g1), 0.5 * (u1 - u0)));
  }
  return acc;
}

GaugeResult gauge_flow(const Section& s0, const GaugePath& path, double time, const ModelData& model,
                       const Tolerances& tol) {
  GaugeResult r;
  FourierScalar G = path.integral(time);
  const ModelT<cd> nm = model.numeric();
  const int B = std::max({cap_for({&s0.f, &s0.alpha.coeff, &G}), G.N() + nm.gx.N()});
  FourierScalar XG = x_of(G.with_cap(B), ModelT<cd>{nm.fol, nm.gamma, nm.gx.with_cap(B)});
  r.section.alpha = {add(s0.alpha.coeff, d_foliated(G, model.foliation).coeff)};
  if (s0.f.is_zero()) {
    r.section.f = s0.f;
    return r;
  }
  FourierScalar e = exp_of(XG, tol.exp * 1e-2, &r.exp);
  r.section.f = product_capped(s0.f.with_cap(B), e.with_cap(B), B, &r.exp.projection_error);
  return r;
}

EquivReport hamiltonian_equivalent(const Section& a, const Section& b, const ModelData& model,
                                   const Tolerances& tol) {
  EquivReport out;
  if (!is_mc(a, model, tol) || !is_mc(b, model, tol))
    throw Error(ErrorKind::NotMaurerCartan, "both sections must be Maurer-Cartan");
  ClassReport cls = is_exact(FoliatedOneForm{sub(b.alpha.coeff, a.alpha.coeff)}, model.foliation, tol);
  if (cls.decision != Decision::Yes) {
    out.decision = Decision::No;
    out.reason = "alpha_b - alpha_a is not d_F-exact: the classes in H^1(F) differ";
    return out;
  }
  FourierScalar Gp = *cls.primitive;
  const double za = ck_norm(a.f, 0), zb = ck_norm(b.f, 0);
  const double zthr = tol.zero * std::max(1.0, std::max(za, zb));
  const bool a0 = za <= zthr, b0 = zb <= zthr;
  if (a0 && b0) {
    out.decision = Decision::Yes;
    out.G = Gp;
    out.reason = "both f vanish; alpha classes agree";
    return out;
  }
  if (a0 != b0) {
    out.decision = Decision::No;
    out.reason = "f vanishes identically for one section only";
    return out;
  }
  const int sa = certify_sign_torus(a.f), sb = certify_sign_torus(b.f);
  if (sa == 0 || sb == 0) {
    out.decision = Decision::Undecided;
    out.reason = "f is not certified nowhere zero (sign change or mixed zero set)";
    return out;
  }
  if (sa != sb) {
    out.decision = Decision::No;
    out.reason = "f_a and f_b have opposite signs; e^{X(G)} > 0";
    return out;
  }
  const ModelT<cd> nm = model.numeric();
  const int B = std::max({cap_for({&a.f, &b.f, &Gp}), Gp.N() + nm.gx.N()});
  FourierScalar XGp = x_of(Gp.with_cap(B), ModelT<cd>{nm.fol, nm.gamma, nm.gx.with_cap(B)});
  BandLimit fit{std::min(B, std::max({a.f.N(), b.f.N(), XGp.N()}) * 2 + 4),
                std::min(B, std::max({a.f.M(), b.f.M(), XGp.M()}) * 2 + 4), B};
  const int G1 = 4 * fit.N + 1, G2 = 4 * fit.M + 1;
  Grid ga = grid_eval(a.f, G1, G2), gb = grid_eval(b.f, G1, G2);
  for (size_t i = 0; i < ga.values.size(); ++i) ga.values[i] = std::log(gb.values[i] / ga.values[i]);
  FourierScalar Lg = grid_fit(ga, fit);
  FourierScalar D = sub(Lg, XGp);
  const double sc = std::max(1.0, ck_norm(Lg, 0));
  double off = 0.0;
  D.for_each_nonzero([&](int, int m, const cd& v) {
    if (m != 0) off += std::abs(v);
  });
  if (off > tol.cls * sc) {
    out.decision = Decision::No;
    out.reason = "ln(f_b/f_a) - X(G_p) depends on theta2";
    return out;
  }
  if (model.foliation.is_kronecker()) {
    // leafwise constants are constants: X(u) = 0
    if (ck_norm(D, 0) > tol.cls * sc) {
      out.decision = Decision::No;
      out.reason = "ln(f_b/f_a) != X(G_p) and only constants are leafwise constant";
      return out;
    }
    out.decision = Decision::Yes;
    out.G = Gp;
    return out;
  }
  // u'(t1) = D / g_X
  FourierScalar Dm = theta2_mean(D);
  BandLimit qb{fit.N, 0, B};
  Grid gd = grid_eval(Dm, 4 * fit.N + 1, 1), gg = grid_eval(nm.gx, 4 * fit.N + 1, 1);
  for (size_t i = 0; i < gd.values.size(); ++i) gd.values[i] /= gg.values[i];
  FourierScalar q = grid_fit(gd, qb);
  if (std::abs(q.coeff(0, 0)) > tol.cls * sc) {
    out.decision = Decision::No;
    out.reason = "u' would have nonzero mean: no periodic u";
    return out;
  }
  out.decision = Decision::Yes;
  out.G = add(Gp, theta1_primitive(q));
  return out;
}

double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (x * (6.0 * x - 15.0) + 10.0);
}

std::vector<Section> retract_path(const Section& s, int steps) {
  if (steps < 1) throw Error(ErrorKind::InvalidInput, "steps must be >= 1");
  std::vector<Section> out;
  for (int j = 0; j <= steps; ++j) {
    double t = double(j) / steps;
    double phi = 1.0 - smoothstep(2.0 * t), psi = 1.0 - smoothstep(2.0 * t - 1.0);
    out.push_back({{scale(s.alpha.coeff, psi)}, scale(s.f, phi)});
  }
  return out;
}

ModelData in_z_model(const BandLimit& band) {
  return ModelData::fibration(FourierScalar::constant(-1.0, band),
                              FourierScalar::constant(1.0, BandLimit{0, 0, band.B_max}));
}

namespace {

// ((1 + sign cos t)/2)^p as a theta1 series, exact binomial expansion
FourierScalar cos_power(int p, double sign, int B) {
  FourierScalar base(BandLimit{1, 0, B});
  base.at(0, 0) = 0.5;
  base.at(1, 0) = 0.25 * sign;
  base.at(-1, 0) = 0.25 * sign;
  FourierScalar r = FourierScalar::constant(1.0, BandLimit{0, 0, B});
  for (int i = 0; i < p; ++i) r = multiply(r, base);
  return r;
}

}  // namespace

LongPathReport long_path_inZ(const BandLimit& band, const BumpParams& params, const Tolerances& tol) {
  if (params.nowhere_zero)
    throw Error(ErrorKind::NoNowhereZeroSolution,
                "with gamma = -dtheta2 and X = d/dtheta1 every Maurer-Cartan (g dtheta2, f(theta1)) needs "
                "g' = -1 on supp f; integrating g' over the circle forces f to vanish somewhere");
  if (params.f_power + 1 > band.N || params.h_power > band.N)
    throw Error(ErrorKind::BandLimitExceeded, "band too small for the bump powers");
  const int B = std::max(band.B_max, 2 * band.N);
  LongPathReport rep;
  FourierScalar s1(BandLimit{1, 0, B});
  s1.at(1, 0) = cd(0, -0.5);
  s1.at(-1, 0) = cd(0, 0.5);
  rep.f = multiply(s1, cos_power(params.f_power, 1.0, B));
  FourierScalar onePlusH = cos_power(params.h_power, -1.0, B);
  rep.H = sub(onePlusH, FourierScalar::constant(1.0, BandLimit{0, 0, B}));
  rep.lossiness = ck_norm(multiply(rep.f, onePlusH), 0) / ck_norm(rep.f, 0);
  if (rep.lossiness > tol.zero)
    throw Error(ErrorKind::BandProjectionTooLossy,
                "H = -1 on supp f is violated by " + std::to_string(rep.lossiness));
  rep.C = 2.0 * M_PI * rep.H.coeff(0, 0).real();
  rep.K = -rep.C / (rep.C + 2.0 * M_PI);
  FourierScalar G = sub(scale(onePlusH, rep.K + 1.0), FourierScalar::constant(1.0, BandLimit{0, 0, B}));
  rep.g_mean = G.coeff(0, 0).real();
  if (std::abs(rep.g_mean) > 1e-14)
    throw Error(ErrorKind::ToleranceUnreachable, "G does not have zero mean");
  rep.g = theta1_primitive(G);
  // sign change of f near t1 = 0 certified with a rounding margin
  rep.t_plus = 0.5;
  rep.t_minus = 2.0 * M_PI - 0.5;
  rep.f_plus = evaluate(rep.f, rep.t_plus, 0.0);
  rep.f_minus = evaluate(rep.f, rep.t_minus, 0.0);
  const double margin = 1e-12 * ck_norm(rep.f, 0);
  rep.sign_change = rep.f_plus > margin && rep.f_minus < -margin;

  ModelData md = in_z_model(BandLimit{band.N, band.M, B});
  rep.h0 = h0_twisted(md, tol).kind;
  for (int j = 0; j < params.samples; ++j) {
    double s = 2.0 * j / (params.samples - 1);
    double psi = smoothstep(s), phi = smoothstep(s - 1.0);
    Section sec{{scale(rep.g, psi)}, scale(rep.f, phi)};
    rep.s_values.push_back(s);
    rep.residuals.push_back(mc_residual(sec, md).norm2);
    rep.path.push_back(std::move(sec));
  }
  rep.endpoint_residual = rep.residuals.back();
  return rep;
}

}  // namespace logdef
