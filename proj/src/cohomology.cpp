#include "logdef/cohomology.hpp"

#include <omp.h>

#include <cmath>

namespace logdef {

const char* decision_name(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Undecided: return "undecided";
  }
  return "?";
}

const char* h0_kind_name(H0Basis::Kind k) {
  switch (k) {
    case H0Basis::Kind::FunctionsOfTheta1Annihilating: return "functions_of_theta1_annihilating";
    case H0Basis::Kind::Line: return "line";
    case H0Basis::Kind::Zero: return "zero";
  }
  return "?";
}

FourierScalar fiber_primitive(const FourierScalar& c) {
  FourierScalar g(c.band());
  c.for_each_nonzero([&](int n, int m, const cd& v) {
    if (m != 0) g.at(n, m) = v / cd(0.0, double(m));
  });
  return g;
}

namespace {

double scale_of(const FourierScalar& f) { return std::max(1.0, ck_norm(f, 0)); }

ClassReport kronecker_primitive(const FoliatedOneForm& eta, const FoliationSpec& spec,
                                const Tolerances& tol) {
  const LambdaValue& lam = *spec.lambda;
  ClassReport rep;
  FourierScalar g(eta.coeff.band());
  double sdf = 0.0;
  eta.coeff.for_each_nonzero([&](int n, int m, const cd& v) {
    if (n == 0 && m == 0) return;
    double dv = lam.divisor(m, n);  // throws PrecisionExhausted
    g.at(n, m) = v / cd(0.0, dv);
    sdf = std::max(sdf, std::abs(v) / std::abs(dv));
  });
  rep.small_divisor_factor = sdf;
  rep.formally_exact = std::abs(eta.coeff.coeff(0, 0)) < tol.cls * scale_of(eta.coeff);
  rep.residual = ck_norm(sub(d_foliated(g, spec).coeff, eta.coeff), 0);
  rep.decision = rep.formally_exact ? Decision::Yes : Decision::No;
  if (!rep.formally_exact) rep.reason = "nonzero (0,0) coefficient";
  rep.primitive = g;
  return rep;
}

}  // namespace

ClassReport is_exact(const FoliatedOneForm& eta, const FoliationSpec& spec, const Tolerances& tol) {
  if (spec.is_kronecker()) return kronecker_primitive(eta, spec, tol);
  ClassReport rep;
  FourierScalar g = fiber_primitive(eta.coeff);
  double mean_mass = ck_norm(theta2_mean(eta.coeff), 0);
  rep.formally_exact = mean_mass < tol.cls * scale_of(eta.coeff);
  rep.decision = rep.formally_exact ? Decision::Yes : Decision::No;
  rep.residual = ck_norm(sub(d_foliated(g, spec).coeff, eta.coeff), 0);
  if (!rep.formally_exact) rep.reason = "fiber integral does not vanish";
  rep.primitive = g;
  return rep;
}

H0Basis h0_twisted(const ModelData& model, const Tolerances& tol) {
  H0Basis out;
  const FoliatedOneForm& gamma = model.gamma;
  if (model.foliation.is_kronecker()) {
    ClassReport r = is_exact(gamma, model.foliation, tol);
    if (!r.formally_exact) {
      if (model.foliation.lambda->is_liouville_mode())
        throw Error(ErrorKind::LiouvilleModeUnsupported,
                    "H^0 for a non-exact gamma with a Liouville slope");
      out.kind = H0Basis::Kind::Zero;
      out.note = "gamma is not exact";
      return out;
    }
    out.kind = H0Basis::Kind::Line;
    out.generators.push_back(exp_of(neg(*r.primitive), tol.exp));
    out.bandlimited_dim = 1;
    out.note = "generator exp(-g) with d_F g = gamma";
    return out;
  }
  // gamma = h(t1) dt2 + d_F u
  FourierScalar h = theta2_mean(gamma.coeff);
  FourierScalar u = fiber_primitive(gamma.coeff);
  const double thresh = tol.zero * std::max({ck_norm(h, 0), ck_norm(gamma.coeff, 0), 1e-300});
  out.zero_set = zero_arcs_theta1(h, thresh, 30);
  const double covered = total_length(out.zero_set);
  const BandLimit& b = gamma.coeff.band();
  if (out.zero_set.empty()) {
    out.kind = H0Basis::Kind::Zero;
    out.note = "h has no zeros: H^0 vanishes";
    return out;
  }
  out.kind = H0Basis::Kind::FunctionsOfTheta1Annihilating;
  if (covered >= 2.0 * M_PI - 1e-12) {
    out.bandlimited_dim = 2 * b.N + 1;
    FourierScalar w = u.is_zero() ? FourierScalar::constant(1.0, BandLimit{0, 0, b.B_max})
                                  : exp_of(neg(u), tol.exp);
    BandLimit fb{b.N, 0, b.B_max};
    out.generators.push_back(w);
    for (int n = 1; n <= b.N; ++n) {
      FourierScalar c(fb), s(fb);
      c.at(n, 0) = 0.5;
      c.at(-n, 0) = 0.5;
      s.at(n, 0) = cd(0, -0.5);
      s.at(-n, 0) = cd(0, 0.5);
      out.generators.push_back(multiply(c, w));
      out.generators.push_back(multiply(s, w));
    }
    out.note = "h vanishes identically: every f(theta1) (times exp(-u)) is a cocycle";
  } else {
    out.bandlimited_dim = 0;
    out.note = "h vanishes only on the listed arcs; a band-limited f(theta1) cannot vanish on "
               "the complement, so the truncated space is {0}";
  }
  return out;
}

namespace {

// d^h k = rho with h = h(t1) canonical.
ClassReport solve_canonical(const FourierScalar& rho, const FourierScalar& h, bool h_zero,
                            const Tolerances& tol) {
  ClassReport rep;
  const double sc = scale_of(rho);
  const BandLimit rb = rho.band();
  if (h_zero) {
    FourierScalar k = fiber_primitive(rho);
    double mean_mass = ck_norm(theta2_mean(rho), 0);
    rep.primitive = k;
    rep.residual = mean_mass;
    rep.decision = mean_mass < tol.cls * sc ? Decision::Yes : Decision::No;
    if (rep.decision == Decision::No) rep.reason = "fiber mean survives";
    return rep;
  }
  bool h_const = true;
  h.for_each_nonzero([&](int n, int, const cd&) {
    if (n != 0) h_const = false;
  });
  if (h_const) {
    const double h0 = h.coeff(0, 0).real();
    FourierScalar k(rb);
    rho.for_each_nonzero([&](int n, int m, const cd& v) {
      cd div(h0, double(m));
      if (std::abs(div) < tol.divisor) {
        if (std::abs(v) >= tol.cls * sc)
          throw Error(ErrorKind::DivisorNearZero, "divisor im + h vanishes at m = " + std::to_string(m));
        return;
      }
      k.at(n, m) = v / div;
    });
    rep.primitive = k;
    rep.decision = Decision::Yes;
    return rep;
  }
  // per-fiber solve at theta1 collocation nodes; the node count grows until
  // the canonical equation is met or B_max is reached
  const int M = rb.M;
  auto solve_at = [&](int Nfit) {
    const int G1 = 2 * Nfit + 1;
    std::vector<cd> kv(size_t(G1) * (2 * M + 1));
    bool near_zero = false;
#pragma omp parallel for schedule(static)
    for (int j = 0; j < G1; ++j) {
      const double t = 2.0 * M_PI * j / G1;
      double hj = 0.0;
      for (int n = -h.N(); n <= h.N(); ++n) hj += (h.coeff(n, 0) * std::polar(1.0, n * t)).real();
      for (int m = -M; m <= M; ++m) {
        cd rm = 0;
        for (int n = -rb.N; n <= rb.N; ++n) rm += rho.coeff(n, m) * std::polar(1.0, n * t);
        cd div(hj, double(m));
        cd val = 0;
        if (std::abs(div) < tol.divisor) {
          if (std::abs(rm) >= tol.cls * sc) {
#pragma omp critical
            near_zero = true;
          }
        } else {
          val = rm / div;
        }
        kv[size_t(j) * (2 * M + 1) + (m + M)] = val;
      }
    }
    if (near_zero)
      throw Error(ErrorKind::DivisorNearZero,
                  "|im + h(theta1)| below tolerance where the right-hand side is not negligible");
    FourierScalar k(BandLimit{Nfit, M, rb.B_max});
    for (int n = -Nfit; n <= Nfit; ++n)
      for (int m = -M; m <= M; ++m) {
        cd acc = 0;
        for (int j = 0; j < G1; ++j)
          acc += kv[size_t(j) * (2 * M + 1) + (m + M)] * std::polar(1.0, -n * 2.0 * M_PI * j / G1);
        k.at(n, m) = acc / double(G1);
      }
    return hermitize(k);
  };
  const int B = rb.B_max;
  int Nfit = std::min(B - h.N(), 2 * (rb.N + h.N()) + 8);
  FourierScalar k;
  for (;;) {
    k = solve_at(Nfit);
    FourierScalar lhs = add(partial_theta2(k), multiply_into(k, h, BandLimit{Nfit + h.N(), M, B}, nullptr));
    if (ck_norm(sub(lhs, rho), 0) < 0.1 * tol.cls * sc || Nfit >= B - h.N()) break;
    Nfit = std::min(B - h.N(), 2 * Nfit);
  }
  rep.primitive = k;
  rep.decision = Decision::Yes;
  return rep;
}

}  // namespace

ClassReport h1_twisted_is_zero_class(const FoliatedOneForm& eta, const ModelData& model,
                                     const Tolerances& tol) {
  const double sc = scale_of(eta.coeff);
  ClassReport rep;
  if (model.foliation.is_kronecker()) {
    const LambdaValue& lam = *model.foliation.lambda;
    const double K = model.K;
    FourierScalar k(eta.coeff.band());
    bool ok = true;
    eta.coeff.for_each_nonzero([&](int n, int m, const cd& v) {
      if (n == 0 && m == 0 && std::abs(K) < tol.divisor) {
        if (std::abs(v) >= tol.cls * sc) ok = false;
        return;
      }
      double dv = (n == 0 && m == 0) ? 0.0 : lam.divisor(m, n);
      k.at(n, m) = v / cd(K, dv);
    });
    rep.primitive = k;
    rep.decision = ok ? Decision::Yes : Decision::No;
    if (!ok) rep.reason = "(0,0) coefficient survives";
  } else {
    const FourierScalar h = theta2_mean(model.gamma.coeff);
    const FourierScalar u = fiber_primitive(model.gamma.coeff);
    const bool h_zero = ck_norm(h, 0) <= tol.zero * std::max(1.0, ck_norm(model.gamma.coeff, 0));
    if (u.is_zero()) {
      rep = solve_canonical(eta.coeff, h, h_zero, tol);
    } else {
      // conjugate: d^{h + d_F u}(e^{-u} k~) = e^{-u} d^h k~
      FourierScalar eu = exp_of(u, tol.exp);
      FourierScalar rho = multiply_into(eu, eta.coeff, BandLimit{std::min(eu.N() + eta.coeff.N(), eta.coeff.band().B_max),
                                                                 std::min(eu.M() + eta.coeff.M(), eta.coeff.band().B_max),
                                                                 eta.coeff.band().B_max}, nullptr);
      rep = solve_canonical(rho, h, h_zero, tol);
      if (rep.primitive) {
        FourierScalar emu = exp_of(neg(u), tol.exp);
        const int B = eta.coeff.band().B_max;
        rep.primitive = multiply_into(emu, *rep.primitive,
                                      BandLimit{std::min(emu.N() + rep.primitive->N(), B),
                                                std::min(emu.M() + rep.primitive->M(), B), B},
                                      nullptr);
      }
    }
    if (rep.decision == Decision::No) return rep;
  }
  // residual of the returned k against the original equation
  if (rep.primitive) {
    const ModelT<cd> nm = model.numeric();
    const FourierScalar& k = *rep.primitive;
    const int B = std::max(k.band().B_max, k.N() + nm.gamma.N());
    FourierScalar kk = k.with_cap(std::max(B, k.M() + nm.gamma.M()));
    FourierScalar lhs = d_twisted(kk, OneFormT<cd>{nm.gamma.with_cap(kk.band().B_max)}, nm.fol).coeff;
    rep.residual = ck_norm(sub(lhs, eta.coeff.with_cap(kk.band().B_max)), 0);
    rep.decision = rep.residual < tol.cls * sc ? Decision::Yes : Decision::No;
    if (rep.decision == Decision::No && rep.reason.empty()) rep.reason = "residual above tolerance";
  }
  rep.formally_exact = rep.decision == Decision::Yes;
  return rep;
}

ExtendReport extends_to_closed(const FoliatedOneForm& alpha, const ModelData& model, const Tolerances& tol) {
  ExtendReport out;
  FoliatedOneForm L = lie_x(alpha, model);
  out.lie_class = is_exact(L, model.foliation, tol);
  out.decision = out.lie_class.decision;
  if (out.decision != Decision::Yes) return out;
  FourierScalar g = *out.lie_class.primitive;
  if (!model.foliation.is_kronecker()) {
    // normalise to vanish on the loop t2 = 0
    for (int n = -g.N(); n <= g.N(); ++n) {
      cd s = 0;
      for (int m = -g.M(); m <= g.M(); ++m)
        if (m != 0) s += g.coeff(n, m);
      g.at(n, 0) = -s;
    }
  }
  out.h = g;
  return out;
}

TangentDims poisson_tangent_dims(const ModelData& model, const BandLimit& band, const Tolerances& tol) {
  TangentDims d;
  if (model.foliation.is_kronecker()) {
    d.first = 0;
    d.gamma_in_image = true;
    d.h0 = std::abs(model.K) < tol.cls ? 1 : 0;
    d.note = "every closed foliated 1-form extends to a closed form";
    if (model.foliation.lambda->is_liouville_mode())
      d.note += "; Liouville slope: the smooth H^1 is infinite-dimensional, counts are formal";
    return d;
  }
  const FourierScalar& g = model.gamma.coeff;
  double off = 0.0;
  for (int n = -g.N(); n <= g.N(); ++n)
    if (n != 0) off += std::abs(g.coeff(n, 0));
  d.gamma_in_image = off < tol.cls * std::max(1.0, ck_norm(g, 0));
  d.first = std::max(0, 2 * band.N - (d.gamma_in_image ? 0 : 1));
  ModelData md = model;
  md.gamma = {model.gamma.coeff.resized(BandLimit{band.N, std::max(band.M, g.M()),
                                                   std::max({band.B_max, band.N, g.M()})})};
  H0Basis h0 = h0_twisted(md, tol);
  d.h0 = h0.bandlimited_dim;
  d.note = "Im r = {a dtheta2 : a[n,0] = 0 for n != 0}";
  return d;
}

}  // namespace logdef
