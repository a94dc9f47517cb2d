#include "logdef/fourier.hpp"

#include <cmath>
#include <limits>

namespace logdef {

namespace {

long nnz(const FourierScalar& f) {
  long c = 0;
  for (size_t i = 0; i < f.size(); ++i)
    if (f.data()[i] != cd(0, 0)) ++c;
  return c;
}

FourierScalar multiply_colloc(const FourierScalar& a, const FourierScalar& b,
                              const BandLimit& rb, Exec e) {
  const int G1 = 2 * rb.N + 1, G2 = 2 * rb.M + 1;
  std::vector<cd> va(size_t(G1) * G2), vb(size_t(G1) * G2);
  kernels::eval(e, a.data(), a.N(), a.M(), G1, G2, va.data());
  kernels::eval(e, b.data(), b.N(), b.M(), G1, G2, vb.data());
  for (size_t i = 0; i < va.size(); ++i) va[i] *= vb[i];
  FourierScalar r(rb);
  kernels::fit(e, va.data(), G1, G2, rb.N, rb.M, r.data());
  return r;
}

}  // namespace

FourierScalar multiply(const FourierScalar& a, const FourierScalar& b, Exec e) {
  BandLimit rb = product_band(a, b);
  const double G1 = 2 * rb.N + 1, G2 = 2 * rb.M + 1;
  const double colloc_cost = 1.5 * G1 * G2 * (G1 + G2);
  const double direct_cost = double(nnz(a)) * double(nnz(b));
  FourierScalar r(rb);
  if (direct_cost <= colloc_cost) {
    kernels::convolve(e, a.data(), a.N(), a.M(), b.data(), b.N(), b.M(), r.data());
  } else {
    r = multiply_colloc(a, b, rb, e);
  }
  if (hermitian_defect(a) == 0.0 && hermitian_defect(b) == 0.0) r = hermitize(r);
  return r;
}

FourierScalar multiply_into(const FourierScalar& a, const FourierScalar& b,
                            const BandLimit& target, double* dropped) {
  const int big = std::max({a.N() + b.N(), a.M() + b.M(), a.band().B_max, b.band().B_max});
  FourierScalar p = multiply(a.with_cap(big), b.with_cap(big));
  return p.resized(target, dropped);
}

FourierScalar fiber_integral(const FourierScalar& f) {
  return scale(theta2_mean(f), 2.0 * M_PI);
}

FourierScalar hermitize(const FourierScalar& f) {
  FourierScalar r(f.band());
  f.for_each([&](int n, int m, const cd& v) {
    r.at(n, m) = 0.5 * (v + std::conj(f.coeff(-n, -m)));
  });
  return r;
}

double evaluate(const FourierScalar& f, double t1, double t2) {
  cd acc = 0;
  f.for_each_nonzero([&](int n, int m, const cd& v) {
    acc += v * std::polar(1.0, n * t1 + m * t2);
  });
  return acc.real();
}

ExactScalar to_exact(const FourierScalar& f) {
  ExactScalar r(f.band());
  f.for_each_nonzero([&](int n, int m, const cd& v) { r.at(n, m) = Exact::from_cd(v); });
  return r;
}

FourierScalar to_numeric(const ExactScalar& f) {
  FourierScalar r(f.band());
  f.for_each_nonzero([&](int n, int m, const Exact& v) { r.at(n, m) = v.to_cd(); });
  return r;
}

FourierScalar exp_of(const FourierScalar& f, double tol, ExpReport* report, int max_order) {
  const int B = f.band().B_max;
  if (f.N() > B || f.M() > B)
    throw Error(ErrorKind::BandLimitExceeded, "exp_of: input band exceeds B_max");
  const double a = ck_norm(f, 0);
  // smallest J with a^{J+1}/(J+1)! e^a < tol
  int J = 0;
  double t = a * std::exp(a);  // a^{1}/1! e^a
  while (t >= tol) {
    ++J;
    if (J > max_order)
      throw Error(ErrorKind::ToleranceUnreachable,
                  "exp_of: Taylor order would exceed cap " + std::to_string(max_order));
    t *= a / double(J + 1);
  }
  double dropped = 0.0;
  FourierScalar term = FourierScalar::constant(1.0, BandLimit{0, 0, B});
  FourierScalar sum = term;
  const double trim = tol / (10.0 * double(std::max(J, 1)));
  for (int j = 1; j <= J; ++j) {
    BandLimit pb{std::min(term.N() + f.N(), B), std::min(term.M() + f.M(), B), B};
    term = multiply_into(term, f, pb, &dropped);
    term = scale(term, 1.0 / double(j));
    const double thr = trim / double(term.size());
    term = term.resized(support_band(term, thr), &dropped);
    sum = add(sum, term);
  }
  sum = sum.resized(support_band(sum, trim / double(sum.size())), &dropped);
  if (report) {
    report->order = J;
    report->tail_bound = t;
    report->projection_error = dropped;
  }
  return hermitian_defect(f) == 0.0 ? hermitize(sum) : sum;
}

Grid grid_eval(const FourierScalar& f, int G1, int G2, Exec e) {
  Grid g;
  g.G1 = G1;
  g.G2 = G2;
  std::vector<cd> v(size_t(G1) * G2);
  kernels::eval(e, f.data(), f.N(), f.M(), G1, G2, v.data());
  g.values.resize(v.size());
  for (size_t i = 0; i < v.size(); ++i) g.values[i] = v[i].real();
  return g;
}

FourierScalar grid_fit(const Grid& g, const BandLimit& band, Exec e) {
  if (g.G1 < 2 * band.N + 1 || g.G2 < 2 * band.M + 1)
    throw Error(ErrorKind::GridTooSmall,
                "grid " + std::to_string(g.G1) + "x" + std::to_string(g.G2) +
                    " too small for band (" + std::to_string(band.N) + "," +
                    std::to_string(band.M) + ")");
  std::vector<cd> v(g.values.begin(), g.values.end());
  FourierScalar r(band);
  kernels::fit(e, v.data(), g.G1, g.G2, band.N, band.M, r.data());
  return hermitize(r);
}

FourierScalar grid_map(const FourierScalar& f, const BandLimit& fit_band,
                       const std::function<double(double)>& fn) {
  const int G1 = 4 * std::max(fit_band.N, f.N()) + 1;
  const int G2 = 4 * std::max(fit_band.M, f.M()) + 1;
  Grid g = grid_eval(f, G1, G2);
  for (auto& v : g.values) v = fn(v);
  return grid_fit(g, fit_band);
}

}  // namespace logdef
