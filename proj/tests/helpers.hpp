#pragma once

#include <random>
#include <tuple>
#include <vector>

#include "logdef/foliated.hpp"

namespace th {

using namespace logdef;

inline BandLimit band(int N, int M, int B = 64) { return {N, M, B}; }

// Table of (n, m, re, im); Hermitian partners are added automatically.
inline FourierScalar series(std::initializer_list<std::tuple<int, int, double, double>> entries,
                            BandLimit b) {
  FourierScalar f(b);
  for (auto [n, m, re, im] : entries) {
    f.at(n, m) += cd(re, im);
    if (n != 0 || m != 0) f.at(-n, -m) += cd(re, -im);
  }
  return f;
}

inline FourierScalar cos1(BandLimit b) { return series({{1, 0, 0.5, 0.0}}, b); }
inline FourierScalar sin1(BandLimit b) { return series({{1, 0, 0.0, -0.5}}, b); }
inline FourierScalar cos2(BandLimit b) { return series({{0, 1, 0.5, 0.0}}, b); }
inline FourierScalar sin2(BandLimit b) { return series({{0, 1, 0.0, -0.5}}, b); }

// Random Hermitian table with coefficients scaled by amp / (1+|n|+|m|)^decay.
inline FourierScalar random_series(std::mt19937_64& rng, BandLimit b, double amp = 1.0,
                                   double decay = 1.0, bool theta1_only = false) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  FourierScalar f(b);
  for (int n = 0; n <= b.N; ++n)
    for (int m = -b.M; m <= b.M; ++m) {
      if (n == 0 && m < 0) continue;
      if (theta1_only && m != 0) continue;
      double w = amp / std::pow(1.0 + n + std::abs(m), decay);
      cd v(U(rng) * w, (n == 0 && m == 0) ? 0.0 : U(rng) * w);
      f.at(n, m) = v;
      if (n != 0 || m != 0) f.at(-n, -m) = std::conj(v);
    }
  return f;
}

// Random Hermitian table with small-integer-over-small-denominator entries,
// exactly representable; `density` of the half-plane slots filled.
inline ExactScalar random_exact(std::mt19937_64& rng, BandLimit b, double density = 0.4,
                                bool theta1_only = false) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  ExactScalar f(b);
  for (int n = 0; n <= b.N; ++n)
    for (int m = -b.M; m <= b.M; ++m) {
      if (n == 0 && m < 0) continue;
      if (theta1_only && m != 0) continue;
      if (U(rng) > density) continue;
      Exact v(mpq_class(num(rng), den(rng)), (n == 0 && m == 0) ? mpq_class(0) : mpq_class(num(rng), den(rng)));
      v.ra.canonicalize();
      v.ia.canonicalize();
      f.at(n, m) = v;
      if (n != 0 || m != 0) f.at(-n, -m) = v.conj();
    }
  return f;
}

inline double sup_diff_on_grid(const FourierScalar& f, const std::function<double(double, double)>& g,
                               int G = 32) {
  double d = 0.0;
  for (int j = 0; j < G; ++j)
    for (int k = 0; k < G; ++k) {
      double t1 = 2 * M_PI * j / G, t2 = 2 * M_PI * k / G;
      d = std::max(d, std::abs(evaluate(f, t1, t2) - g(t1, t2)));
    }
  return d;
}

}  // namespace th

namespace th {

inline LambdaValue golden() { return LambdaValue::quadratic(1, 1, 2, 5); }

inline ModelData fib(const FourierScalar& gamma, BandLimit b = band(8, 8)) {
  return ModelData::fibration(gamma.with_cap(b.B_max), FourierScalar::constant(1.0, BandLimit{0, 0, b.B_max}));
}
inline ModelData fib_gamma0(BandLimit b = band(8, 8)) { return fib(FourierScalar(b), b); }
inline ModelData fib_gamma_minus_dt2(BandLimit b = band(8, 8)) {
  return fib(FourierScalar::constant(-1.0, b), b);
}
inline ModelData kron(double C, double K, BandLimit b = band(8, 8)) {
  return ModelData::kronecker(golden(), C, K, b);
}

}  // namespace th

#include "logdef/paths.hpp"

namespace th {

// theta2-only random series (leafwise closed alpha with L_X alpha = 0)
inline FourierScalar random_theta2(std::mt19937_64& rng, BandLimit b, double amp = 1.0) {
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  FourierScalar f(b);
  for (int m = 0; m <= b.M; ++m) {
    cd v(U(rng) * amp / (1 + m), m == 0 ? 0.0 : U(rng) * amp / (1 + m));
    f.at(0, m) = v;
    if (m) f.at(0, -m) = std::conj(v);
  }
  return f;
}

// Random Maurer-Cartan section on the gamma = 0 fibration model (X = d/dt1):
// either (alpha, 0), or (alpha(t2), f(t1)) with f nowhere zero when asked.
inline Section random_mc_gamma0(std::mt19937_64& rng, BandLimit b, bool nowhere_zero) {
  std::bernoulli_distribution coin(0.3);
  if (!nowhere_zero && coin(rng)) return {{random_series(rng, b)}, FourierScalar(b)};
  FourierScalar f = random_series(rng, b, 0.5, 2.0, true);
  if (nowhere_zero) f.at(0, 0) = 3.0;
  return {{random_theta2(rng, b)}, f};
}

}  // namespace th
