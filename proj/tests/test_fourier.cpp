#include "doctest.h"
#include "helpers.hpp"

using namespace logdef;
using namespace th;

TEST_CASE("product of cosines") {
  auto c = cos1(band(1, 0));
  auto p = multiply(c, c);
  CHECK(std::abs(p.coeff(0, 0) - cd(0.5, 0)) < 1e-15);
  CHECK(std::abs(p.coeff(2, 0) - cd(0.25, 0)) < 1e-15);
  CHECK(std::abs(p.coeff(1, 0)) < 1e-15);
  CHECK(multiply(c, FourierScalar(band(0, 0))).is_zero());
}

TEST_CASE("sin times cos has -+i/4 at (+-2,0)") {
  auto p = multiply(sin1(band(1, 0)), cos1(band(1, 0)));
  CHECK(std::abs(p.coeff(2, 0) - cd(0, -0.25)) < 1e-15);
  CHECK(std::abs(p.coeff(-2, 0) - cd(0, 0.25)) < 1e-15);
  // exact path agrees without rounding
  auto e = multiply(to_exact(sin1(band(1, 0))), to_exact(cos1(band(1, 0))));
  CHECK(e.coeff(2, 0) == Exact(0, mpq_class(-1, 4)));
}

TEST_CASE("band cap is enforced") {
  auto f = series({{3, 0, 1, 0}}, band(3, 0, 5));
  CHECK_THROWS_AS(multiply(f, f), Error);
}

TEST_CASE("partial derivatives") {
  auto d = partial_theta1(sin1(band(1, 0)));
  CHECK(max_abs_diff(d, cos1(band(1, 0))) < 1e-16);
  CHECK(partial_theta2(FourierScalar::constant(3.0, band(0, 0))).is_zero());
  FourierScalar b(band(2, 1));
  b.at(2, 1) = cd(0.3, 0.1);
  auto db = partial_theta1(b);
  CHECK(std::abs(db.coeff(2, 1) - cd(0.3, 0.1) * cd(0, 2)) < 1e-16);
  // finite differences on a real-valued table
  auto f = series({{2, 1, 0.3, 0.1}}, band(2, 1));
  auto df = partial_theta1(f);
  double h = 1e-5, worst = 0;
  for (int j = 0; j < 16; ++j) {
    double t1 = 0.37 * j, t2 = 0.21 * j;
    double fd = (evaluate(f, t1 + h, t2) - evaluate(f, t1 - h, t2)) / (2 * h);
    worst = std::max(worst, std::abs(fd - evaluate(df, t1, t2)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("fiber integral") {
  auto c = cos1(band(1, 0));
  auto I = fiber_integral(multiply(c, c));
  for (int j = 0; j < 64; ++j) {
    double t = 2 * M_PI * j / 64;
    CHECK(std::abs(evaluate(I, t, 0) - 2 * M_PI * std::cos(t) * std::cos(t)) < 1e-12);
  }
  CHECK(fiber_integral(cos2(band(0, 1))).is_zero());
  CHECK(std::abs(fiber_integral(FourierScalar::constant(1.0, band(0, 0))).coeff(0, 0) - cd(2 * M_PI, 0)) < 1e-15);
}

TEST_CASE("exp_of") {
  ExpReport rep;
  auto e0 = exp_of(FourierScalar(band(2, 2)), 1e-14, &rep);
  CHECK(std::abs(e0.coeff(0, 0) - cd(1, 0)) < 1e-15);
  auto ec = exp_of(FourierScalar::constant(0.7, band(0, 0)), 1e-14);
  CHECK(std::abs(ec.coeff(0, 0).real() - std::exp(0.7)) < 1e-13);
  auto es = exp_of(sin1(band(1, 0, 40)), 1e-14, &rep);
  CHECK(std::abs(evaluate(es, M_PI / 2, 0) - std::exp(1.0)) < 1e-13 + rep.projection_error);
  CHECK(hermitian_defect(es) == 0.0);
  CHECK_THROWS_AS(exp_of(FourierScalar::constant(50.0, band(0, 0)), 1e-14, nullptr, 20), Error);
}

TEST_CASE("grids") {
  auto s = sin1(band(1, 0));
  auto g = grid_eval(s, 5, 5);
  CHECK(max_abs_diff(grid_fit(g, band(1, 0)), s) < 1e-12);
  auto two = grid_eval(FourierScalar::constant(2.0, band(0, 0)), 4, 3);
  for (double v : two.values) CHECK(std::abs(v - 2.0) < 1e-15);
  Grid c;
  c.G1 = c.G2 = 7;
  c.values.resize(49);
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) c.at(j, k) = std::cos(2 * c.theta2(k));
  auto fit = grid_fit(c, band(3, 3));
  CHECK(std::abs(fit.coeff(0, 2) - cd(0.5, 0)) < 1e-12);
  CHECK(std::abs(fit.coeff(0, -2) - cd(0.5, 0)) < 1e-12);
  CHECK(ck_norm(fit, 0) < 1.0 + 1e-12);
  CHECK_THROWS_AS(grid_fit(c, band(4, 3)), Error);
}

TEST_CASE("algebraic properties on random tables") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    auto a = random_series(rng, band(3, 3));
    auto b = random_series(rng, band(2, 4));
    auto c = random_series(rng, band(4, 1));
    CHECK(max_abs_diff(multiply(a, b), multiply(b, a)) < 1e-13);
    CHECK(max_abs_diff(multiply(multiply(a, b), c), multiply(a, multiply(b, c))) < 1e-12);
    CHECK(max_abs_diff(multiply(a, add(b, c)), add(multiply(a, b), multiply(a, c))) < 1e-13);
    CHECK(ck_norm(multiply(a, b), 0) <= ck_norm(a, 0) * ck_norm(b, 0) * (1 + 1e-12));
    CHECK(hermitian_defect(multiply(a, b)) == 0.0);
    CHECK(exactly_equal(partial_theta1(partial_theta2(a)), partial_theta2(partial_theta1(a))));
    CHECK(fiber_integral(partial_theta2(a)).is_zero());
  }
  // exact mode: identities hold with equality
  for (int t = 0; t < 10; ++t) {
    auto a = random_exact(rng, band(2, 2)), b = random_exact(rng, band(2, 2)), c = random_exact(rng, band(2, 2));
    CHECK(exactly_equal(multiply(a, b), multiply(b, a)));
    CHECK(exactly_equal(multiply(multiply(a, b), c), multiply(a, multiply(b, c))));
    CHECK(exactly_equal(multiply(a, add(b, c)), add(multiply(a, b), multiply(a, c))));
    CHECK(is_hermitian_exact(multiply(a, b)));
  }
}

TEST_CASE("serial and parallel kernels agree") {
  std::mt19937_64 rng(11);
  auto a = random_series(rng, band(12, 10));
  auto b = random_series(rng, band(9, 12));
  auto ps = multiply(a, b, Exec::Serial), pp = multiply(a, b, Exec::Parallel);
  CHECK(max_abs_diff(ps, pp) < 1e-13);
  auto gs = grid_eval(a, 31, 29, Exec::Serial), gp = grid_eval(a, 31, 29, Exec::Parallel);
  double d = 0;
  for (size_t i = 0; i < gs.values.size(); ++i) d = std::max(d, std::abs(gs.values[i] - gp.values[i]));
  CHECK(d < 1e-13);
  CHECK(max_abs_diff(grid_fit(gs, a.band(), Exec::Serial), grid_fit(gp, a.band(), Exec::Parallel)) < 1e-13);
  // collocation path matches the serial direct convolution
  FourierScalar direct(BandLimit{a.N() + b.N(), a.M() + b.M(), 64});
  kernels::serial::convolve(a.data(), a.N(), a.M(), b.data(), b.N(), b.M(), direct.data());
  CHECK(max_abs_diff(direct, ps) < 1e-12);
}
