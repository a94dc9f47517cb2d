#include "doctest.h"
#include "helpers.hpp"

using namespace logdef;
using namespace th;

TEST_CASE("d_foliated on the fibration") {
  FoliationSpec fs;
  CHECK(d_foliated(sin1(band(1, 0)), fs).coeff.is_zero());
  auto d = d_foliated(sin2(band(0, 1)), fs).coeff;
  CHECK(max_abs_diff(d, cos2(band(0, 1))) < 1e-16);
}

TEST_CASE("d_foliated on a Kronecker foliation multiplies by i(m + lambda n)") {
  FoliationSpec ks{FoliationKind::Kronecker, golden()};
  const double lam = (1 + std::sqrt(5.0)) / 2;
  FourierScalar f(band(3, 3));
  f.at(2, -1) = cd(0.7, 0.2);
  auto d = d_foliated(f, ks).coeff;
  CHECK(std::abs(d.coeff(2, -1) - cd(0.7, 0.2) * cd(0, -1 + 2 * lam)) < 1e-14);
  // exact path
  Leafwise<Exact> lw{FoliationKind::Kronecker, golden().exact()};
  ExactScalar e(band(3, 3));
  e.at(2, -1) = Exact(1);
  auto de = d_foliated(e, lw).coeff;
  CHECK(de.coeff(2, -1) == times_ik(Exact(1), -1) + golden().exact() * times_ik(Exact(1), 2));
}

TEST_CASE("Leibniz rule is exact") {
  std::mt19937_64 rng(11);
  for (auto kind : {FoliationKind::Fibration, FoliationKind::Kronecker}) {
    Leafwise<Exact> lw{kind, kind == FoliationKind::Kronecker ? golden().exact() : Exact(0)};
    for (int t = 0; t < 10; ++t) {
      auto f = random_exact(rng, band(3, 3));
      auto g = random_exact(rng, band(3, 3));
      auto lhs = d_foliated(multiply(f, g), lw).coeff;
      auto rhs = add(multiply(f, d_foliated(g, lw).coeff), multiply(g, d_foliated(f, lw).coeff));
      CHECK(exactly_equal(lhs, rhs));
    }
  }
}

TEST_CASE("conjugation: e^g d^{eta + d_F g}(f) = d^eta(e^g f)") {
  std::mt19937_64 rng(5);
  FoliationSpec fs;
  auto lw = leafwise(fs);
  for (int t = 0; t < 5; ++t) {
    BandLimit b = band(2, 2, 32);
    auto f = random_series(rng, b, 0.5, 2.0);
    auto g = random_series(rng, b, 0.3, 2.0);
    auto eta = random_series(rng, b, 0.5, 2.0);
    auto eg = exp_of(g, 1e-14);
    const int B = 64;
    auto shifted = OneFormT<cd>{add(eta, d_foliated(g, fs).coeff)};
    auto left = multiply(eg.with_cap(B), d_twisted(f.with_cap(B), OneFormT<cd>{shifted.coeff.with_cap(B)}, lw).coeff);
    auto egf = multiply(eg.with_cap(B), f.with_cap(B));
    auto right = d_twisted(egf, OneFormT<cd>{eta.with_cap(B)}, lw).coeff;
    CHECK(ck_norm(sub(left, right), 0) < 1e-10);
  }
}

TEST_CASE("d_twisted of e^{-g} c vanishes when eta = d_F g") {
  FoliationSpec fs{FoliationKind::Kronecker, golden()};
  auto g = series({{1, 1, 0.2, 0.1}, {0, 2, 0.1, 0}}, band(1, 2, 32));
  auto eta = d_foliated(g, fs);
  auto e = exp_of(neg(g), 1e-15).with_cap(64);
  auto r = d_twisted(e, OneFormT<cd>{eta.coeff.with_cap(64)}, leafwise(fs)).coeff;
  CHECK(ck_norm(r, 0) < 1e-10);
}

TEST_CASE("lie_x") {
  auto md = fib_gamma0(band(2, 2));
  auto r = lie_x(FoliatedOneForm{sin1(band(1, 0))}, md).coeff;
  CHECK(max_abs_diff(r, cos1(band(1, 0))) < 1e-16);
  CHECK(lie_x(FoliatedOneForm{FourierScalar::constant(2.0, band(0, 0))}, md).coeff.is_zero());
  // X = C d/dt1 against a finite-difference flow pull-back
  auto km = kron(1.7, 0.0, band(3, 3));
  auto a = series({{2, 1, 0.3, -0.2}, {1, -3, 0.1, 0.05}}, band(3, 3));
  auto la = lie_x(FoliatedOneForm{a}, km).coeff;
  CHECK(std::abs(la.coeff(2, 1) - cd(0.3, -0.2) * cd(0, 2 * 1.7)) < 1e-14);
  double h = 1e-5, worst = 0;
  for (int j = 0; j < 20; ++j) {
    double t1 = 0.31 * j, t2 = 0.47 * j;
    double fd = (evaluate(a, t1 + 1.7 * h, t2) - evaluate(a, t1 - 1.7 * h, t2)) / (2 * h);
    worst = std::max(worst, std::abs(fd - evaluate(la, t1, t2)));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("Cartan: L_X d_F = d_F X exactly") {
  std::mt19937_64 rng(3);
  auto gx = to_exact(series({{0, 0, 2, 0}, {1, 0, 0.5, 0.25}}, band(1, 0)));
  for (auto kind : {FoliationKind::Fibration, FoliationKind::Kronecker}) {
    ModelT<Exact> m;
    m.fol = {kind, kind == FoliationKind::Kronecker ? golden().exact() : Exact(0)};
    m.gx = kind == FoliationKind::Kronecker ? ExactScalar::constant(Exact(mpq_class(3, 2)), band(0, 0)) : gx;
    for (int t = 0; t < 10; ++t) {
      auto f = random_exact(rng, band(3, 3));
      auto lhs = lie_x(d_foliated(f, m.fol), m).coeff;
      auto rhs = d_foliated(x_of(f, m), m.fol).coeff;
      CHECK(exactly_equal(lhs, rhs));
    }
  }
}

TEST_CASE("canonical representative") {
  FoliationSpec fs;
  auto eta = add(sin1(band(1, 1)), cos2(band(1, 1)));
  auto c = canonical_representative(FoliatedOneForm{eta}, fs).coeff;
  CHECK(max_abs_diff(c, sin1(band(1, 0))) < 1e-16);
  auto c2 = canonical_representative(FoliatedOneForm{c}, fs).coeff;
  CHECK(exactly_equal(c, c2));
  // remainder is d_F exact
  auto rem = sub(eta, c);
  CHECK(max_abs_diff(d_foliated(sin2(band(1, 1)), fs).coeff, rem) < 1e-16);
  FoliationSpec ks{FoliationKind::Kronecker, golden()};
  auto e2 = series({{0, 0, 0.75, 0}, {1, 2, 0.1, 0.1}}, band(2, 2));
  auto k = canonical_representative(FoliatedOneForm{e2}, ks).coeff;
  CHECK(std::abs(k.coeff(0, 0) - 0.75) < 1e-16);
  CHECK(ck_norm(k, 0) == doctest::Approx(0.75));
  FoliationSpec ls{FoliationKind::Kronecker, LambdaValue::liouville_constant()};
  CHECK_THROWS_AS(canonical_representative(FoliatedOneForm{e2}, ls), Error);
}

TEST_CASE("model validation") {
  CHECK_NOTHROW(fib_gamma0().validate());
  auto bad_gx = ModelData::fibration(FourierScalar(band(2, 2)), sin1(band(1, 0, 64)));
  CHECK_THROWS_AS(bad_gx.validate(), Error);
  auto bad_m = ModelData::fibration(FourierScalar(band(2, 2)), cos2(band(0, 1, 64)));
  CHECK_THROWS_AS(bad_m.validate(), Error);
  CHECK_NOTHROW(kron(1, 1).validate());
  CHECK_THROWS_AS(kron(0, 1).validate(), Error);
  auto k = kron(1, 1);
  k.gamma.coeff.at(1, 0) = 0.1;
  CHECK_THROWS_AS(k.validate(), Error);
}
