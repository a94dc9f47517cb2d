#include <chrono>

#include "doctest.h"
#include "helpers.hpp"
#include "logdef/oracle.hpp"

using namespace logdef;
using namespace th;

namespace {

ExactScalar one() { return ExactScalar::constant(Exact(1), BandLimit{0, 0, 64}); }

PolyMultiVector random_mv(std::mt19937_64& rng, int degree, int max_poly) {
  std::uniform_int_distribution<int> mask(0, 15), pw(0, max_poly);
  PolyMultiVector v(degree);
  for (int k = 0; k < 3; ++k) {
    int msk;
    do msk = mask(rng);
    while (std::popcount(unsigned(msk)) != degree);
    int a = pw(rng), b = pw(rng);
    if (a + b > max_poly) b = 0;
    v.add_term(uint8_t(msk), a, b, random_exact(rng, band(1, 1), 0.5).with_cap(64));
  }
  return v;
}

ModelT<Exact> exact_fib(const ExactScalar& gamma, const ExactScalar& gx) {
  ModelT<Exact> m;
  m.fol.kind = FoliationKind::Fibration;
  m.gamma = gamma.with_cap(64);
  m.gx = gx.with_cap(64);
  return m;
}

SectionT<Exact> random_exact_section(std::mt19937_64& rng, BandLimit b) {
  return {{random_exact(rng, b).with_cap(64)}, random_exact(rng, b).with_cap(64)};
}

}  // namespace

TEST_CASE("schouten on vector fields is the Lie bracket") {
  auto s1 = to_exact(sin1(band(1, 0)));
  // [sin t1 d1, xi d_xi] = 0 (commuting coordinates)
  CHECK(schouten(mv_vector(0, s1), mv_vector(2, one(), 1, 0)).is_zero());
  // [d1, sin t1 d2] = cos t1 d2
  auto br = schouten(mv_vector(0, one()), mv_vector(1, s1));
  CHECK(br == mv_vector(1, to_exact(cos1(band(1, 0)))));
  // [xi d_xi, xi^2 d_t] = 2 xi^2 d_t
  auto e = schouten(mv_vector(2, one(), 1, 0), mv_vector(3, one(), 2, 0));
  CHECK(e == mv_vector(3, ExactScalar::constant(Exact(2), BandLimit{0, 0, 64}), 2, 0));
  // [X, f] = X(f)
  CHECK(schouten(mv_vector(0, one()), mv_function(s1)) == mv_function(partial_theta1(s1)));
  auto c = wedge(mv_vector(1, one()), mv_vector(2, one()));
  CHECK(schouten(c, c).is_zero());
}

TEST_CASE("graded symmetry and Jacobi on random multivectors") {
  std::mt19937_64 rng(5);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    std::uniform_int_distribution<int> dg(0, 2);
    int p = dg(rng), q = dg(rng), r = dg(rng);
    if (p + q + r - 2 > 4) continue;
    auto a = random_mv(rng, p, 1), b = random_mv(rng, q, 1), c = random_mv(rng, r, 1);
    auto ab = schouten(a, b), ba = schouten(b, a);
    bool odd = ((p - 1) * (q - 1)) & 1;
    CHECK((odd ? ab - ba : ab + ba).is_zero());
    CHECK(jacobiator(a, b, c).is_zero());
    ++checked;
  }
  CHECK(checked >= 20);
  PolyMultiVector deep(3);
  deep.add_term(7, 0, 0, one());
  CHECK_THROWS_AS(schouten(deep, deep), Error);
  CHECK_THROWS_AS(mv_function(one(), 3, 2), Error);
}

TEST_CASE("shipped models are Poisson") {
  auto unob = assemble_model(fib_gamma0());
  CHECK(schouten(unob.pi, unob.pi).is_zero());
  CHECK(exactly_equal(unob.pi.coeff(0b1001, 0, 1), one()));   // t d1 ^ d_t
  CHECK(exactly_equal(unob.pi.coeff(0b0110), one()));         // d2 ^ d_xi
  auto inz = assemble_model(fib_gamma_minus_dt2());
  CHECK(schouten(inz.pi, inz.pi).is_zero());
  CHECK(exactly_equal(inz.pi.coeff(0b1100, 0, 1), ExactScalar::constant(Exact(-1), BandLimit{0, 0, 64})));
  auto kr = assemble_model(kron(1, 1));
  CHECK(schouten(kr.pi, kr.pi).is_zero());
  CHECK(exactly_equal(kr.pi.coeff(0b0101), ExactScalar::constant(golden().exact(), BandLimit{0, 0, 64})));
  // any gamma(t1,t2) with gx(t1) works on the fibration
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    auto gx = random_exact(rng, band(2, 0), 0.6, true);
    CHECK_NOTHROW(assemble_model(exact_fib(random_exact(rng, band(2, 2)), gx)));
  }
  // gx depending on t2 breaks Jacobi
  auto bad = exact_fib(ExactScalar(band(0, 0)), to_exact(cos2(band(0, 1))));
  CHECK_THROWS_AS(assemble_model(bad), Error);
}

TEST_CASE("pushforward") {
  auto mb = assemble_model(fib_gamma0());
  SectionT<Exact> zero{{ExactScalar(band(0, 0))}, ExactScalar(band(0, 0))};
  CHECK(translate_pushforward(mb.pi, zero) == mb.pi);
  // t d_t picks up f d_t
  std::mt19937_64 rng(2);
  auto s = random_exact_section(rng, band(2, 2));
  auto e = translate_pushforward(mb.euler, s);
  CHECK(exactly_equal(e.coeff(0b1000, 0, 0), s.f));
  CHECK(exactly_equal(e.coeff(0b1000, 0, 1), one()));
  // Pi_can shifts by the Lie derivative along the vertical translation
  SectionT<Exact> only_a{s.alpha, ExactScalar(band(0, 0))};
  auto moved = translate_pushforward(mb.pi_can, only_a) - mb.pi_can;
  CHECK(exactly_equal(moved.coeff(0b0110), ExactScalar(band(0, 0))));
  CHECK(moved.is_zero());  // d2 ^ d_xi is invariant: the correction is a_2 d_xi ^ d_xi
  DglaElement<Exact> p = vertical_projection(mb.pi_can);
  CHECK(p.second.is_zero());
  CHECK(vertical_projection(mv_vector(0, one())).first.is_zero());
}

TEST_CASE("pushforward projection equals the MC residual") {
  std::mt19937_64 rng(17);
  std::vector<ModelT<Exact>> models = {fib_gamma0().exact(), fib_gamma_minus_dt2().exact(), kron(1, 1).exact()};
  for (int t = 0; t < 4; ++t)
    models.push_back(exact_fib(random_exact(rng, band(2, 2)), [&] {
      auto g = random_exact(rng, band(2, 0), 0.6, true);
      g.at(0, 0) = Exact(2);
      return g;
    }()));
  int n = 0;
  for (const auto& m : models)
    for (int t = 0; t < 4; ++t) {
      auto s = random_exact_section(rng, band(3, 3));
      auto rep = verify_mc(m, s);
      CHECK(rep.ok);
      ++n;
    }
  CHECK(n >= 20);
}

TEST_CASE("derived brackets match the DGLA with the sign table") {
  CHECK(linfty_sign1(0) == 1);
  CHECK(linfty_sign2(1, 0) == -1);
  CHECK(linfty_sign2(0, 1) == 1);
  auto gens = band11_generators();
  CHECK(gens.size() == 36);
  for (const auto& m : {fib_gamma0().exact(), fib_gamma_minus_dt2().exact(), kron(1, 1).exact()}) {
    auto rep = verify_low_brackets(m, gens);
    CHECK(rep.ok);
    CHECK(rep.checked > 36);
  }
}

TEST_CASE("lambda3 on random degree-1 triples") {
  std::mt19937_64 rng(23);
  auto m = fib_gamma_minus_dt2().exact();
  auto mb = assemble_model(m);
  for (int t = 0; t < 10; ++t) {
    std::vector<DglaElement<Exact>> xs;
    for (int k = 0; k < 3; ++k) xs.push_back(DglaElement<Exact>::from_section(random_exact_section(rng, band(2, 2))));
    auto v = linfty_bracket(mb, xs);
    CHECK(v.first.is_zero());
    CHECK(v.second.is_zero());
  }
}

TEST_CASE("higher brackets vanish on all band-(1,1) generator tuples") {
  auto t0 = std::chrono::steady_clock::now();
  auto gens = band11_generators();
  for (const auto& m : {fib_gamma0().exact(), kron(1, 1).exact()}) {
    auto r3 = verify_higher_vanish(m, 3, gens);
    CHECK(r3.ok);
    CHECK(r3.checked == 36 * 36 * 36);
    auto r4 = verify_higher_vanish(m, 4, gens);
    CHECK(r4.ok);
    CHECK(r4.checked == 82251);
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("exhaustive lambda3/lambda4 time: " << secs << " s");
  CHECK(secs < 60.0);
}
