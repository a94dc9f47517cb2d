#include <chrono>

#include "doctest.h"
#include "helpers.hpp"
#include "logdef/cohomology.hpp"
#include "logdef/diophantine.hpp"

using namespace logdef;
using namespace th;

TEST_CASE("golden ratio convergents are Fibonacci ratios") {
  auto cs = convergents(golden(), 8);
  const long fib[] = {1, 1, 2, 3, 5, 8, 13, 21, 34, 55};
  REQUIRE(cs.size() == 8);
  for (int i = 0; i < 8; ++i) {
    CHECK(cs[i].a == fib[i + 1]);
    CHECK(cs[i].b == fib[i]);
  }
  // |lambda - a/b| < 1/b^2 against a high-precision enclosure
  auto e = golden().enclosure(200);
  for (const auto& c : convergents(golden(), 40)) {
    mpq_class q(c.a, c.b);
    q.canonicalize();
    mpq_class d1 = abs(e.lo - q), d2 = abs(e.hi - q);
    CHECK(std::max(d1, d2) < mpq_class(1) / (mpq_class(c.b) * c.b));
  }
}

TEST_CASE("other quadratic slopes") {
  // sqrt 2 = [1; 2, 2, 2, ...]
  auto cs = convergents(LambdaValue::quadratic(0, 1, 1, 2), 5);
  CHECK(cs[0].a == 1);
  CHECK(cs[1].a == 3);
  CHECK(cs[1].b == 2);
  CHECK(cs[4].a == 41);
  CHECK(cs[4].b == 29);
  // (1 - sqrt 5)/2 = -0.618 = [-1; 2, 1, 1, ...]
  auto neg = convergents(LambdaValue::quadratic(1, -1, 2, 5), 4);
  CHECK(neg[0].a == -1);
  CHECK(neg[1].a == -1);
  CHECK(neg[1].b == 2);
  CHECK_THROWS_AS(LambdaValue::quadratic(1, 0, 1, 2), Error);
  CHECK_THROWS_AS(LambdaValue::quadratic(1, 1, 1, 4), Error);
}

TEST_CASE("Liouville constant convergents include the partial sums") {
  auto cs = convergents(LambdaValue::liouville_constant(), 4);
  bool has11 = false;
  for (const auto& c : cs)
    if (c.a == 11 && c.b == 100) has11 = true;
  CHECK(has11);
  // decimal enclosure too coarse for many quotients
  auto d = LambdaValue::decimal("0.1234", "1e-4");
  CHECK_THROWS_AS(convergents(d, 30), Error);
}

TEST_CASE("Liouville pairs for the built-in constant") {
  auto t0 = std::chrono::steady_clock::now();
  auto cert = liouville_pairs(LambdaValue::liouville_constant(), 6);
  REQUIRE(cert.pairs.size() == 6);
  std::string why;
  CHECK(verify_certificate(cert, &why));
  CHECK(why.empty());
  CHECK(cert.pairs[0].m == 0);
  CHECK(cert.pairs[0].n == 1);
  CHECK(cert.pairs[1].m == -1);
  CHECK(cert.pairs[1].n == 9);
  for (size_t i = 1; i < cert.pairs.size(); ++i) CHECK(cert.pairs[i].n > cert.pairs[i - 1].n);
  // tampered certificates are rejected
  auto bad = cert;
  bad.pairs[2].witness *= pow10q(40);
  CHECK_FALSE(verify_certificate(bad));
  auto bad2 = cert;
  bad2.pairs[1].m += 1;
  CHECK_FALSE(verify_certificate(bad2));
  MESSAGE("liouville_pairs(6): " << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
                                 << " s");
}

TEST_CASE("golden ratio exhausts the search at p = 1") {
  try {
    liouville_pairs(golden(), 3);
    FAIL("expected SearchExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SearchExhausted);
    CHECK(e.detail == 1);
  }
}

TEST_CASE("counterexample bundle") {
  auto cert = liouville_pairs(LambdaValue::liouville_constant(), 6);
  std::vector<int> ks{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12};
  auto b = build_counterexample(cert, ks, 1.0);
  REQUIRE(b.entries.size() == 6);
  // k = 1 cancels completely; in general the residual lives on p < k
  for (size_t i = 0; i < ks.size(); ++i) {
    std::vector<int> want;
    for (int p = 1; p < ks[i] && p <= 6; ++p) want.push_back(p);
    CHECK(b.residual_support[i] == want);
  }
  CHECK(b.all_residuals_formally_exact);
  // primitive magnitude n_p >= p
  for (size_t i = 0; i < b.entries.size(); ++i) CHECK(b.primitive_magnitude[i] >= b.entries[i].p);
  CHECK(b.growth_constant == 1.0);
  // norms: monotone in k, below 1e-6 by k = 12
  for (int l = 0; l <= 4; ++l)
    for (size_t i = 1; i < ks.size(); ++i) CHECK(b.norm(ks[i], l) <= b.norm(ks[i - 1], l));
  CHECK(b.norm(12, 2) < 1e-6);
  CHECK(b.norm(1, 2) > 0.1);
}

TEST_CASE("truncated counterexample gamma through the spectral layer") {
  // p <= 2 fits a Fourier table: modes (1, 0) and (9, -1)
  auto lam = LambdaValue::liouville_constant();
  FoliationSpec ks{FoliationKind::Kronecker, lam};
  FourierScalar g(band(9, 1));
  for (auto [n, m] : {std::pair{1, 0}, std::pair{9, -1}}) {
    double d = lam.divisor(m, n);
    g.at(n, m) = d * n;
    g.at(-n, -m) = d * n;
  }
  auto r = is_exact(FoliatedOneForm{g}, ks);
  CHECK(r.formally_exact);
  CHECK(std::abs(r.primitive->coeff(1, 0)) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.primitive->coeff(9, -1)) == doctest::Approx(9.0).epsilon(1e-12));
}
