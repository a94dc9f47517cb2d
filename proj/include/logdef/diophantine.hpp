#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "logdef/lambda.hpp"

namespace logdef {

struct Convergent {
  mpz_class a, b;  // a / b
};

// Continued-fraction convergents.  Quadratic slopes are expanded exactly;
// other modes keep only the partial quotients shared by both ends of the
// enclosure (refined up to the digit cap).
std::vector<Convergent> convergents(const LambdaValue& lambda, int count);

// Convergents of an exact rational (terminating expansion).
std::vector<Convergent> rational_convergents(const mpq_class& x, const mpz_class& b_limit = 0);

struct LiouvillePair {
  int p = 0;
  mpz_class m, n;
  mpq_class witness;  // certified |m + lambda n| <= witness
  long digits = 0;    // enclosure precision used for the witness
};

struct LiouvilleCertificate {
  LambdaValue lambda;
  std::vector<LiouvillePair> pairs;
};

// For p = 1..p_max find (m, n) = (-a, b) from convergents with
// |m + lambda n| <= (|m| + |n|)^{-p}, n >= p, n strictly increasing.
LiouvilleCertificate liouville_pairs(const LambdaValue& lambda, int p_max);

// Exact re-verification; `why` receives the first failure.
bool verify_certificate(const LiouvilleCertificate& cert, std::string* why = nullptr);

// (re_a + re_b lambda) + i (im_a + im_b lambda), lambda kept symbolic.
struct LinLambda {
  mpq_class re_a, re_b, im_a, im_b;
  bool is_zero() const { return sgn(re_a) == 0 && sgn(re_b) == 0 && sgn(im_a) == 0 && sgn(im_b) == 0; }
  friend LinLambda operator-(const LinLambda& x, const LinLambda& y) {
    return {x.re_a - y.re_a, x.re_b - y.re_b, x.im_a - y.im_a, x.im_b - y.im_b};
  }
  // times a Gaussian rational (u + i v)
  LinLambda times(const mpq_class& u, const mpq_class& v) const {
    return {u * re_a - v * im_a, u * re_b - v * im_b, u * im_a + v * re_a, u * im_b + v * re_b};
  }
};

struct BundleEntry {
  int p = 0;
  mpz_class n, m;      // mode (n, m); the conjugate mode (-n, -m) is implied
  LinLambda gamma;     // n (m + lambda n)
  LinLambda alpha;     // (m + lambda n) / (i C), multiplied by [p >= k] in alpha_k
  LinLambda primitive; // gamma / (i (m + lambda n))
  double log10_divisor = 0.0;  // log10 |m + lambda n| (upper end of the enclosure)
};

struct NormRow {
  int k = 0, l = 0;
  double log10_norm = 0.0;  // -inf when alpha_k = 0
  double norm = 0.0;
};

struct CounterexampleBundle {
  LiouvilleCertificate cert;
  mpq_class C;
  std::vector<BundleEntry> entries;
  std::vector<int> k_list;
  // gamma - L_X alpha_k: p values whose mode survives, for each k
  std::vector<std::vector<int>> residual_support;
  bool all_residuals_formally_exact = true;
  // |primitive coefficient at (n_p, m_p)| = primitive_magnitude[p-1]
  std::vector<mpz_class> primitive_magnitude;
  double growth_constant = 0.0;  // c with |g_p| >= c p
  std::vector<NormRow> norms;     // l = 0..4 for every k in k_list
  double norm(int k, int l) const;
};

CounterexampleBundle build_counterexample(const LiouvilleCertificate& cert, const std::vector<int>& k_list,
                                          double model_C = 1.0);

double log10_abs(const mpq_class& q);
double log10_abs(const mpz_class& z);

}  // namespace logdef
