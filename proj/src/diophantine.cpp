#include "logdef/diophantine.hpp"

#include <cmath>
#include <limits>

#include "logdef/errors.hpp"

namespace logdef {

double log10_abs(const mpz_class& z) {
  if (sgn(z) == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log10(std::abs(d)) + double(e) * std::log10(2.0);
}

double log10_abs(const mpq_class& q) {
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log10_abs(q.get_num()) - log10_abs(q.get_den());
}

std::vector<Convergent> rational_convergents(const mpq_class& x, const mpz_class& b_limit) {
  std::vector<Convergent> out;
  mpz_class p = x.get_num(), q = x.get_den();
  mpz_class h1 = 1, h0 = 0, k1 = 0, k0 = 1;  // h_{-1}, h_{-2}, ...
  while (sgn(q) != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    mpz_class r = p - a * q;
    mpz_class h = a * h1 + h0, k = a * k1 + k0;
    out.push_back({h, k});
    h0 = h1;
    h1 = h;
    k0 = k1;
    k1 = k;
    p = q;
    q = r;
    if (sgn(b_limit) > 0 && k > b_limit) break;
  }
  return out;
}

namespace {

// Partial quotients of (P + sqrt D)/Q, exact.
std::vector<mpz_class> quadratic_quotients(const LambdaValue& l, int count) {
  mpz_class P = l.qa, Q = l.qc, D = mpz_class(l.qb) * l.qb * l.qd;
  if (l.qb < 0) {
    P = -P;
    Q = -Q;
  }
  if (sgn(mpz_class(D - P * P) % Q) != 0) {
    mpz_class aq = abs(Q);
    P *= aq;
    D *= Q * Q;
    Q *= aq;
  }
  mpz_class s;
  mpz_sqrt(s.get_mpz_t(), D.get_mpz_t());
  std::vector<mpz_class> out;
  for (int i = 0; i < count; ++i) {
    mpz_class a;
    if (sgn(Q) > 0) {
      mpz_class num = P + s;
      mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    } else {
      mpz_class num = P + s, aq = abs(Q), y;
      mpz_fdiv_q(y.get_mpz_t(), num.get_mpz_t(), aq.get_mpz_t());
      a = -y - 1;
    }
    out.push_back(a);
    P = a * Q - P;
    Q = (D - P * P) / Q;
  }
  return out;
}

std::vector<mpz_class> rational_quotients(mpq_class x) {
  std::vector<mpz_class> out;
  mpz_class p = x.get_num(), q = x.get_den();
  while (sgn(q) != 0) {
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    out.push_back(a);
    mpz_class r = p - a * q;
    p = q;
    q = r;
  }
  return out;
}

std::vector<Convergent> from_quotients(const std::vector<mpz_class>& as) {
  std::vector<Convergent> out;
  mpz_class h1 = 1, h0 = 0, k1 = 0, k0 = 1;
  for (const auto& a : as) {
    mpz_class h = a * h1 + h0, k = a * k1 + k0;
    out.push_back({h, k});
    h0 = h1;
    h1 = h;
    k0 = k1;
    k1 = k;
  }
  return out;
}

mpq_class pow_q(const mpz_class& base, int p) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), (unsigned long)p);
  return mpq_class(r);
}

}  // namespace

std::vector<Convergent> convergents(const LambdaValue& lambda, int count) {
  if (count <= 0) return {};
  if (lambda.mode() == LambdaValue::Mode::Quadratic) return from_quotients(quadratic_quotients(lambda, count));
  const long cap = precision_digit_cap();
  for (long dg = 64;; dg *= 4) {
    long use = std::min(dg, cap);
    RationalInterval e = lambda.enclosure(use);
    auto qa = rational_quotients(e.lo), qb = rational_quotients(e.hi);
    // drop the last quotient of each (its value depends on the representation)
    size_t common = 0;
    while (common + 1 < qa.size() && common + 1 < qb.size() && qa[common] == qb[common]) ++common;
    if (int(common) >= count) {
      qa.resize(count);
      return from_quotients(qa);
    }
    if (use >= cap || lambda.mode() == LambdaValue::Mode::Decimal)
      throw Error(ErrorKind::PrecisionExhausted,
                  "enclosure certifies only " + std::to_string(common) + " partial quotients");
  }
}

LiouvilleCertificate liouville_pairs(const LambdaValue& lambda, int p_max) {
  LiouvilleCertificate cert{lambda, {}};
  const long cap = precision_digit_cap();
  mpz_class last_n = 0;
  long dg = 64;
  for (int p = 1; p <= p_max; ++p) {
    bool found = false;
    while (!found) {
      const long use = std::min(dg, cap);
      RationalInterval e = lambda.enclosure(use);
      std::vector<Convergent> cand;
      if (lambda.mode() == LambdaValue::Mode::Quadratic) {
        cand = convergents(lambda, 64);
      } else {
        // beyond b^2 > 2/width no witness can certify even p = 1
        mpq_class w = e.width();
        mpz_class lim;
        mpq_class bound = mpq_class(2) / w;
        mpz_class bl = bound.get_num() / bound.get_den();
        mpz_sqrt(lim.get_mpz_t(), bl.get_mpz_t());
        cand = rational_convergents(e.lo, lim + 1);
      }
      for (const auto& c : cand) {
        if (sgn(c.b) <= 0 || c.b < p || c.b <= last_n) continue;
        mpz_class m = -c.a, n = c.b;
        RationalInterval d = lambda.divisor_enclosure(m, n, use);
        mpq_class witness = d.abs_max();
        mpq_class rhs = mpq_class(1) / pow_q(abs(m) + abs(n), p);
        if (witness <= rhs) {
          cert.pairs.push_back({p, m, n, witness, use});
          last_n = n;
          found = true;
          break;
        }
      }
      if (found) break;
      if (use >= cap || lambda.mode() != LambdaValue::Mode::LiouvilleConstant) {
        Error err(ErrorKind::SearchExhausted,
                  "no convergent certifies p = " + std::to_string(p) + " within " + std::to_string(use) + " digits");
        err.detail = p;
        throw err;
      }
      dg *= 4;
    }
  }
  return cert;
}

bool verify_certificate(const LiouvilleCertificate& cert, std::string* why) {
  auto fail = [&](const std::string& s) {
    if (why) *why = s;
    return false;
  };
  for (size_t i = 0; i < cert.pairs.size(); ++i) {
    const auto& pr = cert.pairs[i];
    const std::string tag = "p=" + std::to_string(pr.p) + ": ";
    if (pr.n < pr.p) return fail(tag + "n_p < p");
    for (size_t j = 0; j < i; ++j)
      if (cert.pairs[j].m == pr.m && cert.pairs[j].n == pr.n) return fail(tag + "repeated pair");
    RationalInterval d = cert.lambda.divisor_enclosure(pr.m, pr.n, pr.digits);
    if (d.abs_max() > pr.witness) return fail(tag + "witness does not bound |m + lambda n|");
    mpq_class rhs = mpq_class(1) / pow_q(abs(pr.m) + abs(pr.n), pr.p);
    if (pr.witness > rhs) return fail(tag + "witness exceeds (|m|+|n|)^-p");
  }
  return true;
}

double CounterexampleBundle::norm(int k, int l) const {
  for (const auto& r : norms)
    if (r.k == k && r.l == l) return r.norm;
  throw Error(ErrorKind::InvalidInput, "norm not tabulated");
}

CounterexampleBundle build_counterexample(const LiouvilleCertificate& cert, const std::vector<int>& k_list,
                                          double model_C) {
  if (model_C == 0.0) throw Error(ErrorKind::InvalidModel, "C must be nonzero");
  CounterexampleBundle b;
  b.cert = cert;
  b.C = mpq_class(model_C);
  b.k_list = k_list;
  const mpq_class invC = 1 / b.C;
  for (const auto& pr : cert.pairs) {
    BundleEntry e;
    e.p = pr.p;
    e.n = pr.n;
    e.m = pr.m;
    LinLambda div{mpq_class(pr.m), mpq_class(pr.n), 0, 0};  // m + lambda n
    e.gamma = div.times(mpq_class(pr.n), 0);
    // 1/(i C) = -i/C
    e.alpha = div.times(0, -invC);
    // primitive g with i (m + lambda n) g = gamma: gamma = n * div, so g = -i n
    e.primitive = LinLambda{0, 0, -mpq_class(pr.n), 0};
    // check i (m + lambda n) g reproduces gamma: (i * -i n) div = n div
    LinLambda back = div.times(mpq_class(pr.n), 0);
    if (!(back - e.gamma).is_zero()) throw Error(ErrorKind::InvalidInput, "primitive identity fails");
    RationalInterval d = cert.lambda.divisor_enclosure(pr.m, pr.n, pr.digits);
    e.log10_divisor = log10_abs(d.abs_max());
    b.entries.push_back(e);
    b.primitive_magnitude.push_back(pr.n);
  }
  // growth constant: min over p of n_p / p
  double c = std::numeric_limits<double>::infinity();
  for (const auto& e : b.entries) {
    mpq_class r(e.n, e.p);
    r.canonicalize();
    c = std::min(c, r.get_d());
  }
  b.growth_constant = b.entries.empty() ? 0.0 : std::min(1.0, c);
  for (int k : k_list) {
    std::vector<int> support;
    for (const auto& e : b.entries) {
      // L_X alpha_k at (n, m): i C n * alpha coefficient * [p >= k]
      LinLambda lx = e.p >= k ? e.alpha.times(0, b.C * e.n) : LinLambda{};
      LinLambda diff = e.gamma - lx;
      if (!diff.is_zero()) {
        support.push_back(e.p);
        if (sgn(e.n) == 0 && sgn(e.m) == 0) b.all_residuals_formally_exact = false;
      }
    }
    b.residual_support.push_back(support);
    for (int l = 0; l <= 4; ++l) {
      // sum over p >= k of 2 |m + lambda n| / |C| (1 + |n| + |m|)^l
      double mx = -std::numeric_limits<double>::infinity();
      std::vector<double> logs;
      for (const auto& e : b.entries) {
        if (e.p < k) continue;
        mpz_class w = 1 + abs(e.n) + abs(e.m);
        double t = std::log10(2.0) + e.log10_divisor - std::log10(std::abs(model_C)) + l * log10_abs(w);
        logs.push_back(t);
        mx = std::max(mx, t);
      }
      NormRow row{k, l, mx, 0.0};
      if (!logs.empty()) {
        double s = 0.0;
        for (double t : logs) s += std::pow(10.0, t - mx);
        row.log10_norm = mx + std::log10(s);
        row.norm = std::pow(10.0, row.log10_norm);
      }
      b.norms.push_back(row);
    }
  }
  return b;
}

}  // namespace logdef
