#include "logdef/lambda.hpp"

#include <cmath>
#include <cstdlib>

#include "logdef/errors.hpp"

namespace logdef {

long precision_digit_cap() {
  const char* s = std::getenv("LOGDEF_PRECISION_DIGITS");
  if (s && *s) {
    long v = std::atol(s);
    if (v > 0) return v;
  }
  return 100000;
}

mpq_class pow10q(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, (unsigned long)std::labs(k));
  return k >= 0 ? mpq_class(p) : mpq_class(mpz_class(1), p);
}

mpq_class parse_decimal(const std::string& s) {
  size_t epos = s.find_first_of("eE");
  std::string mant = s.substr(0, epos);
  long ex = 0;
  if (epos != std::string::npos) ex = std::stol(s.substr(epos + 1));
  bool negv = false;
  size_t i = 0;
  if (i < mant.size() && (mant[i] == '-' || mant[i] == '+')) negv = mant[i++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false;
  for (; i < mant.size(); ++i) {
    char ch = mant[i];
    if (ch == '.') {
      if (dot) throw Error(ErrorKind::InvalidInput, "bad decimal: " + s);
      dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits += ch;
      if (dot) ++frac;
    } else {
      throw Error(ErrorKind::InvalidInput, "bad decimal: " + s);
    }
  }
  if (digits.empty()) throw Error(ErrorKind::InvalidInput, "bad decimal: " + s);
  mpq_class v(mpz_class(digits, 10));
  v *= pow10q(ex - frac);
  v.canonicalize();
  return negv ? mpq_class(-v) : v;
}

namespace {

bool is_perfect_square(long d) {
  if (d < 0) return false;
  long r = long(std::llround(std::sqrt(double(d))));
  for (long c = std::max(0L, r - 2); c <= r + 2; ++c)
    if (c * c == d) return true;
  return false;
}

mpz_class factorial_z(long k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), (unsigned long)k);
  return f;
}

// Largest J >= 1 with (J+1)! <= digits.
long liouville_level(long digits) {
  long J = 1;
  while (true) {
    mpz_class f = factorial_z(J + 2);
    if (f > digits) break;
    ++J;
    if (J > 12) break;
  }
  return J;
}

}  // namespace

LambdaValue LambdaValue::quadratic(long a, long b, long c, long d) {
  if (c == 0) throw Error(ErrorKind::InvalidLambda, "quadratic lambda: c = 0");
  if (b == 0 || d <= 1 || is_perfect_square(d))
    throw Error(ErrorKind::InvalidLambda,
                "quadratic lambda is rational (b = 0 or d a perfect square)");
  LambdaValue l;
  l.mode_ = Mode::Quadratic;
  l.qa = a;
  l.qb = b;
  l.qc = c;
  l.qd = d;
  return l;
}

LambdaValue LambdaValue::decimal(const std::string& digits, const std::string& err) {
  LambdaValue l;
  l.mode_ = Mode::Decimal;
  l.digits_text = digits;
  l.error_text = err;
  l.dec_value_ = parse_decimal(digits);
  l.dec_error_ = abs(parse_decimal(err));
  if (sgn(l.dec_error_) == 0)
    throw Error(ErrorKind::InvalidLambda, "decimal lambda needs a positive error bound");
  return l;
}

LambdaValue LambdaValue::liouville_constant() {
  LambdaValue l;
  l.mode_ = Mode::LiouvilleConstant;
  return l;
}

std::string LambdaValue::describe() const {
  switch (mode_) {
    case Mode::Quadratic:
      return "(" + std::to_string(qa) + "+" + std::to_string(qb) + "*sqrt(" +
             std::to_string(qd) + "))/" + std::to_string(qc);
    case Mode::Decimal:
      return digits_text + " +- " + error_text;
    case Mode::LiouvilleConstant:
      return "sum_j 10^-(j!)";
  }
  return "";
}

double LambdaValue::approx() const {
  switch (mode_) {
    case Mode::Quadratic:
      return (double(qa) + double(qb) * std::sqrt(double(qd))) / double(qc);
    case Mode::Decimal:
      return dec_value_.get_d();
    case Mode::LiouvilleConstant:
      return 0.1 + 0.01 + 1e-6 + 1e-24;
  }
  return 0.0;
}

long LambdaValue::effective_digits(long digits) const {
  if (mode_ == Mode::LiouvilleConstant) {
    mpz_class f = factorial_z(liouville_level(digits) + 1);
    return f.get_si();
  }
  return digits;
}

RationalInterval LambdaValue::enclosure(long digits) const {
  switch (mode_) {
    case Mode::Quadratic: {
      // sqrt(b^2 d) in [s, s+1] / 10^k
      mpz_class D = mpz_class(qb) * qb * qd;
      mpz_class scaled = D * mpz_class(pow10q(2 * digits));
      mpz_class s;
      mpz_sqrt(s.get_mpz_t(), scaled.get_mpz_t());
      mpq_class den = pow10q(digits);
      mpq_class slo = mpq_class(s) / den, shi = mpq_class(s + 1) / den;
      mpq_class lo, hi;
      if (qb > 0) {
        lo = (mpq_class(qa) + slo) / qc;
        hi = (mpq_class(qa) + shi) / qc;
      } else {
        lo = (mpq_class(qa) - shi) / qc;
        hi = (mpq_class(qa) - slo) / qc;
      }
      if (lo > hi) std::swap(lo, hi);
      return {lo, hi};
    }
    case Mode::Decimal:
      return {dec_value_ - dec_error_, dec_value_ + dec_error_};
    case Mode::LiouvilleConstant: {
      long J = liouville_level(digits);
      mpq_class lo = 0;
      for (long j = 1; j <= J; ++j) lo += pow10q(-factorial_z(j).get_si());
      mpq_class hi = lo + 2 * pow10q(-factorial_z(J + 1).get_si());
      return {lo, hi};
    }
  }
  return {};
}

Exact LambdaValue::exact() const {
  if (mode_ != Mode::Quadratic)
    throw Error(ErrorKind::LiouvilleModeUnsupported,
                "exact arithmetic needs a quadratic-irrational slope");
  Exact r;
  r.ra = mpq_class(qa, qc);
  r.rb = mpq_class(qb, qc);
  r.ra.canonicalize();
  r.rb.canonicalize();
  r.d = qd;
  return r;
}

RationalInterval LambdaValue::divisor_enclosure(const mpz_class& m, const mpz_class& n,
                                                long digits) const {
  RationalInterval e = enclosure(digits);
  mpq_class a = mpq_class(m) + e.lo * n, b = mpq_class(m) + e.hi * n;
  if (a > b) std::swap(a, b);
  return {a, b};
}

int LambdaValue::divisor_sign(long m, long n) const {
  if (n == 0) {
    if (m == 0) return 0;
    return m > 0 ? 1 : -1;
  }
  if (mode_ == Mode::Quadratic) {
    // sign of (m c + n a) + n b sqrt d, divided by sign c
    mpz_class x = mpz_class(m) * qc + mpz_class(n) * qa;
    mpz_class y = mpz_class(n) * qb;
    int sx = sgn(x), sy = sgn(y), s;
    if (sx == 0)
      s = sy;
    else if (sy == 0 || sx == sy)
      s = sx;
    else {
      mpz_class lhs = x * x, rhs = y * y * qd;  // never equal: d not square
      s = (lhs > rhs) ? sx : sy;
    }
    return qc > 0 ? s : -s;
  }
  const long cap = precision_digit_cap();
  for (long dg = 32;; dg *= 4) {
    long use = std::min(dg, cap);
    RationalInterval e = divisor_enclosure(m, n, use);
    if (!e.contains_zero()) return sgn(e.lo);
    if (use >= cap || (mode_ == Mode::Decimal && dg > 32))
      throw Error(ErrorKind::PrecisionExhausted,
                  "cannot certify sign of m + lambda n for (m,n)=(" + std::to_string(m) + "," +
                      std::to_string(n) + ")");
  }
}

double LambdaValue::divisor(long m, long n) const {
  int s = divisor_sign(m, n);
  if (mode_ == Mode::Quadratic) {
    mpz_class x = mpz_class(m) * qc + mpz_class(n) * qa;
    mpz_class y = mpz_class(n) * qb;
    double v;
    if (sgn(x) == 0 || sgn(y) == 0 || sgn(x) == sgn(y)) {
      v = x.get_d() + y.get_d() * std::sqrt(double(qd));
    } else {
      // x + y r = (x^2 - y^2 d) / (x - y r), no cancellation
      mpz_class num = x * x - y * y * qd;
      v = num.get_d() / (x.get_d() - y.get_d() * std::sqrt(double(qd)));
    }
    v /= double(qc);
    return std::copysign(std::abs(v), double(s));
  }
  RationalInterval e = divisor_enclosure(m, n, std::min(64L, precision_digit_cap()));
  mpq_class mid = (e.lo + e.hi) / 2;
  return std::copysign(std::abs(mid.get_d()), double(s));
}

}  // namespace logdef
