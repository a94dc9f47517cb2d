#pragma once

#include <gmpxx.h>

#include <string>

#include "logdef/exact.hpp"

namespace logdef {

struct RationalInterval {
  mpq_class lo, hi;
  bool contains_zero() const { return sgn(lo) <= 0 && sgn(hi) >= 0; }
  mpq_class width() const { return hi - lo; }
  mpq_class abs_max() const { return abs(lo) > abs(hi) ? abs(lo) : abs(hi); }
};

// Digit cap for enclosure refinement: LOGDEF_PRECISION_DIGITS or 100000.
long precision_digit_cap();
// 10^k as an exact rational
mpq_class pow10q(long k);
// Parse "-1.25e-3"-style decimal text exactly.
mpq_class parse_decimal(const std::string& s);

// Slope of a Kronecker foliation.
class LambdaValue {
 public:
  enum class Mode { Quadratic, Decimal, LiouvilleConstant };

  // (a + b sqrt d)/c with d > 1 squarefree-or-not but not a perfect square.
  static LambdaValue quadratic(long a, long b, long c, long d);
  static LambdaValue decimal(const std::string& digits, const std::string& error_bound);
  static LambdaValue liouville_constant();

  Mode mode() const { return mode_; }
  bool is_generic() const { return mode_ == Mode::Quadratic; }
  bool is_liouville_mode() const { return mode_ != Mode::Quadratic; }
  std::string describe() const;

  double approx() const;
  // Rational enclosure of lambda good to roughly `digits` decimal digits
  // (decimal mode: the stored enclosure regardless of `digits`).
  RationalInterval enclosure(long digits) const;
  // Digits actually delivered by enclosure(digits).
  long effective_digits(long digits) const;
  // Exact value in Q(sqrt d); quadratic mode only.
  Exact exact() const;

  // Certified sign of m + lambda n (+1/-1); refines precision up to the
  // cap, then throws PrecisionExhausted.
  int divisor_sign(long m, long n) const;
  // m + lambda n to double accuracy (sign certified).
  double divisor(long m, long n) const;
  // Enclosure of m + lambda n at the given precision.
  RationalInterval divisor_enclosure(const mpz_class& m, const mpz_class& n, long digits) const;

  // quadratic parameters
  long qa = 0, qb = 0, qc = 1, qd = 0;
  // decimal parameters
  std::string digits_text, error_text;

 private:
  Mode mode_ = Mode::Quadratic;
  mpq_class dec_value_, dec_error_;
};

}  // namespace logdef
