#pragma once

#include <complex>
#include <gmpxx.h>
#include <string>

namespace logdef {

using cd = std::complex<double>;

// Element of Q(sqrt d)[i]: (ra + rb*sqrt d) + i*(ia + ib*sqrt d).
// d == 0 means the value is a plain Gaussian rational.  Values over
// different nonzero radicands cannot be mixed.
class Exact {
 public:
  mpq_class ra, rb, ia, ib;
  long d = 0;

  Exact() = default;
  Exact(long v) : ra(v) {}  // NOLINT implicit from integers is convenient
  Exact(const mpq_class& re, const mpq_class& im = 0) : ra(re), ia(im) {}

  static Exact from_double(double re, double im = 0.0);
  static Exact from_cd(cd z) { return from_double(z.real(), z.imag()); }
  static Exact sqrt_of(long d);
  static Exact imag_unit() { return Exact(0, 1); }

  bool is_zero() const;
  Exact conj() const;
  cd to_cd() const;
  double abs() const { return std::abs(to_cd()); }
  std::string str() const;

  Exact operator-() const;
  Exact& operator+=(const Exact& o);
  Exact& operator-=(const Exact& o);
  Exact& operator*=(const Exact& o);
  Exact& operator/=(const Exact& o);
  friend Exact operator+(Exact a, const Exact& b) { return a += b; }
  friend Exact operator-(Exact a, const Exact& b) { return a -= b; }
  friend Exact operator*(Exact a, const Exact& b) { return a *= b; }
  friend Exact operator/(Exact a, const Exact& b) { return a /= b; }
  friend bool operator==(const Exact& a, const Exact& b);
  friend bool operator!=(const Exact& a, const Exact& b) { return !(a == b); }

 private:
  void normalize();
};

// Scalar helpers shared by the double and exact code paths.
inline cd conj_s(const cd& x) { return std::conj(x); }
inline Exact conj_s(const Exact& x) { return x.conj(); }
inline double abs_s(const cd& x) { return std::abs(x); }
inline double abs_s(const Exact& x) { return x.abs(); }
inline bool is_zero_s(const cd& x) { return x == cd(0.0, 0.0); }
inline bool is_zero_s(const Exact& x) { return x.is_zero(); }
inline cd to_cd(const cd& x) { return x; }
inline cd to_cd(const Exact& x) { return x.to_cd(); }
// x * i * k
inline cd times_ik(const cd& x, long k) {
  return cd(-x.imag() * double(k), x.real() * double(k));
}
Exact times_ik(const Exact& x, long k);

template <class S>
S scalar_from_int(long v) {
  return S(double(v));
}
template <>
inline Exact scalar_from_int<Exact>(long v) {
  return Exact(v);
}

}  // namespace logdef
