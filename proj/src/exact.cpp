#include "logdef/exact.hpp"

#include <cmath>

#include "logdef/errors.hpp"

namespace logdef {

namespace {

long join_radicand(const Exact& a, const Exact& b) {
  if (a.d == 0) return b.d;
  if (b.d == 0 || a.d == b.d) return a.d;
  throw Error(ErrorKind::InvalidInput, "cannot mix values from Q(sqrt " +
                                           std::to_string(a.d) + ") and Q(sqrt " +
                                           std::to_string(b.d) + ")");
}

// (a + b r)(c + e r) with r^2 = d
void qmul(const mpq_class& a, const mpq_class& b, const mpq_class& c,
          const mpq_class& e, long d, mpq_class& x, mpq_class& y) {
  mpq_class xx = a * c + b * e * d;
  y = a * e + b * c;
  x = xx;
}

}  // namespace

Exact Exact::from_double(double re, double im) {
  Exact r;
  r.ra = mpq_class(re);
  r.ia = mpq_class(im);
  return r;
}

Exact Exact::sqrt_of(long d) {
  Exact r;
  r.rb = 1;
  r.d = d;
  return r;
}

bool Exact::is_zero() const {
  return sgn(ra) == 0 && sgn(rb) == 0 && sgn(ia) == 0 && sgn(ib) == 0;
}

void Exact::normalize() {
  if (sgn(rb) == 0 && sgn(ib) == 0) d = 0;
}

Exact Exact::conj() const {
  Exact r = *this;
  r.ia = -r.ia;
  r.ib = -r.ib;
  return r;
}

cd Exact::to_cd() const {
  double s = d > 0 ? std::sqrt(double(d)) : 0.0;
  return cd(ra.get_d() + rb.get_d() * s, ia.get_d() + ib.get_d() * s);
}

std::string Exact::str() const {
  std::string s = "(" + ra.get_str();
  if (sgn(rb) != 0) s += "+" + rb.get_str() + "*sqrt(" + std::to_string(d) + ")";
  s += ") + i(" + ia.get_str();
  if (sgn(ib) != 0) s += "+" + ib.get_str() + "*sqrt(" + std::to_string(d) + ")";
  return s + ")";
}

Exact Exact::operator-() const {
  Exact r = *this;
  r.ra = -r.ra;
  r.rb = -r.rb;
  r.ia = -r.ia;
  r.ib = -r.ib;
  return r;
}

Exact& Exact::operator+=(const Exact& o) {
  d = join_radicand(*this, o);
  ra += o.ra;
  rb += o.rb;
  ia += o.ia;
  ib += o.ib;
  normalize();
  return *this;
}

Exact& Exact::operator-=(const Exact& o) {
  d = join_radicand(*this, o);
  ra -= o.ra;
  rb -= o.rb;
  ia -= o.ia;
  ib -= o.ib;
  normalize();
  return *this;
}

Exact& Exact::operator*=(const Exact& o) {
  long dd = join_radicand(*this, o);
  mpq_class p1, p2, q1, q2, r1, r2, s1, s2;
  qmul(ra, rb, o.ra, o.rb, dd, p1, p2);  // re*re
  qmul(ia, ib, o.ia, o.ib, dd, q1, q2);  // im*im
  qmul(ra, rb, o.ia, o.ib, dd, r1, r2);  // re*im
  qmul(ia, ib, o.ra, o.rb, dd, s1, s2);  // im*re
  ra = p1 - q1;
  rb = p2 - q2;
  ia = r1 + s1;
  ib = r2 + s2;
  d = dd;
  normalize();
  return *this;
}

Exact& Exact::operator/=(const Exact& o) {
  if (o.is_zero()) throw Error(ErrorKind::InvalidInput, "exact division by zero");
  long dd = join_radicand(*this, o);
  // |o|^2 = p + q sqrt d
  mpq_class p1, p2, q1, q2;
  qmul(o.ra, o.rb, o.ra, o.rb, dd, p1, p2);
  qmul(o.ia, o.ib, o.ia, o.ib, dd, q1, q2);
  mpq_class p = p1 + q1, q = p2 + q2;
  Exact num = *this;
  num *= o.conj();
  // multiply by (p - q sqrt d) / (p^2 - q^2 d)
  mpq_class den = p * p - q * q * dd;
  mpq_class x1, x2, y1, y2;
  qmul(num.ra, num.rb, p, -q, dd, x1, x2);
  qmul(num.ia, num.ib, p, -q, dd, y1, y2);
  ra = x1 / den;
  rb = x2 / den;
  ia = y1 / den;
  ib = y2 / den;
  d = dd;
  normalize();
  return *this;
}

bool operator==(const Exact& a, const Exact& b) {
  if (a.d != 0 && b.d != 0 && a.d != b.d) return false;
  return a.ra == b.ra && a.rb == b.rb && a.ia == b.ia && a.ib == b.ib;
}

Exact times_ik(const Exact& x, long k) {
  Exact r;
  r.d = x.d;
  r.ra = -x.ia * k;
  r.rb = -x.ib * k;
  r.ia = x.ra * k;
  r.ib = x.rb * k;
  if (k == 0) r.d = 0;
  return r;
}

}  // namespace logdef
