#pragma once

#include <optional>
#include <string>
#include <vector>

#include "logdef/cohomology.hpp"

namespace logdef {

// Element of Gamma(wedge^k T*F) + Gamma(wedge^{k-1} T*F) on 1-dimensional
// leaves.  deg 0: (g, -), deg 1: (alpha, f), deg 2: (-, beta).  Degrees
// >= 3 are the zero space and carry nothing.
template <class S>
struct DglaElement {
  int degree = 0;
  FourierSeries<S> first;   // wedge^k part (nonzero only for k <= 1)
  FourierSeries<S> second;  // wedge^{k-1} part (nonzero only for 1 <= k <= 2)

  static DglaElement zero(int deg) { return {deg, {}, {}}; }
  static DglaElement from_function(const FourierSeries<S>& g) { return {0, g, {}}; }
  static DglaElement from_section(const SectionT<S>& s) { return {1, s.alpha.coeff, s.f}; }
  static DglaElement from_two_form(const FourierSeries<S>& beta) { return {2, {}, beta}; }
  SectionT<S> section() const { return {{first}, second}; }
};

template <class S>
bool dgla_equal(const DglaElement<S>& a, const DglaElement<S>& b) {
  return a.degree == b.degree && exactly_equal(a.first, b.first) && exactly_equal(a.second, b.second);
}

template <class S>
DglaElement<S> dgla_add(const DglaElement<S>& a, const DglaElement<S>& b) {
  if (a.degree != b.degree) throw Error(ErrorKind::InvalidInput, "adding elements of different degree");
  return {a.degree, add(a.first, b.first), add(a.second, b.second)};
}

template <class S>
DglaElement<S> dgla_scale(const DglaElement<S>& a, const S& s) {
  return {a.degree, scale(a.first, s), scale(a.second, s)};
}

// d(a, b) = (-d_F a, -d_F b - gamma b)
template <class S>
DglaElement<S> dgla_d(const DglaElement<S>& x, const ModelT<S>& model) {
  DglaElement<S> r = DglaElement<S>::zero(x.degree + 1);
  if (x.degree == 0) {
    r.first = neg(d_foliated(x.first, model.fol).coeff);
    r.second = FourierSeries<S>(BandLimit{0, 0, x.first.band().B_max});
  } else if (x.degree == 1) {
    r.first = FourierSeries<S>(BandLimit{0, 0, x.second.band().B_max});
    r.second = neg(add(d_foliated(x.second, model.fol).coeff, multiply(x.second, model.gamma)));
  }
  return r;
}

// [[(a,b),(c,e)]] = (0, L_X a ^ e - (-1)^{kl} L_X c ^ b); a wedge of two
// leafwise 1-forms vanishes.
template <class S>
DglaElement<S> dgla_bracket(const DglaElement<S>& x, const DglaElement<S>& y, const ModelT<S>& model) {
  const int k = x.degree, l = y.degree;
  DglaElement<S> r = DglaElement<S>::zero(k + l);
  if (k + l > 2) return r;
  const int B = std::max({x.first.band().B_max, x.second.band().B_max, y.first.band().B_max,
                          y.second.band().B_max});
  FourierSeries<S> out(BandLimit{0, 0, B});
  // L_X a ^ e: a has degree k, e has degree l-1
  if (k <= 1 && l >= 1 && k + (l - 1) <= 1) out = add(out, multiply(x_of(x.first, model), y.second));
  if (l <= 1 && k >= 1 && l + (k - 1) <= 1) {
    FourierSeries<S> t = multiply(x_of(y.first, model), x.second);
    out = ((k * l) % 2 == 0) ? sub(out, t) : add(out, t);
  }
  r.first = FourierSeries<S>(BandLimit{0, 0, B});
  r.second = out;
  return r;
}

template <class S>
struct McResidualT {
  FourierSeries<S> r1;  // always zero on T^2
  FourierSeries<S> r2;  // d_F f + f (gamma - L_X alpha)
  double norm1 = 0.0;
  double norm2 = 0.0;
};
using McResidual = McResidualT<cd>;

template <class S>
McResidualT<S> mc_residual(const SectionT<S>& s, const ModelT<S>& model) {
  McResidualT<S> r;
  r.r1 = FourierSeries<S>(BandLimit{0, 0, s.f.band().B_max});
  FourierSeries<S> twist = sub(model.gamma, lie_x(s.alpha, model).coeff);
  r.r2 = add(d_foliated(s.f, model.fol).coeff, multiply(s.f, twist));
  r.norm2 = ck_norm(r.r2, 0);
  return r;
}
McResidual mc_residual(const Section& s, const ModelData& model);
double mc_scale(const Section& s);
bool is_mc(const Section& s, const ModelData& model, const Tolerances& tol = {});

// ---- Kuranishi ---------------------------------------------------------------

enum class KuranishiVerdict { Unobstructed, Obstructed, Undecided };
const char* kuranishi_name(KuranishiVerdict v);

struct KuranishiReport {
  KuranishiVerdict verdict = KuranishiVerdict::Undecided;
  std::string reason;
  // theta1-arcs where the fiber sup of |f| is below tolerance, and the rest
  std::vector<Arc> zero_set, complement;
  // sup over the complement of |d/dt1 int alpha dt2| (sampled and bound)
  SupBound derivative;
  double threshold = 0.0;
  std::optional<Arc> violating_arc;
  // I(t1) = int f L_X alpha dt2 (fibration)
  std::optional<FourierScalar> obstruction_integral;
  double small_divisor_factor = 0.0;
};

KuranishiReport kuranishi(const Section& s, const ModelData& model, const Tolerances& tol = {});

}  // namespace logdef
