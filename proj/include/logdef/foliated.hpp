#pragma once

#include <optional>

#include "logdef/fourier.hpp"
#include "logdef/lambda.hpp"

namespace logdef {

enum class FoliationKind { Fibration, Kronecker };

struct FoliationSpec {
  FoliationKind kind = FoliationKind::Fibration;
  std::optional<LambdaValue> lambda;  // Kronecker only
  bool is_kronecker() const { return kind == FoliationKind::Kronecker; }
};

// What d_F needs in a given scalar field: the leaf direction
// lambda*d/dt1 + d/dt2 (lambda = 0 for the fibration).
template <class S>
struct Leafwise {
  FoliationKind kind = FoliationKind::Fibration;
  S lambda = S(0);
};

// Foliated 1-form: coefficient against the frame dt2 of T*F.
template <class S>
struct OneFormT {
  FourierSeries<S> coeff;
};
using FoliatedOneForm = OneFormT<cd>;

template <class S>
struct SectionT {
  OneFormT<S> alpha;
  FourierSeries<S> f;
};
using Section = SectionT<cd>;

// (gamma, X) in a scalar field; X = gx(t1) d/dt1 in both cases (gx is the
// constant C for Kronecker).
template <class S>
struct ModelT {
  Leafwise<S> fol;
  FourierSeries<S> gamma;
  FourierSeries<S> gx;
};

struct ModelData {
  FoliationSpec foliation;
  FoliatedOneForm gamma;
  bool x_constant = false;
  FourierScalar gx;  // theta1 field (fibration)
  double C = 1.0;    // Kronecker
  double K = 0.0;    // Kronecker, gamma = K dt2

  static ModelData fibration(const FourierScalar& gamma, const FourierScalar& gx);
  static ModelData kronecker(const LambdaValue& lambda, double C, double K, const BandLimit& band);

  FoliationKind kind() const { return foliation.kind; }
  FourierScalar x_coeff() const;
  ModelT<cd> numeric() const;
  ModelT<Exact> exact() const;
  // Throws InvalidModel on violated invariants.
  void validate() const;
};

// ---- templated calculus ----------------------------------------------------

template <class S>
OneFormT<S> d_foliated(const FourierSeries<S>& f, const Leafwise<S>& fol) {
  FourierSeries<S> r(f.band());
  const bool kr = fol.kind == FoliationKind::Kronecker;
  f.for_each_nonzero([&](int n, int m, const S& v) {
    S x = times_ik(v, m);
    if (kr && n != 0) x += fol.lambda * times_ik(v, n);
    r.at(n, m) = x;
  });
  return {r};
}

template <class S>
OneFormT<S> d_twisted(const FourierSeries<S>& f, const OneFormT<S>& eta, const Leafwise<S>& fol) {
  return {add(d_foliated(f, fol).coeff, multiply(f, eta.coeff))};
}

// X(g) for a function g
template <class S>
FourierSeries<S> x_of(const FourierSeries<S>& g, const ModelT<S>& model) {
  return multiply(model.gx, partial_theta1(g));
}

// L_X (a dt2) = X(a) dt2: the flow of gx(t1) d/dt1 preserves dt2.
template <class S>
OneFormT<S> lie_x(const OneFormT<S>& alpha, const ModelT<S>& model) {
  return {x_of(alpha.coeff, model)};
}

// ---- double-only helpers ----------------------------------------------------

inline Leafwise<cd> leafwise(const FoliationSpec& spec) {
  Leafwise<cd> l;
  l.kind = spec.kind;
  if (spec.is_kronecker()) l.lambda = cd(spec.lambda->approx(), 0.0);
  return l;
}

inline OneFormT<cd> d_foliated(const FourierScalar& f, const FoliationSpec& spec) {
  return d_foliated(f, leafwise(spec));
}
inline OneFormT<cd> lie_x(const FoliatedOneForm& alpha, const ModelData& model) {
  return lie_x(alpha, model.numeric());
}

// Fibration: h(t1) dt2 with h the theta2-mean; the dropped part is d_F-exact.
// Kronecker generic: c[0,0] dt2.
FoliatedOneForm canonical_representative(const FoliatedOneForm& eta, const FoliationSpec& spec);

}  // namespace logdef
