#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logdef/dgla.hpp"

namespace logdef {

// Coordinates on T^2 x R^2: 0 = theta1, 1 = theta2, 2 = xi, 3 = t.
// A basis multivector d_{i1} ^ ... ^ d_{ik} (i1 < ... < ik) is a bitmask.
struct PolyKey {
  uint8_t mask = 0;
  uint8_t xi = 0, t = 0;  // monomial xi^xi t^t
  friend bool operator<(const PolyKey& a, const PolyKey& b) {
    if (a.mask != b.mask) return a.mask < b.mask;
    if (a.xi != b.xi) return a.xi < b.xi;
    return a.t < b.t;
  }
  friend bool operator==(const PolyKey&, const PolyKey&) = default;
};

// Homogeneous multivector field with Fourier(theta) x polynomial(xi, t)
// coefficients, exact.
class PolyMultiVector {
 public:
  static constexpr int kDefaultDMax = 4;
  static constexpr int kBMax = 64;

  explicit PolyMultiVector(int degree = 0, int d_max = kDefaultDMax) : degree_(degree), d_max_(d_max) {}

  int degree() const { return degree_; }
  int d_max() const { return d_max_; }
  const std::map<PolyKey, ExactScalar>& terms() const { return terms_; }
  bool is_zero() const;

  // coefficient * xi^a t^b * d_mask; mask popcount must equal the degree
  void add_term(uint8_t mask, int a, int b, const ExactScalar& coeff);
  ExactScalar coeff(uint8_t mask, int a = 0, int b = 0) const;

  PolyMultiVector operator+(const PolyMultiVector& o) const;
  PolyMultiVector operator-(const PolyMultiVector& o) const;
  PolyMultiVector scaled(const Exact& s) const;

  std::string str() const;

 private:
  int degree_;
  int d_max_;
  std::map<PolyKey, ExactScalar> terms_;
  friend PolyMultiVector wedge(const PolyMultiVector&, const PolyMultiVector&);
};

bool operator==(const PolyMultiVector& a, const PolyMultiVector& b);

PolyMultiVector wedge(const PolyMultiVector& a, const PolyMultiVector& b);
// Coordinate Schouten bracket; DegreeOverflow past degree 4 or D_max.
PolyMultiVector schouten(const PolyMultiVector& a, const PolyMultiVector& b);

// Building blocks
PolyMultiVector mv_function(const ExactScalar& f, int xi_pow = 0, int t_pow = 0);
PolyMultiVector mv_vector(int coord, const ExactScalar& f, int xi_pow = 0, int t_pow = 0);

struct ModelBivector {
  PolyMultiVector pi{2};
  PolyMultiVector v_vert{1}, v_lift{1}, euler{1}, pi_can{2};
};

// (V_vert + V_lift) ^ t d_t + Pi_can, with [pi, pi] checked (JacobiFails).
ModelBivector assemble_model(const ModelData& model);
ModelBivector assemble_model(const ModelT<Exact>& model);

// Pushforward of a multivector under (theta, xi, t) -> (theta, xi - a, t - f).
PolyMultiVector translate_pushforward(const PolyMultiVector& v, const SectionT<Exact>& s);

// Restrict to xi = t = 0 and keep the purely vertical components:
// deg 0: g; deg 1: a d_xi + f d_t -> (a, f); deg 2: b d_xi ^ d_t -> (0, b).
DglaElement<Exact> vertical_projection(const PolyMultiVector& v);

// Inverse of the projection on fiberwise-constant vertical fields.
PolyMultiVector vertical_field(const DglaElement<Exact>& x);

// lambda_k(x1..xk) = P([...[pi, x1], ...], xk])
DglaElement<Exact> linfty_bracket(const ModelBivector& pi, const std::vector<DglaElement<Exact>>& args);

// Sign relating the derived brackets to the DGLA operations:
//   lambda_1(x) = linfty_sign1(|x|) * d(x)
//   lambda_2(x, y) = linfty_sign2(|x|, |y|) * [[x, y]]
int linfty_sign1(int deg);
int linfty_sign2(int dx, int dy);

// ---- batch checks ------------------------------------------------------------

// Single-mode vertical generators at band (1,1): for each (n,m) in
// {-1,0,1}^2 the function g, (a,0), (0,f) and the 2-slot b.
std::vector<DglaElement<Exact>> band11_generators();

struct Mismatch {
  std::string where;
  int n = 0, m = 0;
  std::string got, want;
};

struct OracleReport {
  bool ok = true;
  long checked = 0;
  std::vector<Mismatch> mismatches;  // capped at 64 entries
  double seconds = 0.0;
};

// Pushforward projection vs mc_residual(s).r2.
OracleReport verify_mc(const ModelT<Exact>& model, const SectionT<Exact>& s);
// lambda_1 / lambda_2 against the DGLA formulas with the sign table above.
OracleReport verify_low_brackets(const ModelT<Exact>& model, const std::vector<DglaElement<Exact>>& gens);
// lambda_order == 0 on all ordered tuples (order 3) or sorted multisets
// (order 4) of generators.
OracleReport verify_higher_vanish(const ModelT<Exact>& model, int order,
                                  const std::vector<DglaElement<Exact>>& gens);
// [a,[b,c]] - [[a,b],c] - (-1)^{(|a|-1)(|b|-1)} [b,[a,c]]
PolyMultiVector jacobiator(const PolyMultiVector& a, const PolyMultiVector& b, const PolyMultiVector& c);

}  // namespace logdef
