#include "logdef/oracle.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <sstream>

namespace logdef {

namespace {

constexpr int B = PolyMultiVector::kBMax;

ExactScalar capped(const ExactScalar& f) { return f.band().B_max == B ? f : f.with_cap(B); }

// sign of d_I ^ d_J -> d_{I u J}: (-1)^{#(i in I, j in J, i > j)}
int reorder_sign(uint8_t I, uint8_t J) {
  int c = 0;
  for (int j = 0; j < 4; ++j)
    if (J & (1u << j)) c += std::popcount(unsigned(I) >> (j + 1));
  return (c & 1) ? -1 : 1;
}

PolyMultiVector right_deriv(const PolyMultiVector& p, int i) {
  PolyMultiVector r(p.degree() - 1, p.d_max());
  for (const auto& [k, c] : p.terms()) {
    if (!(k.mask & (1u << i))) continue;
    int after = std::popcount(unsigned(k.mask) >> (i + 1));
    r.add_term(uint8_t(k.mask ^ (1u << i)), k.xi, k.t, (after & 1) ? neg(c) : c);
  }
  return r;
}

PolyMultiVector coord_deriv(const PolyMultiVector& p, int i) {
  PolyMultiVector r(p.degree(), p.d_max());
  for (const auto& [k, c] : p.terms()) {
    switch (i) {
      case 0: r.add_term(k.mask, k.xi, k.t, partial_theta1(c)); break;
      case 1: r.add_term(k.mask, k.xi, k.t, partial_theta2(c)); break;
      case 2:
        if (k.xi > 0) r.add_term(k.mask, k.xi - 1, k.t, scale(c, Exact(long(k.xi))));
        break;
      default:
        if (k.t > 0) r.add_term(k.mask, k.xi, k.t - 1, scale(c, Exact(long(k.t))));
        break;
    }
  }
  return r;
}

ExactScalar zero_scalar() { return ExactScalar(BandLimit{0, 0, B}); }

}  // namespace

bool PolyMultiVector::is_zero() const { return terms_.empty(); }

void PolyMultiVector::add_term(uint8_t mask, int a, int b, const ExactScalar& coeff) {
  if (std::popcount(unsigned(mask)) != degree_)
    throw Error(ErrorKind::InvalidInput, "basis mask does not match the multivector degree");
  if (a + b > d_max_)
    throw Error(ErrorKind::DegreeOverflow,
                "fiber polynomial degree " + std::to_string(a + b) + " exceeds D_max " + std::to_string(d_max_));
  if (coeff.is_zero()) return;
  PolyKey k{mask, uint8_t(a), uint8_t(b)};
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, capped(coeff));
    return;
  }
  it->second = add(it->second, capped(coeff));
  if (it->second.is_zero()) terms_.erase(it);
}

ExactScalar PolyMultiVector::coeff(uint8_t mask, int a, int b) const {
  auto it = terms_.find(PolyKey{mask, uint8_t(a), uint8_t(b)});
  return it == terms_.end() ? zero_scalar() : it->second;
}

PolyMultiVector PolyMultiVector::operator+(const PolyMultiVector& o) const {
  if (o.degree_ != degree_ && !o.is_zero() && !is_zero())
    throw Error(ErrorKind::InvalidInput, "adding multivectors of different degree");
  PolyMultiVector r = is_zero() ? PolyMultiVector(o.degree_, std::max(d_max_, o.d_max_)) : *this;
  r.d_max_ = std::max(d_max_, o.d_max_);
  for (const auto& [k, c] : o.terms_) r.add_term(k.mask, k.xi, k.t, c);
  return r;
}

PolyMultiVector PolyMultiVector::operator-(const PolyMultiVector& o) const { return *this + o.scaled(Exact(-1)); }

PolyMultiVector PolyMultiVector::scaled(const Exact& s) const {
  PolyMultiVector r(degree_, d_max_);
  for (const auto& [k, c] : terms_) r.add_term(k.mask, k.xi, k.t, scale(c, s));
  return r;
}

std::string PolyMultiVector::str() const {
  static const char* names[] = {"d_th1", "d_th2", "d_xi", "d_t"};
  std::ostringstream os;
  for (const auto& [k, c] : terms_) {
    os << "xi^" << int(k.xi) << " t^" << int(k.t) << " ";
    for (int i = 0; i < 4; ++i)
      if (k.mask & (1u << i)) os << names[i] << " ";
    os << ":";
    c.for_each_nonzero([&](int n, int m, const Exact& v) { os << " [" << n << "," << m << "]=" << v.str(); });
    os << "\n";
  }
  return os.str();
}

bool operator==(const PolyMultiVector& a, const PolyMultiVector& b) {
  if (a.terms().size() != b.terms().size()) return false;
  for (const auto& [k, c] : a.terms()) {
    auto it = b.terms().find(k);
    if (it == b.terms().end() || !exactly_equal(c, it->second)) return false;
  }
  return true;
}

PolyMultiVector wedge(const PolyMultiVector& a, const PolyMultiVector& b) {
  PolyMultiVector r(a.degree() + b.degree(), std::max(a.d_max(), b.d_max()));
  if (r.degree() > 4) return r;
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.mask & kb.mask) continue;
      ExactScalar p = multiply(ca, cb);
      if (reorder_sign(ka.mask, kb.mask) < 0) p = neg(p);
      r.add_term(uint8_t(ka.mask | kb.mask), ka.xi + kb.xi, ka.t + kb.t, p);
    }
  return r;
}

PolyMultiVector schouten(const PolyMultiVector& a, const PolyMultiVector& b) {
  const int p = a.degree(), q = b.degree();
  if (p + q - 1 > 4)
    throw Error(ErrorKind::DegreeOverflow, "Schouten bracket degree " + std::to_string(p + q - 1) + " > 4");
  PolyMultiVector r(std::max(p + q - 1, 0), std::max(a.d_max(), b.d_max()));
  if (p + q - 1 < 0) return r;
  const bool odd = ((p - 1) * (q - 1)) & 1;
  for (int i = 0; i < 4; ++i) {
    if (p > 0) r = r + wedge(right_deriv(a, i), coord_deriv(b, i));
    if (q > 0) {
      PolyMultiVector t = wedge(right_deriv(b, i), coord_deriv(a, i));
      r = odd ? r + t : r - t;
    }
  }
  return r;
}

PolyMultiVector mv_function(const ExactScalar& f, int xi_pow, int t_pow) {
  PolyMultiVector r(0);
  r.add_term(0, xi_pow, t_pow, f);
  return r;
}

PolyMultiVector mv_vector(int coord, const ExactScalar& f, int xi_pow, int t_pow) {
  PolyMultiVector r(1);
  r.add_term(uint8_t(1u << coord), xi_pow, t_pow, f);
  return r;
}

ModelBivector assemble_model(const ModelT<Exact>& model) {
  ModelBivector mb;
  const ExactScalar one = ExactScalar::constant(Exact(1), BandLimit{0, 0, B});
  mb.euler = mv_vector(3, one, 0, 1);
  mb.v_vert = mv_vector(2, model.gamma);
  mb.v_lift = mv_vector(0, model.gx);
  PolyMultiVector leaf = mv_vector(1, one);
  if (model.fol.kind == FoliationKind::Kronecker)
    leaf = leaf + mv_vector(0, ExactScalar::constant(model.fol.lambda, BandLimit{0, 0, B}));
  mb.pi_can = wedge(leaf, mv_vector(2, one));
  mb.pi = wedge(mb.v_vert + mb.v_lift, mb.euler) + mb.pi_can;
  PolyMultiVector jac = schouten(mb.pi, mb.pi);
  if (!jac.is_zero()) throw Error(ErrorKind::JacobiFails, "[pi, pi] != 0:\n" + jac.str());
  return mb;
}

ModelBivector assemble_model(const ModelData& model) { return assemble_model(model.exact()); }

PolyMultiVector translate_pushforward(const PolyMultiVector& v, const SectionT<Exact>& s) {
  const ExactScalar a = capped(s.alpha.coeff), f = capped(s.f);
  const ExactScalar one = ExactScalar::constant(Exact(1), BandLimit{0, 0, B});
  // images of the coordinate vector fields
  PolyMultiVector img[4];
  for (int i = 0; i < 2; ++i) {
    ExactScalar da = i == 0 ? partial_theta1(a) : partial_theta2(a);
    ExactScalar df = i == 0 ? partial_theta1(f) : partial_theta2(f);
    img[i] = mv_vector(i, one) - mv_vector(2, da) - mv_vector(3, df);
  }
  img[2] = mv_vector(2, one);
  img[3] = mv_vector(3, one);
  // powers of (xi + a) and (t + f)
  auto binomial_powers = [&](const ExactScalar& shift, int var, int maxp) {
    std::vector<PolyMultiVector> pw;
    pw.push_back(mv_function(one));
    PolyMultiVector lin = mv_function(shift) + (var == 2 ? mv_function(one, 1, 0) : mv_function(one, 0, 1));
    for (int k = 1; k <= maxp; ++k) pw.push_back(wedge(pw.back(), lin));
    return pw;
  };
  int mx = 0, mt = 0;
  for (const auto& [k, c] : v.terms()) {
    mx = std::max(mx, int(k.xi));
    mt = std::max(mt, int(k.t));
  }
  auto px = binomial_powers(a, 2, mx), pt = binomial_powers(f, 3, mt);
  PolyMultiVector out(v.degree(), v.d_max());
  for (const auto& [k, c] : v.terms()) {
    PolyMultiVector term = wedge(wedge(mv_function(c), px[k.xi]), pt[k.t]);
    for (int i = 0; i < 4; ++i)
      if (k.mask & (1u << i)) term = wedge(term, img[i]);
    out = out + term;
  }
  return out;
}

DglaElement<Exact> vertical_projection(const PolyMultiVector& v) {
  DglaElement<Exact> r;
  r.degree = v.degree();
  r.first = zero_scalar();
  r.second = zero_scalar();
  const uint8_t XI = 4, T = 8;
  for (const auto& [k, c] : v.terms()) {
    if (k.xi != 0 || k.t != 0 || (k.mask & 3)) continue;
    if (k.mask == 0) r.first = add(r.first, c);
    if (k.mask == XI) r.first = add(r.first, c);
    if (k.mask == T) r.second = add(r.second, c);
    if (k.mask == (XI | T)) r.second = add(r.second, c);
  }
  return r;
}

PolyMultiVector vertical_field(const DglaElement<Exact>& x) {
  switch (x.degree) {
    case 0: return mv_function(x.first);
    case 1: {
      PolyMultiVector r(1);
      r.add_term(4, 0, 0, x.first);
      r.add_term(8, 0, 0, x.second);
      return r;
    }
    case 2: {
      PolyMultiVector r(2);
      r.add_term(12, 0, 0, x.second);
      return r;
    }
    default: return PolyMultiVector(x.degree);
  }
}

DglaElement<Exact> linfty_bracket(const ModelBivector& pi, const std::vector<DglaElement<Exact>>& args) {
  PolyMultiVector acc = pi.pi;
  for (const auto& x : args) {
    PolyMultiVector xv = vertical_field(x);
    if (acc.degree() + xv.degree() - 1 > 4) return DglaElement<Exact>::zero(acc.degree() + xv.degree() - 1);
    acc = schouten(acc, xv);
  }
  return vertical_projection(acc);
}

// Fixed by matching the derived brackets against dgla_d / dgla_bracket.
int linfty_sign1(int) { return 1; }
int linfty_sign2(int dx, int) { return (dx & 1) ? -1 : 1; }

}  // namespace logdef

namespace logdef {

namespace {

void diff_into(OracleReport& rep, const std::string& where, const ExactScalar& got, const ExactScalar& want) {
  ExactScalar d = sub(got, want);
  if (d.is_zero()) return;
  rep.ok = false;
  d.for_each_nonzero([&](int n, int m, const Exact&) {
    if (rep.mismatches.size() >= 64) return;
    rep.mismatches.push_back({where, n, m, got.coeff(n, m).str(), want.coeff(n, m).str()});
  });
}

void diff_into(OracleReport& rep, const std::string& where, const DglaElement<Exact>& got,
               const DglaElement<Exact>& want) {
  diff_into(rep, where + ".first", got.first, want.first);
  diff_into(rep, where + ".second", got.second, want.second);
}

double now_seconds() {
  return std::chrono::duration<double>(std::chrono::steady_clock::now().time_since_epoch()).count();
}

ExactScalar mode(int n, int m) {
  ExactScalar f(BandLimit{1, 1, B});
  f.at(n, m) = Exact(1);
  return f;
}

// [acc, x] with the degree cut of linfty_bracket
PolyMultiVector step(const PolyMultiVector& acc, const PolyMultiVector& x) {
  if (acc.degree() + x.degree() - 1 > 4) return PolyMultiVector(acc.degree() + x.degree() - 1);
  return schouten(acc, x);
}

}  // namespace

std::vector<DglaElement<Exact>> band11_generators() {
  std::vector<DglaElement<Exact>> g;
  const ExactScalar z(BandLimit{0, 0, B});
  for (int n = -1; n <= 1; ++n)
    for (int m = -1; m <= 1; ++m) {
      g.push_back({0, mode(n, m), z});
      g.push_back({1, mode(n, m), z});
      g.push_back({1, z, mode(n, m)});
      g.push_back({2, z, mode(n, m)});
    }
  return g;
}

OracleReport verify_mc(const ModelT<Exact>& model, const SectionT<Exact>& s) {
  const double t0 = now_seconds();
  OracleReport rep;
  ModelBivector mb = assemble_model(model);
  DglaElement<Exact> p = vertical_projection(translate_pushforward(mb.pi, s));
  auto r = mc_residual(s, model);
  diff_into(rep, "first", p.first, r.r1);
  diff_into(rep, "second", p.second, r.r2);
  rep.checked = 1;
  rep.seconds = now_seconds() - t0;
  return rep;
}

OracleReport verify_low_brackets(const ModelT<Exact>& model, const std::vector<DglaElement<Exact>>& gens) {
  const double t0 = now_seconds();
  OracleReport rep;
  ModelBivector mb = assemble_model(model);
  for (size_t i = 0; i < gens.size(); ++i) {
    const auto& x = gens[i];
    diff_into(rep, "lambda1[" + std::to_string(i) + "]", linfty_bracket(mb, {x}),
              dgla_scale(dgla_d(x, model), Exact(linfty_sign1(x.degree))));
    ++rep.checked;
    for (size_t j = 0; j < gens.size(); ++j) {
      const auto& y = gens[j];
      if (x.degree + y.degree > 3) continue;
      DglaElement<Exact> want = dgla_scale(dgla_bracket(x, y, model), Exact(linfty_sign2(x.degree, y.degree)));
      diff_into(rep, "lambda2[" + std::to_string(i) + "," + std::to_string(j) + "]", linfty_bracket(mb, {x, y}),
                want);
      ++rep.checked;
    }
  }
  rep.seconds = now_seconds() - t0;
  return rep;
}

OracleReport verify_higher_vanish(const ModelT<Exact>& model, int order,
                                  const std::vector<DglaElement<Exact>>& gens) {
  if (order != 3 && order != 4) throw Error(ErrorKind::InvalidInput, "order must be 3 or 4");
  const double t0 = now_seconds();
  OracleReport rep;
  ModelBivector mb = assemble_model(model);
  const int G = int(gens.size());
  std::vector<PolyMultiVector> fields(G), l1(G);
  for (int i = 0; i < G; ++i) {
    fields[i] = vertical_field(gens[i]);
    l1[i] = step(mb.pi, fields[i]);
  }
  std::vector<PolyMultiVector> l2(size_t(G) * G);
#pragma omp parallel for schedule(dynamic)
  for (int ij = 0; ij < G * G; ++ij) {
    int i = ij / G, j = ij % G;
    if (order == 4 && j < i) continue;
    l2[ij] = step(l1[i], fields[j]);
  }
  long checked = 0;
  std::vector<std::pair<std::string, DglaElement<Exact>>> bad;
#pragma omp parallel for schedule(dynamic) reduction(+ : checked)
  for (int ij = 0; ij < G * G; ++ij) {
    int i = ij / G, j = ij % G;
    if (order == 4 && j < i) continue;
    for (int k = (order == 4 ? j : 0); k < G; ++k) {
      PolyMultiVector a3 = step(l2[ij], fields[k]);
      if (order == 3) {
        DglaElement<Exact> v = vertical_projection(a3);
        ++checked;
        if (!v.first.is_zero() || !v.second.is_zero()) {
#pragma omp critical
          bad.push_back({std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k), v});
        }
        continue;
      }
      for (int l = k; l < G; ++l) {
        DglaElement<Exact> v = vertical_projection(step(a3, fields[l]));
        ++checked;
        if (!v.first.is_zero() || !v.second.is_zero()) {
#pragma omp critical
          bad.push_back({std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
                             std::to_string(l),
                         v});
        }
      }
    }
  }
  std::sort(bad.begin(), bad.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  const ExactScalar z(BandLimit{0, 0, B});
  for (const auto& [w, v] : bad) diff_into(rep, "lambda" + std::to_string(order) + "[" + w + "]", v, {v.degree, z, z});
  rep.checked = checked;
  rep.seconds = now_seconds() - t0;
  return rep;
}

PolyMultiVector jacobiator(const PolyMultiVector& a, const PolyMultiVector& b, const PolyMultiVector& c) {
  const bool odd = ((a.degree() - 1) * (b.degree() - 1)) & 1;
  PolyMultiVector r = schouten(a, schouten(b, c)) - schouten(schouten(a, b), c);
  PolyMultiVector t = schouten(b, schouten(a, c));
  return odd ? r + t : r - t;
}

}  // namespace logdef
