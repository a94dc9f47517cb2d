#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "logdef/errors.hpp"
#include "logdef/exact.hpp"
#include "logdef/kernels.hpp"

namespace logdef {

struct BandLimit {
  int N = 0;
  int M = 0;
  int B_max = 0;
  friend bool operator==(const BandLimit&, const BandLimit&) = default;
};

// Band large enough for both inputs; B_max is the larger cap.
inline BandLimit band_union(const BandLimit& a, const BandLimit& b) {
  return {std::max(a.N, b.N), std::max(a.M, b.M), std::max(a.B_max, b.B_max)};
}

// Truncated double Fourier series sum c[n,m] exp(i(n t1 + m t2)), dense
// storage over the band rectangle.
template <class S>
class FourierSeries {
 public:
  FourierSeries() : FourierSeries(BandLimit{}) {}
  explicit FourierSeries(const BandLimit& b) : band_(b) {
    if (b.N < 0 || b.M < 0 || b.N > b.B_max || b.M > b.B_max)
      throw Error(ErrorKind::BandLimitExceeded,
                  "band (" + std::to_string(b.N) + "," + std::to_string(b.M) +
                      ") outside cap " + std::to_string(b.B_max));
    c_.assign(size_t(2 * b.N + 1) * size_t(2 * b.M + 1), S(0));
  }
  static FourierSeries constant(const S& v, const BandLimit& b) {
    FourierSeries r(b);
    r.set(0, 0, v);
    return r;
  }

  const BandLimit& band() const { return band_; }
  int N() const { return band_.N; }
  int M() const { return band_.M; }
  int stride() const { return 2 * band_.M + 1; }
  size_t size() const { return c_.size(); }
  S* data() { return c_.data(); }
  const S* data() const { return c_.data(); }
  bool in_band(int n, int m) const {
    return std::abs(n) <= band_.N && std::abs(m) <= band_.M;
  }
  size_t index(int n, int m) const {
    return size_t(n + band_.N) * size_t(stride()) + size_t(m + band_.M);
  }
  S coeff(int n, int m) const { return in_band(n, m) ? c_[index(n, m)] : S(0); }
  S& at(int n, int m) { return c_[index(n, m)]; }
  void set(int n, int m, const S& v) {
    if (!in_band(n, m))
      throw Error(ErrorKind::BandLimitExceeded,
                  "index (" + std::to_string(n) + "," + std::to_string(m) + ") outside band");
    c_[index(n, m)] = v;
  }
  void add_to(int n, int m, const S& v) { at(n, m) += v; }

  template <class F>
  void for_each(F&& fn) const {
    for (int n = -band_.N; n <= band_.N; ++n)
      for (int m = -band_.M; m <= band_.M; ++m) fn(n, m, c_[index(n, m)]);
  }
  template <class F>
  void for_each_nonzero(F&& fn) const {
    for (int n = -band_.N; n <= band_.N; ++n)
      for (int m = -band_.M; m <= band_.M; ++m) {
        const S& v = c_[index(n, m)];
        if (!is_zero_s(v)) fn(n, m, v);
      }
  }
  bool is_zero() const {
    for (const auto& v : c_)
      if (!is_zero_s(v)) return false;
    return true;
  }

  // Copy into band b; coefficients outside b are dropped and their
  // absolute mass added to *dropped when given.
  FourierSeries resized(const BandLimit& b, double* dropped = nullptr) const {
    FourierSeries r(b);
    double lost = 0.0;
    for_each_nonzero([&](int n, int m, const S& v) {
      if (r.in_band(n, m))
        r.at(n, m) = v;
      else
        lost += abs_s(v);
    });
    if (dropped) *dropped += lost;
    return r;
  }
  FourierSeries with_cap(int B_max) const {
    BandLimit b = band_;
    b.B_max = B_max;
    return resized(b);
  }

 private:
  BandLimit band_;
  std::vector<S> c_;
};

using FourierScalar = FourierSeries<cd>;
using ExactScalar = FourierSeries<Exact>;

// ---- linear operations ---------------------------------------------------

template <class S>
FourierSeries<S> add(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  FourierSeries<S> r = a.resized(band_union(a.band(), b.band()));
  b.for_each_nonzero([&](int n, int m, const S& v) { r.at(n, m) += v; });
  return r;
}
template <class S>
FourierSeries<S> sub(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  FourierSeries<S> r = a.resized(band_union(a.band(), b.band()));
  b.for_each_nonzero([&](int n, int m, const S& v) { r.at(n, m) -= v; });
  return r;
}
template <class S>
FourierSeries<S> scale(const FourierSeries<S>& a, const S& s) {
  FourierSeries<S> r(a.band());
  a.for_each_nonzero([&](int n, int m, const S& v) { r.at(n, m) = v * s; });
  return r;
}
inline FourierScalar scale(const FourierScalar& a, double s) { return scale(a, cd(s, 0.0)); }
template <class S>
FourierSeries<S> neg(const FourierSeries<S>& a) {
  return scale(a, S(-1));
}
template <class S>
FourierSeries<S> operator+(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  return add(a, b);
}
template <class S>
FourierSeries<S> operator-(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  return sub(a, b);
}

// ---- products ------------------------------------------------------------

template <class S>
BandLimit product_band(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  BandLimit r{a.N() + b.N(), a.M() + b.M(), std::max(a.band().B_max, b.band().B_max)};
  if (r.N > r.B_max || r.M > r.B_max)
    throw Error(ErrorKind::BandLimitExceeded,
                "product band (" + std::to_string(r.N) + "," + std::to_string(r.M) +
                    ") exceeds B_max " + std::to_string(r.B_max));
  return r;
}

// Exact convolution over nonzero entries (generic scalar path).
template <class S>
FourierSeries<S> multiply_direct(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  FourierSeries<S> r(product_band(a, b));
  struct Entry {
    int n, m;
    const S* v;
  };
  std::vector<Entry> eb;
  b.for_each_nonzero([&](int n, int m, const S& v) { eb.push_back({n, m, &v}); });
  a.for_each_nonzero([&](int n, int m, const S& x) {
    for (const auto& e : eb) r.at(n + e.n, m + e.m) += x * (*e.v);
  });
  return r;
}

FourierScalar multiply(const FourierScalar& a, const FourierScalar& b, Exec e);
inline FourierScalar multiply(const FourierScalar& a, const FourierScalar& b) {
  return multiply(a, b, default_exec());
}
inline ExactScalar multiply(const ExactScalar& a, const ExactScalar& b) {
  return multiply_direct(a, b);
}
template <class S>
FourierSeries<S> operator*(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  return multiply(a, b);
}

// Product projected onto `target` (no BandLimitExceeded); the discarded
// coefficient mass is added to *dropped.
FourierScalar multiply_into(const FourierScalar& a, const FourierScalar& b,
                            const BandLimit& target, double* dropped);

// ---- derivatives and means -----------------------------------------------

template <class S>
FourierSeries<S> partial_theta1(const FourierSeries<S>& f) {
  FourierSeries<S> r(f.band());
  f.for_each_nonzero([&](int n, int m, const S& v) { r.at(n, m) = times_ik(v, n); });
  return r;
}
template <class S>
FourierSeries<S> partial_theta2(const FourierSeries<S>& f) {
  FourierSeries<S> r(f.band());
  f.for_each_nonzero([&](int n, int m, const S& v) { r.at(n, m) = times_ik(v, m); });
  return r;
}

// theta2-mean: sum_n c[n,0] e^{i n t1}, m-band 0.
template <class S>
FourierSeries<S> theta2_mean(const FourierSeries<S>& f) {
  BandLimit b = f.band();
  b.M = 0;
  FourierSeries<S> r(b);
  for (int n = -f.N(); n <= f.N(); ++n) r.at(n, 0) = f.coeff(n, 0);
  return r;
}

// I(t1) = int_0^{2pi} f dt2.
FourierScalar fiber_integral(const FourierScalar& f);

template <class S>
double ck_norm(const FourierSeries<S>& f, int k) {
  double s = 0.0;
  f.for_each_nonzero([&](int n, int m, const S& v) {
    s += abs_s(v) * std::pow(1.0 + std::abs(n) + std::abs(m), k);
  });
  return s;
}

// max |c[-n,-m] - conj(c[n,m])|
template <class S>
double hermitian_defect(const FourierSeries<S>& f) {
  double d = 0.0;
  f.for_each([&](int n, int m, const S& v) {
    d = std::max(d, abs_s(S(f.coeff(-n, -m) - conj_s(v))));
  });
  return d;
}
template <class S>
bool is_hermitian_exact(const FourierSeries<S>& f) {
  bool ok = true;
  f.for_each([&](int n, int m, const S& v) {
    if (!(f.coeff(-n, -m) == conj_s(v))) ok = false;
  });
  return ok;
}

// Symmetrise to the nearest Hermitian table.
FourierScalar hermitize(const FourierScalar& f);

// Smallest band holding every coefficient with |c| > thresh.
template <class S>
BandLimit support_band(const FourierSeries<S>& f, double thresh = 0.0) {
  BandLimit b{0, 0, f.band().B_max};
  f.for_each([&](int n, int m, const S& v) {
    if (abs_s(v) > thresh) {
      b.N = std::max(b.N, std::abs(n));
      b.M = std::max(b.M, std::abs(m));
    }
  });
  return b;
}
template <class S>
FourierSeries<S> shrink(const FourierSeries<S>& f) {
  return f.resized(support_band(f));
}

template <class S>
double max_abs_diff(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  BandLimit u = band_union(a.band(), b.band());
  double d = 0.0;
  for (int n = -u.N; n <= u.N; ++n)
    for (int m = -u.M; m <= u.M; ++m) d = std::max(d, abs_s(S(a.coeff(n, m) - b.coeff(n, m))));
  return d;
}
template <class S>
bool exactly_equal(const FourierSeries<S>& a, const FourierSeries<S>& b) {
  BandLimit u = band_union(a.band(), b.band());
  for (int n = -u.N; n <= u.N; ++n)
    for (int m = -u.M; m <= u.M; ++m)
      if (!(a.coeff(n, m) == b.coeff(n, m))) return false;
  return true;
}

double evaluate(const FourierScalar& f, double t1, double t2);

// ---- exact/double conversions ---------------------------------------------

ExactScalar to_exact(const FourierScalar& f);
FourierScalar to_numeric(const ExactScalar& f);

// ---- exp -------------------------------------------------------------------

struct ExpReport {
  int order = 0;              // Taylor order J
  double tail_bound = 0.0;    // ||f||^{J+1}/(J+1)! e^{||f||}
  double projection_error = 0.0;  // discarded coefficient mass
};

// e^f by truncated Taylor series.  Intermediate powers are projected onto
// the B_max box and trimmed of negligible shells; all discarded mass is
// reported.  The result band is the smallest one carrying the kept mass.
FourierScalar exp_of(const FourierScalar& f, double tol, ExpReport* report = nullptr,
                     int max_order = 400);

// ---- grids -----------------------------------------------------------------

struct Grid {
  int G1 = 0, G2 = 0;
  std::vector<double> values;  // row-major, theta1 index major
  double theta1(int j) const { return 2.0 * M_PI * j / G1; }
  double theta2(int k) const { return 2.0 * M_PI * k / G2; }
  double& at(int j, int k) { return values[size_t(j) * G2 + k]; }
  double at(int j, int k) const { return values[size_t(j) * G2 + k]; }
};

Grid grid_eval(const FourierScalar& f, int G1, int G2, Exec e = default_exec());
FourierScalar grid_fit(const Grid& g, const BandLimit& band, Exec e = default_exec());
// Pointwise map through a grid large enough for `fit_band` (aliasing is
// whatever the map produces beyond that band).
FourierScalar grid_map(const FourierScalar& f, const BandLimit& fit_band,
                       const std::function<double(double)>& fn);

}  // namespace logdef
