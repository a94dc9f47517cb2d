#include "logdef/interval.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace logdef {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double eval_theta1(const FourierScalar& h, double t) {
  cd acc = 0;
  for (int n = -h.N(); n <= h.N(); ++n) acc += h.coeff(n, 0) * std::polar(1.0, n * t);
  return acc.real();
}

// fiber slice coefficients b_m = sum_n c[n,m] e^{i n t1}
std::vector<cd> fiber_slice(const FourierScalar& f, double t1) {
  std::vector<cd> b(2 * f.M() + 1, cd(0, 0));
  for (int n = -f.N(); n <= f.N(); ++n) {
    cd e = std::polar(1.0, n * t1);
    for (int m = -f.M(); m <= f.M(); ++m) b[m + f.M()] += f.coeff(n, m) * e;
  }
  return b;
}

double slice_max(const std::vector<cd>& b, int M, int K) {
  double mx = 0.0;
  for (int k = 0; k < K; ++k) {
    double t2 = kTwoPi * k / K;
    cd acc = 0;
    for (int m = -M; m <= M; ++m) acc += b[m + M] * std::polar(1.0, m * t2);
    mx = std::max(mx, std::abs(acc.real()));
  }
  return mx;
}

// Generic dyadic classifier: bound(a, b) -> (lower, upper) for |value| on
// the cell.  Keeps cells that may be <= thresh.
void classify(double a, double b, int depth, int max_depth, double thresh,
              const std::function<std::pair<double, double>(double, double)>& bound,
              std::vector<Arc>& out) {
  auto [lo, hi] = bound(a, b);
  if (lo > thresh) return;
  if (hi <= thresh || depth >= max_depth) {
    out.push_back({a, b});
    return;
  }
  double mid = 0.5 * (a + b);
  classify(a, mid, depth + 1, max_depth, thresh, bound, out);
  classify(mid, b, depth + 1, max_depth, thresh, bound, out);
}

std::vector<Arc> merge_cells(std::vector<Arc> cells) {
  std::sort(cells.begin(), cells.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::vector<Arc> out;
  for (const auto& c : cells) {
    if (!out.empty() && c.start <= out.back().end + 1e-15)
      out.back().end = std::max(out.back().end, c.end);
    else
      out.push_back(c);
  }
  if (out.size() >= 2 && out.front().start <= 1e-15 && out.back().end >= kTwoPi - 1e-15) {
    out.back().end = out.front().end + kTwoPi;
    out.erase(out.begin());
  }
  if (out.size() == 1 && out[0].start <= 1e-15 && out[0].end >= kTwoPi - 1e-15)
    out[0] = {0.0, kTwoPi};
  return out;
}

std::vector<Arc> run_classifier(double thresh, int max_depth,
                                const std::function<std::pair<double, double>(double, double)>& bound) {
  const int initial = 64;
  std::vector<Arc> cells;
  for (int i = 0; i < initial; ++i)
    classify(kTwoPi * i / initial, kTwoPi * (i + 1) / initial, 0, max_depth, thresh, bound, cells);
  return merge_cells(cells);
}

}  // namespace

bool arc_contains(const Arc& a, double theta) {
  theta = std::fmod(theta, kTwoPi);
  if (theta < 0) theta += kTwoPi;
  return (theta >= a.start && theta <= a.end) || (theta + kTwoPi >= a.start && theta + kTwoPi <= a.end);
}

double total_length(const std::vector<Arc>& arcs) {
  double s = 0.0;
  for (const auto& a : arcs) s += a.length();
  return s;
}

std::vector<Arc> complement_arcs(const std::vector<Arc>& arcs) {
  if (arcs.empty()) return {{0.0, kTwoPi}};
  if (arcs.size() == 1 && arcs[0].length() >= kTwoPi - 1e-15) return {};
  std::vector<Arc> sorted = arcs;
  std::sort(sorted.begin(), sorted.end(), [](const Arc& x, const Arc& y) { return x.start < y.start; });
  std::vector<Arc> out;
  for (size_t i = 0; i < sorted.size(); ++i) {
    double s = sorted[i].end;
    double e = (i + 1 < sorted.size()) ? sorted[i + 1].start : sorted[0].start + kTwoPi;
    if (e > s) {
      if (s >= kTwoPi) {
        s -= kTwoPi;
        e -= kTwoPi;
      }
      out.push_back({s, e});
    }
  }
  return out;
}

std::vector<Arc> zero_arcs_theta1(const FourierScalar& h, double thresh, int max_depth) {
  const double L = ck_norm(partial_theta1(theta2_mean(h)), 0);
  return run_classifier(thresh, max_depth, [&](double a, double b) {
    double v = std::abs(eval_theta1(h, 0.5 * (a + b)));
    double r = L * 0.5 * (b - a);
    return std::make_pair(v - r, v + r);
  });
}

std::vector<Arc> fiber_sup_zero_arcs(const FourierScalar& f, double thresh, int max_depth) {
  const double L1 = ck_norm(partial_theta1(f), 0);
  const double L2 = ck_norm(partial_theta2(f), 0);
  const int K = std::max(64, 8 * (2 * f.M() + 1));
  const double e2 = L2 * M_PI / K;
  return run_classifier(thresh, max_depth, [&](double a, double b) {
    double smax = slice_max(fiber_slice(f, 0.5 * (a + b)), f.M(), K);
    double r = L1 * 0.5 * (b - a);
    return std::make_pair(smax - r, smax + e2 + r);
  });
}

int certify_sign_theta1(const FourierScalar& h, int max_depth) {
  const double L = ck_norm(partial_theta1(theta2_mean(h)), 0);
  int sign = 0;
  bool bad = false;
  std::function<void(double, double, int)> rec = [&](double a, double b, int depth) {
    if (bad) return;
    double v = eval_theta1(h, 0.5 * (a + b));
    double r = L * 0.5 * (b - a);
    if (std::abs(v) > r) {
      int s = v > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) bad = true;
      return;
    }
    if (depth >= max_depth) {
      bad = true;
      return;
    }
    rec(a, 0.5 * (a + b), depth + 1);
    rec(0.5 * (a + b), b, depth + 1);
  };
  for (int i = 0; i < 64 && !bad; ++i) rec(kTwoPi * i / 64, kTwoPi * (i + 1) / 64, 0);
  return bad ? 0 : sign;
}

int certify_sign_torus(const FourierScalar& f, int max_depth) {
  const double L1 = ck_norm(partial_theta1(f), 0);
  const double L2 = ck_norm(partial_theta2(f), 0);
  int sign = 0;
  bool bad = false;
  std::function<void(double, double, double, double, int)> rec = [&](double a1, double b1, double a2,
                                                                     double b2, int depth) {
    if (bad) return;
    double v = evaluate(f, 0.5 * (a1 + b1), 0.5 * (a2 + b2));
    double r = 0.5 * (L1 * (b1 - a1) + L2 * (b2 - a2));
    if (std::abs(v) > r) {
      int s = v > 0 ? 1 : -1;
      if (sign == 0) sign = s;
      if (s != sign) bad = true;
      return;
    }
    if (depth >= max_depth) {
      bad = true;
      return;
    }
    double m1 = 0.5 * (a1 + b1), m2 = 0.5 * (a2 + b2);
    rec(a1, m1, a2, m2, depth + 1);
    rec(m1, b1, a2, m2, depth + 1);
    rec(a1, m1, m2, b2, depth + 1);
    rec(m1, b1, m2, b2, depth + 1);
  };
  const int init = 16;
  for (int i = 0; i < init && !bad; ++i)
    for (int j = 0; j < init && !bad; ++j)
      rec(kTwoPi * i / init, kTwoPi * (i + 1) / init, kTwoPi * j / init, kTwoPi * (j + 1) / init, 0);
  return bad ? 0 : sign;
}

SupBound sup_on_arcs(const FourierScalar& g, const std::vector<Arc>& arcs, int samples_per_unit) {
  const double L = ck_norm(partial_theta1(theta2_mean(g)), 0);
  SupBound out;
  for (const auto& a : arcs) {
    int K = std::max(2, int(std::ceil(a.length() * samples_per_unit)));
    double h = a.length() / K;
    for (int i = 0; i <= K; ++i) {
      double t = a.start + i * h;
      double v = std::abs(eval_theta1(g, t));
      if (v > out.sampled) {
        out.sampled = v;
        out.argmax = std::fmod(t, kTwoPi);
      }
    }
    out.upper = std::max(out.upper, out.sampled + L * 0.5 * h);
  }
  return out;
}

}  // namespace logdef
