#include <cmath>
#include <cstdlib>
#include <vector>

#include "logdef/kernels.hpp"

namespace logdef {

namespace {
Exec initial_exec() {
  const char* s = std::getenv("LOGDEF_SERIAL");
  return (s && s[0] == '1') ? Exec::Serial : Exec::Parallel;
}
Exec g_exec = initial_exec();
}  // namespace

Exec default_exec() { return g_exec; }
void set_default_exec(Exec e) { g_exec = e; }

namespace kernels {

// roots[r] = exp(2 pi i r / G)
std::vector<cd> unit_roots(int G) {
  std::vector<cd> r(G);
  for (int k = 0; k < G; ++k) {
    double t = 2.0 * M_PI * double(k) / double(G);
    r[k] = cd(std::cos(t), std::sin(t));
  }
  return r;
}

static inline int mod(long a, int G) {
  long r = a % G;
  return int(r < 0 ? r + G : r);
}

namespace serial {

void convolve(const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out) {
  const int sa = 2 * Ma + 1, sb = 2 * Mb + 1, so = 2 * (Ma + Mb) + 1;
  const int Mo = Ma + Mb, No = Na + Nb;
  for (int n1 = -Na; n1 <= Na; ++n1)
    for (int m1 = -Ma; m1 <= Ma; ++m1) {
      cd x = a[(n1 + Na) * sa + (m1 + Ma)];
      if (x == cd(0, 0)) continue;
      for (int n2 = -Nb; n2 <= Nb; ++n2) {
        const cd* brow = b + (n2 + Nb) * sb;
        cd* orow = out + (n1 + n2 + No) * so + (m1 + Mo);
        for (int m2 = -Mb; m2 <= Mb; ++m2) orow[m2] += x * brow[m2 + Mb];
      }
    }
}

void eval(const cd* c, int N, int M, int G1, int G2, cd* out) {
  auto r1 = unit_roots(G1), r2 = unit_roots(G2);
  const int s = 2 * M + 1;
  // w(n, k) = sum_m c(n,m) e^{i m theta_k}
  std::vector<cd> w((2 * N + 1) * G2);
  for (int n = -N; n <= N; ++n)
    for (int k = 0; k < G2; ++k) {
      cd acc = 0;
      for (int m = -M; m <= M; ++m) acc += c[(n + N) * s + (m + M)] * r2[mod(long(m) * k, G2)];
      w[(n + N) * G2 + k] = acc;
    }
  for (int j = 0; j < G1; ++j)
    for (int k = 0; k < G2; ++k) {
      cd acc = 0;
      for (int n = -N; n <= N; ++n) acc += w[(n + N) * G2 + k] * r1[mod(long(n) * j, G1)];
      out[j * G2 + k] = acc;
    }
}

void fit(const cd* v, int G1, int G2, int N, int M, cd* out) {
  auto r1 = unit_roots(G1), r2 = unit_roots(G2);
  const int s = 2 * M + 1;
  // u(j, m) = sum_k v(j,k) e^{-i m theta_k}
  std::vector<cd> u(G1 * s);
  for (int j = 0; j < G1; ++j)
    for (int m = -M; m <= M; ++m) {
      cd acc = 0;
      for (int k = 0; k < G2; ++k) acc += v[j * G2 + k] * r2[mod(-long(m) * k, G2)];
      u[j * s + (m + M)] = acc;
    }
  const double scale = 1.0 / (double(G1) * double(G2));
  for (int n = -N; n <= N; ++n)
    for (int m = -M; m <= M; ++m) {
      cd acc = 0;
      for (int j = 0; j < G1; ++j) acc += u[j * s + (m + M)] * r1[mod(-long(n) * j, G1)];
      out[(n + N) * s + (m + M)] = acc * scale;
    }
}

}  // namespace serial

void convolve(Exec e, const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out) {
  if (e == Exec::Serial)
    serial::convolve(a, Na, Ma, b, Nb, Mb, out);
  else
    parallel::convolve(a, Na, Ma, b, Nb, Mb, out);
}
void eval(Exec e, const cd* c, int N, int M, int G1, int G2, cd* out) {
  if (e == Exec::Serial)
    serial::eval(c, N, M, G1, G2, out);
  else
    parallel::eval(c, N, M, G1, G2, out);
}
void fit(Exec e, const cd* v, int G1, int G2, int N, int M, cd* out) {
  if (e == Exec::Serial)
    serial::fit(v, G1, G2, N, M, out);
  else
    parallel::fit(v, G1, G2, N, M, out);
}

}  // namespace kernels
}  // namespace logdef
