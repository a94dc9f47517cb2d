#include <omp.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "logdef/kernels.hpp"

namespace logdef::kernels {

std::vector<cd> unit_roots(int G);

static inline int mod(long a, int G) {
  long r = a % G;
  return int(r < 0 ? r + G : r);
}

namespace parallel {

// Gather form: each output row is owned by one thread.
void convolve(const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out) {
  const int sa = 2 * Ma + 1, sb = 2 * Mb + 1, so = 2 * (Ma + Mb) + 1;
  const int No = Na + Nb, Mo = Ma + Mb;
#pragma omp parallel for schedule(static)
  for (int n = -No; n <= No; ++n) {
    cd* orow = out + (n + No) * so;
    for (int n1 = std::max(-Na, n - Nb); n1 <= std::min(Na, n + Nb); ++n1) {
      const cd* arow = a + (n1 + Na) * sa;
      const cd* brow = b + (n - n1 + Nb) * sb;
      for (int m1 = -Ma; m1 <= Ma; ++m1) {
        cd x = arow[m1 + Ma];
        if (x == cd(0, 0)) continue;
        cd* o = orow + (m1 + Mo);
        for (int m2 = -Mb; m2 <= Mb; ++m2) o[m2] += x * brow[m2 + Mb];
      }
    }
  }
}

void eval(const cd* c, int N, int M, int G1, int G2, cd* out) {
  auto r1 = unit_roots(G1), r2 = unit_roots(G2);
  const int s = 2 * M + 1;
  std::vector<cd> w((2 * N + 1) * G2);
#pragma omp parallel for schedule(static)
  for (int n = -N; n <= N; ++n)
    for (int k = 0; k < G2; ++k) {
      cd acc = 0;
      for (int m = -M; m <= M; ++m) acc += c[(n + N) * s + (m + M)] * r2[mod(long(m) * k, G2)];
      w[(n + N) * G2 + k] = acc;
    }
#pragma omp parallel for schedule(static)
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
  std::vector<cd> u(G1 * s);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < G1; ++j)
    for (int m = -M; m <= M; ++m) {
      cd acc = 0;
      for (int k = 0; k < G2; ++k) acc += v[j * G2 + k] * r2[mod(-long(m) * k, G2)];
      u[j * s + (m + M)] = acc;
    }
  const double scale = 1.0 / (double(G1) * double(G2));
#pragma omp parallel for schedule(static)
  for (int n = -N; n <= N; ++n)
    for (int m = -M; m <= M; ++m) {
      cd acc = 0;
      for (int j = 0; j < G1; ++j) acc += u[j * s + (m + M)] * r1[mod(-long(n) * j, G1)];
      out[(n + N) * s + (m + M)] = acc * scale;
    }
}

}  // namespace parallel
}  // namespace logdef::kernels
