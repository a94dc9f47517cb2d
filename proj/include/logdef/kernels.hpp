#pragma once

#include <complex>

namespace logdef {

using cd = std::complex<double>;

enum class Exec { Serial, Parallel };

// Process-wide default for the double-precision kernels.  LOGDEF_SERIAL=1
// in the environment selects the serial reference path at startup.
Exec default_exec();
void set_default_exec(Exec e);

namespace kernels {

// Coefficient tables are dense row-major over n in [-N,N], m in [-M,M]
// with stride 2M+1.  Grids are row-major over theta1 index j (G1 rows)
// and theta2 index k (G2 columns), theta = 2*pi*index/G.

namespace serial {
// out has band (Na+Nb, Ma+Mb) and must be zero-initialised.
void convolve(const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out);
void eval(const cd* c, int N, int M, int G1, int G2, cd* out);
void fit(const cd* v, int G1, int G2, int N, int M, cd* out);
}  // namespace serial

namespace parallel {
void convolve(const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out);
void eval(const cd* c, int N, int M, int G1, int G2, cd* out);
void fit(const cd* v, int G1, int G2, int N, int M, cd* out);
}  // namespace parallel

void convolve(Exec e, const cd* a, int Na, int Ma, const cd* b, int Nb, int Mb, cd* out);
void eval(Exec e, const cd* c, int N, int M, int G1, int G2, cd* out);
void fit(Exec e, const cd* v, int G1, int G2, int N, int M, cd* out);

}  // namespace kernels
}  // namespace logdef
