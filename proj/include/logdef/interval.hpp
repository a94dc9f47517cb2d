#pragma once

#include <vector>

#include "logdef/fourier.hpp"

namespace logdef {

// Arc [start, end] of the theta1 circle; end may exceed 2*pi when the arc
// wraps through 0.
struct Arc {
  double start = 0.0, end = 0.0;
  double length() const { return end - start; }
};

bool arc_contains(const Arc& a, double theta);
double total_length(const std::vector<Arc>& arcs);
// Complement of a disjoint sorted arc list in the circle.
std::vector<Arc> complement_arcs(const std::vector<Arc>& arcs);

// theta1-arcs where |h| <= thresh may hold, for h with m-band 0.  Cells are
// refined dyadically; cells whose Lipschitz enclosure stays above thresh are
// discarded, the rest (at max depth or entirely below thresh) are kept.
std::vector<Arc> zero_arcs_theta1(const FourierScalar& h, double thresh, int max_depth = 12);

// Same for the fiber supremum s(t1) = max_{t2} |f(t1, t2)|.
std::vector<Arc> fiber_sup_zero_arcs(const FourierScalar& f, double thresh, int max_depth = 10);

// +1 / -1 when h (m-band 0) is certified sign-definite, 0 when a cell at
// max depth still straddles zero.
int certify_sign_theta1(const FourierScalar& h, int max_depth = 16);

// Certified sign of a general function on T^2 (+1/-1), 0 if undecided.
int certify_sign_torus(const FourierScalar& f, int max_depth = 8);

// Sampled max of |g(t1)| over the arcs, plus a Lipschitz upper bound.
struct SupBound {
  double sampled = 0.0;
  double upper = 0.0;
  double argmax = 0.0;
};
SupBound sup_on_arcs(const FourierScalar& g, const std::vector<Arc>& arcs, int samples_per_unit = 512);

}  // namespace logdef
