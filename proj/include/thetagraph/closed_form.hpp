#pragma once

namespace thetagraph {

/// The three radicals of the odd-k mutual-edge expression.
struct OddClosedFormParts {
  double gamma = 0.0; ///< 4 + 11 cos(2pi/k) + cos(6pi/k)
  double alpha = 0.0; ///< sqrt((27c1 + 17c3 + 3c5 + c7) csc(pi/k) / gamma), cj = cos(j pi/k)
  double beta = 0.0;  ///< sqrt(18s2 + 18s4 + 11s6 + s8 + s10), sj = sin(j pi/k)
};

struct ClosedFormValue {
  int k = 0;
  double p_k = 0.0; ///< probability that a directed edge is mutual
  double d_k = 0.0; ///< expected degree (2 - p_k) k
};

/// pi*sqrt(3)/9, the mutual-edge probability for every even k >= 4.
double p_even();

OddClosedFormParts odd_parts(int k);

/// Mutual-edge probability for odd k >= 5.
double p_odd(int k);

/// 2*arctan(1/3), the odd-k limit as k grows.
double p_odd_limit();

/// Dispatches on parity; k >= 4.
ClosedFormValue degree(int k);

} // namespace thetagraph
