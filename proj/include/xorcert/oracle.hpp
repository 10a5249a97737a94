#pragma once

#include <cstddef>

#include "xorcert/instance.hpp"
#include "xorcert/linalg.hpp"

namespace xorcert {

struct BruteResult {
  Fraction val;
  Assignment argmax;
};

/// Exact val by Gray-code enumeration of x. The argmax is the
/// lexicographically smallest optimum with -1 ordered before +1. Requires
/// n <= cap.
BruteResult brute_force_val(const KXorInstance& inst, std::size_t cap = 24);

/// Partitioned val: for each x the best y_i is the sign of the part's
/// signed sum (-1 on ties), so val = (m + sum_i |b_i(x)|) / (2m). Requires
/// n + ell <= cap.
BruteResult brute_force_val(const PartitionedInstance& inst, std::size_t cap = 24);

/// Exact max of x^T M y over Boolean x, y, enumerating the smaller side
/// (at most `cap` entries) and choosing the other side greedily.
double brute_force_inf1(const SparseMat& m, std::size_t cap = 20);

}  // namespace xorcert
