#pragma once

#include "numrad/lpspace.hpp"

namespace numrad::lp {

enum class Status { optimal, infeasible, unbounded, iteration_limit };

struct Solution {
  Status status = Status::infeasible;
  Vec x;
  double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   minimize c^T x  subject to  A_eq x = b_eq,  A_le x <= b_le,  x >= 0.
/// Either constraint block may have zero rows.
Solution minimize(const Vec& c, const Mat& a_eq, const Vec& b_eq, const Mat& a_le, const Vec& b_le,
                  int max_iterations = 20000);

}  // namespace numrad::lp
