#pragma once

#include <functional>

#include "numrad/lpspace.hpp"

namespace numrad::search {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double tolerance = 1e-8;  // simplex diameter (max-norm) at which to stop
  int max_evaluations = 10000;
  // Fresh-simplex relaunches from the current best; guards against the
  // classic collapse of the simplex on nonsmooth ridges.
  int relaunches = 4;
};

struct NelderMeadResult {
  Vec x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

/// Derivative-free minimization of f over R^n (n >= 1).
NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                             const NelderMeadOptions& opts);

}  // namespace numrad::search
