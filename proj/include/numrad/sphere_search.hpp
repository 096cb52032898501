#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "numrad/lpspace.hpp"

namespace numrad::search {

/// Objective on R^n \ {0}; callers pass functions that are homogeneous of
/// degree zero, so only the direction of z matters.
using SphereObjective = std::function<double(const Vec& z)>;

struct AscentOptions {
  double initial_step = 0.25;
  double min_step = 1e-10;  // simplex diameter in chart coordinates
  int max_evaluations = 20000;
};

struct LocalMax {
  Vec point;      // Euclidean unit vector
  double value = 0.0;
  int start_index = 0;
  int evaluations = 0;
};

/// Local maximization from `start`: Nelder-Mead in a tangent chart of the
/// Euclidean sphere, re-centered until the point settles.
LocalMax ascend(const SphereObjective& f, Vec start, const AscentOptions& opts);

struct MultiStartOptions {
  int random_starts = 64;
  std::uint64_t seed = 0;
  bool include_vertices = true;
  std::size_t max_sign_dim = 10;
  AscentOptions ascent;
};

struct MultiStartResult {
  LocalMax best;
  std::vector<LocalMax> local_maxima;  // one per start, in start order
  int evaluations = 0;
};

/// Ascends from every vertex representative (+-e_i, sign vectors, modulo
/// x ~ -x), each of `extra_starts`, then `random_starts` Gaussian
/// directions. The best value wins; ties keep the lowest start index.
MultiStartResult maximize(const SphereObjective& f, std::size_t dim, const MultiStartOptions& opts,
                          const std::vector<Vec>& extra_starts = {});

/// Keeps one representative per cluster (distance < radius in max-norm,
/// treating z and -z as the same point), preserving order.
std::vector<LocalMax> distinct(const std::vector<LocalMax>& maxima, double radius);

}  // namespace numrad::search
