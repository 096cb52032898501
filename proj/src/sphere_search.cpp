#include "numrad/sphere_search.hpp"

#include "numrad/nelder_mead.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace numrad::search {

namespace {

// Orthonormal basis of the tangent space {w : w . s = 0} at a unit vector s.
Mat tangent_basis(const Vec& s) {
  const Eigen::Index n = s.size();
  Mat q = Mat::Identity(n, n);
  Eigen::Index pivot = 0;
  s.cwiseAbs().maxCoeff(&pivot);
  q.col(pivot) = s;
  q.col(0).swap(q.col(pivot));
  // Gram-Schmidt with s first.
  for (Eigen::Index j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < j; ++k) {
        q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
      }
    }
    q.col(j).normalize();
  }
  return q.rightCols(n - 1);
}

}  // namespace

LocalMax ascend(const SphereObjective& f, Vec start, const AscentOptions& opts) {
  const double n0 = start.norm();
  if (n0 == 0.0 || !std::isfinite(n0)) {
    throw std::invalid_argument("ascent start must be a finite nonzero vector");
  }
  Vec x = start / n0;
  int evals = 0;
  if (x.size() == 1) {
    return LocalMax{x, f(x), 0, 1};
  }
  double fx = f(x);
  ++evals;
  double step = opts.initial_step;
  // Nelder-Mead in a chart around the current point; re-center the chart
  // until the point stops moving.
  for (int round = 0; round < 8 && evals < opts.max_evaluations; ++round) {
    const Vec center = x;
    const Mat u = tangent_basis(center);
    auto chart = [&](const Vec& w) -> Vec {
      Vec z = center + u * w;
      return z / z.norm();
    };
    NelderMeadOptions nm;
    nm.initial_step = step;
    nm.tolerance = opts.min_step;
    nm.max_evaluations = opts.max_evaluations - evals;
    const auto res = nelder_mead([&](const Vec& w) { return -f(chart(w)); }, Vec::Zero(u.cols()), nm);
    evals += res.evaluations;
    const Vec moved = chart(res.x);
    const double shift = (moved - x).cwiseAbs().maxCoeff();
    if (-res.value > fx) {
      x = moved;
      fx = -res.value;
    }
    if (shift < 1e-3) {
      break;
    }
    step = std::max(opts.min_step * 10.0, std::min(step, shift));
  }
  return LocalMax{std::move(x), fx, 0, evals};
}

MultiStartResult maximize(const SphereObjective& f, std::size_t dim, const MultiStartOptions& opts,
                          const std::vector<Vec>& extra_starts) {
  if (dim == 0) {
    throw std::invalid_argument("sphere dimension must be positive");
  }
  std::vector<Vec> starts;
  if (opts.include_vertices) {
    // Normalization of vertices is irrelevant here; only directions matter.
    starts = sphere_vertices(LpSpace(dim, Exponent(2.0)), opts.max_sign_dim, true);
  }
  starts.insert(starts.end(), extra_starts.begin(), extra_starts.end());
  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int k = 0; k < opts.random_starts; ++k) {
    Vec g(static_cast<Eigen::Index>(dim));
    for (auto& v : g) {
      v = gauss(rng);
    }
    starts.push_back(std::move(g));
  }

  MultiStartResult out;
  out.local_maxima.reserve(starts.size());
  bool have_best = false;
  for (std::size_t s = 0; s < starts.size(); ++s) {
    if (starts[s].norm() == 0.0) {
      continue;
    }
    LocalMax lm = ascend(f, starts[s], opts.ascent);
    lm.start_index = static_cast<int>(s);
    out.evaluations += lm.evaluations;
    if (!have_best || lm.value > out.best.value) {
      out.best = lm;
      have_best = true;
    }
    out.local_maxima.push_back(std::move(lm));
  }
  return out;
}

std::vector<LocalMax> distinct(const std::vector<LocalMax>& maxima, double radius) {
  std::vector<LocalMax> out;
  for (const auto& m : maxima) {
    bool seen = false;
    for (const auto& kept : out) {
      const double d = std::min((m.point - kept.point).cwiseAbs().maxCoeff(),
                                (m.point + kept.point).cwiseAbs().maxCoeff());
      if (d < radius) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      out.push_back(m);
    }
  }
  return out;
}

}  // namespace numrad::search
