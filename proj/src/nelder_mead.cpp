#include "numrad/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace numrad::search {

namespace {

struct Run {
  Vec x;
  double value;
  int evaluations;
  bool converged;
};

Run single_run(const std::function<double(const Vec&)>& f, const Vec& x0, double step, double orientation,
               double tol, int budget) {
  const Eigen::Index n = x0.size();
  std::vector<Vec> pts;
  std::vector<double> vals;
  pts.push_back(x0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec v = x0;
    v[i] += orientation * step;
    pts.push_back(std::move(v));
  }
  int evals = 0;
  for (const auto& p : pts) {
    vals.push_back(f(p));
    ++evals;
  }
  std::vector<std::size_t> idx(pts.size());
  bool converged = false;
  while (evals < budget) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    double diameter = 0.0;
    for (std::size_t k = 1; k < idx.size(); ++k) {
      diameter = std::max(diameter, (pts[idx[k]] - pts[idx[0]]).cwiseAbs().maxCoeff());
    }
    if (diameter < tol) {
      converged = true;
      break;
    }
    const std::size_t worst = idx.back();
    const std::size_t second = idx[idx.size() - 2];
    const std::size_t best = idx.front();
    Vec centroid = Vec::Zero(n);
    for (std::size_t k = 0; k + 1 < idx.size(); ++k) {
      centroid += pts[idx[k]];
    }
    centroid /= static_cast<double>(n);

    const Vec reflected = centroid + (centroid - pts[worst]);
    const double fr = f(reflected);
    ++evals;
    if (fr < vals[best]) {
      const Vec expanded = centroid + 2.0 * (centroid - pts[worst]);
      const double fe = f(expanded);
      ++evals;
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Vec contracted =
        outside ? Vec(centroid + 0.5 * (reflected - centroid)) : Vec(centroid + 0.5 * (pts[worst] - centroid));
    const double fc = f(contracted);
    ++evals;
    if (fc < (outside ? fr : vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t k = 1; k < idx.size(); ++k) {
      const std::size_t j = idx[k];
      pts[j] = pts[best] + 0.5 * (pts[j] - pts[best]);
      vals[j] = f(pts[j]);
      ++evals;
    }
  }
  const auto best = static_cast<std::size_t>(std::min_element(vals.begin(), vals.end()) - vals.begin());
  return Run{pts[best], vals[best], evals, converged};
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vec&)>& f, const Vec& x0,
                             const NelderMeadOptions& opts) {
  if (x0.size() == 0) {
    throw std::invalid_argument("Nelder-Mead needs at least one variable");
  }
  NelderMeadResult out;
  Run run = single_run(f, x0, opts.initial_step, 1.0, opts.tolerance, opts.max_evaluations);
  out.x = run.x;
  out.value = run.value;
  out.evaluations = run.evaluations;
  out.converged = run.converged;
  double step = opts.initial_step;
  for (int k = 0; k < opts.relaunches && out.evaluations < opts.max_evaluations; ++k) {
    step = std::max(10.0 * opts.tolerance, 0.1 * step);
    const double orientation = (k % 2 == 0) ? -1.0 : 1.0;
    run = single_run(f, out.x, step, orientation, opts.tolerance, opts.max_evaluations - out.evaluations);
    out.evaluations += run.evaluations;
    const bool improved = run.value < out.value - 1e-15 * (1.0 + std::abs(out.value));
    if (run.value < out.value) {
      out.x = run.x;
      out.value = run.value;
    }
    out.converged = run.converged;
    if (!improved) {
      break;
    }
  }
  return out;
}

}  // namespace numrad::search
