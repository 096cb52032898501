#include "numrad/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "numrad/simplex_lp.hpp"

namespace numrad::linalg {

namespace {

double off_diagonal_mass(const Mat& a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (i != j) {
        s += a(i, j) * a(i, j);
      }
    }
  }
  return std::sqrt(s);
}

struct Echelon {
  Mat r;                              // reduced row echelon form
  std::vector<Eigen::Index> pivots;   // pivot column of each nonzero row
};

Echelon reduce(const Mat& a, double tol) {
  Echelon e{a, {}};
  Mat& r = e.r;
  const double scale = a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
  const double cutoff = tol * std::max(scale, 1e-300);
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < r.cols() && row < r.rows(); ++col) {
    Eigen::Index best = row;
    for (Eigen::Index i = row + 1; i < r.rows(); ++i) {
      if (std::abs(r(i, col)) > std::abs(r(best, col))) {
        best = i;
      }
    }
    if (std::abs(r(best, col)) <= cutoff) {
      r.col(col).tail(r.rows() - row).setZero();
      continue;
    }
    r.row(row).swap(r.row(best));
    r.row(row) /= r(row, col);
    for (Eigen::Index i = 0; i < r.rows(); ++i) {
      if (i != row) {
        r.row(i) -= r(i, col) * r.row(row);
      }
    }
    e.pivots.push_back(col);
    ++row;
  }
  return e;
}

}  // namespace

SymmetricEigen jacobi_eigen(const Mat& input, double tol, int max_sweeps) {
  if (input.rows() != input.cols()) {
    throw std::invalid_argument("jacobi_eigen needs a square matrix");
  }
  const Eigen::Index n = input.rows();
  Mat a = 0.5 * (input + input.transpose());
  Mat v = Mat::Identity(n, n);
  const double threshold = tol * std::max(1.0, a.norm());
  int sweep = 0;
  for (; sweep < max_sweeps && off_diagonal_mass(a) > threshold; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) {
          continue;
        }
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) { return a(i, i) < a(j, j); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values[k] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
    out.vectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
  }
  out.sweeps = sweep;
  return out;
}

std::vector<Vec> null_space(const Mat& a, double tol) {
  const Eigen::Index n = a.cols();
  if (a.rows() == 0) {
    std::vector<Vec> basis;
    for (Eigen::Index j = 0; j < n; ++j) {
      basis.push_back(Vec::Unit(n, j));
    }
    return basis;
  }
  const Echelon e = reduce(a, tol);
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : e.pivots) {
    is_pivot[static_cast<std::size_t>(c)] = true;
  }
  std::vector<Vec> basis;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) {
      continue;
    }
    Vec z = Vec::Zero(n);
    z[free] = 1.0;
    for (std::size_t k = 0; k < e.pivots.size(); ++k) {
      z[e.pivots[k]] = -e.r(static_cast<Eigen::Index>(k), free);
    }
    basis.push_back(std::move(z));
  }
  return basis;
}

int rank(const Mat& a, double tol) {
  if (a.size() == 0) {
    return 0;
  }
  return static_cast<int>(reduce(a, tol).pivots.size());
}

Mat solve(const Mat& a, const Mat& b) {
  if (a.rows() != a.cols() || b.rows() != a.rows()) {
    throw std::invalid_argument("solve needs a square system with matching right-hand side");
  }
  const Eigen::Index n = a.rows();
  Mat aug(n, n + b.cols());
  aug << a, b;
  const Echelon e = reduce(aug.leftCols(n).eval(), 1e-13);
  if (static_cast<Eigen::Index>(e.pivots.size()) != n) {
    throw std::domain_error("singular system");
  }
  // Redo the elimination on the augmented matrix with the same pivoting rule.
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index best = col;
    for (Eigen::Index i = col + 1; i < n; ++i) {
      if (std::abs(aug(i, col)) > std::abs(aug(best, col))) {
        best = i;
      }
    }
    aug.row(col).swap(aug.row(best));
    aug.row(col) /= aug(col, col);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != col) {
        aug.row(i) -= aug(i, col) * aug.row(col);
      }
    }
  }
  return aug.rightCols(b.cols());
}

Mat columns(const std::vector<Vec>& cols, Eigen::Index rows) {
  Mat m(rows, static_cast<Eigen::Index>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) {
      throw std::invalid_argument("column length mismatch");
    }
    m.col(static_cast<Eigen::Index>(j)) = cols[j];
  }
  return m;
}

namespace {

// min_c ||w - B c||_1 or ||.||_inf as a linear program with free c split
// into positive and negative parts.
double polyhedral_distance(const Vec& w, const Mat& b, bool infinity) {
  const Eigen::Index n = w.size();
  const Eigen::Index m = b.cols();
  // Variables: c+ (m), c- (m), then s (n) for l^1 or t (1) for l^inf.
  const Eigen::Index extra = infinity ? 1 : n;
  const Eigen::Index nv = 2 * m + extra;
  Vec cost = Vec::Zero(nv);
  cost.tail(extra).setOnes();
  Mat a_le = Mat::Zero(2 * n, nv);
  Vec b_le(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    // w_i - (B c)_i <= s_i   and   -(w_i - (B c)_i) <= s_i
    a_le.block(i, 0, 1, m) = -b.row(i);
    a_le.block(i, m, 1, m) = b.row(i);
    a_le(i, 2 * m + (infinity ? 0 : i)) = -1.0;
    b_le[i] = -w[i];
    a_le.block(n + i, 0, 1, m) = b.row(i);
    a_le.block(n + i, m, 1, m) = -b.row(i);
    a_le(n + i, 2 * m + (infinity ? 0 : i)) = -1.0;
    b_le[n + i] = w[i];
  }
  const auto sol = lp::minimize(cost, Mat(0, nv), Vec(0), a_le, b_le);
  if (sol.status != lp::Status::optimal) {
    throw std::runtime_error("distance LP did not reach optimality");
  }
  return sol.objective;
}

}  // namespace

double distance_to_span(const Vec& w, const std::vector<Vec>& basis, const Exponent& p) {
  if (basis.empty()) {
    return lp_norm(w, p);
  }
  const Mat b = columns(basis, w.size());
  if (p.is_polyhedral()) {
    return polyhedral_distance(w, b, p.is_infinite());
  }
  // Least-squares start, then coordinate pattern search on the (strictly
  // convex) residual norm.
  Vec c = b.colPivHouseholderQr().solve(w);
  if (p.is_two()) {
    return (w - b * c).norm();
  }
  double best = lp_norm(w - b * c, p);
  double step = std::max(1e-3, 0.1 * c.cwiseAbs().maxCoeff());
  while (step > 1e-13) {
    bool improved = false;
    for (Eigen::Index k = 0; k < c.size(); ++k) {
      for (double dir : {1.0, -1.0}) {
        Vec trial = c;
        trial[k] += dir * step;
        const double v = lp_norm(w - b * trial, p);
        if (v < best) {
          best = v;
          c = trial;
          improved = true;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
  }
  return best;
}

}  // namespace numrad::linalg
