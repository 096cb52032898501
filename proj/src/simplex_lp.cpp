#include "numrad/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace numrad::lp {

namespace {

constexpr double kPivotEps = 1e-11;

struct Tableau {
  // rows_ x (cols_ + 1); last column is the right-hand side.
  Mat t;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows(); }
  Eigen::Index rhs() const { return t.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i != r && t(i, c) != 0.0) {
        t.row(i) -= t(i, c) * t.row(r);
      }
    }
    basis[static_cast<std::size_t>(r)] = c;
  }
};

// Runs Bland's-rule simplex on the tableau for objective `cost` restricted to
// columns [0, active_cols). Returns false when unbounded.
Status run(Tableau& tab, const Vec& cost, Eigen::Index active_cols, int& budget) {
  const Eigen::Index m = tab.rows();
  while (true) {
    if (budget-- <= 0) {
      return Status::iteration_limit;
    }
    // Reduced costs: c_j - c_B^T B^{-1} a_j, with the tableau already holding B^{-1} A.
    Eigen::Index entering = -1;
    for (Eigen::Index j = 0; j < active_cols; ++j) {
      double reduced = cost[j];
      for (Eigen::Index i = 0; i < m; ++i) {
        reduced -= cost[tab.basis[static_cast<std::size_t>(i)]] * tab.t(i, j);
      }
      if (reduced < -kPivotEps) {
        entering = j;
        break;
      }
    }
    if (entering < 0) {
      return Status::optimal;
    }
    Eigen::Index leaving = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = tab.t(i, entering);
      if (a > kPivotEps) {
        const double ratio = tab.t(i, tab.rhs()) / a;
        if (ratio < best_ratio - 1e-14 ||
            (std::abs(ratio - best_ratio) <= 1e-14 && leaving >= 0 &&
             tab.basis[static_cast<std::size_t>(i)] < tab.basis[static_cast<std::size_t>(leaving)])) {
          best_ratio = ratio;
          leaving = i;
        }
      }
    }
    if (leaving < 0) {
      return Status::unbounded;
    }
    tab.pivot(leaving, entering);
  }
}

}  // namespace

Solution minimize(const Vec& c, const Mat& a_eq, const Vec& b_eq, const Mat& a_le, const Vec& b_le,
                  int max_iterations) {
  const Eigen::Index n = c.size();
  const Eigen::Index m_eq = a_eq.rows();
  const Eigen::Index m_le = a_le.rows();
  if ((m_eq > 0 && a_eq.cols() != n) || (m_le > 0 && a_le.cols() != n) || b_eq.size() != m_eq ||
      b_le.size() != m_le) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }
  const Eigen::Index m = m_eq + m_le;
  const Eigen::Index structural = n + m_le;  // original + slack columns
  const Eigen::Index total = structural + m;  // + artificials

  Tableau tab;
  tab.t = Mat::Zero(m, total + 1);
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m_eq; ++i) {
    const double sign = b_eq[i] < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = sign * a_eq.row(i);
    tab.t(i, total) = sign * b_eq[i];
  }
  for (Eigen::Index k = 0; k < m_le; ++k) {
    const Eigen::Index i = m_eq + k;
    const double sign = b_le[k] < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, n) = sign * a_le.row(k);
    tab.t(i, n + k) = sign;
    tab.t(i, total) = sign * b_le[k];
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.t(i, structural + i) = 1.0;
    tab.basis[static_cast<std::size_t>(i)] = structural + i;
  }

  int budget = max_iterations;
  Vec phase1 = Vec::Zero(total);
  phase1.tail(m).setOnes();
  Solution sol;
  Status st = run(tab, phase1, total, budget);
  if (st == Status::iteration_limit) {
    sol.status = st;
    return sol;
  }
  const double scale = 1.0 + tab.t.col(total).cwiseAbs().maxCoeff();
  double infeas = 0.0;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] >= structural) {
      infeas += tab.t(i, total);
    }
  }
  if (infeas > 1e-9 * scale) {
    sol.status = Status::infeasible;
    return sol;
  }
  // Drive remaining (zero-valued) artificials out of the basis.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < structural) {
      continue;
    }
    for (Eigen::Index j = 0; j < structural; ++j) {
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }
  // Rows still carrying an artificial are redundant; zero them so they never pivot.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] >= structural) {
      tab.t.row(i).head(structural).setZero();
    }
  }

  Vec phase2 = Vec::Zero(total);
  phase2.head(n) = c;
  st = run(tab, phase2, structural, budget);
  sol.status = st;
  if (st != Status::optimal) {
    return sol;
  }
  sol.x = Vec::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) {
      sol.x[b] = tab.t(i, total);
    }
  }
  sol.objective = c.dot(sol.x);
  return sol;
}

}  // namespace numrad::lp
