#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "numrad/symmetry.hpp"

using namespace numrad;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

// Rank by plain Gaussian elimination with full pivot search.
int elimination_rank(Mat a, double tol) {
  int r = 0;
  for (Eigen::Index c = 0; c < a.cols() && r < a.rows(); ++c) {
    Eigen::Index best = r;
    for (Eigen::Index i = r; i < a.rows(); ++i) {
      if (std::abs(a(i, c)) > std::abs(a(best, c))) {
        best = i;
      }
    }
    if (std::abs(a(best, c)) <= tol) {
      continue;
    }
    a.row(r).swap(a.row(best));
    for (Eigen::Index i = r + 1; i < a.rows(); ++i) {
      a.row(i) -= (a(i, c) / a(r, c)) * a.row(r);
    }
    ++r;
  }
  return r;
}

// (1/2pi) int |1 + 2 cos t| dt by the midpoint rule.
double dirichlet_l1(int samples) {
  double s = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / samples;
    s += std::abs(1.0 + 2.0 * std::cos(t));
  }
  return s / samples;
}

}  // namespace

TEST_SUITE("symmetry") {
  TEST_CASE("group verification") {
    for (const char* ps : {"1", "4/3", "2", "inf"}) {
      const LpSpace s(3, Exponent::parse(ps));
      CHECK(verify_group(cyclic_shift_group(s), 50, 0).passed);
      const auto signs = sign_change_group(s);
      CHECK(signs.order() == 8);
      CHECK(verify_group(signs, 50, 0).passed);
    }
    const LpSpace s2(2, Exponent(2.0));
    const IsometryGroup bad(s2, {Mat::Identity(2, 2), (Mat(2, 2) << 1, 0, 0, 2).finished()});
    const auto rep = verify_group(bad, 10, 0);
    CHECK_FALSE(rep.passed);
    CHECK(rep.axiom != "");
    // Quarter turns are isometries only for p = 2; a lone rotation has no identity.
    const Mat r = (Mat(2, 2) << 0, -1, 1, 0).finished();
    const IsometryGroup turns(s2, {Mat::Identity(2, 2), r, r * r, r * r * r});
    CHECK(verify_group(turns, 10, 0).passed);
    const Mat rot = (Mat(2, 2) << std::cos(1.0), -std::sin(1.0), std::sin(1.0), std::cos(1.0)).finished();
    const auto m = verify_group(IsometryGroup(s2, {rot}), 10, 0);
    CHECK(m.axiom == "identity");
  }

  TEST_CASE("averaging over the trivial group is exact") {
    const LpSpace s(3, Exponent(3.0));
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    Mat p(3, 3);
    for (Eigen::Index i = 0; i < 9; ++i) {
      p.data()[i] = g(rng);
    }
    CHECK((rudin_average(p, trivial_group(s)) - p).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("cyclic averaging onto constants") {
    for (const char* ps : {"1", "4/3", "2", "inf"}) {
      const LpSpace s(3, Exponent::parse(ps));
      const ProjectionProblem pr(s, {v3(1, 1, 1)});
      const auto fam = parametrize(pr);
      const Mat p = fam.at((Vec(2) << 0.7, -1.3).finished());
      const auto g = cyclic_shift_group(s);
      const Mat q = rudin_average(p, g, pr);
      CHECK((q - Mat::Constant(3, 3, 1.0 / 3.0)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(numerical_radius(Operator(q, s)).value <= numerical_radius(Operator(p, s)).value + 1e-9);
      CHECK(operator_norm(Operator(q, s)).value <= operator_norm(Operator(p, s)).value + 1e-9);
      CHECK((rudin_average(q, g) - q).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(commutant_projections_dimension(g, pr) == 0);
    }
  }

  TEST_CASE("radius and norm monotonicity over random family members") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    const LpSpace s(3, Exponent(4.0));
    const ProjectionProblem pr(s, {v3(1, -1, 0), v3(0, 1, -1)});
    const auto fam = parametrize(pr);
    const auto grp = cyclic_shift_group(s);
    for (int k = 0; k < 10; ++k) {
      const Mat p = fam.at((Vec(2) << g(rng), g(rng)).finished());
      const Mat q = rudin_average(p, grp, pr);
      CHECK(pr.contains(q, 1e-10));
      CHECK(numerical_radius(Operator(q, s)).value <= numerical_radius(Operator(p, s)).value + 1e-9);
      CHECK(operator_norm(Operator(q, s)).value <= operator_norm(Operator(p, s)).value + 1e-9);
    }
  }

  TEST_CASE("commutant dimensions") {
    const LpSpace s(3, Exponent(2.0));
    CHECK(commutant_projections_dimension(trivial_group(s), ProjectionProblem(s, {v3(1, 0, 0), v3(0, 1, 0)})) == 2);
    CHECK_THROWS_WITH_AS(
        commutant_projections_dimension(cyclic_shift_group(s), ProjectionProblem(s, {v3(1, 0, 0)})),
        "subspace is not invariant under group element 1", std::invalid_argument);
    const FourierGrid grid(2, 12);
    CHECK(commutant_projections_dimension(translation_group(grid), grid.problem()) == 0);
  }

  TEST_CASE("uniqueness chain") {
    // The unique commuting projection has the smallest radius among samples.
    const LpSpace s(3, Exponent(3.0));
    const ProjectionProblem pr(s, {v3(1, 1, 1)});
    const auto g = cyclic_shift_group(s);
    REQUIRE(commutant_projections_dimension(g, pr) == 0);
    const auto fam = parametrize(pr);
    const Mat q = rudin_average(fam.base, g, pr);
    const double rq = numerical_radius(Operator(q, s)).value;
    std::mt19937_64 rng(3);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int k = 0; k < 10; ++k) {
      const Mat p = fam.at((Vec(2) << n(rng), n(rng)).finished());
      CHECK(rq <= numerical_radius(Operator(p, s)).value + 1e-9);
    }
  }

  TEST_CASE("Fourier projection") {
    CHECK_THROWS_AS(FourierGrid(2, 9), std::invalid_argument);
    const Mat m0 = fourier_projection(FourierGrid(0, 5));
    CHECK((m0 - Mat::Constant(5, 5, 0.2)).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(lebesgue_constant(FourierGrid(0, 16)) == doctest::Approx(1.0));

    const FourierGrid g1(1, 8);
    const Mat m = fourier_projection(g1);
    CHECK((m * m - m).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(elimination_rank(m, 1e-9) == 3);
    const auto shift = translation_group(g1).elements()[1];
    CHECK((m * shift - shift * m).cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("Lebesgue constants") {
    const double exact = 1.0 / 3.0 + 2.0 * std::sqrt(3.0) / std::numbers::pi;
    CHECK(dirichlet_l1(1 << 16) == doctest::Approx(exact).epsilon(1e-8));
    CHECK(lebesgue_constant(FourierGrid(1, 1024)) == doctest::Approx(dirichlet_l1(1 << 16)).epsilon(1e-5));
    const double l10 = lebesgue_constant(FourierGrid(10, 4096));
    CHECK(l10 >= 4.0 / (std::numbers::pi * std::numbers::pi) * std::log(10.0));
    CHECK(l10 <= std::log(10.0) + 3.0);
    for (int n = 1; n <= 10; ++n) {
      const double l = lebesgue_constant(FourierGrid(n, 4096));
      CHECK(l >= 4.0 / (std::numbers::pi * std::numbers::pi) * std::log(n));
      CHECK(l <= std::log(n) + 3.0);
    }
    const auto sweep = lebesgue_limit(1, 64);
    CHECK(sweep.converged);
    CHECK(sweep.value == doctest::Approx(exact).epsilon(1e-6));
  }

  TEST_CASE("Marcinkiewicz average") {
    for (int n = 0; n <= 4; ++n) {
      const FourierGrid grid(n, 4 * n + 4);
      const Mat f = fourier_projection(grid);
      CHECK((marcinkiewicz_average(f, grid) - f).cwiseAbs().maxCoeff() < 1e-12);
      const Mat p = interpolation_projection(grid);
      const Mat q = marcinkiewicz_average(p, grid);
      CHECK((q - f).cwiseAbs().maxCoeff() < 1e-8);
      const LpSpace sup(static_cast<std::size_t>(grid.N), Exponent::infinity());
      CHECK(numerical_radius(Operator(q, sup)).value <= numerical_radius(Operator(p, sup)).value + 1e-9);
      CHECK(numerical_radius(Operator(f, sup)).value == doctest::Approx(operator_norm(Operator(f, sup)).value));
    }
    const FourierGrid grid(1, 8);
    CHECK_THROWS_AS(marcinkiewicz_average(Mat::Identity(8, 8), grid), std::invalid_argument);
  }
}
