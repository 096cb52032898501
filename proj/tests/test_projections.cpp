#include <doctest.h>

#include <cmath>
#include <random>

#include "numrad/projections.hpp"
#include "numrad/unicity.hpp"

using namespace numrad;

namespace {

Vec v3(double a, double b, double c) { return (Vec(3) << a, b, c).finished(); }

ProjectionProblem example_problem() {
  return ProjectionProblem(LpSpace(3, Exponent::parse("4/3")), {v3(1, 1, 1), v3(-1, 0, 1)});
}

bool parallel(const Vec& a, const Vec& b) {
  return std::abs(std::abs(a.dot(b)) - a.norm() * b.norm()) <= 1e-12 * a.norm() * b.norm();
}

}  // namespace

TEST_SUITE("projections") {
  TEST_CASE("problem validation") {
    const LpSpace s(3, Exponent(2.0));
    CHECK_THROWS_AS(ProjectionProblem(s, {}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionProblem(s, {Vec::Ones(2)}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionProblem(s, {v3(1, 2, 3), v3(2, 4, 6)}), std::invalid_argument);
    CHECK_THROWS_AS(ProjectionProblem(s, {v3(1, 0, 0)}, Mat::Identity(2, 2)), std::invalid_argument);
  }

  TEST_CASE("annihilators") {
    const auto a = annihilator_basis(example_problem());
    REQUIRE(a.size() == 1);
    CHECK(parallel(a[0], v3(1, -2, 1)));
    CHECK(std::abs(a[0].dot(v3(1, 1, 1))) < 1e-12);
    CHECK(std::abs(a[0].dot(v3(-1, 0, 1))) < 1e-12);

    const ProjectionProblem whole(LpSpace(3, Exponent(2.0)), {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
    CHECK(annihilator_basis(whole).empty());

    const auto n1 = annihilator_basis(builtin_instance("normone").problem);
    REQUIRE(n1.size() == 1);
    CHECK(parallel(n1[0], v3(1, 1, 0)));
  }

  TEST_CASE("parametrization") {
    const auto ex = example_problem();
    const Parametrization fam = parametrize(ex);
    CHECK(fam.size() == 2);
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    const Mat v = ex.basis_matrix();
    for (int k = 0; k < 20; ++k) {
      const Vec theta = (Vec(2) << 3 * g(rng), 3 * g(rng)).finished();
      CHECK((fam.at(theta) * v - v).cwiseAbs().maxCoeff() <= 1e-12);
    }
    for (const auto& d : fam.directions) {
      CHECK((d * v).cwiseAbs().maxCoeff() <= 1e-12);
    }
    CHECK_THROWS_AS(fam.at(Vec::Zero(3)), std::invalid_argument);

    CHECK(parametrize(builtin_instance("dim4").problem).size() == 3);

    const ProjectionProblem whole(LpSpace(2, Exponent(3.0)), {Vec::Unit(2, 0), Vec::Unit(2, 1)},
                                  (Mat(2, 2) << 2, 1, 0, 1).finished());
    const auto wf = parametrize(whole);
    CHECK(wf.size() == 0);
    CHECK((wf.base - (Mat(2, 2) << 2, 1, 0, 1).finished()).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("general restriction map") {
    const Mat a = (Mat(2, 2) << 0, 1, 1, 0).finished();
    const ProjectionProblem pr(LpSpace(3, Exponent(2.0)), {v3(1, 0, 0), v3(0, 1, 0)}, a);
    const auto fam = parametrize(pr);
    const Mat v = pr.basis_matrix();
    CHECK((fam.at((Vec(2) << 0.3, -0.7).finished()) * v - v * a).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("Hilbert minimal projections are orthogonal with norm 1") {
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int k = 0; k < 3; ++k) {
      const ProjectionProblem pr(LpSpace(3, Exponent(2.0)), {v3(g(rng), g(rng), g(rng))});
      for (auto kind : {NormKind::operator_norm, NormKind::numerical_radius}) {
        const auto mp = minimal_projection(pr, kind);
        CHECK(mp.value == doctest::Approx(1.0).epsilon(1e-6));
        CHECK((mp.op - mp.op.transpose()).cwiseAbs().maxCoeff() < 1e-3);
      }
    }
  }

  TEST_CASE("normone instance minimum is 1") {
    const auto inst = builtin_instance("normone");
    for (auto kind : {NormKind::operator_norm, NormKind::numerical_radius}) {
      CHECK(minimal_projection(inst.problem, kind).value == doctest::Approx(1.0).epsilon(1e-6));
    }
  }

  TEST_CASE("whole space returns the restriction") {
    const ProjectionProblem whole(LpSpace(2, Exponent::infinity()), {Vec::Unit(2, 0), Vec::Unit(2, 1)},
                                  (Mat(2, 2) << 2, 1, 0, 1).finished());
    const auto mp = minimal_projection(whole, NormKind::operator_norm);
    CHECK(mp.value == doctest::Approx(3.0));
    CHECK(mp.converged);
  }

  TEST_CASE("minimality sandwich and uniqueness on l1") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    const ProjectionProblem pr(LpSpace(3, Exponent(1.0)), {v3(g(rng), g(rng), g(rng)), v3(g(rng), g(rng), g(rng))});
    const auto by_radius = minimal_projection(pr, NormKind::numerical_radius);
    const auto by_norm = minimal_projection(pr, NormKind::operator_norm);
    const double norm_of_radius_min = operator_norm(Operator(by_radius.op, pr.space)).value;
    CHECK(by_radius.value <= by_norm.value + 1e-6);
    CHECK(by_norm.value <= norm_of_radius_min + 1e-6);
    if (by_norm.value > 1.0 + 1e-6) {
      MinimizerOptions other;
      other.seed = 12345;
      const auto again = minimal_projection(pr, NormKind::operator_norm, other);
      CHECK((again.op - by_norm.op).cwiseAbs().maxCoeff() <= 1e-3);
    }
  }

  TEST_CASE("extremal pairs") {
    const LpSpace l2(2, Exponent(2.0));
    const ProjectionProblem whole(l2, {Vec::Unit(2, 0), Vec::Unit(2, 1)});
    const auto id = extremal_pairs(Mat::Identity(2, 2), whole, NormKind::numerical_radius);
    CHECK_FALSE(id.pairs.empty());
    for (const auto& p : id.pairs) {
      CHECK(p.value == doctest::Approx(1.0));
      CHECK(p.y.dot(p.x) == doctest::Approx(1.0));
    }

    const Mat d = (Mat(2, 2) << 1, 0, 0, 0.5).finished();
    const ProjectionProblem dp(l2, {Vec::Unit(2, 0), Vec::Unit(2, 1)}, d);
    const auto pairs = extremal_pairs(d, dp, NormKind::numerical_radius);
    REQUIRE_FALSE(pairs.pairs.empty());
    for (const auto& p : pairs.pairs) {
      CHECK(std::abs(p.x[0]) == doctest::Approx(1.0).epsilon(1e-6));
    }

    CHECK_THROWS_AS(extremal_pairs(Mat::Zero(3, 3), example_problem(), NormKind::numerical_radius),
                    std::invalid_argument);
  }

  TEST_CASE("certificates") {
    const auto ex = example_problem();
    ExtremalPair inside{v3(1, 1, 1) / std::pow(3.0, 0.75), v3(1, 0, 0), 1.0, false};
    const auto c = invariance_certificate({inside}, ex, 1e-9);
    CHECK(c.feasible);
    REQUIRE(c.weights.size() == 1);
    CHECK(c.weights[0] == doctest::Approx(1.0));
    CHECK_THROWS_AS(invariance_certificate({}, ex, 1e-4), std::invalid_argument);

    // Monotone in the tolerance.
    ExtremalPair outside{v3(1, 0, 0), v3(1, 0, 0), 1.0, true};
    const auto tight = invariance_certificate({outside}, ex, 1e-6);
    CHECK_FALSE(tight.feasible);
    CHECK(invariance_certificate({outside}, ex, tight.residual * 1.01).feasible);
    CHECK(invariance_certificate({outside}, ex, tight.residual * 10).feasible);
  }

  TEST_CASE("radius minimizer restarts agree on the example") {
    MinimizerOptions a;
    a.restarts = 6;
    a.seed = 1;
    MinimizerOptions b = a;
    b.seed = 2;
    b.inner.seed = 5;
    const auto pa = minimal_projection(example_problem(), NormKind::numerical_radius, a);
    const auto pb = minimal_projection(example_problem(), NormKind::numerical_radius, b);
    CHECK(pa.value == doctest::Approx(1.02751).epsilon(2e-3));
    CHECK((pa.op - pb.op).cwiseAbs().maxCoeff() <= 1e-3);
    const auto pairs = extremal_pairs(pa.op, example_problem(), NormKind::numerical_radius);
    REQUIRE_FALSE(pairs.pairs.empty());
    for (const auto& p : pairs.pairs) {
      CHECK(std::abs(p.value) == doctest::Approx(pa.value).epsilon(1e-6));
    }
    CHECK(invariance_certificate(pairs.pairs, example_problem(), 1e-4).feasible);
  }
}
