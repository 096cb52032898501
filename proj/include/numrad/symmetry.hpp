#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "numrad/lpspace.hpp"
#include "numrad/projections.hpp"

namespace numrad {

/// A finite group of linear maps on one l^p space, averaged with uniform
/// weights. The constructor only checks shapes; verify_group checks the
/// group axioms and the isometry property.
class IsometryGroup {
 public:
  /// Throws std::invalid_argument for an empty list or a wrongly shaped
  /// element.
  IsometryGroup(LpSpace space, std::vector<Mat> elements);

  const LpSpace& space() const { return space_; }
  const std::vector<Mat>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  /// Index of the identity element, if present.
  std::optional<std::size_t> identity_index() const { return identity_; }
  /// Index of the inverse of element g. Throws std::logic_error if the list
  /// does not contain it.
  std::size_t inverse_index(std::size_t g) const;

 private:
  LpSpace space_;
  std::vector<Mat> elements_;
  std::optional<std::size_t> identity_;
  std::vector<std::optional<std::size_t>> inverse_;
};

/// Cyclic coordinate shifts: (S x)_i = x_{i-1 mod n}, all powers.
IsometryGroup cyclic_shift_group(const LpSpace& space);
/// The 2^n diagonal sign changes.
IsometryGroup sign_change_group(const LpSpace& space);
IsometryGroup trivial_group(const LpSpace& space);

struct GroupReport {
  bool passed = true;
  std::string axiom;   // "identity", "closure", "inverse" or "isometry" on failure
  std::size_t element = 0;
  std::string detail;
};

/// Identity, closure table, inverses, and ||g x|| = ||x|| on sphere samples
/// and vertices. Reports the first violation.
GroupReport verify_group(const IsometryGroup& g, std::size_t sample_count, std::uint64_t seed);

/// Q = (1/|G|) sum_g g^{-1} P g. Throws std::logic_error if Q fails to
/// commute with the group to 1e-10.
Mat rudin_average(const Mat& p, const IsometryGroup& g);

/// Same average; additionally asserts Q is in the family when P is and V is
/// invariant under the group.
Mat rudin_average(const Mat& p, const IsometryGroup& g, const ProjectionProblem& problem);

/// Index of the first element with g(V) not contained in V, if any.
std::optional<std::size_t> non_invariant_element(const IsometryGroup& g, const ProjectionProblem& problem);

/// Dimension of {P in the family : P g = g P for all g}. Zero means the
/// commuting member is unique. Throws std::invalid_argument naming the
/// element when V is not invariant.
int commutant_projections_dimension(const IsometryGroup& g, const ProjectionProblem& problem);

/// Trigonometric polynomials of degree <= n sampled at t_i = 2 pi i / N.
struct FourierGrid {
  /// Throws std::invalid_argument unless N >= 4n + 2.
  FourierGrid(int n, int N);

  int n;
  int N;

  double node(int i) const;
  /// Columns 1, cos t, sin t, ..., cos nt, sin nt on the grid.
  Mat basis() const;
  ProjectionProblem problem() const;
};

/// M_ij = (2/N)(1/2 + sum_{m=1}^n cos(m (t_i - t_j))).
Mat fourier_projection(const FourierGrid& grid);

/// Sup-norm operator norm of the discrete Fourier projection, max_i
/// sum_j |M_ij|. Computed from a single row since M is circulant.
double lebesgue_constant(const FourierGrid& grid);

struct LebesgueSweep {
  double value = 0.0;
  int N = 0;
  bool converged = false;
  std::vector<std::pair<int, double>> history;
};

/// Doubles N from start_N until successive values differ by less than tol.
LebesgueSweep lebesgue_limit(int n, int start_N, double tol = 1e-6, int max_N = 1 << 22);

/// Interpolation at the 2n+1 grid nodes round(k N / (2n+1)), extended to
/// the grid: a projection onto grid Pi_n.
Mat interpolation_projection(const FourierGrid& grid);

/// Cyclic translation group Z_N acting on grid functions.
IsometryGroup translation_group(const FourierGrid& grid);

/// (1/N) sum_g S_{-g} P S_g. Throws std::invalid_argument if P is not a
/// projection onto grid Pi_n and std::logic_error if the average differs
/// from fourier_projection by more than 1e-8.
Mat marcinkiewicz_average(const Mat& p, const FourierGrid& grid);

}  // namespace numrad
