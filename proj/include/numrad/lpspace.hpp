#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace numrad {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Exponent p of an l^p norm. Infinity is a distinct value and every
/// consumer branches on it explicitly.
class Exponent {
 public:
  /// Throws std::invalid_argument unless 1 <= p (p may be +inf).
  explicit Exponent(double p);

  static Exponent infinity();
  /// Parses "inf", "2", "1.5" or a fraction such as "4/3".
  static Exponent parse(const std::string& text);

  double value() const { return p_; }
  bool is_infinite() const;
  bool is_one() const { return p_ == 1.0; }
  bool is_two() const { return p_ == 2.0; }
  /// True for p in {1, inf}, where duality maps are set-valued.
  bool is_polyhedral() const { return is_one() || is_infinite(); }

  /// Hölder conjugate q with 1/p + 1/q = 1.
  Exponent dual() const;

  std::string to_string() const;

  friend bool operator==(const Exponent& a, const Exponent& b) { return a.p_ == b.p_; }

 private:
  double p_;
};

/// Finite-dimensional sequence space l^p_n.
struct LpSpace {
  LpSpace(std::size_t dim, Exponent p);

  std::size_t dim;
  Exponent p;

  LpSpace dual() const { return LpSpace(dim, p.dual()); }
  friend bool operator==(const LpSpace& a, const LpSpace& b) { return a.dim == b.dim && a.p == b.p; }
};

double lp_norm(const Vec& x, const Exponent& p);

inline Exponent dual_exponent(const Exponent& p) { return p.dual(); }

/// <y, x> = sum y_i x_i. Throws std::invalid_argument on size mismatch.
double pair(const Vec& y, const Vec& x);

/// Extreme points of the duality map at x: unit functionals y (in l^q) with
/// y(x) = ||x||_p. Singleton for 1 < p < inf. For p = 1 every sign choice on
/// the zero coordinates is listed; for p = inf the signed unit vectors at
/// the coordinates where |x_i| attains the maximum.
/// Throws std::domain_error("no extremal of zero") for x = 0.
std::vector<Vec> ext_functionals(const Vec& x, const Exponent& p);

/// The unique extremal for 1 < p < inf (or any deterministic selection at
/// p in {1, inf}); x must be nonzero.
Vec duality_map(const Vec& x, const Exponent& p);

/// Normalized Gaussian draws (count of them, reproducible from seed) followed
/// by the vertex set: +-e_i and the normalized sign vectors (the latter for
/// dim <= max_sign_dim).
std::vector<Vec> sphere_sample(const LpSpace& space, std::size_t count, std::uint64_t seed,
                               std::size_t max_sign_dim = 12);

/// Representatives of +-e_i and sign vectors modulo x ~ -x, normalized in l^p.
std::vector<Vec> sphere_vertices(const LpSpace& space, std::size_t max_sign_dim, bool modulo_sign);

Vec normalized(const Vec& x, const Exponent& p);

}  // namespace numrad
