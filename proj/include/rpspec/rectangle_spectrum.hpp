#pragma once

#include <cstdint>
#include <string>

namespace rpspec {

// Boundary conditions at (-a, +a) for the 1D Laplacian: D = Dirichlet, N = Neumann.
enum class Bc1d { DD, DN, ND, NN };

const char* to_string(Bc1d bc);
Bc1d bc1d_from_string(const std::string& s);

using Count = std::int64_t;

// Relative guard used by every counting routine: lambda_mn counts iff
// lambda_mn < lambda * (1 - kCountGuard).
inline constexpr double kCountGuard = 1e-12;

inline double count_threshold(double lambda) { return lambda * (1.0 - kCountGuard); }

/// Smallest admissible index for the given condition (1 for DD, 0 otherwise).
int first_index(Bc1d bc);

/// m-th eigenvalue of -d^2/dx^2 on [-a, a].
double eigen_1d(Bc1d bc, double a, int m);

/// Number of admissible indices m with eigen_1d(bc, a, m) < r (exact, r may be <= 0).
Count count_1d_below(Bc1d bc, double a, double r);

struct RectangleSpec {
  double a{0.5};  // half-width in x
  double b{0.5};  // half-height in y
  Bc1d bc_x{Bc1d::NN};
  Bc1d bc_y{Bc1d::NN};

  double area() const { return 4.0 * a * b; }
  double eigenvalue(int m, int n) const;
  RectangleSpec scaled(double t) const { return {a * t, b * t, bc_x, bc_y}; }
};

/// Number of lattice eigenvalues lambda_mn < lambda (with the relative guard),
/// counted with multiplicity.
Count count_exact(const RectangleSpec& spec, double lambda);

/// Area term plus the boundary correction used for the bracketing estimates.
/// Supported (up to swapping axes, ND treated as DN): NN/NN, DD/DD, NN/DN,
/// DN/DD, DD/NN, NN/DD. Anything else throws std::invalid_argument.
double count_leading_estimate(const RectangleSpec& spec, double lambda);

/// Two-term Weyl expansion ab*lambda/pi + (e_x*2b + e_y*2a)*sqrt(lambda)/pi with
/// e = +1/2 for NN, 0 for mixed, -1/2 for DD. Defined for every combination.
double count_two_term_estimate(const RectangleSpec& spec, double lambda);

}  // namespace rpspec
