#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epnoz/errors.hpp"

namespace epnoz {

/// Uniform grid on [0, L].
struct Grid1D {
  double L = 0.0;
  int n1 = 0;

  double h() const { return L / (n1 - 1); }
  double x(int i) const { return L * i / (n1 - 1); }
};

/// Uniform grid on [-1, 1]; n2 must be odd so composite Simpson applies.
struct X2Grid {
  int n2 = 0;

  explicit X2Grid(int n = 0) : n2(n) {
    if (n2 != 0 && (n2 < 5 || n2 % 2 == 0))
      throw GridMismatch("x2 grid needs an odd node count >= 5");
  }
  double h() const { return 2.0 / (n2 - 1); }
  double x(int l) const { return -1.0 + 2.0 * l / (n2 - 1); }
};

/// Composite-Simpson weights for a uniform grid of odd size n and spacing h.
std::vector<double> simpson_weights(int n, double h);

double simpson_integrate(const std::vector<double>& f, double h);

/// Cumulative integral from the first node, locally cubic (exact on cubics).
/// out[0] = 0, out[k] = integral of the interpolant over [x0, xk].
std::vector<double> cumulative_integral(const std::vector<double>& f, double h);

/// Derivative of a sampled profile, centered in the interior with one-sided
/// stencils of matching order at the ends.  order must be 2, 4 or 6.
std::vector<double> fd_derivative(const std::vector<double>& f, double h,
                                  int order = 2);
std::vector<double> fd_second_derivative(const std::vector<double>& f, double h,
                                         int order = 2);

/// Row-wise (axis = 0, along x1) or column-wise (axis = 1, along x2)
/// derivative of grid values; values(i, l) = field(x1_i, x2_l).
Eigen::MatrixXd fd_derivative(const Eigen::MatrixXd& values, double h, int axis,
                              int order = 2);

/// sqrt of the Simpson-weighted integral of v^2 over the rectangle.
double l2_norm(const Eigen::MatrixXd& v, const Grid1D& g1, const X2Grid& g2);

/// Discrete H1: L2 of values plus L2 of centered-difference gradients.
double discrete_h1(const Eigen::MatrixXd& v, const Grid1D& g1, const X2Grid& g2);

double max_abs(const Eigen::MatrixXd& v);

}  // namespace epnoz
