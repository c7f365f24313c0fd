#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "epnoz/grid.hpp"

namespace epnoz {

enum class Basis { cosine, sine };

/// Finite expansion in the Neumann-wall eigenbasis on (-1, 1):
///   eta_0 = 1/sqrt(2),  eta_k(x2) = cos(k pi x2) for k >= 1,
/// orthonormal in L2.  Every eta_k has vanishing odd derivatives at the
/// walls, so reconstructions satisfy the slip compatibility termwise.
struct CosineSeries {
  std::vector<double> c;  // c[k] multiplies eta_k

  CosineSeries() = default;
  explicit CosineSeries(std::vector<double> coeffs) : c(std::move(coeffs)) {}
  static CosineSeries constant(double value);  // value * 1 = value*sqrt(2)*eta_0

  int modes() const { return static_cast<int>(c.size()); }
  double eval(double x2, int deriv = 0) const;
  CosineSeries second_derivative() const;  // termwise -(k pi)^2
  double coeff(int k) const { return k < modes() ? c[k] : 0.0; }
  double l2_norm() const;
};

/// Dirichlet-wall basis zeta_k(x2) = sin(k pi (x2+1)/2), k >= 1, orthonormal
/// in L2; values and second derivatives vanish at the walls.
struct SineSeries {
  std::vector<double> d;  // d[k-1] multiplies zeta_k

  SineSeries() = default;
  explicit SineSeries(std::vector<double> coeffs) : d(std::move(coeffs)) {}

  int modes() const { return static_cast<int>(d.size()); }
  double eval(double x2, int deriv = 0) const;
  SineSeries second_derivative() const;  // termwise -(k pi / 2)^2
  /// Termwise integral from the wall: F(x2) = int_{-1}^{x2} series.
  double integral_from_wall(double x2) const;
  double l2_norm() const;
};

/// Basis-value table: row l = x2 node, column j = basis index.
Eigen::MatrixXd basis_values(Basis basis, const X2Grid& grid, int m, int deriv = 0);

/// L2 projection onto the first m+1 cosine (or m sine) modes via composite
/// Simpson on the sample grid.  Throws TruncationTooHigh once the requested
/// band exceeds what the grid resolves (m > n2/4).
CosineSeries project_cosine(const std::vector<double>& samples,
                            const X2Grid& grid, int m);
SineSeries project_sine(const std::vector<double>& samples, const X2Grid& grid,
                        int m);

std::vector<double> reconstruct(const CosineSeries& s, const X2Grid& grid,
                                int deriv = 0);
std::vector<double> reconstruct(const SineSeries& s, const X2Grid& grid,
                                int deriv = 0);

/// A 2D scalar field stored mode-by-mode: modes[j][i] is the x1-profile of
/// basis function j sampled on a uniform grid over [0, L].
struct Field2D {
  Basis basis = Basis::cosine;
  Grid1D grid;
  std::vector<std::vector<double>> modes;

  static Field2D zero(Basis basis, const Grid1D& grid, int mode_count);
  int mode_count() const { return static_cast<int>(modes.size()); }
  bool same_layout(const Field2D& o) const;

  /// Grid values: (n1 x n2) matrix, entry (i, l) = field(x1_i, x2_l).
  /// deriv differentiates in x2 termwise (analytic).
  Eigen::MatrixXd values(const X2Grid& g2, int deriv = 0) const;
  /// x1-derivative of every mode profile by finite differences.
  Field2D dx1(int order = 2) const;
  CosineSeries cosine_at(int i) const;  // series at x1 node i
  SineSeries sine_at(int i) const;
};

Field2D operator-(const Field2D& a, const Field2D& b);

double discrete_h1(const Field2D& f, const X2Grid& g2);

/// Trace-compatibility report for boundary data: odd-derivative wall
/// conditions (k = 1, 3) for inlet/exit scalar data, value and curvature
/// conditions (k = 0, 2) for the transverse velocity, and flat walls for the
/// ion background.
struct CompatReport {
  struct Item {
    std::string name;
    int k;           // derivative order checked
    double measured; // max wall magnitude of that derivative
    bool pass;
  };
  std::vector<Item> items;
  bool all_pass = true;
};

/// Sampled-data compatibility check; derivative magnitudes at the walls are
/// measured with one-sided finite differences on the sample grid.
CompatReport check_compatibility(
    const std::vector<std::pair<std::string, std::vector<double>>>& odd_data,
    const std::vector<std::pair<std::string, std::vector<double>>>& even_data,
    const X2Grid& grid, double tol = 1e-6);

/// Series inputs satisfy the conditions termwise; wall derivatives are
/// evaluated analytically.
CompatReport check_compatibility(
    const std::vector<std::pair<std::string, CosineSeries>>& odd_series,
    const std::vector<std::pair<std::string, SineSeries>>& even_series,
    double tol = 1e-10);

}  // namespace epnoz
