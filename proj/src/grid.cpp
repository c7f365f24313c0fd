#include "epnoz/grid.hpp"

#include <cmath>

namespace epnoz {

std::vector<double> simpson_weights(int n, double h) {
  if (n < 3 || n % 2 == 0)
    throw GridMismatch("Simpson weights need an odd node count >= 3");
  std::vector<double> w(n, 0.0);
  for (int i = 0; i + 2 < n; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  return w;
}

double simpson_integrate(const std::vector<double>& f, double h) {
  const auto w = simpson_weights(static_cast<int>(f.size()), h);
  double s = 0.0;
  for (size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

std::vector<double> cumulative_integral(const std::vector<double>& f, double h) {
  const int n = static_cast<int>(f.size());
  std::vector<double> out(n, 0.0);
  if (n < 2) return out;
  if (n < 4) {
    for (int k = 1; k < n; ++k)
      out[k] = out[k - 1] + 0.5 * h * (f[k - 1] + f[k]);
    return out;
  }
  // Integrate the cubic through the four samples nearest each subinterval.
  for (int k = 0; k + 1 < n; ++k) {
    int j = k - 1;
    if (j < 0) j = 0;
    if (j > n - 4) j = n - 4;
    const double a = f[j], b = f[j + 1], c = f[j + 2], d = f[j + 3];
    const int s = k - j;  // subinterval offset inside the 4-point stencil
    double inc;
    if (s == 0)
      inc = h * (9.0 * a + 19.0 * b - 5.0 * c + d) / 24.0;
    else if (s == 1)
      inc = h * (-a + 13.0 * b + 13.0 * c - d) / 24.0;
    else
      inc = h * (a - 5.0 * b + 19.0 * c + 9.0 * d) / 24.0;
    out[k + 1] = out[k] + inc;
  }
  return out;
}

namespace {

// One-sided first-derivative stencils (leftmost rows); orders 2/4/6.
const double os2[2][3] = {{-1.5, 2.0, -0.5}, {-0.5, 0.0, 0.5}};
const double os4[4][5] = {
    {-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25},
    {-0.25, -5.0 / 6, 1.5, -0.5, 1.0 / 12},
    {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12},
    {1.0 / 12, -2.0 / 3, 0.0, 2.0 / 3, -1.0 / 12}};
const double os6c[7] = {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0,
                        3.0 / 4,   -3.0 / 20, 1.0 / 60};
const double os6b[4][7] = {
    {-49.0 / 20, 6.0, -7.5, 20.0 / 3, -3.75, 6.0 / 5, -1.0 / 6},
    {-1.0 / 6, -77.0 / 60, 5.0 / 2, -5.0 / 3, 5.0 / 6, -0.25, 1.0 / 30},
    {1.0 / 30, -2.0 / 5, -7.0 / 12, 4.0 / 3, -0.5, 2.0 / 15, -1.0 / 60},
    {-1.0 / 60, 3.0 / 20, -3.0 / 4, 0.0, 3.0 / 4, -3.0 / 20, 1.0 / 60}};

}  // namespace

std::vector<double> fd_derivative(const std::vector<double>& f, double h,
                                  int order) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n, 0.0);
  auto apply = [&](int i, const double* sten, int len, int start, double sign) {
    double s = 0.0;
    for (int t = 0; t < len; ++t) s += sten[t] * f[start + t];
    d[i] = sign * s / h;
  };
  if (order == 2 || n < 5) {
    if (n < 3) throw GridMismatch("fd_derivative: too few nodes");
    for (int i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
    d[0] = (-1.5 * f[0] + 2.0 * f[1] - 0.5 * f[2]) / h;
    d[n - 1] = (1.5 * f[n - 1] - 2.0 * f[n - 2] + 0.5 * f[n - 3]) / h;
    return d;
  }
  if (order == 4 || n < 7) {
    for (int i = 2; i + 2 < n; ++i)
      d[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) /
             (12.0 * h);
    apply(0, os4[0], 5, 0, 1.0);
    apply(1, os4[1], 5, 0, 1.0);
    // mirrored stencils at the right end
    {
      double s = 0.0;
      for (int t = 0; t < 5; ++t) s += os4[0][t] * f[n - 1 - t];
      d[n - 1] = -s / h;
      s = 0.0;
      for (int t = 0; t < 5; ++t) s += os4[1][t] * f[n - 1 - t];
      d[n - 2] = -s / h;
    }
    return d;
  }
  if (order != 6) throw GridMismatch("fd_derivative: order must be 2, 4 or 6");
  for (int i = 3; i + 3 < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < 7; ++t) s += os6c[t] * f[i - 3 + t];
    d[i] = s / h;
  }
  for (int r = 0; r < 3; ++r) {
    apply(r, os6b[r], 7, 0, 1.0);
    double s = 0.0;
    for (int t = 0; t < 7; ++t) s += os6b[r][t] * f[n - 1 - t];
    d[n - 1 - r] = -s / h;
  }
  return d;
}

std::vector<double> fd_second_derivative(const std::vector<double>& f, double h,
                                         int order) {
  const int n = static_cast<int>(f.size());
  std::vector<double> d(n, 0.0);
  const double h2 = h * h;
  if (order == 2 || n < 6) {
    if (n < 4) throw GridMismatch("fd_second_derivative: too few nodes");
    for (int i = 1; i + 1 < n; ++i)
      d[i] = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / h2;
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / h2;
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / h2;
    return d;
  }
  // 4th order interior, one-sided 4th order at the ends
  static const double c4[5] = {-1.0 / 12, 4.0 / 3, -2.5, 4.0 / 3, -1.0 / 12};
  static const double e4[2][6] = {
      {15.0 / 4, -77.0 / 6, 107.0 / 6, -13.0, 61.0 / 12, -5.0 / 6},
      {5.0 / 6, -5.0 / 4, -1.0 / 3, 7.0 / 6, -0.5, 1.0 / 12}};
  for (int i = 2; i + 2 < n; ++i) {
    double s = 0.0;
    for (int t = 0; t < 5; ++t) s += c4[t] * f[i - 2 + t];
    d[i] = s / h2;
  }
  for (int r = 0; r < 2; ++r) {
    double s = 0.0;
    for (int t = 0; t < 6; ++t) s += e4[r][t] * f[t];
    d[r] = s / h2;
    s = 0.0;
    for (int t = 0; t < 6; ++t) s += e4[r][t] * f[n - 1 - t];
    d[n - 1 - r] = s / h2;
  }
  return d;
}

Eigen::MatrixXd fd_derivative(const Eigen::MatrixXd& values, double h, int axis,
                              int order) {
  Eigen::MatrixXd out(values.rows(), values.cols());
  if (axis == 0) {
    std::vector<double> col(values.rows());
    for (int l = 0; l < values.cols(); ++l) {
      for (int i = 0; i < values.rows(); ++i) col[i] = values(i, l);
      const auto d = fd_derivative(col, h, order);
      for (int i = 0; i < values.rows(); ++i) out(i, l) = d[i];
    }
  } else {
    std::vector<double> row(values.cols());
    for (int i = 0; i < values.rows(); ++i) {
      for (int l = 0; l < values.cols(); ++l) row[l] = values(i, l);
      const auto d = fd_derivative(row, h, order);
      for (int l = 0; l < values.cols(); ++l) out(i, l) = d[l];
    }
  }
  return out;
}

namespace {

double weighted_sq(const Eigen::MatrixXd& v, const Grid1D& g1, const X2Grid& g2) {
  const auto w1 = simpson_weights(g1.n1, g1.h());
  const auto w2 = simpson_weights(g2.n2, g2.h());
  double s = 0.0;
  for (int i = 0; i < g1.n1; ++i)
    for (int l = 0; l < g2.n2; ++l) s += w1[i] * w2[l] * v(i, l) * v(i, l);
  return s;
}

}  // namespace

double l2_norm(const Eigen::MatrixXd& v, const Grid1D& g1, const X2Grid& g2) {
  return std::sqrt(weighted_sq(v, g1, g2));
}

double discrete_h1(const Eigen::MatrixXd& v, const Grid1D& g1, const X2Grid& g2) {
  const Eigen::MatrixXd d1 = fd_derivative(v, g1.h(), 0, 2);
  const Eigen::MatrixXd d2 = fd_derivative(v, g2.h(), 1, 2);
  return std::sqrt(weighted_sq(v, g1, g2) + weighted_sq(d1, g1, g2) +
                   weighted_sq(d2, g1, g2));
}

double max_abs(const Eigen::MatrixXd& v) { return v.cwiseAbs().maxCoeff(); }

}  // namespace epnoz
