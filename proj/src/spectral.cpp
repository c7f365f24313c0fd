#include "epnoz/spectral.hpp"

#include <cmath>

namespace epnoz {

namespace {
const double kInvSqrt2 = 0.7071067811865475244;

double cos_basis(int k, double x2, int deriv) {
  if (k == 0) return deriv == 0 ? kInvSqrt2 : 0.0;
  const double w = k * M_PI;
  const double arg = w * x2;
  const double scale = std::pow(w, deriv);
  switch (deriv % 4) {
    case 0: return scale * std::cos(arg);
    case 1: return -scale * std::sin(arg);
    case 2: return -scale * std::cos(arg);
    default: return scale * std::sin(arg);
  }
}

double sin_basis(int k, double x2, int deriv) {  // k >= 1
  const double w = k * M_PI / 2.0;
  const double arg = w * (x2 + 1.0);
  const double scale = std::pow(w, deriv);
  switch (deriv % 4) {
    case 0: return scale * std::sin(arg);
    case 1: return scale * std::cos(arg);
    case 2: return -scale * std::sin(arg);
    default: return -scale * std::cos(arg);
  }
}
}  // namespace

CosineSeries CosineSeries::constant(double value) {
  return CosineSeries({value * std::sqrt(2.0)});
}

double CosineSeries::eval(double x2, int deriv) const {
  double s = 0.0;
  for (int k = 0; k < modes(); ++k) s += c[k] * cos_basis(k, x2, deriv);
  return s;
}

CosineSeries CosineSeries::second_derivative() const {
  CosineSeries out(*this);
  for (int k = 0; k < modes(); ++k) out.c[k] *= -(k * M_PI) * (k * M_PI);
  return out;
}

double CosineSeries::l2_norm() const {
  double s = 0.0;
  for (double v : c) s += v * v;
  return std::sqrt(s);
}

double SineSeries::eval(double x2, int deriv) const {
  double s = 0.0;
  for (int k = 1; k <= modes(); ++k) s += d[k - 1] * sin_basis(k, x2, deriv);
  return s;
}

SineSeries SineSeries::second_derivative() const {
  SineSeries out(*this);
  for (int k = 1; k <= modes(); ++k) {
    const double w = k * M_PI / 2.0;
    out.d[k - 1] *= -w * w;
  }
  return out;
}

double SineSeries::integral_from_wall(double x2) const {
  double s = 0.0;
  for (int k = 1; k <= modes(); ++k) {
    const double w = k * M_PI / 2.0;
    s += d[k - 1] * (1.0 - std::cos(w * (x2 + 1.0))) / w;
  }
  return s;
}

double SineSeries::l2_norm() const {
  double s = 0.0;
  for (double v : d) s += v * v;
  return std::sqrt(s);
}

Eigen::MatrixXd basis_values(Basis basis, const X2Grid& grid, int m, int deriv) {
  const int cols = basis == Basis::cosine ? m + 1 : m;
  Eigen::MatrixXd E(grid.n2, cols);
  for (int l = 0; l < grid.n2; ++l) {
    const double x2 = grid.x(l);
    for (int j = 0; j < cols; ++j)
      E(l, j) = basis == Basis::cosine ? cos_basis(j, x2, deriv)
                                       : sin_basis(j + 1, x2, deriv);
  }
  return E;
}

namespace {
void check_band(int m, const X2Grid& grid) {
  if (m > grid.n2 / 4)
    throw TruncationTooHigh("truncation exceeds quadrature-resolvable band");
}
}  // namespace

CosineSeries project_cosine(const std::vector<double>& samples,
                            const X2Grid& grid, int m) {
  if (static_cast<int>(samples.size()) != grid.n2)
    throw GridMismatch("project: sample count != x2 grid size");
  check_band(m, grid);
  const auto w = simpson_weights(grid.n2, grid.h());
  CosineSeries out(std::vector<double>(m + 1, 0.0));
  for (int k = 0; k <= m; ++k) {
    double s = 0.0;
    for (int l = 0; l < grid.n2; ++l)
      s += w[l] * samples[l] * cos_basis(k, grid.x(l), 0);
    out.c[k] = s;
  }
  return out;
}

SineSeries project_sine(const std::vector<double>& samples, const X2Grid& grid,
                        int m) {
  if (static_cast<int>(samples.size()) != grid.n2)
    throw GridMismatch("project: sample count != x2 grid size");
  check_band(m, grid);
  const auto w = simpson_weights(grid.n2, grid.h());
  SineSeries out(std::vector<double>(m, 0.0));
  for (int k = 1; k <= m; ++k) {
    double s = 0.0;
    for (int l = 0; l < grid.n2; ++l)
      s += w[l] * samples[l] * sin_basis(k, grid.x(l), 0);
    out.d[k - 1] = s;
  }
  return out;
}

std::vector<double> reconstruct(const CosineSeries& s, const X2Grid& grid,
                                int deriv) {
  std::vector<double> out(grid.n2);
  for (int l = 0; l < grid.n2; ++l) out[l] = s.eval(grid.x(l), deriv);
  return out;
}

std::vector<double> reconstruct(const SineSeries& s, const X2Grid& grid,
                                int deriv) {
  std::vector<double> out(grid.n2);
  for (int l = 0; l < grid.n2; ++l) out[l] = s.eval(grid.x(l), deriv);
  return out;
}

Field2D Field2D::zero(Basis basis, const Grid1D& grid, int mode_count) {
  Field2D f;
  f.basis = basis;
  f.grid = grid;
  f.modes.assign(mode_count, std::vector<double>(grid.n1, 0.0));
  return f;
}

bool Field2D::same_layout(const Field2D& o) const {
  return basis == o.basis && grid.n1 == o.grid.n1 && grid.L == o.grid.L &&
         mode_count() == o.mode_count();
}

Eigen::MatrixXd Field2D::values(const X2Grid& g2, int deriv) const {
  const int mc = mode_count();
  Eigen::MatrixXd P(grid.n1, mc);
  for (int j = 0; j < mc; ++j)
    for (int i = 0; i < grid.n1; ++i) P(i, j) = modes[j][i];
  Eigen::MatrixXd E(g2.n2, mc);
  for (int l = 0; l < g2.n2; ++l)
    for (int j = 0; j < mc; ++j)
      E(l, j) = basis == Basis::cosine ? cos_basis(j, g2.x(l), deriv)
                                       : sin_basis(j + 1, g2.x(l), deriv);
  return P * E.transpose();
}

Field2D Field2D::dx1(int order) const {
  Field2D out(*this);
  for (auto& prof : out.modes) prof = fd_derivative(prof, grid.h(), order);
  return out;
}

CosineSeries Field2D::cosine_at(int i) const {
  if (basis != Basis::cosine) throw GridMismatch("cosine_at on a sine field");
  std::vector<double> c(mode_count());
  for (int j = 0; j < mode_count(); ++j) c[j] = modes[j][i];
  return CosineSeries(std::move(c));
}

SineSeries Field2D::sine_at(int i) const {
  if (basis != Basis::sine) throw GridMismatch("sine_at on a cosine field");
  std::vector<double> d(mode_count());
  for (int j = 0; j < mode_count(); ++j) d[j] = modes[j][i];
  return SineSeries(std::move(d));
}

Field2D operator-(const Field2D& a, const Field2D& b) {
  if (!a.same_layout(b)) throw GridMismatch("field subtraction layout mismatch");
  Field2D out(a);
  for (int j = 0; j < a.mode_count(); ++j)
    for (int i = 0; i < a.grid.n1; ++i) out.modes[j][i] -= b.modes[j][i];
  return out;
}

double discrete_h1(const Field2D& f, const X2Grid& g2) {
  return discrete_h1(f.values(g2), f.grid, g2);
}

CompatReport check_compatibility(
    const std::vector<std::pair<std::string, std::vector<double>>>& odd_data,
    const std::vector<std::pair<std::string, std::vector<double>>>& even_data,
    const X2Grid& grid, double tol) {
  CompatReport rep;
  const double h = grid.h();
  auto wall_deriv = [&](const std::vector<double>& f, int order) {
    // derivative of the requested order at both walls, one-sided 4th order
    std::vector<double> cur = f;
    for (int o = 0; o < order; ++o) cur = fd_derivative(cur, h, 4);
    return std::max(std::abs(cur.front()), std::abs(cur.back()));
  };
  auto push = [&](const std::string& name, int k, double measured) {
    const bool ok = measured < tol;
    rep.items.push_back({name, k, measured, ok});
    if (!ok) rep.all_pass = false;
  };
  for (const auto& [name, samples] : odd_data) {
    push(name, 1, wall_deriv(samples, 1));
    push(name, 3, wall_deriv(samples, 3));
  }
  for (const auto& [name, samples] : even_data) {
    push(name, 0,
         std::max(std::abs(samples.front()), std::abs(samples.back())));
    push(name, 2, wall_deriv(samples, 2));
  }
  return rep;
}

CompatReport check_compatibility(
    const std::vector<std::pair<std::string, CosineSeries>>& odd_series,
    const std::vector<std::pair<std::string, SineSeries>>& even_series,
    double tol) {
  CompatReport rep;
  auto push = [&](const std::string& name, int k, double measured) {
    const bool ok = measured < tol;
    rep.items.push_back({name, k, measured, ok});
    if (!ok) rep.all_pass = false;
  };
  for (const auto& [name, s] : odd_series)
    for (int k : {1, 3})
      push(name, k,
           std::max(std::abs(s.eval(-1.0, k)), std::abs(s.eval(1.0, k))));
  for (const auto& [name, s] : even_series)
    for (int k : {0, 2})
      push(name, k,
           std::max(std::abs(s.eval(-1.0, k)), std::abs(s.eval(1.0, k))));
  return rep;
}

}  // namespace epnoz
