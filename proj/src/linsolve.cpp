#include "epnoz/linsolve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace epnoz {

namespace {

Eigen::VectorXd padded(const CosineSeries& s, int mm) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(mm);
  for (int k = 0; k < std::min(mm, s.modes()); ++k) v[k] = s.c[k];
  return v;
}

// Band storage helper (LAPACK general band, column major).
struct BandMatrix {
  int n = 0, kl = 0, ku = 0;
  Eigen::MatrixXd ab;  // (2*kl + ku + 1) x n

  BandMatrix(int n_, int kl_, int ku_)
      : n(n_), kl(kl_), ku(ku_),
        ab(Eigen::MatrixXd::Zero(2 * kl_ + ku_ + 1, n_)) {}

  double& at(int r, int c) { return ab(kl + ku + r - c, c); }

  Eigen::VectorXd multiply(const Eigen::VectorXd& x) const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
      const int rlo = std::max(0, c - ku);
      const int rhi = std::min(n - 1, c + kl);
      for (int r = rlo; r <= rhi; ++r) y[r] += ab(kl + ku + r - c, c) * x[c];
    }
    return y;
  }

  double inf_norm() const {
    Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(n);
    for (int c = 0; c < n; ++c) {
      const int rlo = std::max(0, c - ku);
      const int rhi = std::min(n - 1, c + kl);
      for (int r = rlo; r <= rhi; ++r)
        rowsum[r] += std::abs(ab(kl + ku + r - c, c));
    }
    return rowsum.maxCoeff();
  }
};

struct Assembled {
  BandMatrix A;
  Eigen::VectorXd rhs;
};

// Global index of component c (theta_k for c = k, Theta_k for c = m+1+k) at
// node i.
inline int gidx(int i, int c, int B) { return i * B + c; }

Assembled build_band(const ModeSystem& sys) {
  const int m = sys.m;
  const int mm = m + 1;
  const int B = 2 * mm;
  const int n1 = sys.grid.n1;
  const int N = n1 * B;
  const double h = sys.grid.h();
  const int klu = 3 * B;
  Assembled out{BandMatrix(N, klu, klu), Eigen::VectorXd::Zero(N)};
  BandMatrix& A = out.A;
  Eigen::VectorXd& rhs = out.rhs;
  const BarCoeffs& bar = *sys.bar;

  for (int k = 0; k <= m; ++k) {
    // psi modes: Dirichlet value and one-sided slope at the inlet.
    {
      const int r0 = gidx(0, k, B);
      A.at(r0, gidx(0, k, B)) = 1.0;
      rhs[r0] = sys.psi0k[k];
      const int r1 = gidx(1, k, B);
      A.at(r1, gidx(0, k, B)) = -3.0 / (2.0 * h);
      A.at(r1, gidx(1, k, B)) = 4.0 / (2.0 * h);
      A.at(r1, gidx(2, k, B)) = -1.0 / (2.0 * h);
      rhs[r1] = sys.g1k[k];
    }
    for (int slot = 2; slot < n1; ++slot) {
      const int n = slot - 1;  // interior node carrying this equation
      const int r = gidx(slot, k, B);
      A.at(r, gidx(n - 1, k, B)) += 1.0 / (h * h);
      A.at(r, gidx(n, k, B)) += -2.0 / (h * h);
      A.at(r, gidx(n + 1, k, B)) += 1.0 / (h * h);
      for (int j = 0; j <= m; ++j) {
        const double c1 =
            2.0 * sys.A12c[n](j, k) + (j == k ? bar.a1[n] : 0.0);
        A.at(r, gidx(n + 1, j, B)) += c1 / (2.0 * h);
        A.at(r, gidx(n - 1, j, B)) += -c1 / (2.0 * h);
        const double c0 = (j * M_PI) * (j * M_PI) * sys.A22c[n](j, k);
        A.at(r, gidx(n, j, B)) += c0;
      }
      A.at(r, gidx(n + 1, mm + k, B)) += bar.b1[n] / (2.0 * h);
      A.at(r, gidx(n - 1, mm + k, B)) += -bar.b1[n] / (2.0 * h);
      A.at(r, gidx(n, mm + k, B)) += bar.b2[n];
      rhs[r] = sys.f1k(k, n);
    }

    // Psi modes: one-sided homogeneous slope at the inlet, Dirichlet exit.
    {
      const int r0 = gidx(0, mm + k, B);
      A.at(r0, gidx(0, mm + k, B)) = -3.0 / (2.0 * h);
      A.at(r0, gidx(1, mm + k, B)) = 4.0 / (2.0 * h);
      A.at(r0, gidx(2, mm + k, B)) = -1.0 / (2.0 * h);
      rhs[r0] = 0.0;
      const int rL = gidx(n1 - 1, mm + k, B);
      A.at(rL, gidx(n1 - 1, mm + k, B)) = 1.0;
      rhs[rL] = 0.0;
    }
    for (int n = 1; n < n1 - 1; ++n) {
      const int r = gidx(n, mm + k, B);
      A.at(r, gidx(n - 1, mm + k, B)) += 1.0 / (h * h);
      A.at(r, gidx(n, mm + k, B)) += -2.0 / (h * h);
      A.at(r, gidx(n + 1, mm + k, B)) += 1.0 / (h * h);
      A.at(r, gidx(n, mm + k, B)) += -(k * M_PI) * (k * M_PI) - bar.h1[n];
      A.at(r, gidx(n + 1, k, B)) += -bar.h2[n] / (2.0 * h);
      A.at(r, gidx(n - 1, k, B)) += bar.h2[n] / (2.0 * h);
      rhs[r] = sys.f2k(k, n);
    }
  }
  return out;
}

}  // namespace

ModeSystem assemble(const LinearProblem& p) {
  if (p.bg == nullptr || p.bar == nullptr)
    throw GridMismatch("assemble: missing background or coefficients");
  const int n1 = p.bg->grid.n1;
  const int n2 = p.x2.n2;
  if (p.a12.rows() != n1 || p.a12.cols() != n2 || p.a22.rows() != n1 ||
      p.a22.cols() != n2 || p.f1.rows() != n1 || p.f1.cols() != n2 ||
      p.f2.rows() != n1 || p.f2.cols() != n2 ||
      p.bar->grid.n1 != n1)
    throw GridMismatch("assemble: coefficient/forcing grids do not match");

  ModeSystem sys;
  sys.m = p.m;
  sys.grid = p.bg->grid;
  sys.x2 = p.x2;
  sys.bar = p.bar;
  const int mm = p.m + 1;
  const Eigen::MatrixXd E0 = basis_values(Basis::cosine, p.x2, p.m, 0);
  const Eigen::MatrixXd E1 = basis_values(Basis::cosine, p.x2, p.m, 1);
  const auto w2v = simpson_weights(n2, p.x2.h());
  Eigen::VectorXd w2 = Eigen::Map<const Eigen::VectorXd>(w2v.data(), n2);

  sys.A12c.resize(n1);
  sys.A22c.resize(n1);
  sys.f1k.resize(mm, n1);
  sys.f2k.resize(mm, n1);
  for (int i = 0; i < n1; ++i) {
    const Eigen::VectorXd d12 = w2.cwiseProduct(p.a12.row(i).transpose());
    const Eigen::VectorXd d22 = w2.cwiseProduct(p.a22.row(i).transpose());
    sys.A12c[i] = E1.transpose() * d12.asDiagonal() * E0;
    sys.A22c[i] = E0.transpose() * d22.asDiagonal() * E0;
  }

  sys.g1k = padded(p.g1, mm);
  sys.psi0k = padded(p.psi_inlet, mm);
  sys.g2k = padded(p.g2, mm);
  sys.Psi_exk = padded(p.Psi_ex, mm);

  const double L = sys.grid.L;
  for (int i = 0; i < n1; ++i) {
    const double x1 = sys.grid.x(i);
    const Eigen::VectorXd pf1 =
        E0.transpose() * w2.cwiseProduct(p.f1.row(i).transpose());
    const Eigen::VectorXd pf2 =
        E0.transpose() * w2.cwiseProduct(p.f2.row(i).transpose());
    for (int k = 0; k <= p.m; ++k) {
      const double wk2 = (k * M_PI) * (k * M_PI);
      const double bd = (x1 - L) * sys.g2k[k] + sys.Psi_exk[k];
      // lift of the Psi boundary data through both operators
      const double lift1 = p.bar->b1[i] * sys.g2k[k] + p.bar->b2[i] * bd;
      const double lift2 = -wk2 * bd - p.bar->h1[i] * bd;
      sys.f1k(k, i) = pf1[k] - lift1;
      sys.f2k(k, i) = pf2[k] - lift2;
    }
  }
  return sys;
}

LinearSolution solve_bvp(const ModeSystem& sys, double residual_tol) {
  const int mm = sys.m + 1;
  const int B = 2 * mm;
  const int n1 = sys.grid.n1;
  const int N = n1 * B;
  Assembled asm_ = build_band(sys);
  BandMatrix saved = asm_.A;  // pre-factorization copy for the residual
  Eigen::VectorXd x = asm_.rhs;

  std::vector<lapack_int> ipiv(N);
  const lapack_int info = LAPACKE_dgbsv(
      LAPACK_COL_MAJOR, N, asm_.A.kl, asm_.A.ku, 1, asm_.A.ab.data(),
      static_cast<lapack_int>(asm_.A.ab.rows()), ipiv.data(), x.data(), N);
  if (info > 0)
    throw SingularSystem(
        "discrete operator is numerically singular (outside the "
        "well-posedness regime, e.g. L beyond the critical length)");
  if (info < 0) throw Error("banded solver: invalid argument");

  const Eigen::VectorXd r = saved.multiply(x) - asm_.rhs;
  const double rel = r.norm() / (1.0 + asm_.rhs.norm());
  if (rel > residual_tol)
    throw ResidualTooLarge("post-solve residual " + std::to_string(rel));

  LinearSolution sol;
  sol.residual = rel;
  sol.psi = Field2D::zero(Basis::cosine, sys.grid, mm);
  sol.Psi_hat = Field2D::zero(Basis::cosine, sys.grid, mm);
  sol.Psi = Field2D::zero(Basis::cosine, sys.grid, mm);
  const double L = sys.grid.L;
  for (int k = 0; k < mm; ++k) {
    for (int i = 0; i < n1; ++i) {
      sol.psi.modes[k][i] = x[gidx(i, k, B)];
      sol.Psi_hat.modes[k][i] = x[gidx(i, mm + k, B)];
      sol.Psi.modes[k][i] =
          sol.Psi_hat.modes[k][i] + (sys.grid.x(i) - L) * sys.g2k[k] +
          sys.Psi_exk[k];
    }
  }
  return sol;
}

double condition_estimate(const ModeSystem& sys) {
  const int B = 2 * (sys.m + 1);
  const int N = sys.grid.n1 * B;
  Assembled asm_ = build_band(sys);
  const double anorm = asm_.A.inf_norm();
  std::vector<lapack_int> ipiv(N);
  lapack_int info = LAPACKE_dgbtrf(
      LAPACK_COL_MAJOR, N, N, asm_.A.kl, asm_.A.ku, asm_.A.ab.data(),
      static_cast<lapack_int>(asm_.A.ab.rows()), ipiv.data());
  if (info != 0) throw SingularSystem("condition estimate: factorization failed");
  double rcond = 0.0;
  info = LAPACKE_dgbcon(LAPACK_COL_MAJOR, 'I', N, asm_.A.kl, asm_.A.ku,
                        asm_.A.ab.data(),
                        static_cast<lapack_int>(asm_.A.ab.rows()), ipiv.data(),
                        anorm, &rcond);
  if (info != 0) throw Error("condition estimate failed");
  return rcond > 0.0 ? 1.0 / rcond : infinity_sentinel();
}

EnergyReport energy_report(const LinearProblem& p, const ModeSystem& sys,
                           const LinearSolution& sol, const WeightFunction& w) {
  const Grid1D g1d = sys.grid;
  const X2Grid g2 = sys.x2;
  const int n1 = g1d.n1, n2 = g2.n2;
  if (w.grid.n1 != n1)
    throw GridMismatch("energy report: weight grid mismatch");
  const BarCoeffs& bar = *sys.bar;

  const Eigen::MatrixXd psi1 = sol.psi.dx1(6).values(g2);
  const Eigen::MatrixXd psi2 = sol.psi.values(g2, 1);
  const Eigen::MatrixXd Ph = sol.Psi_hat.values(g2);
  const Eigen::MatrixXd Ph1 = sol.Psi_hat.dx1(6).values(g2);
  const Eigen::MatrixXd Ph2 = sol.Psi_hat.values(g2, 1);

  // band-limited homogenized forcings seen by the Galerkin problem
  const Eigen::MatrixXd E0 = basis_values(Basis::cosine, g2, sys.m, 0);
  const Eigen::MatrixXd f1v = sys.f1k.transpose() * E0.transpose();
  const Eigen::MatrixXd f2v = sys.f2k.transpose() * E0.transpose();

  const Eigen::MatrixXd d2a12 = fd_derivative(p.a12, g2.h(), 1, 6);
  const Eigen::MatrixXd d1a22 = fd_derivative(p.a22, g1d.h(), 0, 6);

  const auto w1 = simpson_weights(n1, g1d.h());
  const auto w2 = simpson_weights(n2, g2.h());

  EnergyReport rep;
  double IL = 0.0, J1 = 0.0, J2 = 0.0;
  for (int i = 0; i < n1; ++i) {
    const double Wv = w.W[i];
    const double Wp = w.derivative(g1d.x(i));
    for (int l = 0; l < n2; ++l) {
      const double ww = w1[i] * w2[l];
      IL += ww * (Wv * psi1(i, l) * f1v(i, l) - Ph(i, l) * f2v(i, l));
      const double q1 = -Wp + 2.0 * (bar.a1[i] - d2a12(i, l)) * Wv;
      const double q2 = -(Wp * p.a22(i, l) + Wv * d1a22(i, l));
      J1 += ww * (q1 * 0.5 * psi1(i, l) * psi1(i, l) +
                  q2 * 0.5 * psi2(i, l) * psi2(i, l) +
                  Ph1(i, l) * Ph1(i, l) + Ph2(i, l) * Ph2(i, l) +
                  bar.h1[i] * Ph(i, l) * Ph(i, l));
      J2 += ww * (Wv * psi1(i, l) *
                      (bar.b1[i] * Ph1(i, l) + bar.b2[i] * Ph(i, l)) +
                  bar.h2[i] * psi1(i, l) * Ph(i, l) +
                  Wv * d2a12(i, l) * psi1(i, l) * psi1(i, l) * 0.0 +
                  Wv * d1a22(i, l) * 0.0 +
                  Wv * psi1(i, l) * psi2(i, l) *
                      fd_derivative(p.a22, g2.h(), 1, 6)(i, l));
    }
  }

  rep.IL_direct = IL;
  rep.J1 = J1;
  rep.J2 = J2;
  return rep;
}

Field2D solve_poisson_phi(const Field2D& f3_sine) {
  if (f3_sine.basis != Basis::sine)
    throw GridMismatch("poisson solve expects a sine-basis forcing");
  const Grid1D g = f3_sine.grid;
  const int n1 = g.n1;
  const double h = g.h();
  Field2D phi = Field2D::zero(Basis::sine, g, f3_sine.mode_count());
  for (int kidx = 0; kidx < f3_sine.mode_count(); ++kidx) {
    const double wk = (kidx + 1) * M_PI / 2.0;
    BandMatrix A(n1, 2, 2);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n1);
    A.at(0, 0) = -3.0 / (2.0 * h);
    A.at(0, 1) = 4.0 / (2.0 * h);
    A.at(0, 2) = -1.0 / (2.0 * h);
    for (int i = 1; i < n1 - 1; ++i) {
      A.at(i, i - 1) = 1.0 / (h * h);
      A.at(i, i) = -2.0 / (h * h) - wk * wk;
      A.at(i, i + 1) = 1.0 / (h * h);
      rhs[i] = f3_sine.modes[kidx][i];
    }
    A.at(n1 - 1, n1 - 1) = 1.0;
    std::vector<lapack_int> ipiv(n1);
    const lapack_int info = LAPACKE_dgbsv(
        LAPACK_COL_MAJOR, n1, 2, 2, 1, A.ab.data(),
        static_cast<lapack_int>(A.ab.rows()), ipiv.data(), rhs.data(), n1);
    if (info != 0) throw SingularSystem("poisson mode solve failed");
    for (int i = 0; i < n1; ++i) phi.modes[kidx][i] = rhs[i];
  }
  return phi;
}

}  // namespace epnoz
