#pragma once

#include <Eigen/Dense>
#include <vector>

#include "epnoz/linearize.hpp"
#include "epnoz/multiplier.hpp"
#include "epnoz/spectral.hpp"

namespace epnoz {

/// One frozen-coefficient linear boundary value problem: hyperbolic part for
/// psi coupled to the elliptic part for Psi, with split boundary data.
/// Coefficients and forcings are sampled on the (n1 x n2) tensor grid.
struct LinearProblem {
  const Background1D* bg = nullptr;
  const BarCoeffs* bar = nullptr;
  Eigen::MatrixXd a12, a22;  // frozen second-order coefficients
  Eigen::MatrixXd f1, f2;    // right-hand sides (before homogenization)
  CosineSeries g1;           // psi_x1 at the inlet
  CosineSeries g2;           // Psi_x1 at the inlet
  CosineSeries Psi_ex;       // Psi at the exit
  CosineSeries psi_inlet;    // psi at the inlet (zero in the core problem)
  int m = 16;
  X2Grid x2{257};
};

/// Mode-coupled two-point BVP obtained by projecting the linear pair onto
/// the cosine basis; forcings are stored already homogenized so the Psi
/// unknown carries homogeneous inlet/exit conditions.
struct ModeSystem {
  int m = 0;
  Grid1D grid;
  X2Grid x2{0};
  const BarCoeffs* bar = nullptr;
  std::vector<Eigen::MatrixXd> A12c;  // per-node <a12 eta_j', eta_k>
  std::vector<Eigen::MatrixXd> A22c;  // per-node <a22 eta_j , eta_k>
  Eigen::MatrixXd f1k, f2k;           // (m+1) x n1 homogenized forcings
  Eigen::VectorXd g1k, psi0k;         // inlet mode data
  Eigen::VectorXd g2k, Psi_exk;       // exit/inlet data for Psi_bd
};

ModeSystem assemble(const LinearProblem& p);

struct LinearSolution {
  Field2D psi;      // cosine
  Field2D Psi_hat;  // cosine, homogeneous boundary version
  Field2D Psi;      // Psi_hat plus the boundary lift
  double residual = 0.0;
};

/// Direct banded LU solve of the global second-order discretization; the
/// elliptic modes make shooting hopeless, so every mode profile is solved
/// simultaneously.  Throws SingularSystem / ResidualTooLarge.
LinearSolution solve_bvp(const ModeSystem& sys, double residual_tol = 1e-8);

/// Estimated infinity-norm condition number of the assembled operator.
double condition_estimate(const ModeSystem& sys);

/// Weighted energy identity: the direct forcing integrals against the
/// integration-by-parts decomposition J1 + J2 + J3, plus the empirical
/// stability ratio of the solution norm to the data size.
struct EnergyReport {
  double IL_direct = 0.0;
  double J1 = 0.0, J2 = 0.0, J3 = 0.0;
  double discrepancy_rel = 0.0;
  double estimate_ratio = 0.0;
  bool trivial = false;  // zero data; the ratio is reported as 0
};

EnergyReport energy_report(const LinearProblem& p, const ModeSystem& sys,
                           const LinearSolution& sol, const WeightFunction& w);

/// Poisson problem for the rotational potential: per-sine-mode two-point
/// solves with a Neumann inlet and Dirichlet exit; always invertible.
Field2D solve_poisson_phi(const Field2D& f3_sine);

}  // namespace epnoz
