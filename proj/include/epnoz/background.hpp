#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "epnoz/grid.hpp"
#include "epnoz/model.hpp"

namespace epnoz {

enum class OrbitKind { periodic, separatrix, sonic_blowup };

/// Orbit class of the 1D phase-plane problem together with the discriminant
/// d = E0^2/2 - H(rho0) that selects it.
struct OrbitClass {
  OrbitKind kind;
  double discriminant;
};

/// Sampled 1D supersonic profiles on [0, L] plus the critical abscissas.
/// t_max/t_min are +-infinity sentinels for the constant (equilibrium) orbit.
struct Background1D {
  GasParams gp;
  Grid1D grid;
  std::vector<double> rho, u, E, phi0, Phi0;
  OrbitClass orbit{OrbitKind::periodic, 0.0};
  double t_min = 0.0, t_max = 0.0;
  std::optional<double> t_star;
  double eps0 = 0.0;  // margin rho in [eps0, rho_s - eps0]
  double mu0 = 0.0;   // margin of u^2 - c^2 in [mu0, 1/mu0]
};

/// First integral of the phase-plane system, normalized to vanish at the
/// sonic density; evaluated from the exact antiderivative of its defining
/// integrand.
double hamiltonian(const GasParams& gp, double rho);
double hamiltonian_rho(const GasParams& gp, double rho);
double hamiltonian_rhorho(const GasParams& gp, double rho);

/// Smooth speed F(rho) >= 0 of the desingularized separatrix field; the
/// phase-plane equation for rho becomes rho' = -sign(E) F(rho) there, which
/// stays regular through the sonic density.
double desingularized_speed(const GasParams& gp, double rho);

OrbitClass classify_orbit(const GasParams& gp);

bool is_equilibrium(const GasParams& gp);

struct CriticalAbscissas {
  double t_min, t_max;
  std::optional<double> t_star;
};

/// Locates the critical abscissas by event detection and bisection; the
/// sonic-blowup arrival time is finished off by quadrature in the density
/// variable where the raw field degenerates.
CriticalAbscissas critical_abscissas(const GasParams& gp);

/// Full period of a periodic-class orbit (time between consecutive density
/// maxima).
double detect_period(const GasParams& gp);

Background1D integrate_background(const GasParams& gp, double L, int n1);

/// Integrate the raw phase-plane system from (rho0, E0) over [0, t_end] with
/// adaptive step-doubling RK4; returns the final (rho, E).  Exposed for
/// oracle-style cross checks.
std::pair<double, double> integrate_orbit(const GasParams& gp, double t_end,
                                          double rel_tol = 1e-10,
                                          bool allow_desingularized = true);

inline double infinity_sentinel() {
  return std::numeric_limits<double>::infinity();
}

}  // namespace epnoz
