#pragma once

#include <cmath>

#include "epnoz/errors.hpp"

namespace epnoz {

struct Vec2 {
  double x1 = 0.0;
  double x2 = 0.0;

  double dot(const Vec2& o) const { return x1 * o.x1 + x2 * o.x2; }
  double norm2() const { return x1 * x1 + x2 * x2; }
  double norm() const { return std::sqrt(norm2()); }
  Vec2 operator+(const Vec2& o) const { return {x1 + o.x1, x2 + o.x2}; }
  Vec2 operator-(const Vec2& o) const { return {x1 - o.x1, x2 - o.x2}; }
  Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
  /// Clockwise perp: (r1, r2) -> (r2, -r1).  The rotational velocity part is
  /// grad(phi)^perp with this convention, so u1 = phi0' + psi_x1 + phi_x2 and
  /// curl u = -Laplace(phi).
  Vec2 perp() const { return {x2, -x1}; }
};

/// Real power via exp/log for non-integer exponents; keeps all power
/// evaluations on one code path.
inline double rpow(double base, double expo) {
  if (base <= 0.0) throw NonPositiveArgument("rpow: non-positive base");
  return std::exp(expo * std::log(base));
}

/// Constants fixing the supersonic background problem.  Validation happens
/// once at construction: gamma > 1, positive fluxes, and both b0 and rho0
/// strictly below the sonic density.
struct GasParams {
  double gamma;
  double J0;
  double S0;
  double b0;
  double rho0;
  double E0;

  // derived, cached at construction
  double rho_s;  // sonic density
  double m0;     // J0 * S0^{1/(gamma-1)}
  double u0;     // inlet velocity J0/rho0
  double B0;     // inlet Bernoulli value

  GasParams(double gamma_, double J0_, double S0_, double b0_, double rho0_,
            double E0_);
};

/// Sonic density (J0^2/(gamma S0))^{1/(gamma+1)}.
double sonic_density(double gamma, double J0, double S0);

/// Bernoulli function |u|^2/2 + gamma/(gamma-1) S rho^{gamma-1}.
double bernoulli(double gamma, double rho, double speed, double S);

/// Density law H(S, zeta) = ((gamma-1)/gamma * zeta/S)^{1/(gamma-1)}.
/// Throws NonPositiveArgument when zeta/S <= 0 (iterate left the physical
/// branch).
double density_law(double gamma, double S, double zeta);

/// Isentropic specialization H0(z, q) = H(S0, z - |q|^2/2).
double density_law_isentropic(const GasParams& gp, double z, const Vec2& q);

/// Squared sound speed (gamma-1)(z - |q|^2/2); throws when non-positive.
double sound_speed_sq(double gamma, double z, const Vec2& q);
double sound_speed(double gamma, double z, const Vec2& q);

struct FlowState {
  double rho;
  Vec2 u;
  double S;
  double Phi;
};

inline double pressure(double gamma, const FlowState& st) {
  return st.S * rpow(st.rho, gamma);
}

/// K = B - Phi, transported along streamlines and identically zero for every
/// solution this artifact produces.
inline double pseudo_bernoulli(double gamma, const FlowState& st) {
  return bernoulli(gamma, st.rho, st.u.norm(), st.S) - st.Phi;
}

}  // namespace epnoz
