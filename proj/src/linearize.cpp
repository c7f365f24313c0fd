#include "epnoz/linearize.hpp"

#include <algorithm>
#include <cmath>

namespace epnoz {

namespace {

// c^2 - u^2 on the background; negative on the supersonic branch.
double speed_gap(const GasParams& gp, double u) {
  return gp.gamma * rpow(gp.m0, gp.gamma - 1.0) / rpow(u, gp.gamma - 1.0) -
         u * u;
}

double csq_bar(const GasParams& gp, double u) {
  return gp.gamma * rpow(gp.m0, gp.gamma - 1.0) / rpow(u, gp.gamma - 1.0);
}

}  // namespace

BarCoeffs bar_coeffs(const Background1D& bg) {
  const GasParams& gp = bg.gp;
  const int n = bg.grid.n1;
  BarCoeffs bar;
  bar.grid = bg.grid;
  bar.a22.resize(n);
  bar.a1.resize(n);
  bar.b1.resize(n);
  bar.b2.resize(n);
  bar.h1.resize(n);
  bar.h2.resize(n);
  bar.B.resize(n);
  bar.d1a22.resize(n);
  bar.mu1L = infinity_sentinel();
  const double g = gp.gamma;
  const double m_pow = rpow(gp.m0, g - 1.0);
  for (int i = 0; i < n; ++i) {
    const double u = bg.u[i];
    const double E = bg.E[i];
    const double c2 = csq_bar(gp, u);
    const double gap = u * u - c2;  // positive supersonic
    bar.a22[i] = 1.0 / (rpow(u, g + 1.0) / (g * m_pow) - 1.0);
    bar.a1[i] = E * (g * u * u + c2) / (gap * gap);
    bar.b1[i] = u / (c2 - u * u);
    bar.b2[i] = -(g - 1.0) * E * u / (gap * gap);
    const double hfac =
        rpow(u, g - 2.0) /
        (g * rpow(gp.m0, g - 2.0) * rpow(gp.S0, 1.0 / (g - 1.0)));
    bar.h1[i] = hfac;
    bar.h2[i] = -hfac * u;
    bar.B[i] = E * u / (c2 - u * u);
    // d/dx1 of a22 through u' = -B; a22 = 1/(u^{g+1}/(g m0^{g-1}) - 1)
    const double uprime = -bar.B[i];
    const double da22_du =
        -bar.a22[i] * bar.a22[i] * (g + 1.0) * rpow(u, g) / (g * m_pow);
    bar.d1a22[i] = da22_du * uprime;
    bar.mu1L = std::min(bar.mu1L, bar.h1[i]);
  }
  return bar;
}

BgSample bg_sample(const Background1D& bg, const BarCoeffs& bar, int i) {
  return BgSample{bg.u[i],      bg.E[i],     bg.Phi0[i], bar.a1[i], bar.b1[i],
                  bar.b2[i],    bar.h1[i],   bar.h2[i],  bar.B[i]};
}

double sonic_den_guard(const Background1D& bg) {
  double cmin = infinity_sentinel();
  for (double u : bg.u) cmin = std::min(cmin, csq_bar(bg.gp, u));
  return 1e-8 * cmin;
}

SecondOrder second_order_coeffs(double gamma, double z, const Vec2& q,
                                double tau_sonic_den) {
  const double c2 = sound_speed_sq(gamma, z, q);
  const double den = c2 - q.x1 * q.x1;
  if (std::abs(den) < tau_sonic_den)
    throw SonicDenominator("state at the hyperbolic-degeneracy boundary");
  return {-q.x1 * q.x2 / den, (q.x2 * q.x2 - c2) / den};
}

double drift_term(double gamma, double z, const Vec2& p, const Vec2& q,
                  double tau_sonic_den) {
  const double c2 = sound_speed_sq(gamma, z, q);
  const double den = c2 - q.x1 * q.x1;
  if (std::abs(den) < tau_sonic_den)
    throw SonicDenominator("state at the hyperbolic-degeneracy boundary");
  return p.dot(q) / den;
}

double rhs_f1(const GasParams& gp, const BgSample& s, const PerturbationPoint& pt,
              double tau_sonic_den) {
  const Vec2 p_full{s.E + pt.p.x1, pt.p.x2};
  const Vec2 q_full{s.u + pt.q.x1, pt.q.x2};
  const double B_full =
      drift_term(gp.gamma, s.Phi0 + pt.z, p_full, q_full, tau_sonic_den);
  return s.B - B_full + s.a1 * pt.q.x1 + s.b1 * pt.p.x1 + s.b2 * pt.z;
}

double rhs_f2(const GasParams& gp, const BgSample& s, const PerturbationPoint& pt,
              double b0, double b_val) {
  const Vec2 q_full{s.u + pt.q.x1, pt.q.x2};
  const double H_shift =
      density_law_isentropic(gp, s.Phi0 + pt.z, q_full);
  const double H_base = density_law_isentropic(gp, s.Phi0, Vec2{s.u, 0.0});
  return H_shift - H_base - s.h1 * pt.z - s.h2 * pt.q.x1 - (b_val - b0);
}

RotCoeffs rotational_coeffs(const GasParams& gp, const BgSample& s,
                            const PerturbationPoint& pt, double tau_sonic_den) {
  RotCoeffs out;
  const Vec2 vel = Vec2{s.u, 0.0} + pt.q + pt.r.perp();
  const double z_full = s.Phi0 + pt.z;
  const auto A = second_order_coeffs(gp.gamma, z_full, vel, tau_sonic_den);
  out.a12 = A.A12;
  out.a22 = A.A22;
  out.beta = sound_speed_sq(gp.gamma, z_full, vel) - vel.x1 * vel.x1;
  const double H =
      density_law(gp.gamma, gp.S0 + pt.xi, z_full - 0.5 * vel.norm2());
  out.M = vel * H;
  return out;
}

RotRhs rotational_rhs(const GasParams& gp, const BgSample& s,
                      const PerturbationPoint& pt, double b0, double b_val,
                      double tau_sonic_den) {
  RotRhs out;
  const double S_full = gp.S0 + pt.xi;
  if (!(S_full > 0.0))
    throw NonPositiveArgument("rotational forcing: entropy slot non-positive");
  const Vec2 rperp = pt.r.perp();
  const Vec2 vel = Vec2{s.u, 0.0} + pt.q + rperp;
  const Vec2 grad_Phi{s.E + pt.p.x1, pt.p.x2};
  const double z_full = s.Phi0 + pt.z;
  const double zeta_B = z_full - 0.5 * vel.norm2();
  const double c2 = sound_speed_sq(gp.gamma, z_full, vel);
  const double beta = c2 - vel.x1 * vel.x1;
  if (std::abs(beta) < tau_sonic_den)
    throw SonicDenominator("hyperbolicity slot beta too close to zero");
  if (std::abs(vel.x1) < 1e-8 * std::max(1.0, s.u))
    throw StagnationDenominator("streamwise velocity slot near stagnation");

  // f1: exact quadratic remainder of the drift slot around the background,
  // extended by the entropy-gradient and vorticity-Hessian sources.
  const double entropy_term = zeta_B / S_full * vel.dot(pt.zeta);
  const double Mquad =
      pt.M11 * vel.x1 * vel.x1 + (pt.M12 + pt.M21) * vel.x1 * vel.x2 +
      pt.M22 * vel.x2 * vel.x2;
  out.f1 = s.B - (vel.dot(grad_Phi) - entropy_term - Mquad) / beta +
           s.a1 * pt.q.x1 + s.b1 * pt.p.x1 + s.b2 * pt.z;

  // f2: density-law remainder with the entropy slot active.
  const double H_shift = density_law(gp.gamma, S_full, zeta_B);
  const double H_base =
      density_law(gp.gamma, gp.S0, s.Phi0 - 0.5 * s.u * s.u);
  out.f2 = H_shift - H_base - s.h1 * pt.z - s.h2 * pt.q.x1 - (b_val - b0);

  // f3: vorticity source, linear in the transverse entropy slope.
  out.f3 = -pt.eta * rpow(H_shift, gp.gamma - 1.0) /
           ((gp.gamma - 1.0) * vel.x1);
  return out;
}

double default_admissibility_radius(const Background1D& bg) {
  double umin = infinity_sentinel();
  for (double u : bg.u) umin = std::min(umin, u);
  return 0.1 * umin;
}

}  // namespace epnoz
