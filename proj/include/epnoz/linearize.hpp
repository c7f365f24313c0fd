#pragma once

#include <vector>

#include "epnoz/background.hpp"
#include "epnoz/grid.hpp"
#include "epnoz/model.hpp"

namespace epnoz {

/// x1-only coefficients of the linearized pair, sampled on the background
/// grid.  a22/a1/b1/b2 come from the hyperbolic-part linearization, h1/h2
/// from the density-law linearization, B is the background drift term.
struct BarCoeffs {
  Grid1D grid;
  std::vector<double> a22, a1, b1, b2, h1, h2, B, d1a22;
  double mu1L = 0.0;  // inf of h1 on the stored range
};

BarCoeffs bar_coeffs(const Background1D& bg);

/// Point values of the background entering the coefficient formulas.
struct BgSample {
  double u, E, Phi0;
  double a1, b1, b2, h1, h2, B;
};

BgSample bg_sample(const Background1D& bg, const BarCoeffs& bar, int i);

/// Second-order coefficients of the quasilinear hyperbolic operator at state
/// (z, q): A12 = -q1 q2 / (c^2 - q1^2), A22 = (q2^2 - c^2)/(c^2 - q1^2).
/// Throws SonicDenominator when the state sits at the hyperbolic-degeneracy
/// boundary.
struct SecondOrder {
  double A12, A22;
};
SecondOrder second_order_coeffs(double gamma, double z, const Vec2& q,
                                double tau_sonic_den);

/// Drift slot B(z, p, q) = p.q / (c^2 - q1^2).
double drift_term(double gamma, double z, const Vec2& p, const Vec2& q,
                  double tau_sonic_den);

/// Perturbation slots: z ~ Psi, p ~ grad Psi, q ~ grad psi, r ~ grad phi,
/// xi ~ Y, zeta ~ grad Y, eta ~ Y_x2, M ~ grad(grad^perp phi).
struct PerturbationPoint {
  double z = 0.0;
  Vec2 p{}, q{}, r{};
  double xi = 0.0;
  Vec2 zeta{};
  double eta = 0.0;
  double M11 = 0.0, M12 = 0.0, M21 = 0.0, M22 = 0.0;
};

/// Guard scale for hyperbolic degeneracy: 1e-8 times a reference sound speed
/// squared.
double sonic_den_guard(const Background1D& bg);

/// Quadratic remainder forcing of the hyperbolic equation (irrotational):
/// the bar-linearization of the drift term minus its full value at the
/// shifted state.
double rhs_f1(const GasParams& gp, const BgSample& s, const PerturbationPoint& pt,
              double tau_sonic_den);

/// Remainder forcing of the potential equation; b_val is the ion background
/// at the evaluation point.
double rhs_f2(const GasParams& gp, const BgSample& s, const PerturbationPoint& pt,
              double b0, double b_val);

/// Rotational extensions: coefficients at the shifted state with velocity
/// slot q + r^perp, the momentum field M, and the hyperbolicity function
/// beta = c^2 - u1^2 < 0.
struct RotCoeffs {
  double a12, a22;
  double beta;
  Vec2 M;
};
RotCoeffs rotational_coeffs(const GasParams& gp, const BgSample& s,
                            const PerturbationPoint& pt, double tau_sonic_den);

struct RotRhs {
  double f1, f2, f3;
};
RotRhs rotational_rhs(const GasParams& gp, const BgSample& s,
                      const PerturbationPoint& pt, double b0, double b_val,
                      double tau_sonic_den);

/// Default admissibility radius when the caller supplies none: a tenth of
/// the smallest background velocity on the stored range.
double default_admissibility_radius(const Background1D& bg);

}  // namespace epnoz
