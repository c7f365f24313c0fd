#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <vector>

#include "epnoz/background.hpp"
#include "epnoz/linearize.hpp"

namespace epnoz {

/// Estimate constants that the theory leaves non-constructive; both are
/// configuration with reported defaults.
struct MultiplierConfig {
  double C_star = 10.0;               // Cauchy-Schwarz constant in the energy bound
  double C_flat = 10.0;               // Morrey correction multiplier
  double lambda1_star = M_PI / 8.0;   // cap of the admissible lambda range, in (0, pi/4)
};

enum class RiccatiCase { positive_discriminant, nonpositive_discriminant };

/// Extremal coefficient bounds feeding the constant-coefficient Riccati
/// equation for the weight.  a1 carries the Morrey-type delta correction.
struct RiccatiConstants {
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  double a1_raw = 0.0;     // before the C_flat * delta correction
  double delta_used = 0.0;
  double kappa1 = 0.0;     // lower bound of a22 used in a0
  double mu1 = 0.0;        // inf of h1 over the sampled range
  double lambda1_star = M_PI / 8.0;

  double discriminant() const { return a0 * a2 - a1 * a1; }
  RiccatiCase kase() const {
    return discriminant() > 0.0 ? RiccatiCase::positive_discriminant
                                : RiccatiCase::nonpositive_discriminant;
  }
};

/// Extremal bounds over the range covered by the background samples.  The
/// caller integrates the background over [0, T_max - eps0] (or the working
/// interval when T_max is infinite) before calling.
RiccatiConstants riccati_constants(const Background1D& bg, const BarCoeffs& bar,
                                   double delta1, const MultiplierConfig& cfg);

/// Closed-form positive weight solving -W' - a2 W^2 + 2 a1 W - a0 = lambda0.
struct WeightFunction {
  double lambda0 = 0.0;
  RiccatiConstants constants;
  RiccatiCase kase = RiccatiCase::positive_discriminant;
  double freq = 0.0;   // nu(lambda0) or sqrt(beta(lambda0))
  double phase = 0.0;  // additive constant in the tan/cot argument
  Grid1D grid;
  std::vector<double> W;

  double value(double x1) const;
  double derivative(double x1) const;
};

/// Selects lambda0 by bisection as the largest admissible value keeping
/// W > 0 on [0, L]; throws LengthExceedsCritical when none exists.
WeightFunction build_weight(const RiccatiConstants& rc, double L, int n1);

/// Largest admissible nozzle length: the lambda-sup of the positive-
/// discriminant closed form, or the 1/L + a1 > 0 constraint otherwise,
/// clamped by t_bound.
double critical_length(const RiccatiConstants& rc, double t_bound);

/// Pointwise verification of the coercivity conditions the weight must
/// satisfy; a failing report is a valid result.
struct PointwiseConditionReport {
  double lambda0 = 0.0;
  double min_q1_minus_q3 = 0.0;
  double min_q2_over_a22 = 0.0;
  bool pass = false;
  double C_star_used = 0.0;
  double delta_used = 0.0;
};

PointwiseConditionReport verify_pointwise_conditions(
    const WeightFunction& w, const BarCoeffs& bar, double delta, double C_star,
    const Eigen::MatrixXd* a22_tilde = nullptr,
    const Eigen::MatrixXd* d1a22_tilde = nullptr,
    const Eigen::MatrixXd* d2a12_tilde = nullptr);

/// Admissible length both by the generic construction and, for accelerating
/// flows (E0 > 0), by the relaxed bound valid up to the deceleration point.
struct AdmissibleLengthReport {
  double generic = 0.0;
  RiccatiCase generic_case = RiccatiCase::positive_discriminant;
  std::optional<double> accelerating;
  std::optional<RiccatiCase> accelerating_case;
  double t_max_bound = 0.0;   // T_max - eps0 (infinite for the constant orbit)
  std::optional<double> t_star_bound;  // T_* - eps0 when E0 > 0
};

AdmissibleLengthReport admissible_length_report(const Background1D& bg,
                                                const BarCoeffs& bar,
                                                double delta1, double eps0,
                                                const MultiplierConfig& cfg);

}  // namespace epnoz
