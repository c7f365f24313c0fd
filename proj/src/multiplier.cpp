#include "epnoz/multiplier.hpp"

#include <algorithm>
#include <cmath>

namespace epnoz {

namespace {

// Largest length admitted by the positive-discriminant closed form at a
// given lambda; sign_a1 = -1 uses -arctan(|a1|/..) (generic), +1 uses
// +arctan(a1/..) (accelerating bound with a1 > 0).
double case1_length(double a0, double a1, double a2, double lambda,
                    int sign_a1) {
  const double disc = a0 * a2 - a1 * a1;
  const double nu = std::sqrt((disc / a2 + lambda) / a2);
  const double at = std::atan(std::abs(a1) / (a2 * nu));
  return (M_PI / 2.0 - lambda + (sign_a1 > 0 ? at : -at)) / (a2 * nu);
}

// sup over lambda in (0, lambda1_star] by scan plus golden-section refine.
double case1_sup(double a0, double a1, double a2, double lambda1_star,
                 int sign_a1) {
  const int scan = 256;
  double best = -infinity_sentinel();
  double best_l = lambda1_star;
  for (int i = 1; i <= scan; ++i) {
    const double l = lambda1_star * i / scan;
    const double v = case1_length(a0, a1, a2, l, sign_a1);
    if (v > best) {
      best = v;
      best_l = l;
    }
  }
  double lo = std::max(lambda1_star / scan / 2.0, best_l - lambda1_star / scan);
  double hi = std::min(lambda1_star, best_l + lambda1_star / scan);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
  double f1 = case1_length(a0, a1, a2, x1, sign_a1);
  double f2 = case1_length(a0, a1, a2, x2, sign_a1);
  while (hi - lo > 1e-8 * lambda1_star) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = case1_length(a0, a1, a2, x2, sign_a1);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = case1_length(a0, a1, a2, x1, sign_a1);
    }
  }
  return std::max(best, std::max(f1, f2));
}

struct RangeExtrema {
  double a0, a2, a1_min;
};

// Extremal coefficient bounds over grid indices [0, i_end].
RangeExtrema extrema_over(const BarCoeffs& bar, int i_end, double delta1,
                          double kappa1, double mu1, double C_star) {
  RangeExtrema out{0.0, 0.0, infinity_sentinel()};
  double h2max = 0.0, qmax = 0.0;
  for (int i = 0; i <= i_end; ++i) {
    h2max = std::max(h2max, 2.0 * bar.h2[i] * bar.h2[i] / mu1);
    qmax = std::max(qmax, 2.0 * (bar.b1[i] * bar.b1[i] +
                                 bar.b2[i] * bar.b2[i] / mu1 + delta1));
    const double slope = -bar.d1a22[i] / (2.0 * bar.a22[i]);
    out.a1_min = std::min({out.a1_min, bar.a1[i], slope});
  }
  out.a0 = 2.0 * C_star * delta1 / kappa1 + h2max;
  out.a2 = qmax;
  return out;
}

}  // namespace

RiccatiConstants riccati_constants(const Background1D& bg, const BarCoeffs& bar,
                                   double delta1, const MultiplierConfig& cfg) {
  RiccatiConstants rc;
  rc.delta_used = delta1;
  rc.lambda1_star = cfg.lambda1_star;
  rc.mu1 = bar.mu1L;
  rc.kappa1 = *std::min_element(bar.a22.begin(), bar.a22.end());
  const auto ex =
      extrema_over(bar, bg.grid.n1 - 1, delta1, rc.kappa1, rc.mu1, cfg.C_star);
  rc.a0 = ex.a0;
  rc.a2 = ex.a2;
  rc.a1_raw = ex.a1_min;
  rc.a1 = ex.a1_min - cfg.C_flat * delta1;
  return rc;
}

double WeightFunction::value(double x1) const {
  if (kase == RiccatiCase::positive_discriminant)
    return freq * std::tan(phase - constants.a2 * freq * x1) +
           constants.a1 / constants.a2;
  return freq / std::tan(phase + constants.a2 * freq * x1) +
         constants.a1 / constants.a2;
}

double WeightFunction::derivative(double x1) const {
  const double a2 = constants.a2;
  if (kase == RiccatiCase::positive_discriminant) {
    const double c = std::cos(phase - a2 * freq * x1);
    return a2 * freq * freq / (c * c) * -1.0;
  }
  const double s = std::sin(phase + a2 * freq * x1);
  return -a2 * freq * freq / (s * s);
}

namespace {

// Positivity of the candidate weight over [0, L], requiring the tan/cot
// argument to stay on one monotone branch.
bool weight_admissible(const RiccatiConstants& rc, RiccatiCase kase,
                       double lambda, double L, int n_probe) {
  WeightFunction w;
  w.constants = rc;
  w.kase = kase;
  w.lambda0 = lambda;
  if (kase == RiccatiCase::positive_discriminant) {
    w.freq = std::sqrt((rc.discriminant() / rc.a2 + lambda) / rc.a2);
    w.phase = M_PI / 2.0 - lambda;
    if (w.phase - rc.a2 * w.freq * L <= -M_PI / 2.0) return false;
  } else {
    const double a_star = -rc.discriminant() / rc.a2;
    if (!(lambda > a_star)) return false;
    const double beta = (lambda - a_star) / rc.a2;
    w.freq = std::sqrt(beta);
    w.phase = beta;
    if (w.phase + rc.a2 * w.freq * L >= M_PI) return false;
  }
  for (int i = 0; i <= n_probe; ++i) {
    if (!(w.value(L * i / n_probe) > 0.0)) return false;
  }
  return true;
}

}  // namespace

WeightFunction build_weight(const RiccatiConstants& rc, double L, int n1) {
  if (!(rc.a0 > 0.0) || !(rc.a2 > 0.0))
    throw ValidationError("Riccati constants must have a0, a2 > 0");
  const RiccatiCase kase = rc.kase();
  const int n_probe = std::max(n1 - 1, 512);
  auto admissible = [&](double l) {
    return weight_admissible(rc, kase, l, L, n_probe);
  };

  double lambda;
  if (kase == RiccatiCase::positive_discriminant) {
    if (admissible(rc.lambda1_star)) {
      lambda = rc.lambda1_star;
    } else {
      double ok = 0.0, probe = rc.lambda1_star;
      for (int i = 0; i < 60 && ok == 0.0; ++i) {
        probe *= 0.5;
        if (admissible(probe)) ok = probe;
      }
      if (ok == 0.0)
        throw LengthExceedsCritical(
            "no admissible lambda: L exceeds the critical length of the "
            "multiplier construction");
      double bad = 2.0 * ok;
      while (bad - ok > 1e-10 * rc.lambda1_star) {
        const double mid = 0.5 * (ok + bad);
        if (admissible(mid))
          ok = mid;
        else
          bad = mid;
      }
      lambda = ok;
    }
  } else {
    const double a_star = -rc.discriminant() / rc.a2;
    const double scale = std::max(a_star, 1.0);
    double ok = a_star + 1e-12 * scale;
    if (!admissible(ok))
      throw LengthExceedsCritical(
          "no admissible lambda: 1/L + a1 must be positive for this length");
    double bad = ok + scale;
    while (admissible(bad)) {
      ok = bad;
      bad += scale;
    }
    while (bad - ok > 1e-10 * scale) {
      const double mid = 0.5 * (ok + bad);
      if (admissible(mid))
        ok = mid;
      else
        bad = mid;
    }
    lambda = ok;
  }

  WeightFunction w;
  w.constants = rc;
  w.kase = kase;
  w.lambda0 = lambda;
  if (kase == RiccatiCase::positive_discriminant) {
    w.freq = std::sqrt((rc.discriminant() / rc.a2 + lambda) / rc.a2);
    w.phase = M_PI / 2.0 - lambda;
  } else {
    const double a_star = -rc.discriminant() / rc.a2;
    const double beta = (lambda - a_star) / rc.a2;
    w.freq = std::sqrt(beta);
    w.phase = beta;
  }
  w.grid = Grid1D{L, n1};
  w.W.resize(n1);
  for (int i = 0; i < n1; ++i) w.W[i] = w.value(w.grid.x(i));
  return w;
}

double critical_length(const RiccatiConstants& rc, double t_bound) {
  if (rc.kase() == RiccatiCase::positive_discriminant) {
    const double sup = case1_sup(rc.a0, rc.a1, rc.a2, rc.lambda1_star, -1);
    return std::min(t_bound, sup);
  }
  if (rc.a1 < 0.0) return std::min(t_bound, -1.0 / rc.a1);
  return t_bound;
}

PointwiseConditionReport verify_pointwise_conditions(
    const WeightFunction& w, const BarCoeffs& bar, double delta, double C_star,
    const Eigen::MatrixXd* a22_tilde, const Eigen::MatrixXd* d1a22_tilde,
    const Eigen::MatrixXd* d2a12_tilde) {
  if (bar.grid.n1 != w.grid.n1)
    throw GridMismatch("weight and coefficients sampled on different grids");
  PointwiseConditionReport rep;
  rep.lambda0 = w.lambda0;
  rep.C_star_used = C_star;
  rep.delta_used = delta;
  double min_q13 = infinity_sentinel();
  double min_q2 = infinity_sentinel();
  const int n1 = bar.grid.n1;
  const int n2 = a22_tilde ? static_cast<int>(a22_tilde->cols()) : 1;
  for (int i = 0; i < n1; ++i) {
    const double x1 = w.grid.x(i);
    const double Wv = w.W[i];
    const double Wp = w.derivative(x1);
    for (int l = 0; l < n2; ++l) {
      const double a22 = a22_tilde ? (*a22_tilde)(i, l) : bar.a22[i];
      const double d1a22 = d1a22_tilde ? (*d1a22_tilde)(i, l) : bar.d1a22[i];
      const double d2a12 = d2a12_tilde ? (*d2a12_tilde)(i, l) : 0.0;
      const double q1 = -Wp + 2.0 * (bar.a1[i] - d2a12) * Wv;
      const double q3 =
          2.0 * ((bar.b1[i] * bar.b1[i] + bar.b2[i] * bar.b2[i] / bar.mu1L +
                  delta) *
                     Wv * Wv +
                 bar.h2[i] * bar.h2[i] / bar.mu1L);
      const double q2 = -a22 * (Wp + d1a22 / a22 * Wv);
      min_q13 = std::min(min_q13, q1 - q3);
      min_q2 = std::min(min_q2, (q2 - 2.0 * C_star * delta) / a22);
    }
  }
  rep.min_q1_minus_q3 = min_q13;
  rep.min_q2_over_a22 = min_q2;
  rep.pass = min_q13 >= w.lambda0 - 1e-12 && min_q2 >= w.lambda0 - 1e-12;
  return rep;
}

AdmissibleLengthReport admissible_length_report(const Background1D& bg,
                                                const BarCoeffs& bar,
                                                double delta1, double eps0,
                                                const MultiplierConfig& cfg) {
  AdmissibleLengthReport rep;
  const RiccatiConstants rc = riccati_constants(bg, bar, delta1, cfg);
  rep.t_max_bound = std::isinf(bg.t_max) ? infinity_sentinel()
                                         : bg.t_max - eps0;
  rep.generic_case = rc.kase();
  rep.generic = critical_length(rc, rep.t_max_bound);

  if (bg.gp.E0 > 0.0 && bg.t_star) {
    rep.t_star_bound = *bg.t_star - eps0;
    // extremal bounds restricted to the accelerating part of the range
    const double t_acc = std::min(*bg.t_star - eps0, bg.grid.L);
    int i_end = 0;
    for (int i = 0; i < bg.grid.n1; ++i)
      if (bg.grid.x(i) <= t_acc) i_end = i;
    double a1_star = infinity_sentinel();
    for (int i = 0; i <= i_end; ++i) {
      const double slope = -bar.d1a22[i] / (2.0 * bar.a22[i]);
      a1_star = std::min({a1_star, bar.a1[i], slope});
    }
    const auto ex = extrema_over(bar, i_end, delta1, rc.kappa1, rc.mu1,
                                 cfg.C_star);
    const double a1_eff = a1_star / 2.0;
    const double disc = ex.a0 * ex.a2 - a1_eff * a1_eff;
    if (disc > 0.0) {
      rep.accelerating_case = RiccatiCase::positive_discriminant;
      const double sup = case1_sup(ex.a0, a1_eff, ex.a2, cfg.lambda1_star, +1);
      rep.accelerating = std::min(*bg.t_star - eps0, sup);
    } else {
      rep.accelerating_case = RiccatiCase::nonpositive_discriminant;
      rep.accelerating = rep.t_max_bound;
    }
  }
  return rep;
}

}  // namespace epnoz
