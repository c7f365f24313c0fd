#include "epnoz/background.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace epnoz {

namespace {

// 32-point Gauss-Legendre rule on [0, 1], built once.
struct GaussRule {
  std::vector<double> x, w;
  GaussRule() {
    const int n = 32;
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        const double dp = n * (t * p1 - p0) / (t * t - 1.0);
        const double dt = p1 / dp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double dp = n * (t * p1 - p0) / (t * t - 1.0);
      x[i] = 0.5 * (1.0 + t);
      w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
  }
};

const GaussRule& gauss32() {
  static const GaussRule rule;
  return rule;
}

template <typename F>
double gauss01(F&& f) {
  const auto& g = gauss32();
  double s = 0.0;
  for (size_t i = 0; i < g.x.size(); ++i) s += g.w[i] * f(g.x[i]);
  return s;
}

double antiderivative(const GasParams& gp, double t) {
  const double g = gp.gamma;
  return gp.S0 * rpow(t, g) - g * gp.S0 * gp.b0 * rpow(t, g - 1.0) / (g - 1.0) +
         gp.J0 * gp.J0 / t - gp.J0 * gp.J0 * gp.b0 / (2.0 * t * t);
}

// Denominator of the raw density equation, equals c^2 - u^2 on the orbit.
double speed_gap(const GasParams& gp, double rho) {
  return gp.gamma * gp.S0 * rpow(rho, gp.gamma - 1.0) -
         gp.J0 * gp.J0 / (rho * rho);
}

struct OdeState {
  double rho, E, phi0, Phi0;
};

OdeState operator+(const OdeState& a, const OdeState& b) {
  return {a.rho + b.rho, a.E + b.E, a.phi0 + b.phi0, a.Phi0 + b.Phi0};
}
OdeState operator*(double s, const OdeState& a) {
  return {s * a.rho, s * a.E, s * a.phi0, s * a.Phi0};
}

struct FieldOptions {
  bool desingularize = false;       // separatrix handoff active
  double switch_band = 0.0;         // |rho - rho_s| below which to hand off
};

OdeState field(const GasParams& gp, const OdeState& y, const FieldOptions& opt) {
  OdeState d;
  if (opt.desingularize && std::abs(y.rho - gp.rho_s) < opt.switch_band) {
    const double F = desingularized_speed(gp, y.rho);
    d.rho = (y.E >= 0.0 ? -F : F);
  } else {
    d.rho = y.E * y.rho / speed_gap(gp, y.rho);
  }
  d.E = y.rho - gp.b0;
  d.phi0 = gp.J0 / y.rho;
  d.Phi0 = y.E;
  return d;
}

OdeState rk4_step(const GasParams& gp, const OdeState& y, double h,
                  const FieldOptions& opt) {
  const OdeState k1 = field(gp, y, opt);
  const OdeState k2 = field(gp, y + (0.5 * h) * k1, opt);
  const OdeState k3 = field(gp, y + (0.5 * h) * k2, opt);
  const OdeState k4 = field(gp, y + h * k3, opt);
  return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

struct AdvanceOptions {
  double rel_tol = 1e-10;
  double h_init = 0.0;
  FieldOptions field_opt;
  // stop guards; negative disables
  double sonic_guard = -1.0;          // stop when rho >= rho_s - guard
  double slope_bound = -1.0;          // stop when |rho'| exceeds this
};

enum class StopReason { reached_target, sonic, slope, none };

// Adaptive step-doubling RK4 from t to t_target.  on_step(t_prev, y_prev, t,
// y) is called after each accepted substep and may return false to stop.
template <typename Callback>
StopReason advance(const GasParams& gp, OdeState& y, double& t, double t_target,
                   const AdvanceOptions& opt, Callback&& on_step) {
  const double dir = t_target >= t ? 1.0 : -1.0;
  const double span = std::abs(t_target - t);
  if (span == 0.0) return StopReason::reached_target;
  double h = opt.h_init > 0.0 ? opt.h_init : span / 4096.0;
  h *= dir;
  const double h_min = 1e-14 * std::max(span, 1.0);
  while (dir * (t_target - t) > 1e-16 * std::max(1.0, std::abs(t_target))) {
    if (std::abs(h) > dir * (t_target - t)) h = t_target - t;
    const OdeState y_big = rk4_step(gp, y, h, opt.field_opt);
    const OdeState y_mid = rk4_step(gp, y, 0.5 * h, opt.field_opt);
    const OdeState y_two = rk4_step(gp, y_mid, 0.5 * h, opt.field_opt);
    const double scale = std::abs(y.rho) + std::abs(y.E) + 1.0;
    const double err =
        (std::abs(y_two.rho - y_big.rho) + std::abs(y_two.E - y_big.E)) / 15.0;
    if (err <= opt.rel_tol * scale) {
      const OdeState y_prev = y;
      const double t_prev = t;
      // local extrapolation
      y = y_two + (1.0 / 15.0) * (y_two + (-1.0) * y_big);
      t += h;
      if (opt.sonic_guard >= 0.0 && y.rho >= gp.rho_s - opt.sonic_guard) {
        return StopReason::sonic;
      }
      if (opt.slope_bound > 0.0) {
        const double gap = speed_gap(gp, y.rho);
        const double slope = std::abs(y.E * y.rho / gap);
        if (gap == 0.0 || slope > opt.slope_bound) return StopReason::slope;
      }
      if (!on_step(t_prev, y_prev, t, y)) return StopReason::none;
      const double grow = err > 0.0
                              ? 0.9 * std::pow(opt.rel_tol * scale / err, 0.2)
                              : 4.0;
      h *= std::clamp(grow, 0.1, 4.0);
    } else {
      h *= std::max(0.1, 0.9 * std::pow(opt.rel_tol * scale / err, 0.2));
    }
    if (std::abs(h) < h_min)
      throw StepFailure("adaptive step underflow (blow-up proximity)");
  }
  return StopReason::reached_target;
}

StopReason advance(const GasParams& gp, OdeState& y, double& t, double t_target,
                   const AdvanceOptions& opt) {
  return advance(gp, y, t, t_target, opt,
                 [](double, const OdeState&, double, const OdeState&) {
                   return true;
                 });
}

double classification_tolerance(const GasParams& gp) {
  const double h0 = hamiltonian(gp, gp.rho0);
  return 1e-10 * std::max({1.0, gp.E0 * gp.E0, std::abs(h0)});
}

}  // namespace

double hamiltonian(const GasParams& gp, double rho) {
  if (!(rho > 0.0)) throw NonPositiveArgument("hamiltonian: rho must be > 0");
  return antiderivative(gp, rho) - antiderivative(gp, gp.rho_s);
}

double hamiltonian_rho(const GasParams& gp, double rho) {
  return (rho - gp.b0) / rho * speed_gap(gp, rho);
}

double hamiltonian_rhorho(const GasParams& gp, double rho) {
  const double g = gp.gamma;
  const double rg = rpow(rho, g);
  const double rs_g1 = rpow(gp.rho_s, g + 1.0);
  return g * gp.S0 / (rho * rho * rho) *
         ((rho * rg - rs_g1) * (1.0 - 3.0 * (rho - gp.b0) / rho) +
          (g + 1.0) * (rho - gp.b0) * rg);
}

double desingularized_speed(const GasParams& gp, double rho) {
  const double g = gp.gamma;
  const double drho = rho - gp.rho_s;
  const double curvature = gauss01([&](double s) {
    return (1.0 - s) * hamiltonian_rhorho(gp, gp.rho_s + s * drho);
  });
  const double chord = gauss01([&](double t) {
    return rpow(t * rho + (1.0 - t) * gp.rho_s, g);
  });
  return rho * rho * rho * std::sqrt(2.0 * std::max(curvature, 0.0)) /
         (g * (g + 1.0) * gp.S0 * chord);
}

OrbitClass classify_orbit(const GasParams& gp) {
  const double d = 0.5 * gp.E0 * gp.E0 - hamiltonian(gp, gp.rho0);
  const double tau = classification_tolerance(gp);
  OrbitKind kind;
  if (d < -tau)
    kind = OrbitKind::periodic;
  else if (d > tau)
    kind = OrbitKind::sonic_blowup;
  else
    kind = OrbitKind::separatrix;
  return {kind, d};
}

bool is_equilibrium(const GasParams& gp) {
  const double tau = classification_tolerance(gp);
  return std::abs(gp.E0) < tau && std::abs(gp.rho0 - gp.b0) < tau * gp.rho_s;
}

namespace {

// Refine an event inside [t_lo, t_hi] by bisection, re-integrating from the
// bracket-left state each probe.  predicate(y) changes sign across the event.
template <typename Pred>
double bisect_event(const GasParams& gp, const OdeState& y_lo, double t_lo,
                    double t_hi, const FieldOptions& fopt, Pred&& predicate) {
  const double tau = 1e-10 * std::max(1.0, std::abs(t_hi));
  double a = t_lo, b = t_hi;
  OdeState ya = y_lo;
  AdvanceOptions opt;
  opt.field_opt = fopt;
  while (b - a > tau) {
    const double mid = 0.5 * (a + b);
    OdeState ym = ya;
    double tm = a;
    advance(gp, ym, tm, mid, opt);
    if (predicate(ym)) {
      b = mid;
    } else {
      a = mid;
      ya = ym;
    }
  }
  return 0.5 * (a + b);
}

// First x1 > 0 at which the density attains its orbit maximum: the electric
// field crosses zero with rho > b0 there.
double periodic_first_max(const GasParams& gp, int skip_events = 0) {
  OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
  double t = 0.0;
  const double span = 1.0;
  AdvanceOptions opt;
  int remaining = skip_events;
  double event_time = -1.0;
  for (int chunk = 0; chunk < 100000 && event_time < 0.0; ++chunk) {
    const double target = t + span;
    advance(gp, y, t, target, opt,
            [&](double t_prev, const OdeState& y_prev, double t_cur,
                const OdeState& y_cur) {
              if (y_prev.E < 0.0 && y_cur.E >= 0.0 && y_cur.rho > gp.b0) {
                if (remaining-- > 0) return true;
                event_time = bisect_event(gp, y_prev, t_prev, t_cur,
                                          opt.field_opt,
                                          [](const OdeState& s) {
                                            return s.E >= 0.0;
                                          });
                return false;
              }
              return true;
            });
  }
  if (event_time < 0.0)
    throw NotApplicable("no density-maximum event found on the orbit");
  return event_time;
}

double separatrix_arrival(const GasParams& gp) {
  OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
  double t = 0.0;
  AdvanceOptions opt;
  opt.field_opt.desingularize = true;
  opt.field_opt.switch_band = 1e-3 * gp.rho_s;
  double event_time = -1.0;
  for (int chunk = 0; chunk < 100000 && event_time < 0.0; ++chunk) {
    advance(gp, y, t, t + 1.0, opt,
            [&](double t_prev, const OdeState& y_prev, double t_cur,
                const OdeState& y_cur) {
              if (y_cur.rho >= gp.rho_s) {
                event_time = bisect_event(gp, y_prev, t_prev, t_cur,
                                          opt.field_opt,
                                          [&](const OdeState& s) {
                                            return s.rho >= gp.rho_s;
                                          });
                return false;
              }
              return true;
            });
  }
  if (event_time < 0.0)
    throw NotApplicable("separatrix orbit never reached the sonic density");
  return event_time;
}

double blowup_arrival(const GasParams& gp) {
  const double d = 0.5 * gp.E0 * gp.E0 - hamiltonian(gp, gp.rho0);
  OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
  double t = 0.0;
  AdvanceOptions opt;
  opt.sonic_guard = 1e-3 * gp.rho_s;
  StopReason reason = StopReason::none;
  for (int chunk = 0; chunk < 100000; ++chunk) {
    reason = advance(gp, y, t, t + 1.0, opt);
    if (reason != StopReason::reached_target) break;
  }
  if (reason != StopReason::sonic)
    throw NotApplicable("blow-up orbit never approached the sonic density");
  // Finish in the density variable: dx1/drho = (c^2 - u^2)/(E rho) with
  // E = -sqrt(2(H + d)) on the arrival branch; the integrand vanishes
  // linearly at rho_s, so plain Gauss quadrature is accurate.
  const double tail = (gp.rho_s - y.rho) * gauss01([&](double s) {
    const double r = y.rho + s * (gp.rho_s - y.rho);
    const double E = -std::sqrt(std::max(
        2.0 * (hamiltonian(gp, r) + d), 0.0));
    return speed_gap(gp, r) / (E * r);
  });
  return t + tail;
}

double forward_t_max(const GasParams& gp) {
  switch (classify_orbit(gp).kind) {
    case OrbitKind::periodic:
      return periodic_first_max(gp);
    case OrbitKind::separatrix:
      return separatrix_arrival(gp);
    default:
      return blowup_arrival(gp);
  }
}

}  // namespace

CriticalAbscissas critical_abscissas(const GasParams& gp) {
  CriticalAbscissas out{0.0, 0.0, std::nullopt};
  if (is_equilibrium(gp)) {
    // the defining predicate is everywhere true on the constant orbit
    out.t_max = infinity_sentinel();
    out.t_min = -infinity_sentinel();
    return out;
  }
  out.t_max = forward_t_max(gp);
  {
    // x1 -> -x1 maps orbits of the system onto orbits with E negated
    GasParams rev = gp;
    rev.E0 = -gp.E0;
    out.t_min = -forward_t_max(rev);
  }
  if (gp.E0 > 0.0) {
    OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
    double t = 0.0;
    AdvanceOptions opt;
    opt.field_opt.desingularize =
        classify_orbit(gp).kind == OrbitKind::separatrix;
    opt.field_opt.switch_band = 1e-3 * gp.rho_s;
    double event_time = -1.0;
    for (int chunk = 0; chunk < 100000 && event_time < 0.0; ++chunk) {
      advance(gp, y, t, t + 1.0, opt,
              [&](double t_prev, const OdeState& y_prev, double t_cur,
                  const OdeState& y_cur) {
                if (y_cur.E <= 0.0) {
                  event_time = bisect_event(gp, y_prev, t_prev, t_cur,
                                            opt.field_opt,
                                            [](const OdeState& s) {
                                              return s.E <= 0.0;
                                            });
                  return false;
                }
                return true;
              });
    }
    if (event_time < 0.0)
      throw NotApplicable("field never vanished while locating T_*");
    out.t_star = event_time;
  }
  return out;
}

double detect_period(const GasParams& gp) {
  if (classify_orbit(gp).kind != OrbitKind::periodic)
    throw NotApplicable("period detection requires a periodic orbit");
  if (is_equilibrium(gp))
    throw NotApplicable("the constant orbit has no finite period marker");
  const double t1 = periodic_first_max(gp);
  const double t2 = periodic_first_max(gp, 1);
  return t2 - t1;
}

std::pair<double, double> integrate_orbit(const GasParams& gp, double t_end,
                                          double rel_tol,
                                          bool allow_desingularized) {
  OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
  double t = 0.0;
  AdvanceOptions opt;
  opt.rel_tol = rel_tol;
  if (allow_desingularized &&
      classify_orbit(gp).kind == OrbitKind::separatrix) {
    opt.field_opt.desingularize = true;
    opt.field_opt.switch_band = 1e-3 * gp.rho_s;
  }
  advance(gp, y, t, t_end, opt);
  return {y.rho, y.E};
}

Background1D integrate_background(const GasParams& gp, double L, int n1) {
  if (!(L > 0.0) || n1 < 3)
    throw ValidationError("background: need L > 0 and at least 3 nodes");
  Background1D bg;
  bg.gp = gp;
  bg.grid = Grid1D{L, n1};
  bg.orbit = classify_orbit(gp);
  const auto crit = critical_abscissas(gp);
  bg.t_min = crit.t_min;
  bg.t_max = crit.t_max;
  bg.t_star = crit.t_star;

  bg.rho.resize(n1);
  bg.u.resize(n1);
  bg.E.resize(n1);
  bg.phi0.resize(n1);
  bg.Phi0.resize(n1);

  AdvanceOptions opt;
  opt.h_init = L / 4096.0;
  opt.sonic_guard = 1e-8 * gp.rho_s;
  if (bg.orbit.kind == OrbitKind::separatrix) {
    opt.field_opt.desingularize = true;
    opt.field_opt.switch_band = 1e-3 * gp.rho_s;
  }

  OdeState y{gp.rho0, gp.E0, 0.0, gp.B0};
  double t = 0.0;
  for (int i = 0; i < n1; ++i) {
    if (i > 0) {
      const StopReason reason = advance(gp, y, t, bg.grid.x(i), opt);
      if (reason == StopReason::sonic) {
        std::ostringstream os;
        os << "density reached the sonic guard at x1 = " << t
           << "; the requested domain exceeds the supersonic range";
        throw SonicEncounter(t, os.str());
      }
    }
    bg.rho[i] = y.rho;
    bg.u[i] = gp.J0 / y.rho;
    bg.E[i] = y.E;
    bg.phi0[i] = y.phi0;
    bg.Phi0[i] = y.Phi0;
  }

  double lo = infinity_sentinel(), hi = 0.0;
  double gap_lo = infinity_sentinel(), gap_hi = 0.0;
  for (int i = 0; i < n1; ++i) {
    lo = std::min(lo, std::min(bg.rho[i], gp.rho_s - bg.rho[i]));
    const double gap = -speed_gap(gp, bg.rho[i]);  // u^2 - c^2 > 0
    gap_lo = std::min(gap_lo, gap);
    gap_hi = std::max(gap_hi, gap);
    hi = std::max(hi, bg.rho[i]);
  }
  bg.eps0 = lo;
  bg.mu0 = std::min(gap_lo, 1.0 / gap_hi);
  return bg;
}

}  // namespace epnoz
