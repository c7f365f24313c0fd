#include "epnoz/model.hpp"

#include <sstream>

namespace epnoz {

double sonic_density(double gamma, double J0, double S0) {
  return rpow(J0 * J0 / (gamma * S0), 1.0 / (gamma + 1.0));
}

GasParams::GasParams(double gamma_, double J0_, double S0_, double b0_,
                     double rho0_, double E0_)
    : gamma(gamma_), J0(J0_), S0(S0_), b0(b0_), rho0(rho0_), E0(E0_) {
  auto fail = [](const std::string& msg) { throw ValidationError(msg); };
  if (!(gamma > 1.0)) fail("gamma must exceed 1");
  if (!(J0 > 0.0)) fail("J0 must be positive");
  if (!(S0 > 0.0)) fail("S0 must be positive");
  if (!(b0 > 0.0)) fail("b0 must be positive");
  if (!(rho0 > 0.0)) fail("rho0 must be positive");
  rho_s = sonic_density(gamma, J0, S0);
  if (!(b0 < rho_s)) {
    std::ostringstream os;
    os << "b0 = " << b0 << " must lie below the sonic density " << rho_s;
    fail(os.str());
  }
  if (!(rho0 < rho_s)) {
    std::ostringstream os;
    os << "rho0 = " << rho0 << " not supersonic (sonic density " << rho_s
       << ")";
    fail(os.str());
  }
  m0 = J0 * rpow(S0, 1.0 / (gamma - 1.0));
  u0 = J0 / rho0;
  B0 = bernoulli(gamma, rho0, u0, S0);
}

double bernoulli(double gamma, double rho, double speed, double S) {
  return 0.5 * speed * speed + gamma / (gamma - 1.0) * S * rpow(rho, gamma - 1.0);
}

double density_law(double gamma, double S, double zeta) {
  const double ratio = zeta / S;
  if (!(ratio > 0.0))
    throw NonPositiveArgument("density law: zeta/S must be positive");
  return rpow((gamma - 1.0) / gamma * ratio, 1.0 / (gamma - 1.0));
}

double density_law_isentropic(const GasParams& gp, double z, const Vec2& q) {
  return density_law(gp.gamma, gp.S0, z - 0.5 * q.norm2());
}

double sound_speed_sq(double gamma, double z, const Vec2& q) {
  const double arg = z - 0.5 * q.norm2();
  if (!(arg > 0.0))
    throw NonPositiveArgument("sound speed: z - |q|^2/2 must be positive");
  return (gamma - 1.0) * arg;
}

double sound_speed(double gamma, double z, const Vec2& q) {
  return std::sqrt(sound_speed_sq(gamma, z, q));
}

}  // namespace epnoz
