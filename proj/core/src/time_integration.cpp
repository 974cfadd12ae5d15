#include "cfor/time_integration.hpp"

#include <algorithm>
#include <cmath>

namespace cfor {

StepControl StepControl::fixed(double dt) {
  StepControl c;
  c.mode = Mode::FixedDt;
  c.dt = dt;
  c.validate();
  return c;
}

StepControl StepControl::courant(double cfl, double reynolds) {
  StepControl c;
  c.mode = Mode::Cfl;
  c.cfl = cfl;
  c.reynolds = reynolds;
  c.validate();
  return c;
}

void StepControl::validate() const {
  if (mode == Mode::FixedDt && !(dt > 0.0)) throw InvalidArgument("fixed dt must be > 0");
  if (mode == Mode::Cfl && !(cfl > 0.0 && cfl <= 1.0)) throw InvalidArgument("cfl must be in (0, 1]");
  if (!(reynolds > 0.0)) throw InvalidArgument("Reynolds number must be > 0");
}

double compute_dt_incompressible(const Field& u, const Field* v, const StepControl& control) {
  control.validate();
  if (control.mode == StepControl::Mode::FixedDt) return control.dt;
  const Grid& g = u.grid();
  double advective = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    double rate = std::abs(u[k]) / g.dx;
    if (v != nullptr) rate += std::abs((*v)[k]) / g.dy;
    if (!std::isfinite(rate)) throw InvalidArgument("non-finite velocity in CFL estimate");
    advective = std::max(advective, rate);
  }
  double viscous = 0.0;
  if (std::isfinite(control.reynolds)) {
    viscous = 1.0 / (g.dx * g.dx);
    if (v != nullptr) viscous += 1.0 / (g.dy * g.dy);
    viscous *= 2.0 / control.reynolds;
  }
  const double denom = advective + viscous;
  if (!(denom > 0.0)) throw SolverError("CFL denominator is zero (quiescent inviscid state)");
  return control.cfl / denom;
}

double compute_dt_compressible(const Field& u, const Field* v, const Field& sound_speed,
                               const StepControl& control) {
  control.validate();
  if (control.mode == StepControl::Mode::FixedDt) return control.dt;
  const Grid& g = u.grid();
  double rate = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double c = sound_speed[k];
    double r = (std::abs(u[k]) + c) / g.dx;
    if (v != nullptr) r += (std::abs((*v)[k]) + c) / g.dy;
    if (!std::isfinite(r)) throw InvalidArgument("non-finite wave speed in CFL estimate");
    rate = std::max(rate, r);
  }
  if (!(rate > 0.0)) throw SolverError("CFL denominator is zero");
  return control.cfl / rate;
}

}  // namespace cfor
