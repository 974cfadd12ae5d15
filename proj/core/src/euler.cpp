#include "cfor/euler.hpp"

#include <algorithm>
#include <cmath>

#include "cfor/error.hpp"

namespace cfor {

void EulerState::validate() const {
  if (q.size() != 3 && q.size() != 4) throw InvalidArgument("EulerState needs 3 or 4 components");
  for (const Field& f : q) {
    if (!(f.grid() == q.front().grid())) throw InvalidArgument("EulerState components on different grids");
  }
  if (!(gamma > 1.0)) throw InvalidArgument("gamma must exceed 1");
}

Primitive primitive_from_conservative(const EulerState& state, Positivity check) {
  state.validate();
  const bool two_d = state.dims() == 2;
  const Grid& g = state.grid();
  Primitive out{state.rho(), Field(g), two_d ? Field(g) : Field(), Field(g)};
  const Field& rho = state.rho();
  const Field& mx = state.mom_x();
  const Field& e = state.energy();
  for (std::size_t k = 0; k < rho.size(); ++k) {
    const double r = rho[k];
    if (!(r > 0.0)) throw PositivityFailure("density", k, r);
    const double u = mx[k] / r;
    double kinetic = mx[k] * u;
    out.u[k] = u;
    if (two_d) {
      const double v = state.mom_y()[k] / r;
      kinetic += state.mom_y()[k] * v;
      out.v[k] = v;
    }
    const double p = (state.gamma - 1.0) * (e[k] - 0.5 * kinetic);
    if (check == Positivity::Strict ? !(p > 0.0) : !std::isfinite(p)) throw PositivityFailure("pressure", k, p);
    out.p[k] = p;
  }
  return out;
}

EulerState conservative_from_primitive(const Primitive& prim, double gamma) {
  const bool two_d = prim.v.size() != 0;
  const Grid& g = prim.rho.grid();
  EulerState s;
  s.gamma = gamma;
  s.q.assign(two_d ? 4 : 3, Field(g));
  for (std::size_t k = 0; k < prim.rho.size(); ++k) {
    const double r = prim.rho[k];
    const double u = prim.u[k];
    const double v = two_d ? prim.v[k] : 0.0;
    s.q[0][k] = r;
    s.q[1][k] = r * u;
    if (two_d) s.q[2][k] = r * v;
    s.q.back()[k] = prim.p[k] / (gamma - 1.0) + 0.5 * r * (u * u + v * v);
  }
  s.validate();
  return s;
}

Field sound_speed(const Primitive& prim, double gamma) {
  Field c(prim.rho.grid());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = std::sqrt(gamma * std::max(prim.p[k], 0.0) / prim.rho[k]);
  return c;
}

FieldSet euler_rhs_1d(const EulerState& state, const Differentiator& d, Positivity check) {
  if (state.dims() != 1) throw InvalidArgument("euler_rhs_1d needs a 1D state");
  const Primitive w = primitive_from_conservative(state, check);
  const Grid& g = state.grid();
  Field f1(g), f2(g);
  for (std::size_t k = 0; k < f1.size(); ++k) {
    const double u = w.u[k];
    f1[k] = state.mom_x()[k] * u + w.p[k];
    f2[k] = u * (state.energy()[k] + w.p[k]);
  }
  FieldSet out{d.d1(state.mom_x(), Axis::X), d.d1(f1, Axis::X), d.d1(f2, Axis::X)};
  for (Field& f : out) f *= -1.0;
  return out;
}

FieldSet euler_rhs_1d(const EulerState& state, const KernelSpec& spec) {
  return euler_rhs_1d(state, Differentiator(spec));
}

FieldSet euler_rhs_2d(const EulerState& state, const Differentiator& d, Positivity check) {
  if (state.dims() != 2) throw InvalidArgument("euler_rhs_2d needs a 2D state");
  const Primitive w = primitive_from_conservative(state, check);
  const Grid& g = state.grid();
  const Field& mx = state.mom_x();
  const Field& my = state.mom_y();
  const Field& e = state.energy();
  Field fxx(g), fxy(g), fxe(g), fyy(g), fye(g);
  for (std::size_t k = 0; k < fxx.size(); ++k) {
    const double u = w.u[k];
    const double v = w.v[k];
    const double p = w.p[k];
    fxx[k] = mx[k] * u + p;
    fxy[k] = mx[k] * v;
    fxe[k] = u * (e[k] + p);
    fyy[k] = my[k] * v + p;
    fye[k] = v * (e[k] + p);
  }
  FieldSet out{
      d.d1(mx, Axis::X) + d.d1(my, Axis::Y),
      d.d1(fxx, Axis::X) + d.d1(fxy, Axis::Y),
      d.d1(fxy, Axis::X) + d.d1(fyy, Axis::Y),
      d.d1(fxe, Axis::X) + d.d1(fye, Axis::Y),
  };
  for (Field& f : out) f *= -1.0;
  return out;
}

FieldSet euler_rhs_2d(const EulerState& state, const KernelSpec& spec) {
  return euler_rhs_2d(state, Differentiator(spec));
}

std::vector<double> conserved_totals(const EulerState& state) {
  std::vector<double> out;
  out.reserve(state.q.size());
  for (const Field& f : state.q) out.push_back(f.sum());
  return out;
}

}  // namespace cfor
