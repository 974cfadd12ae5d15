#include "cfor/incompressible.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "cfor/bicg.hpp"
#include "cfor/error.hpp"

namespace cfor {

namespace {

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};
using PlanPtr = std::unique_ptr<fftw_plan_s, PlanDeleter>;

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

// Fourier symbol of a first-derivative stencil divided by i: sum_j w_j 2 sin(j theta), j > 0.
double first_symbol(const StencilWeights& w, double theta) {
  double s = 0.0;
  for (int j = 1; j <= w.half_width(); ++j) s += 2.0 * w.at(j) * std::sin(j * theta);
  return s;
}

// Real symbol of a symmetric stencil: w_0 + sum_j w_j 2 cos(j theta), j > 0.
double even_symbol(const StencilWeights& w, double theta) {
  double s = w.at(0);
  for (int j = 1; j <= w.half_width(); ++j) s += 2.0 * w.at(j) * std::cos(j * theta);
  return s;
}

}  // namespace

FieldSet incompressible_rhs(const Field& u, const Field& v, const Differentiator& d) {
  const Field ux = d.d1(u, Axis::X);
  const Field uy = d.d1(u, Axis::Y);
  const Field vx = d.d1(v, Axis::X);
  const Field vy = d.d1(v, Axis::Y);
  Field ru(u.grid()), rv(u.grid());
  for (std::size_t k = 0; k < u.size(); ++k) {
    ru[k] = -(u[k] * ux[k] + v[k] * uy[k]);
    rv[k] = -(u[k] * vx[k] + v[k] * vy[k]);
  }
  return {std::move(ru), std::move(rv)};
}

FieldSet incompressible_rhs(const IncompressibleState& state, const KernelSpec& spec) {
  return incompressible_rhs(state.u, state.v, Differentiator(spec));
}

struct Projector::Impl {
  Grid grid;
  Differentiator diff;
  ProjectionOptions options;
  int nxc = 0;  // nx / 2 + 1 complex columns
  std::vector<double> inverse_symbol;
  std::vector<char> null_mode;
  std::unique_ptr<double, FftwFree> real;
  std::unique_ptr<fftw_complex, FftwFree> spectrum;
  PlanPtr forward;
  PlanPtr backward;

  Impl(const Grid& g, const KernelSpec& spec, ProjectionOptions opt)
      : grid(g), diff(spec, Wrap::Alias), options(opt) {  // circulant, like the FFT symbols
    if (!g.is_2d()) throw InvalidArgument("projection needs a 2D grid");
    if (!(options.tol > 0.0)) throw InvalidArgument("projection tolerance must be > 0");
    if (options.max_iterations <= 0) {
      const long n = std::max(g.nx, g.ny);
      options.max_iterations = 10 * n * n;
    }
    nxc = g.nx / 2 + 1;
    const std::size_t nspec = static_cast<std::size_t>(nxc) * static_cast<std::size_t>(g.ny);
    real.reset(fftw_alloc_real(g.size()));
    spectrum.reset(fftw_alloc_complex(nspec));
    {
      std::lock_guard lock(planner_mutex());
      forward.reset(fftw_plan_dft_r2c_2d(g.ny, g.nx, real.get(), spectrum.get(), FFTW_ESTIMATE));
      backward.reset(fftw_plan_dft_c2r_2d(g.ny, g.nx, spectrum.get(), real.get(), FFTW_ESTIMATE));
    }
    if (!forward || !backward) throw Error("FFTW plan creation failed");

    std::vector<double> symbol(nspec);
    double peak = 0.0;
    for (int jy = 0; jy < g.ny; ++jy) {
      const double ty = 2.0 * std::numbers::pi * jy / g.ny;
      for (int ix = 0; ix < nxc; ++ix) {
        const double tx = 2.0 * std::numbers::pi * ix / g.nx;
        double s;
        if (options.op == PoissonOperator::CompositeFirstDerivative) {
          const double sx = first_symbol(diff.first(), tx) / g.dx;
          const double sy = first_symbol(diff.first(), ty) / g.dy;
          s = -(sx * sx + sy * sy);
        } else {
          s = even_symbol(diff.second(), tx) / (g.dx * g.dx) + even_symbol(diff.second(), ty) / (g.dy * g.dy);
        }
        symbol[static_cast<std::size_t>(jy) * nxc + ix] = s;
        peak = std::max(peak, std::abs(s));
      }
    }
    inverse_symbol.resize(nspec);
    null_mode.resize(nspec);
    for (std::size_t k = 0; k < nspec; ++k) {
      const bool null = std::abs(symbol[k]) <= 1e-10 * peak;
      null_mode[k] = null;
      inverse_symbol[k] = null ? 0.0 : 1.0 / symbol[k];
    }
  }

  // out = F^-1 [ mult * F[in] ], mult either the inverse symbol or the range mask.
  void spectral_apply(const Vec& in, Vec& out, bool invert) const {
    std::copy(in.begin(), in.end(), real.get());
    fftw_execute(forward.get());
    const double norm = 1.0 / static_cast<double>(grid.size());
    fftw_complex* c = spectrum.get();
    for (std::size_t k = 0; k < inverse_symbol.size(); ++k) {
      const double m = (invert ? inverse_symbol[k] : (null_mode[k] ? 0.0 : 1.0)) * norm;
      c[k][0] *= m;
      c[k][1] *= m;
    }
    fftw_execute(backward.get());
    out.assign(real.get(), real.get() + grid.size());
  }

  Field laplacian(const Field& phi) const {
    if (options.op == PoissonOperator::CompositeFirstDerivative) {
      return diff.d1(diff.d1(phi, Axis::X), Axis::X) + diff.d1(diff.d1(phi, Axis::Y), Axis::Y);
    }
    return diff.d2(phi, Axis::X) + diff.d2(phi, Axis::Y);
  }
};

Projector::Projector(const Grid& grid, const KernelSpec& spec, ProjectionOptions options)
    : impl_(std::make_unique<Impl>(grid, spec, options)) {}
Projector::~Projector() = default;
Projector::Projector(Projector&&) noexcept = default;
Projector& Projector::operator=(Projector&&) noexcept = default;

const ProjectionOptions& Projector::options() const { return impl_->options; }
const Differentiator& Projector::differentiator() const { return impl_->diff; }

Field Projector::divergence(const Field& u, const Field& v) const {
  return impl_->diff.d1(u, Axis::X) + impl_->diff.d1(v, Axis::Y);
}

Field Projector::laplacian(const Field& phi) const { return impl_->laplacian(phi); }

ProjectionResult Projector::project(const Field& u, const Field& v) const {
  const Impl& im = *impl_;
  if (!(u.grid() == im.grid) || !(v.grid() == im.grid)) throw InvalidArgument("projection: grid mismatch");

  const Field div = divergence(u, v);
  Vec b(div.values().begin(), div.values().end());
  // Periodic compatibility: drop the mean and any component in the operator's null space.
  im.spectral_apply(b, b, false);

  const LinearMap a = [&im](const Vec& in, Vec& out) {
    Field f(im.grid);
    std::copy(in.begin(), in.end(), f.values().begin());
    const Field r = im.laplacian(f);
    out.assign(r.values().begin(), r.values().end());
  };
  LinearMap m_inv;
  if (im.options.preconditioner == Preconditioner::Spectral) {
    m_inv = [&im](const Vec& in, Vec& out) { im.spectral_apply(in, out, true); };
  } else {
    m_inv = [](const Vec& in, Vec& out) { out = in; };
  }

  Vec x(b.size(), 0.0);
  BicgOptions opt{im.options.tol, im.options.max_iterations};
  // Both the operator and the preconditioner are symmetric.
  const BicgResult sol = bicg_solve(a, a, m_inv, m_inv, b, x, opt);

  ProjectionResult out;
  out.phi = Field(im.grid);
  double mean = 0.0;
  for (double xi : x) mean += xi;
  mean /= static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out.phi[k] = x[k] - mean;
  out.u = u - im.diff.d1(out.phi, Axis::X);
  out.v = v - im.diff.d1(out.phi, Axis::Y);
  out.iterations = sol.iterations;
  out.residual = sol.residual;
  out.history = sol.history;
  return out;
}

double kinetic_energy(const Field& u, const Field& v) {
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += u[k] * u[k] + v[k] * v[k];
  return 0.5 * s * u.grid().dx * u.grid().dy;
}

Field vorticity(const Field& u, const Field& v, const Differentiator& d) {
  return d.d1(v, Axis::X) - d.d1(u, Axis::Y);
}

}  // namespace cfor
