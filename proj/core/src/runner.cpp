#include "cfor/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <sstream>

#include "cfor/error.hpp"
#include "cfor/euler.hpp"
#include "cfor/filters.hpp"
#include "cfor/incompressible.hpp"
#include "cfor/time_integration.hpp"

namespace cfor {

std::optional<double> CaseResult::metric(const std::string& name) const {
  for (auto it = metrics.rbegin(); it != metrics.rend(); ++it) {
    if (it->name == name) return it->value;
  }
  return std::nullopt;
}

std::optional<ErrorReport> CaseResult::error_at(const std::string& quantity, double t) const {
  std::optional<ErrorReport> best;
  double gap = std::numeric_limits<double>::infinity();
  for (const auto& e : errors) {
    if (e.quantity == quantity && std::abs(e.t - t) < gap) {
      gap = std::abs(e.t - t);
      best = e.error;
    }
  }
  return best;
}

Grid case_grid(const CaseConfig& cfg) {
  const double two_pi = 2.0 * std::numbers::pi;
  switch (cfg.kind) {
    case CaseKind::Taylor:
    case CaseKind::ShearLayer: return Grid::plane(cfg.n, cfg.n, two_pi / cfg.n, two_pi / cfg.n);
    case CaseKind::Wavepacket: return Grid::line(2 * cfg.n, 1.0 / cfg.n, -1.0);
    case CaseKind::IsentropicVortex: return Grid::plane(cfg.n, cfg.n, 10.0 / cfg.n, 10.0 / cfg.n);
    case CaseKind::ShockEntropy: return Grid::line(cfg.n, 5.0 / cfg.n, 0.0);
  }
  throw InvalidArgument("unknown case");
}

namespace {

std::string fmt(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

// Shared state of one run: sampling schedule, logging and the TV switch.
class Driver {
 public:
  Driver(const CaseConfig& cfg, const RunOptions& opt, CaseResult& result)
      : cfg_(cfg), opt_(opt), result_(result), bank_(cfg.kernel, cfg.restore_ratio) {}

  void log(const std::string& line) const {
    if (opt_.log) opt_.log(line);
  }

  const ConjugateFilterBank& bank() const { return bank_; }

  void metric(double t, long step, const std::string& name, double value) {
    result_.metrics.push_back({t, step, name, value});
    log("metric t=" + fmt(t) + " " + name + "=" + fmt(value, 17));
  }

  void error(double t, long step, const std::string& quantity, const ErrorReport& e) {
    result_.errors.push_back({t, step, quantity, e});
    log("error t=" + fmt(t) + " " + quantity + " L1=" + fmt(e.l1, 6) + " L2=" + fmt(e.l2, 6) +
        " Linf=" + fmt(e.linf, 6));
  }

  bool wants_snapshot(double t) const {
    if (cfg_.snapshot_times.empty()) return t == cfg_.t_final;
    return std::find(cfg_.snapshot_times.begin(), cfg_.snapshot_times.end(), t) != cfg_.snapshot_times.end();
  }

  void snapshot(double t, const std::string& name, Field f) {
    result_.snapshots.push_back({t, name, std::move(f)});
  }

  /// TV-switched filtering after a completed step. `tv` measures the filtered variables,
  /// `apply` filters them in place.
  template <class Tv, class Apply>
  void maybe_filter(long step, double t, Tv&& tv, Apply&& apply) {
    if (!cfg_.filter) return;
    const double before = tv();
    if (!switch_) switch_.emplace(before, TvPolicy{cfg_.tv_growth});
    if (!switch_->should_filter(before)) return;
    apply();
    const double after = tv();
    switch_->rearm(after);
    result_.filter_events.push_back({step, t, before, after});
    log("filter step=" + std::to_string(step) + " t=" + fmt(t) + " tv_before=" + fmt(before, 12) +
        " tv_after=" + fmt(after, 12));
  }

  void arm(double tv0) {
    if (cfg_.filter) switch_.emplace(tv0, TvPolicy{cfg_.tv_growth});
  }

  /// Advances to every sample time. `dt_of` proposes a step, `advance(dt, step)` performs
  /// one step including filtering, `sample(t, step)` records diagnostics.
  template <class DtOf, class Advance, class Sample>
  void march(DtOf&& dt_of, Advance&& advance, Sample&& sample) {
    const std::vector<double> times = cfg_.resolved_sample_times();
    // The clock is summed with compensation: over 1e5+ steps a plain running sum drifts by
    // ~1e-13, which the landing step would then fold into the state as a phase error.
    double t = 0.0;
    double t_lo = 0.0;
    long step = 0;
    try {
      for (double target : times) {
        while (t < target) {
          double dt = dt_of();
          const double remaining = (target - t) - t_lo;
          bool lands = false;
          if (dt >= remaining * (1.0 - 1e-9)) {
            dt = remaining;
            lands = true;
          }
          ++step;
          advance(dt, step, t + dt);
          if (lands) {
            t = target;
            t_lo = 0.0;
          } else {
            const double y = dt - t_lo;
            const double sum = t + y;
            t_lo = (sum - t) - y;
            t = sum;
          }
          if (opt_.progress_every > 0 && step % opt_.progress_every == 0) {
            log("step " + std::to_string(step) + " t=" + fmt(t, 10) + " dt=" + fmt(dt, 6));
          }
        }
        sample(t, step);
      }
    } catch (const SolverError& e) {
      throw SolverError(cfg_.name + ": failed at step " + std::to_string(step) + ", t=" + fmt(t, 10) + ": " +
                        e.what());
    }
    result_.steps = step;
    result_.t_reached = t;
  }

 private:
  const CaseConfig& cfg_;
  const RunOptions& opt_;
  CaseResult& result_;
  ConjugateFilterBank bank_;
  std::optional<TvSwitch> switch_;
};

double tv_sum(const FieldSet& s) {
  double tv = 0.0;
  for (const Field& f : s) tv += total_variation(f);
  return tv;
}

void lowpass_all(FieldSet& s, const ConjugateFilterBank& bank) {
  for (Field& f : s) f = apply_conjugate_lowpass(f, bank, Wrap::Alias);
}


// --- incompressible cases ---------------------------------------------------------------

void run_incompressible(const CaseConfig& cfg, Driver& drv, CaseResult& result) {
  const Grid& g = result.grid;
  const Differentiator diff(cfg.kernel, Wrap::Alias);
  ProjectionOptions popt;
  popt.tol = cfg.poisson_tol;
  popt.op = cfg.poisson_operator;
  const Projector proj(g, cfg.kernel, popt);

  const bool taylor = cfg.kind == CaseKind::Taylor;
  Field u0(g), v0(g);
  for (int j = 0; j < g.ny; ++j) {
    for (int i = 0; i < g.nx; ++i) {
      if (taylor) {
        const auto e = taylor_exact(g.x(i), g.y(j), 0.0, cfg.k);
        u0(i, j) = e.u;
        v0(i, j) = e.v;
      } else {
        const auto e = shear_layer_init(g.x(i), g.y(j), cfg.thickness, cfg.delta);
        u0(i, j) = e.u;
        v0(i, j) = e.v;
      }
    }
  }
  long poisson_iterations = 0;
  double worst_residual = 0.0;
  auto project = [&](const FieldSet& s) {
    ProjectionResult r = proj.project(s[0], s[1]);
    poisson_iterations = std::max(poisson_iterations, r.iterations);
    worst_residual = std::max(worst_residual, r.residual);
    return FieldSet{std::move(r.u), std::move(r.v)};
  };
  FieldSet state = project(FieldSet{u0, v0});

  auto record = [&](double t, long step) {
    const Field& u = state[0];
    const Field& v = state[1];
    drv.metric(t, step, "kinetic_energy", kinetic_energy(u, v));
    drv.metric(t, step, "max_divergence", proj.divergence(u, v).max_abs());
    const Field w = vorticity(u, v, diff);
    drv.metric(t, step, "vorticity_min", w.min());
    drv.metric(t, step, "vorticity_max", w.max());
    if (step > 0) {
      drv.metric(t, step, "max_poisson_iterations", static_cast<double>(poisson_iterations));
      drv.metric(t, step, "max_poisson_residual", worst_residual);
    }
    if (taylor) {
      const Field ue = Field::sample(g, [&](double x, double y) { return taylor_exact(x, y, t, cfg.k).u; });
      const Field ve = Field::sample(g, [&](double x, double y) { return taylor_exact(x, y, t, cfg.k).v; });
      drv.error(t, step, "u", norms(u, ue));
      drv.error(t, step, "v", norms(v, ve));
    }
    if (step > 0 && drv.wants_snapshot(t)) {
      drv.snapshot(t, "u", u);
      drv.snapshot(t, "v", v);
      drv.snapshot(t, "vorticity", w);
    }
  };
  record(0.0, 0);
  drv.arm(tv_sum(state));

  auto rhs = [&](const FieldSet& s) { return incompressible_rhs(s[0], s[1], diff); };
  drv.march([&] { return compute_dt_incompressible(state[0], &state[1], cfg.step); },
            [&](double dt, long step, double t_new) {
              state = rk3_projection_step(state, rhs, project, dt, step);
              drv.maybe_filter(step, t_new, [&] { return tv_sum(state); },
                               [&] { lowpass_all(state, drv.bank()); });
            },
            record);
}

// --- wavepacket -------------------------------------------------------------------------

void run_wavepacket(const CaseConfig& cfg, Driver& drv, CaseResult& result) {
  const Grid& g = result.grid;
  const Differentiator diff(cfg.kernel, Wrap::Alias);
  WavepacketParams wp;
  wp.k = cfg.k;
  wp.speed = cfg.wave_speed;
  FieldSet state{Field::sample(g, [&](double x, double) { return wavepacket_exact(x, 0.0, wp); })};
  drv.arm(tv_sum(state));
  const double c = cfg.wave_speed;
  auto rhs = [&](const FieldSet& s) {
    Field d = diff.d1(s[0], Axis::X);
    d *= -c;
    return FieldSet{std::move(d)};
  };
  auto dt_of = [&] {
    if (cfg.step.mode == StepControl::Mode::FixedDt) return cfg.step.dt;
    if (c == 0.0) throw SolverError("CFL step undefined for zero advection speed");
    return cfg.step.cfl * g.dx / std::abs(c);
  };
  drv.march(dt_of,
            [&](double dt, long step, double t_new) {
              state = rk4_step(state, rhs, dt, step);
              drv.maybe_filter(step, t_new, [&] { return tv_sum(state); },
                               [&] { lowpass_all(state, drv.bank()); });
            },
            [&](double t, long step) {
              const Field exact = Field::sample(g, [&](double x, double) { return wavepacket_exact(x, t, wp); });
              drv.error(t, step, "u", norms(state[0], exact));
              if (drv.wants_snapshot(t)) {
                drv.snapshot(t, "u", state[0]);
                drv.snapshot(t, "u_exact", exact);
              }
            });
}

// --- isentropic vortex ------------------------------------------------------------------

void run_vortex(const CaseConfig& cfg, Driver& drv, CaseResult& result) {
  const Grid& g = result.grid;
  const Differentiator diff(cfg.kernel, Wrap::Alias);
  VortexParams vp;
  vp.strength = cfg.strength;
  vp.eta = cfg.eta;
  vp.gamma = cfg.gamma;

  auto exact_primitive = [&](double t) {
    Primitive w{Field(g), Field(g), Field(g), Field(g)};
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) {
        const FlowPoint e = vortex_exact(g.x(i), g.y(j), t, vp);
        w.rho(i, j) = e.rho;
        w.u(i, j) = e.u;
        w.v(i, j) = e.v;
        w.p(i, j) = e.p;
      }
    }
    return w;
  };
  EulerState state = conservative_from_primitive(exact_primitive(0.0), cfg.gamma);
  const std::vector<double> totals0 = conserved_totals(state);
  drv.arm(tv_sum(state.q));

  auto rhs = [&](const FieldSet& q) { return euler_rhs_2d(EulerState{q, cfg.gamma}, diff, cfg.positivity); };
  auto dt_of = [&] {
    const Primitive w = primitive_from_conservative(state, cfg.positivity);
    return compute_dt_compressible(w.u, &w.v, sound_speed(w, cfg.gamma), cfg.step);
  };
  drv.march(dt_of,
            [&](double dt, long step, double t_new) {
              state.q = rk4_step(state.q, rhs, dt, step);
              drv.maybe_filter(step, t_new, [&] { return tv_sum(state.q); },
                               [&] { lowpass_all(state.q, drv.bank()); });
            },
            [&](double t, long step) {
              const Primitive exact = exact_primitive(t);
              drv.error(t, step, "rho", norms(state.rho(), exact.rho, NormConvention::VortexPaper));
              drv.error(t, step, "rho_standard", norms(state.rho(), exact.rho, NormConvention::Standard));
              const std::vector<double> totals = conserved_totals(state);
              double drift = 0.0;
              for (std::size_t c = 0; c < totals.size(); ++c) {
                drift = std::max(drift, std::abs(totals[c] - totals0[c]) / std::max(1.0, std::abs(totals0[c])));
              }
              drv.metric(t, step, "conservation_drift", drift);
              // Density minimum marks the vortex core.
              std::size_t kmin = 0;
              for (std::size_t k = 1; k < state.rho().size(); ++k) {
                if (state.rho()[k] < state.rho()[kmin]) kmin = k;
              }
              const int imin = static_cast<int>(kmin % static_cast<std::size_t>(g.nx));
              const int jmin = static_cast<int>(kmin / static_cast<std::size_t>(g.nx));
              drv.metric(t, step, "core_x", g.x(imin));
              drv.metric(t, step, "core_y", g.y(jmin));
              drv.metric(t, step, "core_x_exact", std::fmod(vp.x0 + vp.u_inf * t, vp.length));
              drv.metric(t, step, "core_y_exact", std::fmod(vp.y0 + vp.v_inf * t, vp.length));
              drv.metric(t, step, "rho_min", state.rho().min());
              if (drv.wants_snapshot(t)) {
                drv.snapshot(t, "rho", state.rho());
                drv.snapshot(t, "rho_exact", exact.rho);
              }
            });
}

// --- shock / entropy wave ---------------------------------------------------------------

void run_shock_entropy(const CaseConfig& cfg, Driver& drv, CaseResult& result) {
  const Grid& interior = result.grid;
  const int n = interior.nx;
  const int ghosts = 2 * cfg.kernel.half_width;
  const Grid ext = Grid::line(n + 2 * ghosts, interior.dx, interior.x0 - ghosts * interior.dx);
  const Differentiator diff(cfg.kernel, Wrap::Alias);

  ShockEntropyParams sp;
  sp.epsilon = cfg.epsilon;
  sp.kappa = cfg.k;
  sp.gamma = cfg.gamma;

  Primitive w0{Field(ext), Field(ext), Field(), Field(ext)};
  for (int i = 0; i < ext.nx; ++i) {
    const FlowPoint e = shock_entropy_init(ext.x(i), sp);
    w0.rho(i) = e.rho;
    w0.u(i) = e.u;
    w0.p(i) = e.p;
  }
  EulerState state = conservative_from_primitive(w0, cfg.gamma);
  std::vector<double> inflow;
  for (const Field& f : state.q) inflow.push_back(f(0));

  // Left band: frozen supersonic inflow. Right band: zero-gradient extrapolation.
  auto fill_ghosts = [&](FieldSet& q) {
    for (std::size_t c = 0; c < q.size(); ++c) {
      Field& f = q[c];
      for (int i = 0; i < ghosts; ++i) f(i) = inflow[c];
      const double last = f(ghosts + n - 1);
      for (int i = ghosts + n; i < ext.nx; ++i) f(i) = last;
    }
  };
  auto interior_of = [&](const Field& f) {
    Field out(interior);
    for (int i = 0; i < n; ++i) out(i) = f(ghosts + i);
    return out;
  };
  auto interior_tv = [&](const FieldSet& q) {
    double tv = 0.0;
    for (const Field& f : q) tv += total_variation(f.values().subspan(static_cast<std::size_t>(ghosts), n), false);
    return tv;
  };
  fill_ghosts(state.q);
  drv.arm(interior_tv(state.q));

  auto rhs = [&](const FieldSet& q) {
    FieldSet filled = q;
    fill_ghosts(filled);
    FieldSet d = euler_rhs_1d(EulerState{filled, cfg.gamma}, diff, cfg.positivity);
    for (Field& f : d) {
      for (int i = 0; i < ghosts; ++i) f(i) = 0.0;
      for (int i = ghosts + n; i < ext.nx; ++i) f(i) = 0.0;
    }
    return d;
  };
  auto dt_of = [&] {
    const Primitive w = primitive_from_conservative(state, cfg.positivity);
    return compute_dt_compressible(w.u, nullptr, sound_speed(w, cfg.gamma), cfg.step);
  };
  const ShockLinearResponse theory = shock_linear_response(sp);
  // Pressure undershoot at the shock foot, tracked when it is not treated as an error.
  double min_pressure = std::numeric_limits<double>::infinity();
  long undershoot_steps = 0;
  drv.march(dt_of,
            [&](double dt, long step, double t_new) {
              state.q = rk4_step(state.q, rhs, dt, step);
              fill_ghosts(state.q);
              drv.maybe_filter(step, t_new, [&] { return interior_tv(state.q); },
                               [&] {
                                 lowpass_all(state.q, drv.bank());
                                 fill_ghosts(state.q);
                               });
              const double p_min = primitive_from_conservative(state, cfg.positivity).p.min();
              min_pressure = std::min(min_pressure, p_min);
              if (p_min <= 0.0 && undershoot_steps++ == 0) {
                drv.log("pressure undershoot first seen at step " + std::to_string(step) + ", p_min=" + fmt(p_min));
              }
            },
            [&](double t, long step) {
              const Primitive w = primitive_from_conservative(state, cfg.positivity);
              const Field rho = interior_of(w.rho);
              const Field p = interior_of(w.p);
              const EntropyWaveMeasurement m = measure_entropy_wave(rho, p, cfg.gamma, t, theory.post_u);
              drv.metric(t, step, "shock_position", m.shock_position);
              drv.metric(t, step, "entropy_amplitude", m.amplitude);
              drv.metric(t, step, "entropy_wavelength", m.wavelength);
              drv.metric(t, step, "entropy_amplitude_linear_theory", theory.entropy_amplitude);
              drv.metric(t, step, "entropy_wavelength_linear_theory",
                         theory.wavelength_ratio * 2.0 * std::numbers::pi / cfg.k);
              drv.metric(t, step, "min_pressure", min_pressure);
              drv.metric(t, step, "undershoot_steps", static_cast<double>(undershoot_steps));
              if (drv.wants_snapshot(t)) {
                Field s(interior);
                for (int i = 0; i < n; ++i) s(i) = p(i) / std::pow(rho(i), cfg.gamma);
                drv.snapshot(t, "rho", rho);
                drv.snapshot(t, "entropy", std::move(s));
              }
            });
}

}  // namespace

EntropyWaveMeasurement measure_entropy_wave(const Field& rho, const Field& p, double gamma, double t,
                                            double post_shock_velocity) {
  const Grid& g = rho.grid();
  EntropyWaveMeasurement m;
  m.amplitude = std::numeric_limits<double>::quiet_NaN();
  m.wavelength = std::numeric_limits<double>::quiet_NaN();
  // The shock is the rightmost point where pressure exceeds the mid-jump level.
  double p_hi = p.max();
  const double level = 0.5 * (p_hi + 1.0);
  int shock = -1;
  for (int i = g.nx - 1; i >= 0; --i) {
    if (p(i) > level) {
      shock = i;
      break;
    }
  }
  if (shock < 0) return m;
  m.shock_position = g.x(shock);
  const double contact = 0.5 + post_shock_velocity * t;
  const double span = m.shock_position - contact;
  m.window_lo = contact + 0.1 * span;
  m.window_hi = m.shock_position - 0.1 * span;
  std::vector<double> s;
  std::vector<double> xs;
  for (int i = 0; i < g.nx; ++i) {
    if (g.x(i) >= m.window_lo && g.x(i) <= m.window_hi) {
      s.push_back(p(i) / std::pow(rho(i), gamma));
      xs.push_back(g.x(i));
    }
  }
  if (s.size() < 8) return m;
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  m.amplitude = 0.5 * (*hi - *lo);
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= static_cast<double>(s.size());
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double a = s[i] - mean;
    const double b = s[i + 1] - mean;
    if ((a < 0.0) != (b < 0.0)) crossings.push_back(xs[i] + (xs[i + 1] - xs[i]) * a / (a - b));
  }
  if (crossings.size() >= 2) {
    m.wavelength = 2.0 * (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
  }
  return m;
}

CaseResult run_case(const CaseConfig& cfg, const RunOptions& options) {
  cfg.validate();
  CaseResult result;
  result.config = cfg;
  result.grid = case_grid(cfg);
  Driver drv(cfg, options, result);
  drv.log("run " + cfg.name + " case=" + to_string(cfg.kind) + " N=" + std::to_string(cfg.n) +
          " kernel=" + describe(cfg.kernel) + " r_lp=" + fmt(cfg.restore_ratio));
  switch (cfg.kind) {
    case CaseKind::Taylor:
    case CaseKind::ShearLayer: run_incompressible(cfg, drv, result); break;
    case CaseKind::Wavepacket: run_wavepacket(cfg, drv, result); break;
    case CaseKind::IsentropicVortex: run_vortex(cfg, drv, result); break;
    case CaseKind::ShockEntropy: run_shock_entropy(cfg, drv, result); break;
  }
  drv.log("done steps=" + std::to_string(result.steps) + " t=" + fmt(result.t_reached, 10) +
          " filter_events=" + std::to_string(result.filter_events.size()));
  return result;
}

namespace {

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << std::setprecision(17);
  return out;
}

void check_written(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

std::string time_tag(double t) {
  std::ostringstream os;
  os << std::setprecision(10) << t;
  return os.str();
}

}  // namespace

std::vector<std::string> write_case_outputs(const CaseResult& r, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  const std::string base = r.config.name;
  std::vector<std::string> written;

  {
    const fs::path path = fs::path(dir) / (base + "_errors.csv");
    auto out = open_output(path);
    out << "t,step,quantity,l1,l2,linf,convention\n";
    for (const auto& e : r.errors) {
      out << e.t << ',' << e.step << ',' << e.quantity << ',' << e.error.l1 << ',' << e.error.l2 << ','
          << e.error.linf << ',' << (e.error.convention == NormConvention::Standard ? "standard" : "vortex")
          << '\n';
    }
    check_written(out, path);
    written.push_back(path.filename().string());
  }
  {
    const fs::path path = fs::path(dir) / (base + "_metrics.csv");
    auto out = open_output(path);
    out << "t,step,name,value\n";
    for (const auto& m : r.metrics) out << m.t << ',' << m.step << ',' << m.name << ',' << m.value << '\n';
    check_written(out, path);
    written.push_back(path.filename().string());
  }
  {
    const fs::path path = fs::path(dir) / (base + "_filter_events.csv");
    auto out = open_output(path);
    out << "step,t,tv_before,tv_after\n";
    for (const auto& f : r.filter_events) out << f.step << ',' << f.t << ',' << f.tv_before << ',' << f.tv_after << '\n';
    check_written(out, path);
    written.push_back(path.filename().string());
  }
  for (const auto& s : r.snapshots) {
    const fs::path path = fs::path(dir) / (base + "_" + s.name + "_t" + time_tag(s.t) + ".csv");
    auto out = open_output(path);
    write_snapshot_csv(out, s.field, s.name);
    check_written(out, path);
    written.push_back(path.filename().string());
  }
  return written;
}

}  // namespace cfor
