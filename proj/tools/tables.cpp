#include "tables.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cfor/error.hpp"
#include "cfor/runner.hpp"

namespace cfor::cli {

namespace {

// Tolerance policy for every reproduced table. A computed error passes when it is at most
// `factor` times the reference value.
struct Policy {
  double taylor_factor = 100.0;
  double wavepacket_factor = 10.0;
  double vortex_factor = 10.0;
  double vortex_min_order = 10.0;
  double vortex_long_factor = 100.0;
  /// Relative amplitude tolerance by pre-shock wavenumber; 0 marks a non-gating row.
  double shock_tolerance(double kappa) const {
    if (kappa == 13.0) return 0.05;
    if (kappa == 26.0) return 0.08;
    if (kappa == 52.0) return 0.10;
    return 0.0;
  }
  double shock_reference_amplitude = 0.08690716;
};
constexpr Policy kPolicy{};

std::string sci(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2E", v);
  return buf;
}

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

void row(std::ostream& out, const std::vector<std::string>& cells, std::size_t width = 12) {
  for (const auto& c : cells) out << pad(c, width);
  out << '\n';
}

struct RunOutcome {
  std::optional<CaseResult> result;
  std::string failure;
};

RunOutcome run(const CaseConfig& cfg, const TableOptions& opt) {
  RunOutcome o;
  try {
    o.result = run_case(cfg);
    if (!opt.output_dir.empty()) write_case_outputs(*o.result, opt.output_dir);
  } catch (const SolverError& e) {
    o.failure = e.what();
  }
  return o;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

// --- Table 1: Taylor problem ------------------------------------------------------------

int table1(const TableOptions& opt, std::ostream& out) {
  struct Ref {
    double k;
    double herm_l2, herm_linf, rsk_l2, rsk_linf;  // NaN where the table has no entry
  };
  const double none = std::nan("");
  const std::array<Ref, 6> refs{{
      {1, 6.63e-15, 2.78e-15, 4.88e-15, 2.33e-15},
      {2, 9.53e-15, 4.66e-15, 3.55e-15, 3.55e-15},
      {5, 2.45e-14, 1.86e-14, 1.96e-14, 1.64e-14},
      {10, 6.74e-13, 5.26e-13, 1.47e-12, 9.69e-13},
      {13, 1.01e-5, 4.79e-6, 5.89e-11, 4.19e-11},
      {15, none, none, 1.55e-3, 8.37e-4},
  }};
  out << "Table 1: Taylor problem, N=64, t=2, velocity u errors (pass: <= " << kPolicy.taylor_factor
      << "x reference)\n";
  row(out, {"k(PPW)", "kernel", "L2", "L2 ref", "Linf", "Linf ref", "status"});
  int failures = 0;
  for (const auto& r : refs) {
    for (int kernel = 0; kernel < 2; ++kernel) {
      CaseConfig cfg = default_case_config(CaseKind::Taylor);
      cfg.n = 64;
      cfg.k = r.k;
      cfg.name = "table1_k" + fixed(r.k, 0) + (kernel ? "_rsk" : "_hermite");
      if (kernel) cfg.kernel = KernelSpec::shannon(3.2);
      cfg.restore_ratio = std::min(cfg.restore_ratio, cfg.kernel.ratio);
      const double ref_l2 = kernel ? r.rsk_l2 : r.herm_l2;
      const double ref_linf = kernel ? r.rsk_linf : r.herm_linf;
      const std::string label = fixed(r.k, 0) + "(" + fixed(taylor_pressure_ppw(64, r.k), 1) + ")";
      RunOutcome o = run(cfg, opt);
      if (!o.result) {
        const bool gating = !std::isnan(ref_l2);
        failures += gating;
        row(out, {label, kernel ? "RSK" : "Hermite", "blow-up", sci(ref_l2), "-", sci(ref_linf),
                  gating ? "FAIL" : "recorded"});
        out << "    " << o.failure << '\n';
        continue;
      }
      const ErrorReport e = *o.result->error_at("u", 2.0);
      std::string status;
      if (std::isnan(ref_l2)) {
        status = e.linf > 1e-2 ? "recorded(>1e-2)" : "recorded";
      } else {
        const bool ok = e.l2 <= kPolicy.taylor_factor * ref_l2 && e.linf <= kPolicy.taylor_factor * ref_linf;
        failures += !ok;
        status = verdict(ok);
      }
      row(out, {label, kernel ? "RSK" : "Hermite", sci(e.l2), sci(ref_l2), sci(e.linf), sci(ref_linf), status});
    }
  }
  return failures;
}

// --- Tables 2 and 3: wavepacket -----------------------------------------------------------

double capped(double t, const TableOptions& opt) { return opt.max_t > 0.0 ? std::min(t, opt.max_t) : t; }

int wavepacket_table(double dt, const std::array<std::array<double, 6>, 5>& ref, const TableOptions& opt,
                     std::ostream& out) {
  const std::array<double, 6> ks{5, 10, 15, 20, 25, 30};
  const std::array<double, 5> times{2, 4, 6, 8, 10};
  out << "dt=" << sci(dt) << ", L1 error (pass: <= " << kPolicy.wavepacket_factor << "x reference)\n";
  row(out, {"k(PPW)", "t", "L1", "L1 ref", "status"});
  int failures = 0;
  for (std::size_t c = 0; c < ks.size(); ++c) {
    CaseConfig cfg = default_case_config(CaseKind::Wavepacket);
    cfg.n = 100;
    cfg.k = ks[c];
    cfg.step = StepControl::fixed(dt);
    cfg.t_final = capped(10.0, opt);
    cfg.sample_times.clear();
    for (double t : times) {
      if (t <= cfg.t_final) cfg.sample_times.push_back(t);
    }
    cfg.name = "table2_k" + fixed(ks[c], 0) + "_dt" + sci(dt);
    const std::string label = fixed(ks[c], 0) + "(" + fixed(100.0 / ks[c], 1) + ")";
    RunOutcome o = run(cfg, opt);
    for (std::size_t r = 0; r < times.size(); ++r) {
      if (times[r] > cfg.t_final) {
        row(out, {label, fixed(times[r], 0), "skipped", sci(ref[r][c]), "-"});
        continue;
      }
      if (!o.result) {
        ++failures;
        row(out, {label, fixed(times[r], 0), "blow-up", sci(ref[r][c]), "FAIL"});
        continue;
      }
      const double l1 = o.result->error_at("u", times[r])->l1;
      const bool ok = l1 <= kPolicy.wavepacket_factor * ref[r][c];
      failures += !ok;
      row(out, {label, fixed(times[r], 0), sci(l1), sci(ref[r][c]), verdict(ok)});
    }
  }
  return failures;
}

int table2(const TableOptions& opt, std::ostream& out) {
  const std::array<std::array<double, 6>, 5> coarse{{
      {2.00e-11, 3.47e-10, 2.26e-9, 9.01e-9, 3.34e-8, 4.71e-5},
      {4.01e-11, 6.95e-10, 4.53e-9, 1.80e-8, 6.68e-8, 9.41e-5},
      {6.01e-11, 1.04e-9, 6.79e-9, 2.70e-8, 1.00e-7, 1.41e-4},
      {8.02e-11, 1.39e-9, 9.06e-9, 3.60e-8, 1.34e-7, 1.88e-4},
      {1.00e-10, 1.74e-9, 1.13e-8, 4.51e-8, 1.67e-7, 2.35e-4},
  }};
  const std::array<std::array<double, 6>, 5> fine{{
      {1.17e-14, 4.77e-14, 4.23e-14, 5.86e-12, 2.21e-8, 4.70e-5},
      {2.11e-14, 8.86e-14, 8.23e-14, 1.17e-11, 4.43e-8, 9.41e-5},
      {2.46e-14, 1.36e-13, 1.11e-13, 1.76e-11, 6.64e-8, 1.41e-4},
      {3.19e-14, 1.79e-13, 1.46e-13, 2.35e-11, 8.86e-8, 1.88e-4},
      {4.01e-14, 2.27e-13, 1.73e-13, 2.93e-11, 1.11e-7, 2.36e-4},
  }};
  out << "Table 2: advective sine-Gaussian wavepacket, N=100 (spacing 1/N on [-1,1))\n";
  int failures = wavepacket_table(1e-4, coarse, opt, out);
  failures += wavepacket_table(5e-6, fine, opt, out);
  return failures;
}

int table3(const TableOptions& opt, std::ostream& out) {
  const std::array<double, 5> times{10, 20, 50, 80, 100};
  struct Ref {
    double k;
    std::array<double, 5> l1, linf;
  };
  const std::array<Ref, 2> refs{{
      {20, {4.51e-8, 9.01e-8, 2.25e-7, 3.60e-7, 4.51e-7}, {2.78e-7, 5.56e-7, 1.39e-6, 2.22e-6, 2.78e-6}},
      {25, {1.67e-7, 3.34e-7, 8.35e-7, 1.34e-6, 1.67e-6}, {1.51e-6, 3.02e-6, 7.55e-6, 1.21e-5, 1.51e-5}},
  }};
  out << "Table 3: wavepacket long-time integration, dt=1E-04 (pass: <= " << kPolicy.wavepacket_factor
      << "x reference; filtered and unfiltered runs)\n";
  row(out, {"k", "filter", "t", "L1", "L1 ref", "Linf", "Linf ref", "status"});
  int failures = 0;
  for (const auto& r : refs) {
    for (int filtered = 1; filtered >= 0; --filtered) {
      CaseConfig cfg = default_case_config(CaseKind::Wavepacket);
      cfg.n = 100;
      cfg.k = r.k;
      cfg.filter = filtered;
      cfg.t_final = capped(100.0, opt);
      cfg.sample_times.clear();
      for (double t : times) {
        if (t <= cfg.t_final) cfg.sample_times.push_back(t);
      }
      cfg.name = "table3_k" + fixed(r.k, 0) + (filtered ? "_filtered" : "_unfiltered");
      RunOutcome o = run(cfg, opt);
      for (std::size_t i = 0; i < times.size(); ++i) {
        const std::string f = filtered ? "on" : "off";
        if (times[i] > cfg.t_final) {
          row(out, {fixed(r.k, 0), f, fixed(times[i], 0), "skipped", sci(r.l1[i]), "-", sci(r.linf[i]), "-"});
          continue;
        }
        if (!o.result) {
          ++failures;
          row(out, {fixed(r.k, 0), f, fixed(times[i], 0), "blow-up", sci(r.l1[i]), "-", sci(r.linf[i]), "FAIL"});
          continue;
        }
        const ErrorReport e = *o.result->error_at("u", times[i]);
        const bool ok = e.l1 <= kPolicy.wavepacket_factor * r.l1[i] && e.linf <= kPolicy.wavepacket_factor * r.linf[i];
        failures += !ok;
        row(out, {fixed(r.k, 0), f, fixed(times[i], 0), sci(e.l1), sci(r.l1[i]), sci(e.linf), sci(r.linf[i]),
                  verdict(ok)});
      }
    }
  }
  return failures;
}

// --- Tables 4 and 5: isentropic vortex convergence -----------------------------------------

int vortex_convergence(bool l2, const TableOptions& opt, std::ostream& out) {
  const std::array<int, 4> ns{40, 80, 160, 320};
  // Columns CFOR^1 (CFL 0.5) and CFOR^2 (CFL 0.01).
  const std::array<std::array<double, 2>, 4> ref_l1{{{2.37e-5, 6.45e-6}, {4.73e-9, 2.79e-10}, {3.34e-10, 3.76e-11},
                                                      {5.12e-11, 3.20e-11}}};
  const std::array<std::array<double, 2>, 4> ref_l2{{{4.35e-5, 1.80e-5}, {1.41e-8, 1.06e-9}, {1.03e-9, 4.73e-10},
                                                      {4.14e-10, 4.08e-10}}};
  const auto& ref = l2 ? ref_l2 : ref_l1;
  // Other schemes at N = 40, 80, 160, 320 (reference only, never computed here).
  const char* names[7] = {"C4", "ENO", "MUSCL", "WENO", "ENO-ACM", "MUSCL-ACM", "WENO-ACM"};
  const double others_l1[4][7] = {{1.13e-3, 1.28e-3, 2.39e-3, 9.39e-4, 7.81e-4, 1.29e-3, 6.11e-4},
                                  {5.78e-5, 2.08e-4, 5.99e-4, 7.07e-5, 6.68e-5, 2.79e-4, 4.58e-4},
                                  {3.79e-6, 3.01e-5, 1.26e-4, 2.46e-6, 7.84e-6, 5.31e-5, 2.95e-6},
                                  {2.41e-7, 4.07e-6, 2.26e-5, 8.52e-8, 6.82e-7, 8.61e-6, 2.13e-7}};
  const double others_l2[4][7] = {{2.92e-3, 4.09e-3, 8.29e-3, 3.16e-3, 2.47e-3, 4.05e-3, 2.08e-3},
                                  {1.90e-4, 6.75e-4, 2.26e-3, 2.64e-4, 2.08e-4, 1.14e-3, 1.48e-4},
                                  {1.23e-5, 8.69e-5, 5.91e-4, 1.10e-5, 2.51e-5, 3.12e-4, 9.44e-6},
                                  {7.84e-7, 1.33e-5, 1.31e-4, 2.93e-7, 2.19e-6, 6.07e-5, 6.85e-7}};
  const auto& others = l2 ? others_l2 : others_l1;

  out << (l2 ? "Table 5" : "Table 4") << ": isentropic vortex, density " << (l2 ? "L2" : "L1")
      << " error at t=2 (pass: <= " << kPolicy.vortex_factor << "x reference; order 40->80 >= "
      << kPolicy.vortex_min_order << ")\n";
  row(out, {"N", "scheme", "error", "ref", "order", "ref order", "status"});
  const std::array<double, 2> cfls{0.5, 0.01};
  int failures = 0;
  for (int s = 0; s < 2; ++s) {
    double prev = std::nan("");
    double prev_ref = std::nan("");
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const std::string scheme = s == 0 ? "CFOR1" : "CFOR2";
      if (ns[i] > opt.max_n) {
        row(out, {std::to_string(ns[i]), scheme, "skipped", sci(ref[i][s]), "-", "-", "-"});
        prev = std::nan("");
        continue;
      }
      CaseConfig cfg = default_case_config(CaseKind::IsentropicVortex);
      cfg.n = ns[i];
      cfg.step = StepControl::courant(cfls[s]);
      cfg.name = "vortex_n" + std::to_string(ns[i]) + (s == 0 ? "_cfl0.5" : "_cfl0.01");
      RunOutcome o = run(cfg, opt);
      if (!o.result) {
        ++failures;
        row(out, {std::to_string(ns[i]), scheme, "blow-up", sci(ref[i][s]), "-", "-", "FAIL"});
        prev = std::nan("");
        continue;
      }
      const ErrorReport e = *o.result->error_at("rho", 2.0);
      const double err = l2 ? e.l2 : e.l1;
      const double order = std::log2(prev / err);
      const double ref_order = i > 0 ? std::log2(prev_ref / ref[i][s]) : std::nan("");
      bool ok = err <= kPolicy.vortex_factor * ref[i][s];
      if (ns[i] == 80 && !std::isnan(order)) ok = ok && order >= kPolicy.vortex_min_order;
      failures += !ok;
      row(out, {std::to_string(ns[i]), scheme, sci(err), sci(ref[i][s]), std::isnan(order) ? "-" : fixed(order, 2),
                std::isnan(ref_order) ? "-" : fixed(ref_order, 2), verdict(ok)});
      prev = err;
      prev_ref = ref[i][s];
    }
  }
  out << "Other schemes (reference only, CFL 0.5):\n";
  std::vector<std::string> header{"N"};
  for (const char* n : names) header.emplace_back(n);
  row(out, header);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    std::vector<std::string> cells{std::to_string(ns[i])};
    for (int c = 0; c < 7; ++c) cells.push_back(sci(others[i][c]));
    row(out, cells);
  }
  return failures;
}

// --- Table 6: vortex long run ---------------------------------------------------------------

int table6(const TableOptions& opt, std::ostream& out) {
  const std::array<double, 4> times{2, 10, 50, 100};
  const std::array<double, 4> ref_l1{4.73e-9, 1.23e-8, 4.58e-8, 1.05e-7};
  const std::array<double, 4> ref_l2{1.41e-8, 3.64e-8, 1.41e-7, 3.17e-7};
  out << "Table 6: isentropic vortex long run, N=80, CFL=0.5 (pass: <= " << kPolicy.vortex_long_factor
      << "x reference)\n";
  row(out, {"t", "L1", "L1 ref", "L2", "L2 ref", "status"});
  if (opt.max_n < 80) {
    out << "skipped (max-n < 80)\n";
    return 0;
  }
  CaseConfig cfg = default_case_config(CaseKind::IsentropicVortex);
  cfg.n = 80;
  cfg.t_final = capped(100.0, opt);
  cfg.sample_times.clear();
  for (double t : times) {
    if (t <= cfg.t_final) cfg.sample_times.push_back(t);
  }
  cfg.snapshot_times = {cfg.t_final};
  cfg.name = "table6_vortex_long";
  RunOutcome o = run(cfg, opt);
  int failures = 0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] > cfg.t_final) {
      row(out, {fixed(times[i], 0), "skipped", sci(ref_l1[i]), "-", sci(ref_l2[i]), "-"});
      continue;
    }
    if (!o.result) {
      ++failures;
      row(out, {fixed(times[i], 0), "blow-up", sci(ref_l1[i]), "-", sci(ref_l2[i]), "FAIL"});
      continue;
    }
    const ErrorReport e = *o.result->error_at("rho", times[i]);
    const bool ok = e.l1 <= kPolicy.vortex_long_factor * ref_l1[i] && e.l2 <= kPolicy.vortex_long_factor * ref_l2[i];
    failures += !ok;
    row(out, {fixed(times[i], 0), sci(e.l1), sci(ref_l1[i]), sci(e.l2), sci(ref_l2[i]), verdict(ok)});
  }
  if (!o.result) out << "    " << o.failure << '\n';
  return failures;
}

// --- Table 7: shock / entropy wave ----------------------------------------------------------

int table7(const TableOptions& opt, std::ostream& out) {
  struct Case {
    int id;
    double kappa;
    int n;
    double ppw;
  };
  const std::array<Case, 9> cases{{{1, 13, 400, 10},
                                   {2, 13, 800, 20},
                                   {3, 26, 400, 5},
                                   {4, 26, 800, 10},
                                   {5, 52, 800, 5},
                                   {6, 52, 1200, 7.5},
                                   {7, 65, 1000, 5},
                                   {8, 65, 1200, 6},
                                   {9, 70, 1200, 5.58}}};
  const ShockLinearResponse theory = shock_linear_response(ShockEntropyParams{});
  out << "Table 7: shock/entropy wave interaction, eps=0.01, r_lp=2.55, t=1\n";
  out << "linear theory: post-shock entropy amplitude (s = p/rho^gamma) " << fixed(theory.entropy_amplitude, 8)
      << ", ln s " << fixed(theory.log_entropy_amplitude, 8) << "; reference amplitude "
      << fixed(kPolicy.shock_reference_amplitude, 8) << "\n";
  row(out, {"case", "kappa", "N", "PPW", "PPW ref", "amplitude", "vs ref", "vs theory", "wavelength", "status"});
  int failures = 0;
  for (const auto& c : cases) {
    // Post-shock wavelength over the grid spacing 5/N.
    const double ppw = theory.wavelength_ratio * 2.0 * std::numbers::pi / c.kappa / (5.0 / c.n);
    const double tol = kPolicy.shock_tolerance(c.kappa);
    std::vector<std::string> cells{std::to_string(c.id), fixed(c.kappa, 0), std::to_string(c.n), fixed(ppw, 2),
                                   fixed(c.ppw, 2)};
    CaseConfig cfg = default_case_config(CaseKind::ShockEntropy);
    cfg.n = c.n;
    cfg.k = c.kappa;
    cfg.name = "table7_case" + std::to_string(c.id);
    RunOutcome o = run(cfg, opt);
    if (!o.result) {
      // Blow-up of the near-5-PPW stretch cases is reported without failing the table.
      failures += tol > 0.0;
      cells.insert(cells.end(), {"blow-up", "-", "-", "-", tol > 0.0 ? "FAIL" : "recorded"});
      row(out, cells);
      out << "    " << o.failure << '\n';
      continue;
    }
    const double amp = o.result->metric("entropy_amplitude").value_or(std::nan(""));
    const double wl = o.result->metric("entropy_wavelength").value_or(std::nan(""));
    const double rel = std::abs(amp - kPolicy.shock_reference_amplitude) / kPolicy.shock_reference_amplitude;
    std::string status = "stable";
    if (tol > 0.0) {
      const bool ok = rel <= tol;
      failures += !ok;
      status = verdict(ok);
    }
    const double rel_theory = std::abs(amp - theory.entropy_amplitude) / theory.entropy_amplitude;
    cells.insert(cells.end(), {fixed(amp, 6), fixed(rel, 3), fixed(rel_theory, 3), fixed(wl, 4), status});
    row(out, cells);
  }
  return failures;
}

}  // namespace

int reproduce_table(int id, const TableOptions& options, std::ostream& out) {
  switch (id) {
    case 1: return table1(options, out);
    case 2: return table2(options, out);
    case 3: return table3(options, out);
    case 4: return vortex_convergence(false, options, out);
    case 5: return vortex_convergence(true, options, out);
    case 6: return table6(options, out);
    case 7: return table7(options, out);
    default: throw InvalidArgument("unknown table " + std::to_string(id) + " (expected 1..7)");
  }
}

}  // namespace cfor::cli
