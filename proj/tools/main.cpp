// cfor: run benchmark cases, analyze DSC filters, export stencils and reproduce tables.
//
// Exit codes: 0 ok, 1 unexpected error, 2 configuration or usage error, 3 solver failure,
// 4 I/O failure. Reproduced tables with failing rows exit with 3.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cfor/case_config.hpp"
#include "cfor/error.hpp"
#include "cfor/filters.hpp"
#include "cfor/kernels.hpp"
#include "cfor/runner.hpp"
#include "cfor/spectral.hpp"
#include "cfor/version.hpp"
#include "tables.hpp"

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUnexpected = 1, kConfig = 2, kSolver = 3, kIo = 4 };

std::string default_output_dir() {
  if (const char* env = std::getenv("CFOR_OUTPUT_DIR"); env != nullptr && *env != '\0') return env;
  return "cfor_output";
}

std::ofstream open_or_throw(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw cfor::IoError("cannot write '" + path.string() + "'");
  return out;
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw cfor::IoError("cannot create output directory '" + dir + "': " + ec.message());
}

// --- run --------------------------------------------------------------------------------

struct RunArgs {
  std::string config;
  std::string output_dir;
  long progress = 0;
  bool quiet = false;
};

int cmd_run(const RunArgs& a) {
  const cfor::CaseConfig cfg = cfor::load_case_config(a.config);
  const std::string dir = a.output_dir.empty() ? default_output_dir() : a.output_dir;
  ensure_dir(dir);

  const fs::path log_path = fs::path(dir) / (cfg.name + "_run.log");
  std::ofstream log = open_or_throw(log_path);
  cfor::RunOptions opt;
  opt.progress_every = a.progress;
  opt.log = [&](const std::string& line) {
    log << line << '\n';
    if (!a.quiet) std::cerr << line << '\n';
  };

  {
    std::ofstream manifest = open_or_throw(fs::path(dir) / (cfg.name + "_manifest.txt"));
    manifest << "# cfor " << cfor::version() << ", FFTW " << cfor::fftw_version() << '\n';
    manifest << "# kernel: " << cfor::describe(cfg.kernel) << ", r_lp=" << cfg.restore_ratio << '\n';
    manifest << "# grid: " << cfor::case_grid(cfg).nx << " x " << cfor::case_grid(cfg).ny << '\n';
    manifest << cfor::format_case_config(cfg);
    if (!manifest) throw cfor::IoError("write failed for manifest");
  }

  try {
    const cfor::CaseResult result = cfor::run_case(cfg, opt);
    const auto files = cfor::write_case_outputs(result, dir);
    if (!a.quiet) {
      for (const auto& e : result.errors) {
        if (e.t != result.t_reached) continue;
        std::cout << e.quantity << " at t=" << e.t << ": L1=" << e.error.l1 << " L2=" << e.error.l2
                  << " Linf=" << e.error.linf << '\n';
      }
      std::cout << "wrote " << files.size() + 2 << " files to " << dir << '\n';
    }
  } catch (const cfor::SolverError& e) {
    log << "error: " << e.what() << '\n';
    throw;
  }
  if (!log) throw cfor::IoError("write failed for '" + log_path.string() + "'");
  return kOk;
}

// --- analyze / stencil ------------------------------------------------------------------

struct KernelArgs {
  std::string family = "hermite";
  double r = 3.05;
  int w = 32;
  int n = 88;

  cfor::KernelSpec spec() const {
    cfor::KernelSpec s;
    s.family = cfor::parse_kernel_family(family);
    s.ratio = r;
    s.half_width = w;
    s.hermite_order = n;
    s.validate();
    return s;
  }
};

void add_kernel_options(CLI::App* cmd, KernelArgs& k) {
  cmd->add_option("--kernel", k.family, "Kernel family: hermite or rsk")->capture_default_str();
  cmd->add_option("-r,--ratio", k.r, "r = sigma / dx")->capture_default_str();
  cmd->add_option("-W,--half-width", k.w, "Stencil half-width W")->capture_default_str();
  cmd->add_option("-n,--hermite-order", k.n, "Hermite expansion order n")->capture_default_str();
}

cfor::StencilWeights make_stencil(const cfor::KernelSpec& spec, const std::string& which) {
  if (which == "half") return cfor::halfgrid_stencil(spec);
  int q = 0;
  try {
    q = std::stoi(which);
  } catch (const std::exception&) {
    throw cfor::InvalidArgument("stencil order must be 0, 1, 2 or half");
  }
  return cfor::stencil(spec, q);
}

struct AnalyzeArgs {
  KernelArgs kernel;
  std::string order = "1";
  std::vector<double> tolerances{1e-10, 1e-7, 1e-6, 1e-5, 1e-4, 1e-3};
  int samples = 4096;
  bool normalize = false;
  std::string output_dir;
  std::string compare_family;
  double compare_r = 5.4;
  std::vector<double> packet_k;
  double packet_dx = 0.01;
};

void print_bands(std::ostream& out, const std::string& label, const std::vector<cfor::BandTier>& tiers) {
  out << label << '\n';
  for (const auto& t : tiers) {
    out << "  tol=" << std::setw(8) << std::setprecision(1) << std::scientific << t.tolerance
        << "  edge=" << std::fixed << std::setprecision(6) << t.edge << " (" << t.edge / 3.141592653589793
        << " pi/dx)\n";
  }
  out << std::defaultfloat << std::setprecision(6);
}

int cmd_analyze(const AnalyzeArgs& a) {
  const cfor::KernelSpec spec = a.kernel.spec();
  const cfor::StencilWeights w = make_stencil(spec, a.order);
  const cfor::FrequencyResponse resp = cfor::frequency_response(w, a.samples);
  const std::string dir = a.output_dir.empty() ? default_output_dir() : a.output_dir;
  ensure_dir(dir);
  const std::string tag = cfor::to_string(spec.family) + "_q" + a.order + "_r" + std::to_string(spec.ratio);
  const fs::path csv = fs::path(dir) / ("response_" + tag + ".csv");
  {
    std::ofstream out = open_or_throw(csv);
    cfor::write_response_csv(out, resp, a.normalize);
    if (!out) throw cfor::IoError("write failed for '" + csv.string() + "'");
  }
  std::cout << "kernel " << cfor::describe(spec) << ", stencil q=" << a.order << ", response -> " << csv.string()
            << '\n';
  const auto tiers = cfor::band_tiers(resp, a.tolerances);
  print_bands(std::cout, "effective band edges:", tiers);

  if (!a.compare_family.empty()) {
    KernelArgs other = a.kernel;
    other.family = a.compare_family;
    other.r = a.compare_r;
    const cfor::KernelSpec ospec = other.spec();
    const auto otiers = cfor::band_tiers(cfor::frequency_response(make_stencil(ospec, a.order), a.samples),
                                         a.tolerances);
    print_bands(std::cout, "comparison kernel " + cfor::describe(ospec) + ":", otiers);
    for (std::size_t i = 0; i < tiers.size(); ++i) {
      const char* wider = otiers[i].edge > tiers[i].edge ? "comparison wider" : "primary wider or equal";
      std::cout << "  tol=" << std::scientific << std::setprecision(1) << tiers[i].tolerance << std::defaultfloat
                << ": " << wider << '\n';
    }
  }
  for (double k : a.packet_k) {
    const auto support = cfor::gaussian_packet_support(k, std::sqrt(2.0) / 10.0, a.packet_dx);
    const auto report = cfor::predict_case_feasibility(tiers, support);
    std::cout << "wavepacket k=" << k << " (support up to " << support.upper << "/dx): " << report.summary << '\n';
  }
  return kOk;
}

struct StencilArgs {
  KernelArgs kernel;
  std::string order = "1";
  std::string output;
};

int cmd_stencil(const StencilArgs& a) {
  const cfor::StencilWeights w = make_stencil(a.kernel.spec(), a.order);
  if (a.output.empty()) {
    cfor::write_stencil_table(std::cout, w);
    return kOk;
  }
  std::ofstream out = open_or_throw(a.output);
  cfor::write_stencil_table(out, w);
  if (!out) throw cfor::IoError("write failed for '" + a.output + "'");
  return kOk;
}

// --- list -------------------------------------------------------------------------------

int cmd_list() {
  for (auto kind : {cfor::CaseKind::Taylor, cfor::CaseKind::ShearLayer, cfor::CaseKind::Wavepacket,
                    cfor::CaseKind::IsentropicVortex, cfor::CaseKind::ShockEntropy}) {
    cfor::CaseConfig c = cfor::default_case_config(kind);
    std::cout << std::left << std::setw(14) << cfor::to_string(kind) << " t_final=" << c.t_final << " "
              << (c.step.mode == cfor::StepControl::Mode::FixedDt ? "dt=" + std::to_string(c.step.dt)
                                                                  : "cfl=" + std::to_string(c.step.cfl))
              << " r_lp=" << c.restore_ratio << '\n';
  }
  std::cout << "tables: 1 (Taylor), 2 (wavepacket), 3 (wavepacket long run), 4-5 (vortex convergence), "
               "6 (vortex long run), 7 (shock/entropy)\n";
  return kOk;
}

// --- reproduce-table ----------------------------------------------------------------------

struct TableArgs {
  int id = 0;
  cfor::cli::TableOptions options;
  bool write_outputs = false;
};

int cmd_table(TableArgs a) {
  if (a.id < 1 || a.id > 7) throw cfor::InvalidArgument("unknown table " + std::to_string(a.id) + " (expected 1..7)");
  if (a.write_outputs) {
    a.options.output_dir = default_output_dir();
    ensure_dir(a.options.output_dir);
  }
  const int failures = cfor::cli::reproduce_table(a.id, a.options, std::cout);
  std::cout << (failures == 0 ? "all rows pass" : std::to_string(failures) + " row(s) outside tolerance") << '\n';
  return failures == 0 ? kOk : kSolver;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cfor: conjugate filter oscillation reduction with DSC kernels"};
  app.set_version_flag("--version", cfor::version());
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a benchmark case from a key=value config");
  run->add_option("config", run_args.config, "Case configuration file")->required();
  run->add_option("-o,--output-dir", run_args.output_dir, "Output directory (default $CFOR_OUTPUT_DIR or ./cfor_output)");
  run->add_option("--progress", run_args.progress, "Log progress every N steps");
  run->add_flag("-q,--quiet", run_args.quiet, "Suppress console output");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Frequency response and effective band of a stencil");
  add_kernel_options(analyze, analyze_args.kernel);
  analyze->add_option("-q,--order", analyze_args.order, "Stencil: 0, 1, 2 or half")->capture_default_str();
  analyze->add_option("--tolerances", analyze_args.tolerances, "Band tolerance tiers")->delimiter(',');
  analyze->add_option("--samples", analyze_args.samples, "Frequency samples on [0, pi]")->capture_default_str();
  analyze->add_flag("--normalize", analyze_args.normalize, "Normalize |R| to unit maximum in the CSV");
  analyze->add_option("-o,--output-dir", analyze_args.output_dir, "Output directory");
  analyze->add_option("--compare", analyze_args.compare_family, "Second kernel family for a band comparison");
  analyze->add_option("--compare-ratio", analyze_args.compare_r, "r of the comparison kernel")->capture_default_str();
  analyze->add_option("--packet-k", analyze_args.packet_k, "Wavepacket wavenumbers to test against the bands")
      ->delimiter(',');
  analyze->add_option("--packet-dx", analyze_args.packet_dx, "Grid spacing for --packet-k")->capture_default_str();

  StencilArgs stencil_args;
  auto* stencil = app.add_subcommand("stencil", "Print stencil weights as offset,weight rows");
  add_kernel_options(stencil, stencil_args.kernel);
  stencil->add_option("-q,--order", stencil_args.order, "Stencil: 0, 1, 2 or half")->capture_default_str();
  stencil->add_option("-o,--output", stencil_args.output, "Write to a file instead of stdout");

  app.add_subcommand("list", "List benchmark cases and tables");

  TableArgs table_args;
  auto* table = app.add_subcommand("reproduce-table", "Run the cases behind a table and compare with reference values");
  table->add_option("table", table_args.id, "Table number 1..7")->required();
  table->add_option("--max-n", table_args.options.max_n, "Largest grid size to run")->capture_default_str();
  table->add_option("--max-t", table_args.options.max_t, "Cap on simulated time for long runs (0: none)");
  table->add_flag("--write-outputs", table_args.write_outputs, "Write per-case CSVs to the output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_args);
    if (*analyze) return cmd_analyze(analyze_args);
    if (*stencil) return cmd_stencil(stencil_args);
    if (*table) return cmd_table(table_args);
    return cmd_list();
  } catch (const cfor::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const cfor::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kConfig;
  } catch (const cfor::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kSolver;
  } catch (const cfor::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUnexpected;
  }
}
