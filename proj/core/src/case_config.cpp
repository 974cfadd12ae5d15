#include "cfor/case_config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>

#include "cfor/error.hpp"

namespace cfor {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v, int line) {
  errno = 0;
  char* end = nullptr;
  const double d = std::strtod(v.c_str(), &end);
  if (v.empty() || end != v.c_str() + v.size() || errno == ERANGE || !std::isfinite(d)) {
    throw ConfigError("key '" + key + "' expects a number, got '" + v + "'", line);
  }
  return d;
}

int to_int(const std::string& key, const std::string& v, int line) {
  const double d = to_double(key, v, line);
  if (d != std::floor(d) || std::abs(d) > 1e9) throw ConfigError("key '" + key + "' expects an integer", line);
  return static_cast<int>(d);
}

bool to_bool(const std::string& key, const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "yes" || v == "1") return true;
  if (v == "off" || v == "false" || v == "no" || v == "0") return false;
  throw ConfigError("key '" + key + "' expects on/off, got '" + v + "'", line);
}

std::vector<double> to_list(const std::string& key, const std::string& v, int line) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item), line));
  if (out.empty()) throw ConfigError("key '" + key + "' expects a comma-separated list", line);
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::ostringstream os;
  os << std::setprecision(17);
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

CaseConfig default_case_config(CaseKind kind) {
  CaseConfig c;
  c.kind = kind;
  c.name = to_string(kind);
  switch (kind) {
    case CaseKind::Taylor:
      c.step = StepControl::courant(0.5);
      c.t_final = 2.0;
      break;
    case CaseKind::ShearLayer:
      c.step = StepControl::fixed(0.002);
      c.t_final = 10.0;
      c.restore_ratio = 2.6;
      c.sample_times = {2.0, 4.0, 6.0, 8.0, 10.0};
      c.snapshot_times = {4.0, 6.0, 8.0, 10.0};
      break;
    case CaseKind::Wavepacket:
      c.n = 100;
      c.k = 5.0;
      c.step = StepControl::fixed(1e-4);
      c.t_final = 2.0;
      break;
    case CaseKind::IsentropicVortex:
      c.step = StepControl::courant(0.5);
      c.t_final = 2.0;
      break;
    case CaseKind::ShockEntropy:
      c.k = 13.0;
      c.step = StepControl::courant(0.2);
      c.t_final = 1.0;
      c.restore_ratio = 2.55;
      c.positivity = Positivity::DensityOnly;
      break;
  }
  return c;
}

void CaseConfig::validate() const {
  if (n <= 0) throw ConfigError("N must be a positive integer");
  if (!(t_final > 0.0)) throw ConfigError("t_final must be > 0");
  if (!(k > 0.0)) throw ConfigError("k must be > 0");
  try {
    step.validate();
    kernel.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  if (!(restore_ratio > 0.0) || restore_ratio > kernel.ratio) {
    throw ConfigError("r_lp must satisfy 0 < r_lp <= r");
  }
  if (!(tv_growth > 0.0)) throw ConfigError("tv_growth must be > 0");
  if (!(poisson_tol > 0.0)) throw ConfigError("poisson_tol must be > 0");
  if (!(gamma > 1.0)) throw ConfigError("gamma must exceed 1");
  for (double t : sample_times) {
    if (!(t > 0.0) || t > t_final) throw ConfigError("sample times must lie in (0, t_final]");
  }
  for (double t : snapshot_times) {
    if (!(t > 0.0) || t > t_final) throw ConfigError("snapshot times must lie in (0, t_final]");
  }
  if (kind == CaseKind::ShearLayer && !(thickness > 0.0)) throw ConfigError("thickness must be > 0");
}

std::vector<double> CaseConfig::resolved_sample_times() const {
  std::vector<double> t = sample_times;
  t.insert(t.end(), snapshot_times.begin(), snapshot_times.end());
  t.push_back(t_final);
  std::sort(t.begin(), t.end());
  t.erase(std::unique(t.begin(), t.end()), t.end());
  return t;
}

CaseConfig parse_case_config(std::istream& in) {
  std::map<std::string, std::pair<std::string, int>> entries;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) throw ConfigError("expected 'key = value'", line);
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", line);
    if (value.empty()) throw ConfigError("key '" + key + "' has no value", line);
    if (!entries.emplace(key, std::make_pair(value, line)).second) {
      throw ConfigError("duplicate key '" + key + "'", line);
    }
  }

  const auto case_it = entries.find("case");
  if (case_it == entries.end()) throw ConfigError("missing required key 'case'");
  CaseConfig cfg;
  try {
    cfg = default_case_config(parse_case_kind(case_it->second.first));
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what(), case_it->second.second);
  }
  if (entries.find("N") == entries.end()) throw ConfigError("missing required key 'N'");
  if (entries.count("dt") && entries.count("cfl")) {
    throw ConfigError("'dt' and 'cfl' are mutually exclusive", entries.at("cfl").second);
  }

  using Setter = std::function<void(const std::string&, const std::string&, int)>;
  const std::map<std::string, Setter> setters = {
      {"case", [](auto&, auto&, int) {}},
      {"name", [&](auto&, auto& v, int) { cfg.name = v; }},
      {"N", [&](auto& k, auto& v, int l) { cfg.n = to_int(k, v, l); }},
      {"k", [&](auto& k, auto& v, int l) { cfg.k = to_double(k, v, l); }},
      {"kappa", [&](auto& k, auto& v, int l) { cfg.k = to_double(k, v, l); }},
      {"dt", [&](auto& k, auto& v, int l) {
         cfg.step.mode = StepControl::Mode::FixedDt;
         cfg.step.dt = to_double(k, v, l);
       }},
      {"cfl", [&](auto& k, auto& v, int l) {
         cfg.step.mode = StepControl::Mode::Cfl;
         cfg.step.cfl = to_double(k, v, l);
       }},
      {"t_final", [&](auto& k, auto& v, int l) { cfg.t_final = to_double(k, v, l); }},
      {"sample_times", [&](auto& k, auto& v, int l) { cfg.sample_times = to_list(k, v, l); }},
      {"snapshot_times", [&](auto& k, auto& v, int l) { cfg.snapshot_times = to_list(k, v, l); }},
      {"kernel", [&](auto&, auto& v, int l) {
         try {
           cfg.kernel.family = parse_kernel_family(v);
         } catch (const InvalidArgument& e) {
           throw ConfigError(e.what(), l);
         }
       }},
      {"W", [&](auto& k, auto& v, int l) { cfg.kernel.half_width = to_int(k, v, l); }},
      {"r", [&](auto& k, auto& v, int l) { cfg.kernel.ratio = to_double(k, v, l); }},
      {"hermite_order", [&](auto& k, auto& v, int l) { cfg.kernel.hermite_order = to_int(k, v, l); }},
      {"r_lp", [&](auto& k, auto& v, int l) { cfg.restore_ratio = to_double(k, v, l); }},
      {"filter", [&](auto& k, auto& v, int l) { cfg.filter = to_bool(k, v, l); }},
      {"tv_growth", [&](auto& k, auto& v, int l) { cfg.tv_growth = to_double(k, v, l); }},
      {"thickness", [&](auto& k, auto& v, int l) { cfg.thickness = to_double(k, v, l); }},
      {"delta", [&](auto& k, auto& v, int l) { cfg.delta = to_double(k, v, l); }},
      {"epsilon", [&](auto& k, auto& v, int l) { cfg.epsilon = to_double(k, v, l); }},
      {"strength", [&](auto& k, auto& v, int l) { cfg.strength = to_double(k, v, l); }},
      {"eta", [&](auto& k, auto& v, int l) { cfg.eta = to_double(k, v, l); }},
      {"gamma", [&](auto& k, auto& v, int l) { cfg.gamma = to_double(k, v, l); }},
      {"speed", [&](auto& k, auto& v, int l) { cfg.wave_speed = to_double(k, v, l); }},
      {"positivity", [&](auto&, auto& v, int l) {
         if (v == "strict") {
           cfg.positivity = Positivity::Strict;
         } else if (v == "density") {
           cfg.positivity = Positivity::DensityOnly;
         } else {
           throw ConfigError("positivity expects strict or density", l);
         }
       }},
      {"poisson_tol", [&](auto& k, auto& v, int l) { cfg.poisson_tol = to_double(k, v, l); }},
      {"poisson_operator", [&](auto&, auto& v, int l) {
         if (v == "composite") {
           cfg.poisson_operator = PoissonOperator::CompositeFirstDerivative;
         } else if (v == "second") {
           cfg.poisson_operator = PoissonOperator::SecondDerivative;
         } else {
           throw ConfigError("poisson_operator expects composite or second", l);
         }
       }},
  };

  for (const auto& [key, entry] : entries) {
    const auto it = setters.find(key);
    if (it == setters.end()) throw ConfigError("unknown key '" + key + "'", entry.second);
    it->second(key, entry.first, entry.second);
  }
  // Case default times beyond a shortened t_final are dropped.
  auto clip = [&](std::vector<double>& times) {
    std::erase_if(times, [&](double t) { return t > cfg.t_final; });
  };
  if (!entries.count("sample_times")) clip(cfg.sample_times);
  if (!entries.count("snapshot_times")) clip(cfg.snapshot_times);
  cfg.validate();
  return cfg;
}

CaseConfig parse_case_config_string(const std::string& text) {
  std::istringstream in(text);
  return parse_case_config(in);
}

CaseConfig load_case_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  return parse_case_config(in);
}

std::string format_case_config(const CaseConfig& c) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "case = " << to_string(c.kind) << '\n';
  os << "name = " << c.name << '\n';
  os << "N = " << c.n << '\n';
  os << "k = " << c.k << '\n';
  if (c.step.mode == StepControl::Mode::FixedDt) {
    os << "dt = " << c.step.dt << '\n';
  } else {
    os << "cfl = " << c.step.cfl << '\n';
  }
  os << "t_final = " << c.t_final << '\n';
  if (!c.sample_times.empty()) os << "sample_times = " << format_list(c.sample_times) << '\n';
  if (!c.snapshot_times.empty()) os << "snapshot_times = " << format_list(c.snapshot_times) << '\n';
  os << "kernel = " << to_string(c.kernel.family) << '\n';
  os << "W = " << c.kernel.half_width << '\n';
  os << "r = " << c.kernel.ratio << '\n';
  os << "hermite_order = " << c.kernel.hermite_order << '\n';
  os << "r_lp = " << c.restore_ratio << '\n';
  os << "filter = " << (c.filter ? "on" : "off") << '\n';
  os << "tv_growth = " << c.tv_growth << '\n';
  os << "thickness = " << c.thickness << '\n';
  os << "delta = " << c.delta << '\n';
  os << "epsilon = " << c.epsilon << '\n';
  os << "strength = " << c.strength << '\n';
  os << "eta = " << c.eta << '\n';
  os << "gamma = " << c.gamma << '\n';
  os << "speed = " << c.wave_speed << '\n';
  os << "positivity = " << (c.positivity == Positivity::Strict ? "strict" : "density") << '\n';
  os << "poisson_tol = " << c.poisson_tol << '\n';
  os << "poisson_operator = "
     << (c.poisson_operator == PoissonOperator::CompositeFirstDerivative ? "composite" : "second") << '\n';
  return os.str();
}

}  // namespace cfor
