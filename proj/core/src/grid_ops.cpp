#include "cfor/grid_ops.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <tuple>

#include "cfor/error.hpp"
#include "cfor/filters.hpp"

namespace cfor {

Differentiator::Differentiator(const KernelSpec& spec, Wrap wrap)
    : spec_(spec), first_(stencil(spec, 1)), second_(stencil(spec, 2)), wrap_(wrap) {}

Field Differentiator::d1(const Field& f, Axis axis) const { return apply_derivative(f, first_, axis, wrap_); }

Field Differentiator::d2(const Field& f, Axis axis) const { return apply_derivative(f, second_, axis, wrap_); }

Field Differentiator::operator()(const Field& f, Axis axis, int q) const {
  switch (q) {
    case 1: return d1(f, axis);
    case 2: return d2(f, axis);
    default: throw UnsupportedOrder(q);
  }
}

Field deriv(const Field& field, Axis axis, int q, const KernelSpec& spec, Wrap wrap) {
  if (q < 1 || q > 2) throw UnsupportedOrder(q);
  using Key = std::tuple<int, int, double, int, int>;
  static std::mutex mutex;
  static std::map<Key, StencilWeights> cache;
  const Key key{static_cast<int>(spec.family), spec.half_width, spec.ratio,
                spec.family == KernelFamily::Hermite ? spec.hermite_order : 0, q};
  const StencilWeights* weights = nullptr;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, stencil(spec, q)).first;
    weights = &it->second;
  }
  return apply_derivative(field, *weights, axis, wrap);
}

ErrorReport norms(const Field& numeric, const Field& exact, NormConvention convention) {
  if (!(numeric.grid() == exact.grid())) throw InvalidArgument("norms: shape mismatch");
  const Grid& g = numeric.grid();
  ErrorReport r;
  r.convention = convention;
  if (convention == NormConvention::Standard) {
    double s1 = 0.0, s2 = 0.0;
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      const double e = std::abs(numeric[k] - exact[k]);
      s1 += e;
      s2 += e * e;
      r.linf = std::max(r.linf, e);
    }
    const double m = static_cast<double>(numeric.size());
    r.l1 = s1 / m;
    r.l2 = std::sqrt(s2 / m);
    return r;
  }
  // Closed lattice i, j = 0..N where index N wraps to 0 on a periodic grid.
  if (g.nx != g.ny) throw InvalidArgument("VortexPaper norms need a square grid");
  const int n = g.nx;
  double s1 = 0.0, s2 = 0.0;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) {
      const double e = std::abs(numeric(i % n, j % n) - exact(i % n, j % n));
      s1 += e;
      s2 += e * e;
      r.linf = std::max(r.linf, e);
    }
  }
  const double np1 = n + 1.0;
  r.l1 = s1 / (np1 * np1);
  r.l2 = std::sqrt(s2) / np1;
  return r;
}

void write_snapshot_csv(std::ostream& out, const Field& field, const std::string& value_name) {
  const Grid& g = field.grid();
  const auto flags = out.flags();
  const auto precision = out.precision();
  out << std::setprecision(17);
  if (g.is_2d()) {
    out << "x,y," << value_name << '\n';
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) out << g.x(i) << ',' << g.y(j) << ',' << field(i, j) << '\n';
    }
  } else {
    out << "x," << value_name << '\n';
    for (int i = 0; i < g.nx; ++i) out << g.x(i) << ',' << field(i) << '\n';
  }
  out.flags(flags);
  out.precision(precision);
}

}  // namespace cfor
