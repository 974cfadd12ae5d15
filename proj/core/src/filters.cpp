#include "cfor/filters.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cfor/error.hpp"

namespace cfor {

namespace {

// out_i = scale * sum_k w_k in_{(i + first + k) mod n} along axis.
void convolve_periodic(const Field& in, std::span<const double> w, int first, Axis axis,
                       double scale, Field& out) {
  const Grid& g = in.grid();
  const int n = g.extent(axis);
  const int taps = static_cast<int>(w.size());
  std::vector<double> ws(w.begin(), w.end());
  for (double& v : ws) v *= scale;

  if (axis == Axis::X) {
    std::vector<double> pad(static_cast<std::size_t>(n + taps));
    for (int j = 0; j < g.ny; ++j) {
      auto src = in.row(j);
      for (int p = 0; p < n + taps; ++p) {
        const int idx = ((p + first) % n + n) % n;
        pad[static_cast<std::size_t>(p)] = src[static_cast<std::size_t>(idx)];
      }
      // Tap-outer order vectorizes over i and adds the taps in the same order as the y pass.
      double* dst = out.row(j).data();
      std::fill(dst, dst + n, 0.0);
      for (int k = 0; k < taps; ++k) {
        const double wk = ws[static_cast<std::size_t>(k)];
        const double* src = pad.data() + k;
        for (int i = 0; i < n; ++i) dst[i] += wk * src[i];
      }
    }
  } else {
    const int nx = g.nx;
    for (int j = 0; j < n; ++j) {
      auto dst = out.row(j);
      std::fill(dst.begin(), dst.end(), 0.0);
      for (int k = 0; k < taps; ++k) {
        const int js = ((j + first + k) % n + n) % n;
        const double wk = ws[static_cast<std::size_t>(k)];
        auto src = in.row(js);
        for (int i = 0; i < nx; ++i) {
          dst[static_cast<std::size_t>(i)] += wk * src[static_cast<std::size_t>(i)];
        }
      }
    }
  }
}

void require_extent(const Field& f, Axis axis, int half_width, Wrap wrap) {
  const int n = f.grid().extent(axis);
  if (wrap == Wrap::Reject && n < 2 * half_width + 1) throw GridTooSmall(n, half_width);
}

}  // namespace

Field apply_derivative(const Field& field, const StencilWeights& weights, Axis axis, Wrap wrap) {
  if (weights.half_grid()) throw InvalidArgument("derivative needs an on-grid stencil");
  require_extent(field, axis, weights.half_width(), wrap);
  const double scale =
      weights.includes_delta_scaling() ? 1.0 : 1.0 / std::pow(field.grid().spacing(axis), weights.order());
  Field out(field.grid());
  convolve_periodic(field, weights.weights(), -weights.half_width(), axis, scale, out);
  return out;
}

ConjugateFilterBank::ConjugateFilterBank(const KernelSpec& highpass, double restore_ratio)
    : highpass_spec_(highpass),
      restore_ratio_(restore_ratio),
      highpass_(stencil(highpass, 1)),
      predict_(halfgrid_stencil(highpass)),
      restore_([&] {
        if (!(restore_ratio > 0.0) || restore_ratio > highpass.ratio) {
          throw InvalidArgument("restoration ratio must satisfy 0 < r_lp <= r_hp");
        }
        KernelSpec lp = highpass;
        lp.ratio = restore_ratio;
        return halfgrid_stencil(lp);
      }()) {}

Field apply_conjugate_lowpass(const Field& field, const ConjugateFilterBank& bank, Axis axis, Wrap wrap) {
  const int w = bank.predict().half_width();
  require_extent(field, axis, w, wrap);
  // Midpoint i+1/2 is stored at index i: m_i = sum_j p_j f_{i+j+1}, j = -W..W-1.
  Field mid(field.grid());
  convolve_periodic(field, bank.predict().weights(), -w + 1, axis, 1.0, mid);
  // out_i = sum_j r_j m_{i+j}, j = -W..W-1.
  Field out(field.grid());
  convolve_periodic(mid, bank.restore().weights(), -w, axis, 1.0, out);
  return out;
}

Field apply_conjugate_lowpass(const Field& field, const ConjugateFilterBank& bank, Wrap wrap) {
  Field out = apply_conjugate_lowpass(field, bank, Axis::X, wrap);
  if (field.grid().is_2d()) out = apply_conjugate_lowpass(out, bank, Axis::Y, wrap);
  return out;
}

double total_variation(std::span<const double> line, bool periodic) {
  double tv = 0.0;
  for (std::size_t i = 0; i + 1 < line.size(); ++i) tv += std::abs(line[i + 1] - line[i]);
  if (periodic && line.size() > 1) tv += std::abs(line.front() - line.back());
  return tv;
}

double total_variation(const Field& field) {
  const Grid& g = field.grid();
  double tv = 0.0;
  for (int j = 0; j < g.ny; ++j) tv += total_variation(field.row(j), true);
  if (g.is_2d()) {
    for (int j = 0; j < g.ny; ++j) {
      auto a = field.row(j);
      auto b = field.row((j + 1) % g.ny);
      for (int i = 0; i < g.nx; ++i) {
        tv += std::abs(b[static_cast<std::size_t>(i)] - a[static_cast<std::size_t>(i)]);
      }
    }
  }
  return tv;
}

bool tv_switch_decide(double tv_current, double tv_reference, const TvPolicy& policy) {
  return tv_current > (1.0 + policy.relative_growth) * tv_reference;
}

}  // namespace cfor
