#pragma once

// High-pass (derivative) and conjugate low-pass filtering on periodic fields.
//
// The low-pass is realized as prediction to the half-grid followed by restoration back to
// the grid. Prediction uses the high-pass kernel parameters, restoration a smaller ratio r,
// so both filters share the kernel family and the 2W+1 support of the derivative stencil.

#include <span>

#include "cfor/field.hpp"
#include "cfor/kernels.hpp"

namespace cfor {

/// Grids shorter than the stencil: Reject throws GridTooSmall, Alias wraps the taps around
/// the periodic axis so several offsets land on one point.
enum class Wrap { Reject, Alias };

/// out_i = dx^-q sum_j w_j f_{(i+j) mod N} along `axis`. Reject requires N >= 2W+1.
Field apply_derivative(const Field& field, const StencilWeights& weights, Axis axis, Wrap wrap = Wrap::Reject);

class ConjugateFilterBank {
 public:
  /// `highpass` fixes family, W, n and r_hp; `restore_ratio` is r_lp <= r_hp.
  ConjugateFilterBank(const KernelSpec& highpass, double restore_ratio);

  const KernelSpec& highpass_spec() const { return highpass_spec_; }
  double restore_ratio() const { return restore_ratio_; }
  const StencilWeights& highpass() const { return highpass_; }
  const StencilWeights& predict() const { return predict_; }
  const StencilWeights& restore() const { return restore_; }

 private:
  KernelSpec highpass_spec_;
  double restore_ratio_;
  StencilWeights highpass_;
  StencilWeights predict_;
  StencilWeights restore_;
};

/// Prediction to midpoints then restoration, along one axis.
Field apply_conjugate_lowpass(const Field& field, const ConjugateFilterBank& bank, Axis axis,
                              Wrap wrap = Wrap::Reject);

/// Dimension-by-dimension low-pass: x pass, then y pass for 2D fields.
Field apply_conjugate_lowpass(const Field& field, const ConjugateFilterBank& bank, Wrap wrap = Wrap::Reject);

/// sum |f_{i+1} - f_i| with periodic closure; 2D sums the 1D variations along both axes.
double total_variation(const Field& field);

/// Total variation of a line of samples, optionally closing the loop.
double total_variation(std::span<const double> line, bool periodic);

struct TvPolicy {
  /// Relative growth over the reference that activates the low-pass.
  double relative_growth = 0.01;
};

/// True iff tv_current > (1 + relative_growth) * tv_reference.
bool tv_switch_decide(double tv_current, double tv_reference, const TvPolicy& policy);

/// Holds the reference variation between filtering events.
class TvSwitch {
 public:
  TvSwitch(double initial_reference, TvPolicy policy = {})
      : reference_(initial_reference), policy_(policy) {}

  bool should_filter(double tv_current) const {
    return tv_switch_decide(tv_current, reference_, policy_);
  }
  /// Records the post-filter variation as the new reference.
  void rearm(double tv_after) { reference_ = tv_after; }

  double reference() const { return reference_; }
  const TvPolicy& policy() const { return policy_; }

 private:
  double reference_;
  TvPolicy policy_;
};

}  // namespace cfor
