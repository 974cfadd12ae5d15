#pragma once

#include <iosfwd>
#include <string>

#include "cfor/field.hpp"
#include "cfor/filters.hpp"
#include "cfor/kernels.hpp"

namespace cfor {

/// DSC differentiation with the q = 1 and q = 2 stencils of one kernel built once.
class Differentiator {
 public:
  explicit Differentiator(const KernelSpec& spec, Wrap wrap = Wrap::Reject);

  const KernelSpec& spec() const { return spec_; }
  const StencilWeights& first() const { return first_; }
  const StencilWeights& second() const { return second_; }
  Wrap wrap() const { return wrap_; }

  Field d1(const Field& f, Axis axis) const;
  Field d2(const Field& f, Axis axis) const;
  Field operator()(const Field& f, Axis axis, int q) const;

 private:
  KernelSpec spec_;
  StencilWeights first_;
  StencilWeights second_;
  Wrap wrap_;
};

/// Derivative of order q in {1, 2} along `axis`; stencils are cached per kernel spec.
Field deriv(const Field& field, Axis axis, int q, const KernelSpec& spec, Wrap wrap = Wrap::Reject);

enum class NormConvention {
  /// L1 = mean |e|, L2 = sqrt(mean e^2), Linf = max |e| over the M stored points.
  Standard,
  /// Sums over the (N+1) x (N+1) closed periodic lattice (first row/column repeated):
  /// L1 = sum |e| / (N+1)^2, L2 = sqrt(sum e^2) / (N+1).
  VortexPaper,
};

struct ErrorReport {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
  NormConvention convention = NormConvention::Standard;
};

ErrorReport norms(const Field& numeric, const Field& exact,
                  NormConvention convention = NormConvention::Standard);

/// Writes "x[,y],value" rows with 17 significant digits.
void write_snapshot_csv(std::ostream& out, const Field& field, const std::string& value_name = "value");

}  // namespace cfor
