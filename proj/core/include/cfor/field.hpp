#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cfor {

enum class Axis { X = 0, Y = 1 };

/// Uniform periodic grid, 1D (ny == 1) or 2D. Point (i, j) sits at (x0 + i dx, y0 + j dy).
struct Grid {
  int nx = 1;
  int ny = 1;
  double dx = 1.0;
  double dy = 1.0;
  double x0 = 0.0;
  double y0 = 0.0;

  static Grid line(int n, double dx, double x0 = 0.0);
  static Grid plane(int nx, int ny, double dx, double dy, double x0 = 0.0, double y0 = 0.0);

  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  bool is_2d() const { return ny > 1; }
  double x(int i) const { return x0 + i * dx; }
  double y(int j) const { return y0 + j * dy; }
  int extent(Axis a) const { return a == Axis::X ? nx : ny; }
  double spacing(Axis a) const { return a == Axis::X ? dx : dy; }

  friend bool operator==(const Grid&, const Grid&) = default;
};

/// Scalar samples on a Grid, stored x-fastest.
class Field {
 public:
  Field() = default;
  explicit Field(const Grid& grid, double fill = 0.0);

  template <class F>
  static Field sample(const Grid& grid, F&& f) {
    Field out(grid);
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) out(i, j) = f(grid.x(i), grid.y(j));
    }
    return out;
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j = 0) { return data_[index(i, j)]; }
  double operator()(int i, int j = 0) const { return data_[index(i, j)]; }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> values() { return data_; }
  std::span<const double> values() const { return data_; }
  std::span<double> row(int j) { return std::span<double>(data_).subspan(index(0, j), grid_.nx); }
  std::span<const double> row(int j) const {
    return std::span<const double>(data_).subspan(index(0, j), grid_.nx);
  }

  bool all_finite() const;
  double max_abs() const;
  double sum() const;
  double min() const;
  double max() const;

  Field& operator+=(const Field& other);
  Field& operator-=(const Field& other);
  Field& operator*=(double a);
  /// this += a * x
  Field& axpy(double a, const Field& x);

  friend Field operator+(Field a, const Field& b) { return a += b; }
  friend Field operator-(Field a, const Field& b) { return a -= b; }
  friend Field operator*(double a, Field f) { return f *= a; }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) + static_cast<std::size_t>(grid_.nx) * static_cast<std::size_t>(j);
  }

  Grid grid_;
  std::vector<double> data_;
};

/// Pointwise product.
Field multiply(const Field& a, const Field& b);

/// Periodic shift: out(i, j) = f(i - di, j - dj).
Field shift(const Field& f, int di, int dj = 0);

/// An ordered collection of fields advanced together by the time integrators.
using FieldSet = std::vector<Field>;

/// y += a * x, component-wise.
void axpy(double a, const FieldSet& x, FieldSet& y);
/// Returns a * x + b * y.
FieldSet linear_combination(double a, const FieldSet& x, double b, const FieldSet& y);
bool all_finite(const FieldSet& s);

}  // namespace cfor
