#include "cfor/field.hpp"

#include <algorithm>
#include <cmath>

#include "cfor/error.hpp"

namespace cfor {

namespace {

void check_same_grid(const Field& a, const Field& b) {
  if (!(a.grid() == b.grid())) throw InvalidArgument("field grid mismatch");
}

}  // namespace

Grid Grid::line(int n, double dx, double x0) {
  if (n < 1 || !(dx > 0.0)) throw InvalidArgument("invalid 1D grid");
  return Grid{n, 1, dx, 1.0, x0, 0.0};
}

Grid Grid::plane(int nx, int ny, double dx, double dy, double x0, double y0) {
  if (nx < 1 || ny < 1 || !(dx > 0.0) || !(dy > 0.0)) throw InvalidArgument("invalid 2D grid");
  return Grid{nx, ny, dx, dy, x0, y0};
}

Field::Field(const Grid& grid, double fill) : grid_(grid), data_(grid.size(), fill) {}

bool Field::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return std::isfinite(v); });
}

double Field::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

double Field::sum() const {
  double s = 0.0;
  for (double v : data_) s += v;
  return s;
}

double Field::min() const { return *std::min_element(data_.begin(), data_.end()); }
double Field::max() const { return *std::max_element(data_.begin(), data_.end()); }

Field& Field::operator+=(const Field& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

Field& Field::operator-=(const Field& other) {
  check_same_grid(*this, other);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

Field& Field::operator*=(double a) {
  for (double& v : data_) v *= a;
  return *this;
}

Field& Field::axpy(double a, const Field& x) {
  check_same_grid(*this, x);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += a * x.data_[k];
  return *this;
}

Field multiply(const Field& a, const Field& b) {
  check_same_grid(a, b);
  Field out(a.grid());
  for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] * b[k];
  return out;
}

Field shift(const Field& f, int di, int dj) {
  const Grid& g = f.grid();
  Field out(g);
  for (int j = 0; j < g.ny; ++j) {
    const int js = ((j - dj) % g.ny + g.ny) % g.ny;
    for (int i = 0; i < g.nx; ++i) {
      const int is = ((i - di) % g.nx + g.nx) % g.nx;
      out(i, j) = f(is, js);
    }
  }
  return out;
}

void axpy(double a, const FieldSet& x, FieldSet& y) {
  if (x.size() != y.size()) throw InvalidArgument("field set size mismatch");
  for (std::size_t c = 0; c < x.size(); ++c) y[c].axpy(a, x[c]);
}

FieldSet linear_combination(double a, const FieldSet& x, double b, const FieldSet& y) {
  if (x.size() != y.size()) throw InvalidArgument("field set size mismatch");
  FieldSet out;
  out.reserve(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    Field f = x[c];
    f *= a;
    f.axpy(b, y[c]);
    out.push_back(std::move(f));
  }
  return out;
}

bool all_finite(const FieldSet& s) {
  return std::all_of(s.begin(), s.end(), [](const Field& f) { return f.all_finite(); });
}

}  // namespace cfor
