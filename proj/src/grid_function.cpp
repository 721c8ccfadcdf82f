#include "factorized/grid_function.hpp"

#include <cmath>
#include <string>

#include "factorized/errors.hpp"
#include "factorized/kernels.hpp"

namespace factorized {

GridFunction::GridFunction(std::vector<double> values, double h) : values_(std::move(values)), h_(h) {
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw DimensionError("GridFunction: mesh width must be positive, got " + std::to_string(h));
  }
}

GridFunction GridFunction::zeros(std::size_t size, double h) {
  return GridFunction(std::vector<double>(size, 0.0), h);
}

bool GridFunction::compatible(const GridFunction& other) const {
  return values_.size() == other.values_.size() && h_ == other.h_;
}

GridFunction& GridFunction::operator+=(const GridFunction& other) { return add_scaled(1.0, other); }

GridFunction& GridFunction::operator-=(const GridFunction& other) { return add_scaled(-1.0, other); }

GridFunction& GridFunction::operator*=(double scale) {
  for (double& v : values_) v *= scale;
  return *this;
}

GridFunction& GridFunction::add_scaled(double alpha, const GridFunction& x) {
  require_compatible(*this, x, "GridFunction::add_scaled");
  kernels::parallel::axpy(alpha, x.values(), values_);
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }

GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }

GridFunction operator*(double scale, GridFunction a) { return a *= scale; }

void require_compatible(const GridFunction& v, const GridFunction& w, const char* where) {
  if (!v.compatible(w)) {
    throw DimensionError(std::string(where) + ": grid functions differ (sizes " +
                         std::to_string(v.size()) + " vs " + std::to_string(w.size()) +
                         ", h " + std::to_string(v.h()) + " vs " + std::to_string(w.h()) + ")");
  }
}

double inner_product(const GridFunction& v, const GridFunction& w) {
  require_compatible(v, w, "inner_product");
  return kernels::parallel::dot(v.values(), w.values()) * v.h();
}

double norm(const GridFunction& v) { return std::sqrt(inner_product(v, v)); }

}  // namespace factorized
