#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace factorized {

/// Values of a grid function at the interior nodes of a uniform mesh with
/// width h. Boundary values are eliminated (homogeneous Dirichlet).
///
/// The weighted inner product is (v, w) = sum_i v_i w_i h.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(std::vector<double> values, double h);

  static GridFunction zeros(std::size_t size, double h);

  std::size_t size() const { return values_.size(); }
  double h() const { return h_; }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  /// Same length and same mesh width.
  bool compatible(const GridFunction& other) const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(double scale);

  /// this += alpha * x
  GridFunction& add_scaled(double alpha, const GridFunction& x);

 private:
  std::vector<double> values_;
  double h_ = 1.0;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double scale, GridFunction a);

/// Throws DimensionError unless v and w share length and mesh width.
void require_compatible(const GridFunction& v, const GridFunction& w, const char* where);

double inner_product(const GridFunction& v, const GridFunction& w);
double norm(const GridFunction& v);

}  // namespace factorized
