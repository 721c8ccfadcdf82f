#pragma once

// Dense reference computations used only by tests. Everything here goes
// through Eigen and never touches the banded/factorized solve paths.

#include <cmath>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "factorized/grid_function.hpp"
#include "factorized/spd_operator.hpp"

namespace factorized::oracle {

/// Dense matrix of an operator, assembled column by column from its action.
inline Eigen::MatrixXd dense(const SpdOperator& op) {
  const auto n = static_cast<Eigen::Index>(op.dimension());
  Eigen::MatrixXd m(n, n);
  std::vector<double> e(n, 0.0), col(n, 0.0);
  for (Eigen::Index j = 0; j < n; ++j) {
    std::fill(e.begin(), e.end(), 0.0);
    e[j] = 1.0;
    op.apply(e, col);
    for (Eigen::Index i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return m;
}

/// Dense tridiagonal model Laplacian written out directly from the stencil.
inline Eigen::MatrixXd model_laplacian(int M) {
  const int n = M - 1;
  const double inv_h2 = static_cast<double>(M) * M;
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    a(i, i) = 2.0 * inv_h2;
    if (i > 0) a(i, i - 1) = -inv_h2;
    if (i + 1 < n) a(i, i + 1) = -inv_h2;
  }
  return a;
}

struct EigenPairs {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXd vectors;  // columns, unit Euclidean norm
};

inline EigenPairs eigen_pairs(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

inline GridFunction to_grid(const Eigen::VectorXd& v, double h) {
  return GridFunction(std::vector<double>(v.data(), v.data() + v.size()), h);
}

inline Eigen::VectorXd to_eigen(const GridFunction& g) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(g.size()));
  for (std::size_t i = 0; i < g.size(); ++i) v[static_cast<Eigen::Index>(i)] = g[i];
  return v;
}

inline GridFunction random_grid(std::mt19937_64& rng, std::size_t n, double h) {
  std::normal_distribution<double> dist(0.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return GridFunction(std::move(v), h);
}

}  // namespace factorized::oracle
