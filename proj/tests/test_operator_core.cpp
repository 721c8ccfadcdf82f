#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "factorized/errors.hpp"
#include "factorized/heat_model.hpp"
#include "factorized/spd_operator.hpp"
#include "oracles.hpp"

using namespace factorized;

namespace {

GridFunction sampled(int M, double (*fn)(double)) {
  const double h = 1.0 / M;
  GridFunction g = GridFunction::zeros(static_cast<std::size_t>(M - 1), h);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = fn(static_cast<double>(i + 1) * h);
  return g;
}

// Same operator as build_operator(M) but only reachable through its action,
// so every solve goes through conjugate gradients.
MatrixFreeOperator matrix_free_laplacian(int M) {
  const double inv_h2 = static_cast<double>(M) * M;
  return MatrixFreeOperator(static_cast<std::size_t>(M - 1), [inv_h2](std::span<const double> in, std::span<double> out) {
    const std::size_t n = in.size();
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 2.0 * in[i];
      if (i > 0) acc -= in[i - 1];
      if (i + 1 < n) acc -= in[i + 1];
      out[i] = inv_h2 * acc;
    }
  });
}

double euclidean(const GridFunction& v) { return norm(v) / std::sqrt(v.h()); }

}  // namespace

// ---------------------------------------------------------------- inner_product

TEST(InnerProduct, OnesOnTenIntervals) {
  const GridFunction ones(std::vector<double>(9, 1.0), 0.1);
  EXPECT_NEAR(inner_product(ones, ones), 0.9, 1e-15);
}

TEST(InnerProduct, ZeroVector) {
  const GridFunction zero = GridFunction::zeros(4, 0.2);
  const GridFunction w({1.0, -2.0, 3.0, 4.0}, 0.2);
  EXPECT_EQ(inner_product(zero, w), 0.0);
}

TEST(InnerProduct, WeightedSum) {
  const GridFunction v({1.0, 2.0, 3.0}, 0.25);
  EXPECT_DOUBLE_EQ(inner_product(v, v), 3.5);
  EXPECT_DOUBLE_EQ(norm(v), std::sqrt(3.5));
}

TEST(InnerProduct, MismatchThrows) {
  const GridFunction a({1.0, 2.0, 3.0}, 0.25);
  EXPECT_THROW(inner_product(a, GridFunction({1.0, 2.0}, 0.25)), DimensionError);
  EXPECT_THROW(inner_product(a, GridFunction({1.0, 2.0, 3.0}, 0.5)), DimensionError);
  EXPECT_THROW(GridFunction({1.0}, 0.0), DimensionError);
}

// ---------------------------------------------------------------- apply

TEST(Apply, QuadraticMapsToConstantTwo) {
  for (int M : {2, 3, 4, 10, 37}) {
    const BandedOperator A = build_operator(M);
    const GridFunction u = sampled(M, [](double x) { return x * (1.0 - x); });
    const GridFunction au = apply(A, u);
    for (std::size_t i = 0; i < au.size(); ++i) EXPECT_NEAR(au[i], 2.0, 1e-12 * M * M) << "M=" << M;
  }
}

TEST(Apply, ZeroMapsToZero) {
  const BandedOperator A = build_operator(10);
  const GridFunction out = apply(A, GridFunction::zeros(9, 0.1));
  for (std::size_t i = 0; i < out.size(); ++i) EXPECT_EQ(out[i], 0.0);
}

TEST(Apply, SineModeIsEigenvectorWithOracleEigenvalue) {
  const BandedOperator A = build_operator(4);
  const auto pairs = oracle::eigen_pairs(oracle::model_laplacian(4));
  const GridFunction v = sampled(4, [](double x) { return std::sin(std::numbers::pi * x); });
  const GridFunction av = apply(A, v);
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(av[i], pairs.values[0] * v[i], 1e-10);
}

TEST(Apply, AllSineModesMatchOracle) {
  for (int M : {4, 10}) {
    const BandedOperator A = build_operator(M);
    const auto pairs = oracle::eigen_pairs(oracle::model_laplacian(M));
    for (int k = 1; k < M; ++k) {
      GridFunction v = GridFunction::zeros(static_cast<std::size_t>(M - 1), 1.0 / M);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sin(k * std::numbers::pi * (i + 1.0) / M);
      const GridFunction residual = apply(A, v) - pairs.values[k - 1] * v;
      EXPECT_LE(norm(residual), 1e-10 * pairs.values[k - 1] * norm(v)) << "M=" << M << " k=" << k;
    }
  }
}

TEST(Apply, DimensionMismatchThrows) {
  const BandedOperator A = build_operator(10);
  EXPECT_THROW(apply(A, GridFunction::zeros(8, 0.1)), DimensionError);
}

TEST(SpdOperatorProperty, SymmetricOverRandomPairs) {
  std::mt19937_64 rng(11);
  for (int M : {4, 10, 20}) {
    const BandedOperator A = build_operator(M);
    for (int trial = 0; trial < 100; ++trial) {
      const GridFunction v = oracle::random_grid(rng, A.dimension(), 1.0 / M);
      const GridFunction w = oracle::random_grid(rng, A.dimension(), 1.0 / M);
      const double lhs = inner_product(apply(A, v), w);
      const double rhs = inner_product(v, apply(A, w));
      // Relative to ||A|| ||v|| ||w||; the entries of A scale like M^2.
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * 4.0 * M * M * norm(v) * norm(w));
    }
  }
}

TEST(SpdOperatorProperty, PositiveDefiniteAboveLowerBound) {
  std::mt19937_64 rng(12);
  for (int M : {2, 4, 10, 50}) {
    const BandedOperator A = build_operator(M);
    const double delta = A.spectral_bounds()->lower;
    ASSERT_GT(delta, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
      const GridFunction v = oracle::random_grid(rng, A.dimension(), 1.0 / M);
      EXPECT_GE(inner_product(apply(A, v), v), delta * inner_product(v, v) * (1.0 - 1e-12));
    }
  }
}

TEST(SpdOperatorProperty, SpectralBoundsMatchOracle) {
  for (int M : {2, 4, 10, 33}) {
    const BandedOperator A = build_operator(M);
    const auto pairs = oracle::eigen_pairs(oracle::dense(A));
    EXPECT_NEAR(A.spectral_bounds()->lower, pairs.values[0], 1e-10 * pairs.values.maxCoeff());
    EXPECT_NEAR(A.spectral_bounds()->upper, pairs.values.maxCoeff(), 1e-10 * pairs.values.maxCoeff());
  }
}

// ---------------------------------------------------------------- solve_shifted

TEST(SolveShifted, ZeroShiftIsIdentity) {
  const BandedOperator A = build_operator(10);
  const GridFunction rhs({1, 2, 3, 4, 5, 6, 7, 8, 9}, 0.1);
  const GridFunction x = solve_shifted(A, 0.0, rhs);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i], rhs[i]);
}

TEST(SolveShifted, RoundTripRandom) {
  std::mt19937_64 rng(21);
  const BandedOperator A = build_operator(10);
  for (double c : {1e-4, 0.01, 0.05, 1.0, 100.0}) {
    for (int trial = 0; trial < 20; ++trial) {
      const GridFunction w = oracle::random_grid(rng, 9, 0.1);
      const GridFunction rhs = w + c * apply(A, w);
      const GridFunction x = solve_shifted(A, c, rhs);
      EXPECT_LE(norm(x - w), 1e-10 * norm(w)) << "c=" << c;
      const GridFunction residual = rhs - (x + c * apply(A, x));
      EXPECT_LE(norm(residual), kShiftedSolveRtol * norm(rhs));
    }
  }
}

TEST(SolveShifted, EigenvectorScaling) {
  const BandedOperator A = build_operator(4);
  const auto pairs = oracle::eigen_pairs(oracle::model_laplacian(4));
  const double c = 0.01;
  for (int k = 0; k < 3; ++k) {
    const GridFunction v = oracle::to_grid(pairs.vectors.col(k), 0.25);
    const GridFunction x = solve_shifted(A, c, v);
    const GridFunction expected = (1.0 / (1.0 + c * pairs.values[k])) * v;
    EXPECT_LE(norm(x - expected), 1e-12 * norm(v));
  }
}

TEST(SolveShifted, NegativeShiftRejected) {
  const BandedOperator A = build_operator(4);
  EXPECT_THROW(solve_shifted(A, -0.1, GridFunction::zeros(3, 0.25)), ConfigError);
}

TEST(SolveShifted, IndefiniteBandBreaksDown) {
  SymmetricBand band(3, 1);
  for (double& d : band.diagonal(0)) d = -2.0;
  const BandedOperator negative(band);
  EXPECT_THROW(solve_shifted(negative, 1.0, GridFunction({1.0, 1.0, 1.0}, 0.25)), NumericalError);
}

TEST(SolveShifted, MatrixFreeFallbackAgreesWithBanded) {
  std::mt19937_64 rng(22);
  const BandedOperator banded = build_operator(16);
  const MatrixFreeOperator free = matrix_free_laplacian(16);
  ASSERT_EQ(free.band(), nullptr);
  for (double c : {0.001, 0.03, 0.5}) {
    const GridFunction rhs = oracle::random_grid(rng, 15, 1.0 / 16);
    const GridFunction a = solve_shifted(banded, c, rhs);
    const GridFunction b = solve_shifted(free, c, rhs);
    EXPECT_LE(norm(a - b), 1e-10 * norm(a));
  }
}

TEST(SolveShifted, MatrixFreeIndefiniteBreaksDown) {
  const MatrixFreeOperator negative(3, [](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = -5.0 * in[i];
  });
  EXPECT_THROW(solve_shifted(negative, 1.0, GridFunction({1.0, 2.0, 3.0}, 0.25)), NumericalError);
}

// ---------------------------------------------------------------- solve_polynomial

TEST(SolvePolynomial, IdentityPolynomial) {
  const BandedOperator A = build_operator(10);
  const GridFunction rhs({9, 8, 7, 6, 5, 4, 3, 2, 1}, 0.1);
  const GridFunction x = solve_polynomial(OperatorPolynomial(A, {1.0, 0.0, 0.0}), rhs);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(x[i], rhs[i], 1e-15);
}

TEST(SolvePolynomial, TaylorQuadraticRoundTrip) {
  std::mt19937_64 rng(31);
  const BandedOperator A = build_operator(10);
  for (double tau : {0.0125, 0.05, 0.5}) {
    const OperatorPolynomial q(A, {1.0, tau, 0.5 * tau * tau});
    for (int trial = 0; trial < 10; ++trial) {
      const GridFunction w = oracle::random_grid(rng, 9, 0.1);
      const GridFunction rhs = q.apply(w);
      const GridFunction x = solve_polynomial(q, rhs);
      EXPECT_LE(norm(x - w), 1e-10 * norm(w)) << "tau=" << tau;
      EXPECT_LE(norm(q.apply(x) - rhs), kPolynomialSolveRtol * norm(rhs));
    }
  }
}

TEST(SolvePolynomial, EigenvectorScaling) {
  const BandedOperator A = build_operator(4);
  const auto pairs = oracle::eigen_pairs(oracle::model_laplacian(4));
  const double tau = 0.05;
  const OperatorPolynomial q(A, {1.0, tau, 0.5 * tau * tau});
  for (int k = 0; k < 3; ++k) {
    const GridFunction v = oracle::to_grid(pairs.vectors.col(k), 0.25);
    const double z = tau * pairs.values[k];
    const GridFunction x = solve_polynomial(q, v);
    EXPECT_LE(norm(x - (1.0 / (1.0 + z + 0.5 * z * z)) * v), 1e-12 * norm(v));
    EXPECT_NEAR(q.symbol(pairs.values[k]), 1.0 + z + 0.5 * z * z, 1e-12);
  }
}

TEST(SolvePolynomial, BandPolynomialMatchesDense) {
  const BandedOperator A = build_operator(8);
  const Eigen::MatrixXd a = oracle::dense(A);
  const double c[] = {2.0, -0.3, 0.01, 1e-4};
  const SymmetricBand p = A.band()->polynomial(c);
  const Eigen::MatrixXd expected = c[0] * Eigen::MatrixXd::Identity(7, 7) + c[1] * a + c[2] * a * a + c[3] * a * a * a;
  EXPECT_EQ(p.bandwidth(), 3u);
  for (int i = 0; i < 7; ++i) {
    for (int j = 0; j < 7; ++j) EXPECT_NEAR(p.at(i, j), expected(i, j), 1e-10 * expected.cwiseAbs().maxCoeff());
  }
}

TEST(SolvePolynomial, IndefiniteSymbolThrows) {
  const BandedOperator A = build_operator(10);
  const GridFunction rhs(std::vector<double>(9, 1.0), 0.1);
  // 1 - A/100 is negative on the upper part of the spectrum (lambda_max ~ 390).
  EXPECT_THROW(solve_polynomial(OperatorPolynomial(A, {1.0, -0.01}), rhs), NumericalError);
  const MatrixFreeOperator free = matrix_free_laplacian(10);
  EXPECT_THROW(solve_polynomial(OperatorPolynomial(free, {1.0, -0.01}), rhs), NumericalError);
}

TEST(SolvePolynomial, MatrixFreeFallbackAgreesWithBanded) {
  std::mt19937_64 rng(32);
  const BandedOperator banded = build_operator(12);
  const MatrixFreeOperator free = matrix_free_laplacian(12);
  const double tau = 0.02;
  const std::vector<double> c = {1.0, tau, 0.5 * tau * tau};
  const GridFunction rhs = oracle::random_grid(rng, 11, 1.0 / 12);
  const GridFunction a = solve_polynomial(OperatorPolynomial(banded, c), rhs);
  const GridFunction b = solve_polynomial(OperatorPolynomial(free, c), rhs);
  EXPECT_LE(norm(a - b), 1e-9 * norm(a));
}

// ---------------------------------------------------------------- band Cholesky

TEST(BandCholesky, MatchesDenseSolveOnRandomSpdBand) {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  const std::size_t n = 25;
  for (std::size_t bw : {0u, 1u, 2u, 4u}) {
    SymmetricBand band(n, bw);
    for (std::size_t d = 1; d <= bw; ++d) {
      for (double& x : band.diagonal(d)) x = dist(rng);
    }
    for (double& x : band.diagonal(0)) x = 2.0 * bw + 1.0 + std::abs(dist(rng));  // diagonally dominant
    Eigen::MatrixXd dense(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) dense(i, j) = band.at(i, j);
    }
    Eigen::VectorXd b = Eigen::VectorXd::Random(n);
    const Eigen::VectorXd expected = dense.ldlt().solve(b);
    std::vector<double> x(b.data(), b.data() + n);
    BandCholesky(band).solve_in_place(x);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(x[i], expected[i], 1e-12) << "bw=" << bw;
  }
}
