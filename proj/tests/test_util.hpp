//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <functional>
#include <random>

#include "srgw/types.hpp"

namespace srgw::testing {

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64 &rng, double lo = 0.0,
                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      m(i, j) = u(rng);
  return m;
}

inline Matrix random_symmetric(Index n, std::mt19937_64 &rng) {
  const Matrix a = random_matrix(n, n, rng);
  return 0.5 * (a + a.transpose());
}

inline Matrix random_adjacency(Index n, double p, std::mt19937_64 &rng) {
  std::bernoulli_distribution b(p);
  Matrix a = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      if (b(rng))
        a(i, j) = a(j, i) = 1.0;
  return a;
}

inline Vector random_simplex(Index n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  Vector v(n);
  for (Index i = 0; i < n; ++i)
    v(i) = u(rng);
  return v / v.sum();
}

/// Strictly positive coupling with rows summing to h.
inline Matrix random_coupling(const Vector &h, Index m, std::mt19937_64 &rng) {
  Matrix t = random_matrix(h.size(), m, rng, 0.1, 1.0);
  for (Index i = 0; i < t.rows(); ++i)
    t.row(i) *= h(i) / t.row(i).sum();
  return t;
}

/// Central differences of f at x, entry by entry.
inline Matrix finite_difference(const std::function<double(const Matrix &)> &f, const Matrix &x,
                                double step = 1e-6) {
  Matrix g(x.rows(), x.cols());
  Matrix xp = x;
  for (Index i = 0; i < x.rows(); ++i)
    for (Index j = 0; j < x.cols(); ++j) {
      const double orig = xp(i, j);
      xp(i, j) = orig + step;
      const double fp = f(xp);
      xp(i, j) = orig - step;
      const double fm = f(xp);
      xp(i, j) = orig;
      g(i, j) = (fp - fm) / (2.0 * step);
    }
  return g;
}

inline double relative_error(const Matrix &a, const Matrix &b) {
  return (a - b).norm() / std::max(1e-12, b.norm());
}

}  // namespace srgw::testing
