//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/kernels.hpp"

#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace srgw::kernels {

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void set_max_threads(int n) {
#ifdef _OPENMP
  if (n >= 1)
    omp_set_num_threads(n);
#else
  (void)n;
#endif
}

namespace serial {

void tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t, Matrix &out) {
  const Index n = c.rows();
  const Index m = cbar.rows();
  Vector p = Vector::Zero(n);
  Vector q = Vector::Zero(m);
  for (Index j = 0; j < n; ++j)
    for (Index l = 0; l < m; ++l) {
      p(j) += t(j, l);
      q(l) += t(j, l);
    }

  Vector a = Vector::Zero(n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j)
      a(i) += c(i, j) * c(i, j) * p(j);
  Vector b = Vector::Zero(m);
  for (Index k = 0; k < m; ++k)
    for (Index l = 0; l < m; ++l)
      b(k) += cbar(k, l) * cbar(k, l) * q(l);

  // W = T Cbar^T, then C W
  Matrix w = Matrix::Zero(n, m);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < m; ++k)
      for (Index l = 0; l < m; ++l)
        w(j, k) += t(j, l) * cbar(k, l);

  out.resize(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < m; ++k) {
      double u = 0.0;
      for (Index j = 0; j < n; ++j)
        u += c(i, j) * w(j, k);
      out(i, k) = a(i) + b(k) - 2.0 * u;
    }
}

std::vector<Index> row_argmin_plan(const Matrix &cost, const Vector &h, Matrix &x) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  x.setZero(n, m);
  std::vector<Index> arg(static_cast<std::size_t>(n), 0);
  for (Index i = 0; i < n; ++i) {
    Index best = 0;
    for (Index k = 1; k < m; ++k)
      if (cost(i, k) < cost(i, best))
        best = k;
    arg[static_cast<std::size_t>(i)] = best;
    x(i, best) = h(i);
  }
  return arg;
}

void sq_distances(const Matrix &f, const Matrix &fbar, Matrix &out) {
  const Index n = f.rows();
  const Index m = fbar.rows();
  const Index d = f.cols();
  out.resize(n, m);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < m; ++j) {
      double ff = 0.0, gg = 0.0, fg = 0.0;
      for (Index r = 0; r < d; ++r) {
        ff += f(i, r) * f(i, r);
        gg += fbar(j, r) * fbar(j, r);
        fg += f(i, r) * fbar(j, r);
      }
      out(i, j) = ff + gg - 2.0 * fg;
    }
}

double dot(const Matrix &a, const Matrix &b) {
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      s += a(i, j) * b(i, j);
  return s;
}

}  // namespace serial

namespace parallel {

// All reductions below are per row with a fixed order, so results do not
// depend on the thread count.

void tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t, Matrix &out) {
  const Index n = c.rows();
  const Index m = cbar.rows();
  const Vector p = t.rowwise().sum();
  const Vector q = t.colwise().sum().transpose();
  const Matrix cbar_sq = cbar.array().square().matrix();
  const Vector b = cbar_sq * q;

  Matrix w(n, m);
#pragma omp parallel for schedule(static)
  for (Index j = 0; j < n; ++j)
    w.row(j).noalias() = t.row(j) * cbar.transpose();

  out.resize(n, m);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    double a = 0.0;
    Eigen::RowVectorXd u = Eigen::RowVectorXd::Zero(m);
    for (Index j = 0; j < n; ++j) {
      const double cij = c(i, j);
      if (cij == 0.0)
        continue;
      a += cij * cij * p(j);
      u.noalias() += cij * w.row(j);
    }
    out.row(i) = (a + b.transpose().array() - 2.0 * u.array()).matrix();
  }
}

std::vector<Index> row_argmin_plan(const Matrix &cost, const Vector &h, Matrix &x) {
  const Index n = cost.rows();
  const Index m = cost.cols();
  x.setZero(n, m);
  std::vector<Index> arg(static_cast<std::size_t>(n), 0);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    const double *row = cost.data() + i * m;
    Index best = 0;
    for (Index k = 1; k < m; ++k)
      if (row[k] < row[best])
        best = k;
    arg[static_cast<std::size_t>(i)] = best;
    x(i, best) = h(i);
  }
  return arg;
}

void sq_distances(const Matrix &f, const Matrix &fbar, Matrix &out) {
  const Index n = f.rows();
  const Index m = fbar.rows();
  const Vector fn = f.rowwise().squaredNorm();
  const Vector gn = fbar.rowwise().squaredNorm();
  out.resize(n, m);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i) {
    out.row(i).noalias() = -2.0 * f.row(i) * fbar.transpose();
    out.row(i).array() += fn(i) + gn.transpose().array();
  }
}

double dot(const Matrix &a, const Matrix &b) {
  const Index n = a.rows();
  Vector partial(n);
#pragma omp parallel for schedule(static)
  for (Index i = 0; i < n; ++i)
    partial(i) = a.row(i).dot(b.row(i));
  double s = 0.0;
  for (Index i = 0; i < n; ++i)
    s += partial(i);
  return s;
}

}  // namespace parallel

}  // namespace srgw::kernels
