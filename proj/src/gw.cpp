//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/gw.hpp"

#include <cmath>

#include <fmt/format.h>

#include "srgw/kernels.hpp"

namespace srgw {

using detail::require;

Coupling::Coupling(Matrix plan, Vector first_marginal, double tol)
    : plan_(std::move(plan)), h_(std::move(first_marginal)) {
  require(plan_.rows() == h_.size(), "coupling rows must match the first marginal");
  require(plan_.allFinite(), "coupling has non-finite entries");
  require((plan_.array() >= 0.0).all(), "coupling must be entrywise nonnegative");
  const double err = marginal_error(plan_, h_);
  require(err <= tol, fmt::format("coupling row sums deviate from h by {:.3e}", err));
}

double Coupling::marginal_error(const Matrix &plan, const Vector &h) {
  if (plan.rows() == 0)
    return 0.0;
  return (plan.rowwise().sum() - h).cwiseAbs().maxCoeff();
}

namespace detail {

void check_tensor_shapes(const Matrix &c, const Matrix &cbar, const Matrix &t) {
  require(c.rows() == c.cols(), "C must be square");
  require(cbar.rows() == cbar.cols(), "Cbar must be square");
  require(t.rows() == c.rows() && t.cols() == cbar.rows(),
          fmt::format("T is {}x{} but C is {}x{} and Cbar is {}x{}", t.rows(), t.cols(), c.rows(),
                      c.cols(), cbar.rows(), cbar.cols()));
}

Matrix tensor_product_signed(const Matrix &c, const Matrix &cbar, const Matrix &t) {
  check_tensor_shapes(c, cbar, t);
  Matrix out;
  kernels::parallel::tensor_product(c, cbar, t, out);
  return out;
}

}  // namespace detail

Matrix gw_tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t) {
  Matrix out = detail::tensor_product_signed(c, cbar, t);
  if ((t.array() >= 0.0).all())
    out = out.cwiseMax(0.0);
  return out;
}

double gw_loss(const Matrix &c, const Matrix &cbar, const Matrix &t) {
  return std::max(0.0, kernels::parallel::dot(gw_tensor_product(c, cbar, t), t));
}

Matrix gw_gradient(const Matrix &c, const Matrix &cbar, const Matrix &t, bool assume_symmetric) {
  if (assume_symmetric) {
    require(is_symmetric(c) && is_symmetric(cbar),
            "assume_symmetric set but C or Cbar is not symmetric");
    return 2.0 * detail::tensor_product_signed(c, cbar, t);
  }
  const Matrix ct = c.transpose();
  const Matrix cbart = cbar.transpose();
  return detail::tensor_product_signed(c, cbar, t) + detail::tensor_product_signed(ct, cbart, t);
}

Matrix feature_distance_matrix(const Matrix &f, const Matrix &fbar) {
  require(f.cols() == fbar.cols(),
          fmt::format("feature dimensions differ: {} vs {}", f.cols(), fbar.cols()));
  Matrix out;
  kernels::parallel::sq_distances(f, fbar, out);
  return out.cwiseMax(0.0);
}

namespace {

void check_alpha(double alpha) {
  require(alpha >= 0.0 && alpha <= 1.0, fmt::format("alpha = {} outside [0, 1]", alpha));
}

}  // namespace

double fgw_loss(const Matrix &c, const Matrix &f, const Matrix &cbar, const Matrix &fbar,
                const Matrix &t, double alpha) {
  check_alpha(alpha);
  const Matrix m = feature_distance_matrix(f, fbar);
  require(m.rows() == t.rows() && m.cols() == t.cols(), "feature matrices do not match T");
  const double lin = kernels::parallel::dot(m, t);
  const double quad = gw_loss(c, cbar, t);
  return (1.0 - alpha) * lin + alpha * quad;
}

Matrix fgw_gradient(const Matrix &c, const Matrix &f, const Matrix &cbar, const Matrix &fbar,
                    const Matrix &t, double alpha, bool assume_symmetric) {
  check_alpha(alpha);
  const Matrix m = feature_distance_matrix(f, fbar);
  require(m.rows() == t.rows() && m.cols() == t.cols(), "feature matrices do not match T");
  return alpha * gw_gradient(c, cbar, t, assume_symmetric) + (1.0 - alpha) * m;
}

double kl_divergence(const Matrix &t, const Matrix &tref) {
  require(t.rows() == tref.rows() && t.cols() == tref.cols(), "KL arguments differ in shape");
  require((t.array() >= 0.0).all(), "KL first argument must be nonnegative");
  double s = 0.0;
  for (Index i = 0; i < t.rows(); ++i)
    for (Index j = 0; j < t.cols(); ++j) {
      const double x = t(i, j);
      const double y = tref(i, j);
      if (x > 0.0) {
        require(y > 0.0, "KL reference has a zero where the plan is positive");
        s += x * std::log(x / y);
      }
      s += y - x;
    }
  return std::max(0.0, s);
}

}  // namespace srgw
