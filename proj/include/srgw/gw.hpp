//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include "srgw/types.hpp"

namespace srgw {

/// A transport plan T (n x m, nonnegative) together with the first marginal
/// h it must reproduce row by row.
class Coupling {
public:
  Coupling() = default;
  /// Throws InvalidInput unless T >= 0 and |T 1 - h|_inf <= tol.
  Coupling(Matrix plan, Vector first_marginal, double tol = 1e-10);

  const Matrix &plan() const { return plan_; }
  const Vector &first_marginal() const { return h_; }
  Index rows() const { return plan_.rows(); }
  Index cols() const { return plan_.cols(); }

  /// Max row-sum violation |T 1 - h|_inf.
  static double marginal_error(const Matrix &plan, const Vector &h);

private:
  Matrix plan_;
  Vector h_;
};

/// L(C, Cbar) (x) T for the squared loss, entry (i,k) = sum_{jl} (C_ij - Cbar_kl)^2 T_jl.
/// Computed in O(n^2 m + n m^2); cancellation negatives clamped to zero.
Matrix gw_tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t);

/// <L(C, Cbar) (x) T, T>.
double gw_loss(const Matrix &c, const Matrix &cbar, const Matrix &t);

/// Gradient of gw_loss in T: L(C,Cbar)(x)T + L(C^T,Cbar^T)(x)T, which is
/// 2 L(C,Cbar)(x)T when both inputs are symmetric (the symmetric path costs
/// one tensor product instead of two). Throws if assume_symmetric is set and
/// either matrix is not symmetric within 1e-12.
Matrix gw_gradient(const Matrix &c, const Matrix &cbar, const Matrix &t, bool assume_symmetric);

/// M(i,j) = ||F_i - Fbar_j||^2, clamped at zero.
Matrix feature_distance_matrix(const Matrix &f, const Matrix &fbar);

/// <(1 - alpha) M(F, Fbar) + alpha L(C,Cbar)(x)T, T>.
double fgw_loss(const Matrix &c, const Matrix &f, const Matrix &cbar, const Matrix &fbar,
                const Matrix &t, double alpha);

/// alpha * gw_gradient + (1 - alpha) * M(F, Fbar).
Matrix fgw_gradient(const Matrix &c, const Matrix &f, const Matrix &cbar, const Matrix &fbar,
                    const Matrix &t, double alpha, bool assume_symmetric);

/// sum T log(T / Tref) - T + Tref with 0 log 0 = 0.
double kl_divergence(const Matrix &t, const Matrix &tref);

namespace detail {

void check_tensor_shapes(const Matrix &c, const Matrix &cbar, const Matrix &t);

/// Unclamped tensor product; T may be any signed matrix (e.g. a direction).
Matrix tensor_product_signed(const Matrix &c, const Matrix &cbar, const Matrix &t);

}  // namespace detail

}  // namespace srgw
