//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <vector>

#include "srgw/types.hpp"

// Dense kernels behind the GW core. Two implementations with identical
// contracts: `serial` is the plain-loop reference kept for testing and
// benchmarking, `parallel` is the OpenMP row-parallel version used by the
// solvers. Neither clamps or validates; callers own the shape checks.
namespace srgw::kernels {

namespace serial {

/// out(i,k) = sum_{j,l} (C(i,j) - Cbar(k,l))^2 T(j,l) through the factorization
/// (C.C) p 1^T + 1 q^T (Cbar.Cbar)^T - 2 C T Cbar^T. T may have negative entries.
void tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t, Matrix &out);

/// Row-wise argmin (ties to the lowest column). Writes the dirac plan
/// X(i, argmin_i) = h(i) and returns the argmin columns.
std::vector<Index> row_argmin_plan(const Matrix &cost, const Vector &h, Matrix &x);

/// out(i,j) = ||F_i - Fbar_j||^2 via the norm expansion, unclamped.
void sq_distances(const Matrix &f, const Matrix &fbar, Matrix &out);

/// Frobenius inner product.
double dot(const Matrix &a, const Matrix &b);

}  // namespace serial

namespace parallel {

void tensor_product(const Matrix &c, const Matrix &cbar, const Matrix &t, Matrix &out);
std::vector<Index> row_argmin_plan(const Matrix &cost, const Vector &h, Matrix &x);
void sq_distances(const Matrix &f, const Matrix &fbar, Matrix &out);
double dot(const Matrix &a, const Matrix &b);

}  // namespace parallel

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

/// Caps the thread count used by parallel kernels and batch solves.
void set_max_threads(int n);

}  // namespace srgw::kernels
