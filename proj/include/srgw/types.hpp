//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace srgw {

// Structure matrices and couplings are stored dense row-major: every hot loop
// (row-wise argmin, row-parallel products, log-domain row scaling) walks rows.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
using Labels = std::vector<int>;

/// Raised on malformed input: shape mismatches, non-simplex weights, bad config.
class InvalidInput : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a solver cannot produce a result (NaN costs, all batch items failed).
class SolverFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string &what) {
  if (!cond)
    throw InvalidInput(what);
}

}  // namespace detail

/// True when |M - M^T| <= tol entrywise.
inline bool is_symmetric(const Matrix &m, double tol = 1e-12) {
  if (m.rows() != m.cols())
    return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol)
        return false;
  return true;
}

/// True when v is entrywise >= 0 and sums to one within tol.
inline bool on_simplex(const Vector &v, double tol = 1e-12) {
  if (v.size() == 0 || (v.array() < 0.0).any())
    return false;
  return std::abs(v.sum() - 1.0) <= tol;
}

}  // namespace srgw
