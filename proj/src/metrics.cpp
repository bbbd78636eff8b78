//
// srgw - Copyright 2026 The srgw Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "srgw/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <fmt/format.h>

namespace srgw {

using detail::require;

namespace {

struct Contingency {
  std::vector<double> rows;   // cluster sizes in a
  std::vector<double> cols;   // cluster sizes in b
  std::vector<std::vector<double>> table;
  double n = 0.0;
};

std::vector<int> compact(std::span<const int> labels) {
  std::map<int, int> ids;
  std::vector<int> out(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    auto [it, inserted] = ids.try_emplace(labels[i], static_cast<int>(ids.size()));
    out[i] = it->second;
  }
  return out;
}

Contingency contingency(std::span<const int> a, std::span<const int> b) {
  require(a.size() == b.size(),
          fmt::format("label vectors differ in length ({} vs {})", a.size(), b.size()));
  require(!a.empty(), "label vectors are empty");
  const auto ca = compact(a), cb = compact(b);
  const auto ka = static_cast<std::size_t>(*std::max_element(ca.begin(), ca.end()) + 1);
  const auto kb = static_cast<std::size_t>(*std::max_element(cb.begin(), cb.end()) + 1);
  Contingency c;
  c.rows.assign(ka, 0.0);
  c.cols.assign(kb, 0.0);
  c.table.assign(ka, std::vector<double>(kb, 0.0));
  for (std::size_t i = 0; i < ca.size(); ++i) {
    const auto r = static_cast<std::size_t>(ca[i]), s = static_cast<std::size_t>(cb[i]);
    c.table[r][s] += 1.0;
    c.rows[r] += 1.0;
    c.cols[s] += 1.0;
  }
  c.n = static_cast<double>(a.size());
  return c;
}

double entropy(const std::vector<double> &sizes, double n) {
  double h = 0.0;
  for (double s : sizes)
    if (s > 0.0)
      h -= (s / n) * std::log(s / n);
  return h;
}

double mutual_information(const Contingency &c) {
  double mi = 0.0;
  for (std::size_t i = 0; i < c.rows.size(); ++i)
    for (std::size_t j = 0; j < c.cols.size(); ++j) {
      const double nij = c.table[i][j];
      if (nij > 0.0)
        mi += (nij / c.n) * std::log(c.n * nij / (c.rows[i] * c.cols[j]));
    }
  return mi;
}

double expected_mutual_information(const Contingency &c) {
  const double n = c.n;
  const double lg_n = std::lgamma(n + 1.0);
  double emi = 0.0;
  for (double a : c.rows)
    for (double b : c.cols) {
      const double lo = std::max(1.0, a + b - n);
      const double hi = std::min(a, b);
      const double base = std::lgamma(a + 1.0) + std::lgamma(b + 1.0) + std::lgamma(n - a + 1.0) +
                          std::lgamma(n - b + 1.0) - lg_n;
      for (double nij = lo; nij <= hi; nij += 1.0) {
        const double term = (nij / n) * std::log(n * nij / (a * b));
        const double log_p = base - std::lgamma(nij + 1.0) - std::lgamma(a - nij + 1.0) -
                             std::lgamma(b - nij + 1.0) - std::lgamma(n - a - b + nij + 1.0);
        emi += term * std::exp(log_p);
      }
    }
  return emi;
}

double choose2(double x) { return 0.5 * x * (x - 1.0); }

}  // namespace

double ami(std::span<const int> a, std::span<const int> b) {
  const Contingency c = contingency(a, b);
  if (c.rows.size() == 1 && c.cols.size() == 1)
    return 1.0;
  const double mi = mutual_information(c);
  const double emi = expected_mutual_information(c);
  const double norm = std::max(entropy(c.rows, c.n), entropy(c.cols, c.n));
  double denom = norm - emi;
  const double eps = std::numeric_limits<double>::epsilon();
  denom = denom < 0.0 ? std::min(denom, -eps) : std::max(denom, eps);
  return (mi - emi) / denom;
}

double adjusted_rand(std::span<const int> a, std::span<const int> b) {
  const Contingency c = contingency(a, b);
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto &row : c.table)
    for (double v : row)
      sum_cells += choose2(v);
  for (double v : c.rows)
    sum_rows += choose2(v);
  for (double v : c.cols)
    sum_cols += choose2(v);
  const double total = choose2(c.n);
  // disagreeing pairs in either direction; none means the partitions coincide
  if (sum_rows - sum_cells == 0.0 && sum_cols - sum_cells == 0.0)
    return 1.0;
  const double expected = sum_rows * sum_cols / total;
  const double mean = 0.5 * (sum_rows + sum_cols);
  return (sum_cells - expected) / (mean - expected);
}

double rand_index(std::span<const int> a, std::span<const int> b) {
  const Contingency c = contingency(a, b);
  const double total = choose2(c.n);
  if (total == 0.0)
    return 1.0;
  double sum_cells = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto &row : c.table)
    for (double v : row)
      sum_cells += choose2(v);
  for (double v : c.rows)
    sum_rows += choose2(v);
  for (double v : c.cols)
    sum_cols += choose2(v);
  const double agree_same = sum_cells;
  const double agree_diff = total - sum_rows - sum_cols + sum_cells;
  return (agree_same + agree_diff) / total;
}

double modularity(const Matrix &adjacency, std::span<const int> labels) {
  require(adjacency.rows() == adjacency.cols(), "adjacency must be square");
  require(static_cast<Index>(labels.size()) == adjacency.rows(), "one label per node required");
  const double edges = 0.5 * adjacency.sum();
  require(edges > 0.0, "modularity is undefined on an edgeless graph");
  const auto ids = compact(labels);
  const auto k = static_cast<std::size_t>(*std::max_element(ids.begin(), ids.end()) + 1);
  std::vector<double> inside(k, 0.0), degree(k, 0.0);
  const Index n = adjacency.rows();
  for (Index i = 0; i < n; ++i) {
    const auto ci = static_cast<std::size_t>(ids[static_cast<std::size_t>(i)]);
    degree[ci] += adjacency.row(i).sum();
    for (Index j = i + 1; j < n; ++j)
      if (ids[static_cast<std::size_t>(j)] == ids[static_cast<std::size_t>(i)])
        inside[ci] += adjacency(i, j);
  }
  double q = 0.0;
  for (std::size_t c = 0; c < k; ++c)
    q += inside[c] / edges - std::pow(degree[c] / (2.0 * edges), 2);
  return q;
}

}  // namespace srgw
