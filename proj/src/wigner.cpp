/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/wigner.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "cavloss/errors.hpp"

namespace cavloss {

namespace {

constexpr double kTwoOverPi = 2.0 / 3.14159265358979323846;

// Parity-weighted trace of the displaced state, using precomputed rows
// [0, d) of the displacement operator at the working dimension.
double point_with_rows(const DensityMatrix &rho, ComplexAmp alpha,
                       int work_dim) {
  const int d = rho.dim;
  const std::vector<ComplexAmp> rows =
      detail::displacement_rows(alpha, work_dim, d);
  const auto dref = [&](int i, int k) -> const ComplexAmp & {
    return rows[static_cast<std::size_t>(i) * work_dim + k];
  };

  // b[p][n] = sum_q rho[p][q] D[q][n]
  std::vector<ComplexAmp> b(static_cast<std::size_t>(d) * work_dim);
  for (int p = 0; p < d; ++p)
    for (int n = 0; n < work_dim; ++n) {
      ComplexAmp acc{0.0, 0.0};
      for (int q = 0; q < d; ++q)
        acc += rho.at(p, q) * dref(q, n);
      b[static_cast<std::size_t>(p) * work_dim + n] = acc;
    }

  ComplexAmp val{0.0, 0.0};
  for (int n = 0; n < work_dim; ++n) {
    ComplexAmp diag{0.0, 0.0};
    for (int p = 0; p < d; ++p)
      diag += std::conj(dref(p, n)) * b[static_cast<std::size_t>(p) * work_dim + n];
    val += (n % 2 == 0) ? diag : -diag;
  }
  if (std::abs(val.imag()) > 1e-6)
    throw numerical_error("wigner: imaginary residue exceeds tolerance");
  return kTwoOverPi * val.real();
}

} // namespace

double wigner_point(const DensityMatrix &rho, ComplexAmp alpha) {
  if (rho.dim < 1)
    throw std::invalid_argument("wigner_point: empty matrix");
  const int work_dim = detail::displacement_work_dim(std::abs(alpha), rho.dim);
  return point_with_rows(rho, alpha, work_dim);
}

WignerGrid wigner_grid(const DensityMatrix &rho, double q_min, double q_max,
                       double p_min, double p_max, double step) {
  if (rho.dim < 1)
    throw std::invalid_argument("wigner_grid: empty matrix");
  if (!(step > 0.0))
    throw std::invalid_argument("wigner_grid: step must be positive");
  if (q_max < q_min || p_max < p_min)
    throw std::invalid_argument("wigner_grid: empty range");

  WignerGrid g;
  g.q_min = q_min;
  g.q_max = q_max;
  g.p_min = p_min;
  g.p_max = p_max;
  g.step = step;
  g.nq = static_cast<int>(std::floor((q_max - q_min) / step + 1e-9)) + 1;
  g.np = static_cast<int>(std::floor((p_max - p_min) / step + 1e-9)) + 1;

  // One working dimension serves the whole grid; the largest displacement
  // sits at a corner.
  double amax = 0.0;
  for (const double q : {q_min, q_max})
    for (const double p : {p_min, p_max})
      amax = std::max(amax, std::hypot(q, p));
  const int work_dim = detail::displacement_work_dim(amax, rho.dim);

  g.values.resize(static_cast<std::size_t>(g.nq) * g.np);
  g.min_value = std::numeric_limits<double>::infinity();
  g.negative_volume = 0.0;
  for (int ip = 0; ip < g.np; ++ip)
    for (int iq = 0; iq < g.nq; ++iq) {
      const ComplexAmp alpha{q_min + iq * step, p_min + ip * step};
      const double w = point_with_rows(rho, alpha, work_dim);
      g.values[static_cast<std::size_t>(ip) * g.nq + iq] = w;
      g.min_value = std::min(g.min_value, w);
      if (w < 0.0)
        g.negative_volume += w * step * step;
    }
  return g;
}

std::vector<RhoHistogramRow> rho_histogram(const DensityMatrix &rho) {
  std::vector<RhoHistogramRow> rows;
  rows.reserve(static_cast<std::size_t>(rho.dim) * rho.dim);
  for (int i = 0; i < rho.dim; ++i)
    for (int j = 0; j < rho.dim; ++j) {
      const ComplexAmp v = rho.at(i, j);
      rows.push_back({i, j, v.real(), v.imag(), std::abs(v)});
    }
  return rows;
}

} // namespace cavloss
