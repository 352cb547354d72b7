/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_WIGNER_HPP
#define CAVLOSS_WIGNER_HPP

#include <vector>

#include "cavloss/fock.hpp"

namespace cavloss {

// Real phase-space distribution on a rectangular grid, alpha = q + i p.
// Convention: vacuum peaks at 2/pi and the full integral is Tr rho.
struct WignerGrid {
  double q_min = 0.0, q_max = 0.0;
  double p_min = 0.0, p_max = 0.0;
  double step = 0.0;
  int nq = 0, np = 0;
  std::vector<double> values; // row-major, index ip * nq + iq
  double min_value = 0.0;
  double negative_volume = 0.0; // sum over negative cells * step^2

  double at(int iq, int ip) const {
    return values[static_cast<std::size_t>(ip) * nq + iq];
  }
};

// (2/pi) sum_n (-1)^n <n|D^dag(alpha) rho D(alpha)|n>, evaluated in a padded
// working dimension. The imaginary residue is checked (<= 1e-6, typically
// ~1e-15) and discarded. Throws numerical_error when the residue signals
// truncation trouble.
double wigner_point(const DensityMatrix &rho, ComplexAmp alpha);

// Dense evaluation over [q_min, q_max] x [p_min, p_max] with the given step.
// A single working dimension sized for the largest |alpha| on the grid is
// reused for every point. Throws std::invalid_argument on step <= 0.
WignerGrid wigner_grid(const DensityMatrix &rho, double q_min, double q_max,
                       double p_min, double p_max, double step);

// Flat (i, j, re, im, abs) rows for every element of rho.
struct RhoHistogramRow {
  int i = 0, j = 0;
  double re = 0.0, im = 0.0, abs = 0.0;
};
std::vector<RhoHistogramRow> rho_histogram(const DensityMatrix &rho);

} // namespace cavloss

#endif
