/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include "cavloss/fock.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "cavloss/errors.hpp"

namespace cavloss {

double StateVector::norm2() const {
  double s = 0.0;
  for (const auto &a : amps)
    s += std::norm(a);
  return s;
}

ComplexAmp DensityMatrix::trace() const {
  ComplexAmp t{0.0, 0.0};
  for (int i = 0; i < dim; ++i)
    t += at(i, i);
  return t;
}

double DensityMatrix::hermiticity_residual() const {
  double r = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      r = std::max(r, std::abs(at(i, j) - std::conj(at(j, i))));
  return r;
}

StateVector make_fock(int n, int dim) {
  if (dim < 1)
    throw std::out_of_range("make_fock: dim must be positive, got " +
                            std::to_string(dim));
  if (n < 0 || n >= dim)
    throw std::out_of_range("make_fock: level " + std::to_string(n) +
                            " outside [0, " + std::to_string(dim) + ")");
  StateVector v(dim);
  v.amps[static_cast<std::size_t>(n)] = 1.0;
  return v;
}

DensityMatrix outer(const StateVector &v) {
  DensityMatrix rho(v.dim());
  for (int i = 0; i < rho.dim; ++i)
    for (int j = 0; j < rho.dim; ++j)
      rho.at(i, j) = v.amps[i] * std::conj(v.amps[j]);
  return rho;
}

double fidelity(const StateVector &target, const DensityMatrix &rho) {
  if (target.dim() != rho.dim)
    throw std::invalid_argument("fidelity: dimension mismatch (" +
                                std::to_string(target.dim()) + " vs " +
                                std::to_string(rho.dim) + ")");
  ComplexAmp val{0.0, 0.0};
  for (int i = 0; i < rho.dim; ++i)
    for (int j = 0; j < rho.dim; ++j)
      val += std::conj(target.amps[i]) * rho.at(i, j) * target.amps[j];
  return val.real();
}

namespace detail {

void hermitian_eigensystem(const ComplexMatrix &input,
                           std::vector<double> &lambda, ComplexMatrix &v) {
  const int n = input.dim;
  ComplexMatrix a = input;
  // symmetrize so rounding in the caller cannot feed drift into the sweeps
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      ComplexAmp m = 0.5 * (a.at(i, j) + std::conj(a.at(j, i)));
      a.at(i, j) = m;
      a.at(j, i) = std::conj(m);
    }

  v = ComplexMatrix(n);
  for (int i = 0; i < n; ++i)
    v.at(i, i) = 1.0;

  double fro = 0.0;
  for (const auto &e : a.entries)
    fro += std::norm(e);
  fro = std::sqrt(fro);
  const double stop = 1e-13 * std::max(1.0, fro);

  for (int sweep = 0; sweep < 60; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q)
        off += 2.0 * std::norm(a.at(p, q));
    if (std::sqrt(off) <= stop) {
      lambda.assign(static_cast<std::size_t>(n), 0.0);
      for (int i = 0; i < n; ++i)
        lambda[i] = a.at(i, i).real();
      return;
    }
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double g = std::abs(a.at(p, q));
        if (g <= 1e-300)
          continue;
        const ComplexAmp phase = a.at(p, q) / g;
        const double app = a.at(p, p).real();
        const double aqq = a.at(q, q).real();
        const double tau = (app - aqq) / (2.0 * g);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const ComplexAmp spos = s * phase;             // s e^{i phi}
        const ComplexAmp sneg = s * std::conj(phase);  // s e^{-i phi}
        for (int i = 0; i < n; ++i) { // columns p, q of a and v
          const ComplexAmp aip = a.at(i, p), aiq = a.at(i, q);
          a.at(i, p) = c * aip + sneg * aiq;
          a.at(i, q) = -spos * aip + c * aiq;
          const ComplexAmp vip = v.at(i, p), viq = v.at(i, q);
          v.at(i, p) = c * vip + sneg * viq;
          v.at(i, q) = -spos * vip + c * viq;
        }
        for (int j = 0; j < n; ++j) { // rows p, q of a
          const ComplexAmp apj = a.at(p, j), aqj = a.at(q, j);
          a.at(p, j) = c * apj + spos * aqj;
          a.at(q, j) = -sneg * apj + c * aqj;
        }
      }
    }
  }
  throw numerical_error("hermitian_eigensystem: Jacobi sweeps did not converge");
}

int displacement_work_dim(double alpha_abs, int dim) {
  const double a = alpha_abs;
  const int pad =
      std::max(20, static_cast<int>(std::ceil(a * a + 5.0 * a)) + 15);
  return dim + pad;
}

namespace {

struct DisplacementEngine {
  std::vector<double> lambda;
  ComplexMatrix v;
};

// Eigensystem of the Hermitian generator of displacements along the real
// axis, cached per working dimension.
const DisplacementEngine &engine_for(int work_dim) {
  static std::mutex mtx;
  static std::map<int, DisplacementEngine> cache;
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(work_dim);
  if (it != cache.end())
    return it->second;
  ComplexMatrix h(work_dim);
  for (int n = 0; n + 1 < work_dim; ++n) {
    const double r = std::sqrt(static_cast<double>(n + 1));
    h.at(n + 1, n) = ComplexAmp(0.0, -r);
    h.at(n, n + 1) = ComplexAmp(0.0, r);
  }
  DisplacementEngine e;
  hermitian_eigensystem(h, e.lambda, e.v);
  return cache.emplace(work_dim, std::move(e)).first->second;
}

} // namespace

std::vector<ComplexAmp> displacement_rows(ComplexAmp alpha, int work_dim,
                                          int rows) {
  const DisplacementEngine &e = engine_for(work_dim);
  const double r = std::abs(alpha);
  const double theta = (r > 0.0) ? std::arg(alpha) : 0.0;

  std::vector<ComplexAmp> phase(static_cast<std::size_t>(work_dim));
  for (int k = 0; k < work_dim; ++k)
    phase[k] = std::exp(ComplexAmp(0.0, r * e.lambda[k]));

  std::vector<ComplexAmp> out(static_cast<std::size_t>(rows) * work_dim);
  std::vector<ComplexAmp> t(static_cast<std::size_t>(work_dim));
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < work_dim; ++k)
      t[k] = e.v.at(i, k) * phase[k];
    for (int j = 0; j < work_dim; ++j) {
      ComplexAmp s{0.0, 0.0};
      for (int k = 0; k < work_dim; ++k)
        s += t[k] * std::conj(e.v.at(j, k));
      out[static_cast<std::size_t>(i) * work_dim + j] =
          std::exp(ComplexAmp(0.0, theta * (i - j))) * s;
    }
  }
  return out;
}

} // namespace detail

double min_eigenvalue(const DensityMatrix &rho) {
  if (rho.dim < 1)
    throw std::invalid_argument("min_eigenvalue: empty matrix");
  if (rho.hermiticity_residual() > 1e-8)
    throw std::invalid_argument(
        "min_eigenvalue: input is not Hermitian within tolerance");
  std::vector<double> lambda;
  ComplexMatrix v;
  detail::hermitian_eigensystem(rho, lambda, v);
  double mn = lambda[0];
  for (double x : lambda)
    mn = std::min(mn, x);
  return mn;
}

ComplexMatrix displacement(ComplexAmp alpha, int dim) {
  if (dim < 1)
    throw std::invalid_argument("displacement: dim must be positive");
  const int work = detail::displacement_work_dim(std::abs(alpha), dim);
  const std::vector<ComplexAmp> rows =
      detail::displacement_rows(alpha, work, dim);
  ComplexMatrix d(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      d.at(i, j) = rows[static_cast<std::size_t>(i) * work + j];
  return d;
}

} // namespace cavloss
