/**
 * Copyright 2026, the cavloss authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#ifndef CAVLOSS_FOCK_HPP
#define CAVLOSS_FOCK_HPP

#include <complex>
#include <vector>

namespace cavloss {

using ComplexAmp = std::complex<double>;

// Pure state on a truncated Fock space: amps[n] is the coefficient of |n>.
struct StateVector {
  std::vector<ComplexAmp> amps;

  StateVector() = default;
  explicit StateVector(int dim) : amps(static_cast<std::size_t>(dim)) {}

  int dim() const { return static_cast<int>(amps.size()); }
  double norm2() const;
};

// Dense complex matrix, row-major. Shared by density matrices and operators.
struct ComplexMatrix {
  int dim = 0;
  std::vector<ComplexAmp> entries; // dim*dim, row-major

  ComplexMatrix() = default;
  explicit ComplexMatrix(int d)
      : dim(d), entries(static_cast<std::size_t>(d) * d) {}

  ComplexAmp &at(int i, int j) {
    return entries[static_cast<std::size_t>(i) * dim + j];
  }
  const ComplexAmp &at(int i, int j) const {
    return entries[static_cast<std::size_t>(i) * dim + j];
  }
};

// Density operator on the truncated Fock space.
struct DensityMatrix : ComplexMatrix {
  DensityMatrix() = default;
  explicit DensityMatrix(int d) : ComplexMatrix(d) {}

  ComplexAmp trace() const;
  double hermiticity_residual() const; // max |rho[i][j] - conj(rho[j][i])|
};

// |n> on a dim-level space. Throws std::out_of_range unless 0 <= n < dim.
StateVector make_fock(int n, int dim);

// |v><v| (works for unnormalized v too; trace is then the squared norm).
DensityMatrix outer(const StateVector &v);

// <target|rho|target>, real part (imaginary residue is checked).
// Throws std::invalid_argument on dimension mismatch.
double fidelity(const StateVector &target, const DensityMatrix &rho);

// Smallest eigenvalue of a Hermitian matrix, via cyclic Jacobi rotations.
// Throws std::invalid_argument if the input is non-Hermitian beyond 1e-8.
double min_eigenvalue(const DensityMatrix &rho);

// Matrix elements of exp(alpha a^dag - conj(alpha) a) on the dim lowest
// levels. Internally the exponential is taken in a larger working dimension
// (at least dim + 20, grown further with |alpha|) and cropped, so the
// returned block approximates the untruncated operator.
ComplexMatrix displacement(ComplexAmp alpha, int dim);

namespace detail {

// Eigendecomposition a = v diag(lambda) v^dag for Hermitian a, cyclic Jacobi.
// v is row-major; column k of v is the k-th eigenvector.
void hermitian_eigensystem(const ComplexMatrix &a, std::vector<double> &lambda,
                           ComplexMatrix &v);

// Working dimension used for a displacement by alpha on a dim-level space.
int displacement_work_dim(double alpha_abs, int dim);

// Rows [0, rows) of the displacement operator built at working dimension
// work_dim (columns span the full working dimension). The eigensystem of the
// generator is cached per work_dim.
std::vector<ComplexAmp> displacement_rows(ComplexAmp alpha, int work_dim,
                                          int rows);

} // namespace detail

} // namespace cavloss

#endif
