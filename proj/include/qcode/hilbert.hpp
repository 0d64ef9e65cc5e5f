// Copyright 2026 The qcode Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcode/exceptions.hpp"

namespace qcode {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;

/// Subsystem dimensions of a tensor factorization. Factor 0 is the leftmost
/// slot and the most significant digit of a basis index, so |01001> = |9>.
using Dims = std::vector<std::size_t>;

inline constexpr double NORM_TOL = 1e-10;
inline constexpr double UNITARY_TOL = 1e-10;
inline constexpr double PRODUCT_TOL = 1e-8;

std::size_t product(const Dims& dims);
Dims qubit_dims(std::size_t count);
Dims concat(const Dims& a, const Dims& b);

/// Amplitude vector over a labeled tensor factorization. Normalization is not
/// enforced: branch vectors (environment states after an interaction) are
/// legitimately sub-normalized. Operations that need a unit vector check it.
class StateVector {
 public:
  StateVector() = default;
  StateVector(CVector amplitudes, Dims factors);

  static StateVector basis(const Dims& factors, std::size_t index);
  static StateVector zero(const Dims& factors);
  /// Single qubit alpha|0> + beta|1>.
  static StateVector qubit(cplx alpha, cplx beta);

  const CVector& amplitudes() const { return amps_; }
  const Dims& factors() const { return factors_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  cplx operator[](std::size_t i) const { return amps_[static_cast<Eigen::Index>(i)]; }

  double norm() const { return amps_.norm(); }
  bool is_normalized(double tol = NORM_TOL) const;
  void require_normalized(const char* what) const;
  StateVector normalized() const;

  /// <this, other>, antilinear in this.
  cplx inner(const StateVector& other) const;

  StateVector operator+(const StateVector& o) const;
  StateVector operator-(const StateVector& o) const;
  StateVector operator*(cplx s) const;

 private:
  CVector amps_;
  Dims factors_;
};

class DenseOperator {
 public:
  DenseOperator() = default;
  DenseOperator(CMatrix entries, Dims factors);

  static DenseOperator identity(const Dims& factors);

  const CMatrix& matrix() const { return m_; }
  const Dims& factors() const { return factors_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  /// max |(U^dagger U - 1)_ij|
  double unitarity_defect() const;
  /// max |(M - M^dagger)_ij|
  double hermiticity_defect() const;
  bool is_unitary(double tol = UNITARY_TOL) const { return unitarity_defect() <= tol; }
  bool is_hermitian(double tol = UNITARY_TOL) const { return hermiticity_defect() <= tol; }

  DenseOperator adjoint() const;
  DenseOperator operator*(const DenseOperator& o) const;

 private:
  CMatrix m_;
  Dims factors_;
};

class DensityMatrix {
 public:
  DensityMatrix() = default;
  /// Validates Hermiticity, unit trace and positivity within NORM_TOL.
  DensityMatrix(CMatrix entries, Dims factors);

  static DensityMatrix pure(const StateVector& psi);

  const CMatrix& matrix() const { return m_; }
  const Dims& factors() const { return factors_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }

  cplx trace() const { return m_.trace(); }
  double purity() const;
  /// Ascending eigenvalues of the Hermitian part.
  RVector eigenvalues() const;

 private:
  CMatrix m_;
  Dims factors_;
};

struct FactorizationReport {
  bool is_product = false;
  std::vector<double> schmidt_values;
  StateVector left_factor;
  StateVector right_factor;

  double second_schmidt() const { return schmidt_values.size() > 1 ? schmidt_values[1] : 0.0; }
};

StateVector tensor(const StateVector& a, const StateVector& b);
DenseOperator kron(const DenseOperator& a, const DenseOperator& b);

StateVector apply(const DenseOperator& op, const StateVector& psi);

/// Applies `op` to the listed factors of `psi` (op's factor order follows
/// `targets`), identity elsewhere. Never materializes the full operator.
StateVector apply_local(const CMatrix& op, std::span<const std::size_t> targets,
                        const StateVector& psi);

/// Lifts `op` to the full space by identity padding.
DenseOperator embed(const DenseOperator& op, std::span<const std::size_t> targets,
                    const Dims& full_factors);

/// Schmidt test across the cut (left group = `left`, in the given order;
/// right group = the remaining factors in their original order).
FactorizationReport factorization(const StateVector& psi, std::span<const std::size_t> left);

/// Reduced state on `keep` (result factors ordered as in `keep`).
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Haar-random unitary from QR of a complex Ginibre matrix with the diagonal
/// phases of R divided out. Deterministic in (dim, seed).
DenseOperator random_unitary(std::size_t dim, std::uint64_t seed);

/// Uniformly random unit vector in C^dim.
StateVector random_state(const Dims& factors, std::uint64_t seed);

/// Random Hermitian matrix with Gaussian entries (GUE-like scale).
CMatrix random_hermitian(std::size_t dim, std::uint64_t seed);

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
}

namespace pauli {
CMatrix I();
CMatrix X();
CMatrix Z();
/// X*Z, the real bit-and-phase flip: |0> -> |1>, |1> -> -|0>.
CMatrix W();
}  // namespace pauli

}  // namespace qcode
