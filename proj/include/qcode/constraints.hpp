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

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qcode/codes.hpp"
#include "qcode/hilbert.hpp"

namespace qcode {

/// Orthonormal basis C_alpha = E(|z'> (x) |a>), a != 0, of the illegal
/// subspace: ordered with z' major and a = 1 .. 2^n - 1 minor, 2(2^n - 1) in all.
class ConstraintSet {
 public:
  explicit ConstraintSet(const QuantumCode& code);

  std::size_t size() const { return static_cast<std::size_t>(vectors_.cols()); }
  std::size_t space_dim() const { return static_cast<std::size_t>(vectors_.rows()); }
  const Dims& factors() const { return factors_; }

  /// Columns are the C_alpha.
  const CMatrix& vectors() const { return vectors_; }
  StateVector vector(std::size_t alpha) const;
  /// Columns |0_0>, |1_0>.
  const CMatrix& legal_basis() const { return legal_; }

  bool same_set(const ConstraintSet& other) const;

 private:
  CMatrix vectors_;
  CMatrix legal_;
  Dims factors_;
};

ConstraintSet constraint_basis(const QuantumCode& code);

/// max |<C_alpha, W psi>| over the legal basis; zero for a legal W.
double legality_defect(const ConstraintSet& cs, const DenseOperator& w);

/// Matrix of W restricted to the illegal subspace:
///   W C_alpha = Sum_beta C_beta A(W)_{beta alpha},
/// so A(W1 W2) = A(W1) A(W2). The row-indexed form W C_alpha = Sum_beta
/// A'_{alpha beta} C_beta is the transpose. Throws NotLegal when W moves legal
/// states into the illegal subspace (checked at 1e-10) or vice versa.
CMatrix representation_matrix(const ConstraintSet& cs, const DenseOperator& w);

struct ConstraintOperator {
  ConstraintSet set;
  /// Hermitian M_{alpha beta} of order 2(2^n - 1).
  CMatrix coeffs;
  /// M = Sum |C_alpha> M_{alpha beta} <C_beta|, order 2^(n+1).
  DenseOperator op;
};

/// Throws InvalidArgument for non-Hermitian or wrongly sized coefficients.
ConstraintOperator constraint_operator(const ConstraintSet& cs, const CMatrix& coeffs);

/// P with [M, N] = iP, from P_{alpha beta} = -i [M, N]_{alpha beta} on the
/// coefficient matrices (the C_alpha are orthonormal).
ConstraintOperator commutator_closure(const ConstraintOperator& m, const ConstraintOperator& n);

/// max |(MN - NM - iP)_ij|
double closure_residual(const ConstraintOperator& m, const ConstraintOperator& n, const ConstraintOperator& p);

/// || (M_1 (x) M_2 (x) ...) psi || where operator i acts on the i-th block of
/// qubits of psi (blocks in order, sized by each operator's code).
double multi_codeword_constraint(std::span<const ConstraintOperator> ops, const StateVector& psi_multi);

/// 1 (x) g with g |a=0> = |a=0>: block 1 (+) Haar(2^n - 1).
DenseOperator little_group_element(std::size_t ancilla_qubits, std::uint64_t seed);

/// G = E (1 (x) g) E^dagger
DenseOperator gauge_lift(const QuantumCode& code, const DenseOperator& g);

/// U = E (u (x) 1) E^dagger
DenseOperator logical_lift(const QuantumCode& code, const DenseOperator& u);

/// U_12 = (E1 (x) E2) [u12 (x) (g1 (x) g2)] (E1^dagger (x) E2^dagger) with the
/// logical-representation factors reordered from (l1, l2, a1, a2) to
/// (l1, a1, l2, a2) so each E acts on its own codeword.
DenseOperator two_qubit_lift(const QuantumCode& code1, const QuantumCode& code2, const DenseOperator& u12,
                             const DenseOperator& g1, const DenseOperator& g2);

struct ScalarProductResult {
  cplx lhs;  // <Phi, Psi>
  cplx rhs;  // <phi, psi>
  double deviation = 0.0;
};

/// Phi = E(phi (x) Sum c_a|a>), Psi = E(psi (x) Sum c_a|a>).
ScalarProductResult scalar_product_check(const QuantumCode& code, const StateVector& phi, const StateVector& psi,
                                         const CVector& c);

}  // namespace qcode
