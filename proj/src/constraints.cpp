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

#include "qcode/constraints.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace qcode {

namespace {

constexpr double kLegalTol = 1e-10;

std::size_t log2_exact(std::size_t d) {
  std::size_t q = 0;
  while ((std::size_t{1} << q) < d) ++q;
  return q;
}

}  // namespace

ConstraintSet::ConstraintSet(const QuantumCode& code) : factors_(code.codeword_dims()) {
  const std::size_t syn = code.syndrome_count();
  const CMatrix& e = code.encoding().matrix();
  vectors_.resize(e.rows(), static_cast<Eigen::Index>(2 * (syn - 1)));
  legal_.resize(e.rows(), 2);
  Eigen::Index alpha = 0;
  for (std::size_t z = 0; z < 2; ++z) {
    legal_.col(static_cast<Eigen::Index>(z)) = e.col(static_cast<Eigen::Index>(z * syn));
    for (std::size_t a = 1; a < syn; ++a) vectors_.col(alpha++) = e.col(static_cast<Eigen::Index>(z * syn + a));
  }
}

StateVector ConstraintSet::vector(std::size_t alpha) const {
  if (alpha >= size()) throw InvalidArgument("constraint index out of range");
  return {vectors_.col(static_cast<Eigen::Index>(alpha)), factors_};
}

bool ConstraintSet::same_set(const ConstraintSet& other) const {
  return vectors_.rows() == other.vectors_.rows() && vectors_.cols() == other.vectors_.cols() &&
         vectors_ == other.vectors_;
}

ConstraintSet constraint_basis(const QuantumCode& code) { return ConstraintSet(code); }

double legality_defect(const ConstraintSet& cs, const DenseOperator& w) {
  if (w.dim() != cs.space_dim()) throw DimensionMismatch("operator does not act on the codeword space");
  return max_abs(cs.vectors().adjoint() * w.matrix() * cs.legal_basis());
}

CMatrix representation_matrix(const ConstraintSet& cs, const DenseOperator& w) {
  const double leak = legality_defect(cs, w);
  if (leak > kLegalTol) {
    throw NotLegal("operator moves legal states into the illegal subspace (overlap " + std::to_string(leak) + ")");
  }
  const CMatrix& c = cs.vectors();
  const CMatrix image = w.matrix() * c;
  CMatrix a = c.adjoint() * image;
  const double residual = max_abs(image - c * a);
  if (residual > kLegalTol) {
    throw NotLegal("operator maps constraint vectors out of the illegal subspace (residual " +
                   std::to_string(residual) + ")");
  }
  return a;
}

ConstraintOperator constraint_operator(const ConstraintSet& cs, const CMatrix& coeffs) {
  const auto m = static_cast<Eigen::Index>(cs.size());
  if (coeffs.rows() != m || coeffs.cols() != m) {
    throw InvalidArgument("constraint coefficients must have order " + std::to_string(m));
  }
  if (max_abs(coeffs - coeffs.adjoint()) > UNITARY_TOL) throw InvalidArgument("constraint coefficients are not Hermitian");
  const CMatrix& c = cs.vectors();
  return {cs, coeffs, DenseOperator(c * coeffs * c.adjoint(), cs.factors())};
}

ConstraintOperator commutator_closure(const ConstraintOperator& m, const ConstraintOperator& n) {
  if (!m.set.same_set(n.set)) throw InvalidArgument("constraint operators are built on different constraint sets");
  const CMatrix comm = m.coeffs * n.coeffs - n.coeffs * m.coeffs;
  const CMatrix p = cplx(0.0, -1.0) * comm;
  // The commutator of Hermitian matrices is anti-Hermitian, so -i[M, N] is
  // Hermitian; symmetrize away rounding.
  return constraint_operator(m.set, 0.5 * (p + p.adjoint()));
}

double closure_residual(const ConstraintOperator& m, const ConstraintOperator& n, const ConstraintOperator& p) {
  const CMatrix& a = m.op.matrix();
  const CMatrix& b = n.op.matrix();
  return max_abs(a * b - b * a - cplx(0.0, 1.0) * p.op.matrix());
}

double multi_codeword_constraint(std::span<const ConstraintOperator> ops, const StateVector& psi_multi) {
  std::size_t total = 0;
  std::vector<std::size_t> widths;
  for (const auto& op : ops) {
    widths.push_back(log2_exact(op.set.space_dim()));
    total += widths.back();
  }
  if (psi_multi.factors() != qubit_dims(total)) {
    throw DimensionMismatch("multi-codeword state must consist of " + std::to_string(total) + " qubits");
  }
  StateVector v = psi_multi;
  std::size_t first = 0;
  for (std::size_t i = 0; i < ops.size(); ++i) {
    std::vector<std::size_t> targets(widths[i]);
    std::iota(targets.begin(), targets.end(), first);
    v = apply_local(ops[i].op.matrix(), targets, v);
    first += widths[i];
  }
  return v.norm();
}

DenseOperator little_group_element(std::size_t ancilla_qubits, std::uint64_t seed) {
  if (ancilla_qubits < 1) throw InvalidArgument("little group requires at least one ancilla qubit");
  const std::size_t d = std::size_t{1} << ancilla_qubits;
  CMatrix g = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  g(0, 0) = 1.0;
  g.bottomRightCorner(static_cast<Eigen::Index>(d - 1), static_cast<Eigen::Index>(d - 1)) =
      random_unitary(d - 1, seed).matrix();
  return {std::move(g), qubit_dims(ancilla_qubits)};
}

DenseOperator gauge_lift(const QuantumCode& code, const DenseOperator& g) {
  if (g.dim() != code.syndrome_count()) throw DimensionMismatch("gauge transformation must have order 2^n");
  const CMatrix& e = code.encoding().matrix();
  const CMatrix inner = kron(DenseOperator::identity({2}), g).matrix();
  return {e * inner * e.adjoint(), code.codeword_dims()};
}

DenseOperator logical_lift(const QuantumCode& code, const DenseOperator& u) {
  if (u.dim() != 2) throw DimensionMismatch("logical unitary must have order 2");
  const CMatrix& e = code.encoding().matrix();
  const CMatrix inner = kron(u, DenseOperator::identity({code.syndrome_count()})).matrix();
  return {e * inner * e.adjoint(), code.codeword_dims()};
}

DenseOperator two_qubit_lift(const QuantumCode& code1, const QuantumCode& code2, const DenseOperator& u12,
                             const DenseOperator& g1, const DenseOperator& g2) {
  if (u12.dim() != 4) throw DimensionMismatch("two-qubit logical unitary must have order 4");
  if (g1.dim() != code1.syndrome_count() || g2.dim() != code2.syndrome_count()) {
    throw DimensionMismatch("gauge transformations must match each code's ancilla");
  }
  const std::size_t s1 = code1.syndrome_count();
  const std::size_t s2 = code2.syndrome_count();
  const CMatrix k = kron(kron(u12, g1), g2).matrix();  // factors (l1, l2, a1, a2)

  // index over (l1, a1, l2, a2) -> index over (l1, l2, a1, a2)
  const std::size_t d = 4 * s1 * s2;
  std::vector<std::size_t> to_k(d);
  for (std::size_t l1 = 0; l1 < 2; ++l1) {
    for (std::size_t a1 = 0; a1 < s1; ++a1) {
      for (std::size_t l2 = 0; l2 < 2; ++l2) {
        for (std::size_t a2 = 0; a2 < s2; ++a2) {
          to_k[((l1 * s1 + a1) * 2 + l2) * s2 + a2] = ((l1 * 2 + l2) * s1 + a1) * s2 + a2;
        }
      }
    }
  }
  const auto dd = static_cast<Eigen::Index>(d);
  CMatrix logical(dd, dd);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      logical(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          k(static_cast<Eigen::Index>(to_k[i]), static_cast<Eigen::Index>(to_k[j]));
    }
  }
  const CMatrix e = kron(code1.encoding(), code2.encoding()).matrix();
  return {e * logical * e.adjoint(), qubit_dims(code1.n_physical() + code2.n_physical())};
}

ScalarProductResult scalar_product_check(const QuantumCode& code, const StateVector& phi, const StateVector& psi,
                                         const CVector& c) {
  if (static_cast<std::size_t>(c.size()) != code.syndrome_count()) {
    throw InvalidArgument("syndrome coefficients must have 2^n entries");
  }
  if (std::abs(c.squaredNorm() - 1.0) > NORM_TOL) throw InvalidArgument("syndrome coefficients must be normalized");
  if (phi.dim() != 2 || psi.dim() != 2) throw DimensionMismatch("scalar_product_check expects logical qubits");
  const StateVector anc(c, qubit_dims(code.ancilla_qubits()));
  const StateVector big_phi = apply(code.encoding(), tensor(StateVector(phi.amplitudes(), {2}), anc));
  const StateVector big_psi = apply(code.encoding(), tensor(StateVector(psi.amplitudes(), {2}), anc));
  ScalarProductResult r;
  r.lhs = big_phi.inner(big_psi);
  r.rhs = phi.inner(psi);
  r.deviation = std::abs(r.lhs - r.rhs);
  return r;
}

}  // namespace qcode
