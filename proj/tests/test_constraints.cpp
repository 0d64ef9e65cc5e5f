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

#include <array>
#include <cmath>

#include "doctest.h"
#include "qcode/constraints.hpp"
#include "qcode/errors.hpp"
#include "qcode/exceptions.hpp"
#include "qcode/recovery.hpp"
#include "support.hpp"

using namespace qcode;

namespace {

CMatrix identity(std::size_t d) {
  return CMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

// Random legal unitary: logical rotation times gauge transformation.
DenseOperator legal_unitary(const QuantumCode& code, std::uint64_t seed) {
  return logical_lift(code, random_unitary(2, seed)) *
         gauge_lift(code, little_group_element(code.ancilla_qubits(), seed + 1000));
}

// Encoded two-codeword state with logical amplitudes chi over (z1, z2).
StateVector two_codewords(const QuantumCode& code, const StateVector& chi) {
  StateVector out = StateVector::zero(qubit_dims(2 * code.n_physical()));
  for (int z1 = 0; z1 < 2; ++z1) {
    for (int z2 = 0; z2 < 2; ++z2) {
      out = out + tensor(code.logical_codeword(z1), code.logical_codeword(z2)) * chi[static_cast<std::size_t>(2 * z1 + z2)];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("constraint basis size and legality") {
  const std::array<std::pair<const char*, std::size_t>, 3> cases{{{"repetition3", 6}, {"perfect5", 30}, {"steane7", 126}}};
  for (const auto& [name, count] : cases) {
    const QuantumCode code = build_code(builtin_spec(name));
    const ConstraintSet cs = constraint_basis(code);
    CHECK(cs.size() == count);
    CHECK(max_abs(cs.vectors().adjoint() * cs.vectors() - identity(count)) <= 1e-12);
    for (int z = 0; z < 2; ++z) {
      CHECK(max_abs(cs.vectors().adjoint() * code.logical_codeword(z).amplitudes()) <= 1e-12);
    }
  }
}

TEST_CASE("constraint vectors are the non-identity columns of E") {
  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  const ConstraintSet cs = constraint_basis(p5);
  CHECK(max_abs(cs.vector(0).amplitudes() - p5.physical_basis(0, 1).amplitudes()) == 0.0);
  CHECK(max_abs(cs.vector(15).amplitudes() - p5.physical_basis(1, 1).amplitudes()) == 0.0);
  CHECK(max_abs(cs.vector(29).amplitudes() - p5.physical_basis(1, 15).amplitudes()) == 0.0);
  CHECK_THROWS_AS(cs.vector(30), InvalidArgument);
}

TEST_CASE("little group elements fix the zero syndrome") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const DenseOperator g = little_group_element(4, s);
    CHECK(g.unitarity_defect() <= 1e-12);
    CHECK(g.matrix()(0, 0) == cplx(1.0));
    CHECK(max_abs(g.matrix().col(0).tail(15)) == 0.0);
    CHECK(max_abs(g.matrix().row(0).tail(15)) == 0.0);
  }
  const DenseOperator g1 = little_group_element(1, 3);
  CHECK(g1.matrix()(0, 1) == cplx(0.0));
  CHECK(std::abs(std::abs(g1.matrix()(1, 1)) - 1.0) <= 1e-15);
  CHECK_THROWS_AS(little_group_element(0, 1), InvalidArgument);
}

TEST_CASE("gauge lifts") {
  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  CHECK(max_abs(gauge_lift(p5, DenseOperator::identity(qubit_dims(4))).matrix() - identity(32)) <= 1e-14);

  const DenseOperator g1 = little_group_element(4, 1), g2 = little_group_element(4, 2);
  CHECK(max_abs((gauge_lift(p5, g1) * gauge_lift(p5, g2)).matrix() - gauge_lift(p5, g1 * g2).matrix()) <= 1e-12);

  // Reference: E (1 (x) g) E^dagger with the reference Kronecker product.
  const CMatrix& e = p5.encoding().matrix();
  CHECK(max_abs(gauge_lift(p5, g1).matrix() - e * oracle::kron(identity(2), g1.matrix()) * e.adjoint()) <= 1e-14);
  CHECK_THROWS_AS(gauge_lift(p5, little_group_element(3, 1)), DimensionMismatch);
}

TEST_CASE("gauge transformations keep the logical state and its sector") {
  for (const auto& name : builtin_code_names()) {
    const QuantumCode code = build_code(builtin_spec(name));
    const auto s = static_cast<Eigen::Index>(code.syndrome_count());
    const CMatrix& e = code.encoding().matrix();
    for (std::uint64_t t = 0; t < 20; ++t) {
      const DenseOperator g = gauge_lift(code, little_group_element(code.ancilla_qubits(), t));
      const StateVector psi = random_state({2}, t + 50);
      CHECK(recover_by_decoding(code, apply(g, encode(code, psi)), psi).fidelity >= 1 - 1e-10);
      CHECK(max_abs(e.middleCols(s, s).adjoint() * g.matrix() * e.leftCols(s)) <= 1e-10);
      CHECK(max_abs(e.leftCols(s).adjoint() * g.matrix() * e.middleCols(s, s)) <= 1e-10);
    }
  }
}

TEST_CASE("logical lifts") {
  const QuantumCode s7 = build_code(builtin_spec("steane7"));
  CHECK(max_abs(logical_lift(s7, DenseOperator::identity({2})).matrix() - identity(128)) <= 1e-14);
  const DenseOperator x = logical_lift(s7, DenseOperator(pauli::X(), {2}));
  CHECK(max_abs(apply(x, s7.logical_codeword(0)).amplitudes() - s7.logical_codeword(1).amplitudes()) <= 1e-14);
  CHECK(max_abs(apply(x, s7.logical_codeword(1)).amplitudes() - s7.logical_codeword(0).amplitudes()) <= 1e-14);

  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  for (std::uint64_t t = 0; t < 5; ++t) {
    const DenseOperator u = logical_lift(p5, random_unitary(2, t));
    const DenseOperator g = gauge_lift(p5, little_group_element(4, t));
    CHECK(max_abs((u * g).matrix() - (g * u).matrix()) <= 1e-12);
  }
}

TEST_CASE("two-qubit lift of CNOT on two repetition codes") {
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  CMatrix cnot = CMatrix::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
  const DenseOperator id4 = DenseOperator::identity({2, 2});
  const DenseOperator u = two_qubit_lift(rep, rep, DenseOperator(cnot, {2, 2}), id4, id4);
  auto enc = [&](int a, int b) { return tensor(rep.logical_codeword(a), rep.logical_codeword(b)); };
  CHECK(max_abs(apply(u, enc(0, 1)).amplitudes() - enc(0, 1).amplitudes()) <= 1e-14);
  CHECK(max_abs(apply(u, enc(1, 0)).amplitudes() - enc(1, 1).amplitudes()) <= 1e-14);
  CHECK(max_abs(apply(u, enc(1, 1)).amplitudes() - enc(1, 0).amplitudes()) <= 1e-14);

  const DenseOperator all_id = two_qubit_lift(rep, rep, id4, id4, id4);
  CHECK(max_abs(all_id.matrix() - identity(64)) <= 1e-14);
}

TEST_CASE("two-qubit lift commutes with correctable errors") {
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  const DenseOperator u12 = random_unitary(4, 9);
  const DenseOperator lift =
      two_qubit_lift(rep, p5, u12, little_group_element(2, 4), little_group_element(4, 5));
  for (std::uint64_t t = 0; t < 5; ++t) {
    const StateVector psi1 = random_state({2}, t), psi2 = random_state({2}, t + 10);
    StateVector w = tensor(encode(rep, psi1), encode(p5, psi2));
    // Bit flips on the repetition code (its correctable set), coherent error on perfect5.
    w = apply_coherent(rep, w, random_coefficients(rep, t + 20));
    const CVector c2 = random_coefficients(p5, t + 30);
    StateVector hit = StateVector::zero(w.factors());
    for (std::size_t a = 0; a < 16; ++a) hit = hit + apply_pauli_string("III" + p5.spec().standard_errors[a], w) * c2[static_cast<Eigen::Index>(a)];
    const StateVector out = apply(lift, hit);

    // Decode both codewords and compare the logical pair with u12 (psi1 (x) psi2).
    const StateVector d1 = decode(rep, out);  // (l1, a1 a1', p5 qubits)
    const CMatrix e2 = p5.encoding().matrix().adjoint();
    const std::array<std::size_t, 5> p5q{3, 4, 5, 6, 7};
    const StateVector d2 = apply_local(e2, p5q, d1);  // (l1, a1, l2, a2)
    const std::array<std::size_t, 2> logical{0, 3};
    const FactorizationReport f = factorization(d2, logical);
    REQUIRE(f.is_product);
    CHECK(fidelity(f.left_factor, apply(u12, tensor(psi1, psi2))) >= 1 - 1e-10);
  }
}

TEST_CASE("representation matrices") {
  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  const ConstraintSet cs = constraint_basis(p5);
  CHECK(max_abs(representation_matrix(cs, DenseOperator::identity(qubit_dims(5))) - identity(30)) <= 1e-14);

  for (std::uint64_t t = 0; t < 50; ++t) {
    const DenseOperator w1 = legal_unitary(p5, 2 * t), w2 = legal_unitary(p5, 2 * t + 1);
    const CMatrix a1 = representation_matrix(cs, w1), a2 = representation_matrix(cs, w2);
    CHECK(max_abs(representation_matrix(cs, w1 * w2) - a1 * a2) <= 1e-10);
    CHECK(max_abs(a1.adjoint() * a1 - identity(30)) <= 1e-10);
    // Reference entries <C_beta, W C_alpha>.
    CHECK(std::abs(a1(3, 7) - cs.vector(3).inner(apply(w1, cs.vector(7)))) <= 1e-14);
  }

  const DenseOperator o1 = standard_error_operator(p5, 1);
  CHECK(legality_defect(cs, o1) > 0.5);
  CHECK_THROWS_AS(representation_matrix(cs, o1), NotLegal);
}

TEST_CASE("constraint operators") {
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  const ConstraintSet cs = constraint_basis(rep);
  CHECK(max_abs(constraint_operator(cs, CMatrix::Zero(6, 6)).op.matrix()) == 0.0);
  const ConstraintOperator proj = constraint_operator(cs, identity(6));
  CHECK(max_abs(proj.op.matrix() * proj.op.matrix() - proj.op.matrix()) <= 1e-12);
  CHECK_THROWS_AS(constraint_operator(cs, identity(5)), InvalidArgument);
  CMatrix nh = identity(6);
  nh(0, 1) = 1.0;
  CHECK_THROWS_AS(constraint_operator(cs, nh), InvalidArgument);

  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  const ConstraintSet cs5 = constraint_basis(p5);
  const ConstraintOperator m = constraint_operator(cs5, random_hermitian(30, 13));
  CHECK(m.op.is_hermitian());
  for (std::uint64_t t = 0; t < 20; ++t) CHECK(apply(m.op, encode(p5, random_state({2}, t))).norm() <= 1e-10);
}

TEST_CASE("commutator closure") {
  const QuantumCode p5 = build_code(builtin_spec("perfect5"));
  const ConstraintSet cs = constraint_basis(p5);
  const ConstraintOperator m = constraint_operator(cs, random_hermitian(30, 1));
  CHECK(max_abs(commutator_closure(m, m).op.matrix()) <= 1e-14);

  for (std::uint64_t t = 0; t < 50; ++t) {
    const ConstraintOperator a = constraint_operator(cs, random_hermitian(30, 2 * t + 1));
    const ConstraintOperator b = constraint_operator(cs, random_hermitian(30, 2 * t + 2));
    const ConstraintOperator p = commutator_closure(a, b);
    CHECK(closure_residual(a, b, p) <= 1e-10);
    CHECK(p.op.hermiticity_defect() <= 1e-10);
    CHECK(max_abs(p.op.matrix() * cs.legal_basis()) <= 1e-10);
    // Reference: P = -i [M, N] on the full operators.
    const CMatrix ref = cplx(0, -1) * (a.op.matrix() * b.op.matrix() - b.op.matrix() * a.op.matrix());
    CHECK(max_abs(p.op.matrix() - ref) <= 1e-10);
  }
}

TEST_CASE("commutator of embedded Pauli blocks") {
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  const ConstraintSet cs = constraint_basis(rep);
  CMatrix sx = CMatrix::Zero(6, 6), sy = CMatrix::Zero(6, 6), sz = CMatrix::Zero(6, 6);
  sx.topLeftCorner(2, 2) = oracle::pauli('X');
  sy.topLeftCorner(2, 2) = oracle::pauli('Y');
  sz.topLeftCorner(2, 2) = oracle::pauli('Z');
  const ConstraintOperator p =
      commutator_closure(constraint_operator(cs, sx), constraint_operator(cs, sy));
  CHECK(max_abs(p.coeffs - 2.0 * sz) <= 1e-15);
}

TEST_CASE("multi-codeword constraint") {
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  const ConstraintSet cs = constraint_basis(rep);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const std::array<ConstraintOperator, 2> ops{constraint_operator(cs, random_hermitian(6, t)),
                                                constraint_operator(cs, random_hermitian(6, t + 100))};
    CHECK(multi_codeword_constraint(ops, two_codewords(rep, random_state({2, 2}, t))) <= 1e-10);
  }

  // A component C_alpha (x) C_beta is annihilated by neither factor.
  const std::array<ConstraintOperator, 2> ops{constraint_operator(cs, identity(6)), constraint_operator(cs, identity(6))};
  const StateVector bad = (two_codewords(rep, random_state({2, 2}, 3)) + tensor(cs.vector(0), cs.vector(4))) * M_SQRT1_2;
  CHECK(multi_codeword_constraint(ops, bad) > 0.1);

  const std::array<ConstraintOperator, 2> zero_first{constraint_operator(cs, CMatrix::Zero(6, 6)), ops[1]};
  CHECK(multi_codeword_constraint(zero_first, bad) == 0.0);
  CHECK_THROWS_AS(multi_codeword_constraint(ops, random_state(qubit_dims(5), 1)), DimensionMismatch);
}

TEST_CASE("scalar products survive encoding") {
  for (const auto& name : builtin_code_names()) {
    const QuantumCode code = build_code(builtin_spec(name));
    const StateVector phi = random_state({2}, 1);
    const CVector c = random_coefficients(code, 21);
    const ScalarProductResult same = scalar_product_check(code, phi, phi, c);
    CHECK(std::abs(same.lhs - 1.0) <= 1e-12);
    CHECK(same.deviation <= 1e-12);
    const StateVector perp = StateVector::qubit(-std::conj(phi[1]), std::conj(phi[0]));
    const ScalarProductResult orth = scalar_product_check(code, phi, perp, c);
    CHECK(std::abs(orth.lhs) <= 1e-12);
    CHECK(std::abs(orth.rhs) <= 1e-15);
    for (std::uint64_t t = 0; t < 300; ++t) {
      const ScalarProductResult r = scalar_product_check(code, random_state({2}, 3 * t), random_state({2}, 3 * t + 1),
                                                         random_coefficients(code, 3 * t + 2));
      CHECK(r.deviation <= 1e-12);
    }
  }
  const QuantumCode rep = build_code(builtin_spec("repetition3"));
  CHECK_THROWS_AS(scalar_product_check(rep, random_state({2}, 1), random_state({2}, 2), 2.0 * oracle::basis(4, 0)),
                  InvalidArgument);
}
