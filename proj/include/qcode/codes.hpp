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

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qcode/hilbert.hpp"

namespace qcode {

/// A code definition. Each standard error is a string with one letter per
/// physical qubit from {I, X, Z, W}; W is the real product X*Z (phase flip
/// first, then bit flip). The position of an error in the list is its syndrome.
struct CodeSpec {
  std::string name;
  std::size_t n_physical = 0;
  std::array<StateVector, 2> logical_basis;
  std::vector<std::string> standard_errors;

  /// Number of ancilla qubits n = n_physical - 1.
  std::size_t ancilla_qubits() const { return n_physical - 1; }
};

/// Throws InvalidArgument when the structural invariants of `spec` fail
/// (error count 2^n, identity first, label alphabet, normalized orthogonal
/// logical states).
void validate_spec(const CodeSpec& spec);

class QuantumCode {
 public:
  /// Builds E column by column: E(|z> (x) |a>) = O_a |z_0>. Throws
  /// NonOrthonormalBasis when the images are not an orthonormal basis.
  explicit QuantumCode(CodeSpec spec);

  const CodeSpec& spec() const { return spec_; }
  const std::string& name() const { return spec_.name; }
  std::size_t n_physical() const { return spec_.n_physical; }
  std::size_t ancilla_qubits() const { return spec_.n_physical - 1; }
  std::size_t syndrome_count() const { return std::size_t{1} << ancilla_qubits(); }
  /// 2^(n+1)
  std::size_t dim() const { return std::size_t{1} << spec_.n_physical; }
  Dims codeword_dims() const { return qubit_dims(spec_.n_physical); }

  const DenseOperator& encoding() const { return encoding_; }
  /// |Z_a^(z)>, the column of E at z * 2^n + a.
  StateVector physical_basis(int z, std::size_t a) const;
  /// |z_0>
  const StateVector& logical_codeword(int z) const { return spec_.logical_basis[static_cast<std::size_t>(z)]; }

  /// Syndrome index of a standard-error label, or throws InvalidArgument.
  std::size_t syndrome_of(std::string_view label) const;

 private:
  CodeSpec spec_;
  DenseOperator encoding_;
};

QuantumCode build_code(CodeSpec spec);

/// "repetition3", "perfect5" or "steane7".
CodeSpec builtin_spec(std::string_view name);
std::vector<std::string> builtin_code_names();

/// E (logical (x) |a=0>) = alpha|0_0> + beta|1_0>.
StateVector encode(const QuantumCode& code, const StateVector& logical);

/// Applies E^dagger to the leading n+1 qubit factors, identity to any trailing
/// factors. The output factors read (logical qubit, ancilla qubits, extras).
StateVector decode(const QuantumCode& code, const StateVector& physical);

/// Pauli-string action on the leading qubits of `psi`; trailing factors are
/// untouched. Labels use {I, X, Z, W}.
StateVector apply_pauli_string(std::string_view label, const StateVector& psi);
DenseOperator pauli_string_operator(std::string_view label);

/// O_a as a dense matrix of order 2^(n+1).
DenseOperator standard_error_operator(const QuantumCode& code, std::size_t a);

struct QubitFactorization {
  std::size_t singled_qubit = 0;
  int z = 0;
  /// components[y] = X_{zy}, over the remaining qubits in original order.
  std::array<StateVector, 2> components;

  /// X_{z0} (x) |0>_k + X_{z1} (x) |1>_k with qubit k back in place.
  StateVector reassemble() const;
};

QubitFactorization single_out(const QuantumCode& code, int z, std::size_t k);

/// Tensor `qubit` into position k of `rest` (inverse of single_out).
StateVector insert_qubit(const StateVector& rest, const StateVector& qubit, std::size_t k);

struct ScalarProductCheck {
  int z = 0, y = 0, z2 = 0, y2 = 0;
  cplx value;
  double expected = 0.0;
  bool pass = false;
};

struct QubitProductsReport {
  std::size_t qubit = 0;
  /// 4 diagonal norms followed by the 6 unordered cross pairs.
  std::vector<ScalarProductCheck> products;
  /// Orthonormality of the 8 branch vectors Z_0, Z_r, Z_s, Z_t for z = 0, 1.
  double branch_gram_defect = 0.0;
  bool branch_vectors_orthonormal = false;
  bool pass = false;
};

/// The 10 products <X_zy, X_z'y'> against 1/2 d_zz' d_yy' at NORM_TOL.
QubitProductsReport verify_qubit_products(const QuantumCode& code, std::size_t k);

/// max |G - 1| for the Gram matrix of all 2^(n+1) physical basis vectors.
double basis_gram_defect(const QuantumCode& code);

/// Hex FNV-1a over the raw bytes of E (row-major, real then imaginary part).
std::string encoding_checksum(const QuantumCode& code);

/// Code-spec file: JSON with name, n_physical, logical_basis {zero, one} as
/// [index, re, im] triples (one per line), standard_errors. Doubles are written
/// in shortest round-trip form.
std::string write_spec(const CodeSpec& spec);
CodeSpec parse_spec(std::string_view text);
CodeSpec load_spec_file(const std::string& path);
void save_spec_file(const CodeSpec& spec, const std::string& path);

}  // namespace qcode
