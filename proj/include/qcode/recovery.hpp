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
#include <optional>
#include <span>
#include <vector>

#include "qcode/codes.hpp"
#include "qcode/hilbert.hpp"

namespace qcode {

struct RecoveryOutcome {
  /// Recovered logical state (with any companion factors), for pure inputs.
  std::optional<StateVector> logical_state;
  /// Reduced logical state, for mixed inputs.
  std::optional<DensityMatrix> logical_density;
  /// Detached ancilla (x) environment state (pure inputs) or the second
  /// ancilla (x) environment state (in-place recovery).
  std::optional<StateVector> junk;
  FactorizationReport factored;
  double fidelity = 0.0;
  double purity = 1.0;
};

/// Syndrome-free recovery: E^dagger on the codeword, then a product test across
/// (logical qubit, companions) | (ancilla, remaining factors). `companions` are
/// indices of trailing factors that travel with the logical qubit (e.g. the
/// partner of a Bell pair). Throws NotCorrigible when the cut is entangled.
RecoveryOutcome recover_by_decoding(const QuantumCode& code, const StateVector& corrupted,
                                    const StateVector& reference, std::span<const std::size_t> companions = {});

/// E^dagger rho E traced down to the logical qubit. Throws NotCorrigible when
/// the reduced state is mixed (purity below 1 - PRODUCT_TOL).
RecoveryOutcome recover_mixture(const QuantumCode& code, const DensityMatrix& rho, const StateVector& reference);

/// Unitary of order 2^(2n+1) on (codeword) (x) (second ancilla b) with
/// |Z_a> (x) |b=0>  ->  |Z_0> (x) |b=a>.
/// Realized as (E (x) 1) P (E^dagger (x) 1) where P |z,a,b> = |z, b, a xor b>:
/// the syndrome is copied into b and then uncomputed from a. P is a
/// permutation, so the whole map is unitary on every column.
class SyndromeTransfer {
 public:
  explicit SyndromeTransfer(const QuantumCode& code);

  std::size_t order() const { return code_dim_ * syndromes_; }
  std::size_t ancilla_qubits() const { return n_; }

  /// Acts on a state whose leading factors are the codeword qubits followed by
  /// the n second-ancilla qubits; further trailing factors are untouched.
  StateVector apply(const StateVector& psi) const;

  /// The dense matrix, when order() <= kDenseLimit.
  const std::optional<DenseOperator>& dense() const { return dense_; }

  static constexpr std::size_t kDenseLimit = std::size_t{1} << 10;

 private:
  CMatrix encoding_;
  std::size_t n_ = 0;
  std::size_t code_dim_ = 0;
  std::size_t syndromes_ = 0;
  std::optional<DenseOperator> dense_;
};

SyndromeTransfer build_syndrome_transfer(const QuantumCode& code);

/// Appends a fresh second ancilla |b=0> right after the codeword, applies the
/// transfer, checks (codeword, companions) | (b, rest) is a product, and decodes
/// the restored codeword. Junk is the second ancilla (x) rest state.
RecoveryOutcome recover_in_place(const QuantumCode& code, const StateVector& corrupted,
                                 const SyndromeTransfer& transfer, const StateVector& reference,
                                 std::span<const std::size_t> companions = {});

/// (logical) (x) (junk) -> (logical) (x) |a=0> on `ancilla_qubits` qubits; every
/// factor after the logical one is discarded. Throws NotAProduct otherwise.
StateVector refresh_ancilla(const StateVector& decoded, std::size_t ancilla_qubits);

double fidelity(const StateVector& a, const StateVector& b);
double fidelity(const StateVector& a, const DensityMatrix& b);
double fidelity(const DensityMatrix& a, const StateVector& b);

}  // namespace qcode
