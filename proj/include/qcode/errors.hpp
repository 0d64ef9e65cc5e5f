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
#include <cstdint>
#include <variant>
#include <vector>

#include "qcode/codes.hpp"
#include "qcode/hilbert.hpp"

namespace qcode {

inline constexpr std::size_t kDefaultEnvDim = 2;
inline constexpr std::size_t kMaxEnvDim = 8;

/// Unknown environment of dimension d, initial state eta, and the interaction
/// V of order 2d acting on (one physical qubit) (x) (environment).
struct EnvironmentModel {
  std::size_t dim = 0;
  StateVector eta;
  DenseOperator interaction;

  /// Throws InvalidArgument unless V is unitary and eta is normalized.
  void validate() const;

  static EnvironmentModel random(std::size_t dim, std::uint64_t seed);
  static EnvironmentModel with_interaction(const CMatrix& qubit_env_op, const StateVector& eta);
};

/// V(|0> (x) eta) = |0> mu + |1> nu,  V(|1> (x) eta) = |0> sigma + |1> tau.
struct BranchDecomposition {
  StateVector mu, nu, sigma, tau;

  /// Environment amplitudes attached to the correct word, phase error, bit
  /// error and combined error: (mu+tau)/2, (mu-tau)/2, (nu+sigma)/2, (nu-sigma)/2.
  std::array<StateVector, 4> branch_weights() const;

  /// Largest violation of |mu|^2+|nu|^2 = 1, |sigma|^2+|tau|^2 = 1, <mu,sigma>+<nu,tau> = 0.
  double unitarity_defect() const;
};

struct StandardError {
  std::size_t syndrome = 0;
};

struct CoherentError {
  CVector coefficients;
};

struct MixtureTerm {
  double probability = 0.0;
  CVector coefficients;
};

struct MixtureError {
  std::vector<MixtureTerm> terms;
};

struct EnvironmentError {
  std::size_t qubit = 0;
  EnvironmentModel model;
};

using ErrorEvent = std::variant<StandardError, CoherentError, MixtureError, EnvironmentError>;

/// Throws InvalidArgument for an unnormalized c or a bad probability vector.
void validate_event(const QuantumCode& code, const ErrorEvent& event);

/// Unit vector of 2^n coefficients c_a, deterministic in seed.
CVector random_coefficients(const QuantumCode& code, std::uint64_t seed);

/// Sum_a c_a O_a applied to a state in the span of the error-free codewords.
/// Trailing factors after the codeword qubits are carried along.
StateVector apply_coherent(const QuantumCode& code, const StateVector& psi_physical, const CVector& c);

StateVector apply_standard(const QuantumCode& code, const StateVector& psi_physical, std::size_t a);

/// rho = Sum_j p_j K_j |psi><psi| K_j^dagger with K_j = Sum_a c_ja O_a.
DensityMatrix apply_mixture(const QuantumCode& code, const StateVector& psi_physical, const MixtureError& mixture);
DensityMatrix apply_mixture(const QuantumCode& code, const DensityMatrix& rho, const MixtureError& mixture);

/// Appends eta as the trailing factor and applies V to (qubit k, environment).
StateVector entangle_environment(const QuantumCode& code, const StateVector& psi_physical, std::size_t k,
                                 const EnvironmentModel& model);

BranchDecomposition branch_decompose(const EnvironmentModel& model);

struct ZVectors {
  /// Correct word, phase error, bit error, combined error.
  StateVector zero, phase, bit, both;
};

/// Built from single_out's components with the sign/swap patterns
///   Z_0 = X_z0|0> + X_z1|1>,  Z_r = X_z0|0> - X_z1|1>,
///   Z_s = X_z0|1> + X_z1|0>,  Z_t = X_z0|1> - X_z1|0>.
ZVectors z_vectors(const QuantumCode& code, int z, std::size_t k);

/// True when the 8 vectors for z = 0, 1 are orthonormal within NORM_TOL.
bool z_vectors_orthonormal(const QuantumCode& code, std::size_t k);

/// The four-branch sum for an encoded logical state:
///   Sum_z psi_z [Z_0 (mu+tau)/2 + Z_r (mu-tau)/2 + Z_s (nu+sigma)/2 + Z_t (nu-sigma)/2].
StateVector branch_reconstruction(const QuantumCode& code, const StateVector& logical, std::size_t k,
                                  const BranchDecomposition& branches);

}  // namespace qcode
