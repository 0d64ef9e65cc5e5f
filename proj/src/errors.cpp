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

#include "qcode/errors.hpp"

#include <algorithm>
#include <cmath>
#include <type_traits>
#include <random>
#include <string>

#include "qcode/seeding.hpp"

namespace qcode {

namespace {

// Squared norm of the part of psi outside span{|0_0>, |1_0>} (x) extras.
double illegal_weight(const QuantumCode& code, const StateVector& psi) {
  const StateVector d = decode(code, psi);
  const std::size_t syn = code.syndrome_count();
  const std::size_t rest = d.dim() / code.dim();
  double w = 0.0;
  for (std::size_t c = 0; c < code.dim(); ++c) {
    if (c % syn == 0) continue;
    w += d.amplitudes().segment(static_cast<Eigen::Index>(c * rest), static_cast<Eigen::Index>(rest)).squaredNorm();
  }
  return w;
}

void require_coefficients(const QuantumCode& code, const CVector& c, const std::string& what) {
  if (static_cast<std::size_t>(c.size()) != code.syndrome_count()) {
    throw InvalidArgument(what + " must have 2^n = " + std::to_string(code.syndrome_count()) + " entries");
  }
  if (std::abs(c.squaredNorm() - 1.0) > NORM_TOL) throw InvalidArgument(what + " must be normalized");
}

CMatrix kraus(const QuantumCode& code, const CVector& c) {
  const auto d = static_cast<Eigen::Index>(code.dim());
  CMatrix k = CMatrix::Zero(d, d);
  for (std::size_t a = 0; a < code.syndrome_count(); ++a) {
    const cplx ca = c[static_cast<Eigen::Index>(a)];
    if (ca != cplx(0.0)) k += ca * standard_error_operator(code, a).matrix();
  }
  return k;
}

void validate_mixture(const QuantumCode& code, const MixtureError& mixture) {
  if (mixture.terms.empty()) throw InvalidArgument("mixture has no terms");
  double total = 0.0;
  for (std::size_t j = 0; j < mixture.terms.size(); ++j) {
    const auto& t = mixture.terms[j];
    if (!(t.probability > 0.0)) throw InvalidArgument("mixture probability p_" + std::to_string(j) + " must be > 0");
    total += t.probability;
    require_coefficients(code, t.coefficients, "mixture coefficients c_" + std::to_string(j));
  }
  if (std::abs(total - 1.0) > NORM_TOL) throw InvalidArgument("mixture probabilities must sum to 1");
}

}  // namespace

void EnvironmentModel::validate() const {
  if (dim < 1 || dim > kMaxEnvDim) throw InvalidArgument("environment dimension must be in [1, 8]");
  if (eta.dim() != dim) throw DimensionMismatch("eta does not match the environment dimension");
  eta.require_normalized("environment state eta");
  if (interaction.dim() != 2 * dim) throw DimensionMismatch("interaction must have order 2d");
  if (!interaction.is_unitary()) throw InvalidArgument("environment interaction is not unitary");
}

EnvironmentModel EnvironmentModel::random(std::size_t dim, std::uint64_t seed) {
  if (dim < 1 || dim > kMaxEnvDim) throw InvalidArgument("environment dimension must be in [1, 8]");
  EnvironmentModel m;
  m.dim = dim;
  m.eta = random_state({dim}, sub_seed(seed, 1));
  m.interaction = DenseOperator(random_unitary(2 * dim, sub_seed(seed, 2)).matrix(), {2, dim});
  return m;
}

EnvironmentModel EnvironmentModel::with_interaction(const CMatrix& qubit_env_op, const StateVector& eta) {
  EnvironmentModel m;
  m.dim = eta.dim();
  m.eta = StateVector(eta.amplitudes(), {m.dim});
  m.interaction = DenseOperator(qubit_env_op, {2, m.dim});
  m.validate();
  return m;
}

std::array<StateVector, 4> BranchDecomposition::branch_weights() const {
  return {(mu + tau) * 0.5, (mu - tau) * 0.5, (nu + sigma) * 0.5, (nu - sigma) * 0.5};
}

double BranchDecomposition::unitarity_defect() const {
  const double a = std::abs(mu.amplitudes().squaredNorm() + nu.amplitudes().squaredNorm() - 1.0);
  const double b = std::abs(sigma.amplitudes().squaredNorm() + tau.amplitudes().squaredNorm() - 1.0);
  const double c = std::abs(mu.inner(sigma) + nu.inner(tau));
  return std::max({a, b, c});
}

void validate_event(const QuantumCode& code, const ErrorEvent& event) {
  std::visit(
      [&](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, StandardError>) {
          if (e.syndrome >= code.syndrome_count()) throw InvalidArgument("standard error syndrome out of range");
        } else if constexpr (std::is_same_v<T, CoherentError>) {
          require_coefficients(code, e.coefficients, "coherent coefficients");
        } else if constexpr (std::is_same_v<T, MixtureError>) {
          validate_mixture(code, e);
        } else {
          if (e.qubit >= code.n_physical()) throw InvalidArgument("environment qubit out of range");
          e.model.validate();
        }
      },
      event);
}

CVector random_coefficients(const QuantumCode& code, std::uint64_t seed) {
  return random_state({code.syndrome_count()}, seed).amplitudes();
}

StateVector apply_coherent(const QuantumCode& code, const StateVector& psi_physical, const CVector& c) {
  require_coefficients(code, c, "coherent coefficients");
  if (illegal_weight(code, psi_physical) > NORM_TOL) {
    throw InvalidArgument("apply_coherent expects a state in the span of the error-free codewords");
  }
  StateVector out = StateVector::zero(psi_physical.factors());
  for (std::size_t a = 0; a < code.syndrome_count(); ++a) {
    const cplx ca = c[static_cast<Eigen::Index>(a)];
    if (ca != cplx(0.0)) out = out + apply_pauli_string(code.spec().standard_errors[a], psi_physical) * ca;
  }
  return out;
}

StateVector apply_standard(const QuantumCode& code, const StateVector& psi_physical, std::size_t a) {
  if (a >= code.syndrome_count()) throw InvalidArgument("standard error syndrome out of range");
  return apply_pauli_string(code.spec().standard_errors[a], psi_physical);
}

DensityMatrix apply_mixture(const QuantumCode& code, const StateVector& psi_physical, const MixtureError& mixture) {
  validate_mixture(code, mixture);
  psi_physical.require_normalized("codeword state");
  const auto d = static_cast<Eigen::Index>(psi_physical.dim());
  CMatrix rho = CMatrix::Zero(d, d);
  for (const auto& t : mixture.terms) {
    const CVector phi = apply_coherent(code, psi_physical, t.coefficients).amplitudes();
    rho += t.probability * phi * phi.adjoint();
  }
  return {std::move(rho), psi_physical.factors()};
}

DensityMatrix apply_mixture(const QuantumCode& code, const DensityMatrix& rho, const MixtureError& mixture) {
  validate_mixture(code, mixture);
  if (rho.factors() != code.codeword_dims()) throw DimensionMismatch("mixture input must be a codeword density matrix");
  const CVector w0 = code.logical_codeword(0).amplitudes();
  const CVector w1 = code.logical_codeword(1).amplitudes();
  const CMatrix proj = w0 * w0.adjoint() + w1 * w1.adjoint();
  if (std::abs((proj * rho.matrix()).trace() - 1.0) > NORM_TOL) {
    throw InvalidArgument("apply_mixture expects a state supported on the error-free codewords");
  }
  const auto d = static_cast<Eigen::Index>(code.dim());
  CMatrix out = CMatrix::Zero(d, d);
  for (const auto& t : mixture.terms) {
    const CMatrix k = kraus(code, t.coefficients);
    out += t.probability * k * rho.matrix() * k.adjoint();
  }
  return {std::move(out), rho.factors()};
}

StateVector entangle_environment(const QuantumCode& code, const StateVector& psi_physical, std::size_t k,
                                 const EnvironmentModel& model) {
  if (k >= code.n_physical()) throw InvalidArgument("environment qubit " + std::to_string(k) + " out of range");
  model.validate();
  const StateVector joint = tensor(psi_physical, model.eta);
  const std::array<std::size_t, 2> targets{k, joint.factors().size() - 1};
  return apply_local(model.interaction.matrix(), targets, joint);
}

BranchDecomposition branch_decompose(const EnvironmentModel& model) {
  model.validate();
  const auto d = static_cast<Eigen::Index>(model.dim);
  const Dims env{model.dim};
  const CMatrix& v = model.interaction.matrix();
  // Rows [0, d) carry qubit |0>, rows [d, 2d) qubit |1>.
  const CVector from0 = v.leftCols(d) * model.eta.amplitudes();
  const CVector from1 = v.rightCols(d) * model.eta.amplitudes();
  BranchDecomposition b;
  b.mu = StateVector(from0.head(d), env);
  b.nu = StateVector(from0.tail(d), env);
  b.sigma = StateVector(from1.head(d), env);
  b.tau = StateVector(from1.tail(d), env);
  return b;
}

ZVectors z_vectors(const QuantumCode& code, int z, std::size_t k) {
  const QubitFactorization f = single_out(code, z, k);
  const StateVector zero = StateVector::basis({2}, 0);
  const StateVector one = StateVector::basis({2}, 1);
  const StateVector a0 = insert_qubit(f.components[0], zero, k);
  const StateVector a1 = insert_qubit(f.components[0], one, k);
  const StateVector b0 = insert_qubit(f.components[1], zero, k);
  const StateVector b1 = insert_qubit(f.components[1], one, k);
  return {a0 + b1, a0 - b1, a1 + b0, a1 - b0};
}

bool z_vectors_orthonormal(const QuantumCode& code, std::size_t k) {
  CMatrix m(static_cast<Eigen::Index>(code.dim()), 8);
  for (int z = 0; z < 2; ++z) {
    const ZVectors v = z_vectors(code, z, k);
    m.col(4 * z + 0) = v.zero.amplitudes();
    m.col(4 * z + 1) = v.phase.amplitudes();
    m.col(4 * z + 2) = v.bit.amplitudes();
    m.col(4 * z + 3) = v.both.amplitudes();
  }
  return max_abs(m.adjoint() * m - CMatrix::Identity(8, 8)) <= NORM_TOL;
}

StateVector branch_reconstruction(const QuantumCode& code, const StateVector& logical, std::size_t k,
                                  const BranchDecomposition& branches) {
  if (logical.dim() != 2) throw DimensionMismatch("branch_reconstruction expects a single logical qubit");
  const auto w = branches.branch_weights();
  StateVector out = StateVector::zero(concat(code.codeword_dims(), w[0].factors()));
  for (int z = 0; z < 2; ++z) {
    const ZVectors v = z_vectors(code, z, k);
    const StateVector sum = tensor(v.zero, w[0]) + tensor(v.phase, w[1]) + tensor(v.bit, w[2]) + tensor(v.both, w[3]);
    out = out + sum * logical[static_cast<std::size_t>(z)];
  }
  return out;
}

}  // namespace qcode
