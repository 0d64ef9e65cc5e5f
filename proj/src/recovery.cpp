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

#include "qcode/recovery.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <string>

namespace qcode {

namespace {

// Factor indices on the logical side of the cut: `leading` followed by the
// companions, each shifted by `shift`.
std::vector<std::size_t> logical_side(std::vector<std::size_t> leading, std::span<const std::size_t> companions,
                                      std::size_t shift, std::size_t codeword_qubits, std::size_t factor_count) {
  for (std::size_t c : companions) {
    if (c < codeword_qubits || c >= factor_count) {
      throw InvalidArgument("companion factor " + std::to_string(c) + " must follow the codeword qubits");
    }
    leading.push_back(c + shift);
  }
  return leading;
}

std::string schmidt_message(const FactorizationReport& f) {
  return "second Schmidt value " + std::to_string(f.second_schmidt()) + " exceeds " + std::to_string(PRODUCT_TOL);
}

// Amplitudes of a (codeword, extras) state with the codeword index in the
// columns of a (extras x codeword) column-major matrix.
CMatrix codeword_columns(const StateVector& psi, std::size_t code_dim) {
  const auto cw = static_cast<Eigen::Index>(code_dim);
  const auto rest = static_cast<Eigen::Index>(psi.dim()) / cw;
  return Eigen::Map<const CMatrix>(psi.amplitudes().data(), rest, cw);
}

void require_codeword_prefix(const QuantumCode& code, const StateVector& psi, std::size_t extra_qubits = 0) {
  const auto& f = psi.factors();
  const std::size_t need = code.n_physical() + extra_qubits;
  if (f.size() < need ||
      !std::all_of(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(need), [](std::size_t d) { return d == 2; })) {
    throw DimensionMismatch("state does not start with " + std::to_string(need) + " qubit factors");
  }
}

}  // namespace

RecoveryOutcome recover_by_decoding(const QuantumCode& code, const StateVector& corrupted,
                                    const StateVector& reference, std::span<const std::size_t> companions) {
  require_codeword_prefix(code, corrupted);
  const StateVector decoded = decode(code, corrupted);
  const auto left = logical_side({0}, companions, 0, code.n_physical(), decoded.factors().size());

  RecoveryOutcome out;
  out.factored = factorization(decoded, left);
  if (!out.factored.is_product) throw NotCorrigible("decoded state is entangled across the logical cut: " +
                                                    schmidt_message(out.factored));
  out.logical_state = out.factored.left_factor;
  out.junk = out.factored.right_factor;
  out.fidelity = fidelity(*out.logical_state, reference);
  return out;
}

RecoveryOutcome recover_mixture(const QuantumCode& code, const DensityMatrix& rho, const StateVector& reference) {
  if (rho.factors().size() < code.n_physical()) throw DimensionMismatch("density matrix smaller than a codeword");
  const auto rest = static_cast<Eigen::Index>(rho.dim() / code.dim());
  CMatrix dec = code.encoding().matrix().adjoint();
  if (rest > 1) dec = kron(DenseOperator(dec, code.codeword_dims()),
                           DenseOperator::identity({static_cast<std::size_t>(rest)})).matrix();
  const CMatrix decoded = dec * rho.matrix() * dec.adjoint();
  const CMatrix herm = 0.5 * (decoded + decoded.adjoint());

  const std::array<std::size_t, 1> keep{0};
  RecoveryOutcome out;
  out.logical_density = partial_trace(DensityMatrix(herm, rho.factors()), keep);
  out.purity = out.logical_density->purity();
  out.fidelity = fidelity(reference, *out.logical_density);
  if (out.purity < 1.0 - PRODUCT_TOL) {
    throw NotCorrigible("reduced logical state is mixed (purity " + std::to_string(out.purity) + ")");
  }
  out.factored.is_product = true;
  return out;
}

SyndromeTransfer::SyndromeTransfer(const QuantumCode& code)
    : encoding_(code.encoding().matrix()),
      n_(code.ancilla_qubits()),
      code_dim_(code.dim()),
      syndromes_(code.syndrome_count()) {
  if (order() <= kDenseLimit) {
    const Dims dims = qubit_dims(code.n_physical() + n_);
    const auto d = static_cast<Eigen::Index>(order());
    CMatrix m(d, d);
    for (Eigen::Index j = 0; j < d; ++j) m.col(j) = apply(StateVector::basis(dims, static_cast<std::size_t>(j))).amplitudes();
    dense_ = DenseOperator(std::move(m), dims);
  }
}

StateVector SyndromeTransfer::apply(const StateVector& psi) const {
  const auto& f = psi.factors();
  const std::size_t nq = static_cast<std::size_t>(std::countr_zero(code_dim_)) + n_;
  if (f.size() < nq || !std::all_of(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(nq),
                                    [](std::size_t d) { return d == 2; })) {
    throw DimensionMismatch("syndrome transfer expects codeword and second-ancilla qubits first");
  }
  const std::size_t rest = psi.dim() / order();
  const std::size_t inner = syndromes_ * rest;  // (b, rest) block per codeword index

  // Decode: columns indexed by (z, a), rows by (b, rest).
  const CMatrix decoded = codeword_columns(psi, code_dim_) * encoding_.conjugate();

  // |z, a, b> -> |z, b, a xor b>
  CMatrix permuted(static_cast<Eigen::Index>(inner), static_cast<Eigen::Index>(code_dim_));
  for (std::size_t z = 0; z < 2; ++z) {
    for (std::size_t a = 0; a < syndromes_; ++a) {
      for (std::size_t b = 0; b < syndromes_; ++b) {
        const auto src_col = static_cast<Eigen::Index>(z * syndromes_ + a);
        const auto dst_col = static_cast<Eigen::Index>(z * syndromes_ + b);
        const auto src_row = static_cast<Eigen::Index>(b * rest);
        const auto dst_row = static_cast<Eigen::Index>((a ^ b) * rest);
        permuted.block(dst_row, dst_col, static_cast<Eigen::Index>(rest), 1) =
            decoded.block(src_row, src_col, static_cast<Eigen::Index>(rest), 1);
      }
    }
  }

  const CMatrix encoded = permuted * encoding_.transpose();
  return {Eigen::Map<const CVector>(encoded.data(), encoded.size()), f};
}

SyndromeTransfer build_syndrome_transfer(const QuantumCode& code) { return SyndromeTransfer(code); }

RecoveryOutcome recover_in_place(const QuantumCode& code, const StateVector& corrupted,
                                 const SyndromeTransfer& transfer, const StateVector& reference,
                                 std::span<const std::size_t> companions) {
  require_codeword_prefix(code, corrupted);
  if (transfer.ancilla_qubits() != code.ancilla_qubits()) {
    throw DimensionMismatch("syndrome transfer was built for a different code");
  }
  const std::size_t nq = code.n_physical();
  const std::size_t n = code.ancilla_qubits();

  // Insert |b=0> after the codeword qubits.
  Dims dims(corrupted.factors().begin(), corrupted.factors().begin() + static_cast<std::ptrdiff_t>(nq));
  dims.insert(dims.end(), n, 2);
  dims.insert(dims.end(), corrupted.factors().begin() + static_cast<std::ptrdiff_t>(nq), corrupted.factors().end());
  const std::size_t rest = corrupted.dim() / code.dim();
  const std::size_t block = code.syndrome_count() * rest;
  CVector amps = CVector::Zero(static_cast<Eigen::Index>(corrupted.dim() * code.syndrome_count()));
  for (std::size_t c = 0; c < code.dim(); ++c) {
    amps.segment(static_cast<Eigen::Index>(c * block), static_cast<Eigen::Index>(rest)) =
        corrupted.amplitudes().segment(static_cast<Eigen::Index>(c * rest), static_cast<Eigen::Index>(rest));
  }
  const StateVector transferred = transfer.apply(StateVector(std::move(amps), dims));

  std::vector<std::size_t> codeword(nq);
  for (std::size_t q = 0; q < nq; ++q) codeword[q] = q;
  const auto left = logical_side(std::move(codeword), companions, n, nq, corrupted.factors().size());

  RecoveryOutcome out;
  out.factored = factorization(transferred, left);
  if (!out.factored.is_product) {
    throw NotCorrigible("restored codeword is entangled with the second ancilla: " + schmidt_message(out.factored));
  }
  out.junk = out.factored.right_factor;

  // The restored codeword must decode to (logical, companions) (x) |a=0>.
  const StateVector restored = out.factored.left_factor;
  const StateVector decoded = decode(code, restored);
  const std::size_t comp = restored.dim() / code.dim();
  CVector logical(static_cast<Eigen::Index>(2 * comp));
  for (std::size_t z = 0; z < 2; ++z) {
    logical.segment(static_cast<Eigen::Index>(z * comp), static_cast<Eigen::Index>(comp)) =
        decoded.amplitudes().segment(static_cast<Eigen::Index>(z * code.syndrome_count() * comp),
                                     static_cast<Eigen::Index>(comp));
  }
  if (std::abs(logical.squaredNorm() - 1.0) > NORM_TOL) {
    throw NotCorrigible("restored codeword is not an error-free codeword");
  }
  Dims logical_dims{2};
  for (std::size_t c : companions) logical_dims.push_back(corrupted.factors()[c]);
  out.logical_state = StateVector(std::move(logical), logical_dims);
  out.fidelity = fidelity(*out.logical_state, reference);
  return out;
}

StateVector refresh_ancilla(const StateVector& decoded, std::size_t ancilla_qubits) {
  if (decoded.factors().size() < 2 || decoded.factors()[0] != 2) {
    throw DimensionMismatch("refresh_ancilla expects (logical qubit, junk...) factors");
  }
  const std::array<std::size_t, 1> left{0};
  const FactorizationReport f = factorization(decoded, left);
  if (!f.is_product) throw NotAProduct("logical qubit is entangled with the ancilla: " + schmidt_message(f));
  return tensor(f.left_factor, StateVector::basis(qubit_dims(ancilla_qubits), 0));
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity of states with different dimensions");
  return std::norm(a.inner(b));
}

double fidelity(const StateVector& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("fidelity of states with different dimensions");
  return a.amplitudes().dot(b.matrix() * a.amplitudes()).real();
}

double fidelity(const DensityMatrix& a, const StateVector& b) { return fidelity(b, a); }

}  // namespace qcode
