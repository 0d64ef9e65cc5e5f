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

#include "qcode/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace qcode {

namespace {

std::vector<std::size_t> strides_of(const Dims& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;) s[i - 1] = s[i] * dims[i];
  return s;
}

// Offsets of every target multi-index, and the base index of every
// configuration of the remaining factors (in row-major order of those
// factors). Full index = base + offset.
struct Split {
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> bases;
  Dims target_dims;
  Dims rest_dims;
};

Split split_factors(const Dims& dims, std::span<const std::size_t> targets) {
  std::vector<bool> used(dims.size(), false);
  for (std::size_t t : targets) {
    if (t >= dims.size()) {
      throw InvalidArgument("factor index " + std::to_string(t) + " out of range for " +
                            std::to_string(dims.size()) + " factors");
    }
    if (used[t]) throw InvalidArgument("duplicate factor index " + std::to_string(t));
    used[t] = true;
  }
  const auto stride = strides_of(dims);

  Split out;
  std::vector<std::size_t> rest;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    if (!used[f]) {
      rest.push_back(f);
      out.rest_dims.push_back(dims[f]);
    }
  }
  for (std::size_t t : targets) out.target_dims.push_back(dims[t]);

  auto enumerate = [&](const std::vector<std::size_t>& fs) {
    std::size_t count = 1;
    for (std::size_t f : fs) count *= dims[f];
    std::vector<std::size_t> result(count);
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t rem = j;
      std::size_t off = 0;
      for (std::size_t i = fs.size(); i-- > 0;) {
        off += (rem % dims[fs[i]]) * stride[fs[i]];
        rem /= dims[fs[i]];
      }
      result[j] = off;
    }
    return result;
  };
  out.offsets = enumerate(std::vector<std::size_t>(targets.begin(), targets.end()));
  out.bases = enumerate(rest);
  return out;
}

std::string dims_string(const Dims& d) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
  os << "]";
  return os.str();
}

}  // namespace

std::size_t product(const Dims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

Dims qubit_dims(std::size_t count) { return Dims(count, 2); }

Dims concat(const Dims& a, const Dims& b) {
  Dims out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}


// ---------------------------------------------------------------------------

StateVector::StateVector(CVector amplitudes, Dims factors)
    : amps_(std::move(amplitudes)), factors_(std::move(factors)) {
  if (product(factors_) != static_cast<std::size_t>(amps_.size())) {
    throw DimensionMismatch("state of length " + std::to_string(amps_.size()) +
                            " does not match factors " + dims_string(factors_));
  }
}

StateVector StateVector::basis(const Dims& factors, std::size_t index) {
  const std::size_t d = product(factors);
  if (index >= d) throw InvalidArgument("basis index out of range");
  CVector v = CVector::Zero(static_cast<Eigen::Index>(d));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return {std::move(v), factors};
}

StateVector StateVector::zero(const Dims& factors) {
  return {CVector::Zero(static_cast<Eigen::Index>(product(factors))), factors};
}

StateVector StateVector::qubit(cplx alpha, cplx beta) {
  CVector v(2);
  v << alpha, beta;
  return {std::move(v), {2}};
}

bool StateVector::is_normalized(double tol) const { return std::abs(amps_.squaredNorm() - 1.0) <= tol; }

void StateVector::require_normalized(const char* what) const {
  if (!is_normalized()) {
    throw InvalidArgument(std::string(what) + " must be normalized (norm^2 = " +
                          std::to_string(amps_.squaredNorm()) + ")");
  }
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
  return {amps_ / n, factors_};
}

cplx StateVector::inner(const StateVector& other) const {
  if (dim() != other.dim()) throw DimensionMismatch("inner product of states with different dimensions");
  return amps_.dot(other.amps_);
}

StateVector StateVector::operator+(const StateVector& o) const {
  if (factors_ != o.factors_) throw DimensionMismatch("sum of states with different factors");
  return {amps_ + o.amps_, factors_};
}

StateVector StateVector::operator-(const StateVector& o) const {
  if (factors_ != o.factors_) throw DimensionMismatch("difference of states with different factors");
  return {amps_ - o.amps_, factors_};
}

StateVector StateVector::operator*(cplx s) const { return {amps_ * s, factors_}; }

// ---------------------------------------------------------------------------

DenseOperator::DenseOperator(CMatrix entries, Dims factors) : m_(std::move(entries)), factors_(std::move(factors)) {
  if (m_.rows() != m_.cols() || product(factors_) != static_cast<std::size_t>(m_.rows())) {
    throw DimensionMismatch("operator of shape " + std::to_string(m_.rows()) + "x" + std::to_string(m_.cols()) +
                            " does not match factors " + dims_string(factors_));
  }
}

DenseOperator DenseOperator::identity(const Dims& factors) {
  const auto d = static_cast<Eigen::Index>(product(factors));
  return {CMatrix::Identity(d, d), factors};
}

double DenseOperator::unitarity_defect() const {
  return max_abs(m_.adjoint() * m_ - CMatrix::Identity(m_.rows(), m_.cols()));
}

double DenseOperator::hermiticity_defect() const { return max_abs(m_ - m_.adjoint()); }

DenseOperator DenseOperator::adjoint() const { return {m_.adjoint(), factors_}; }

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("operator product dimension mismatch");
  return {m_ * o.m_, factors_};
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(CMatrix entries, Dims factors) : m_(std::move(entries)), factors_(std::move(factors)) {
  if (m_.rows() != m_.cols() || product(factors_) != static_cast<std::size_t>(m_.rows())) {
    throw DimensionMismatch("density matrix does not match factors " + dims_string(factors_));
  }
  if (max_abs(m_ - m_.adjoint()) > NORM_TOL) throw InvalidArgument("density matrix is not Hermitian");
  if (std::abs(m_.trace() - 1.0) > NORM_TOL) throw InvalidArgument("density matrix trace is not 1");
  if (eigenvalues().minCoeff() < -NORM_TOL) throw InvalidArgument("density matrix is not positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  psi.require_normalized("pure state");
  return {psi.amplitudes() * psi.amplitudes().adjoint(), psi.factors()};
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

RVector DensityMatrix::eigenvalues() const {
  const CMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

// ---------------------------------------------------------------------------

StateVector tensor(const StateVector& a, const StateVector& b) {
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  CVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x[i] * y;
  return {std::move(out), concat(a.factors(), b.factors())};
}

DenseOperator kron(const DenseOperator& a, const DenseOperator& b) {
  const auto& x = a.matrix();
  const auto& y = b.matrix();
  CMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return {std::move(out), concat(a.factors(), b.factors())};
}

StateVector apply(const DenseOperator& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) {
    throw DimensionMismatch("operator of order " + std::to_string(op.dim()) + " applied to state of length " +
                            std::to_string(psi.dim()));
  }
  return {op.matrix() * psi.amplitudes(), psi.factors()};
}

StateVector apply_local(const CMatrix& op, std::span<const std::size_t> targets, const StateVector& psi) {
  const Split sp = split_factors(psi.factors(), targets);
  const auto td = static_cast<Eigen::Index>(sp.offsets.size());
  if (op.rows() != td || op.cols() != td) {
    throw DimensionMismatch("local operator of order " + std::to_string(op.rows()) +
                            " does not match target dimension " + std::to_string(td));
  }
  const auto& in = psi.amplitudes();
  CVector out(in.size());
  CVector gathered(td);
  for (std::size_t base : sp.bases) {
    for (Eigen::Index j = 0; j < td; ++j) gathered[j] = in[static_cast<Eigen::Index>(base + sp.offsets[j])];
    const CVector mapped = op * gathered;
    for (Eigen::Index j = 0; j < td; ++j) out[static_cast<Eigen::Index>(base + sp.offsets[j])] = mapped[j];
  }
  return {std::move(out), psi.factors()};
}

DenseOperator embed(const DenseOperator& op, std::span<const std::size_t> targets, const Dims& full_factors) {
  const Split sp = split_factors(full_factors, targets);
  if (product(sp.target_dims) != op.dim()) {
    throw DimensionMismatch("embedded operator of order " + std::to_string(op.dim()) +
                            " does not match target dimensions " + dims_string(sp.target_dims));
  }
  const auto d = static_cast<Eigen::Index>(product(full_factors));
  CMatrix full = CMatrix::Zero(d, d);
  const auto& m = op.matrix();
  for (std::size_t base : sp.bases) {
    for (std::size_t j = 0; j < sp.offsets.size(); ++j) {
      for (std::size_t k = 0; k < sp.offsets.size(); ++k) {
        full(static_cast<Eigen::Index>(base + sp.offsets[j]), static_cast<Eigen::Index>(base + sp.offsets[k])) =
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      }
    }
  }
  return {std::move(full), full_factors};
}

FactorizationReport factorization(const StateVector& psi, std::span<const std::size_t> left) {
  if (left.empty() || left.size() >= psi.factors().size()) {
    throw InvalidArgument("factorization cut must leave both sides nonempty");
  }
  const Split sp = split_factors(psi.factors(), left);
  const auto rows = static_cast<Eigen::Index>(sp.offsets.size());
  const auto cols = static_cast<Eigen::Index>(sp.bases.size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = psi[sp.bases[c] + sp.offsets[r]];
  }

  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector s = svd.singularValues();

  FactorizationReport rep;
  rep.schmidt_values.assign(s.data(), s.data() + s.size());
  rep.is_product = std::all_of(rep.schmidt_values.begin() + 1, rep.schmidt_values.end(),
                               [](double v) { return v <= PRODUCT_TOL; });
  if (rep.is_product) {
    // JacobiSVD's singular vectors can be off by ~1e-8 on wide complex
    // matrices; one power step u <- M M^dagger u squares that away.
    CVector u = m * (m.adjoint() * svd.matrixU().col(0));
    u.normalize();
    rep.left_factor = StateVector(u, sp.target_dims);
    rep.right_factor = StateVector((u.adjoint() * m).transpose(), sp.rest_dims);
  }
  return rep;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  if (keep.empty()) throw InvalidArgument("partial trace must keep at least one factor");
  const Split sp = split_factors(rho.factors(), keep);
  const auto k = static_cast<Eigen::Index>(sp.offsets.size());
  const auto& m = rho.matrix();
  CMatrix out = CMatrix::Zero(k, k);
  for (std::size_t base : sp.bases) {
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        out(i, j) += m(static_cast<Eigen::Index>(base + sp.offsets[i]), static_cast<Eigen::Index>(base + sp.offsets[j]));
      }
    }
  }
  return {std::move(out), sp.target_dims};
}

namespace {

CMatrix ginibre(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im) * M_SQRT1_2;
    }
  }
  return g;
}

}  // namespace

DenseOperator random_unitary(std::size_t dim, std::uint64_t seed) {
  if (dim == 0) throw InvalidArgument("random_unitary requires dim >= 1");
  const CMatrix z = ginibre(dim, dim, seed);
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a == 0.0) ? cplx(1.0) : d / a;
  }
  return {std::move(q), Dims{dim}};
}

StateVector random_state(const Dims& factors, std::uint64_t seed) {
  const CMatrix g = ginibre(product(factors), 1, seed);
  CVector v = g.col(0);
  v /= v.norm();
  return {std::move(v), factors};
}

CMatrix random_hermitian(std::size_t dim, std::uint64_t seed) {
  const CMatrix g = ginibre(dim, dim, seed);
  return 0.5 * (g + g.adjoint());
}

namespace pauli {

CMatrix I() { return CMatrix::Identity(2, 2); }

CMatrix X() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix Z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

CMatrix W() { return X() * Z(); }

}  // namespace pauli

}  // namespace qcode
