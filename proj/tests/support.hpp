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

// Reference computations used as oracles by the tests. They are written from
// the definitions with plain loops and share no code with the library beyond
// the StateVector/Eigen containers.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <bit>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;

inline Vec kron(const Vec& a, const Vec& b) {
  Vec out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    for (Eigen::Index j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  }
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
      }
    }
  }
  return out;
}

inline Mat pauli(char c) {
  Mat m = Mat::Zero(2, 2);
  switch (c) {
    case 'I': m(0, 0) = 1; m(1, 1) = 1; break;
    case 'X': m(0, 1) = 1; m(1, 0) = 1; break;
    case 'Z': m(0, 0) = 1; m(1, 1) = -1; break;
    case 'Y': m(0, 1) = cplx(0, -1); m(1, 0) = cplx(0, 1); break;
    case 'W': m(0, 1) = -1; m(1, 0) = 1; break;  // X times Z
    default: break;
  }
  return m;
}

// Leftmost letter acts on qubit 0, the most significant bit.
inline Mat pauli_string(const std::string& label) {
  Mat m = Mat::Identity(1, 1);
  for (char c : label) m = kron(m, pauli(c));
  return m;
}

inline Vec basis(std::size_t dim, std::size_t index) {
  Vec v = Vec::Zero(static_cast<Eigen::Index>(dim));
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return v;
}

// Codeword of the [[5,1,3]] code: projector onto the stabilizer space applied
// to a seed state, normalized.
inline Vec perfect5_codeword(int z) {
  const char* gens[] = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
  Vec v = basis(32, z == 0 ? 0 : 31);
  for (const char* g : gens) v = 0.5 * (v + pauli_string(g) * v);
  return v / v.norm();
}

// Row-major digits of `index` over `dims`.
inline std::vector<std::size_t> digits(std::size_t index, const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> d(dims.size());
  for (std::size_t i = dims.size(); i-- > 0;) {
    d[i] = index % dims[i];
    index /= dims[i];
  }
  return d;
}

// Reduced density matrix of |psi><psi| on the factors in `keep` (in that order).
inline Mat reduced(const Vec& psi, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
  std::size_t kd = 1;
  for (std::size_t k : keep) kd *= dims[k];
  Mat out = Mat::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  const auto n = static_cast<std::size_t>(psi.size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto di = digits(i, dims);
    for (std::size_t j = 0; j < n; ++j) {
      const auto dj = digits(j, dims);
      bool traced_equal = true;
      for (std::size_t f = 0; f < dims.size() && traced_equal; ++f) {
        bool kept = false;
        for (std::size_t k : keep) kept = kept || k == f;
        if (!kept && di[f] != dj[f]) traced_equal = false;
      }
      if (!traced_equal) continue;
      std::size_t r = 0, c = 0;
      for (std::size_t k : keep) {
        r = r * dims[k] + di[k];
        c = c * dims[k] + dj[k];
      }
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) +=
          psi[static_cast<Eigen::Index>(i)] * std::conj(psi[static_cast<Eigen::Index>(j)]);
    }
  }
  return out;
}

// Schmidt values across keep|rest from the spectrum of the reduced state,
// descending.
inline std::vector<double> schmidt(const Vec& psi, const std::vector<std::size_t>& dims,
                                   const std::vector<std::size_t>& keep) {
  Eigen::SelfAdjointEigenSolver<Mat> es(reduced(psi, dims, keep));
  std::vector<double> s;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) s.push_back(std::sqrt(std::max(0.0, es.eigenvalues()[i])));
  return s;
}

inline double max_abs(const Mat& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace oracle
