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

#include "qcode/codes.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace qcode {

namespace {

bool valid_letter(char c) { return c == 'I' || c == 'X' || c == 'Z' || c == 'W'; }

struct PauliMasks {
  std::size_t x = 0;
  std::size_t z = 0;
};

// Bit (L-1-q) of the codeword index is qubit q.
PauliMasks masks_of(std::string_view label) {
  PauliMasks m;
  const std::size_t L = label.size();
  for (std::size_t q = 0; q < L; ++q) {
    const std::size_t bit = std::size_t{1} << (L - 1 - q);
    switch (label[q]) {
      case 'I': break;
      case 'X': m.x |= bit; break;
      case 'Z': m.z |= bit; break;
      case 'W': m.x |= bit; m.z |= bit; break;
      default: throw InvalidArgument(std::string("invalid Pauli letter '") + label[q] + "' in \"" +
                                     std::string(label) + "\"");
    }
  }
  return m;
}

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

StateVector project_from(const std::vector<std::string>& stabilizers, const StateVector& seed) {
  StateVector v = seed;
  for (const auto& g : stabilizers) v = v + apply_pauli_string(g, v);
  return v.normalized();
}

CodeSpec repetition3() {
  CodeSpec s;
  s.name = "repetition3";
  s.n_physical = 3;
  s.logical_basis = {StateVector::basis(qubit_dims(3), 0b000), StateVector::basis(qubit_dims(3), 0b111)};
  s.standard_errors = {"III", "XII", "IXI", "IIX"};
  return s;
}

// Every qubit gets X, Z and W after the identity, qubit-major.
std::vector<std::string> single_qubit_errors(std::size_t n_physical) {
  std::vector<std::string> out{std::string(n_physical, 'I')};
  for (std::size_t q = 0; q < n_physical; ++q) {
    for (char p : {'X', 'Z', 'W'}) {
      std::string label(n_physical, 'I');
      label[q] = p;
      out.push_back(label);
    }
  }
  return out;
}

CodeSpec perfect5() {
  const std::vector<std::string> generators = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
  CodeSpec s;
  s.name = "perfect5";
  s.n_physical = 5;
  s.logical_basis = {project_from(generators, StateVector::basis(qubit_dims(5), 0b00000)),
                     project_from(generators, StateVector::basis(qubit_dims(5), 0b11111))};
  s.standard_errors = single_qubit_errors(5);
  return s;
}

CodeSpec steane7() {
  // Rows of the Hamming parity-check matrix: column q holds the binary
  // digits of q + 1. Their span is the even-weight half of the Hamming code.
  constexpr std::size_t n = 7;
  std::array<std::size_t, 3> rows{};
  for (std::size_t r = 0; r < 3; ++r) {
    for (std::size_t q = 0; q < n; ++q) {
      if (((q + 1) >> r) & 1u) rows[r] |= std::size_t{1} << (n - 1 - q);
    }
  }
  CVector zero = CVector::Zero(1 << n);
  CVector one = CVector::Zero(1 << n);
  const double amp = 1.0 / std::sqrt(8.0);
  for (std::size_t m = 0; m < 8; ++m) {
    std::size_t word = 0;
    for (std::size_t r = 0; r < 3; ++r) {
      if ((m >> r) & 1u) word ^= rows[r];
    }
    zero[static_cast<Eigen::Index>(word)] = amp;
    one[static_cast<Eigen::Index>(word ^ 0b1111111)] = amp;
  }

  CodeSpec s;
  s.name = "steane7";
  s.n_physical = n;
  s.logical_basis = {StateVector(zero, qubit_dims(n)), StateVector(one, qubit_dims(n))};
  s.standard_errors = single_qubit_errors(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::string label(n, 'I');
      label[i] = 'Z';
      label[j] = 'X';
      s.standard_errors.push_back(label);
    }
  }
  return s;
}

}  // namespace

void validate_spec(const CodeSpec& spec) {
  if (spec.n_physical < 2 || spec.n_physical > 10) {
    throw InvalidArgument("n_physical must be in [2, 10], got " + std::to_string(spec.n_physical));
  }
  const std::size_t syndromes = std::size_t{1} << spec.ancilla_qubits();
  if (spec.standard_errors.size() != syndromes) {
    throw InvalidArgument("standard_errors must have 2^" + std::to_string(spec.ancilla_qubits()) + " = " +
                          std::to_string(syndromes) + " entries, got " +
                          std::to_string(spec.standard_errors.size()));
  }
  for (std::size_t a = 0; a < syndromes; ++a) {
    const auto& label = spec.standard_errors[a];
    if (label.size() != spec.n_physical) {
      throw InvalidArgument("standard_errors[" + std::to_string(a) + "] has length " +
                            std::to_string(label.size()) + ", expected " + std::to_string(spec.n_physical));
    }
    for (char c : label) {
      if (!valid_letter(c)) throw InvalidArgument("standard_errors[" + std::to_string(a) + "] has invalid letter");
    }
  }
  if (spec.standard_errors[0] != std::string(spec.n_physical, 'I')) {
    throw InvalidArgument("standard_errors[0] must be the identity");
  }
  const Dims dims = qubit_dims(spec.n_physical);
  for (int z = 0; z < 2; ++z) {
    const auto& v = spec.logical_basis[static_cast<std::size_t>(z)];
    if (v.factors() != dims) {
      throw InvalidArgument("logical_basis[" + std::to_string(z) + "] is not a state of n_physical qubits");
    }
    if (!v.is_normalized()) throw InvalidArgument("logical_basis[" + std::to_string(z) + "] is not normalized");
  }
  if (std::abs(spec.logical_basis[0].inner(spec.logical_basis[1])) > NORM_TOL) {
    throw InvalidArgument("logical_basis states are not orthogonal");
  }
}

QuantumCode::QuantumCode(CodeSpec spec) : spec_(std::move(spec)) {
  validate_spec(spec_);
  const std::size_t syndromes = syndrome_count();
  const auto d = static_cast<Eigen::Index>(dim());
  CMatrix e(d, d);
  for (int z = 0; z < 2; ++z) {
    for (std::size_t a = 0; a < syndromes; ++a) {
      e.col(static_cast<Eigen::Index>(static_cast<std::size_t>(z) * syndromes + a)) =
          apply_pauli_string(spec_.standard_errors[a], logical_codeword(z)).amplitudes();
    }
  }
  const CMatrix gram = e.adjoint() * e;
  const CMatrix defect = gram - CMatrix::Identity(d, d);
  Eigen::Index row = 0, col = 0;
  const double worst = defect.cwiseAbs().maxCoeff(&row, &col);
  if (worst > NORM_TOL) {
    auto label = [&](Eigen::Index c) {
      const auto z = static_cast<std::size_t>(c) / syndromes;
      const auto a = static_cast<std::size_t>(c) % syndromes;
      return "|" + std::to_string(z) + "_" + std::to_string(a) + "> (" + spec_.standard_errors[a] + ")";
    };
    throw NonOrthonormalBasis("code '" + spec_.name + "': basis vectors " + label(row) + " and " + label(col) +
                              " violate orthonormality by " + std::to_string(worst));
  }
  encoding_ = DenseOperator(std::move(e), codeword_dims());
}

StateVector QuantumCode::physical_basis(int z, std::size_t a) const {
  if ((z != 0 && z != 1) || a >= syndrome_count()) throw InvalidArgument("physical basis index out of range");
  return {encoding_.matrix().col(static_cast<Eigen::Index>(static_cast<std::size_t>(z) * syndrome_count() + a)),
          codeword_dims()};
}

std::size_t QuantumCode::syndrome_of(std::string_view label) const {
  for (std::size_t a = 0; a < spec_.standard_errors.size(); ++a) {
    if (spec_.standard_errors[a] == label) return a;
  }
  throw InvalidArgument("'" + std::string(label) + "' is not a standard error of " + spec_.name);
}

QuantumCode build_code(CodeSpec spec) { return QuantumCode(std::move(spec)); }

CodeSpec builtin_spec(std::string_view name) {
  if (name == "repetition3") return repetition3();
  if (name == "perfect5") return perfect5();
  if (name == "steane7") return steane7();
  throw InvalidArgument("unknown built-in code '" + std::string(name) + "'");
}

std::vector<std::string> builtin_code_names() { return {"repetition3", "perfect5", "steane7"}; }

StateVector encode(const QuantumCode& code, const StateVector& logical) {
  if (logical.dim() != 2) throw DimensionMismatch("encode expects a single logical qubit");
  logical.require_normalized("logical state");
  return code.logical_codeword(0) * logical[0] + code.logical_codeword(1) * logical[1];
}

StateVector decode(const QuantumCode& code, const StateVector& physical) {
  const std::size_t nq = code.n_physical();
  const auto& f = physical.factors();
  if (f.size() < nq || !std::all_of(f.begin(), f.begin() + static_cast<std::ptrdiff_t>(nq),
                                    [](std::size_t d) { return d == 2; })) {
    throw DimensionMismatch("decode expects the leading " + std::to_string(nq) + " factors to be codeword qubits");
  }
  // amplitudes laid out as (codeword c, rest r) row-major; map as rest x codeword
  // column-major so the codeword index is the column.
  const auto cw = static_cast<Eigen::Index>(code.dim());
  const auto rest = static_cast<Eigen::Index>(physical.dim()) / cw;
  Eigen::Map<const CMatrix> in(physical.amplitudes().data(), rest, cw);
  CMatrix out = in * code.encoding().matrix().conjugate();
  return {Eigen::Map<const CVector>(out.data(), out.size()), f};
}

StateVector apply_pauli_string(std::string_view label, const StateVector& psi) {
  const std::size_t L = label.size();
  const auto& f = psi.factors();
  if (f.size() < L) throw DimensionMismatch("Pauli string longer than the number of factors");
  for (std::size_t q = 0; q < L; ++q) {
    if (f[q] != 2) throw DimensionMismatch("Pauli string acts on a non-qubit factor");
  }
  const PauliMasks m = masks_of(label);
  const std::size_t cw = std::size_t{1} << L;
  const std::size_t rest = psi.dim() / cw;
  const auto& in = psi.amplitudes();
  CVector out(in.size());
  for (std::size_t c = 0; c < cw; ++c) {
    const double sign = (std::popcount(c & m.z) & 1) ? -1.0 : 1.0;
    const std::size_t target = c ^ m.x;
    out.segment(static_cast<Eigen::Index>(target * rest), static_cast<Eigen::Index>(rest)) =
        sign * in.segment(static_cast<Eigen::Index>(c * rest), static_cast<Eigen::Index>(rest));
  }
  return {std::move(out), f};
}

DenseOperator pauli_string_operator(std::string_view label) {
  const PauliMasks m = masks_of(label);
  const std::size_t d = std::size_t{1} << label.size();
  CMatrix op = CMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (std::size_t c = 0; c < d; ++c) {
    op(static_cast<Eigen::Index>(c ^ m.x), static_cast<Eigen::Index>(c)) =
        (std::popcount(c & m.z) & 1) ? -1.0 : 1.0;
  }
  return {std::move(op), qubit_dims(label.size())};
}

DenseOperator standard_error_operator(const QuantumCode& code, std::size_t a) {
  if (a >= code.syndrome_count()) {
    throw InvalidArgument("syndrome " + std::to_string(a) + " out of range for " + code.name());
  }
  return pauli_string_operator(code.spec().standard_errors[a]);
}

// ---------------------------------------------------------------------------

StateVector insert_qubit(const StateVector& rest, const StateVector& qubit, std::size_t k) {
  const std::size_t n = rest.factors().size() + 1;
  if (k >= n) throw InvalidArgument("qubit position out of range");
  if (qubit.dim() != 2) throw DimensionMismatch("insert_qubit expects a single qubit");
  const std::size_t pos = n - 1 - k;
  const std::size_t low_mask = (std::size_t{1} << pos) - 1;
  CVector out(std::size_t{1} << n);
  for (std::size_t c = 0; c < (std::size_t{1} << n); ++c) {
    const std::size_t bit = (c >> pos) & 1u;
    const std::size_t r = ((c >> (pos + 1)) << pos) | (c & low_mask);
    out[static_cast<Eigen::Index>(c)] = rest[r] * qubit[bit];
  }
  return {std::move(out), qubit_dims(n)};
}

StateVector QubitFactorization::reassemble() const {
  return insert_qubit(components[0], StateVector::basis({2}, 0), singled_qubit) +
         insert_qubit(components[1], StateVector::basis({2}, 1), singled_qubit);
}

QubitFactorization single_out(const QuantumCode& code, int z, std::size_t k) {
  const std::size_t n = code.n_physical();
  if (k >= n) throw InvalidArgument("qubit index " + std::to_string(k) + " out of range");
  if (z != 0 && z != 1) throw InvalidArgument("logical value must be 0 or 1");
  const auto& word = code.logical_codeword(z);
  const std::size_t pos = n - 1 - k;
  const std::size_t low_mask = (std::size_t{1} << pos) - 1;
  const auto half = static_cast<Eigen::Index>(std::size_t{1} << (n - 1));
  std::array<CVector, 2> parts{CVector::Zero(half), CVector::Zero(half)};
  for (std::size_t c = 0; c < word.dim(); ++c) {
    const std::size_t bit = (c >> pos) & 1u;
    const std::size_t r = ((c >> (pos + 1)) << pos) | (c & low_mask);
    parts[bit][static_cast<Eigen::Index>(r)] = word[c];
  }
  QubitFactorization out;
  out.singled_qubit = k;
  out.z = z;
  out.components = {StateVector(parts[0], qubit_dims(n - 1)), StateVector(parts[1], qubit_dims(n - 1))};
  return out;
}

QubitProductsReport verify_qubit_products(const QuantumCode& code, std::size_t k) {
  QubitProductsReport rep;
  rep.qubit = k;
  const std::array<QubitFactorization, 2> f{single_out(code, 0, k), single_out(code, 1, k)};
  const std::array<std::pair<int, int>, 4> idx{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

  auto check = [&](std::size_t i, std::size_t j) {
    const auto [z, y] = idx[i];
    const auto [z2, y2] = idx[j];
    ScalarProductCheck c;
    c.z = z;
    c.y = y;
    c.z2 = z2;
    c.y2 = y2;
    c.value = f[static_cast<std::size_t>(z)].components[static_cast<std::size_t>(y)].inner(
        f[static_cast<std::size_t>(z2)].components[static_cast<std::size_t>(y2)]);
    c.expected = (i == j) ? 0.5 : 0.0;
    c.pass = std::abs(c.value - c.expected) <= NORM_TOL;
    rep.products.push_back(c);
  };
  for (std::size_t i = 0; i < 4; ++i) check(i, i);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) check(i, j);
  }

  // Correct word, phase error, bit error and both, on qubit k.
  std::string phase(code.n_physical(), 'I'), bit = phase, both = phase;
  phase[k] = 'Z';
  bit[k] = 'X';
  both[k] = 'W';
  CMatrix vecs(static_cast<Eigen::Index>(code.dim()), 8);
  for (int z = 0; z < 2; ++z) {
    const auto& w = code.logical_codeword(z);
    vecs.col(4 * z + 0) = w.amplitudes();
    vecs.col(4 * z + 1) = apply_pauli_string(phase, w).amplitudes();
    vecs.col(4 * z + 2) = apply_pauli_string(bit, w).amplitudes();
    vecs.col(4 * z + 3) = apply_pauli_string(both, w).amplitudes();
  }
  rep.branch_gram_defect = max_abs(vecs.adjoint() * vecs - CMatrix::Identity(8, 8));
  rep.branch_vectors_orthonormal = rep.branch_gram_defect <= NORM_TOL;
  rep.pass = std::all_of(rep.products.begin(), rep.products.end(), [](const auto& c) { return c.pass; });
  return rep;
}

double basis_gram_defect(const QuantumCode& code) {
  const auto& e = code.encoding().matrix();
  return max_abs(e.adjoint() * e - CMatrix::Identity(e.rows(), e.cols()));
}

std::string encoding_checksum(const QuantumCode& code) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](double v) {
    unsigned char bytes[sizeof(double)];
    std::memcpy(bytes, &v, sizeof(double));
    for (unsigned char b : bytes) {
      h ^= b;
      h *= 0x100000001b3ull;
    }
  };
  const auto& e = code.encoding().matrix();
  for (Eigen::Index i = 0; i < e.rows(); ++i) {
    for (Eigen::Index j = 0; j < e.cols(); ++j) {
      feed(e(i, j).real());
      feed(e(i, j).imag());
    }
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

// ---------------------------------------------------------------------------

std::string write_spec(const CodeSpec& spec) {
  using nlohmann::json;
  std::ostringstream os;
  os << "{\n";
  os << "  \"name\": " << json(spec.name).dump() << ",\n";
  os << "  \"n_physical\": " << spec.n_physical << ",\n";
  os << "  \"logical_basis\": {\n";
  const char* keys[2] = {"zero", "one"};
  for (std::size_t z = 0; z < 2; ++z) {
    os << "    \"" << keys[z] << "\": [\n";
    const auto& v = spec.logical_basis[z];
    bool first = true;
    for (std::size_t i = 0; i < v.dim(); ++i) {
      if (v[i] == cplx(0.0)) continue;
      if (!first) os << ",\n";
      first = false;
      os << "      [" << i << ", " << fmt_double(v[i].real()) << ", " << fmt_double(v[i].imag()) << "]";
    }
    os << "\n    ]" << (z == 0 ? "," : "") << "\n";
  }
  os << "  },\n";
  os << "  \"standard_errors\": [\n";
  for (std::size_t a = 0; a < spec.standard_errors.size(); ++a) {
    os << "    " << json(spec.standard_errors[a]).dump() << (a + 1 < spec.standard_errors.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

CodeSpec parse_spec(std::string_view text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SpecParseError(std::string("malformed code-spec document: ") + e.what());
  }
  if (!doc.is_object()) throw SpecParseError("code-spec document must be an object");

  auto field = [&](const char* key) -> const json& {
    if (!doc.contains(key)) throw SpecParseError(std::string("missing field '") + key + "'");
    return doc.at(key);
  };

  CodeSpec spec;
  const json& name = field("name");
  if (!name.is_string()) throw SpecParseError("field 'name' must be a string");
  spec.name = name.get<std::string>();

  const json& np = field("n_physical");
  if (!np.is_number_unsigned() || np.get<std::size_t>() < 2 || np.get<std::size_t>() > 10) {
    throw SpecParseError("field 'n_physical' must be an integer in [2, 10]");
  }
  spec.n_physical = np.get<std::size_t>();
  const std::size_t d = std::size_t{1} << spec.n_physical;

  const json& lb = field("logical_basis");
  if (!lb.is_object()) throw SpecParseError("field 'logical_basis' must be an object with 'zero' and 'one'");
  const char* keys[2] = {"zero", "one"};
  for (std::size_t z = 0; z < 2; ++z) {
    const std::string where = std::string("logical_basis.") + keys[z];
    if (!lb.contains(keys[z]) || !lb.at(keys[z]).is_array()) {
      throw SpecParseError("field '" + where + "' must be a list of [index, re, im] triples");
    }
    CVector amps = CVector::Zero(static_cast<Eigen::Index>(d));
    for (const auto& t : lb.at(keys[z])) {
      if (!t.is_array() || t.size() != 3 || !t[0].is_number_unsigned() || !t[1].is_number() || !t[2].is_number()) {
        throw SpecParseError("field '" + where + "' has an entry that is not an [index, re, im] triple");
      }
      const auto i = t[0].get<std::size_t>();
      if (i >= d) throw SpecParseError("field '" + where + "' has basis index " + std::to_string(i) + " >= 2^n_physical");
      amps[static_cast<Eigen::Index>(i)] += cplx(t[1].get<double>(), t[2].get<double>());
    }
    spec.logical_basis[z] = StateVector(std::move(amps), qubit_dims(spec.n_physical));
  }

  const json& se = field("standard_errors");
  if (!se.is_array()) throw SpecParseError("field 'standard_errors' must be a list of strings");
  for (const auto& s : se) {
    if (!s.is_string()) throw SpecParseError("field 'standard_errors' must be a list of strings");
    spec.standard_errors.push_back(s.get<std::string>());
  }

  try {
    validate_spec(spec);
  } catch (const InvalidArgument& e) {
    throw SpecParseError(e.what());
  }
  return spec;
}

CodeSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open spec file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str());
}

void save_spec_file(const CodeSpec& spec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << write_spec(spec);
  out.flush();
  if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace qcode
