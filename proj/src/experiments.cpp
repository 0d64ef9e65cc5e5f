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

#include "qcode/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "qcode/constraints.hpp"
#include "qcode/recovery.hpp"
#include "qcode/seeding.hpp"

namespace qcode {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  if (value.empty() || !std::all_of(value.begin(), value.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw InvalidArgument("error-event parameter '" + key + "' must be a non-negative integer, got '" + value + "'");
  }
  try {
    return std::stoull(value);
  } catch (const std::exception&) {
    throw InvalidArgument("error-event parameter '" + key + "' is out of range");
  }
}

ordered_json stats_json(const FidelityStats& s) {
  return {{"min", s.min}, {"max", s.max}, {"mean", s.mean}, {"count", s.count}};
}

ordered_json config_json(const ExperimentConfig& c) {
  ordered_json j;
  j["command"] = command_name(c.command);
  j["code"] = c.spec_file.empty() ? c.code : std::string();
  j["spec_file"] = c.spec_file;
  j["seed"] = c.seed;
  j["trials"] = c.trials;
  j["env_dim"] = c.env_dim;
  if (c.command == Command::Recover) j["error"] = c.error;
  j["format"] = c.format == Format::Json ? "json" : "table";
  return j;
}

Check make_check(std::string name, std::string relation, double residual, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.relation = std::move(relation);
  c.residual = residual;
  c.tolerance = tolerance;
  c.pass = residual <= tolerance;
  return c;
}

// Weight classes of a standard-error list: identity, one qubit, two qubits, more.
std::array<std::size_t, 4> error_partition(const CodeSpec& spec) {
  std::array<std::size_t, 4> p{};
  for (const auto& label : spec.standard_errors) {
    const auto w = static_cast<std::size_t>(std::count_if(label.begin(), label.end(), [](char c) { return c != 'I'; }));
    ++p[std::min<std::size_t>(w, 3)];
  }
  return p;
}

bool bit_errors_only(const CodeSpec& spec) {
  return std::all_of(spec.standard_errors.begin(), spec.standard_errors.end(), [](const std::string& l) {
    return l.find_first_of("ZW") == std::string::npos;
  });
}

CMatrix interaction_for(const std::string& kind, std::size_t dim, std::uint64_t seed) {
  const CMatrix id = CMatrix::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  auto local = [&](const CMatrix& q) { return kron(DenseOperator(q, {2}), DenseOperator(id, {dim})).matrix(); };
  if (kind == "identity") return local(pauli::I());
  if (kind == "x") return local(pauli::X());
  if (kind == "z") return local(pauli::Z());
  return random_unitary(2 * dim, seed).matrix();
}

// One corrupted instance: pure or mixed, with a label for reporting.
struct Corruption {
  std::string label;
  std::optional<StateVector> pure;
  std::optional<DensityMatrix> mixed;
};

MixtureError random_mixture(const QuantumCode& code, std::size_t terms, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  MixtureError m;
  double total = 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    MixtureTerm t;
    t.probability = u(rng);
    total += t.probability;
    t.coefficients = random_coefficients(code, sub_seed(seed, j + 1));
    m.terms.push_back(std::move(t));
  }
  for (auto& t : m.terms) t.probability /= total;
  return m;
}

std::vector<Corruption> corrupt(const QuantumCode& code, const ErrorEventSpec& ev, const StateVector& word,
                                std::uint64_t ts, std::size_t trial, std::size_t env_dim,
                                const std::optional<MixtureError>& file_mixture) {
  std::vector<Corruption> out;
  const std::uint64_t base = ev.seed ? trial_seed(*ev.seed, trial) : sub_seed(ts, 1);
  switch (ev.kind) {
    case ErrorEventSpec::Kind::Standard: {
      std::vector<std::size_t> syndromes;
      if (ev.label) {
        syndromes.push_back(code.syndrome_of(*ev.label));
      } else if (ev.syndrome) {
        if (*ev.syndrome >= code.syndrome_count()) throw InvalidArgument("standard error syndrome a out of range");
        syndromes.push_back(*ev.syndrome);
      } else {
        syndromes.resize(code.syndrome_count());
        std::iota(syndromes.begin(), syndromes.end(), 0);
      }
      for (std::size_t a : syndromes) {
        out.push_back({"a=" + std::to_string(a), apply_standard(code, word, a), std::nullopt});
      }
      break;
    }
    case ErrorEventSpec::Kind::Coherent:
      out.push_back({"coherent", apply_coherent(code, word, random_coefficients(code, base)), std::nullopt});
      break;
    case ErrorEventSpec::Kind::Mixture: {
      const MixtureError m = file_mixture ? *file_mixture : random_mixture(code, ev.terms, base);
      out.push_back({"mixture", std::nullopt, apply_mixture(code, word, m)});
      break;
    }
    case ErrorEventSpec::Kind::Environment: {
      const std::size_t dim = ev.dim.value_or(env_dim);
      std::vector<std::size_t> qubits;
      if (ev.qubit) {
        if (*ev.qubit >= code.n_physical()) throw InvalidArgument("environment qubit out of range");
        qubits.push_back(*ev.qubit);
      } else {
        qubits.resize(code.n_physical());
        std::iota(qubits.begin(), qubits.end(), 0);
      }
      for (std::size_t k : qubits) {
        const std::uint64_t s = sub_seed(base, k);
        const StateVector eta = random_state({dim}, sub_seed(s, 1));
        const EnvironmentModel model =
            EnvironmentModel::with_interaction(interaction_for(ev.interaction, dim, sub_seed(s, 2)), eta);
        out.push_back({"qubit=" + std::to_string(k), entangle_environment(code, word, k, model), std::nullopt});
      }
      break;
    }
  }
  return out;
}

// Squared norm of the junk per ancilla syndrome (junk factors: ancilla qubits, extras).
ordered_json junk_profile(const StateVector& junk, std::size_t syndromes) {
  ordered_json profile = ordered_json::array();
  const std::size_t rest = junk.dim() / syndromes;
  for (std::size_t a = 0; a < syndromes; ++a) {
    const double w = junk.amplitudes().segment(static_cast<Eigen::Index>(a * rest), static_cast<Eigen::Index>(rest))
                         .squaredNorm();
    if (w > 1e-15) profile.push_back({{"syndrome", a}, {"weight", w}});
  }
  return profile;
}

std::string fmt_sci(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------

std::string command_name(Command c) {
  switch (c) {
    case Command::Verify: return "verify";
    case Command::Recover: return "recover";
    case Command::Constraints: return "constraints";
    case Command::ExportSpec: return "export-spec";
  }
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (trials < 1) throw InvalidArgument("--trials must be >= 1");
  if (env_dim < 2 || env_dim > kMaxEnvDim) throw InvalidArgument("--env-dim must be in [2, 8]");
  if (spec_file.empty()) {
    const auto names = builtin_code_names();
    if (std::find(names.begin(), names.end(), code) == names.end()) {
      throw InvalidArgument("unknown code '" + code + "' (expected repetition3, perfect5 or steane7)");
    }
  }
  if (command == Command::Recover) parse_error_event(error);
  if (command == Command::ExportSpec && !output_path) throw InvalidArgument("export-spec requires --out");
}

ErrorEventSpec parse_error_event(const std::string& text) {
  ErrorEventSpec ev;
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string params = colon == std::string::npos ? std::string() : text.substr(colon + 1);
  if (kind == "standard") {
    ev.kind = ErrorEventSpec::Kind::Standard;
  } else if (kind == "coherent") {
    ev.kind = ErrorEventSpec::Kind::Coherent;
  } else if (kind == "mixture") {
    ev.kind = ErrorEventSpec::Kind::Mixture;
  } else if (kind == "env") {
    ev.kind = ErrorEventSpec::Kind::Environment;
  } else {
    throw InvalidArgument("unknown error-event kind '" + kind + "' (expected standard, coherent, mixture or env)");
  }

  for (const auto& kv : split(params, ',')) {
    if (kv.empty()) continue;
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw InvalidArgument("error-event parameter '" + kv + "' is not key=value");
    const std::string key = kv.substr(0, eq);
    const std::string value = kv.substr(eq + 1);
    using K = ErrorEventSpec::Kind;
    if (key == "seed") {
      ev.seed = parse_uint(key, value);
    } else if (ev.kind == K::Standard && key == "a") {
      if (value != "all") ev.syndrome = parse_uint(key, value);
    } else if (ev.kind == K::Standard && key == "label") {
      ev.label = value;
    } else if (ev.kind == K::Mixture && key == "terms") {
      ev.terms = parse_uint(key, value);
      if (ev.terms < 1) throw InvalidArgument("error-event parameter 'terms' must be >= 1");
    } else if (ev.kind == K::Mixture && key == "file") {
      ev.file = value;
    } else if (ev.kind == K::Environment && key == "qubit") {
      if (value != "all") ev.qubit = parse_uint(key, value);
    } else if (ev.kind == K::Environment && key == "dim") {
      ev.dim = parse_uint(key, value);
      if (*ev.dim < 2 || *ev.dim > kMaxEnvDim) throw InvalidArgument("error-event parameter 'dim' must be in [2, 8]");
    } else if (ev.kind == K::Environment && key == "v") {
      if (value != "random" && value != "identity" && value != "x" && value != "z") {
        throw InvalidArgument("error-event parameter 'v' must be random, identity, x or z");
      }
      ev.interaction = value;
    } else {
      throw InvalidArgument("unknown parameter '" + key + "' for error-event kind '" + kind + "'");
    }
  }
  return ev;
}

MixtureError load_mixture_file(const std::string& path, const QuantumCode& code) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open mixture file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed mixture file: ") + e.what());
  }
  if (!doc.contains("terms") || !doc["terms"].is_array()) throw InvalidArgument("mixture file needs a 'terms' list");
  MixtureError m;
  for (const auto& t : doc["terms"]) {
    if (!t.contains("p") || !t.contains("c") || !t["c"].is_array()) {
      throw InvalidArgument("mixture term needs 'p' and 'c'");
    }
    MixtureTerm term;
    term.probability = t["p"].get<double>();
    term.coefficients = CVector::Zero(static_cast<Eigen::Index>(code.syndrome_count()));
    if (t["c"].size() != code.syndrome_count()) throw InvalidArgument("mixture term 'c' must have 2^n entries");
    for (std::size_t a = 0; a < code.syndrome_count(); ++a) {
      const auto& z = t["c"][a];
      term.coefficients[static_cast<Eigen::Index>(a)] = cplx(z.at(0).get<double>(), z.at(1).get<double>());
    }
    m.terms.push_back(std::move(term));
  }
  validate_event(code, ErrorEvent{m});
  return m;
}

void FidelityStats::add(double f) {
  min = std::min(min, f);
  max = std::max(max, f);
  mean += f;
  ++count;
}

void FidelityStats::finish() {
  if (count) mean /= static_cast<double>(count);
}

bool Report::verdict() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok(); });
}

ordered_json Report::to_json() const {
  ordered_json j;
  j["tool"] = "qcode";
  j["version"] = kToolVersion;
  j["config"] = config_json(config);
  j["summary"] = summary;
  ordered_json arr = ordered_json::array();
  for (const auto& c : checks) {
    ordered_json e;
    e["name"] = c.name;
    e["relation"] = c.relation;
    e["residual"] = c.residual;
    e["tolerance"] = c.tolerance;
    e["status"] = c.pass ? "pass" : (c.expected_fail ? "expected-fail" : (c.report_only ? "reported" : "fail"));
    if (c.fidelity) e["fidelity"] = stats_json(*c.fidelity);
    if (!c.details.is_null()) e["details"] = c.details;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["verdict"] = verdict() ? "pass" : "fail";
  return j;
}

std::string Report::to_table() const {
  std::ostringstream os;
  os << "qcode " << kToolVersion << "  " << command_name(config.command) << "  code="
     << (config.spec_file.empty() ? config.code : config.spec_file) << "  seed=" << config.seed
     << "  trials=" << config.trials << "\n";
  for (const auto& [k, v] : summary.items()) {
    if (v.is_primitive()) os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());
  os << std::left << std::setw(static_cast<int>(width + 2)) << "check" << std::setw(12) << "residual"
     << std::setw(12) << "tolerance" << std::setw(15) << "status"
     << "min fidelity\n";
  for (const auto& c : checks) {
    const char* status = c.pass ? "pass" : (c.expected_fail ? "expected-fail" : (c.report_only ? "reported" : "FAIL"));
    os << std::left << std::setw(static_cast<int>(width + 2)) << c.name << std::setw(12) << fmt_sci(c.residual)
       << std::setw(12) << fmt_sci(c.tolerance) << std::setw(15) << status;
    if (c.fidelity) os << std::setprecision(15) << c.fidelity->min;
    os << "\n";
  }
  os << "verdict: " << (verdict() ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string Report::render() const {
  return config.format == Format::Json ? to_json().dump(2) + "\n" : to_table();
}

QuantumCode load_code(const ExperimentConfig& config) {
  return build_code(config.spec_file.empty() ? builtin_spec(config.code) : load_spec_file(config.spec_file));
}

// ---------------------------------------------------------------------------

Report cmd_verify(const ExperimentConfig& config) {
  config.validate();
  Report rep;
  rep.config = config;
  const QuantumCode code = load_code(config);
  const CodeSpec& spec = code.spec();
  const std::size_t n = code.ancilla_qubits();
  const CMatrix& e = code.encoding().matrix();

  rep.summary["code"] = code.name();
  rep.summary["n_physical"] = code.n_physical();
  rep.summary["ancilla_qubits"] = n;
  rep.summary["e_checksum"] = encoding_checksum(code);

  rep.checks.push_back(make_check("code.basis_completeness", "<Z_a^(z), Z_b^(z')> = d_ab d_zz'",
                                  basis_gram_defect(code), NORM_TOL));
  rep.checks.push_back(make_check("code.decode_roundtrip", "E^dagger E = 1", code.encoding().unitarity_defect(), 1e-12));

  const double imag = e.imag().cwiseAbs().maxCoeff();
  Check real = make_check("code.real_orthogonal", "Im E = 0 and E E^T = 1",
                          std::max(imag, max_abs(e * e.transpose() - CMatrix::Identity(e.rows(), e.cols()))), 1e-12);
  real.details = {{"max_imag", imag}};
  real.report_only = imag != 0.0;  // complex codes are valid, just not real orthogonal
  rep.checks.push_back(std::move(real));

  const std::size_t expected = std::size_t{1} << n;
  Check count = make_check("code.error_count", "|standard errors| = 2^n",
                           std::abs(static_cast<double>(spec.standard_errors.size()) - static_cast<double>(expected)), 0.0);
  const auto part = error_partition(spec);
  count.details = {{"identity", part[0]}, {"single_qubit", part[1]}, {"two_qubit", part[2]}, {"higher", part[3]},
                   {"total", spec.standard_errors.size()}, {"two_to_n", expected}};
  rep.checks.push_back(std::move(count));

  const std::array<std::size_t, 3> n_classes{1, 3 * code.n_physical(), code.n_physical() * (code.n_physical() - 1)};
  if (code.name() == "steane7" || code.name() == "perfect5") {
    // Full single-qubit coverage (1 + 3(n+1)), plus ordered Z/X pairs for the 7-qubit code.
    const std::size_t pairs = code.name() == "steane7" ? n_classes[2] : 0;
    const double dev = std::abs(static_cast<double>(part[1]) - static_cast<double>(n_classes[1])) +
                       std::abs(static_cast<double>(part[2]) - static_cast<double>(pairs)) +
                       std::abs(static_cast<double>(n_classes[0] + n_classes[1] + pairs) - static_cast<double>(expected));
    Check c = make_check("code.counting_identity", "1 + 3(n+1) [+ (n+1)n ordered pairs] = 2^n", dev, 0.0);
    c.details = {{"identity", n_classes[0]}, {"single_qubit", n_classes[1]}, {"ordered_pairs", pairs},
                 {"sum", n_classes[0] + n_classes[1] + pairs}, {"two_to_n", expected}};
    rep.checks.push_back(std::move(c));
  }

  const ConstraintSet cs = constraint_basis(code);
  Check cc = make_check("code.constraint_count", "#C_alpha = 2(2^n - 1)",
                        std::abs(static_cast<double>(cs.size()) - 2.0 * static_cast<double>(expected - 1)), 0.0);
  cc.details = {{"count", cs.size()}};
  rep.checks.push_back(std::move(cc));

  const bool bit_only = bit_errors_only(spec);
  std::size_t failed_qubits = 0;
  for (std::size_t k = 0; k < code.n_physical(); ++k) {
    const QubitProductsReport q = verify_qubit_products(code, k);
    double worst = 0.0;
    ordered_json products = ordered_json::array();
    for (const auto& p : q.products) {
      worst = std::max(worst, std::abs(p.value - p.expected));
      products.push_back({{"pair", std::to_string(p.z) + std::to_string(p.y) + "," + std::to_string(p.z2) +
                                       std::to_string(p.y2)},
                          {"re", p.value.real()},
                          {"im", p.value.imag()},
                          {"expected", p.expected},
                          {"pass", p.pass}});
    }
    Check c = make_check("qubit_products.q" + std::to_string(k), "<X_zy, X_z'y'> = 1/2 d_zz' d_yy'", worst, NORM_TOL);
    c.details = {{"products", products.size()},
                 {"branch_gram_defect", q.branch_gram_defect},
                 {"branch_vectors_orthonormal", q.branch_vectors_orthonormal},
                 {"values", products}};
    if (!c.pass) {
      ++failed_qubits;
      c.expected_fail = bit_only;
    }
    rep.checks.push_back(std::move(c));
  }
  rep.summary["qubit_product_failures"] = failed_qubits;
  rep.summary["scope"] = bit_only ? "bit-errors-only" : "general";
  return rep;
}

Report cmd_recover(const ExperimentConfig& config) {
  config.validate();
  Report rep;
  rep.config = config;
  const QuantumCode code = load_code(config);
  const ErrorEventSpec ev = parse_error_event(config.error);
  const SyndromeTransfer transfer = build_syndrome_transfer(code);
  std::optional<MixtureError> file_mixture;
  if (ev.file) file_mixture = load_mixture_file(*ev.file, code);

  FidelityStats decoded, in_place, agreement;
  double max_schmidt = 0.0, min_purity = 1.0;
  std::size_t not_corrigible = 0, cases = 0;
  bool any_pure = false, any_mixed = false;
  ordered_json first_junk;

  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t ts = trial_seed(config.seed, t);
    const StateVector psi = random_state({2}, sub_seed(ts, 0));
    const StateVector word = encode(code, psi);
    for (const auto& c : corrupt(code, ev, word, ts, t, config.env_dim, file_mixture)) {
      ++cases;
      if (c.pure) {
        any_pure = true;
        std::optional<StateVector> by_decoding;
        try {
          const RecoveryOutcome r = recover_by_decoding(code, *c.pure, psi);
          decoded.add(r.fidelity);
          max_schmidt = std::max(max_schmidt, r.factored.second_schmidt());
          by_decoding = r.logical_state;
          if (first_junk.is_null()) first_junk = junk_profile(*r.junk, code.syndrome_count());
        } catch (const NotCorrigible&) {
          ++not_corrigible;
          decoded.add(0.0);
          const std::array<std::size_t, 1> left{0};
          max_schmidt = std::max(max_schmidt, factorization(decode(code, *c.pure), left).second_schmidt());
        }
        try {
          const RecoveryOutcome r = recover_in_place(code, *c.pure, transfer, psi);
          in_place.add(r.fidelity);
          agreement.add(by_decoding ? fidelity(*by_decoding, *r.logical_state) : 0.0);
        } catch (const NotCorrigible&) {
          in_place.add(0.0);
          agreement.add(0.0);
        }
      } else {
        any_mixed = true;
        try {
          const RecoveryOutcome r = recover_mixture(code, *c.mixed, psi);
          decoded.add(r.fidelity);
          min_purity = std::min(min_purity, r.purity);
        } catch (const NotCorrigible&) {
          ++not_corrigible;
          decoded.add(0.0);
          min_purity = 0.0;
        }
      }
    }
  }
  decoded.finish();
  in_place.finish();
  agreement.finish();

  rep.summary["code"] = code.name();
  rep.summary["error"] = config.error;
  rep.summary["cases"] = cases;
  rep.summary["not_corrigible"] = not_corrigible;
  rep.summary["transfer_order"] = transfer.order();
  if (!first_junk.is_null()) rep.summary["junk_norm_profile"] = first_junk;

  Check dec = make_check("recover.decode.fidelity", "E^dagger Sum c_a|Z_a> = |z> (x) Sum c_a|a>", 1.0 - decoded.min, 1e-10);
  dec.fidelity = decoded;
  rep.checks.push_back(std::move(dec));

  if (any_pure) {
    rep.checks.push_back(make_check("recover.decode.product", "second Schmidt value across logical | rest",
                                    max_schmidt, PRODUCT_TOL));

    // Specified columns: |Z_a^(z)> |b=0> -> |Z_0^(z)> |b=a>.
    double column_defect = 0.0;
    const Dims dims = qubit_dims(code.n_physical() + code.ancilla_qubits());
    for (int z = 0; z < 2; ++z) {
      for (std::size_t a = 0; a < code.syndrome_count(); ++a) {
        const StateVector in = tensor(code.physical_basis(z, a), StateVector::basis(qubit_dims(code.ancilla_qubits()), 0));
        const StateVector want =
            tensor(code.physical_basis(z, 0), StateVector::basis(qubit_dims(code.ancilla_qubits()), a));
        column_defect = std::max(column_defect, max_abs((transfer.apply(in) - want).amplitudes()));
      }
    }
    Check cols = make_check("recover.transfer.columns", "|Z_a>|b=0> -> |Z_0>|b=a>", column_defect, 1e-12);
    cols.details = {{"order", transfer.order()}, {"dense", transfer.dense().has_value()}};
    if (transfer.dense()) cols.details["unitarity_defect"] = transfer.dense()->unitarity_defect();
    rep.checks.push_back(std::move(cols));

    Check ip = make_check("recover.in_place.fidelity", "restored codeword decodes to the input", 1.0 - in_place.min, 1e-10);
    ip.fidelity = in_place;
    rep.checks.push_back(std::move(ip));
    Check ag = make_check("recover.agreement", "decode and in-place recoveries agree", 1.0 - agreement.min, 1e-10);
    ag.fidelity = agreement;
    rep.checks.push_back(std::move(ag));
  }
  if (any_mixed) {
    rep.checks.push_back(make_check("recover.mixture.purity", "E^dagger rho E = |z><z| (x) rho_ancilla",
                                    1.0 - min_purity, PRODUCT_TOL));
  }
  return rep;
}

Report cmd_constraints(const ExperimentConfig& config) {
  config.validate();
  Report rep;
  rep.config = config;
  const QuantumCode code = load_code(config);
  const std::size_t n = code.ancilla_qubits();
  const std::size_t syn = code.syndrome_count();
  const ConstraintSet cs = constraint_basis(code);
  const CMatrix& e = code.encoding().matrix();

  rep.summary["code"] = code.name();
  rep.summary["constraint_count"] = cs.size();

  Check count = make_check("constraints.count", "#C_alpha = 2(2^n - 1)",
                           std::abs(static_cast<double>(cs.size()) - 2.0 * static_cast<double>(syn - 1)), 0.0);
  count.details = {{"count", cs.size()}};
  rep.checks.push_back(std::move(count));
  const auto m = static_cast<Eigen::Index>(cs.size());
  rep.checks.push_back(make_check("constraints.orthonormal", "<C_alpha, C_beta> = d_alpha_beta",
                                  max_abs(cs.vectors().adjoint() * cs.vectors() - CMatrix::Identity(m, m)), 1e-12));
  rep.checks.push_back(make_check("constraints.annihilate_legal", "<C_alpha, psi> = 0 for legal psi",
                                  max_abs(cs.vectors().adjoint() * cs.legal_basis()), 1e-12));

  FidelityStats gauge_fid;
  double subspace_mix = 0.0, homomorphism = 0.0, rep_unitarity = 0.0, closure = 0.0, p_herm = 0.0, p_legal = 0.0;
  double multi_legal = 0.0, multi_corrupted = 0.0, scalar_dev = 0.0;
  const auto s = static_cast<Eigen::Index>(syn);

  auto legal_unitary = [&](std::uint64_t seed) {
    return logical_lift(code, random_unitary(2, sub_seed(seed, 1))) *
           gauge_lift(code, little_group_element(n, sub_seed(seed, 2)));
  };

  for (std::size_t t = 0; t < config.trials; ++t) {
    const std::uint64_t ts = trial_seed(config.seed, t);

    const DenseOperator g = gauge_lift(code, little_group_element(n, sub_seed(ts, 1)));
    const StateVector psi = random_state({2}, sub_seed(ts, 2));
    gauge_fid.add(recover_by_decoding(code, apply(g, encode(code, psi)), psi).fidelity);
    subspace_mix = std::max(subspace_mix, max_abs(e.middleCols(s, s).adjoint() * g.matrix() * e.leftCols(s)));

    const DenseOperator w1 = legal_unitary(sub_seed(ts, 3));
    const DenseOperator w2 = legal_unitary(sub_seed(ts, 4));
    const CMatrix a1 = representation_matrix(cs, w1);
    const CMatrix a2 = representation_matrix(cs, w2);
    homomorphism = std::max(homomorphism, max_abs(representation_matrix(cs, w1 * w2) - a1 * a2));
    rep_unitarity = std::max(rep_unitarity, max_abs(a1.adjoint() * a1 - CMatrix::Identity(m, m)));

    const ConstraintOperator mo = constraint_operator(cs, random_hermitian(cs.size(), sub_seed(ts, 5)));
    const ConstraintOperator no = constraint_operator(cs, random_hermitian(cs.size(), sub_seed(ts, 6)));
    const ConstraintOperator po = commutator_closure(mo, no);
    closure = std::max(closure, closure_residual(mo, no, po));
    p_herm = std::max(p_herm, po.op.hermiticity_defect());
    p_legal = std::max(p_legal, max_abs(po.op.matrix() * cs.legal_basis()));

    // Two codewords of this code in a random (entangled) logical state.
    const StateVector chi = random_state({2, 2}, sub_seed(ts, 7));
    StateVector multi = StateVector::zero(qubit_dims(2 * code.n_physical()));
    for (int z1 = 0; z1 < 2; ++z1) {
      for (int z2 = 0; z2 < 2; ++z2) {
        multi = multi + tensor(code.logical_codeword(z1), code.logical_codeword(z2)) *
                            chi[static_cast<std::size_t>(2 * z1 + z2)];
      }
    }
    const std::array<ConstraintOperator, 2> pair{mo, no};
    multi_legal = std::max(multi_legal, multi_codeword_constraint(pair, multi));
    const StateVector c1 = apply_coherent(code, multi, random_coefficients(code, sub_seed(ts, 8)));
    StateVector c2 = c1;
    {
      // Coherent error on the second codeword: move its qubits to the front.
      const CVector c = random_coefficients(code, sub_seed(ts, 9));
      StateVector acc = StateVector::zero(c1.factors());
      for (std::size_t a = 0; a < syn; ++a) {
        const std::string label = std::string(code.n_physical(), 'I') + code.spec().standard_errors[a];
        acc = acc + apply_pauli_string(label, c1) * c[static_cast<Eigen::Index>(a)];
      }
      c2 = acc;
    }
    multi_corrupted = std::max(multi_corrupted, multi_codeword_constraint(pair, c2));

    const StateVector phi = random_state({2}, sub_seed(ts, 10));
    const StateVector chi2 = random_state({2}, sub_seed(ts, 11));
    scalar_dev = std::max(scalar_dev,
                          scalar_product_check(code, phi, chi2, random_coefficients(code, sub_seed(ts, 12))).deviation);
  }
  gauge_fid.finish();

  Check gi = make_check("gauge.invariance", "G = E(1 (x) g)E^dagger leaves the logical state intact",
                        1.0 - gauge_fid.min, 1e-10);
  gi.fidelity = gauge_fid;
  rep.checks.push_back(std::move(gi));
  rep.checks.push_back(make_check("gauge.subspace", "G does not mix the logical 0 and 1 sectors", subspace_mix, 1e-10));
  rep.checks.push_back(make_check("representation.homomorphism", "A(W1 W2) = A(W1) A(W2)", homomorphism, 1e-10));
  rep.checks.push_back(make_check("representation.unitary", "A(W)^dagger A(W) = 1", rep_unitarity, 1e-10));

  Check nl = make_check("representation.rejects_illegal", "a standard error O_1 is not a legal unitary", 0.0, 0.0);
  try {
    representation_matrix(cs, standard_error_operator(code, 1));
    nl.pass = false;
  } catch (const NotLegal&) {
    nl.pass = true;
  }
  nl.details = {{"legality_defect", legality_defect(cs, standard_error_operator(code, 1))}};
  rep.checks.push_back(std::move(nl));

  rep.checks.push_back(make_check("closure.commutator", "[M, N] = iP", closure, 1e-10));
  rep.checks.push_back(make_check("closure.hermitian", "P = P^dagger", p_herm, 1e-10));
  rep.checks.push_back(make_check("closure.annihilates_legal", "P psi = 0 for legal psi", p_legal, 1e-10));
  rep.checks.push_back(make_check("multi_codeword.legal", "(M_1 (x) N_2) psi = 0 for legal psi", multi_legal, 1e-10));
  Check mc = make_check("multi_codeword.corrupted", "(M_1 (x) N_2) psi for corrigibly corrupted psi", multi_corrupted, 1e-10);
  mc.report_only = true;
  rep.checks.push_back(std::move(mc));
  rep.checks.push_back(make_check("scalar_product", "<Phi, Psi> = <phi, psi>", scalar_dev, 1e-12));
  return rep;
}

Report cmd_export_spec(const ExperimentConfig& config) {
  config.validate();
  Report rep;
  rep.config = config;
  const CodeSpec spec = config.spec_file.empty() ? builtin_spec(config.code) : load_spec_file(config.spec_file);
  const QuantumCode code = build_code(spec);
  save_spec_file(spec, *config.output_path);
  const QuantumCode reloaded = build_code(load_spec_file(*config.output_path));

  rep.summary["code"] = code.name();
  rep.summary["path"] = *config.output_path;
  rep.summary["e_checksum"] = encoding_checksum(code);
  Check rt = make_check("export.roundtrip", "re-ingested spec reproduces E bit for bit",
                        encoding_checksum(reloaded) == encoding_checksum(code) ? 0.0 : 1.0, 0.0);
  rt.details = {{"reloaded_checksum", encoding_checksum(reloaded)}};
  rep.checks.push_back(std::move(rt));
  return rep;
}

Report run(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::Verify: return cmd_verify(config);
    case Command::Recover: return cmd_recover(config);
    case Command::Constraints: return cmd_constraints(config);
    case Command::ExportSpec: return cmd_export_spec(config);
  }
  throw InvalidArgument("unknown command");
}

}  // namespace qcode
