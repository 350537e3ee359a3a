#include "qfa/serialization.hpp"

#include <fstream>
#include <iomanip>

#include "qfa/errors.hpp"

namespace qfa {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("machine file: missing field '") + key + "'");
  return j.at(key);
}

Complex complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ValidationError("machine file: complex entry must be a number or an [re, im] pair, got " + j.dump());
}

std::vector<std::string> strings_from_json(const json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string("machine file: '") + what + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& s : j) {
    if (!s.is_string()) throw ValidationError(std::string("machine file: '") + what + "' must be an array of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

std::vector<ComplexMatrix> kraus_from_json(const json& j, const std::string& symbol) {
  if (!j.is_array() || j.empty()) throw ValidationError("machine file: operation for '" + symbol + "' must be a nonempty list of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

json kraus_to_json(const std::vector<ComplexMatrix>& kraus) {
  json out = json::array();
  for (const auto& k : kraus) out.push_back(matrix_to_json(k));
  return out;
}

const json& op_entry(const json& ops, const std::string& symbol) {
  if (!ops.is_object() || !ops.contains(symbol)) throw ValidationError("machine file: no operation for symbol '" + symbol + "'");
  return ops.at(symbol);
}

void require_exact_keys(const json& ops, std::size_t expected, const char* what) {
  if (!ops.is_object() || ops.size() != expected) {
    throw ValidationError(std::string("machine file: '") + what + "' must have exactly one entry per symbol");
  }
}

std::size_t index_from_json(const json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ValidationError(std::string("machine file: '") + what + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

json header(const char* kind, const std::vector<std::string>& alphabet) {
  return {{"kind", kind}, {"version", kMachineFileVersion}, {"alphabet", alphabet}};
}

struct ToJson {
  json operator()(const MO1gQFA& m) const {
    json j = header("mo1gqfa", m.alphabet().symbols());
    j["dim"] = m.dim();
    j["rho0"] = matrix_to_json(m.rho0());
    json ops = json::object();
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) ops[m.alphabet()[s]] = kraus_to_json(m.op(s).kraus());
    j["ops"] = std::move(ops);
    j["p_acc"] = matrix_to_json(m.p_acc());
    return j;
  }
  json operator()(const MM1gQFA& m) const {
    json j = header("mm1gqfa", m.alphabet().symbols());
    j["dim"] = m.dim();
    j["rho0"] = matrix_to_json(m.rho0());
    json ops = json::object();
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) ops[m.alphabet()[s]] = kraus_to_json(m.op(s).kraus());
    ops[kCent] = kraus_to_json(m.cent_op().kraus());
    ops[kDollar] = kraus_to_json(m.dollar_op().kraus());
    j["ops"] = std::move(ops);
    j["projectors"] = {{"non", matrix_to_json(m.p_non())},
                       {"acc", matrix_to_json(m.p_acc())},
                       {"rej", matrix_to_json(m.p_rej())}};
    return j;
  }
  json operator()(const MOLM& m) const {
    json j = header("molm", m.alphabet().symbols());
    j["dim"] = m.dim();
    j["rho0"] = matrix_to_json(m.rho0());
    json ops = json::object();
    for (std::size_t s = 0; s < m.alphabet().size(); ++s) ops[m.alphabet()[s]] = kraus_to_json(m.ops()[s].kraus());
    ops[kCent] = kraus_to_json(m.cent_op().kraus());
    ops[kDollar] = kraus_to_json(m.dollar_op().kraus());
    j["ops"] = std::move(ops);
    j["p_acc"] = matrix_to_json(m.p_acc());
    return j;
  }
  json operator()(const BilinearMachine& b) const {
    json j = header("blm", b.symbols());
    j["states"] = b.states();
    j["pi"] = matrix_to_json(b.pi());
    json mats = json::object();
    for (std::size_t s = 0; s < b.symbols().size(); ++s) mats[b.symbols()[s]] = matrix_to_json(b.mats()[s]);
    j["mats"] = std::move(mats);
    j["eta"] = matrix_to_json(b.eta());
    return j;
  }
  json operator()(const ProbabilisticAutomaton& p) const {
    json j = header("pa", p.alphabet().symbols());
    j["states"] = p.states();
    j["pi"] = p.pi();
    json mats = json::object();
    for (std::size_t s = 0; s < p.alphabet().size(); ++s) mats[p.alphabet()[s]] = p.mats()[s];
    j["mats"] = std::move(mats);
    j["eta"] = p.eta();
    return j;
  }
  json operator()(const DFA& d) const {
    json j = header("dfa", d.alphabet().symbols());
    j["states"] = d.states();
    j["start"] = d.start();
    json accepting = json::array();
    for (std::size_t q = 0; q < d.states(); ++q) {
      if (d.accepting()[q]) accepting.push_back(q);
    }
    j["accepting"] = std::move(accepting);
    json delta = json::object();
    for (std::size_t s = 0; s < d.alphabet().size(); ++s) delta[d.alphabet()[s]] = d.delta()[s];
    j["delta"] = std::move(delta);
    return j;
  }
};

AnyMachine parse(const json& j) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw ValidationError("machine file: 'kind' must be a string");
  const auto kind = kind_field.get<std::string>();
  const json& version = field(j, "version");
  if (!version.is_number_integer() || version.get<int>() != kMachineFileVersion) {
    throw ValidationError("machine file: unsupported version " + version.dump());
  }
  const auto symbols = strings_from_json(field(j, "alphabet"), "alphabet");

  if (kind == "mo1gqfa" || kind == "mm1gqfa" || kind == "molm") {
    Alphabet alphabet(symbols);
    ComplexMatrix rho0 = matrix_from_json(field(j, "rho0"));
    const json& ops = field(j, "ops");
    const bool markers = kind != "mo1gqfa";
    require_exact_keys(ops, alphabet.size() + (markers ? 2 : 0), "ops");
    if (kind == "molm") {
      std::vector<SuperOperator> maps;
      for (const auto& s : symbols) maps.emplace_back(kraus_from_json(op_entry(ops, s), s));
      return MOLM(std::move(alphabet), std::move(rho0), std::move(maps),
                  SuperOperator(kraus_from_json(op_entry(ops, kCent), kCent)),
                  SuperOperator(kraus_from_json(op_entry(ops, kDollar), kDollar)), matrix_from_json(field(j, "p_acc")));
    }
    std::vector<QuantumOperation> channels;
    for (const auto& s : symbols) channels.emplace_back(kraus_from_json(op_entry(ops, s), s));
    if (kind == "mo1gqfa") {
      return MO1gQFA(std::move(alphabet), std::move(rho0), std::move(channels), matrix_from_json(field(j, "p_acc")));
    }
    const json& p = field(j, "projectors");
    ProjectorSet projectors({"non", "acc", "rej"}, {matrix_from_json(field(p, "non")), matrix_from_json(field(p, "acc")),
                                                    matrix_from_json(field(p, "rej"))});
    return MM1gQFA(std::move(alphabet), std::move(rho0), std::move(channels),
                   QuantumOperation(kraus_from_json(op_entry(ops, kCent), kCent)),
                   QuantumOperation(kraus_from_json(op_entry(ops, kDollar), kDollar)), std::move(projectors));
  }
  if (kind == "blm") {
    const json& mats_json = field(j, "mats");
    require_exact_keys(mats_json, symbols.size(), "mats");
    std::vector<ComplexMatrix> mats;
    for (const auto& s : symbols) mats.push_back(matrix_from_json(op_entry(mats_json, s)));
    return BilinearMachine(symbols, matrix_from_json(field(j, "pi")), std::move(mats), matrix_from_json(field(j, "eta")));
  }
  if (kind == "pa") {
    Alphabet alphabet(symbols);
    const json& mats_json = field(j, "mats");
    require_exact_keys(mats_json, symbols.size(), "mats");
    std::vector<std::vector<std::vector<double>>> mats;
    for (const auto& s : symbols) mats.push_back(op_entry(mats_json, s).get<std::vector<std::vector<double>>>());
    return ProbabilisticAutomaton(std::move(alphabet), field(j, "pi").get<std::vector<double>>(), std::move(mats),
                                  field(j, "eta").get<std::vector<int>>());
  }
  if (kind == "dfa") {
    Alphabet alphabet(symbols);
    const std::size_t states = index_from_json(field(j, "states"), "states");
    const std::size_t start = index_from_json(field(j, "start"), "start");
    std::vector<bool> accepting(states, false);
    for (const auto& q : field(j, "accepting")) {
      const std::size_t state = index_from_json(q, "accepting");
      if (state >= states) throw ValidationError("machine file: accepting state out of range");
      accepting[state] = true;
    }
    const json& delta_json = field(j, "delta");
    require_exact_keys(delta_json, symbols.size(), "delta");
    std::vector<std::vector<std::size_t>> delta;
    for (const auto& s : symbols) delta.push_back(op_entry(delta_json, s).get<std::vector<std::size_t>>());
    return DFA(std::move(alphabet), states, start, std::move(delta), std::move(accepting));
  }
  throw ValidationError("machine file: unknown kind '" + kind + "'");
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back({m(i, k).real(), m(i, k).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw ValidationError("machine file: matrix must be a nonempty array of nonempty rows");
  }
  const std::size_t rows = j.size();
  const std::size_t cols = j[0].size();
  std::vector<Complex> entries;
  entries.reserve(rows * cols);
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw ValidationError("machine file: ragged matrix");
    for (const auto& x : row) entries.push_back(complex_from_json(x));
  }
  return {rows, cols, std::move(entries)};
}

json machine_to_json(const AnyMachine& m) { return std::visit(ToJson{}, m); }

AnyMachine machine_from_json(const json& j) {
  try {
    return parse(j);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("machine file: ") + e.what());
  } catch (const DimensionError& e) {
    throw ValidationError(e.what());
  }
}

AnyMachine load_machine(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open machine file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ValidationError("machine file " + path.string() + " is not valid JSON: " + e.what());
  }
  return machine_from_json(j);
}

void save_machine(const std::filesystem::path& path, const AnyMachine& m) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write machine file " + path.string());
  out << std::setw(2) << machine_to_json(m) << '\n';
}

}  // namespace qfa
