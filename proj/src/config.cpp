#include "volterra/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace volterra {

namespace {

using nlohmann::json;

Matrix parse_matrix(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) {
    throw std::invalid_argument("config: " + name + " must be a nested array");
  }
  const auto rows = j.size();
  const auto cols = j[0].size();
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) {
      throw std::invalid_argument("config: ragged rows in " + name);
    }
    for (std::size_t c = 0; c < cols; ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          j[r][c].get<double>();
    }
  }
  return m;
}

Vector parse_vector(const json& j, const std::string& name) {
  if (!j.is_array() || j.empty()) {
    throw std::invalid_argument("config: " + name + " must be an array");
  }
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

InputSpec parse_input(const json& j) {
  InputSpec spec;
  if (!j.contains("type")) {
    throw std::invalid_argument("config: input needs a type");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "impulse") {
    spec.kind = InputSpec::Kind::impulse;
  } else if (type == "random") {
    spec.kind = InputSpec::Kind::random;
  } else if (type == "two-impulse") {
    spec.kind = InputSpec::Kind::two_impulse;
  } else if (type == "csv") {
    spec.kind = InputSpec::Kind::csv;
  } else {
    throw std::invalid_argument("config: unknown input type '" + type + "'");
  }
  if (j.contains("length")) spec.length = j.at("length").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("delay")) spec.delay = j.at("delay").get<int>();
  if (j.contains("weight")) spec.weight = j.at("weight").get<double>();
  if (j.contains("path")) spec.path = j.at("path").get<std::string>();
  if (spec.kind == InputSpec::Kind::csv && spec.path.empty()) {
    throw std::invalid_argument("config: csv input needs a path");
  }
  if (spec.length < 1) {
    throw std::invalid_argument("config: input length must be >= 1");
  }
  return spec;
}

}  // namespace

ExperimentConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }

  ExperimentConfig cfg;
  const bool has_system = j.contains("system");
  const bool has_chains = j.contains("chains");
  if (has_system == has_chains) {
    throw std::invalid_argument(
        "config: exactly one of 'system' or 'chains' must be given");
  }

  if (has_system) {
    const auto& s = j.at("system");
    BilinearSystem sys;
    sys.F = parse_matrix(s.at("F"), "F");
    sys.G = parse_matrix(s.at("G"), "G");
    sys.b = parse_vector(s.at("b"), "b");
    sys.c = parse_vector(s.at("c"), "c");
    sys.T = s.at("T").get<double>();
    sys.validate();
    cfg.T = sys.T;
    cfg.system = sys;
  } else {
    if (!j.contains("T")) {
      throw std::invalid_argument("config: chains form needs a top-level T");
    }
    cfg.T = j.at("T").get<double>();
    for (const auto& [key, factors] : j.at("chains").items()) {
      int order = 0;
      try {
        order = std::stoi(key);
      } catch (...) {
        throw std::invalid_argument("config: chain keys must be integer orders");
      }
      FactorChain chain;
      chain.T = cfg.T;
      for (const auto& f : factors) {
        LtiFactor factor;
        factor.A = parse_matrix(f.at("A"), "chain A");
        factor.B = parse_matrix(f.at("B"), "chain B");
        factor.C = parse_matrix(f.at("C"), "chain C");
        chain.factors.push_back(factor);
      }
      if (chain.order() != order) {
        throw std::invalid_argument("config: chain for order " + key + " has " +
                                    std::to_string(chain.order()) + " factors");
      }
      chain.validate();
      cfg.chains.emplace(order, std::move(chain));
    }
    if (cfg.chains.empty()) {
      throw std::invalid_argument("config: chains table is empty");
    }
  }

  if (j.contains("orders")) {
    for (const auto& o : j.at("orders")) cfg.orders.push_back(o.get<int>());
  }
  if (j.contains("input")) cfg.input = parse_input(j.at("input"));
  if (j.contains("memory")) {
    const auto& m = j.at("memory");
    if (m.is_string()) {
      if (m.get<std::string>() != "auto") {
        throw std::invalid_argument("config: memory must be an integer or 'auto'");
      }
    } else {
      cfg.memory = m.get<int>();
      if (*cfg.memory < 0) {
        throw std::invalid_argument("config: memory must be >= 0");
      }
    }
  }
  if (j.contains("tolerances") && j.at("tolerances").contains("compare_rel")) {
    cfg.tolerances.compare_rel = j.at("tolerances").at("compare_rel").get<double>();
  }
  if (j.contains("epsilons")) {
    for (const auto& e : j.at("epsilons")) cfg.epsilons.push_back(e.get<double>());
  }
  if (j.contains("out")) cfg.out_path = j.at("out").get<std::string>();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("config: cannot open '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

FactorChain chain_for_order(const ExperimentConfig& cfg, int p) {
  if (cfg.system.has_value()) {
    return bilinear_to_chain(*cfg.system, p);
  }
  const auto it = cfg.chains.find(p);
  if (it == cfg.chains.end()) {
    throw std::invalid_argument("config: no chain for order " + std::to_string(p));
  }
  return it->second;
}

double uniform_pm1(std::mt19937_64& rng) {
  // Top 53 bits to a double in [0, 1), then to [-1, 1). Avoids the
  // implementation-defined std::uniform_real_distribution.
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return 2.0 * unit - 1.0;
}

SignalSequence make_input(const InputSpec& spec, double T) {
  switch (spec.kind) {
    case InputSpec::Kind::impulse:
      return unit_impulse(spec.length, T);
    case InputSpec::Kind::random: {
      SignalSequence s = zeros(spec.length, T);
      std::mt19937_64 rng(spec.seed);
      for (double& v : s.samples) v = uniform_pm1(rng);
      return s;
    }
    case InputSpec::Kind::two_impulse: {
      if (spec.delay < 1 || spec.delay >= spec.length) {
        throw std::invalid_argument("make_input: two-impulse delay out of range");
      }
      SignalSequence s = zeros(spec.length, T);
      s[0] = 1.0;
      s[spec.delay] = spec.weight;
      return s;
    }
    case InputSpec::Kind::csv:
      return read_signal_csv(spec.path, T);
  }
  throw std::invalid_argument("make_input: unknown input kind");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string signal_csv(const SignalSequence& s) {
  std::string text = "n,value\n";
  for (int n = 0; n < s.length(); ++n) {
    text += std::to_string(n);
    text += ',';
    text += format_double(s[n]);
    text += '\n';
  }
  return text;
}

void write_signal_csv(const std::string& path, const SignalSequence& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("write_signal_csv: cannot open '" + path + "'");
  }
  out << signal_csv(s);
}

SignalSequence read_signal_csv(const std::string& path, double T) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("read_signal_csv: cannot open '" + path + "'");
  }
  SignalSequence s;
  s.T = T;
  std::string line;
  if (!std::getline(in, line) || line.rfind("n,value", 0) != 0) {
    throw std::invalid_argument("read_signal_csv: expected 'n,value' header");
  }
  int expected = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::invalid_argument("read_signal_csv: malformed row '" + line + "'");
    }
    const int n = std::stoi(line.substr(0, comma));
    if (n != expected) {
      throw std::invalid_argument("read_signal_csv: rows must be consecutive from 0");
    }
    s.samples.push_back(std::stod(line.substr(comma + 1)));
    ++expected;
  }
  s.validate();
  return s;
}

}  // namespace volterra
