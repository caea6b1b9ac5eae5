#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "volterra/system.hpp"

namespace volterra {

struct InputSpec {
  enum class Kind { impulse, random, two_impulse, csv };
  Kind kind = Kind::impulse;
  int length = 64;
  std::uint64_t seed = 0;
  int delay = 1;        // two-impulse: position of the second impulse
  double weight = 1.0;  // two-impulse: weight of the second impulse
  std::string path;     // csv
};

struct ToleranceSet {
  double compare_rel = 1e-9;
};

/// Parsed experiment configuration. Exactly one of `system` / `chains` is set.
struct ExperimentConfig {
  std::optional<BilinearSystem> system;
  std::map<int, FactorChain> chains;  // explicit factor chains keyed by order
  double T = 1.0;
  std::vector<int> orders;
  InputSpec input;
  std::optional<int> memory;  // unset = auto
  ToleranceSet tolerances;
  std::vector<double> epsilons;  // homogeneous-extraction scale factors
  std::string out_path;
};

ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(const std::string& json_text);

/// Chain for order p, from the bilinear system or the explicit chain table.
FactorChain chain_for_order(const ExperimentConfig& cfg, int p);

SignalSequence make_input(const InputSpec& spec, double T);

/// Deterministic uniform draw in [-1, 1); identical across platforms.
double uniform_pm1(std::mt19937_64& rng);

void write_signal_csv(const std::string& path, const SignalSequence& s);
SignalSequence read_signal_csv(const std::string& path, double T);
std::string signal_csv(const SignalSequence& s);
std::string format_double(double v);

}  // namespace volterra
