#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsdc/adversary.hpp"
#include "qsdc/bidirectional.hpp"
#include "qsdc/security.hpp"
#include "qsdc/swapping.hpp"

namespace qsdc {

enum class Command { RunBidirectional, RunSwapping, Sweep, Holevo, TrojanCheck };

inline constexpr std::string_view kCommandNames[] = {"run-bidirectional", "run-swapping", "sweep",
                                                     "holevo", "trojan-check"};

std::string_view to_string(Command command);
Command parse_command(std::string_view text);

/// Raised for invalid configuration values. what() starts with the field
/// path, followed by the equivalent flag in parentheses when there is one:
///   session.pairs (--pairs): must be a non-negative integer
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Flag spelling for a config field path, empty when there is none.
std::string_view flag_for(std::string_view path);

/// Everything one CLI invocation needs.
struct CliConfig {
  Command command = Command::RunBidirectional;
  std::uint64_t seed = 0;
  std::size_t repetitions = 1;
  unsigned threads = 0;  ///< 0 = hardware concurrency
  std::string message_hex;

  // session
  std::size_t pairs = 256;
  double sample_fraction = 0.2;
  std::size_t decoys = 16;
  double error_threshold = 0.0;
  double loss_prob = 0.0;

  // swapping
  std::size_t groups = 0;  ///< 0: smallest count that fits the message
  double purification_yield = 1.0;

  // attack
  std::string attack = "none";
  BasisPolicy basis_policy = BasisPolicy::RandomZX;
  double attack_d = 0.0;
  double lie_fraction = 0.0;
  int extra_photons = 1;
  AttackTarget attack_target = AttackTarget::Both;

  // sweep / holevo / trojan-check
  std::vector<double> d_grid = default_d_grid();
  std::size_t trials = 10000;
  double holevo_d = 0.25;
  PriorVector priors;

  // output
  std::string transcript_path = "transcript.json";
  std::string csv_path = "sweep.csv";

  /// 0, 0.05, ..., 0.5.
  static std::vector<double> default_d_grid();

  /// Throws ConfigError naming the first offending field.
  void validate() const;

  AttackModel attack_model() const;
  SessionConfig session_config() const;
  /// Uses `groups`, or derives it from the message length when 0.
  SwapSessionConfig swap_config() const;
  Message message() const;
};

/// Parses a JSON config document. Unknown keys and wrong types are errors;
/// missing keys keep their defaults. Does not call validate(), so that flags
/// can still be applied on top.
CliConfig parse_config_text(std::string_view text);

/// Reads and parses `path`, then validates.
CliConfig load_config(const std::string& path);

}  // namespace qsdc
